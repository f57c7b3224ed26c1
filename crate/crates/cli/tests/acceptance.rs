//! End-to-end acceptance checks. Each criterion prints one line with its
//! verdict and elapsed time against a fixed budget; the test fails if any
//! criterion does.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use reveq::builtins::{d3_listed, d4_representative_rational, klein_solutions, xi_classes};
use reveq::groups::{generate_closure, is_dihedral, sign_assignment};
use reveq::json::{solutions_from_json, SolutionRecord};
use reveq::matrix::{a_matrix, r0};
use reveq::normalform::complex::complex_support;
use reveq::normalform::{
    belitskii_normalize, check_all_rows, emit_real_normal_form, oracle, survival_analysis, ResonanceSpec, RowFlag,
    Stated,
};
use reveq::poly::{Monomial, Poly};
use reveq::scalar::{int, rat};
use reveq::solver::{non_degenerate, partition_by_group, solve_involutions, verify_raw_system, LinearPart};
use reveq::vecfield::{
    check_map_symmetry, check_parity_conditions, check_symmetry, conjugate, linearize_involution, symmetrize,
    ParityFamily, PolyMap, PolyVF,
};
use reveq::{QMat4, QuadScalar, RMat4, Rational};

type Verdict = Result<String, String>;

fn cli_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_reveq")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "reveq {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn solutions(n: &str) -> Vec<SolutionRecord> {
    solutions_from_json(&cli_json(&["solve-involutions", "--n", n, "--alpha", "1", "--beta", "2", "--json"]))
        .expect("schema")
}

fn lin12() -> LinearPart {
    LinearPart::new(int(1), int(2)).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// Random polynomial field with terms of degree `lo..=hi`, a few terms per
/// component.
fn random_nonlinear(rng: &mut ChaCha8Rng, lo: u32, hi: u32, max_degree: u32) -> PolyVF<Rational> {
    let comps: [Poly<Rational, 4>; 4] = std::array::from_fn(|_| {
        let mut p = Poly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let mons = Monomial::<4>::of_degree(rng.gen_range(lo..=hi));
            p.add_term(mons[rng.gen_range(0..mons.len())], random_rational(rng));
        }
        p
    });
    PolyVF::new(comps, max_degree)
}

fn reversible_group(second: &RMat4, lin: &LinearPart) -> Vec<(RMat4, i8)> {
    let g = generate_closure(&[r0(), second.clone()]).unwrap();
    sign_assignment(&g, lin).unwrap().entries().to_vec()
}

// 1
fn klein() -> Verdict {
    let got = solutions("2");
    if got.len() != 4 {
        return Err(format!("{} solutions", got.len()));
    }
    let expected = klein_solutions();
    for (i, (r, m)) in got.iter().zip(&expected).enumerate() {
        if &r.matrix != m {
            return Err(format!("solution {} differs from S{}", i + 1, i + 1));
        }
        if r.degenerate != (i == 3) {
            return Err(format!("S{} degenerate flag is {}", i + 1, r.degenerate));
        }
    }
    if got[3].matrix != r0::<QuadScalar>() {
        return Err("S4 is not R0".into());
    }
    Ok("4 solutions, S4 = R0 flagged degenerate".into())
}

// 2
fn dihedral_three() -> Verdict {
    let got: Vec<QMat4> = solutions("3").into_iter().filter(|r| !r.degenerate).map(|r| r.matrix).collect();
    let listed: BTreeSet<QMat4> = d3_listed().into_iter().collect();
    let found: BTreeSet<QMat4> = got.iter().cloned().collect();
    let detail = format!(
        "{} non-degenerate returned, {} of the 3 listed among them",
        got.len(),
        listed.intersection(&found).count()
    );
    if got.len() == 3 && found == listed {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 3
fn dihedral_four() -> Verdict {
    let got = solutions("4");
    let nondeg: Vec<&SolutionRecord> = got.iter().filter(|r| !r.degenerate).collect();
    if nondeg.len() != 12 {
        return Err(format!("{} non-degenerate solutions", nondeg.len()));
    }
    let mut by_class: BTreeMap<usize, BTreeSet<QMat4>> = BTreeMap::new();
    for r in &nondeg {
        by_class.entry(r.class_id.ok_or("missing class id")?).or_default().insert(r.matrix.clone());
    }
    for (i, pair) in xi_classes().iter().enumerate() {
        let expected: BTreeSet<QMat4> = pair.iter().cloned().collect();
        if by_class.get(&(i + 1)) != Some(&expected) {
            return Err(format!("class {} does not match Xi{}", i + 1, i + 1));
        }
    }
    let sols = solve_involutions(&lin12(), 4).map_err(|e| e.to_string())?;
    let classes = partition_by_group(&non_degenerate(&sols)).map_err(|e| e.to_string())?;
    if classes.len() != 6 || classes.iter().any(|c| c.members.len() != 2) {
        return Err("library partition is not 6 x 2".into());
    }
    Ok("12 solutions in 6 classes equal to Xi1..Xi6".into())
}

// 4
fn raw_oracle() -> Verdict {
    let lin = lin12();
    let mut all: Vec<(QMat4, u32)> = Vec::new();
    for n in [2u32, 3, 4] {
        all.extend(solve_involutions(&lin, n).unwrap().into_iter().map(|s| (s.s, n)));
    }
    all.extend(klein_solutions().into_iter().map(|m| (m, 2)));
    all.extend(d3_listed().into_iter().map(|m| (m, 3)));
    all.extend(xi_classes().into_iter().flatten().map(|m| (m, 4)));
    for (m, n) in &all {
        let rep = verify_raw_system(m, &lin, *n);
        if !rep.passes() || rep.residuals.iter().any(|(_, r)| r != &QuadScalar::rational(int(0))) {
            return Err(format!("n = {n}: {:?}", rep.failing));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for t in 0..100 {
        let (base, n) = all[rng.gen_range(0..all.len())].clone();
        let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let mut delta = random_rational(&mut rng);
        if delta == int(0) {
            delta = rat(1, 7);
        }
        let m = QMat4::from_fn(|a, b| {
            let e = base.get(a, b).clone();
            if (a, b) == (i, j) {
                e + QuadScalar::rational(delta.clone())
            } else {
                e
            }
        });
        if verify_raw_system(&m, &lin, n).passes() {
            return Err(format!("perturbation {t} passes"));
        }
    }
    Ok(format!("{} solutions exact, 100 perturbations rejected", all.len()))
}

// 5
fn group_structure() -> Verdict {
    let lin = lin12();
    let mut checked = 0;
    for n in [2u32, 3, 4] {
        let sols = solve_involutions(&lin, n).unwrap();
        for c in partition_by_group(&non_degenerate(&sols)).unwrap() {
            let n = n as usize;
            if c.group.order() != 2 * n || !is_dihedral(&c.group, n) {
                return Err(format!("class of order {} for n = {n}", c.group.order()));
            }
            let signs = sign_assignment(&c.group, &lin).map_err(|e| e.to_string())?;
            if signs.reversing() != n {
                return Err(format!("|G-| = {} for n = {n}", signs.reversing()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} classes dihedral with |G-| = n"))
}

// 6
fn tables() -> Verdict {
    let rows = check_all_rows();
    let mut bad = Vec::new();
    for r in &rows {
        match r.stated {
            Stated::Tautology => {
                if !r.flags.contains(&RowFlag::Tautology) {
                    bad.push(format!("row {} tautology not flagged", r.index));
                }
            }
            Stated::Constraint(_) if !r.matches() => {
                bad.push(format!("row {} ({:?}, phi{}): computed {}", r.index, r.witness, r.involution, r.computed))
            }
            _ => {}
        }
    }
    let taut: Vec<String> = rows
        .iter()
        .filter(|r| r.stated == Stated::Tautology)
        .map(|r| format!("phi{} {} -> {}", r.involution, r.hypothesis, r.computed))
        .collect();
    let reread = rows.iter().filter(|r| r.flags.contains(&RowFlag::Reinterpreted)).count();
    let fallback = rows.iter().filter(|r| r.flags.contains(&RowFlag::NoCoprimeWitness)).count();
    let detail = format!(
        "{} rows, {reread} read with p for q, {fallback} without coprime witness, flagged: {}",
        rows.len(),
        taut.join("; ")
    );
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; mismatches: {}", bad.join(", ")))
    }
}

// 7
fn delta_normal_form() -> Verdict {
    let mut failures = Vec::new();
    for (p, q) in [(3, 5), (5, 7), (3, 7)] {
        let spec = ResonanceSpec::new(p, q).unwrap();
        for j in 1..=6 {
            let r = survival_analysis(&spec, j, 9).unwrap();
            let mixed = r.mixed_survivors();
            match emit_real_normal_form(&r) {
                Ok(f) if mixed.is_empty() && f.is_full_pattern() => {}
                Ok(_) => failures.push(format!("{p}:{q} group {j}: pattern incomplete")),
                Err(_) => failures.push(format!(
                    "{p}:{q} group {j}: {} mixed survivor(s), first {} {}",
                    mixed.len(),
                    mixed[0].0,
                    mixed[0].1
                )),
            }
        }
    }
    if failures.is_empty() {
        Ok("18 cases reduce to the Delta1/Delta2 form".into())
    } else {
        Err(failures.join("; "))
    }
}

// 8
fn oracle_equivalence() -> Verdict {
    let mut mismatches = Vec::new();
    let mut cells = 0;
    for (p, q) in [(1, 2), (1, 3), (2, 3), (3, 5), (1, 4)] {
        let spec = ResonanceSpec::new(p, q).unwrap();
        for j in 1..=6 {
            let dims = oracle::dimensions(&oracle::brute_force_kernel(&spec, j, 7).unwrap());
            let r = survival_analysis(&spec, j, 7).unwrap();
            for (k, d) in dims {
                cells += 1;
                if d != r.parameter_count(k) {
                    mismatches.push(format!("{p}:{q} g{j} k{k}: oracle {d} vs {}", r.parameter_count(k)));
                }
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{cells} (p:q, group, degree) cells agree"))
    } else {
        Err(mismatches.join("; "))
    }
}

// 9
fn end_to_end() -> Verdict {
    let spec = ResonanceSpec::new(3, 5).unwrap();
    let lin = LinearPart::new(int(3), int(5)).unwrap();
    let a = a_matrix::<Rational>(&int(3), &int(5));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for t in 0..20 {
        let j = (t % 6) as u32 + 1;
        let s = d4_representative_rational(j).unwrap();
        let group = reversible_group(&s, &lin);
        let raw = PolyVF::linear(&a, 4).add(&random_nonlinear(&mut rng, 2, 4, 4));
        let x = symmetrize(&raw, &group).unwrap();
        let (y, _) = belitskii_normalize(&x, &spec, 4).map_err(|e| format!("field {t}: {e}"))?;
        if !check_symmetry(&y, &r0(), -1).passes() || !check_symmetry(&y, &s, -1).passes() {
            return Err(format!("field {t} (group {j}) loses reversibility"));
        }
        let allowed = survival_analysis(&spec, j, 4).unwrap();
        if let Some((m, _)) = complex_support(&y).into_iter().find(|(m, _)| !allowed.contains(m)) {
            return Err(format!("field {t} (group {j}) keeps {m}"));
        }
        let (again, _) = belitskii_normalize(&y, &spec, 4).unwrap();
        if again != y {
            return Err(format!("field {t} not idempotent"));
        }
    }
    Ok("20 fields normalized, reversible, supported on survivors, idempotent".into())
}

// 10
fn parity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut positives = 0;
    for family in ParityFamily::ALL {
        let phi = family.involution::<Rational>();
        for t in 0..50 {
            let (p, q) = [(1, 2), (3, 5), (2, 7), (1, 3)][t % 4];
            let lin = LinearPart::new(int(p), int(q)).unwrap();
            let a = a_matrix::<Rational>(&int(p), &int(q));
            let raw = PolyVF::linear(&a, 4).add(&random_nonlinear(&mut rng, 2, 4, 4));
            let x = match t % 3 {
                0 => symmetrize(&raw, &reversible_group(&phi, &lin)).unwrap(),
                1 => symmetrize(&raw, &reversible_group(&phi, &lin))
                    .unwrap()
                    .add(&random_nonlinear(&mut rng, 2, 2, 4).scale(&rat(1, 3)).homogeneous(2)),
                _ => raw,
            };
            let both = check_symmetry(&x, &r0(), -1).passes() && check_symmetry(&x, &phi, -1).passes();
            let parity = check_parity_conditions(&x, family).map_err(|e| e.to_string())?;
            if parity != both {
                return Err(format!("{family} field {t}: parity {parity}, symmetry {both}"));
            }
            positives += both as usize;
        }
    }
    Ok(format!("200 fields agree ({positives} reversible)"))
}

// 11
fn linearization() -> Verdict {
    let k = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r0m = r0::<Rational>();
    let lin = lin12();
    let base_group = generate_closure(&[r0m.clone()]).unwrap();
    let signs = sign_assignment(&base_group, &lin).unwrap();
    for t in 0..10 {
        let bump = random_nonlinear(&mut rng, 2, 3, k).scale(&rat(1, 5));
        let g = PolyMap::new(std::array::from_fn(|i| Poly::var(i).add(bump.component(i))), k).unwrap();
        let phi = g.compose(&PolyMap::linear(&r0m, k).unwrap()).compose(&g.inverse());
        let y = symmetrize(
            &PolyVF::linear(&lin.matrix(), k).add(&random_nonlinear(&mut rng, 2, 4, k)),
            signs.entries(),
        )
        .unwrap();
        let x = conjugate(&y, &g).map_err(|e| e.to_string())?;
        if !check_map_symmetry(&x, &phi, -1).passes() {
            return Err(format!("case {t}: constructed field is not phi-reversible"));
        }
        let h = linearize_involution(&phi, k).map_err(|e| format!("case {t}: {e}"))?;
        let z = conjugate(&x, &h).map_err(|e| e.to_string())?;
        let rep = check_symmetry(&z, &r0m, -1);
        if !rep.passes() {
            return Err(format!("case {t}: {} residual coefficient(s)", rep.offending.len()));
        }
    }
    Ok(format!("10 involutions linearized, fields R0-reversible through degree {k}"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Verdict, Duration); 11] = [
        (1, "Z2xZ2 classification", klein, Duration::from_secs(1)),
        (2, "D3 classification", dihedral_three, Duration::from_secs(1)),
        (3, "D4 classification and Xi partition", dihedral_four, Duration::from_secs(1)),
        (4, "raw system oracle", raw_oracle, Duration::from_secs(5)),
        (5, "group structure", group_structure, Duration::from_secs(1)),
        (6, "constraint table fidelity", tables, Duration::from_secs(1)),
        (7, "Delta1/Delta2 normal form", delta_normal_form, Duration::from_secs(10)),
        (8, "oracle equivalence", oracle_equivalence, Duration::from_secs(120)),
        (9, "end-to-end normalization", end_to_end, Duration::from_secs(60)),
        (10, "parity conditions", parity, Duration::from_secs(30)),
        (11, "involution linearization", linearization, Duration::from_secs(30)),
    ];
    let mut failed = Vec::new();
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let (status, detail) = match (&verdict, elapsed <= budget) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over budget; {d}")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        println!("criterion {id:>2} [{status}] {name} ({:.2}s / {}s): {detail}", elapsed.as_secs_f64(), budget.as_secs());
        if status == "FAIL" {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
