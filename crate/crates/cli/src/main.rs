use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use reveq::builtins;
use reveq::groups::{is_dihedral, sign_assignment};
use reveq::json;
use reveq::normalform::{
    belitskii_normalize, emit_real_normal_form, oracle, survival_analysis_with, BasePairing, GroupChoice,
    NormalFormResult, OracleMode, ResonanceSpec,
};
use reveq::scalar::parse_rational;
use reveq::solver::{non_degenerate, partition_by_group, solve_involutions, InvolutionSolution, LinearPart, XiClass};
use reveq::vecfield::{
    check_map_symmetry, check_parity_conditions, check_symmetry, conjugate, format_field, format_map,
    linearize_involution, parse_field, parse_map, ParityFamily, PolyMap, PolyVF, SymmetryReport,
};
use reveq::{Error, QMat4, QuadScalar, Rational};

#[derive(Parser)]
#[command(name = "reveq", version, about = "Reversing-symmetry involutions and reversible normal forms on R^4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the involutions S with <R0, S> dihedral of order 2n.
    SolveInvolutions(SolveArgs),
    /// Group the non-degenerate solutions by generated group.
    Classify(ClassifyArgs),
    /// Check a field for (anti)symmetry under an involution.
    Check(CheckArgs),
    /// Surviving resonant monomials under <R0, S_j>.
    NormalForm(NormalFormArgs),
    /// Brute-force kernel dimensions per degree.
    Oracle(OracleArgs),
    /// Belitskii-normalize a field with linear part A(p, q).
    Normalize(NormalizeArgs),
    /// Linearize a polynomial involution, optionally conjugating a field.
    Linearize(LinearizeArgs),
}

#[derive(Clone, Copy)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct FormatFlags {
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    #[arg(long)]
    latex: bool,
}

impl FormatFlags {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.latex {
            Format::Latex
        } else {
            Format::Text
        }
    }
}

#[derive(Args)]
struct LinearArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    beta: String,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    linear: LinearArgs,
    /// List every degenerate solution, not only `R0`.
    #[arg(long)]
    include_degenerate: bool,
    #[command(flatten)]
    format: FormatFlags,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    linear: LinearArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    field: PathBuf,
    /// A file (polynomial map or JSON matrix) or `builtin:<name>`.
    #[arg(long)]
    involution: Option<String>,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    sign: i8,
    /// Check the coordinatewise parity conditions of a family instead.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct ResonanceArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
    #[arg(long, env = "REVEQ_DEGREE", default_value_t = 7)]
    degree: u32,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Base {
    #[default]
    R0,
    Phi0,
}

#[derive(Args)]
struct NormalFormArgs {
    #[command(flatten)]
    res: ResonanceArgs,
    /// `1` to `6`, or `all`.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Base::R0)]
    base: Base,
    #[command(flatten)]
    format: FormatFlags,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    res: ResonanceArgs,
    #[arg(long)]
    group: u32,
    #[arg(long, value_enum, default_value_t = Base::R0)]
    base: Base,
    /// Also compare against the survival analysis.
    #[arg(long)]
    compare: bool,
}

#[derive(Args)]
struct NormalizeArgs {
    #[arg(long)]
    field: PathBuf,
    #[command(flatten)]
    res: ResonanceArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LinearizeArgs {
    /// Polynomial involution, one `x1 = ...` line per component.
    #[arg(long)]
    map: PathBuf,
    /// Field to push forward by the linearizing change.
    #[arg(long)]
    field: Option<PathBuf>,
    #[arg(long, env = "REVEQ_DEGREE", default_value_t = 7)]
    degree: u32,
}

/// Why a command did not succeed.
enum Failure {
    /// The inputs were fine but the claim checked is false.
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInvolution { .. }
            | Error::MixedResonantTerms
            | Error::SplittingFailure(_)
            | Error::UnexpectedLinearPart
            | Error::NotCompatible
            | Error::NotMultiplicative
            | Error::ClosureCap { .. } => Failure::Math(e.to_string()),
            Error::InvalidResonance { p, q, ref reason } => Failure::Usage(format!(
                "p:q = {p}:{q} is outside the coprime resonance case handled here: {reason}"
            )),
            Error::DegenerateResonance => Failure::Usage(format!(
                "{e}; |alpha| = |beta| is the 1:1 case, where the anticommutant is not block diagonal"
            )),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::SolveInvolutions(a) => solve(&a),
        Command::Classify(a) => classify(&a),
        Command::Check(a) => check(&a),
        Command::NormalForm(a) => normal_form(&a),
        Command::Oracle(a) => run_oracle(&a),
        Command::Normalize(a) => normalize(&a),
        Command::Linearize(a) => linearize(&a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Math(msg)) => {
            eprintln!("reveq: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("reveq: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

fn linear_part(a: &LinearArgs) -> Result<LinearPart, Failure> {
    let rat = |s: &str| parse_rational(s).ok_or_else(|| Failure::Usage(format!("`{s}` is not a rational number")));
    Ok(LinearPart::new(rat(&a.alpha)?, rat(&a.beta)?)?)
}

/// Classes in a stable order. For `n = 4` the order follows the named
/// `Xi1 … Xi6`.
fn ordered_classes(sols: &[InvolutionSolution], n: u32) -> Result<Vec<XiClass>, Failure> {
    let mut classes = partition_by_group(&non_degenerate(sols))?;
    if n == 4 && classes.len() == 6 {
        let xi = builtins::xi_classes();
        classes.sort_by_key(|c| xi.iter().position(|pair| c.group.contains(&pair[0])).unwrap_or(usize::MAX));
    }
    Ok(classes)
}

fn class_of(classes: &[XiClass], s: &InvolutionSolution) -> Option<usize> {
    classes.iter().position(|c| c.members.iter().any(|m| m.s == s.s)).map(|i| i + 1)
}

fn latex_matrix(m: &QMat4) -> String {
    let rows: Vec<String> =
        m.rows().iter().map(|r| r.iter().map(QuadScalar::to_latex).collect::<Vec<_>>().join(" & ")).collect();
    format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}", rows.join(" \\\\\n"))
}

fn solve(a: &SolveArgs) -> Outcome {
    let lin = linear_part(&a.linear)?;
    let n = a.linear.n;
    let sols = solve_involutions(&lin, n)?;
    let classes = ordered_classes(&sols, n)?;
    let shown: Vec<&InvolutionSolution> = sols.iter().filter(|s| a.include_degenerate || !s.degenerate || s.is_r0()).collect();
    let records: Vec<json::SolutionRecord> =
        shown.iter().map(|s| json::SolutionRecord::new(s, class_of(&classes, s))).collect();
    Ok(match a.format.format() {
        Format::Json => pretty(&json::solutions_to_json(&records)),
        Format::Latex => records
            .iter()
            .map(|r| format!("% k = ({}, {}), n = {}\n{}\n", r.angles.k1, r.angles.k2, n, latex_matrix(&r.matrix)))
            .collect(),
        Format::Text => {
            let group = if n == 2 { "Z2xZ2".to_string() } else { format!("D{n}") };
            let mut out = format!("# {group}: {} solution(s) shown\n", records.len());
            for (i, r) in records.iter().enumerate() {
                let tag = match r.class_id {
                    Some(c) => format!("class {c}"),
                    None => "degenerate".to_string(),
                };
                out.push_str(&format!("S{} k = ({}, {}) {tag}\n{}", i + 1, r.angles.k1, r.angles.k2, r.matrix));
            }
            out
        }
    })
}

fn classify(a: &ClassifyArgs) -> Outcome {
    let lin = linear_part(&a.linear)?;
    let n = a.linear.n;
    let sols = solve_involutions(&lin, n)?;
    let classes = ordered_classes(&sols, n)?;
    let mut entries = Vec::new();
    let mut text = format!("# {} class(es)\n", classes.len());
    for (i, c) in classes.iter().enumerate() {
        let signs = sign_assignment(&c.group, &lin)?;
        let dihedral = is_dihedral(&c.group, n as usize);
        let members: Vec<Value> = c.members.iter().map(|m| json::qmat_to_json(&m.s)).collect();
        let mut group = json::group_to_json(&c.group, &signs);
        group["dihedral"] = Value::Bool(dihedral);
        entries.push(serde_json::json!({"class_id": i + 1, "members": members, "group": group}));
        text.push_str(&format!(
            "class {}: {} member(s), order {}, dihedral {}, reversing {}\n",
            i + 1,
            c.members.len(),
            c.group_order,
            dihedral,
            signs.reversing()
        ));
        for m in &c.members {
            text.push_str(&m.s.to_string());
        }
    }
    Ok(if a.json { pretty(&Value::Array(entries)) } else { text })
}

fn describe<T: std::fmt::Display>(r: &SymmetryReport<T>) -> String {
    let shown: Vec<String> =
        r.offending.iter().take(8).map(|(i, m, c)| format!("  component {i}, exponents {:?}: {c}", m.0)).collect();
    format!("{} offending coefficient(s) through degree {}\n{}\n", r.offending.len(), r.degree, shown.join("\n"))
}

fn load_involution(spec: &str) -> Result<Result<QMat4, PolyMap<Rational>>, Failure> {
    if spec.starts_with("builtin:") {
        return Ok(Ok(builtins::lookup(spec)?));
    }
    let text = read(Path::new(spec))?;
    if text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
        return Ok(Ok(json::qmat_from_json(&v)?));
    }
    Ok(Err(parse_map(&text)?))
}

fn load_field(path: &Path) -> Result<PolyVF<Rational>, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let v: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Ok(json::field_from_json(&v)?);
    }
    Ok(parse_field(&text)?)
}

fn check(a: &CheckArgs) -> Outcome {
    let x = load_field(&a.field)?;
    if a.sign != 1 && a.sign != -1 {
        return Err(Failure::Usage("--sign must be 1 or -1".into()));
    }
    if let Some(family) = &a.family {
        let family: ParityFamily = family.parse()?;
        return if check_parity_conditions(&x, family)? {
            Ok(format!("ok: parity conditions of {family} hold\n"))
        } else {
            Err(Failure::Math(format!("parity conditions of {family} fail")))
        };
    }
    let inv = a.involution.as_deref().ok_or_else(|| Failure::Usage("--involution or --family is required".into()))?;
    let passes = match load_involution(inv)? {
        Ok(m) => {
            let r = check_symmetry(&x.map_coeffs(|c| QuadScalar::rational(c.clone())), &m, a.sign);
            r.passes().then_some(()).ok_or_else(|| describe(&r))
        }
        Err(phi) => {
            let r = check_map_symmetry(&x, &phi, a.sign);
            r.passes().then_some(()).ok_or_else(|| describe(&r))
        }
    };
    match passes {
        Ok(()) => Ok(format!("ok: identity holds through degree {}\n", x.max_degree())),
        Err(msg) => Err(Failure::Math(format!("identity fails: {msg}"))),
    }
}

fn spec_of(r: &ResonanceArgs) -> Result<ResonanceSpec, Failure> {
    if r.degree == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    Ok(ResonanceSpec::new(r.p, r.q)?)
}

fn base_of(b: Base) -> BasePairing {
    match b {
        Base::R0 => BasePairing::R0,
        Base::Phi0 => BasePairing::Phi0,
    }
}

fn render_survivors(r: &NormalFormResult) -> String {
    let mut out = format!(
        "# p:q = {}:{}, base {}, degree <= {}, relaxed hypothesis {}\n",
        r.spec.p(),
        r.spec.q(),
        r.base.label(),
        r.degree,
        if r.hypothesis.relaxed_holds() { "holds" } else { "fails" }
    );
    for (m, c) in &r.surviving {
        out.push_str(&format!("{m}  {c}\n"));
    }
    out
}

fn normal_form(a: &NormalFormArgs) -> Outcome {
    let spec = spec_of(&a.res)?;
    let group = match a.group.as_str() {
        "all" => GroupChoice::AllClasses,
        g => GroupChoice::Single(g.parse().map_err(|_| Failure::Usage(format!("--group `{g}`: expected 1..6 or all")))?),
    };
    let r = survival_analysis_with(&spec, group, base_of(a.base), a.res.degree)?;
    match a.format.format() {
        Format::Json => Ok(pretty(&json::normal_form_to_json(&r))),
        Format::Latex => Ok(emit_real_normal_form(&r)?.to_latex()),
        Format::Text => {
            let mut out = render_survivors(&r);
            match emit_real_normal_form(&r) {
                Ok(f) => out.push_str(&f.to_text()),
                Err(e) => out.push_str(&format!("# {e}\n")),
            }
            Ok(out)
        }
    }
}

fn run_oracle(a: &OracleArgs) -> Outcome {
    let spec = spec_of(&a.res)?;
    let invs = oracle::oracle_involutions(a.group, base_of(a.base))?;
    let dims = oracle::dimensions(&oracle::brute_force_kernel_with(&spec, &invs, a.res.degree, OracleMode::Reversible));
    if !a.compare {
        return Ok(pretty(&json::dimensions_to_json(&dims)));
    }
    let r = survival_analysis_with(&spec, GroupChoice::Single(a.group), base_of(a.base), a.res.degree)?;
    let counts: BTreeMap<u32, usize> = dims.keys().map(|&k| (k, r.parameter_count(k))).collect();
    if counts == dims {
        Ok(pretty(&json::dimensions_to_json(&dims)))
    } else {
        Err(Failure::Math(format!(
            "oracle {} differs from survival count {}",
            json::dimensions_to_json(&dims),
            json::dimensions_to_json(&counts)
        )))
    }
}

fn normalize(a: &NormalizeArgs) -> Outcome {
    let spec = spec_of(&a.res)?;
    let x = load_field(&a.field)?;
    let (y, psi) = belitskii_normalize(&x, &spec, a.res.degree)?;
    if a.json {
        return Ok(pretty(&serde_json::json!({"field": json::field_to_json(&y)})));
    }
    Ok(format!("# normalized field\n{}# change of coordinates\n{}", format_field(&y), format_map(&psi)))
}

fn linearize(a: &LinearizeArgs) -> Outcome {
    let phi = parse_map(&read(&a.map)?)?;
    let h = linearize_involution(&phi, a.degree)?;
    let mut out = format!("# linearizing change\n{}", format_map(&h));
    if let Some(path) = &a.field {
        let x = load_field(path)?.with_max_degree(a.degree);
        let y = conjugate(&x, &h)?;
        let ok = check_symmetry(&y, &phi.linear_part(), -1).passes();
        out.push_str(&format!("# conjugated field\n{}", format_field(&y)));
        if !ok {
            return Err(Failure::Math(format!("conjugated field is not reversible under the linear part\n{out}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use reveq::matrix::r0;
    use reveq::poly::Poly;
    use reveq::scalar::rat;

    fn parse(args: &[&str]) -> Command {
        let mut full = vec!["reveq"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).expect("valid arguments").command
    }

    fn run(args: &[&str]) -> Outcome {
        match parse(args) {
            Command::SolveInvolutions(a) => solve(&a),
            Command::Classify(a) => classify(&a),
            Command::Check(a) => check(&a),
            Command::NormalForm(a) => normal_form(&a),
            Command::Oracle(a) => run_oracle(&a),
            Command::Normalize(a) => normalize(&a),
            Command::Linearize(a) => linearize(&a),
        }
    }

    fn temp(name: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("reveq-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn is_math(o: &Outcome) -> bool {
        matches!(o, Err(Failure::Math(_)))
    }

    fn is_usage(o: &Outcome) -> bool {
        matches!(o, Err(Failure::Usage(_)))
    }

    #[test]
    fn d4_json_has_twelve_classified_solutions() {
        let out = run(&["solve-involutions", "--n", "4", "--alpha", "1", "--beta", "2", "--json"]).ok().unwrap();
        let recs = json::solutions_from_json(&serde_json::from_str(&out).unwrap()).unwrap();
        assert_eq!(recs.iter().filter(|r| !r.degenerate).count(), 12);
        assert_eq!(recs.iter().filter_map(|r| r.class_id).max(), Some(6));
        let all = run(&["solve-involutions", "--n", "4", "--include-degenerate", "--json"]).ok().unwrap();
        assert_eq!(json::solutions_from_json(&serde_json::from_str(&all).unwrap()).unwrap().len(), 16);
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["classify", "--n", "4", "--json"];
        assert_eq!(run(&args).ok(), run(&args).ok());
        let args = ["normal-form", "--p", "1", "--q", "2", "--group", "5", "--degree", "6", "--json"];
        assert_eq!(run(&args).ok(), run(&args).ok());
    }

    #[test]
    fn latex_normal_form() {
        let out = run(&["normal-form", "--p", "3", "--q", "5", "--group", "1", "--degree", "5", "--latex"]).ok().unwrap();
        assert!(out.contains("\\dot{x_1}&=&-3x_{2}-x_2\\left(a_{10}\\Delta_1"));
        assert!(out.contains("\\dot{y_2}&=&5y_{1}+y_1\\left(b_{10}\\Delta_1"));
    }

    #[test]
    fn mixed_terms_and_bad_resonances() {
        assert!(is_math(&run(&["normal-form", "--p", "3", "--q", "5", "--group", "6", "--degree", "9", "--latex"])));
        assert!(is_usage(&run(&["normal-form", "--p", "2", "--q", "2", "--group", "1"])));
        assert!(is_usage(&run(&["normal-form", "--p", "2", "--q", "4", "--group", "1"])));
        assert!(is_usage(&run(&["normal-form", "--p", "1", "--q", "2", "--group", "9"])));
        assert!(is_usage(&run(&["solve-involutions", "--n", "5"])));
        assert!(is_usage(&run(&["solve-involutions", "--n", "4", "--alpha", "1", "--beta", "-1"])));
        assert!(Cli::try_parse_from(["reveq", "frobnicate"]).is_err());
    }

    #[test]
    fn check_exit_classes() {
        let zero = temp("zero.vf", "dx1 = -1*x2\ndx2 = 1*x1\ndy1 = -2*y2\ndy2 = 2*y1\n");
        let zero = zero.to_str().unwrap();
        assert!(run(&["check", "--field", zero, "--involution", "builtin:R0", "--sign", "-1"]).is_ok());
        assert!(run(&["check", "--field", zero, "--involution", "builtin:S2@n3"]).is_ok());
        assert!(is_math(&run(&["check", "--field", zero, "--involution", "builtin:R0", "--sign", "1"])));
        assert!(is_usage(&run(&["check", "--field", zero, "--involution", "builtin:S9@n4"])));
        assert!(is_usage(&run(&["check", "--field", "/nonexistent/field.vf", "--involution", "builtin:R0"])));
        let even = temp("even.vf", "dx1 = -1*x2 + 1*x2*y2\ndx2 = 1*x1\ndy1 = -2*y2\ndy2 = 2*y1\n");
        let even = even.to_str().unwrap();
        assert!(is_math(&run(&["check", "--field", even, "--involution", "builtin:R0"])));
        assert!(is_math(&run(&["check", "--field", even, "--family", "Z2Z2-S1"])));
        assert!(run(&["check", "--field", zero, "--family", "D4-S1"]).is_ok());
        let matrix = temp("r0.json", &json::qmat_to_json(&r0()).to_string());
        assert!(run(&["check", "--field", zero, "--involution", matrix.to_str().unwrap()]).is_ok());
    }

    #[test]
    fn oracle_compare() {
        let out = run(&["oracle", "--p", "1", "--q", "2", "--group", "5", "--degree", "5", "--compare"]).ok().unwrap();
        let dims = json::dimensions_from_json(&serde_json::from_str(&out).unwrap()).unwrap();
        assert_eq!(dims, BTreeMap::from([(2, 2), (3, 4), (4, 6), (5, 8)]));
    }

    #[test]
    fn linearize_and_normalize() {
        // φ = g∘R0∘g⁻¹ with g = Id + (x2², 0, 0, 0)
        let k = 5;
        let g = PolyMap::new(
            [Poly::var(0).add(&Poly::var(1).mul(&Poly::var(1))), Poly::var(1), Poly::var(2), Poly::var(3)],
            k,
        )
        .unwrap();
        let phi = g.compose(&PolyMap::linear(&r0(), k).unwrap()).compose(&g.inverse());
        let map = temp("phi.map", &format_map(&phi));
        let out = run(&["linearize", "--map", map.to_str().unwrap(), "--degree", "5"]).ok().unwrap();
        assert!(out.starts_with("# linearizing change"));
        let not_inv = temp("bad.map", "x1 = 1*x1 + 1*x2^2\nx2 = -1*x2\ny1 = 1*y1\ny2 = -1*y2\n");
        assert!(is_math(&run(&["linearize", "--map", not_inv.to_str().unwrap(), "--degree", "3"])));

        let x = format_field(&PolyVF::linear(&reveq::matrix::a_matrix(&rat(1, 1), &rat(2, 1)), 3));
        let field = temp("lin.vf", &x);
        let out = run(&["normalize", "--field", field.to_str().unwrap(), "--p", "1", "--q", "2", "--degree", "3"]);
        assert!(out.ok().unwrap().contains("dx1 = -1*x2\n"));
        assert!(is_math(&run(&["normalize", "--field", field.to_str().unwrap(), "--p", "1", "--q", "3", "--degree", "3"])));
    }
}
