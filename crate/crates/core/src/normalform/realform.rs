//! The real `Δ1/Δ2` normal form
//!
//! ```text
//! ẋ1 = −p x2 − x2 Σ a_ij Δ1^i Δ2^j      ẏ1 = −q y2 − y2 Σ b_ij Δ1^i Δ2^j
//! ẋ2 =  p x1 + x1 Σ a_ij Δ1^i Δ2^j      ẏ2 =  q y1 + y1 Σ b_ij Δ1^i Δ2^j
//! ```
//!
//! with `Δ1 = x1² + x2²`, `Δ2 = y1² + y2²`. A surviving `i·a·z1 Δ1^i Δ2^j ∂/∂z1`
//! becomes the `a_ij` term.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::resonance::{CoeffConstraint, MonomialKind};
use super::survival::NormalFormResult;
use crate::error::Error;
use crate::poly::Poly;
use crate::scalar::{int, Rational};
use crate::vecfield::PolyVF;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealNormalForm {
    pub p: u32,
    pub q: u32,
    pub degree: u32,
    /// `(i, j)` indices of the free parameters `a_ij`, `i + j >= 1`.
    pub a: Vec<(u32, u32)>,
    pub b: Vec<(u32, u32)>,
}

pub fn emit_real_normal_form(r: &NormalFormResult) -> Result<RealNormalForm, Error> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (m, c) in &r.surviving {
        let MonomialKind::Delta12 { m: i, n: j } = m.kind() else {
            return Err(Error::MixedResonantTerms);
        };
        if *c != CoeffConstraint::ReZero {
            return Err(Error::MixedResonantTerms);
        }
        if i + j == 0 {
            continue;
        }
        if m.component == 1 { a.push((i, j)) } else { b.push((i, j)) }
    }
    a.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
    b.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
    Ok(RealNormalForm { p: r.spec.p(), q: r.spec.q(), degree: r.degree, a, b })
}

fn expected_indices(degree: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut s = 1;
    while 1 + 2 * s <= degree {
        out.extend((0..=s).rev().map(|i| (i, s - i)));
        s += 1;
    }
    out
}

fn delta_power(i: u32, j: u32, k: u32) -> Poly<Rational, 4> {
    let d1 = Poly::var(0).mul(&Poly::var(0)).add(&Poly::var(1).mul(&Poly::var(1)));
    let d2 = Poly::var(2).mul(&Poly::var(2)).add(&Poly::var(3).mul(&Poly::var(3)));
    let mut out = Poly::constant(int(1));
    for _ in 0..i {
        out = out.mul_truncated(&d1, k);
    }
    for _ in 0..j {
        out = out.mul_truncated(&d2, k);
    }
    out
}

fn sum_label(name: char, idx: &[(u32, u32)], latex: bool) -> String {
    if idx.is_empty() {
        return String::new();
    }
    let terms: Vec<String> = idx
        .iter()
        .map(|&(i, j)| {
            let mut t = if latex { format!("{name}_{{{i}{j}}}") } else { format!("{name}{i}{j}") };
            for (v, e) in [("D1", i), ("D2", j)] {
                let v = if latex { v.replace('D', "\\Delta_") } else { v.to_string() };
                match e {
                    0 => {}
                    1 => {
                        if latex {
                            t.push_str(&v)
                        } else {
                            let _ = write!(t, "*{v}");
                        }
                    }
                    e => {
                        if latex {
                            let _ = write!(t, "{v}^{{{e}}}");
                        } else {
                            let _ = write!(t, "*{v}^{e}");
                        }
                    }
                }
            }
            t
        })
        .collect();
    terms.join(" + ")
}

impl RealNormalForm {
    /// Every `a_ij`, `b_ij` with `1 + 2(i + j) <= degree` is present.
    pub fn is_full_pattern(&self) -> bool {
        let e = expected_indices(self.degree);
        self.a == e && self.b == e
    }

    pub fn parameter_count(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Concrete field for given parameter values; missing ones are zero.
    pub fn instantiate(
        &self,
        a: &BTreeMap<(u32, u32), Rational>,
        b: &BTreeMap<(u32, u32), Rational>,
    ) -> PolyVF<Rational> {
        let k = self.degree;
        let block = |freq: u32, idx: &[(u32, u32)], vals: &BTreeMap<(u32, u32), Rational>, u: usize, v: usize| {
            let mut s = Poly::constant(int(freq as i64));
            for ij in idx {
                if let Some(c) = vals.get(ij) {
                    s = s.add(&delta_power(ij.0, ij.1, k).scale(c));
                }
            }
            let first = Poly::var(v).mul_truncated(&s, k).neg();
            let second = Poly::var(u).mul_truncated(&s, k);
            (first, second)
        };
        let (x1, x2) = block(self.p, &self.a, a, 0, 1);
        let (y1, y2) = block(self.q, &self.b, b, 2, 3);
        PolyVF::new([x1, x2, y1, y2], k)
    }

    pub fn to_text(&self) -> String {
        let (sa, sb) = (sum_label('a', &self.a, false), sum_label('b', &self.b, false));
        let tail = |v: &str, s: &str, neg: bool| {
            if s.is_empty() {
                String::new()
            } else {
                format!(" {} {v}*({s})", if neg { "-" } else { "+" })
            }
        };
        let (p, q) = (self.p, self.q);
        let mut out = String::new();
        let _ = writeln!(out, "# D1 = x1^2 + x2^2, D2 = y1^2 + y2^2, degree <= {}", self.degree);
        let _ = writeln!(out, "dx1 = -{p}*x2{}", tail("x2", &sa, true));
        let _ = writeln!(out, "dx2 = {p}*x1{}", tail("x1", &sa, false));
        let _ = writeln!(out, "dy1 = -{q}*y2{}", tail("y2", &sb, true));
        let _ = writeln!(out, "dy2 = {q}*y1{}", tail("y1", &sb, false));
        out
    }

    pub fn to_latex(&self) -> String {
        let (sa, sb) = (sum_label('a', &self.a, true), sum_label('b', &self.b, true));
        let tail = |v: &str, s: &str, neg: bool| {
            if s.is_empty() {
                String::new()
            } else {
                format!("{}{v}\\left({s}\\right)", if neg { "-" } else { "+" })
            }
        };
        let (p, q) = (self.p, self.q);
        let rows = [
            format!("\\dot{{x_1}}&=&-{p}x_{{2}}{}", tail("x_2", &sa, true)),
            format!("\\dot{{x_2}}&=&{p}x_{{1}}{}", tail("x_1", &sa, false)),
            format!("\\dot{{y_1}}&=&-{q}y_{{2}}{}", tail("y_2", &sb, true)),
            format!("\\dot{{y_2}}&=&{q}y_{{1}}{}", tail("y_1", &sb, false)),
        ];
        format!(
            "\\left\\{{\n\\begin{{array}}{{ccc}}\n{}\n\\end{{array}}\n\\right.\n",
            rows.join("\\\\\n")
        )
    }
}
