//! Polynomial vector fields and maps on `R⁴ = (x1, x2, y1, y2)`, truncated
//! at an explicit degree.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::matrix::Mat4;
use crate::poly::{format_poly, parse_error, parse_poly, Monomial, Poly};
use crate::scalar::{Rational, Scalar};

pub const VARS: [&str; 4] = ["x1", "x2", "y1", "y2"];

type Comps<T> = [Poly<T, 4>; 4];

fn linear_comps<T: Scalar>(m: &Mat4<T>) -> Comps<T> {
    std::array::from_fn(|i| Poly::from_terms((0..4).map(|j| (Monomial::var(j), m.get(i, j).clone()))))
}

fn linear_part_of<T: Scalar>(c: &Comps<T>) -> Mat4<T> {
    Mat4::from_fn(|i, j| c[i].coeff(&Monomial::var(j)))
}

/// `M·v` for a vector of polynomials.
fn mat_times<T: Scalar>(m: &Mat4<T>, v: &Comps<T>) -> Comps<T> {
    std::array::from_fn(|i| {
        (0..4).fold(Poly::zero(), |acc, j| if m.get(i, j).is_negligible() { acc } else { acc.add(&v[j].scale(m.get(i, j))) })
    })
}

/// `(Dh·v)` truncated at `k`.
fn jacobian_times<T: Scalar>(h: &Comps<T>, v: &Comps<T>, k: u32) -> Comps<T> {
    std::array::from_fn(|i| {
        (0..4).fold(Poly::zero(), |acc, j| acc.add(&h[i].derivative(j).mul_truncated(&v[j], k)))
    })
}

fn compose_comps<T: Scalar>(outer: &Comps<T>, inner: &Comps<T>, k: u32) -> Comps<T> {
    std::array::from_fn(|i| outer[i].compose(inner, k))
}

fn truncate_comps<T: Scalar>(c: &Comps<T>, k: u32) -> Comps<T> {
    std::array::from_fn(|i| c[i].truncate(k))
}

/// A polynomial vector field `ξ' = X(ξ)`, components `(ẋ1, ẋ2, ẏ1, ẏ2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVF<T> {
    components: Comps<T>,
    max_degree: u32,
}

impl<T: Scalar> PolyVF<T> {
    /// Monomials above `max_degree` are dropped.
    pub fn new(components: [Poly<T, 4>; 4], max_degree: u32) -> Self {
        Self { components: truncate_comps(&components, max_degree), max_degree }
    }

    pub fn zero(max_degree: u32) -> Self {
        Self::new(std::array::from_fn(|_| Poly::zero()), max_degree)
    }

    pub fn linear(m: &Mat4<T>, max_degree: u32) -> Self {
        Self::new(linear_comps(m), max_degree)
    }

    pub fn components(&self) -> &[Poly<T, 4>; 4] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly<T, 4> {
        &self.components[i]
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn with_max_degree(&self, k: u32) -> Self {
        Self::new(self.components.clone(), k)
    }

    pub fn linear_part(&self) -> Mat4<T> {
        linear_part_of(&self.components)
    }

    /// Terms of degree `>= 2`.
    pub fn nonlinear_part(&self) -> Self {
        self.sub(&self.homogeneous(0)).sub(&self.homogeneous(1))
    }

    pub fn homogeneous(&self, k: u32) -> Self {
        Self { components: std::array::from_fn(|i| self.components[i].homogeneous(k)), max_degree: self.max_degree }
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.max_degree.min(other.max_degree);
        Self::new(std::array::from_fn(|i| self.components[i].add(&other.components[i])), k)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.max_degree.min(other.max_degree);
        Self::new(std::array::from_fn(|i| self.components[i].sub(&other.components[i])), k)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { components: std::array::from_fn(|i| self.components[i].scale(c)), max_degree: self.max_degree }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PolyVF<U> {
        PolyVF { components: std::array::from_fn(|i| self.components[i].map_coeffs(&f)), max_degree: self.max_degree }
    }

    /// `M·X(ξ)`.
    pub fn left_linear(&self, m: &Mat4<T>) -> Self {
        Self { components: mat_times(m, &self.components), max_degree: self.max_degree }
    }

    /// `X(M·ξ)`.
    pub fn precompose_linear(&self, m: &Mat4<T>) -> Self {
        let subs = linear_comps(m);
        Self::new(compose_comps(&self.components, &subs, self.max_degree), self.max_degree)
    }

    /// Largest degree actually present.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Poly::degree).max()
    }
}

/// A polynomial map fixing the origin with invertible linear part.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap<T> {
    components: Comps<T>,
    max_degree: u32,
}

impl<T: Scalar> PolyMap<T> {
    pub fn new(components: [Poly<T, 4>; 4], max_degree: u32) -> Result<Self, Error> {
        let m = Self { components: truncate_comps(&components, max_degree), max_degree };
        if m.linear_part().inverse().is_none() {
            return Err(Error::SingularLinearPart);
        }
        Ok(m)
    }

    pub fn identity(max_degree: u32) -> Self {
        Self::linear(&Mat4::identity(), max_degree).expect("identity is invertible")
    }

    pub fn linear(m: &Mat4<T>, max_degree: u32) -> Result<Self, Error> {
        Self::new(linear_comps(m), max_degree)
    }

    pub fn components(&self) -> &[Poly<T, 4>; 4] {
        &self.components
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn linear_part(&self) -> Mat4<T> {
        linear_part_of(&self.components)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PolyMap<U> {
        PolyMap { components: std::array::from_fn(|i| self.components[i].map_coeffs(&f)), max_degree: self.max_degree }
    }

    /// `self ∘ inner`, truncated at the smaller degree.
    pub fn compose(&self, inner: &Self) -> Self {
        let k = self.max_degree.min(inner.max_degree);
        Self { components: compose_comps(&self.components, &inner.components, k), max_degree: k }
    }

    /// `true` iff the two maps agree through degree `k`.
    pub fn agrees_with(&self, other: &Self, k: u32) -> bool {
        (0..4).all(|i| self.components[i].truncate(k).sub(&other.components[i].truncate(k)).is_zero())
    }

    /// Formal inverse through `max_degree`, by the fixed-point iteration
    /// `g = M⁻¹(y − N(g))` where `h = M + N`.
    pub fn inverse(&self) -> Self {
        let k = self.max_degree;
        let m_inv = self.linear_part().inverse().expect("checked at construction");
        let lin = linear_comps(&self.linear_part());
        let nonlinear: Comps<T> = std::array::from_fn(|i| self.components[i].sub(&lin[i]));
        let y = linear_comps(&Mat4::identity());
        let mut g = linear_comps(&m_inv);
        for _ in 1..k {
            let ng = compose_comps(&nonlinear, &g, k);
            let rhs: Comps<T> = std::array::from_fn(|i| y[i].sub(&ng[i]));
            g = truncate_comps(&mat_times(&m_inv, &rhs), k);
        }
        Self { components: g, max_degree: k }
    }
}

/// Outcome of a coefficientwise identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport<T> {
    /// Degree through which the identity was checked.
    pub degree: u32,
    /// `(component, monomial, residual coefficient)`.
    pub offending: Vec<(usize, Monomial<4>, T)>,
}

impl<T> SymmetryReport<T> {
    pub fn passes(&self) -> bool {
        self.offending.is_empty()
    }
}

fn report<T: Scalar>(residual: &Comps<T>, degree: u32) -> SymmetryReport<T> {
    let offending = residual
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.terms().map(move |(m, c)| (i, *m, c.clone())))
        .collect();
    SymmetryReport { degree, offending }
}

/// Checks `φ·X(ξ) = sign·X(φξ)` for a linear `φ`.
pub fn check_symmetry<T: Scalar>(x: &PolyVF<T>, phi: &Mat4<T>, sign: i8) -> SymmetryReport<T> {
    let lhs = x.left_linear(phi);
    let rhs = x.precompose_linear(phi);
    let rhs = if sign < 0 { rhs.scale(&-T::one()) } else { rhs };
    report(lhs.sub(&rhs).components(), x.max_degree())
}

/// Checks `Dφ(ξ)·X(ξ) = sign·X(φ(ξ))` for a polynomial map `φ`.
pub fn check_map_symmetry<T: Scalar>(x: &PolyVF<T>, phi: &PolyMap<T>, sign: i8) -> SymmetryReport<T> {
    let k = x.max_degree();
    let lhs = jacobian_times(phi.components(), x.components(), k);
    let rhs = compose_comps(x.components(), phi.components(), k);
    let s = if sign < 0 { -T::one() } else { T::one() };
    let residual: Comps<T> = std::array::from_fn(|i| lhs[i].sub(&rhs[i].scale(&s)).truncate(k));
    report(&residual, k)
}

/// Averages `X` over a finite group with sign character `ρ`:
/// `P(X)(ξ) = |G|⁻¹ Σ ρ(g)·g⁻¹·X(gξ)`. The result satisfies
/// `g·P(X)(ξ) = ρ(g)·P(X)(gξ)` for every `g`, and `P` fixes such fields.
pub fn symmetrize<T: Scalar>(x: &PolyVF<T>, group: &[(Mat4<T>, i8)]) -> Result<PolyVF<T>, Error> {
    let mut acc = PolyVF::zero(x.max_degree());
    for (g, rho) in group {
        let inv = g.inverse().ok_or(Error::SingularGenerator)?;
        let term = x.precompose_linear(g).left_linear(&inv);
        acc = if *rho < 0 { acc.sub(&term) } else { acc.add(&term) };
    }
    let n = T::from_i64(group.len() as i64);
    Ok(acc.scale(&(T::one() / n)))
}

/// `h = Id + Dφ(0)·φ`, which satisfies `h∘φ = Dφ(0)∘h` whenever `φ` is an
/// involution. Checked through degree `k`.
pub fn linearize_involution<T: Scalar>(phi: &PolyMap<T>, k: u32) -> Result<PolyMap<T>, Error> {
    let phi = PolyMap { components: truncate_comps(phi.components(), k), max_degree: k };
    let l = phi.linear_part();
    if !(&l * &l).is_identity() || !phi.compose(&phi).agrees_with(&PolyMap::identity(k), k) {
        return Err(Error::NotInvolution { degree: k });
    }
    let id = linear_comps(&Mat4::identity());
    let lphi = mat_times(&l, phi.components());
    PolyMap::new(std::array::from_fn(|i| id[i].add(&lphi[i])), k)
}

/// Pushforward `h_*X = (Dh·X)∘h⁻¹`, truncated at `x.max_degree()`.
pub fn conjugate<T: Scalar>(x: &PolyVF<T>, h: &PolyMap<T>) -> Result<PolyVF<T>, Error> {
    let k = x.max_degree();
    if h.linear_part().inverse().is_none() {
        return Err(Error::SingularLinearPart);
    }
    let h = PolyMap { components: truncate_comps(h.components(), k), max_degree: k };
    let pushed = jacobian_times(h.components(), x.components(), k);
    let inv = h.inverse();
    Ok(PolyVF::new(compose_comps(&pushed, inv.components(), k), k))
}

/// The involution pairs whose reversibility conditions are tabulated
/// coordinatewise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityFamily {
    Z2Z2S1,
    Z2Z2S2,
    Z2Z2S3,
    D4S1,
}

impl ParityFamily {
    pub const ALL: [ParityFamily; 4] = [Self::Z2Z2S1, Self::Z2Z2S2, Self::Z2Z2S3, Self::D4S1];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Z2Z2S1 => "Z2Z2-S1",
            Self::Z2Z2S2 => "Z2Z2-S2",
            Self::Z2Z2S3 => "Z2Z2-S3",
            Self::D4S1 => "D4-S1",
        }
    }

    /// The second involution of the pair (the first is always `R₀`).
    pub fn involution<T: Scalar>(self) -> Mat4<T> {
        match self {
            Self::Z2Z2S1 => Mat4::from_i64(diag([-1, 1, -1, 1])),
            Self::Z2Z2S2 => Mat4::from_i64(diag([-1, 1, 1, -1])),
            Self::Z2Z2S3 => Mat4::from_i64(diag([1, -1, -1, 1])),
            Self::D4S1 => Mat4::from_i64([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
        }
    }

    fn identities(self) -> Vec<Identity> {
        let r0 = diag([1, -1, 1, -1]);
        let mut ids: Vec<Identity> = [-1, 1, -1, 1]
            .into_iter()
            .enumerate()
            .map(|(i, sign)| Identity { lhs: i, rhs: i, sign, sub: r0 })
            .collect();
        let second = |d: [i64; 4], signs: [i64; 4]| {
            (0..4).map(move |i| Identity { lhs: i, rhs: i, sign: signs[i], sub: diag(d) }).collect::<Vec<_>>()
        };
        match self {
            Self::Z2Z2S1 => ids.extend(second([-1, 1, -1, 1], [1, -1, 1, -1])),
            Self::Z2Z2S2 => ids.extend(second([-1, 1, 1, -1], [1, -1, -1, 1])),
            Self::Z2Z2S3 => ids.extend(second([1, -1, -1, 1], [-1, 1, 1, -1])),
            Self::D4S1 => {
                let swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]];
                ids.extend([(0, 1, -1), (1, 0, -1), (2, 2, -1), (3, 3, 1)].map(|(lhs, rhs, sign)| Identity {
                    lhs,
                    rhs,
                    sign,
                    sub: swap,
                }));
            }
        }
        ids
    }

    /// `(components summed, restriction)`: the sum must vanish identically
    /// on the image of the restriction.
    fn vanishing(self) -> Vec<(Vec<usize>, [[i64; 4]; 4])> {
        let on_x1y1 = diag([1, 0, 1, 0]);
        let mut out = vec![(vec![0], on_x1y1), (vec![2], on_x1y1)];
        match self {
            Self::Z2Z2S1 => out.extend([(vec![1], diag([0, 1, 0, 1])), (vec![3], diag([0, 1, 0, 1]))]),
            Self::Z2Z2S2 => out.extend([(vec![1], diag([0, 1, 1, 0])), (vec![2], diag([0, 1, 1, 0]))]),
            Self::Z2Z2S3 => out.extend([(vec![0], diag([1, 0, 0, 1])), (vec![3], diag([1, 0, 0, 1]))]),
            Self::D4S1 => {
                // the fixed plane x1 = x2, y2 = 0
                let diagonal = [[1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]];
                out.extend([(vec![2], diagonal), (vec![0, 1], diagonal)]);
            }
        }
        out
    }
}

impl FromStr for ParityFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL.into_iter().find(|f| f.tag() == s).ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for ParityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn diag(d: [i64; 4]) -> [[i64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { d[i] } else { 0 }))
}

/// `f_lhs(ξ) = sign·f_rhs(M ξ)`.
struct Identity {
    lhs: usize,
    rhs: usize,
    sign: i64,
    sub: [[i64; 4]; 4],
}

fn is_rotation_generator<T: Scalar>(l: &Mat4<T>) -> bool {
    let block = |o: usize| {
        let a = l.get(o + 1, o);
        !a.is_negligible() && (l.get(o, o + 1).clone() + a.clone()).is_negligible()
    };
    let pattern_zero = (0..4).all(|i| (0..4).all(|j| (i / 2 == j / 2 && i != j) || l.get(i, j).is_negligible()));
    pattern_zero && block(0) && block(2)
}

/// Names of the coordinate identities violated by the nonlinear part of `x`.
pub fn parity_violations<T: Scalar>(x: &PolyVF<T>, family: ParityFamily) -> Result<Vec<String>, Error> {
    if !is_rotation_generator(&x.linear_part()) {
        return Err(Error::UnexpectedLinearPart);
    }
    let f = x.nonlinear_part();
    let mut out = Vec::new();
    for id in family.identities() {
        let m = Mat4::<T>::from_i64(id.sub);
        let moved = f.precompose_linear(&m).component(id.rhs).scale(&T::from_i64(id.sign));
        if !f.component(id.lhs).sub(&moved).is_zero() {
            out.push(format!("f{}(x) = {}f{}(M x), M = {:?}", id.lhs + 1, if id.sign < 0 { "-" } else { "" }, id.rhs + 1, id.sub));
        }
    }
    for (comps, restriction) in family.vanishing() {
        let restricted = f.precompose_linear(&Mat4::from_i64(restriction));
        let sum = comps.iter().fold(Poly::zero(), |acc, &c| acc.add(restricted.component(c)));
        if !sum.is_zero() {
            let names: Vec<String> = comps.iter().map(|c| format!("f{}", c + 1)).collect();
            out.push(format!("{} vanishes on the image of {:?}", names.join("+"), restriction));
        }
    }
    Ok(out)
}

pub fn check_parity_conditions<T: Scalar>(x: &PolyVF<T>, family: ParityFamily) -> Result<bool, Error> {
    Ok(parity_violations(x, family)?.is_empty())
}

// text format

fn parse_lines(text: &str, prefix: &str) -> Result<(Comps<Rational>, Option<u32>), Error> {
    let mut comps: [Option<Poly<Rational, 4>>; 4] = Default::default();
    let mut degree = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| parse_error(line_no, "expected `name = expression`"))?;
        let lhs = lhs.trim();
        if lhs == "degree" {
            degree = Some(rhs.trim().parse().map_err(|_| parse_error(line_no, "degree must be a nonnegative integer"))?);
            continue;
        }
        let var = lhs.strip_prefix(prefix).ok_or_else(|| parse_error(line_no, format!("unexpected left-hand side `{lhs}`")))?;
        let i = VARS.iter().position(|v| *v == var).ok_or_else(|| parse_error(line_no, format!("unknown component `{lhs}`")))?;
        if comps[i].is_some() {
            return Err(parse_error(line_no, format!("component `{lhs}` given twice")));
        }
        comps[i] = Some(parse_poly(rhs, &VARS).map_err(|m| parse_error(line_no, m))?);
    }
    let mut out: Comps<Rational> = std::array::from_fn(|_| Poly::zero());
    for (i, c) in comps.into_iter().enumerate() {
        out[i] = c.ok_or_else(|| parse_error(0, format!("missing component `{prefix}{}`", VARS[i])))?;
    }
    Ok((out, degree))
}

fn natural_degree(c: &Comps<Rational>) -> u32 {
    c.iter().filter_map(Poly::degree).max().unwrap_or(1).max(1)
}

/// Parses lines `dx1 = …` through `dy2 = …`, an optional `degree = k`, and
/// `#` comments.
pub fn parse_field(text: &str) -> Result<PolyVF<Rational>, Error> {
    let (c, degree) = parse_lines(text, "d")?;
    let k = degree.unwrap_or_else(|| natural_degree(&c));
    Ok(PolyVF::new(c, k))
}

pub fn format_field(x: &PolyVF<Rational>) -> String {
    let mut out = format!("degree = {}\n", x.max_degree());
    for (i, c) in x.components().iter().enumerate() {
        out.push_str(&format!("d{} = {}\n", VARS[i], format_poly(c, &VARS)));
    }
    out
}

/// Parses lines `x1 = …` through `y2 = …` with the same conventions as
/// [`parse_field`].
pub fn parse_map(text: &str) -> Result<PolyMap<Rational>, Error> {
    let (c, degree) = parse_lines(text, "")?;
    let k = degree.unwrap_or_else(|| natural_degree(&c));
    PolyMap::new(c, k)
}

pub fn format_map(h: &PolyMap<Rational>) -> String {
    let mut out = format!("degree = {}\n", h.max_degree());
    for (i, c) in h.components().iter().enumerate() {
        out.push_str(&format!("{} = {}\n", VARS[i], format_poly(c, &VARS)));
    }
    out
}
