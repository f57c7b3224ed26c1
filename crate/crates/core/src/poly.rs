//! Sparse multivariate polynomials in `N` variables with graded ordering and
//! explicit truncation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Error;
use crate::matrix::Mat4;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Exponent vector. Ordered by total degree, then lexicographically with
/// larger leading exponents first (`x1^2 < x1*x2 < x2^2` within degree 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<const N: usize>(pub [u16; N]);

impl<const N: usize> Monomial<N> {
    pub fn one() -> Self {
        Self([0; N])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exps(&self) -> &[u16; N] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// All exponent vectors of total degree exactly `k`, in monomial order.
    pub fn of_degree(k: u32) -> Vec<Self> {
        fn rec<const N: usize>(i: usize, left: u32, cur: &mut [u16; N], out: &mut Vec<Monomial<N>>) {
            if i == N - 1 {
                cur[i] = left as u16;
                out.push(Monomial(*cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if N == 0 {
            if k == 0 {
                out.push(Self([0; N]));
            }
            return out;
        }
        rec(0, k, &mut [0; N], &mut out);
        out
    }
}

impl<const N: usize> Ord for Monomial<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl<const N: usize> PartialOrd for Monomial<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<T, const N: usize> {
    terms: BTreeMap<Monomial<N>, T>,
}

impl<T: Scalar, const N: usize> Default for Poly<T, N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar, const N: usize> Poly<T, N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), T::one())
    }

    pub fn term(m: Monomial<N>, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<N>, T)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial<N>, c: T) {
        if c.is_negligible() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_negligible() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<N>, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<N>) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn truncate(&self, k: u32) -> Self {
        Self { terms: self.terms.iter().filter(|(m, _)| m.degree() <= k).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn homogeneous(&self, k: u32) -> Self {
        Self { terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, c.clone() * v.clone())))
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, v)| (*m, -v.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }

    /// Product with every monomial above degree `k` discarded.
    pub fn mul_truncated(&self, other: &Self, k: u32) -> Self {
        let mut acc: HashMap<Monomial<N>, T> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > k {
                break;
            }
            for (mb, cb) in &other.terms {
                if da.saturating_add(mb.degree()) > k {
                    break;
                }
                let m = ma.mul(mb);
                let v = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(slot) => *slot = slot.clone() + v,
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        Self { terms: acc.into_iter().filter(|(_, c)| !c.is_negligible()).collect() }
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), T::from_i64(k as i64) * c.clone())
        }))
    }

    pub fn eval(&self, point: &[T; N]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    v = v * x.clone();
                }
            }
            acc + v
        })
    }

    /// Substitutes `subs[i]` for variable `i`, keeping degrees `<= k`.
    ///
    /// Exact modulo degree `k + 1` whenever every substituted polynomial has
    /// no constant term.
    pub fn compose<const M: usize>(&self, subs: &[Poly<T, M>; N], k: u32) -> Poly<T, M> {
        let mut memo: HashMap<Monomial<N>, Poly<T, M>> = HashMap::new();
        memo.insert(Monomial::one(), Poly::constant(T::one()));
        let no_constants = subs.iter().all(|s| s.min_degree().map_or(true, |d| d >= 1));
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if no_constants && m.degree() > k {
                break;
            }
            let prod = power_product(*m, subs, k, &mut memo);
            for (mm, cc) in prod.terms() {
                out.add_term(*mm, c.clone() * cc.clone());
            }
        }
        out
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U, N> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

fn power_product<T: Scalar, const N: usize, const M: usize>(
    m: Monomial<N>,
    subs: &[Poly<T, M>; N],
    k: u32,
    memo: &mut HashMap<Monomial<N>, Poly<T, M>>,
) -> Poly<T, M> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let i = (0..N).rev().find(|&i| m.0[i] > 0).expect("constant monomial is memoized");
    let mut prev = m;
    prev.0[i] -= 1;
    let p = power_product(prev, subs, k, memo).mul_truncated(&subs[i], k);
    memo.insert(m, p.clone());
    p
}

impl<T: Scalar> Poly<T, 4> {
    /// `p(M·ξ)`: substitution of a linear change of variables.
    pub fn substitute_linear(&self, m: &Mat4<T>) -> Self {
        let subs: [Poly<T, 4>; 4] = std::array::from_fn(|i| {
            Poly::from_terms((0..4).map(|j| (Monomial::var(j), m.get(i, j).clone())))
        });
        self.compose(&subs, self.degree().unwrap_or(0))
    }
}

/// Renders a rational polynomial in the text grammar: `-1*x2 + 3/2*x2*y1^2`.
pub fn format_poly<const N: usize>(p: &Poly<Rational, N>, names: &[&str; N]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c < &Rational::from_integer(0.into());
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format_rational(&mag));
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push_str(&format!("*{}", names[v])),
                e => out.push_str(&format!("*{}^{}", names[v], e)),
            }
        }
    }
    out
}

/// Parses the strict text grammar: each term is a rational coefficient
/// optionally followed by `*`-separated variable powers, terms joined by
/// `+`/`-`.
pub fn parse_poly<const N: usize>(s: &str, names: &[&str; N]) -> Result<Poly<Rational, N>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut expect_term = true;
    for ch in s.chars() {
        match ch {
            '+' | '-' if expect_term && cur.trim().is_empty() => {
                if ch == '-' {
                    sign = -sign;
                }
            }
            '+' | '-' => {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
                expect_term = true;
            }
            c => {
                if !c.is_whitespace() {
                    expect_term = false;
                }
                cur.push(c);
            }
        }
    }
    if cur.trim().is_empty() {
        return Err("dangling operator".into());
    }
    terms.push((sign, cur));

    let mut p = Poly::zero();
    for (sign, t) in terms {
        let mut factors = t.split('*').map(str::trim);
        let coeff_str = factors.next().unwrap_or("");
        let coeff = parse_rational(coeff_str).ok_or_else(|| format!("expected rational coefficient, found `{coeff_str}`"))?;
        let mut exps = [0u16; N];
        for f in factors {
            let (name, pow) = match f.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<u16>().map_err(|_| format!("bad exponent in `{f}`"))?),
                None => (f, 1),
            };
            let v = names.iter().position(|n| *n == name).ok_or_else(|| format!("unknown variable `{name}`"))?;
            exps[v] += pow;
        }
        p.add_term(Monomial(exps), Rational::from_integer(sign.into()) * coeff);
    }
    Ok(p)
}

impl<const N: usize> fmt::Display for Poly<Rational, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=N).map(|i| format!("v{i}")).collect();
        let refs: [&str; N] = std::array::from_fn(|i| names[i].as_str());
        f.write_str(&format_poly(self, &refs))
    }
}

pub(crate) fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}
