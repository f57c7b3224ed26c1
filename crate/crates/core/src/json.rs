//! JSON encodings of the exact objects. Integers are written as decimal
//! strings so that nothing is lost to floating point on the way through.
//!
//! | object | encoding |
//! |---|---|
//! | rational | `{"num": "3", "den": "2"}` |
//! | element of `Q(√d)` | `{"a": rational, "b": rational, "d": 3}` |
//! | matrix | 4 rows of 4 entries |
//! | field | `{"degree": k, "components": [[{"exponents": [..], "coeff": rational}, ..] x4]}` |

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::groups::{MatGroup, SignAssignment};
use crate::matrix::Mat4;
use crate::normalform::{CoeffConstraint, NormalFormResult, ResMonomial};
use crate::poly::{Monomial, Poly};
use crate::quad::QuadScalar;
use crate::scalar::{Rational, Scalar};
use crate::solver::{BlockAngles, InvolutionSolution};
use crate::vecfield::PolyVF;

fn bad(what: &str) -> Error {
    Error::Json(format!("expected {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| Error::Json(format!("missing key `{key}`")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64, Error> {
    v.as_u64().ok_or_else(|| bad(what))
}

fn bigint(v: &Value) -> Result<BigInt, Error> {
    match v {
        Value::String(s) => BigInt::from_str(s).map_err(|_| bad("integer string")),
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer")),
        _ => Err(bad("integer")),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

pub fn rational_from_json(v: &Value) -> Result<Rational, Error> {
    let den = bigint(field(v, "den")?)?;
    if den == BigInt::from(0) {
        return Err(bad("nonzero denominator"));
    }
    Ok(Rational::new(bigint(field(v, "num")?)?, den))
}

pub fn quad_to_json(x: &QuadScalar) -> Value {
    json!({"a": rational_to_json(x.a()), "b": rational_to_json(x.b()), "d": x.d()})
}

pub fn quad_from_json(v: &Value) -> Result<QuadScalar, Error> {
    QuadScalar::new(
        rational_from_json(field(v, "a")?)?,
        rational_from_json(field(v, "b")?)?,
        as_u64(field(v, "d")?, "radicand")?,
    )
}

pub fn matrix_to_json<T: Scalar>(m: &Mat4<T>, entry: impl Fn(&T) -> Value) -> Value {
    Value::Array(m.rows().iter().map(|row| Value::Array(row.iter().map(&entry).collect())).collect())
}

pub fn matrix_from_json<T: Scalar>(v: &Value, entry: impl Fn(&Value) -> Result<T, Error>) -> Result<Mat4<T>, Error> {
    let rows = v.as_array().filter(|r| r.len() == 4).ok_or_else(|| bad("4 rows"))?;
    let mut out: [[T; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 4).ok_or_else(|| bad("4 entries per row"))?;
        for (j, e) in row.iter().enumerate() {
            out[i][j] = entry(e)?;
        }
    }
    Ok(Mat4::from_fn(|i, j| out[i][j].clone()))
}

pub fn qmat_to_json(m: &Mat4<QuadScalar>) -> Value {
    matrix_to_json(m, quad_to_json)
}

pub fn qmat_from_json(v: &Value) -> Result<Mat4<QuadScalar>, Error> {
    let m = matrix_from_json(v, quad_from_json)?;
    m.radicand()?;
    Ok(m)
}

/// One entry of `solve-involutions --json`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub matrix: Mat4<QuadScalar>,
    pub angles: BlockAngles,
    pub degenerate: bool,
    /// Index of the generated group among the classes, `None` when degenerate.
    pub class_id: Option<usize>,
}

impl SolutionRecord {
    pub fn new(s: &InvolutionSolution, class_id: Option<usize>) -> Self {
        Self { matrix: s.s.clone(), angles: s.angles, degenerate: s.degenerate, class_id }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "matrix": qmat_to_json(&self.matrix),
            "angles": {"k1": self.angles.k1, "k2": self.angles.k2, "n": self.angles.n},
            "degenerate": self.degenerate,
            "class_id": self.class_id,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let a = field(v, "angles")?;
        let small = |key: &str| -> Result<u32, Error> {
            u32::try_from(as_u64(field(a, key)?, key)?).map_err(|_| bad("small angle index"))
        };
        let class_id = match field(v, "class_id")? {
            Value::Null => None,
            c => Some(as_u64(c, "class id")? as usize),
        };
        Ok(Self {
            matrix: qmat_from_json(field(v, "matrix")?)?,
            angles: BlockAngles { k1: small("k1")?, k2: small("k2")?, n: small("n")? },
            degenerate: field(v, "degenerate")?.as_bool().ok_or_else(|| bad("boolean"))?,
            class_id,
        })
    }
}

pub fn solutions_to_json(records: &[SolutionRecord]) -> Value {
    Value::Array(records.iter().map(SolutionRecord::to_json).collect())
}

pub fn solutions_from_json(v: &Value) -> Result<Vec<SolutionRecord>, Error> {
    v.as_array().ok_or_else(|| bad("array of solutions"))?.iter().map(SolutionRecord::from_json).collect()
}

/// `{order, elements, rho}` with `rho[i]` the sign of `elements[i]`.
pub fn group_to_json(g: &MatGroup<QuadScalar>, signs: &SignAssignment<QuadScalar>) -> Value {
    json!({
        "order": g.order(),
        "elements": g.elements().iter().map(qmat_to_json).collect::<Vec<_>>(),
        "rho": g.elements().iter().map(|e| signs.sign(e)).collect::<Vec<_>>(),
    })
}

pub fn normal_form_to_json(r: &NormalFormResult) -> Value {
    monomials_to_json(&r.surviving)
}

pub fn monomials_to_json(list: &[(ResMonomial, CoeffConstraint)]) -> Value {
    Value::Array(
        list.iter()
            .map(|(m, c)| json!({"component": m.component, "exponents": m.exps, "constraint": c.label()}))
            .collect(),
    )
}

pub fn monomials_from_json(v: &Value) -> Result<Vec<(ResMonomial, CoeffConstraint)>, Error> {
    let items = v.as_array().ok_or_else(|| bad("array of monomials"))?;
    items
        .iter()
        .map(|item| {
            let component = as_u64(field(item, "component")?, "component")?;
            if !(1..=2).contains(&component) {
                return Err(bad("component 1 or 2"));
            }
            let e = field(item, "exponents")?.as_array().filter(|e| e.len() == 4).ok_or_else(|| bad("4 exponents"))?;
            let mut exps = [0u32; 4];
            for (slot, x) in exps.iter_mut().zip(e) {
                *slot = u32::try_from(as_u64(x, "exponent")?).map_err(|_| bad("small exponent"))?;
            }
            let label = field(item, "constraint")?.as_str().ok_or_else(|| bad("constraint label"))?;
            let c = CoeffConstraint::from_label(label).ok_or_else(|| Error::Json(format!("unknown constraint `{label}`")))?;
            Ok((ResMonomial::new(component as u8, exps), c))
        })
        .collect()
}

/// `{"2": 0, "3": 4, ...}`.
pub fn dimensions_to_json(dims: &BTreeMap<u32, usize>) -> Value {
    Value::Object(dims.iter().map(|(k, d)| (k.to_string(), json!(d))).collect::<Map<_, _>>())
}

pub fn dimensions_from_json(v: &Value) -> Result<BTreeMap<u32, usize>, Error> {
    v.as_object()
        .ok_or_else(|| bad("object of dimensions"))?
        .iter()
        .map(|(k, d)| {
            let k = k.parse::<u32>().map_err(|_| bad("degree key"))?;
            Ok((k, as_u64(d, "dimension")? as usize))
        })
        .collect()
}

pub fn field_to_json(x: &PolyVF<Rational>) -> Value {
    let comp = |p: &Poly<Rational, 4>| -> Value {
        Value::Array(
            p.terms()
                .map(|(m, c)| json!({"exponents": m.0, "coeff": rational_to_json(c)}))
                .collect(),
        )
    };
    json!({"degree": x.max_degree(), "components": x.components().iter().map(comp).collect::<Vec<_>>()})
}

pub fn field_from_json(v: &Value) -> Result<PolyVF<Rational>, Error> {
    let degree = u32::try_from(as_u64(field(v, "degree")?, "degree")?).map_err(|_| bad("small degree"))?;
    let comps = field(v, "components")?.as_array().filter(|c| c.len() == 4).ok_or_else(|| bad("4 components"))?;
    let mut out: [Poly<Rational, 4>; 4] = std::array::from_fn(|_| Poly::zero());
    for (slot, terms) in out.iter_mut().zip(comps) {
        for t in terms.as_array().ok_or_else(|| bad("array of terms"))? {
            let e = field(t, "exponents")?.as_array().filter(|e| e.len() == 4).ok_or_else(|| bad("4 exponents"))?;
            let mut m = Monomial::one();
            for (i, x) in e.iter().enumerate() {
                m.0[i] = u16::try_from(as_u64(x, "exponent")?).map_err(|_| bad("small exponent"))?;
            }
            slot.add_term(m, rational_from_json(field(t, "coeff")?)?);
        }
    }
    Ok(PolyVF::new(out, degree))
}
