//! Named involutions used as fixtures and by the CLI (`builtin:S1@n4`).
//!
//! These are entered by hand, independently of the solver, so comparing the
//! two is meaningful.

use crate::error::Error;
use crate::matrix::{r0, Mat4};
use crate::quad::QuadScalar;
use crate::scalar::{int, rat, Rational};
use crate::QMat4;

fn m(rows: [[i64; 4]; 4]) -> QMat4 {
    Mat4::from_i64(rows)
}

fn half_sqrt3() -> QuadScalar {
    QuadScalar::new(Rational::from_integer(0.into()), rat(1, 2), 3).expect("square-free")
}

/// `[[−1/2, √3/2], [√3/2, 1/2]]`
fn d3_block() -> [[QuadScalar; 2]; 2] {
    let h = half_sqrt3();
    [[QuadScalar::rational(rat(-1, 2)), h.clone()], [h, QuadScalar::rational(rat(1, 2))]]
}

fn sign_block(top: i64) -> [[QuadScalar; 2]; 2] {
    let z = || QuadScalar::rational(int(0));
    [[QuadScalar::rational(int(top)), z()], [z(), QuadScalar::rational(int(-top))]]
}

/// The four Klein-group solutions; the last one is `R₀`.
pub fn klein_solutions() -> [QMat4; 4] {
    [
        m([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
        m([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
        m([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
        m([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
    ]
}

/// The three listed order-3 dihedral solutions.
pub fn d3_listed() -> [QMat4; 3] {
    [
        Mat4::block_diagonal(d3_block(), d3_block()),
        Mat4::block_diagonal(d3_block(), sign_block(1)),
        Mat4::block_diagonal(sign_block(1), d3_block()),
    ]
}

/// The six displayed pairs for the order-8 dihedral group.
pub fn xi_classes() -> [[QMat4; 2]; 6] {
    [
        [
            m([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
            m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
        ],
        [
            m([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
            m([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]),
        ],
        [
            m([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
            m([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]),
        ],
        [
            m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
            m([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]),
        ],
        [
            m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
            m([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
        ],
        [
            m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]),
            m([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
        ],
    ]
}

/// Representative `S_j` of class `j` (1-based): the member whose complex
/// form is the involution `φ_j`.
pub fn d4_representative(j: u32) -> Result<QMat4, Error> {
    let member = match j {
        1 => 1,
        2..=6 => 0,
        _ => return Err(Error::GroupIndex(j)),
    };
    Ok(xi_classes()[j as usize - 1][member].clone())
}

pub fn d4_representative_rational(j: u32) -> Result<Mat4<Rational>, Error> {
    Ok(d4_representative(j)?.map(|e| e.a().clone()))
}

/// Every name accepted by [`lookup`].
pub fn names() -> Vec<String> {
    let mut out = vec!["R0".to_string()];
    out.extend((1..=4).map(|i| format!("S{i}@n2")));
    out.extend((1..=3).map(|i| format!("S{i}@n3")));
    out.extend((1..=6).map(|i| format!("S{i}@n4")));
    for i in 1..=6 {
        out.push(format!("Xi{i}a@n4"));
        out.push(format!("Xi{i}b@n4"));
    }
    out
}

/// Resolves `R0`, `S<i>@n<2|3|4>` or `Xi<i><a|b>@n4`; a `builtin:` prefix
/// is ignored. `Xi<i>@n4` means the first member.
pub fn lookup(name: &str) -> Result<QMat4, Error> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    let unknown = || Error::UnknownBuiltin(name.to_string());
    if name == "R0" {
        return Ok(r0());
    }
    let (head, n) = name.split_once("@n").ok_or_else(unknown)?;
    let n: u32 = n.parse().map_err(|_| unknown())?;
    if let Some(i) = head.strip_prefix("Xi") {
        if n != 4 {
            return Err(unknown());
        }
        let (digits, member) = match i.strip_suffix('a') {
            Some(d) => (d, 0),
            None => match i.strip_suffix('b') {
                Some(d) => (d, 1),
                None => (i, 0),
            },
        };
        let k: usize = digits.parse().map_err(|_| unknown())?;
        return xi_classes().get(k.wrapping_sub(1)).map(|c| c[member].clone()).ok_or_else(unknown);
    }
    let i: usize = head.strip_prefix('S').and_then(|s| s.parse().ok()).ok_or_else(unknown)?;
    let idx = i.wrapping_sub(1);
    match n {
        2 => klein_solutions().get(idx).cloned().ok_or_else(unknown),
        3 => d3_listed().get(idx).cloned().ok_or_else(unknown),
        4 => d4_representative(i as u32).map_err(|_| unknown()),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{anticommutes, is_involution};

    #[test]
    fn every_builtin_is_a_reversing_involution() {
        let a = crate::matrix::a_matrix::<QuadScalar>(&int(1), &int(2));
        for name in names() {
            let s = lookup(&name).unwrap();
            assert!(is_involution(&s), "{name}");
            assert!(anticommutes(&s, &a), "{name}");
        }
    }

    #[test]
    fn lookup_variants() {
        assert_eq!(lookup("builtin:S1@n4").unwrap(), xi_classes()[0][1]);
        assert_eq!(lookup("Xi3@n4").unwrap(), xi_classes()[2][0]);
        assert_eq!(lookup("Xi3b@n4").unwrap(), xi_classes()[2][1]);
        assert_eq!(lookup("S4@n2").unwrap(), r0());
        for bad in ["S5@n2", "S0@n3", "Xi7@n4", "Xi1@n3", "T1@n4", "S1", "S1@n5"] {
            assert!(matches!(lookup(bad), Err(Error::UnknownBuiltin(_))), "{bad}");
        }
    }
}
