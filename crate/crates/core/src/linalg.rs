//! Sparse Gaussian elimination over an exact field.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse row: column index → nonzero value.
pub type SparseRow<T> = BTreeMap<usize, T>;

/// Incrementally maintained row-echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    columns: usize,
    /// Pivot column → row normalized so the pivot entry is one.
    pivots: BTreeMap<usize, SparseRow<T>>,
}

impl<T: Scalar> EchelonBasis<T> {
    pub fn new(columns: usize) -> Self {
        Self { columns, pivots: BTreeMap::new() }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: SparseRow<T>) -> SparseRow<T> {
        let mut cursor = 0;
        loop {
            let Some((&col, _)) = row.range(cursor..).find(|(c, _)| self.pivots.contains_key(c)) else {
                return row;
            };
            let factor = row.remove(&col).expect("present");
            for (&c, v) in &self.pivots[&col] {
                if c == col {
                    continue;
                }
                let nv = row.get(&c).cloned().unwrap_or_else(T::zero) - factor.clone() * v.clone();
                if nv.is_negligible() {
                    row.remove(&c);
                } else {
                    row.insert(c, nv);
                }
            }
            cursor = col + 1;
        }
    }

    /// Adds a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: SparseRow<T>) -> bool {
        let row = self.reduce(row);
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = T::one() / lead_val.clone();
        let row: SparseRow<T> = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, row: SparseRow<T>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of the right nullspace `{x : row·x = 0 for every row}`, one
    /// vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        // back-substitute into reduced row-echelon form
        let mut rref: BTreeMap<usize, SparseRow<T>> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            let later: Vec<usize> = row.keys().copied().filter(|c| *c != col && rref.contains_key(c)).collect();
            for c in later {
                let factor = row.remove(&c).expect("present");
                for (&cc, v) in &rref[&c] {
                    if cc == c {
                        continue;
                    }
                    let nv = row.get(&cc).cloned().unwrap_or_else(T::zero) - factor.clone() * v.clone();
                    if nv.is_negligible() {
                        row.remove(&cc);
                    } else {
                        row.insert(cc, nv);
                    }
                }
            }
            rref.insert(col, row);
        }
        (0..self.columns)
            .filter(|c| !rref.contains_key(c))
            .map(|free| {
                let mut v = vec![T::zero(); self.columns];
                v[free] = T::one();
                for (&pc, row) in &rref {
                    if let Some(x) = row.get(&free) {
                        v[pc] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Nullspace of the matrix given by its sparse rows.
pub fn nullspace<T: Scalar>(columns: usize, rows: impl IntoIterator<Item = SparseRow<T>>) -> Vec<Vec<T>> {
    let mut basis = EchelonBasis::new(columns);
    for r in rows {
        basis.insert(r);
    }
    basis.nullspace()
}

/// Solves `M x = b` for a matrix given by sparse columns; returns one
/// solution (free variables set to zero) or `None` if inconsistent.
pub fn solve_columns<T: Scalar>(rows: usize, columns: &[SparseRow<T>], rhs: &SparseRow<T>) -> Option<Vec<T>> {
    // eliminate on the augmented transpose: rows of [M | b]
    let n = columns.len();
    let mut row_vecs: Vec<SparseRow<T>> = vec![SparseRow::new(); rows];
    for (j, col) in columns.iter().enumerate() {
        for (&i, v) in col {
            row_vecs[i].insert(j, v.clone());
        }
    }
    for (&i, v) in rhs {
        row_vecs[i].insert(n, v.clone());
    }
    let mut basis = EchelonBasis::new(n + 1);
    for r in row_vecs {
        basis.insert(r);
    }
    if basis.pivots.contains_key(&n) {
        return None;
    }
    // reduced form gives x[pivot] = rhs entry when free vars are zero
    let mut x = vec![T::zero(); n];
    for (&col, row) in basis.pivots.iter().rev() {
        let mut val = row.get(&n).cloned().unwrap_or_else(T::zero);
        for (&c, v) in row {
            if c != col && c < n {
                val = val - v.clone() * x[c].clone();
            }
        }
        x[col] = val;
    }
    Some(x)
}
