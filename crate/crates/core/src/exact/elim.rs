//! Sparse exact Gaussian elimination.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use super::scalar::Scalar;
use super::sparse::{SparseMatrix, SparseVector};

/// Column visiting order used when choosing pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pivoting {
    /// Pivot on the lowest-index nonzero column of each row.
    #[default]
    LowestColumn,
    /// Pivot on the highest-index nonzero column of each row.
    HighestColumn,
}

/// Row echelon form over the rationals, built incrementally. Each stored
/// pivot row is normalized to 1 at its pivot column and only has entries at
/// columns after the pivot (in visiting order).
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pivoting: Pivoting,
    // pivot column (in visiting order) -> row (in visiting order)
    pivots: FxHashMap<usize, BTreeMap<usize, Scalar>>,
}

impl Echelon {
    pub fn new(cols: usize, pivoting: Pivoting) -> Self {
        Echelon { cols, pivoting, pivots: FxHashMap::default() }
    }

    fn map_col(&self, c: usize) -> usize {
        match self.pivoting {
            Pivoting::LowestColumn => c,
            Pivoting::HighestColumn => self.cols - 1 - c,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots; if something survives it
    /// becomes a new pivot. Returns whether the rank increased.
    pub fn insert(&mut self, row: &SparseVector) -> bool {
        assert_eq!(row.dim(), self.cols);
        let mut work: BTreeMap<usize, Scalar> =
            row.iter().map(|(c, v)| (self.map_col(c), v.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).next().map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = next else {
                return false;
            };
            match self.pivots.get(&c) {
                Some(p) => {
                    work.remove(&c);
                    for (pc, pv) in p.iter().filter(|(pc, _)| **pc != c) {
                        let e = work.entry(*pc).or_default();
                        *e -= &v * pv;
                        if e.is_zero() {
                            work.remove(pc);
                        }
                    }
                    cursor = c + 1;
                }
                None => {
                    let inv = v.recip().expect("nonzero pivot");
                    for x in work.values_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(c, work);
                    return true;
                }
            }
        }
    }

    /// Pivot columns in original column order, sorted.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.pivots.keys().map(|&k| self.map_col(k)).collect();
        c.sort_unstable();
        c
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &SparseVector) -> bool {
        let mut probe = self.clone();
        !probe.insert(row)
    }

    /// Basis of the right kernel of the inserted rows, in original column
    /// order. Vectors are normalized with a 1 at their free column.
    pub fn kernel(&self) -> Vec<SparseVector> {
        // Back-substitute to reduced row echelon form, highest pivot first.
        let mut keys: Vec<usize> = self.pivots.keys().copied().collect();
        keys.sort_unstable_by(|a, b| b.cmp(a));
        let mut reduced: FxHashMap<usize, BTreeMap<usize, Scalar>> = FxHashMap::default();
        for &c in &keys {
            let mut row = self.pivots[&c].clone();
            let later: Vec<usize> =
                row.keys().copied().filter(|k| *k != c && reduced.contains_key(k)).collect();
            for k in later {
                let f = match row.get(&k) {
                    Some(f) => f.clone(),
                    None => continue,
                };
                row.remove(&k);
                for (rc, rv) in reduced[&k].iter().filter(|(rc, _)| **rc != k) {
                    let e = row.entry(*rc).or_default();
                    *e -= &f * rv;
                    if e.is_zero() {
                        row.remove(rc);
                    }
                }
            }
            reduced.insert(c, row);
        }
        // Kernel vector for each free column f: e_f - sum_c R_c[f] e_c.
        let mut by_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for f in 0..self.cols {
            if !reduced.contains_key(&f) {
                by_free.insert(f, vec![(f, Scalar::one())]);
            }
        }
        for (&c, row) in &reduced {
            for (k, v) in row.iter() {
                if *k != c {
                    if let Some(vec) = by_free.get_mut(k) {
                        vec.push((c, -v));
                    }
                }
            }
        }
        by_free
            .into_values()
            .map(|v| {
                SparseVector::from_pairs(self.cols, v.into_iter().map(|(c, x)| (self.map_col(c), x)))
            })
            .collect()
    }
}

pub fn echelon(m: &SparseMatrix, pivoting: Pivoting) -> Echelon {
    let mut e = Echelon::new(m.cols(), pivoting);
    for r in m.row_vectors() {
        e.insert(r);
    }
    e
}

/// Basis of `{v : M v = 0}`; its size is `cols - rank(M)`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVector> {
    kernel_basis_with(m, Pivoting::LowestColumn)
}

pub fn kernel_basis_with(m: &SparseMatrix, pivoting: Pivoting) -> Vec<SparseVector> {
    echelon(m, pivoting).kernel()
}

pub fn rank(m: &SparseMatrix) -> usize {
    rank_with(m, Pivoting::LowestColumn)
}

pub fn rank_with(m: &SparseMatrix, pivoting: Pivoting) -> usize {
    echelon(m, pivoting).rank()
}

/// Returns `c` with `v = c w`, or `None` when `v` is not a multiple of `w`.
/// Errors when `w` is zero.
pub fn proportionality(v: &SparseVector, w: &SparseVector) -> Result<Option<Scalar>, super::ExactError> {
    let Some((i, wi)) = w.leading() else {
        return Err(super::ExactError::ZeroReference);
    };
    assert_eq!(v.dim(), w.dim());
    let c = &v.get(i) / wi;
    if v.nnz() != w.nnz() && !c.is_zero() {
        return Ok(None);
    }
    let ok = v.axpy(&-&c, w).is_zero();
    Ok(ok.then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = SparseMatrix::identity(3);
        assert!(kernel_basis(&m).is_empty());
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn zero_matrix_kernel() {
        let m = SparseMatrix::zero(2, 3);
        assert_eq!(kernel_basis(&m).len(), 3);
        assert_eq!(rank(&m), 0);
    }

    #[test]
    fn proportional_rows() {
        let m = SparseMatrix::from_ints(&[vec![1, 2], vec![3, 6]]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn proportionality_cases() {
        let w = SparseVector::from_pairs(3, [(0, q(1)), (2, q(-2))]);
        assert_eq!(proportionality(&SparseVector::zero(3), &w).unwrap(), Some(q(0)));
        assert_eq!(proportionality(&w.scale(&q(3)), &w).unwrap(), Some(q(3)));
        let off = SparseVector::from_pairs(3, [(0, q(1)), (2, q(2))]);
        assert_eq!(proportionality(&off, &w).unwrap(), None);
        assert!(proportionality(&w, &SparseVector::zero(3)).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..50, 1usize..50).prop_flat_map(|(r, c)| {
            proptest::collection::vec((0..r, 0..c, -3i64..=3), 0..(r * c / 3 + 2)).prop_map(
                move |t| SparseMatrix::from_triplets(r, c, t.into_iter().map(|(i, j, v)| (i, j, q(v)))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
            // independence: kernel vectors have distinct free columns with unit entries
            let basis = SparseMatrix::from_rows(m.cols(), k.clone());
            prop_assert_eq!(rank(&basis), k.len());
        }

        #[test]
        fn pivoting_strategies_agree(m in arb_matrix()) {
            prop_assert_eq!(rank_with(&m, Pivoting::LowestColumn), rank_with(&m, Pivoting::HighestColumn));
            let k2 = kernel_basis_with(&m, Pivoting::HighestColumn);
            prop_assert_eq!(k2.len(), kernel_basis(&m).len());
            for v in &k2 {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }
    }
}
