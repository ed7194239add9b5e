//! Lie algebras given by exact structure constants and an invariant form.

mod io;
mod roots;
mod verify;

use std::fmt;

use rayon::prelude::*;

use crate::exact::{inverse, Accumulator, ExactError, Pivoting, Scalar, SparseMatrix, SparseVector};

pub use io::{read_structure, write_structure, FormatError};
pub use roots::{cartan_and_roots, root_checks, RootChecks, RootData};
pub use verify::{killing_form, verify_structure, JacobiMode, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("basis matrices are linearly dependent at index {0}")]
    LinearlyDependent(usize),
    #[error("commutator of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
    #[error("Cartan seed elements {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("seed is not simultaneously diagonalizable: {0}")]
    NotDiagonalizable(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A real Lie algebra with basis `b_0..b_{dim-1}`, brackets stored for
/// `i < j`, and a symmetric bilinear form.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<SparseVector>,
    form: SparseMatrix,
    grading: Option<usize>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("dim", &self.dim)
            .field("grading", &self.grading)
            .finish_non_exhaustive()
    }
}

fn pair_slot(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Build from brackets `[b_i, b_j]` for `i < j`; missing pairs are zero.
    pub fn from_brackets<I>(labels: Vec<String>, brackets: I, form: SparseMatrix) -> Self
    where
        I: IntoIterator<Item = (usize, usize, SparseVector)>,
    {
        let dim = labels.len();
        assert_eq!((form.rows(), form.cols()), (dim, dim));
        let mut table = vec![SparseVector::zero(dim); dim * dim.saturating_sub(1) / 2];
        for (i, j, v) in brackets {
            assert!(i < j, "brackets are stored for i < j");
            assert_eq!(v.dim(), dim);
            table[pair_slot(dim, i, j)] = v;
        }
        LieAlgebra { dim, labels, table, form, grading: None }
    }

    /// Build from structure constants `(i, j, k, c)` meaning
    /// `[b_i, b_j] = ... + c b_k` with `i < j`.
    pub fn from_constants<I>(labels: Vec<String>, constants: I, form: SparseMatrix) -> Self
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let dim = labels.len();
        let mut acc: std::collections::BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = Default::default();
        for (i, j, k, c) in constants {
            acc.entry((i, j)).or_default().push((k, c));
        }
        let br = acc.into_iter().map(|((i, j), v)| (i, j, SparseVector::from_pairs(dim, v)));
        Self::from_brackets(labels, br, form)
    }

    /// The Lie algebra spanned by a linearly independent set of matrices
    /// closed under commutators. Brackets are expressed in the given basis.
    pub fn from_matrices(labels: Vec<String>, mats: &[SparseMatrix], form: SparseMatrix) -> Result<Self, LieError> {
        let solver = SpanSolver::new(mats)?;
        let dim = mats.len();
        let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| ((i + 1)..dim).map(move |j| (i, j))).collect();
        let brackets: Result<Vec<_>, LieError> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let c = mats[i].commutator(&mats[j]);
                solver.coordinates(&c).map(|v| (i, j, v)).ok_or(LieError::NotClosed(i, j))
            })
            .collect();
        Ok(Self::from_brackets(labels, brackets?, form))
    }

    /// Mark the first `h_dim` basis elements as the `h` part of a grading
    /// `h + m`.
    pub fn with_grading(mut self, h_dim: usize) -> Self {
        assert!(h_dim <= self.dim);
        self.grading = Some(h_dim);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form(&self) -> &SparseMatrix {
        &self.form
    }

    pub fn grading(&self) -> Option<usize> {
        self.grading
    }

    /// `[b_i, b_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> SparseVector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.table[pair_slot(self.dim, i, j)].clone(),
            Greater => self.table[pair_slot(self.dim, j, i)].neg(),
            Equal => SparseVector::zero(self.dim),
        }
    }

    fn bracket_ref(&self, i: usize, j: usize) -> (&SparseVector, bool) {
        if i < j {
            (&self.table[pair_slot(self.dim, i, j)], false)
        } else {
            (&self.table[pair_slot(self.dim, j, i)], true)
        }
    }

    /// `[u, v]` for arbitrary vectors.
    pub fn bracket_vec(&self, u: &SparseVector, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new();
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                if i == j {
                    continue;
                }
                let (b, flip) = self.bracket_ref(i, j);
                let c = if flip { -(x * y) } else { x * y };
                acc.add_scaled(&c, b);
            }
        }
        acc.finish(self.dim)
    }

    /// `[u, b_j]`.
    pub fn bracket_with_basis(&self, u: &SparseVector, j: usize) -> SparseVector {
        let mut acc = Accumulator::new();
        for (i, x) in u.iter() {
            if i == j {
                continue;
            }
            let (b, flip) = self.bracket_ref(i, j);
            acc.add_scaled(&if flip { -x } else { x.clone() }, b);
        }
        acc.finish(self.dim)
    }

    /// Matrix of `ad(b_i)`: column `j` is `[b_i, b_j]`.
    pub fn ad(&self, i: usize) -> SparseMatrix {
        let trip = (0..self.dim).flat_map(|j| {
            let col = self.bracket(i, j);
            col.entries().iter().map(move |(k, v)| (*k, j, v.clone())).collect::<Vec<_>>()
        });
        SparseMatrix::from_triplets(self.dim, self.dim, trip)
    }

    /// Matrix of `ad(u)`.
    pub fn ad_vec(&self, u: &SparseVector) -> SparseMatrix {
        u.iter().fold(SparseMatrix::zero(self.dim, self.dim), |acc, (i, x)| acc.axpy(x, &self.ad(i)))
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`, sorted.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        (0..self.dim).flat_map(move |i| {
            ((i + 1)..self.dim).flat_map(move |j| {
                self.table[pair_slot(self.dim, i, j)].iter().map(move |(k, c)| (i, j, k, c))
            })
        })
    }

    pub fn nnz(&self) -> usize {
        self.table.iter().map(|v| v.nnz()).sum()
    }

    /// Replace one structure constant; used to build corrupted inputs.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        assert!(i < j);
        let slot = pair_slot(self.dim, i, j);
        let mut pairs: Vec<(usize, Scalar)> =
            self.table[slot].iter().filter(|(kk, _)| *kk != k).map(|(kk, v)| (kk, v.clone())).collect();
        pairs.push((k, c));
        self.table[slot] = SparseVector::from_pairs(self.dim, pairs);
    }
}

/// Expresses matrices in the span of a fixed linearly independent family.
pub struct SpanSolver {
    basis: Vec<SparseVector>,
    pivots: Vec<usize>,
    // inverse of the basis restricted to the pivot coordinates
    inv: SparseMatrix,
}

impl SpanSolver {
    pub fn new(mats: &[SparseMatrix]) -> Result<Self, LieError> {
        let basis: Vec<SparseVector> = mats.iter().map(|m| m.flatten()).collect();
        Self::from_vectors(basis)
    }

    pub fn from_vectors(basis: Vec<SparseVector>) -> Result<Self, LieError> {
        let cols = basis.first().map_or(0, |v| v.dim());
        let mut e = crate::exact::Echelon::new(cols, Pivoting::LowestColumn);
        for (i, v) in basis.iter().enumerate() {
            if !e.insert(v) {
                return Err(LieError::LinearlyDependent(i));
            }
        }
        let pivots = e.pivot_columns();
        let k = basis.len();
        let m = SparseMatrix::from_triplets(
            k,
            k,
            pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| basis.iter().enumerate().map(move |(a, b)| (r, a, b.get(p)))),
        );
        let inv = inverse(&m)?;
        Ok(SpanSolver { basis, pivots, inv })
    }

    /// Coordinates of `x` in the basis, or `None` when `x` is outside the span.
    pub fn coordinates(&self, x: &SparseMatrix) -> Option<SparseVector> {
        self.coordinates_vec(&x.flatten())
    }

    pub fn coordinates_vec(&self, t: &SparseVector) -> Option<SparseVector> {
        let tp = SparseVector::from_pairs(
            self.pivots.len(),
            self.pivots.iter().enumerate().map(|(r, &p)| (r, t.get(p))),
        );
        let c = self.inv.mul_vec(&tp);
        let mut acc = Accumulator::new();
        for (a, x) in c.iter() {
            acc.add_scaled(x, &self.basis[a]);
        }
        (acc.finish(t.dim()) == *t).then_some(c)
    }
}

/// `B(a, b) = -tr(a b)`, the default invariant form on a matrix Lie algebra.
pub fn trace_form(mats: &[SparseMatrix]) -> SparseMatrix {
    let n = mats.len();
    let trip: Vec<(usize, usize, Scalar)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..n).filter_map(move |j| {
                let v = -mats[i].trace_product(&mats[j]);
                (!v.is_zero()).then_some((i, j, v))
            })
        })
        .collect();
    SparseMatrix::from_triplets(n, n, trip)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn su2(scale: i64) -> LieAlgebra {
        let labels = vec!["x".into(), "y".into(), "z".into()];
        let c = Scalar::from_int(scale);
        LieAlgebra::from_constants(
            labels,
            [(0, 1, 2, c.clone()), (1, 2, 0, c.clone()), (0, 2, 1, -c)],
            SparseMatrix::identity(3),
        )
    }

    #[test]
    fn brackets_are_antisymmetric() {
        let l = su2(1);
        assert_eq!(l.bracket(1, 0), l.bracket(0, 1).neg());
        assert!(l.bracket(2, 2).is_zero());
        let u = SparseVector::from_pairs(3, [(0, Scalar::one()), (1, Scalar::from_int(2))]);
        let v = SparseVector::unit(3, 2);
        assert_eq!(l.bracket_vec(&u, &v), l.bracket_with_basis(&u, 2));
    }

    #[test]
    fn so3_from_matrices() {
        let e = |i: usize, j: usize| {
            SparseMatrix::from_triplets(3, 3, [(i, j, Scalar::one()), (j, i, Scalar::from_int(-1))])
        };
        let mats = vec![e(0, 1), e(0, 2), e(1, 2)];
        let l = LieAlgebra::from_matrices(vec!["a".into(), "b".into(), "c".into()], &mats, trace_form(&mats)).unwrap();
        // [E01, E02] = -E12 with E_ij = e_i e_j^T - e_j e_i^T... check directly
        let direct = mats[0].commutator(&mats[1]);
        let coords = l.bracket(0, 1);
        let rebuilt = coords.iter().fold(SparseMatrix::zero(3, 3), |acc, (k, c)| acc.axpy(c, &mats[k]));
        assert_eq!(rebuilt, direct);
        assert_eq!(*l.form(), SparseMatrix::scalar(3, &Scalar::from_int(2)));
    }

    #[test]
    fn dependent_basis_rejected() {
        let a = SparseMatrix::from_ints(&[vec![0, 1], vec![-1, 0]]);
        let b = a.scale(&Scalar::from_int(2));
        assert!(matches!(
            LieAlgebra::from_matrices(vec!["a".into(), "b".into()], &[a, b], SparseMatrix::identity(2)),
            Err(LieError::LinearlyDependent(1))
        ));
    }
}
