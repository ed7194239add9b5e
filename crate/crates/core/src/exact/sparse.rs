use std::collections::BTreeMap;

use super::scalar::Scalar;

/// A sparse vector with exact entries. Entries are kept sorted by index and
/// never store zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        SparseVector { dim, entries: vec![(i, Scalar::one())] }
    }

    /// Build from arbitrary `(index, value)` pairs; duplicates are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(dim: usize, pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            assert!(i < dim, "index {i} out of range {dim}");
            if v.is_zero() {
                continue;
            }
            let slot = acc.entry(i).or_default();
            *slot += v;
        }
        Self::from_map(dim, acc)
    }

    pub fn from_map(dim: usize, map: BTreeMap<usize, Scalar>) -> Self {
        let entries = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        SparseVector { dim, entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        SparseVector { dim: values.len(), entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVector) -> Self {
        assert_eq!(self.dim, other.dim);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVector { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVector) -> Self {
        self.axpy(&Scalar::from_int(-1), other)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn dot(&self, other: &SparseVector) -> Scalar {
        let mut acc = Scalar::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += x * y;
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Index of the first nonzero entry.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }
}

/// Accumulates `(index, value)` contributions and yields a [`SparseVector`].
#[derive(Clone, Debug, Default)]
pub struct Accumulator {
    map: rustc_hash::FxHashMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let slot = self.map.entry(i).or_default();
        *slot += v;
    }

    pub fn add_scaled(&mut self, c: &Scalar, v: &SparseVector) {
        for (i, x) in v.iter() {
            self.add(i, &(c * x));
        }
    }

    pub fn finish(self, dim: usize) -> SparseVector {
        let mut entries: Vec<(usize, Scalar)> =
            self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        entries.sort_unstable_by_key(|(i, _)| *i);
        SparseVector { dim, entries }
    }
}

/// Row-major sparse matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVector::zero(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Scalar::one())
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let mut m = Self::zero(n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.data[i] = SparseVector { dim: n, entries: vec![(i, c.clone())] };
            }
        }
        m
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let n = values.len();
        let data = values
            .iter()
            .enumerate()
            .map(|(i, v)| SparseVector::from_pairs(n, [(i, v.clone())]))
            .collect();
        SparseMatrix { rows: n, cols: n, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Self {
        for r in &rows {
            assert_eq!(r.dim(), cols);
        }
        SparseMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Scalar)>>(
        rows: usize,
        cols: usize,
        triplets: I,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of range");
            buckets[r].push((c, v));
        }
        let data = buckets.into_iter().map(|b| SparseVector::from_pairs(cols, b)).collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| SparseVector::from_dense(r)).collect();
        SparseMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVector {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&Scalar::from_int(-1), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVector) -> SparseVector {
        assert_eq!(self.cols, v.dim());
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let x = row.dot(v);
                (!x.is_zero()).then_some((r, x))
            })
            .collect();
        SparseVector { dim: self.rows, entries }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = Accumulator::new();
                for (k, a) in row.iter() {
                    acc.add_scaled(a, &other.data[k]);
                }
                acc.finish(other.cols)
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.data[i].get(i)).sum()
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Scalar {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Scalar::zero();
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row.iter() {
                let b = other.data[k].get(i);
                if !b.is_zero() {
                    acc += a * &b;
                }
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|r| r.to_dense()).collect()
    }

    /// Entries flattened row-major into a vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVector {
        let dim = self.rows * self.cols;
        let entries = self
            .triplets()
            .map(|(r, c, v)| (r * self.cols + c, v.clone()))
            .collect();
        SparseVector { dim, entries }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let trip = self
            .triplets()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(other.triplets().map(|(r, c, v)| (r + self.rows, c + self.cols, v.clone())));
        Self::from_triplets(rows, cols, trip)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut trip = Vec::with_capacity(self.nnz() * other.nnz());
        for (r1, c1, a) in self.triplets() {
            for (r2, c2, b) in other.triplets() {
                trip.push((r1 * other.rows + r2, c1 * other.cols + c2, a * b));
            }
        }
        Self::from_triplets(rows, cols, trip)
    }

    /// Restrict to the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: rustc_hash::FxHashMap<usize, usize> =
            cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let data = rows
            .iter()
            .map(|&r| {
                SparseVector::from_pairs(
                    cols.len(),
                    self.data[r]
                        .iter()
                        .filter_map(|(c, v)| col_pos.get(&c).map(|&p| (p, v.clone()))),
                )
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// True when every row and column holds at most one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        if self.data.iter().any(|r| r.nnz() > 1) {
            return false;
        }
        let mut seen = vec![false; self.cols];
        for (_, c, _) in self.triplets() {
            if seen[c] {
                return false;
            }
            seen[c] = true;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVector::from_pairs(4, [(0, q(1)), (2, q(3))]);
        let b = SparseVector::from_pairs(4, [(2, q(1)), (3, q(5))]);
        let c = a.axpy(&q(-3), &b);
        assert_eq!(c.entries(), &[(0, q(1)), (3, q(-15))]);
        assert_eq!(a.dot(&b), q(3));
    }

    #[test]
    fn products_and_traces() {
        let a = SparseMatrix::from_ints(&[vec![0, -1], vec![1, 0]]);
        let sq = a.mul(&a);
        assert_eq!(sq, SparseMatrix::scalar(2, &q(-1)));
        assert_eq!(a.trace_product(&a), q(-2));
        assert!(a.commutator(&a).is_zero());
        assert!(a.is_monomial());
        let k = a.kron(&SparseMatrix::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.mul(&k), SparseMatrix::scalar(4, &q(-1)));
    }
}
