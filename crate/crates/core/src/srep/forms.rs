//! Sparse exterior 2- and 4-forms over a fixed basis `e_0..e_{d-1}` of `m`.
//!
//! Components are values on basis vectors: `tau[p,q] = tau(e_p, e_q)` with
//! `p < q`. Wedge products use the shuffle convention, so that
//! `(e^p ^ e^q ^ e^r ^ e^s)(e_p, e_q, e_r, e_s) = 1`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::exact::{proportionality, ExactError, Scalar, SparseMatrix, SparseVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    dim: usize,
    map: BTreeMap<(usize, usize), Scalar>,
}

impl TwoForm {
    pub fn zero(dim: usize) -> Self {
        TwoForm { dim, map: BTreeMap::new() }
    }

    /// From a skew-symmetric matrix of values `T[p][q] = tau(e_p, e_q)`.
    pub fn from_skew_matrix(t: &SparseMatrix) -> Self {
        let dim = t.rows();
        let map = t.triplets().filter(|(p, q, _)| p < q).map(|(p, q, v)| ((p, q), v.clone())).collect();
        TwoForm { dim, map }
    }

    /// `tau(u, v) = B(X u, v)`, the form attached to an endomorphism `X`.
    pub fn from_endomorphism(x: &SparseMatrix, b: &SparseMatrix) -> Self {
        Self::from_skew_matrix(&x.transpose().mul(b))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.map.len()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    /// Entries `(p, q, value)` with `p < q`, sorted.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.map.iter().map(|((p, q), v)| (*p, *q, v))
    }

    /// Value on any pair of basis vectors.
    pub fn eval(&self, p: usize, q: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match p.cmp(&q) {
            Less => self.map.get(&(p, q)).cloned().unwrap_or_default(),
            Greater => -self.map.get(&(q, p)).cloned().unwrap_or_default(),
            Equal => Scalar::zero(),
        }
    }

    /// Skew-symmetric matrix of values.
    pub fn to_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.dim,
            self.dim,
            self.iter().flat_map(|(p, q, v)| [(p, q, v.clone()), (q, p, -v)]),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        TwoForm { dim: self.dim, map: self.map.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.map.clone();
        for (k, v) in &other.map {
            let e = map.entry(*k).or_default();
            *e += v;
            if e.is_zero() {
                map.remove(k);
            }
        }
        TwoForm { dim: self.dim, map }
    }

    /// Induced action `a_*(tau)(u, v) = -tau(a u, v) - tau(u, a v)`.
    pub fn act(&self, a: &SparseMatrix) -> Self {
        let t = self.to_matrix();
        let at = a.transpose();
        let r = at.mul(&t).add(&t.mul(a)).scale(&Scalar::from_int(-1));
        Self::from_skew_matrix(&r)
    }

    pub fn wedge(&self, other: &TwoForm) -> FourForm {
        let mut out = FourForm::zero(self.dim);
        out.add_wedge(&Scalar::one(), self, other);
        out
    }
}

/// Sort four distinct indices; returns the sorted key and the permutation sign.
fn sort4(mut k: [usize; 4]) -> Option<([usize; 4], i32)> {
    let mut sign = 1;
    for i in 0..4 {
        for j in 0..3 - i {
            if k[j] == k[j + 1] {
                return None;
            }
            if k[j] > k[j + 1] {
                k.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if k[0] == k[1] || k[1] == k[2] || k[2] == k[3] {
        return None;
    }
    Some((k, sign))
}

fn pack(k: [usize; 4]) -> u64 {
    (k[0] as u64) | (k[1] as u64) << 16 | (k[2] as u64) << 32 | (k[3] as u64) << 48
}

fn unpack(x: u64) -> [usize; 4] {
    [(x & 0xffff) as usize, (x >> 16 & 0xffff) as usize, (x >> 32 & 0xffff) as usize, (x >> 48) as usize]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourForm {
    dim: usize,
    map: FxHashMap<u64, Scalar>,
}

impl FourForm {
    pub fn zero(dim: usize) -> Self {
        assert!(dim < 1 << 16);
        FourForm { dim, map: FxHashMap::default() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.map.len()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    /// Entries with strictly increasing index keys, sorted.
    pub fn entries(&self) -> Vec<([usize; 4], Scalar)> {
        let mut v: Vec<(u64, &Scalar)> = self.map.iter().map(|(k, v)| (*k, v)).collect();
        v.sort_unstable_by_key(|(k, _)| {
            let u = unpack(*k);
            (u[0], u[1], u[2], u[3])
        });
        v.into_iter().map(|(k, s)| (unpack(k), s.clone())).collect()
    }

    /// Add `c` at an arbitrary (possibly unsorted) index quadruple.
    pub fn add_at(&mut self, k: [usize; 4], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some((key, sign)) = sort4(k) {
            let e = self.map.entry(pack(key)).or_default();
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
            if e.is_zero() {
                self.map.remove(&pack(key));
            }
        }
    }

    /// Value on any quadruple of basis vectors.
    pub fn eval(&self, k: [usize; 4]) -> Scalar {
        match sort4(k) {
            Some((key, sign)) => {
                let v = self.map.get(&pack(key)).cloned().unwrap_or_default();
                if sign > 0 {
                    v
                } else {
                    -v
                }
            }
            None => Scalar::zero(),
        }
    }

    /// `self += c * (a ^ b)`.
    pub fn add_wedge(&mut self, c: &Scalar, a: &TwoForm, b: &TwoForm) {
        for (p, q, x) in a.iter() {
            let cx = c * x;
            for (r, s, y) in b.iter() {
                if r == p || r == q || s == p || s == q {
                    continue;
                }
                self.add_at([p, q, r, s], &(&cx * y));
            }
        }
    }

    pub fn add(&self, other: &FourForm) -> FourForm {
        let mut out = self.clone();
        out.merge(other);
        out
    }

    pub fn merge(&mut self, other: &FourForm) {
        for (k, v) in &other.map {
            let e = self.map.entry(*k).or_default();
            *e += v;
            if e.is_zero() {
                self.map.remove(k);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> FourForm {
        if c.is_zero() {
            return FourForm::zero(self.dim);
        }
        FourForm { dim: self.dim, map: self.map.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Flattened coordinates, index `((p d + q) d + r) d + s`.
    pub fn to_sparse(&self) -> SparseVector {
        let d = self.dim;
        SparseVector::from_pairs(
            d.pow(4),
            self.map.iter().map(|(k, v)| {
                let u = unpack(*k);
                (((u[0] * d + u[1]) * d + u[2]) * d + u[3], v.clone())
            }),
        )
    }

    /// `c` with `self = c * other`, if any.
    pub fn proportionality(&self, other: &FourForm) -> Result<Option<Scalar>, ExactError> {
        proportionality(&self.to_sparse(), &other.to_sparse())
    }
}

/// `sum_{k,l} g[k][l] (a_k ^ a_l)`, computed in parallel over `k`.
pub fn quadratic_wedge(forms: &[TwoForm], g: &SparseMatrix) -> FourForm {
    let dim = forms.first().map_or(0, |f| f.dim());
    let parts: Vec<FourForm> = (0..forms.len())
        .into_par_iter()
        .map(|k| {
            let mut f = FourForm::zero(dim);
            for (l, c) in g.row(k).iter() {
                f.add_wedge(c, &forms[k], &forms[l]);
            }
            f
        })
        .collect();
    parts.into_iter().fold(FourForm::zero(dim), |mut acc, f| {
        acc.merge(&f);
        acc
    })
}

/// Coefficients `c_ij = (B^{-1} I^T)_ij` of the contraction
/// `lambda(tau) = 1/2 sum_ij c_ij tau(e_i, e_j, ...)`, the metric adjoint of
/// wedging with `omega(u, v) = B(I u, v)`.
pub fn lambda_coefficients(i: &SparseMatrix, binv: &SparseMatrix) -> SparseMatrix {
    binv.mul(&i.transpose())
}

/// `lambda` on a 2-form.
pub fn lambda_two(tau: &TwoForm, c: &SparseMatrix) -> Scalar {
    let mut acc = Scalar::zero();
    for (p, q, v) in tau.iter() {
        let w = &c.get(p, q) - &c.get(q, p);
        acc += &w * v;
    }
    acc * Scalar::half()
}

/// `lambda` on a 4-form.
pub fn lambda_four(tau: &FourForm, c: &SparseMatrix) -> TwoForm {
    let dim = tau.dim();
    let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let half = Scalar::half();
    for (k, v) in tau.entries() {
        // ordered pairs of positions (a, b) contracted, the rest (x < y) kept
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let rest: Vec<usize> = (0..4).filter(|&t| t != a && t != b).collect();
                let (i, j, x, y) = (k[a], k[b], k[rest[0]], k[rest[1]]);
                let cij = c.get(i, j);
                if cij.is_zero() {
                    continue;
                }
                let sign = sort4([i, j, x, y]).unwrap().1;
                let term = &(&cij * &v) * &half;
                let e = map.entry((x, y)).or_default();
                if sign > 0 {
                    *e += term;
                } else {
                    *e -= term;
                }
            }
        }
    }
    map.retain(|_, v| !v.is_zero());
    TwoForm { dim, map }
}

/// Matrix of the action `a(v_1 ^ ... ^ v_k) = sum_i v_1 ^ .. ^ a v_i ^ .. ^ v_k`
/// on the basis of `Lambda^k` given by increasing index tuples.
pub fn exterior_action(a: &SparseMatrix, k: usize) -> (Vec<Vec<usize>>, SparseMatrix) {
    let d = a.rows();
    let basis = combinations(d, k);
    let index: FxHashMap<&[usize], usize> = basis.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let at = a.transpose();
    let mut trip = Vec::new();
    for (col, b) in basis.iter().enumerate() {
        for pos in 0..k {
            // a e_{b[pos]} = sum_r a[r][b[pos]] e_r
            for (r, v) in at.row(b[pos]).iter() {
                let mut t = b.clone();
                t[pos] = r;
                if let Some((sorted, sign)) = sort_with_sign(&t) {
                    let row = index[sorted.as_slice()];
                    trip.push((row, col, if sign > 0 { v.clone() } else { -v }));
                }
            }
        }
    }
    let n = basis.len();
    (basis, SparseMatrix::from_triplets(n, n, trip))
}

fn sort_with_sign(t: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = t.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Increasing `k`-tuples from `0..d` in lexicographic order.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(0, d, k, &mut cur, &mut out);
    out
}

/// Dimension of the subspace of `Lambda^k m` killed by every generator.
pub fn exterior_invariant_dimension(gens: &[SparseMatrix], k: usize) -> usize {
    let mut rows = Vec::new();
    let mut n = 0;
    for g in gens {
        let (_, m) = exterior_action(g, k);
        n = m.cols();
        rows.extend(m.row_vectors().iter().filter(|r| !r.is_zero()).cloned());
    }
    if gens.is_empty() {
        return 0;
    }
    n - crate::exact::rank(&SparseMatrix::from_rows(n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn basic(dim: usize, p: usize, r: usize) -> TwoForm {
        TwoForm::from_skew_matrix(&SparseMatrix::from_triplets(dim, dim, [(p, r, q(1)), (r, p, q(-1))]))
    }

    #[test]
    fn wedge_of_basis_forms() {
        let f = basic(4, 0, 1).wedge(&basic(4, 2, 3));
        assert_eq!(f.eval([0, 1, 2, 3]), q(1));
        assert_eq!(f.eval([1, 0, 2, 3]), q(-1));
        assert_eq!(f.eval([2, 3, 0, 1]), q(1));
        // 2-forms commute under wedge
        assert_eq!(basic(4, 2, 3).wedge(&basic(4, 0, 1)), f);
        assert!(basic(4, 0, 1).wedge(&basic(4, 0, 1)).is_zero());
    }

    #[test]
    fn rotation_generator_two_form() {
        let r = SparseMatrix::from_ints(&[vec![0, -1], vec![1, 0]]);
        let t = TwoForm::from_endomorphism(&r, &SparseMatrix::identity(2));
        // B(r e_0, e_1) = 1
        assert_eq!(t.eval(0, 1), q(1));
        assert!(TwoForm::from_endomorphism(&SparseMatrix::zero(2, 2), &SparseMatrix::identity(2)).is_zero());
    }

    #[test]
    fn symplectic_lambda_identities() {
        // standard complex structure on R^6
        let n = 3;
        let i = SparseMatrix::from_triplets(
            2 * n,
            2 * n,
            (0..n).flat_map(|k| [(2 * k + 1, 2 * k, q(1)), (2 * k, 2 * k + 1, q(-1))]),
        );
        let id = SparseMatrix::identity(2 * n);
        let omega = TwoForm::from_endomorphism(&i, &id);
        let c = lambda_coefficients(&i, &id);
        assert_eq!(lambda_two(&omega, &c), q(n as i64));
        let ww = omega.wedge(&omega);
        assert_eq!(lambda_four(&ww, &c), omega.scale(&q(2 * n as i64 - 2)));
    }

    #[test]
    fn exterior_action_dimensions() {
        let r = SparseMatrix::from_ints(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 0]]);
        let (basis, m) = exterior_action(&r, 2);
        assert_eq!(basis.len(), 3);
        assert_eq!(m.rows(), 3);
        // so(3) on R^3 has invariant Lambda^0 and Lambda^3 only
        let gens: Vec<SparseMatrix> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| SparseMatrix::from_triplets(3, 3, [(a, b, q(-1)), (b, a, q(1))]))
            .collect();
        assert_eq!(exterior_invariant_dimension(&gens, 2), 0);
        assert_eq!(exterior_invariant_dimension(&gens, 3), 1);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(16, 4).len(), 1820);
        assert_eq!(combinations(5, 0), vec![Vec::<usize>::new()]);
    }
}
