//! Real Clifford algebras with `e_i^2 = -1` and the (half-)spin
//! representations of `spin(n)`.

use std::fmt;

use serde::Serialize;

use crate::exact::{kernel_basis, ldl_signature, Scalar, SparseMatrix, SparseVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("chirality {chirality} requires n divisible by 4 (got n = {n})")]
    BadChirality { n: usize, chirality: Chirality },
    #[error("spin representations need n >= 3 (got {0})")]
    TooSmall(usize),
    #[error("centralizer has dimension {0}, expected 1, 2 or 4")]
    UnexpectedCentralizer(usize),
    #[error("commuting structure is not rational after normalization")]
    IrrationalStructure,
    #[error("no invariant positive-definite inner product")]
    NoInvariantMetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    pub fn real_dim(self) -> usize {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CliffordDescriptor {
    pub n: usize,
    pub base_field: Field,
    pub r: usize,
    pub split: bool,
}

impl CliffordDescriptor {
    /// Real dimension of one irreducible module.
    pub fn module_dim(&self) -> usize {
        self.r * self.base_field.real_dim()
    }
}

/// `Cl_n` as `K(r)` or `K(r) + K(r)`.
pub fn clifford_table(n: usize) -> CliffordDescriptor {
    assert!(n >= 1, "Cl_0 is not tabulated");
    let k = (n - 1) / 8;
    let j = (n - 1) % 8 + 1;
    let (base_field, exp, split) = match j {
        1 => (Field::C, 4 * k, false),
        2 => (Field::H, 4 * k, false),
        3 => (Field::H, 4 * k, true),
        4 => (Field::H, 4 * k + 1, false),
        5 => (Field::C, 4 * k + 2, false),
        6 => (Field::R, 4 * k + 3, false),
        7 => (Field::R, 4 * k + 3, true),
        _ => (Field::R, 4 * k + 4, false),
    };
    CliffordDescriptor { n, base_field, r: 1 << exp, split }
}

/// Product in the Cayley-Dickson algebra of dimension `a.len()` (1, 2, 4 or 8):
/// `(a, b)(c, d) = (ac - d* b, da + b c*)`.
pub(crate) fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out: Vec<i64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn cd_conj(x: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = x.iter().map(|v| -v).collect();
    out[0] = x[0];
    out
}

/// Matrix of left multiplication by the unit `e_i` of the Cayley-Dickson
/// algebra of dimension `dim`.
pub(crate) fn left_mult(dim: usize, i: usize) -> SparseMatrix {
    let unit = |k: usize| {
        let mut v = vec![0i64; dim];
        v[k] = 1;
        v
    };
    let ei = unit(i);
    let mut trip = Vec::new();
    for j in 0..dim {
        let p = cd_mul(&ei, &unit(j));
        for (r, v) in p.into_iter().enumerate() {
            if v != 0 {
                trip.push((r, j, Scalar::from_int(v)));
            }
        }
    }
    SparseMatrix::from_triplets(dim, dim, trip)
}

fn block2(a: &SparseMatrix, b: &SparseMatrix, c: &SparseMatrix, d: &SparseMatrix) -> SparseMatrix {
    let n = a.rows();
    let trip = [(a, 0, 0), (b, 0, n), (c, n, 0), (d, n, n)].into_iter().flat_map(|(m, r0, c0)| {
        m.triplets().map(move |(r, c, v)| (r + r0, c + c0, v.clone()))
    });
    SparseMatrix::from_triplets(2 * n, 2 * n, trip)
}

fn cl8_generators() -> Vec<SparseMatrix> {
    let zero = SparseMatrix::zero(8, 8);
    let id = SparseMatrix::identity(8);
    let mut gens: Vec<SparseMatrix> = (1..8)
        .map(|i| {
            let l = left_mult(8, i);
            block2(&zero, &l, &l, &zero)
        })
        .collect();
    gens.push(block2(&zero, &id.scale(&Scalar::from_int(-1)), &id, &zero));
    gens
}

fn ordered_product(gens: &[SparseMatrix]) -> SparseMatrix {
    gens.iter()
        .fold(SparseMatrix::identity(gens[0].rows()), |acc, g| acc.mul(g))
}

/// Generators `gamma_1..gamma_n` of an irreducible `Cl_n`-module: pairwise
/// anticommuting signed permutation matrices squaring to `-Id`.
pub fn clifford_generators(n: usize) -> Vec<SparseMatrix> {
    if n == 0 {
        return Vec::new();
    }
    let j = (n - 1) % 8 + 1;
    let mut gens = match j {
        1 => vec![left_mult(2, 1)],
        2 | 3 => (1..=j).map(|i| left_mult(4, i)).collect(),
        4..=7 => (1..=j).map(|i| left_mult(8, i)).collect(),
        _ => cl8_generators(),
    };
    let big = cl8_generators();
    let omega = ordered_product(&big);
    for _ in 0..(n - 1) / 8 {
        let d = gens[0].rows();
        let mut next: Vec<SparseMatrix> = gens.iter().map(|g| g.kron(&omega)).collect();
        next.extend(big.iter().map(|g| SparseMatrix::identity(d).kron(g)));
        gens = next;
    }
    gens
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Full,
    Plus,
    Minus,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Full => "full",
            Chirality::Plus => "plus",
            Chirality::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Real,
    Complex,
    Quaternionic,
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepType::Real => "real",
            RepType::Complex => "complex",
            RepType::Quaternionic => "quaternionic",
        })
    }
}

/// A commuting structure found by [`detect_type`]: `I` for complex type,
/// `I, J` (anticommuting) for quaternionic type.
#[derive(Debug, Clone)]
pub struct TypeInfo {
    pub rep_type: RepType,
    pub structures: Vec<SparseMatrix>,
}

/// Real spin representation of `spin(n)`.
///
/// `generators` holds `gamma_1..gamma_{n-1}`, acting through
/// `rho(e_i e_j) = gamma_i gamma_j` for `i < j < n` and `rho(e_i e_n) = gamma_i`.
#[derive(Debug, Clone)]
pub struct SpinRep {
    pub n: usize,
    pub chirality: Chirality,
    pub dim: usize,
    pub generators: Vec<SparseMatrix>,
    /// `rho(e_i e_j) / 2` for `i < j`, in lexicographic order of `(i, j)`.
    pub spin_basis: Vec<SparseMatrix>,
    /// 1-based index pairs labelling `spin_basis`.
    pub pairs: Vec<(usize, usize)>,
    pub rep_type: RepType,
    pub structures: Vec<SparseMatrix>,
}

impl SpinRep {
    pub fn label(&self) -> String {
        match self.chirality {
            Chirality::Full => format!("Sigma{}", self.n),
            Chirality::Plus => format!("Sigma{}+", self.n),
            Chirality::Minus => format!("Sigma{}-", self.n),
        }
    }

    /// Index of `L_ij` in `spin_basis` (1-based `i < j`).
    pub fn index_of(&self, i: usize, j: usize) -> usize {
        pair_index(self.n, i, j)
    }

    /// Cartan generators `L_{12}, L_{34}, ...`.
    pub fn cartan(&self) -> Vec<usize> {
        (0..self.n / 2).map(|k| self.index_of(2 * k + 1, 2 * k + 2)).collect()
    }
}

/// Position of `(i, j)`, `1 <= i < j <= n`, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    assert!(1 <= i && i < j && j <= n);
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// The spin representation `Sigma_n`, or a half-spin representation when
/// `n` is divisible by 4. `Sigma_n^+` is the half on which `e_1 ... e_n`
/// acts as `+1`.
pub fn build_spin_rep(n: usize, chirality: Chirality) -> Result<SpinRep, CliffordError> {
    if n < 3 {
        return Err(CliffordError::TooSmall(n));
    }
    if chirality != Chirality::Full && n % 4 != 0 {
        return Err(CliffordError::BadChirality { n, chirality });
    }
    let base = clifford_generators(n - 1);
    let generators = if n % 4 == 0 {
        // the volume element of Cl_{n-1} is +-1 on this module; flipping
        // every gamma gives the other one
        let omega = ordered_product(&base);
        let d = base[0].rows();
        let sign = if omega == SparseMatrix::identity(d) {
            1
        } else {
            debug_assert_eq!(omega, SparseMatrix::scalar(d, &Scalar::from_int(-1)));
            -1
        };
        let neg: Vec<SparseMatrix> = base.iter().map(|g| g.scale(&Scalar::from_int(-1))).collect();
        let (plus, minus) = if sign == 1 { (base, neg) } else { (neg, base) };
        match chirality {
            Chirality::Plus => plus,
            Chirality::Minus => minus,
            Chirality::Full => plus.iter().zip(&minus).map(|(p, m)| p.direct_sum(m)).collect(),
        }
    } else {
        base
    };
    let dim = generators[0].rows();
    let half = Scalar::half();
    let mut spin_basis = Vec::with_capacity(n * (n - 1) / 2);
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            let m = if j == n {
                generators[i - 1].clone()
            } else {
                generators[i - 1].mul(&generators[j - 1])
            };
            spin_basis.push(m.scale(&half));
            pairs.push((i, j));
        }
    }
    let mut rep = SpinRep {
        n,
        chirality,
        dim,
        generators,
        spin_basis,
        pairs,
        rep_type: RepType::Real,
        structures: Vec::new(),
    };
    if chirality != Chirality::Full || n % 4 != 0 {
        let info = detect_type(&rep)?;
        rep.rep_type = info.rep_type;
        rep.structures = info.structures;
    }
    Ok(rep)
}

/// Which extra factor makes `Sigma_n^{(+)}` a representation of the
/// extended algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extra {
    None,
    U1,
    Sp1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TildeSpin {
    pub n: usize,
    pub extra: Extra,
}

pub fn tilde_spin(n: usize) -> TildeSpin {
    let extra = match n % 8 {
        0 | 1 | 7 => Extra::None,
        2 | 6 => Extra::U1,
        _ => Extra::Sp1,
    };
    TildeSpin { n, extra }
}

/// `Sigma_n^+` when `4 | n`, otherwise `Sigma_n`.
pub fn sigma_plus(n: usize) -> Result<SpinRep, CliffordError> {
    build_spin_rep(n, if n % 4 == 0 { Chirality::Plus } else { Chirality::Full })
}

/// Basis of `{X : X g = g X for all g}`.
pub fn centralizer(gens: &[SparseMatrix]) -> Vec<SparseMatrix> {
    let d = gens[0].rows();
    if gens.iter().all(|g| g.is_monomial() && g.nnz() == d) {
        centralizer_monomial(gens)
    } else {
        centralizer_general(gens)
    }
}

/// Centralizer through the linear system on the `d^2` entries of `X`.
pub fn centralizer_general(gens: &[SparseMatrix]) -> Vec<SparseMatrix> {
    let d = gens[0].rows();
    let var = |a: usize, b: usize| a * d + b;
    let mut rows = Vec::new();
    for g in gens {
        let gt = g.transpose();
        for a in 0..d {
            for b in 0..d {
                // (Xg - gX)_{ab} = sum_c X_ac g_cb - g_ac X_cb
                let mut pairs = Vec::new();
                for (c, v) in gt.row(b).iter() {
                    pairs.push((var(a, c), v.clone()));
                }
                for (c, v) in g.row(a).iter() {
                    pairs.push((var(c, b), -v));
                }
                let row = SparseVector::from_pairs(d * d, pairs);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    let m = SparseMatrix::from_rows(d * d, rows);
    kernel_basis(&m).into_iter().map(|v| unflatten(d, &v)).collect()
}

fn unflatten(d: usize, v: &SparseVector) -> SparseMatrix {
    SparseMatrix::from_triplets(d, d, v.iter().map(|(k, x)| (k / d, k % d, x.clone())))
}

/// Centralizer of signed permutation matrices. Every commutation equation
/// has the form `X_p = +-X_q`, so the solutions are classified by a signed
/// union-find on the entries of `X`.
pub fn centralizer_monomial(gens: &[SparseMatrix]) -> Vec<SparseMatrix> {
    let d = gens[0].rows();
    let mut uf = SignedUnionFind::new(d * d);
    for g in gens {
        // g e_b = s_b e_{sigma(b)}
        let mut sigma = vec![0usize; d];
        let mut sign = vec![0i8; d];
        let mut inv = vec![0usize; d];
        for (r, c, v) in g.triplets() {
            sigma[c] = r;
            sign[c] = v.signum() as i8;
            inv[r] = c;
        }
        // (Xg)_{ab} = s_b X_{a,sigma(b)},  (gX)_{ab} = s_{inv(a)} X_{inv(a),b}
        for a in 0..d {
            for b in 0..d {
                let p = a * d + sigma[b];
                let q = inv[a] * d + b;
                uf.union(p, q, sign[b] * sign[inv[a]]);
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<(usize, i8)>> = Default::default();
    for k in 0..d * d {
        let (root, s) = uf.find(k);
        classes.entry(root).or_default().push((k, s));
    }
    classes
        .into_iter()
        .filter(|(root, _)| !uf.broken[*root])
        .map(|(_, members)| {
            SparseMatrix::from_triplets(
                d,
                d,
                members.into_iter().map(|(k, s)| (k / d, k % d, Scalar::from_int(s as i64))),
            )
        })
        .collect()
}

struct SignedUnionFind {
    parent: Vec<usize>,
    // sign of the element relative to its parent
    sign: Vec<i8>,
    broken: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), sign: vec![1; n], broken: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress, from the node nearest the root outward
        let mut acc = 1i8;
        for &node in path.iter().rev() {
            acc *= self.sign[node];
            self.sign[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { 1 } else { self.sign[x] })
    }

    /// Record `X_p = s X_q`.
    fn union(&mut self, p: usize, q: usize, s: i8) {
        let (rp, sp) = self.find(p);
        let (rq, sq) = self.find(q);
        if rp == rq {
            if sp != s * sq {
                self.broken[rp] = true;
            }
            return;
        }
        // X_p = sp X_rp, X_q = sq X_rq, so X_rp = sp s sq X_rq
        self.parent[rp] = rq;
        self.sign[rp] = sp * s * sq;
        let b = self.broken[rp] || self.broken[rq];
        self.broken[rq] = b;
    }
}

fn normalized_imaginary(x: &SparseMatrix) -> Result<SparseMatrix, CliffordError> {
    let d = x.rows();
    let dd = Scalar::from(d);
    let t = &x.trace() / &dd;
    let y = x.axpy(&-t, &SparseMatrix::identity(d));
    // y^2 = -c Id with c > 0
    let c = -(&y.trace_product(&y) / &dd);
    let s = c.sqrt_exact().ok_or(CliffordError::IrrationalStructure)?;
    Ok(y.scale(&s.recip().ok_or(CliffordError::IrrationalStructure)?))
}

/// Classify the commuting algebra of the generators.
pub fn detect_type(rep: &SpinRep) -> Result<TypeInfo, CliffordError> {
    detect_type_of(&rep.generators)
}

/// Type of an irreducible real representation given a generating set of its
/// image algebra.
pub fn detect_type_of(gens: &[SparseMatrix]) -> Result<TypeInfo, CliffordError> {
    let cent = centralizer(gens);
    let d = gens[0].rows();
    let id = SparseMatrix::identity(d);
    let dd = Scalar::from(d);
    // pick basis elements that are not multiples of the identity
    let non_scalar: Vec<&SparseMatrix> = cent
        .iter()
        .filter(|x| *x != &SparseMatrix::scalar(d, &(&x.trace() / &dd)))
        .collect();
    match cent.len() {
        1 => Ok(TypeInfo { rep_type: RepType::Real, structures: vec![] }),
        2 => {
            let i = normalized_imaginary(non_scalar[0])?;
            Ok(TypeInfo { rep_type: RepType::Complex, structures: vec![i] })
        }
        4 => {
            let i = normalized_imaginary(non_scalar[0])?;
            // remove the I-component: <I, Y> = -tr(IY)/d
            let mut j = None;
            for y in &non_scalar[1..] {
                let t = &y.trace() / &dd;
                let y0 = y.axpy(&-t, &id);
                let comp = -(&i.trace_product(&y0) / &dd);
                let z = y0.axpy(&comp, &i);
                if !z.is_zero() {
                    j = Some(normalized_imaginary(&z)?);
                    break;
                }
            }
            let j = j.ok_or(CliffordError::UnexpectedCentralizer(4))?;
            Ok(TypeInfo { rep_type: RepType::Quaternionic, structures: vec![i, j] })
        }
        k => Err(CliffordError::UnexpectedCentralizer(k)),
    }
}

fn is_skew_wrt(a: &SparseMatrix, g: &SparseMatrix) -> bool {
    // a^T G + G a = 0
    a.transpose().mul(g).add(&g.mul(a)).is_zero()
}

/// Gram matrix of an invariant inner product: the identity when the
/// generators are already skew, otherwise a positive definite solution of
/// `a^T G + G a = 0`.
pub fn invariant_inner_product(rep: &SpinRep) -> Result<SparseMatrix, CliffordError> {
    invariant_metric(&rep.spin_basis)
}

pub fn invariant_metric(gens: &[SparseMatrix]) -> Result<SparseMatrix, CliffordError> {
    let d = gens[0].rows();
    let id = SparseMatrix::identity(d);
    if gens.iter().all(|a| is_skew_wrt(a, &id)) {
        return Ok(id);
    }
    // unknowns G_ij, i <= j
    let idx = |i: usize, j: usize| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * d - i * (i + 1) / 2 + j
    };
    let nvar = d * (d + 1) / 2;
    let mut rows = Vec::new();
    for a in gens {
        let at = a.transpose();
        for i in 0..d {
            for j in i..d {
                // (a^T G + G a)_ij = sum_k a_ki G_kj + G_ik a_kj
                let mut pairs = Vec::new();
                for (k, v) in at.row(i).iter() {
                    pairs.push((idx(k, j), v.clone()));
                }
                for (k, v) in at.row(j).iter() {
                    pairs.push((idx(i, k), v.clone()));
                }
                let r = SparseVector::from_pairs(nvar, pairs);
                if !r.is_zero() {
                    rows.push(r);
                }
            }
        }
    }
    let ker = kernel_basis(&SparseMatrix::from_rows(nvar, rows));
    let to_matrix = |v: &SparseVector| {
        let mut trip = Vec::new();
        for i in 0..d {
            for j in i..d {
                let x = v.get(idx(i, j));
                if !x.is_zero() {
                    trip.push((i, j, x.clone()));
                    if i != j {
                        trip.push((j, i, x));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(d, d, trip)
    };
    for v in &ker {
        let g = to_matrix(v);
        match ldl_signature(&g) {
            Ok((p, 0, 0)) if p == d => return Ok(g),
            Ok((0, n, 0)) if n == d => return Ok(g.scale(&Scalar::from_int(-1))),
            _ => {}
        }
    }
    Err(CliffordError::NoInvariantMetric)
}
