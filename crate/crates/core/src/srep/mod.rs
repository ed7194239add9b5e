//! Orthogonal representations `rho: h -> so(m)`, the canonical bracket on
//! `h + m`, the Casimir four-form and the `u(1)` / `sp(1)` augmentations.

mod bianchi;
pub mod families;
pub mod forms;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::exact::{inverse, kernel_basis, Accumulator, ExactError, Scalar, SparseMatrix, SparseVector};
use crate::lie::{trace_form, LieAlgebra, LieError};

pub use bianchi::{bianchi, DensePairing, PairingTable};
pub use forms::{FourForm, TwoForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SrepError {
    #[error("degenerate form on {0}")]
    DegenerateForm(&'static str),
    #[error("representation matrix {0} is not skew for the metric on m")]
    NotSkew(usize),
    #[error("structure {0} is not an invariant orthogonal complex structure")]
    BadStructure(&'static str),
    #[error("Casimir four-form is not proportional to the structure four-form")]
    NotProportional,
    #[error("proportionality constant {0} is not negative")]
    NonNegativeC(Scalar),
    #[error("augmented Casimir four-form does not vanish")]
    AugmentedCasimirNonzero,
    #[error("a_J does not commute with basis element {0}")]
    NotCentral(usize),
    #[error("a_J does not act as a nonzero multiple of J")]
    NotProportionalToJ,
    #[error("trace identity fails: {0} != {1}")]
    TraceMismatch(Scalar, Scalar),
    #[error("operation needs an orthonormal basis of m")]
    NotOrthonormal,
    #[error("no null pair found")]
    NoSolution,
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A faithful orthogonal representation of `(h, B_h)` on `(m, B_m)`.
#[derive(Debug, Clone)]
pub struct OrthRep {
    pub label: String,
    pub h: LieAlgebra,
    pub rho: Vec<SparseMatrix>,
    pub b_m: SparseMatrix,
}

impl OrthRep {
    /// Uses `B_h(a, b) = -tr(rho(a) rho(b))`.
    pub fn new(label: &str, h_labels: Vec<String>, rho: Vec<SparseMatrix>, b_m: SparseMatrix) -> Result<Self, SrepError> {
        let b_h = trace_form(&rho);
        Self::with_form(label, h_labels, rho, b_m, b_h)
    }

    pub fn with_form(
        label: &str,
        h_labels: Vec<String>,
        rho: Vec<SparseMatrix>,
        b_m: SparseMatrix,
        b_h: SparseMatrix,
    ) -> Result<Self, SrepError> {
        for (k, a) in rho.iter().enumerate() {
            if !is_skew(a, &b_m) {
                return Err(SrepError::NotSkew(k));
            }
        }
        let h = LieAlgebra::from_matrices(h_labels, &rho, b_h)?;
        Ok(OrthRep { label: label.to_string(), h, rho, b_m })
    }

    pub fn dim_h(&self) -> usize {
        self.rho.len()
    }

    pub fn dim_m(&self) -> usize {
        self.b_m.rows()
    }

    /// `rho(a)` for an `h`-vector `a`.
    pub fn act(&self, a: &SparseVector) -> SparseMatrix {
        let d = self.dim_m();
        a.iter().fold(SparseMatrix::zero(d, d), |acc, (k, x)| acc.axpy(x, &self.rho[k]))
    }

    pub fn g_inverse(&self) -> Result<SparseMatrix, SrepError> {
        inverse(self.h.form()).map_err(|_| SrepError::DegenerateForm("h"))
    }

    /// `a~_k` for every basis element.
    pub fn tilde_basis(&self) -> Vec<TwoForm> {
        self.rho.par_iter().map(|a| TwoForm::from_endomorphism(a, &self.b_m)).collect()
    }

    /// Same representation with `B_m` scaled by `t`.
    pub fn scale_metric(&self, t: &Scalar) -> Self {
        OrthRep { b_m: self.b_m.scale(t), ..self.clone() }
    }
}

/// `X^T B + B X = 0`.
pub fn is_skew(x: &SparseMatrix, b: &SparseMatrix) -> bool {
    x.transpose().mul(b).add(&b.mul(x)).is_zero()
}

/// `a~(u, v) = B_m(a u, v)`.
pub fn tilde(rep: &OrthRep, a: &SparseVector) -> TwoForm {
    TwoForm::from_endomorphism(&rep.act(a), &rep.b_m)
}

/// `sum_{k,l} (G^{-1})_{kl} a~_k ^ a~_l`.
pub fn casimir_image(rep: &OrthRep) -> Result<FourForm, SrepError> {
    inverse(&rep.b_m).map_err(|_| SrepError::DegenerateForm("m"))?;
    let ginv = rep.g_inverse()?;
    Ok(forms::quadratic_wedge(&rep.tilde_basis(), &ginv))
}

/// The algebra `g = h + m` with the canonical bracket. Basis: the basis of
/// `h` followed by the basis of `m`.
#[derive(Debug, Clone)]
pub struct CandidateAlgebra {
    pub g: LieAlgebra,
    pub h_dim: usize,
    pub m_dim: usize,
}

impl CandidateAlgebra {
    pub fn from_parts(g: LieAlgebra, h_dim: usize) -> Self {
        let m_dim = g.dim() - h_dim;
        CandidateAlgebra { g: g.with_grading(h_dim), h_dim, m_dim }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Embed an `m`-vector.
    pub fn embed_m(&self, v: &SparseVector) -> SparseVector {
        SparseVector::from_pairs(self.dim(), v.iter().map(|(i, x)| (i + self.h_dim, x.clone())))
    }

    /// Embed an `h`-vector.
    pub fn embed_h(&self, a: &SparseVector) -> SparseVector {
        SparseVector::from_pairs(self.dim(), a.iter().map(|(i, x)| (i, x.clone())))
    }

    fn split(&self, v: &SparseVector) -> (SparseVector, SparseVector) {
        let h = SparseVector::from_pairs(self.h_dim, v.iter().filter(|(i, _)| *i < self.h_dim).map(|(i, x)| (i, x.clone())));
        let m = SparseVector::from_pairs(
            self.m_dim,
            v.iter().filter(|(i, _)| *i >= self.h_dim).map(|(i, x)| (i - self.h_dim, x.clone())),
        );
        (h, m)
    }

    /// `[h,h] in h`, `[h,m] in m`, `[m,m] in h` on all basis pairs.
    pub fn grading_holds(&self) -> bool {
        let hd = self.h_dim;
        let n = self.dim();
        (0..n).into_par_iter().all(|i| {
            ((i + 1)..n).all(|j| {
                let (bh, bm) = self.split(&self.g.bracket(i, j));
                match (i < hd, j < hd) {
                    (true, true) | (false, false) => bm.is_zero(),
                    _ => bh.is_zero(),
                }
            })
        })
    }

    /// `B_h(a_k, [v, w]) = B_m([a_k, v], w)` on all basis elements.
    pub fn condition_four_holds(&self) -> bool {
        let hd = self.h_dim;
        let form = self.g.form();
        let n = self.dim();
        (hd..n).into_par_iter().all(|v| {
            (hd..n).all(|w| {
                let vw = self.g.bracket(v, w);
                (0..hd).all(|k| {
                    let lhs = form.row(k).dot(&vw);
                    let kv = self.g.bracket(k, v);
                    let rhs: Scalar = kv.iter().map(|(u, x)| x * &form.get(u, w)).sum();
                    lhs == rhs
                })
            })
        })
    }
}

/// The canonical bracket on `h + m`:
/// `[a, v] = rho(a) v` and `[v, w] = sum_{k,l} (G^{-1})_{kl} B_m(a_k v, w) a_l`.
pub fn build_candidate(rep: &OrthRep) -> Result<CandidateAlgebra, SrepError> {
    inverse(&rep.b_m).map_err(|_| SrepError::DegenerateForm("m"))?;
    let ginv = rep.g_inverse()?;
    let hd = rep.dim_h();
    let md = rep.dim_m();
    let n = hd + md;
    let mut brackets: Vec<(usize, usize, SparseVector)> = Vec::new();
    for i in 0..hd {
        for j in (i + 1)..hd {
            let b = rep.h.bracket(i, j);
            if !b.is_zero() {
                brackets.push((i, j, SparseVector::from_pairs(n, b.iter().map(|(k, x)| (k, x.clone())))));
            }
        }
    }
    for (k, a) in rep.rho.iter().enumerate() {
        let at = a.transpose();
        for u in 0..md {
            let col = at.row(u);
            if !col.is_zero() {
                brackets.push((k, hd + u, SparseVector::from_pairs(n, col.iter().map(|(r, x)| (hd + r, x.clone())))));
            }
        }
    }
    let forms = rep.tilde_basis();
    let mut mm: FxHashMap<(usize, usize), Accumulator> = FxHashMap::default();
    for (k, f) in forms.iter().enumerate() {
        for (u, v, x) in f.iter() {
            let acc = mm.entry((u, v)).or_default();
            for (l, g) in ginv.row(k).iter() {
                acc.add(l, &(x * g));
            }
        }
    }
    let mut mm: Vec<((usize, usize), SparseVector)> = mm.into_iter().map(|(k, a)| (k, a.finish(n))).collect();
    mm.sort_unstable_by_key(|(k, _)| *k);
    for ((u, v), vec) in mm {
        if !vec.is_zero() {
            brackets.push((hd + u, hd + v, vec));
        }
    }
    let mut labels: Vec<String> = rep.h.labels().to_vec();
    labels.extend((0..md).map(|i| format!("e{i}")));
    let form = rep.h.form().direct_sum(&rep.b_m);
    Ok(CandidateAlgebra::from_parts(LieAlgebra::from_brackets(labels, brackets, form), hd))
}

/// `J(u,v,w) = [[u,v],w] + [[v,w],u] + [[w,u],v]` for `m`-vectors.
pub fn jacobi_defect(cand: &CandidateAlgebra, u: &SparseVector, v: &SparseVector, w: &SparseVector) -> SparseVector {
    let (u, v, w) = (cand.embed_m(u), cand.embed_m(v), cand.embed_m(w));
    let g = &cand.g;
    let mut acc = Accumulator::new();
    for (a, b, c) in [(&u, &v, &w), (&v, &w, &u), (&w, &u, &v)] {
        acc.add_scaled(&Scalar::one(), &g.bracket_vec(&g.bracket_vec(a, b), c));
    }
    let (h, m) = cand.split(&acc.finish(cand.dim()));
    debug_assert!(h.is_zero());
    m
}

/// Result of a `u(1)` or `sp(1)` augmentation.
#[derive(Debug, Clone)]
pub struct AugmentationResult {
    pub c: Scalar,
    pub r: Scalar,
    pub augmented: OrthRep,
    pub candidate: CandidateAlgebra,
}

fn check_structure(rep: &OrthRep, x: &SparseMatrix, name: &'static str) -> Result<(), SrepError> {
    let d = rep.dim_m();
    let sq = x.mul(x);
    if sq != SparseMatrix::scalar(d, &Scalar::from_int(-1))
        || !is_skew(x, &rep.b_m)
        || rep.rho.iter().any(|a| !a.commutator(x).is_zero())
    {
        return Err(SrepError::BadStructure(name));
    }
    Ok(())
}

fn augment(
    rep: &OrthRep,
    structures: &[(&str, SparseMatrix)],
    target: &FourForm,
) -> Result<AugmentationResult, SrepError> {
    let cas = casimir_image(rep)?;
    let c = cas.proportionality(target)?.ok_or(SrepError::NotProportional)?;
    if !c.is_negative() {
        return Err(SrepError::NonNegativeC(c));
    }
    let r = -c.recip().unwrap();
    let mut labels = rep.h.labels().to_vec();
    let mut rho = rep.rho.clone();
    let mut form = rep.h.form().clone();
    for (name, x) in structures {
        labels.push(name.to_string());
        rho.push(x.clone());
        form = form.direct_sum(&SparseMatrix::scalar(1, &r));
    }
    let suffix = if structures.len() == 1 { "+u1" } else { "+sp1" };
    let augmented = OrthRep::with_form(&format!("{}{suffix}", rep.label), labels, rho, rep.b_m.clone(), form)?;
    if !casimir_image(&augmented)?.is_zero() {
        return Err(SrepError::AugmentedCasimirNonzero);
    }
    let candidate = build_candidate(&augmented)?;
    Ok(AugmentationResult { c, r, augmented, candidate })
}

/// Add `u(1)` acting through the invariant complex structure `I`.
pub fn complex_augment(rep: &OrthRep, i: &SparseMatrix) -> Result<AugmentationResult, SrepError> {
    check_structure(rep, i, "I")?;
    let w = TwoForm::from_endomorphism(i, &rep.b_m);
    augment(rep, &[("i", i.clone())], &w.wedge(&w))
}

/// Add `sp(1)` acting through `I`, `J` and `K = I J`.
pub fn quaternionic_augment(rep: &OrthRep, i: &SparseMatrix, j: &SparseMatrix) -> Result<AugmentationResult, SrepError> {
    check_structure(rep, i, "I")?;
    check_structure(rep, j, "J")?;
    if !i.mul(j).add(&j.mul(i)).is_zero() {
        return Err(SrepError::BadStructure("IJ"));
    }
    let k = i.mul(j);
    let mut target = FourForm::zero(rep.dim_m());
    for x in [i, j, &k] {
        let w = TwoForm::from_endomorphism(x, &rep.b_m);
        target.add_wedge(&Scalar::one(), &w, &w);
    }
    augment(rep, &[("i", i.clone()), ("j", j.clone()), ("k", k)], &target)
}

/// `a_J = sum_i [e_i, J e_i]` and its action on `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralElement {
    pub a_j: SparseVector,
    pub mu: Scalar,
    /// `sum_j B_m(a_J e_j, J e_j)`.
    pub trace: Scalar,
}

/// Computes `a_J`, checks that it is central in `h`, that it acts as `mu J`
/// with `mu != 0`, and that
/// `sum_j B_m(a_J e_j, J e_j) = 2 sum_{i,j} |[J e_i, e_j]|^2`.
pub fn central_element(cand: &CandidateAlgebra, j: &SparseMatrix) -> Result<CentralElement, SrepError> {
    let hd = cand.h_dim;
    let md = cand.m_dim;
    let n = cand.dim();
    let b_m = cand.g.form().submatrix(&(hd..n).collect::<Vec<_>>(), &(hd..n).collect::<Vec<_>>());
    if !b_m.is_identity() {
        return Err(SrepError::NotOrthonormal);
    }
    let g = &cand.g;
    let jt = j.transpose();
    // J e_i as embedded vectors
    let je: Vec<SparseVector> = (0..md).map(|i| cand.embed_m(jt.row(i))).collect();
    let mut acc = Accumulator::new();
    for (i, jei) in je.iter().enumerate() {
        acc.add_scaled(&Scalar::one(), &g.bracket_vec(&SparseVector::unit(n, hd + i), jei));
    }
    let a_full = acc.finish(n);
    let (a_j, rest) = cand.split(&a_full);
    debug_assert!(rest.is_zero());
    for k in 0..hd {
        if !g.bracket_with_basis(&a_full, k).is_zero() {
            return Err(SrepError::NotCentral(k));
        }
    }
    // matrix of a_J on m, column u = [a_J, e_u]
    let cols: Vec<SparseVector> = (0..md).map(|u| cand.split(&g.bracket_with_basis(&a_full, hd + u)).1).collect();
    let action = SparseMatrix::from_triplets(
        md,
        md,
        cols.iter().enumerate().flat_map(|(u, c)| c.iter().map(move |(r, x)| (r, u, x.clone()))),
    );
    let (r0, c0, j0) = j.triplets().next().ok_or(SrepError::NotProportionalToJ)?;
    let mu = &action.get(r0, c0) / j0;
    if mu.is_zero() || action != j.scale(&mu) {
        return Err(SrepError::NotProportionalToJ);
    }
    let trace: Scalar = action.triplets().map(|(r, c, x)| x * &j.get(r, c)).sum();
    let form = g.form();
    let rhs: Scalar = (0..md)
        .into_par_iter()
        .map(|i| {
            let mut s = Scalar::zero();
            for jj in 0..md {
                let x = g.bracket_vec(&je[i], &SparseVector::unit(n, hd + jj));
                if !x.is_zero() {
                    s += x.dot(&form.mul_vec(&x));
                }
            }
            s
        })
        .sum::<Scalar>()
        * Scalar::from_int(2);
    if trace != rhs {
        return Err(SrepError::TraceMismatch(trace, rhs));
    }
    Ok(CentralElement { a_j, mu, trace })
}

/// Nonproportional `v0, w0` with `B_m(v0, a w0) = 0` for all `a` in `h`.
pub fn find_null_pair(rep: &OrthRep) -> Result<(SparseVector, SparseVector), SrepError> {
    let md = rep.dim_m();
    let tries = md.min(8);
    for t in 0..tries {
        // unit vectors, then sums of neighbours
        let w0 = if t < tries / 2 {
            SparseVector::unit(md, t)
        } else {
            SparseVector::from_pairs(md, [(t, Scalar::one()), ((t + 1) % md, Scalar::from_int(2))])
        };
        let rows: Vec<SparseVector> =
            rep.rho.iter().map(|a| rep.b_m.mul_vec(&a.mul_vec(&w0))).filter(|r| !r.is_zero()).collect();
        let ker = kernel_basis(&SparseMatrix::from_rows(md, rows));
        if let Some(v0) = ker.into_iter().find(|v| crate::exact::proportionality(v, &w0).ok().flatten().is_none()) {
            return Ok((v0, w0));
        }
    }
    Err(SrepError::NoSolution)
}

/// Contraction operator for a complex structure `I` on `(m, B_m)`.
pub fn lambda_for(rep: &OrthRep, i: &SparseMatrix) -> Result<SparseMatrix, SrepError> {
    let binv = inverse(&rep.b_m).map_err(|_| SrepError::DegenerateForm("m"))?;
    Ok(forms::lambda_coefficients(i, &binv))
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use crate::lie::{verify_structure, JacobiMode};

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn tilde_of_rotation() {
        let rep = so_n(2).unwrap().rep;
        assert!(tilde(&rep, &SparseVector::zero(1)).is_zero());
        let t = tilde(&rep, &SparseVector::unit(1, 0));
        assert_eq!(t.nnz(), 1);
        assert_eq!(t.eval(0, 1).abs(), q(1));
    }

    #[test]
    fn adjoint_so3_candidate_is_lie() {
        let rep = so_n(3).unwrap().rep;
        let cand = build_candidate(&rep).unwrap();
        assert_eq!(cand.dim(), 6);
        assert!(cand.grading_holds() && cand.condition_four_holds());
        assert!(casimir_image(&rep).unwrap().is_zero());
        assert!(verify_structure(&cand.g, JacobiMode::Full, 0).passed());
    }

    #[test]
    fn defect_matches_casimir_on_cubics() {
        let rep = so3_harmonic_cubics().unwrap().rep;
        assert_eq!(rep.dim_m(), 7);
        assert!(!rep.b_m.is_identity());
        let cas = casimir_image(&rep).unwrap();
        assert!(!cas.is_zero());
        let cand = build_candidate(&rep).unwrap();
        assert!(cand.grading_holds() && cand.condition_four_holds());
        let md = 7;
        let half = Scalar::half();
        let mut nonzero = false;
        for u in 0..md {
            for v in 0..md {
                for w in 0..md {
                    let jd = jacobi_defect(
                        &cand,
                        &SparseVector::unit(md, u),
                        &SparseVector::unit(md, v),
                        &SparseVector::unit(md, w),
                    );
                    nonzero |= !jd.is_zero();
                    let bj = rep.b_m.mul_vec(&jd);
                    for z in 0..md {
                        assert_eq!(bj.get(z), &cas.eval([u, v, w, z]) * &half);
                    }
                }
            }
        }
        assert!(nonzero);
        assert!(!verify_structure(&cand.g, JacobiMode::Full, 0).jacobi_ok);
    }

    #[test]
    fn defect_vanishes_on_repeated_argument() {
        let rep = so3_harmonic_cubics().unwrap().rep;
        let cand = build_candidate(&rep).unwrap();
        let u = SparseVector::from_pairs(7, [(0, q(1)), (3, q(2))]);
        let w = SparseVector::unit(7, 5);
        assert!(jacobi_defect(&cand, &u, &u, &w).is_zero());
    }

    #[test]
    fn cpn_family() {
        let fam = su_n(3).unwrap();
        let (rep, i) = (fam.rep, fam.structures[0].clone());
        let aug = complex_augment(&rep, &i).unwrap();
        assert!(aug.c.is_negative() && aug.r.is_positive());
        assert_eq!(aug.candidate.dim(), 15);
        assert!(verify_structure(&aug.candidate.g, JacobiMode::Full, 0).passed());
        let ce = central_element(&aug.candidate, &i).unwrap();
        assert!(!ce.mu.is_zero());
        // a_J lies in the u(1) summand
        assert_eq!(ce.a_j.iter().map(|(k, _)| k).collect::<Vec<_>>(), vec![aug.augmented.dim_h() - 1]);
    }

    #[test]
    fn hpn_family() {
        for n in 1..=2 {
            let fam = sp_n(n).unwrap();
            let (rep, i, j) = (fam.rep, fam.structures[0].clone(), fam.structures[1].clone());
            let aug = quaternionic_augment(&rep, &i, &j).unwrap();
            assert_eq!(aug.candidate.dim(), (n + 1) * (2 * n + 3));
            assert!(verify_structure(&aug.candidate.g, JacobiMode::Full, 0).passed());
            // quaternionic type: a_I lands in sp(1), which is not central
            assert!(matches!(central_element(&aug.candidate, &i), Err(SrepError::NotCentral(_))));
        }
    }

    #[test]
    fn zero_bracket_has_no_central_element() {
        // u(1) on R^2 with [m, m] = 0
        let labels = vec!["i".into(), "e0".into(), "e1".into()];
        let g = LieAlgebra::from_constants(
            labels,
            [(0, 1, 2, q(1)), (0, 2, 1, q(-1))],
            SparseMatrix::identity(3),
        );
        let cand = CandidateAlgebra::from_parts(g, 1);
        let j = SparseMatrix::from_ints(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(central_element(&cand, &j), Err(SrepError::NotProportionalToJ));
    }

    #[test]
    fn null_pairs() {
        assert_eq!(find_null_pair(&so_n(5).unwrap().rep), Err(SrepError::NoSolution));
        let rep = spin_rep(9).unwrap();
        assert_eq!(find_null_pair(&rep), Err(SrepError::NoSolution));
    }

    #[test]
    fn scaling_metric_scales_casimir() {
        let rep = so3_harmonic_cubics().unwrap().rep;
        let t = Scalar::new(3, 2);
        let a = casimir_image(&rep).unwrap();
        let b = casimir_image(&rep.scale_metric(&t)).unwrap();
        assert_eq!(b, a.scale(&(&t * &t)));
    }

    #[test]
    fn sp1_action_on_structures() {
        let fam = sp_n(2).unwrap();
        let (rep, i, j) = (fam.rep, fam.structures[0].clone(), fam.structures[1].clone());
        let k = i.mul(&j);
        let wj = TwoForm::from_endomorphism(&j, &rep.b_m);
        let wk = TwoForm::from_endomorphism(&k, &rep.b_m);
        let wi = TwoForm::from_endomorphism(&i, &rep.b_m);
        assert_eq!(wj.act(&i), wk.scale(&q(2)));
        assert_eq!(wk.act(&i), wj.scale(&q(-2)));
        assert!(wi.act(&i).is_zero());
        for a in rep.tilde_basis() {
            assert!(a.act(&i).is_zero());
        }
    }
}
