use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::LieAlgebra;
use crate::exact::{ldl_signature, Scalar, SparseMatrix, DENSE_LIMIT};

/// How much of the Jacobi identity a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "count")]
pub enum JacobiMode {
    Full,
    Sampled(usize),
    ViaCasimir,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub jacobi_checked: JacobiMode,
    pub jacobi_ok: bool,
    /// First failing triple in the order checked.
    pub jacobi_violation: Option<(usize, usize, usize)>,
    pub invariance_ok: bool,
    pub killing_signature: Option<(usize, usize, usize)>,
    pub rank: Option<usize>,
    pub root_count: Option<usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.jacobi_ok && self.invariance_ok
    }
}

/// `[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j] = 0`.
pub fn jacobi_holds(l: &LieAlgebra, i: usize, j: usize, k: usize) -> bool {
    let mut acc = crate::exact::Accumulator::new();
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        let ab = l.bracket(a, b);
        acc.add_scaled(&Scalar::one(), &l.bracket_with_basis(&ab, c));
    }
    acc.finish(l.dim()).is_zero()
}

/// Seeded uniform triples of distinct indices, each sorted.
pub fn sample_triples(dim: usize, count: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut v = rand::seq::index::sample(&mut rng, dim, 3).into_vec();
            v.sort_unstable();
            (v[0], v[1], v[2])
        })
        .collect()
}

fn invariance_holds(l: &LieAlgebra) -> bool {
    let b = l.form();
    let range = l.grading().unwrap_or(l.dim());
    (0..range).into_par_iter().all(|a| {
        let ad = l.ad(a);
        ad.transpose().mul(b).add(&b.mul(&ad)).is_zero()
    })
}

/// Check the Jacobi identity (all triples, or a seeded sample) and
/// ad-invariance of the form. For graded algebras invariance is checked
/// for `a` in the `h` part.
pub fn verify_structure(l: &LieAlgebra, mode: JacobiMode, seed: u64) -> VerificationReport {
    let n = l.dim();
    let violation = match mode {
        JacobiMode::Full => (0..n).into_par_iter().find_map_first(|i| {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if !jacobi_holds(l, i, j, k) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        }),
        JacobiMode::Sampled(count) if n >= 3 => {
            let triples = sample_triples(n, count, seed);
            triples.par_iter().find_map_first(|&(i, j, k)| (!jacobi_holds(l, i, j, k)).then_some((i, j, k)))
        }
        _ => None,
    };
    let killing_signature = (n <= DENSE_LIMIT).then(|| ldl_signature(&killing_form(l)).ok()).flatten();
    VerificationReport {
        jacobi_checked: mode,
        jacobi_ok: violation.is_none(),
        jacobi_violation: violation,
        invariance_ok: invariance_holds(l),
        killing_signature,
        rank: None,
        root_count: None,
    }
}

/// `K(a, b) = tr(ad_a ad_b)`.
pub fn killing_form(l: &LieAlgebra) -> SparseMatrix {
    let n = l.dim();
    let ads: Vec<SparseMatrix> = (0..n).into_par_iter().map(|i| l.ad(i)).collect();
    let trip: Vec<(usize, usize, Scalar)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let ads = &ads;
            (i..n).filter_map(move |j| {
                let v = ads[i].trace_product(&ads[j]);
                (!v.is_zero()).then_some((i, j, v))
            })
        })
        .collect();
    let sym = trip
        .iter()
        .cloned()
        .chain(trip.iter().filter(|(i, j, _)| i != j).map(|(i, j, v)| (*j, *i, v.clone())));
    SparseMatrix::from_triplets(n, n, sym)
}

#[cfg(test)]
mod tests {
    use super::super::tests::su2;
    use super::*;

    #[test]
    fn su2_passes() {
        let r = verify_structure(&su2(1), JacobiMode::Full, 0);
        assert!(r.jacobi_ok && r.invariance_ok);
        assert_eq!(r.killing_signature, Some((0, 3, 0)));
    }

    #[test]
    fn perturbed_su2_fails() {
        let mut l = su2(1);
        // [x, y] = z + x
        l.set_constant(0, 1, 0, Scalar::from_int(1));
        let r = verify_structure(&l, JacobiMode::Full, 0);
        assert!(!r.jacobi_ok);
        assert_eq!(r.jacobi_violation, Some((0, 1, 2)));
    }

    #[test]
    fn killing_of_su2() {
        // c_ij^k = 2 eps_ijk
        let k = killing_form(&su2(2));
        assert_eq!(k, SparseMatrix::scalar(3, &Scalar::from_int(-8)));
        let ab = LieAlgebra::from_brackets(vec!["a".into(), "b".into()], [], SparseMatrix::identity(2));
        assert!(killing_form(&ab).is_zero());
    }

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(sample_triples(50, 20, 7), sample_triples(50, 20, 7));
        assert!(sample_triples(50, 100, 1).iter().all(|&(a, b, c)| a < b && b < c && c < 50));
    }
}
