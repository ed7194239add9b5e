use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{killing_form, LieAlgebra, LieError, SpanSolver};
use crate::exact::{inverse, kernel_basis, Accumulator, Poly, Scalar, SparseMatrix, SparseVector};

/// Rank and roots of a compact Lie algebra with respect to a torus. A root
/// `alpha` is recorded through `ad(h_s)` acting with eigenvalue `i alpha_s`
/// on its root space, where `h_s` runs over the seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootData {
    pub rank: usize,
    pub roots: Vec<Vec<Scalar>>,
}

fn apply_poly(p: &Poly, m: &SparseMatrix, v: &SparseVector) -> SparseVector {
    // Horner
    let mut acc = SparseVector::zero(v.dim());
    for c in p.coeffs().iter().rev() {
        acc = m.mul_vec(&acc).axpy(c, v);
    }
    acc
}

/// Minimal polynomial of `v` under `m`.
fn krylov_poly(m: &SparseMatrix, v: &SparseVector) -> Poly {
    let mut seq = vec![v.clone()];
    loop {
        let next = m.mul_vec(seq.last().unwrap());
        let solver = SpanSolver::from_vectors(seq.clone()).expect("independent Krylov vectors");
        if let Some(c) = solver.coordinates_vec(&next) {
            let mut coeffs: Vec<Scalar> = (0..seq.len()).map(|i| -c.get(i)).collect();
            coeffs.push(Scalar::one());
            return Poly::new(coeffs);
        }
        seq.push(next);
    }
}

/// Minimal polynomial of a matrix, from seeded random Krylov sequences.
pub fn minimal_polynomial(m: &SparseMatrix) -> Poly {
    let n = m.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut p = Poly::one();
    for attempt in 0.. {
        let v = if attempt < 4 {
            SparseVector::from_pairs(n, (0..n).map(|i| (i, Scalar::from_int(rng.gen_range(-9..=9)))))
        } else {
            SparseVector::unit(n, (attempt - 4) % n)
        };
        if v.is_zero() {
            continue;
        }
        p = p.lcm(&krylov_poly(m, &v));
        if (0..n).all(|i| apply_poly(&p, m, &SparseVector::unit(n, i)).is_zero()) {
            break;
        }
    }
    p
}

struct Node {
    basis: Vec<SparseVector>,
    values: Vec<Scalar>,
}

fn split_node(node: Node, p: &SparseMatrix, eigen: &[Scalar]) -> Result<Vec<Node>, LieError> {
    let dim = p.rows();
    // cheap path: the basis already consists of eigenvectors
    if node.basis.len() <= 2 {
        let mut val: Option<Scalar> = None;
        let mut ok = true;
        for b in &node.basis {
            let pb = p.mul_vec(b);
            let (i, x) = b.leading().unwrap();
            let lam = &pb.get(i) / x;
            if pb != b.scale(&lam) || val.as_ref().is_some_and(|v| *v != lam) {
                ok = false;
                break;
            }
            val = Some(lam);
        }
        if ok {
            let mut values = node.values;
            values.push(val.unwrap());
            return Ok(vec![Node { basis: node.basis, values }]);
        }
    }
    let k = node.basis.len();
    let mut out = Vec::new();
    let mut total = 0;
    for lam in eigen {
        let images: Vec<SparseVector> =
            node.basis.iter().map(|b| p.mul_vec(b).axpy(&-lam, b)).collect();
        let m = SparseMatrix::from_triplets(
            dim,
            k,
            images.iter().enumerate().flat_map(|(a, w)| w.iter().map(move |(r, x)| (r, a, x.clone()))),
        );
        let ker = kernel_basis(&m);
        if ker.is_empty() {
            continue;
        }
        total += ker.len();
        let basis = ker
            .iter()
            .map(|c| {
                let mut acc = Accumulator::new();
                for (a, x) in c.iter() {
                    acc.add_scaled(x, &node.basis[a]);
                }
                acc.finish(dim)
            })
            .collect();
        let mut values = node.values.clone();
        values.push(lam.clone());
        out.push(Node { basis, values });
    }
    if total != k {
        return Err(LieError::NotDiagonalizable("operator is not semisimple on a joint eigenspace".into()));
    }
    Ok(out)
}

/// Rank and root multiset from a torus given by basis indices.
///
/// The operators `ad(h_s) ad(h_t)` commute and act on the real span of the
/// `+-alpha` root spaces as `-alpha_s alpha_t`; their joint eigenspaces
/// therefore recover every root up to sign.
pub fn cartan_and_roots(l: &LieAlgebra, seed: &[usize]) -> Result<RootData, LieError> {
    let r = seed.len();
    for (a, &s) in seed.iter().enumerate() {
        for &t in &seed[a + 1..] {
            if !l.bracket(s, t).is_zero() {
                return Err(LieError::NotCommuting(s, t));
            }
        }
    }
    let ads: Vec<SparseMatrix> = seed.iter().map(|&s| l.ad(s)).collect();
    let mut ops = Vec::new();
    for s in 0..r {
        ops.push((s, s));
    }
    for s in 0..r {
        for t in (s + 1)..r {
            ops.push((s, t));
        }
    }
    let n = l.dim();
    let mut nodes = vec![Node { basis: (0..n).map(|i| SparseVector::unit(n, i)).collect(), values: vec![] }];
    for &(s, t) in &ops {
        let p = ads[s].mul(&ads[t]);
        let mp = minimal_polynomial(&p);
        if mp != mp.squarefree() {
            return Err(LieError::NotDiagonalizable(format!("ad(h_{s}) ad(h_{t}) is not semisimple")));
        }
        let eigen = mp
            .rational_roots()
            .ok_or_else(|| LieError::NotDiagonalizable("irrational or complex eigenvalue".into()))?;
        let mut next = Vec::new();
        for node in nodes {
            next.extend(split_node(node, &p, &eigen)?);
        }
        nodes = next;
    }
    let mut roots = Vec::new();
    let mut zero_dim = 0;
    let pos = |s: usize, t: usize| ops.iter().position(|&o| o == (s.min(t), s.max(t))).unwrap();
    for node in &nodes {
        if node.values.iter().all(|v| v.is_zero()) {
            zero_dim += node.basis.len();
            continue;
        }
        if node.basis.len() != 2 {
            return Err(LieError::NotDiagonalizable(format!(
                "joint eigenspace of real dimension {}",
                node.basis.len()
            )));
        }
        let s0 = (0..r).find(|&s| !node.values[pos(s, s)].is_zero()).unwrap();
        let a0 = (-&node.values[pos(s0, s0)])
            .sqrt_exact()
            .ok_or_else(|| LieError::NotDiagonalizable("irrational root coordinate".into()))?;
        let alpha: Vec<Scalar> = (0..r).map(|t| &(-&node.values[pos(s0, t)]) / &a0).collect();
        for s in 0..r {
            for t in s..r {
                if -(&alpha[s] * &alpha[t]) != node.values[pos(s, t)] {
                    return Err(LieError::NotDiagonalizable("inconsistent joint eigenvalues".into()));
                }
            }
        }
        roots.push(alpha.iter().map(|x| -x).collect());
        roots.push(alpha);
    }
    if zero_dim != r {
        return Err(LieError::NotDiagonalizable(format!("zero weight space has dimension {zero_dim}, seed has {r}")));
    }
    roots.sort();
    Ok(RootData { rank: r, roots })
}

/// Integrality and closure properties of a root set, with inner products
/// from the Killing form on the torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootChecks {
    pub symmetric: bool,
    pub multiplicity_free: bool,
    pub q_integral: bool,
    pub closed: bool,
    pub connected: bool,
    pub killing_nondegenerate: bool,
}

impl RootChecks {
    pub fn all(&self) -> bool {
        self.symmetric && self.multiplicity_free && self.q_integral && self.closed && self.connected
    }

    /// Simple by proxy: nondegenerate Killing form and an irreducible root system.
    pub fn simple(&self) -> bool {
        self.killing_nondegenerate && self.connected
    }
}

pub fn root_checks(l: &LieAlgebra, seed: &[usize], data: &RootData) -> RootChecks {
    let k = killing_form(l);
    let killing_nondegenerate = crate::exact::rank(&k) == l.dim();
    let kt = k.submatrix(seed, seed).scale(&Scalar::from_int(-1));
    let ip = match inverse(&kt) {
        Ok(m) => m,
        Err(_) => {
            return RootChecks {
                symmetric: false,
                multiplicity_free: false,
                q_integral: false,
                closed: false,
                connected: false,
                killing_nondegenerate,
            }
        }
    };
    let roots = &data.roots;
    let vecs: Vec<SparseVector> = roots.iter().map(|a| SparseVector::from_dense(a)).collect();
    let imgs: Vec<SparseVector> = vecs.iter().map(|v| ip.mul_vec(v)).collect();
    let dot = |a: usize, b: usize| vecs[a].dot(&imgs[b]);
    let set: HashSet<&Vec<Scalar>> = roots.iter().collect();
    let multiplicity_free = set.len() == roots.len();
    let symmetric = roots.iter().all(|a| set.contains(&a.iter().map(|x| -x).collect::<Vec<_>>()));
    let mut q_integral = true;
    let mut closed = true;
    let nr = roots.len();
    let mut parent: Vec<usize> = (0..nr).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let norms: Vec<Scalar> = (0..nr).map(|a| dot(a, a)).collect();
    for a in 0..nr {
        for b in 0..nr {
            let ab = dot(a, b);
            let q = &(&ab * &Scalar::from_int(2)) / &norms[b];
            if !q.is_integer() || q.abs() > Scalar::from_int(3) {
                q_integral = false;
            }
            if a < b && !ab.is_zero() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
                let prop = crate::exact::proportionality(&vecs[a], &vecs[b]).ok().flatten().is_some();
                if !prop {
                    let sum: Vec<Scalar> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                    let diff: Vec<Scalar> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x - y).collect();
                    if !set.contains(&sum) && !set.contains(&diff) {
                        closed = false;
                    }
                }
            }
        }
    }
    let connected = nr == 0 || (0..nr).all(|a| find(&mut parent, a) == find(&mut parent, 0));
    RootChecks { symmetric, multiplicity_free, q_integral, closed, connected, killing_nondegenerate }
}

#[cfg(test)]
mod tests {
    use super::super::tests::su2;
    use super::*;

    #[test]
    fn su2_has_two_roots() {
        let l = su2(1);
        let d = cartan_and_roots(&l, &[2]).unwrap();
        assert_eq!(d.rank, 1);
        assert_eq!(d.roots, vec![vec![Scalar::from_int(-1)], vec![Scalar::from_int(1)]]);
        let c = root_checks(&l, &[2], &d);
        assert!(c.all() && c.simple());
    }

    #[test]
    fn wrong_seed_rejected() {
        let l = su2(1);
        assert!(matches!(cartan_and_roots(&l, &[0, 1]), Err(LieError::NotCommuting(0, 1))));
    }

    #[test]
    fn minimal_polynomial_of_rotation() {
        let m = SparseMatrix::from_ints(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 0]]);
        // x^3 + x
        let p = minimal_polynomial(&m);
        assert_eq!(p, Poly::new(vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::one()]));
    }
}
