use std::collections::BTreeMap;

use super::forms::FourForm;
use crate::exact::Scalar;

/// A bilinear form on `Lambda^2 m`, evaluated on basis pairs:
/// `value(u, v, w, z) = T(e_u ^ e_v, e_w ^ e_z)`.
pub trait PairingTable {
    fn dim(&self) -> usize;
    fn value(&self, u: usize, v: usize, w: usize, z: usize) -> Scalar;
}

/// Table of `T` on increasing pairs, extended by antisymmetry in each pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePairing {
    dim: usize,
    values: BTreeMap<(usize, usize, usize, usize), Scalar>,
}

impl DensePairing {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize, usize) -> Scalar) -> Self {
        let mut values = BTreeMap::new();
        for u in 0..dim {
            for v in (u + 1)..dim {
                for w in 0..dim {
                    for z in (w + 1)..dim {
                        let x = f(u, v, w, z);
                        if !x.is_zero() {
                            values.insert((u, v, w, z), x);
                        }
                    }
                }
            }
        }
        DensePairing { dim, values }
    }

    /// Whether `T(x, y) = T(y, x)`.
    pub fn is_symmetric(&self) -> bool {
        self.values.iter().all(|(&(u, v, w, z), x)| self.values.get(&(w, z, u, v)) == Some(x))
    }
}

impl PairingTable for DensePairing {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, u: usize, v: usize, w: usize, z: usize) -> Scalar {
        if u == v || w == z {
            return Scalar::zero();
        }
        let (a, s1) = if u < v { ((u, v), 1) } else { ((v, u), -1) };
        let (b, s2) = if w < z { ((w, z), 1) } else { ((z, w), -1) };
        let x = self.values.get(&(a.0, a.1, b.0, b.1)).cloned().unwrap_or_default();
        if s1 * s2 > 0 {
            x
        } else {
            -x
        }
    }
}

/// `beta(T)(u,v,w,z) = T(u,v,w,z) + T(v,w,u,z) + T(w,u,v,z)`.
pub fn bianchi(t: &dyn PairingTable) -> FourForm {
    let d = t.dim();
    let mut out = FourForm::zero(d);
    for u in 0..d {
        for v in (u + 1)..d {
            for w in (v + 1)..d {
                for z in (w + 1)..d {
                    let x = t.value(u, v, w, z) + t.value(v, w, u, z) + t.value(w, u, v, z);
                    out.add_at([u, v, w, z], &x);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron(a: usize, b: usize) -> i64 {
        (a == b) as i64
    }

    #[test]
    fn curvature_of_the_sphere_is_in_the_kernel() {
        let r1 = DensePairing::from_fn(5, |v, w, x, y| {
            Scalar::from_int(kron(v, x) * kron(w, y) - kron(v, y) * kron(w, x))
        });
        assert!(r1.is_symmetric());
        assert!(bianchi(&r1).is_zero());
    }

    #[test]
    fn tensor_product_pairing() {
        // m = R^2 (x) R^2, z_ij = E_ij as 2x2 matrices, index 2i + j
        let mat = |k: usize| {
            let mut m = [[0i64; 2]; 2];
            m[k / 2][k % 2] = 1;
            m
        };
        let mul_t = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
            // a b^T
            let mut c = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] = (0..2).map(|k| a[i][k] * b[j][k]).sum();
                }
            }
            c
        };
        let sub = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
            let mut c = a;
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] -= b[i][j];
                }
            }
            c
        };
        let t = DensePairing::from_fn(4, |u, v, w, z| {
            let (u, v, w, z) = (mat(u), mat(v), mat(w), mat(z));
            let x = sub(mul_t(u, v), mul_t(v, u));
            let y = sub(mul_t(w, z), mul_t(z, w));
            Scalar::from_int((0..2).map(|i| (0..2).map(|k| x[i][k] * y[k][i]).sum::<i64>()).sum())
        });
        assert!(t.is_symmetric());
        let omega = bianchi(&t);
        // z11, z12, z21, z22 are indices 0, 1, 2, 3
        assert_eq!(omega.eval([0, 1, 2, 3]), Scalar::from_int(2));
    }

    #[test]
    fn alternating_input_is_tripled() {
        let alt = FourForm::zero(5);
        let mut alt = alt;
        alt.add_at([0, 1, 2, 3], &Scalar::from_int(1));
        alt.add_at([0, 2, 3, 4], &Scalar::new(-2, 3));
        let t = DensePairing::from_fn(5, |u, v, w, z| alt.eval([u, v, w, z]));
        assert_eq!(bianchi(&t), alt.scale(&Scalar::from_int(3)));
    }
}
