//! Weights in doubled coordinates, classical root data and Weyl group
//! folding.

mod character;
mod scan;
pub mod tables;

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::exact::Scalar;

pub use character::{complexify, freudenthal, irreducible, orbit, weyl_sweep, Character};
pub use scan::{
    check_system, halfspin_weights, lie_type_scan, q_ratio, solve_extension_norm, Candidate, Metric, ScanCase,
    ScanEntry, ScanResult, Violation, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("chirality needs n divisible by 2, got {0}")]
    BadChirality(usize),
    #[error("q-ratio with a zero second argument")]
    ZeroBeta,
    #[error("character is not Weyl symmetric at {0}")]
    NotWeylSymmetric(Weight),
    #[error("negative multiplicity {1} for highest weight {0}")]
    NegativeMultiplicity(Weight, i64),
    #[error("character coefficients are not divisible by {0}")]
    NotDivisible(usize),
    #[error("weight {0} has the wrong number of coordinates")]
    BadLength(Weight),
    #[error("scan range must start at n >= 5, got {0}")]
    ScanRange(usize),
}

/// Coordinates `2 lambda_i` over an orthonormal basis `e_1..e_N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub SmallVec<[i16; 14]>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(SmallVec::from_elem(0, n))
    }

    /// From doubled coordinates.
    pub fn doubled(c: &[i16]) -> Self {
        Weight(SmallVec::from_slice(c))
    }

    /// From integer coordinates.
    pub fn integral(c: &[i16]) -> Self {
        Weight(c.iter().map(|x| 2 * x).collect())
    }

    /// `e_i` in an `n`-dimensional ambient space.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[i] = 2;
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i16) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Real coordinates.
    pub fn coords(&self) -> Vec<Scalar> {
        self.0.iter().map(|&x| Scalar::new(x as i64, 2)).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum RootKind {
    A,
    B,
    C,
    D,
}

/// A classical root system in its standard realization. Type `A_r` lives in
/// `r + 1` coordinates modulo `(1, ..., 1)`; weights are normalized so that
/// the last coordinate is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub kind: RootKind,
    pub rank: usize,
    pub roots: Vec<Weight>,
    pub positive: Vec<Weight>,
    pub simple: Vec<Weight>,
    pub rho: Weight,
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl RootDatum {
    pub fn new(kind: RootKind, rank: usize) -> Arc<Self> {
        assert!(rank >= 1);
        let n = if kind == RootKind::A { rank + 1 } else { rank };
        let e = |i: usize| Weight::unit(n, i);
        let mut positive = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                positive.push(e(i).sub(&e(j)));
                if kind != RootKind::A {
                    positive.push(e(i).add(&e(j)));
                }
            }
            match kind {
                RootKind::B => positive.push(e(i)),
                RootKind::C => positive.push(e(i).scale(2)),
                _ => {}
            }
        }
        let mut simple: Vec<Weight> = (0..n - 1).map(|i| e(i).sub(&e(i + 1))).collect();
        match kind {
            RootKind::A => {}
            RootKind::B => simple.push(e(n - 1)),
            RootKind::C => simple.push(e(n - 1).scale(2)),
            RootKind::D => {
                if n >= 2 {
                    simple.push(e(n - 2).add(&e(n - 1)));
                }
            }
        }
        let mut d = RootDatum { kind, rank, roots: vec![], positive, simple, rho: Weight::zero(n) };
        d.positive = d.positive.iter().map(|w| d.normalize(w)).collect();
        d.simple = d.simple.iter().map(|w| d.normalize(w)).collect();
        d.roots = d.positive.iter().flat_map(|w| [w.clone(), d.normalize(&w.neg())]).collect();
        d.roots.sort();
        let sum = d.positive.iter().fold(Weight::zero(n), |a, w| a.add(w));
        // half of a sum of doubled coordinates
        let rho = Weight(sum.0.iter().map(|x| x / 2).collect());
        debug_assert!(sum.0.iter().all(|x| x % 2 == 0));
        d.rho = d.normalize(&rho);
        Arc::new(d)
    }

    /// Number of ambient coordinates.
    pub fn ambient(&self) -> usize {
        if self.kind == RootKind::A {
            self.rank + 1
        } else {
            self.rank
        }
    }

    pub fn normalize(&self, w: &Weight) -> Weight {
        if self.kind == RootKind::A {
            let last = *w.0.last().unwrap();
            if last != 0 {
                return Weight(w.0.iter().map(|x| x - last).collect());
            }
        }
        w.clone()
    }

    /// Inner product scaled by a positive constant depending only on the
    /// datum (`4` for `B, C, D`, `4 (r + 1)` for `A_r`).
    pub fn ip(&self, a: &Weight, b: &Weight) -> i64 {
        let dot: i64 = a.0.iter().zip(&b.0).map(|(x, y)| *x as i64 * *y as i64).sum();
        if self.kind == RootKind::A {
            let n = self.ambient() as i64;
            let sa: i64 = a.0.iter().map(|&x| x as i64).sum();
            let sb: i64 = b.0.iter().map(|&x| x as i64).sum();
            n * dot - sa * sb
        } else {
            dot
        }
    }

    /// Exact inner product in the standard normalization.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Scalar {
        let scale = if self.kind == RootKind::A { 4 * self.ambient() as i64 } else { 4 };
        Scalar::new(self.ip(a, b), scale)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        let c = &w.0;
        let r = c.len();
        let decreasing = (0..r.saturating_sub(1)).all(|i| c[i] >= c[i + 1]);
        match self.kind {
            RootKind::A => decreasing,
            RootKind::B | RootKind::C => decreasing && c[r - 1] >= 0,
            RootKind::D => {
                (0..r.saturating_sub(2)).all(|i| c[i] >= c[i + 1]) && (r < 2 || c[r - 2] >= c[r - 1].abs())
            }
        }
    }

    /// `(w v, det w, regular)` where `w v` is the dominant element of the
    /// orbit of `v`; `regular` is false when `v` lies on a wall.
    pub fn fold(&self, v: &Weight) -> (Weight, i32, bool) {
        let mut c: SmallVec<[i16; 14]> = v.0.clone();
        let r = c.len();
        let mut sign = 1;
        let mut negs = 0;
        if self.kind != RootKind::A {
            for x in c.iter_mut() {
                if *x < 0 {
                    *x = -*x;
                    negs += 1;
                }
            }
            if matches!(self.kind, RootKind::B | RootKind::C) && negs % 2 == 1 {
                sign = -sign;
            }
        }
        // insertion sort, decreasing, tracking parity
        for i in 1..r {
            let mut j = i;
            while j > 0 && c[j - 1] < c[j] {
                c.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let strict = (0..r.saturating_sub(1)).all(|i| c[i] > c[i + 1]);
        let regular = match self.kind {
            RootKind::A => strict,
            RootKind::B | RootKind::C => strict && c[r - 1] > 0,
            RootKind::D => {
                if negs % 2 == 1 && c[r - 1] != 0 {
                    c[r - 1] = -c[r - 1];
                }
                strict
            }
        };
        (self.normalize(&Weight(c)), sign, regular)
    }

    /// Strictly positive on positive roots.
    pub fn height(&self, w: &Weight) -> i64 {
        self.ip(w, &self.rho)
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let r = self.rank as u64;
        let fact = |n: u64| (1..=n).product::<u64>();
        match self.kind {
            RootKind::A => fact(r + 1),
            RootKind::B | RootKind::C => fact(r) << r,
            RootKind::D => fact(r) << (r - 1),
        }
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Scalar {
        let lr = lambda.add(&self.rho);
        self.positive
            .iter()
            .map(|a| Scalar::new(self.ip(&lr, a), self.ip(&self.rho, a)))
            .fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (k, r, n) in [(RootKind::A, 2, 6), (RootKind::B, 4, 32), (RootKind::C, 3, 18), (RootKind::D, 8, 112)] {
            let d = RootDatum::new(k, r);
            assert_eq!(d.roots.len(), n);
            assert_eq!(d.simple.len(), r);
            assert!(d.simple.iter().all(|s| d.positive.contains(s)));
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(RootDatum::new(RootKind::B, 2).rho, Weight::doubled(&[3, 1]));
        assert_eq!(RootDatum::new(RootKind::C, 2).rho, Weight::doubled(&[4, 2]));
        assert_eq!(RootDatum::new(RootKind::D, 4).rho, Weight::doubled(&[6, 4, 2, 0]));
        assert_eq!(RootDatum::new(RootKind::A, 2).rho, Weight::doubled(&[4, 2, 0]));
    }

    #[test]
    fn folding() {
        let d = RootDatum::new(RootKind::D, 3);
        let (w, s, reg) = d.fold(&Weight::doubled(&[-1, 3, 1]));
        assert_eq!(w, Weight::doubled(&[3, 1, -1]));
        assert_eq!(s, -1);
        assert!(!reg);
        let (w, s, reg) = d.fold(&Weight::doubled(&[-1, 5, 3]));
        assert_eq!((w, s, reg), (Weight::doubled(&[5, 3, -1]), 1, true));
        let b = RootDatum::new(RootKind::B, 2);
        let (w, s, reg) = b.fold(&Weight::doubled(&[-2, 0]));
        assert_eq!((w, s, reg), (Weight::doubled(&[2, 0]), -1, false));
        let a = RootDatum::new(RootKind::A, 2);
        let (w, _, reg) = a.fold(&Weight::doubled(&[0, 2, 0]));
        assert_eq!(w, Weight::doubled(&[2, 0, 0]));
        assert!(!reg);
    }

    #[test]
    fn weyl_orders_and_dimensions() {
        assert_eq!(RootDatum::new(RootKind::D, 8).weyl_order(), 5_160_960);
        let d = RootDatum::new(RootKind::D, 8);
        assert_eq!(d.weyl_dimension(&Weight::doubled(&[1; 8])), Scalar::from_int(128));
        let b = RootDatum::new(RootKind::B, 4);
        assert_eq!(b.weyl_dimension(&Weight::doubled(&[1; 4])), Scalar::from_int(16));
        let a = RootDatum::new(RootKind::A, 7);
        assert_eq!(a.weyl_dimension(&Weight::integral(&[1, 1, 1, 1, 0, 0, 0, 0])), Scalar::from_int(70));
    }

    #[test]
    fn display() {
        assert_eq!(Weight::doubled(&[1, -2, 0]).to_string(), "(1/2,-1,0)");
    }
}
