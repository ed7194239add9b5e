//! Univariate polynomials over the rationals, used to find the (rational)
//! eigenvalues of semisimple operators from their minimal polynomials.

use super::scalar::{common_denominator, Scalar};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn one() -> Self {
        Poly(vec![Scalar::one()])
    }

    /// `x - r`
    pub fn linear(r: &Scalar) -> Self {
        Poly(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip().unwrap();
        Poly(self.0.iter().map(|c| c * &l).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(vec![]);
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly(vec![]), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        let linv = d.lead().recip().unwrap();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &linv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let t = &c * dc;
                r[k + j] -= t;
            }
            q[k] = c;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(vec![]);
        }
        let g = self.gcd(other);
        self.mul(other).divrem(&g).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from(i))
                .collect(),
        )
    }

    /// Squarefree part.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        seq
    }

    /// Rational roots of a polynomial assumed to split over the rationals.
    /// Returns `None` when some real root is not rational.
    pub fn rational_roots(&self) -> Option<Vec<Scalar>> {
        if self.is_zero() {
            return None;
        }
        let p = self.squarefree();
        let deg = p.degree().unwrap();
        if deg == 0 {
            return Some(vec![]);
        }
        let sturm = p.sturm_sequence();
        let changes = |x: &Scalar| -> usize {
            let signs: Vec<i32> = sturm.iter().map(|s| s.eval(x).signum()).filter(|s| *s != 0).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        // roots in (a, b]
        let count = |a: &Scalar, b: &Scalar| changes(a) - changes(b);
        let lead = p.lead();
        let bound = Scalar::one()
            + p.0.iter().map(|c| (c / &lead).abs()).max().unwrap_or_default();
        let lo = -&bound;
        let total = count(&lo, &bound);
        if total != deg {
            // some roots are complex
            return None;
        }
        // p is monic, so rational roots have denominators dividing l
        let l = &lead * &Scalar::from(common_denominator(p.0.iter()));
        let eps = (&l * &l).recip().unwrap();
        let mut roots = Vec::new();
        let mut stack = vec![(lo, bound)];
        while let Some((a, b)) = stack.pop() {
            let n = count(&a, &b);
            if n == 0 {
                continue;
            }
            if n > 1 {
                let mid = (&a + &b) * Scalar::half();
                stack.push((a, mid.clone()));
                stack.push((mid, b));
                continue;
            }
            roots.push(isolate_rational(&p, &count, &eps, a, b)?);
        }
        roots.sort();
        Some(roots)
    }
}

fn isolate_rational(
    p: &Poly,
    count: &dyn Fn(&Scalar, &Scalar) -> usize,
    eps: &Scalar,
    mut a: Scalar,
    mut b: Scalar,
) -> Option<Scalar> {
    // Two rationals whose denominators divide L differ by at least 1/L^2,
    // so once the interval is that narrow the simplest point is the only
    // candidate.
    while &(&b - &a) >= eps {
        if p.eval(&b).is_zero() {
            return Some(b);
        }
        let mid = (&a + &b) * Scalar::half();
        if count(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    if p.eval(&b).is_zero() {
        return Some(b);
    }
    let s = simplest_between(&a, &b);
    p.eval(&s).is_zero().then_some(s)
}

/// The rational with smallest denominator (then smallest magnitude) strictly
/// between `a < b`.
pub fn simplest_between(a: &Scalar, b: &Scalar) -> Scalar {
    assert!(a < b);
    if b.is_negative() || b.is_zero() {
        return -simplest_between(&-b, &-a);
    }
    if a.is_negative() {
        return Scalar::zero();
    }
    let n = Scalar::from(a.floor());
    let n1 = &n + &Scalar::one();
    if &n1 < b {
        return n1;
    }
    if *a == n {
        let c = b - &n;
        let m = Scalar::from(c.recip().unwrap().floor()) + Scalar::one();
        return n + m.recip().unwrap();
    }
    let lo = (b - &n).recip().unwrap();
    let hi = (a - &n).recip().unwrap();
    n + simplest_between(&lo, &hi).recip().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&q(1, 3), &q(1, 2)), q(2, 5));
        assert_eq!(simplest_between(&q(-1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(simplest_between(&q(3, 1), &q(7, 2)), q(10, 3));
        assert_eq!(simplest_between(&q(-7, 2), &q(-3, 1)), q(-10, 3));
    }

    #[test]
    fn roots_of_split_polynomial() {
        let p = Poly::linear(&q(-1, 4))
            .mul(&Poly::linear(&q(3, 2)))
            .mul(&Poly::linear(&q(0, 1)))
            .mul(&Poly::linear(&q(3, 2)))
            .mul(&Poly::linear(&q(-5, 1)));
        assert_eq!(p.rational_roots().unwrap(), vec![q(-5, 1), q(-1, 4), q(0, 1), q(3, 2)]);
    }

    #[test]
    fn irrational_roots_rejected() {
        // x^2 - 2
        let p = Poly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        assert_eq!(p.rational_roots(), None);
        // x^2 + 1
        let p = Poly::new(vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(p.rational_roots(), None);
    }

    #[test]
    fn gcd_and_lcm() {
        let a = Poly::linear(&q(1, 1)).mul(&Poly::linear(&q(2, 1)));
        let b = Poly::linear(&q(2, 1)).mul(&Poly::linear(&q(3, 1)));
        assert_eq!(a.gcd(&b), Poly::linear(&q(2, 1)));
        assert_eq!(a.lcm(&b).degree(), Some(3));
    }
}
