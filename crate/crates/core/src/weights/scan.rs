use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use super::{RootDatum, RootKind, Weight, WeightError};
use crate::clifford::Chirality;
use crate::exact::Scalar;

/// Diagonal metric: the first `base` coordinates are orthonormal, an
/// optional extra coordinate has squared norm `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metric {
    pub base: usize,
    pub x: Option<Scalar>,
    #[serde(skip)]
    frac: (i64, i64),
}

impl Metric {
    pub fn euclidean(base: usize) -> Self {
        Metric { base, x: None, frac: (0, 1) }
    }

    pub fn extended(base: usize, x: Scalar) -> Self {
        let num = x.numer().try_into().expect("extension norm numerator fits in i64");
        let den = x.denom().try_into().expect("extension norm denominator fits in i64");
        Metric { base, x: Some(x), frac: (num, den) }
    }

    pub fn coords(&self) -> usize {
        self.base + self.x.is_some() as usize
    }

    /// Inner product of doubled coordinates times `4 den(x)`.
    fn scaled(&self, a: &Weight, b: &Weight) -> i64 {
        let (num, den) = self.frac;
        let dot: i64 = (0..self.base).map(|i| a.0[i] as i64 * b.0[i] as i64).sum();
        match self.x {
            None => dot,
            Some(_) => den * dot + num * a.0[self.base] as i64 * b.0[self.base] as i64,
        }
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Scalar {
        Scalar::new(self.scaled(a, b), 4 * self.frac.1)
    }
}

/// `2 <alpha, beta> / <beta, beta>`.
pub fn q_ratio(alpha: &Weight, beta: &Weight, metric: &Metric) -> Result<Scalar, WeightError> {
    let bb = metric.scaled(beta, beta);
    if bb == 0 {
        return Err(WeightError::ZeroBeta);
    }
    Ok(Scalar::new(2 * metric.scaled(alpha, beta), bb))
}

fn sign_patterns(r: usize, parity: Option<bool>) -> Vec<Weight> {
    let mut out = Vec::new();
    for mask in 0..1u64 << r {
        let odd = mask.count_ones() % 2 == 1;
        if parity.is_some_and(|even| even == odd) {
            continue;
        }
        out.push(Weight((0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()));
    }
    out
}

/// Weights `1/2 sum eps_i e_i` of the complex spin representation of
/// `spin(n)`. Half-spins keep the sign patterns with product `+1` (plus)
/// or `-1` (minus). With `extended`, the weights of the half-spin and its
/// conjugate gain a coordinate `+-1/2` so that the product of all
/// `floor(n/2) + 1` signs is `+1`.
pub fn halfspin_weights(n: usize, chirality: Chirality, extended: bool) -> Result<Vec<Weight>, WeightError> {
    let r = n / 2;
    if extended {
        if n % 4 != 2 {
            return Err(WeightError::BadChirality(n));
        }
        return Ok(sign_patterns(r + 1, Some(true)));
    }
    match chirality {
        Chirality::Full => Ok(sign_patterns(r, None)),
        _ if n % 2 == 1 || n == 0 => Err(WeightError::BadChirality(n)),
        Chirality::Plus => Ok(sign_patterns(r, Some(true))),
        Chirality::Minus => Ok(sign_patterns(r, Some(false))),
    }
}

/// The pair `alpha = 1/2 sum e_i`, `beta = 1/2 (e_1 + .. + e_{2k} - e_{2k+1} - e_{2k+2})`
/// in `2k + 2` coordinates.
fn extension_pair(k: usize) -> (Weight, Weight) {
    let alpha = Weight::doubled(&vec![1; 2 * k + 2]);
    let mut beta = alpha.clone();
    beta.0[2 * k] = -1;
    beta.0[2 * k + 1] = -1;
    (alpha, beta)
}

/// Norm `x` of the extension coordinate for `n = 4k + 2`, from
/// `<alpha, beta> = 0`.
pub fn solve_extension_norm(n: usize) -> Result<Scalar, WeightError> {
    if n % 4 != 2 {
        return Err(WeightError::BadChirality(n));
    }
    let k = (n - 2) / 4;
    let (alpha, beta) = extension_pair(k);
    let base: i64 = (0..2 * k + 1).map(|i| alpha.0[i] as i64 * beta.0[i] as i64).sum();
    let last = alpha.0[2 * k + 1] as i64 * beta.0[2 * k + 1] as i64;
    Ok(Scalar::new(-base, last))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanCase {
    /// `n = 8k`, real half-spin of `D_4k`.
    HalfSpin { k: usize },
    /// `n = 8k + 1`, real spin of `B_4k`.
    SpinPlusOne { k: usize },
    /// `n = 8k - 1`, real spin of `B_{4k-1}`.
    SpinMinusOne { k: usize },
    /// `n = 4k + 2`, complex type.
    Complex { k: usize },
    /// `n = 3, 4, 5 mod 8`, quaternionic type.
    Quaternionic { rank: usize },
}

impl ScanCase {
    pub fn of(n: usize) -> Self {
        match n % 8 {
            0 => ScanCase::HalfSpin { k: n / 8 },
            1 => ScanCase::SpinPlusOne { k: n / 8 },
            7 => ScanCase::SpinMinusOne { k: (n + 1) / 8 },
            2 | 6 => ScanCase::Complex { k: (n - 2) / 4 },
            _ => ScanCase::Quaternionic { rank: n / 2 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonIntegral { alpha: Weight, beta: Weight, q: Scalar },
    TooLarge { alpha: Weight, beta: Weight, q: Scalar },
    NotClosed { alpha: Weight, beta: Weight },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub x: Scalar,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Ratio { alpha: Weight, beta: Weight, q: Scalar },
    Extension { x: Scalar, alpha: Weight, beta: Weight, q: Scalar },
    Candidates { candidates: Vec<Candidate> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub n: usize,
    pub case: ScanCase,
    pub vectors: usize,
    pub feasible: bool,
    pub witness: Witness,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub feasible: Vec<usize>,
    pub entries: Vec<ScanEntry>,
}

/// First violation of integrality (`|q| <= 3`) or of closure under sums
/// and differences among the nonzero vectors of `set`.
pub fn check_system(set: &[Weight], metric: &Metric) -> Option<Violation> {
    let lookup: FxHashSet<&Weight> = set.iter().collect();
    let norms: Vec<i64> = set.iter().map(|w| metric.scaled(w, w)).collect();
    (0..set.len()).into_par_iter().find_map_first(|i| {
        let a = &set[i];
        for (j, b) in set.iter().enumerate() {
            let ab = metric.scaled(a, b);
            let num = 2 * ab;
            if num % norms[j] != 0 {
                return Some(Violation::NonIntegral { alpha: a.clone(), beta: b.clone(), q: Scalar::new(num, norms[j]) });
            }
            if (num / norms[j]).abs() > 3 {
                return Some(Violation::TooLarge { alpha: a.clone(), beta: b.clone(), q: Scalar::new(num, norms[j]) });
            }
            if ab != 0 && *b != *a && *b != a.neg() && !lookup.contains(&a.add(b)) && !lookup.contains(&a.sub(b)) {
                return Some(Violation::NotClosed { alpha: a.clone(), beta: b.clone() });
            }
        }
        None
    })
}

fn pad(w: &Weight, last: i16) -> Weight {
    let mut v = w.clone();
    v.0.push(last);
    v
}

fn so_roots(n: usize) -> Vec<Weight> {
    let kind = if n % 2 == 0 { RootKind::D } else { RootKind::B };
    RootDatum::new(kind, n / 2).roots.clone()
}

fn scan_one(n: usize) -> ScanEntry {
    let case = ScanCase::of(n);
    let r = n / 2;
    let e = |i: usize, len: usize| Weight::unit(len, i);
    let real = |spins: Vec<Weight>, alpha: Weight, beta: Weight| {
        let metric = Metric::euclidean(r);
        let mut set = so_roots(n);
        set.extend(spins);
        let q = q_ratio(&alpha, &beta, &metric).expect("nonzero spin weight");
        let violation = check_system(&set, &metric);
        ScanEntry {
            n,
            case,
            vectors: set.len(),
            feasible: violation.is_none(),
            witness: Witness::Ratio { alpha, beta, q },
            violation,
        }
    };
    let half_sum = Weight::doubled(&vec![1; r]);
    match case {
        ScanCase::HalfSpin { .. } => {
            let spins = halfspin_weights(n, Chirality::Plus, false).unwrap();
            real(spins, e(0, r).add(&e(1, r)), half_sum)
        }
        ScanCase::SpinPlusOne { .. } => {
            let spins = halfspin_weights(n, Chirality::Full, false).unwrap();
            real(spins, e(0, r), half_sum)
        }
        ScanCase::SpinMinusOne { k } => {
            let spins = halfspin_weights(n, Chirality::Full, false).unwrap();
            let mut alpha = half_sum.clone();
            for c in alpha.0.iter_mut().take(2 * k - 1) {
                *c = -*c;
            }
            real(spins, alpha, half_sum)
        }
        ScanCase::Complex { .. } => {
            let x = solve_extension_norm(n).unwrap();
            let metric = Metric::extended(r, x.clone());
            let mut set: Vec<Weight> = so_roots(n).iter().map(|w| pad(w, 0)).collect();
            set.extend(halfspin_weights(n, Chirality::Plus, true).unwrap());
            let alpha = pad(&e(0, r).add(&e(1, r)), 0);
            let beta = Weight::doubled(&vec![1; r + 1]);
            let q = q_ratio(&alpha, &beta, &metric).expect("nonzero spin weight");
            let violation = check_system(&set, &metric);
            ScanEntry {
                n,
                case,
                vectors: set.len(),
                feasible: violation.is_none(),
                witness: Witness::Extension { x, alpha, beta, q },
                violation,
            }
        }
        ScanCase::Quaternionic { .. } => {
            let chir = if n % 2 == 0 { Chirality::Plus } else { Chirality::Full };
            let spins = halfspin_weights(n, chir, false).unwrap();
            let mut set: Vec<Weight> = so_roots(n).iter().map(|w| pad(w, 0)).collect();
            set.push(pad(&Weight::zero(r), 2));
            set.push(pad(&Weight::zero(r), -2));
            for w in &spins {
                set.push(pad(w, 1));
                set.push(pad(w, -1));
            }
            // q(root, weight) = x / (|w|^2 + x/4) = q  gives  x = 4 q |w|^2 / (4 - q)
            let w2 = Scalar::new(r as i64, 4);
            let candidates: Vec<Candidate> = (1..=3)
                .map(|q: i64| {
                    let x = &(&Scalar::from_int(4 * q) * &w2) * &Scalar::new(1, 4 - q);
                    let violation = check_system(&set, &Metric::extended(r, x.clone()));
                    Candidate { x, violation }
                })
                .collect();
            let feasible = candidates.iter().any(|c| c.violation.is_none());
            ScanEntry {
                n,
                case,
                vectors: set.len(),
                feasible,
                witness: Witness::Candidates { candidates },
                violation: None,
            }
        }
    }
}

/// For each `n` in range, assembles the roots of `so(n)` together with the
/// spin weights (extended by a `u(1)` or `sp(1)` coordinate when the spin
/// representation is of complex or quaternionic type) and tests whether
/// they can form a root system.
pub fn lie_type_scan(n_min: usize, n_max: usize) -> Result<ScanResult, WeightError> {
    if n_min < 5 {
        return Err(WeightError::ScanRange(n_min));
    }
    let entries: Vec<ScanEntry> = (n_min..=n_max).map(scan_one).collect();
    let feasible = entries.iter().filter(|e| e.feasible).map(|e| e.n).collect();
    Ok(ScanResult { feasible, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halfspin_counts() {
        assert_eq!(halfspin_weights(16, Chirality::Plus, false).unwrap().len(), 128);
        assert_eq!(halfspin_weights(8, Chirality::Plus, false).unwrap().len(), 8);
        assert_eq!(halfspin_weights(9, Chirality::Full, false).unwrap().len(), 16);
        assert_eq!(halfspin_weights(10, Chirality::Plus, true).unwrap().len(), 32);
        assert!(matches!(halfspin_weights(9, Chirality::Plus, false), Err(WeightError::BadChirality(9))));
        let m = Metric::euclidean(8);
        for w in halfspin_weights(16, Chirality::Plus, false).unwrap() {
            assert_eq!(m.inner(&w, &w), Scalar::from_int(2));
        }
    }

    #[test]
    fn extension_norms() {
        assert_eq!(solve_extension_norm(6).unwrap(), Scalar::from_int(1));
        assert_eq!(solve_extension_norm(10).unwrap(), Scalar::from_int(3));
        assert_eq!(solve_extension_norm(14).unwrap(), Scalar::from_int(5));
        assert!(solve_extension_norm(8).is_err());
    }

    #[test]
    fn case_witnesses() {
        let s = lie_type_scan(5, 24).unwrap();
        for e in &s.entries {
            match (e.case, &e.witness) {
                (ScanCase::HalfSpin { k }, Witness::Ratio { q, .. }) => assert_eq!(*q, Scalar::new(2, k as i64)),
                (ScanCase::SpinPlusOne { k }, Witness::Ratio { q, .. }) => assert_eq!(*q, Scalar::new(1, k as i64)),
                (ScanCase::SpinMinusOne { k }, Witness::Ratio { q, .. }) => {
                    assert_eq!(*q, Scalar::new(2, 4 * k as i64 - 1))
                }
                (ScanCase::Complex { k }, Witness::Extension { x, q, .. }) => {
                    assert_eq!(*x, Scalar::from_int(2 * k as i64 - 1));
                    assert_eq!(*q, Scalar::new(2, k as i64));
                }
                (ScanCase::Quaternionic { .. }, Witness::Candidates { candidates }) => assert_eq!(candidates.len(), 3),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert_eq!(s.feasible, vec![5, 6, 8, 9, 10, 12, 16]);
    }

    #[test]
    fn small_systems() {
        let e = |n| lie_type_scan(n, n).unwrap().entries.remove(0);
        assert_eq!(e(16).vectors, 240);
        assert_eq!(e(9).vectors, 48);
        assert_eq!(e(10).vectors, 40 + 32);
        assert_eq!(e(6).vectors, 12 + 8);
        assert!(matches!(e(7).witness, Witness::Ratio { ref q, .. } if *q == Scalar::new(2, 3)));
        assert!(lie_type_scan(4, 6).is_err());
    }

    #[test]
    fn q_of_simple_roots() {
        let m = Metric::euclidean(2);
        let long = Weight::integral(&[1, -1]);
        let short = Weight::integral(&[0, 1]);
        assert_eq!(q_ratio(&long, &short, &m).unwrap(), Scalar::from_int(-2));
        assert_eq!(q_ratio(&short, &long, &m).unwrap(), Scalar::from_int(-1));
        assert_eq!(q_ratio(&long, &Weight::zero(2), &m), Err(WeightError::ZeroBeta));
    }
}
