use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use super::{RootDatum, RootKind, Weight, WeightError};
use crate::clifford::RepType;

/// Formal character: weight multiplicities over a root datum. Coefficients
/// are signed so that virtual characters can appear in intermediate steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub datum: Arc<RootDatum>,
    mult: FxHashMap<Weight, i64>,
}

impl Character {
    pub fn zero(datum: &Arc<RootDatum>) -> Self {
        Character { datum: datum.clone(), mult: FxHashMap::default() }
    }

    /// The trivial one-dimensional character.
    pub fn one(datum: &Arc<RootDatum>) -> Self {
        let mut c = Self::zero(datum);
        c.mult.insert(Weight::zero(datum.ambient()), 1);
        c
    }

    pub fn from_weights<I: IntoIterator<Item = Weight>>(datum: &Arc<RootDatum>, weights: I) -> Result<Self, WeightError> {
        let mut c = Self::zero(datum);
        for w in weights {
            if w.len() != datum.ambient() {
                return Err(WeightError::BadLength(w));
            }
            c.add_weight(datum.normalize(&w), 1);
        }
        Ok(c)
    }

    fn add_weight(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        match self.mult.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += m;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(m);
            }
        }
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.mult.get(w).copied().unwrap_or(0)
    }

    /// Sorted `(weight, multiplicity)` pairs.
    pub fn entries(&self) -> Vec<(Weight, i64)> {
        let mut v: Vec<(Weight, i64)> = self.mult.iter().map(|(k, v)| (k.clone(), *v)).collect();
        v.sort();
        v
    }

    pub fn support_size(&self) -> usize {
        self.mult.len()
    }

    pub fn dim(&self) -> i64 {
        self.mult.values().sum()
    }

    pub fn add(&self, o: &Character) -> Character {
        self.axpy(1, o)
    }

    pub fn sub(&self, o: &Character) -> Character {
        self.axpy(-1, o)
    }

    /// `self + c o`.
    pub fn axpy(&self, c: i64, o: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in &o.mult {
            out.add_weight(w.clone(), c * m);
        }
        out
    }

    /// Adams operation: every weight multiplied by `j`.
    pub fn adams(&self, j: i16) -> Character {
        let mut out = Character::zero(&self.datum);
        for (w, m) in &self.mult {
            out.add_weight(self.datum.normalize(&w.scale(j)), *m);
        }
        out
    }

    pub fn dual(&self) -> Character {
        self.adams(-1)
    }

    pub fn tensor(&self, o: &Character) -> Character {
        let (small, big) = if self.mult.len() <= o.mult.len() { (self, o) } else { (o, self) };
        let small: Vec<(&Weight, &i64)> = small.mult.iter().collect();
        let big: Vec<(&Weight, &i64)> = big.mult.iter().collect();
        let chunk = (big.len() / (4 * rayon::current_num_threads().max(1))).max(256);
        let parts: Vec<FxHashMap<Weight, i64>> = big
            .par_chunks(chunk)
            .map(|part| {
                let mut acc: FxHashMap<Weight, i64> = FxHashMap::default();
                for (a, ma) in part {
                    for (b, mb) in &small {
                        *acc.entry(self.datum.normalize(&a.add(b))).or_insert(0) += *ma * *mb;
                    }
                }
                acc
            })
            .collect();
        let mut mult = parts
            .into_iter()
            .reduce(|mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
            .unwrap_or_default();
        mult.retain(|_, v| *v != 0);
        Character { datum: self.datum.clone(), mult }
    }

    fn divide(&self, k: usize) -> Result<Character, WeightError> {
        let mut mult = FxHashMap::default();
        for (w, m) in &self.mult {
            if m % k as i64 != 0 {
                return Err(WeightError::NotDivisible(k));
            }
            mult.insert(w.clone(), m / k as i64);
        }
        Ok(Character { datum: self.datum.clone(), mult })
    }

    /// `Lambda^k` by Newton's identities in the Adams operations.
    pub fn ext_power(&self, k: usize) -> Result<Character, WeightError> {
        self.power(k, true)
    }

    /// `Sym^k` by Newton's identities in the Adams operations.
    pub fn sym_power(&self, k: usize) -> Result<Character, WeightError> {
        self.power(k, false)
    }

    fn power(&self, k: usize, alternating: bool) -> Result<Character, WeightError> {
        let mut e = vec![Character::one(&self.datum)];
        let adams: Vec<Character> = (1..=k).map(|j| self.adams(j as i16)).collect();
        for n in 1..=k {
            let mut acc = Character::zero(&self.datum);
            for j in 1..=n {
                let sign = if alternating && j % 2 == 0 { -1 } else { 1 };
                acc = acc.axpy(sign, &adams[j - 1].tensor(&e[n - j]));
            }
            e.push(acc.divide(n)?);
        }
        Ok(e.pop().unwrap())
    }

    /// `Lambda^k` by enumerating `k`-subsets of the weight list (with
    /// repetition by multiplicity). Independent of the Newton recursion.
    pub fn ext_power_by_subsets(&self, k: usize) -> Result<Character, WeightError> {
        let mut list: Vec<Weight> = Vec::new();
        for (w, m) in self.entries() {
            if m < 0 {
                return Err(WeightError::NegativeMultiplicity(w, m));
            }
            list.extend(std::iter::repeat_n(w, m as usize));
        }
        let n = list.len();
        if k == 0 {
            return Ok(Character::one(&self.datum));
        }
        let zero = Weight::zero(self.datum.ambient());
        let parts: Vec<FxHashMap<Weight, i64>> = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut acc: FxHashMap<Weight, i64> = FxHashMap::default();
                let mut idx: Vec<usize> = Vec::with_capacity(k);
                idx.push(first);
                let mut partial = vec![zero.clone(); k + 1];
                partial[1] = list[first].clone();
                // depth-first over increasing index tuples starting at `first`
                fn rec(
                    list: &[Weight],
                    k: usize,
                    idx: &mut Vec<usize>,
                    partial: &mut Vec<Weight>,
                    acc: &mut FxHashMap<Weight, i64>,
                ) {
                    let depth = idx.len();
                    if depth == k {
                        *acc.entry(partial[k].clone()).or_insert(0) += 1;
                        return;
                    }
                    for j in idx[depth - 1] + 1..list.len() {
                        if list.len() - j < k - depth {
                            break;
                        }
                        partial[depth + 1] = partial[depth].add(&list[j]);
                        idx.push(j);
                        rec(list, k, idx, partial, acc);
                        idx.pop();
                    }
                }
                rec(&list, k, &mut idx, &mut partial, &mut acc);
                acc
            })
            .collect();
        let mut out = Character::zero(&self.datum);
        for part in parts {
            for (w, m) in part {
                out.add_weight(self.datum.normalize(&w), m);
            }
        }
        Ok(out)
    }

    /// Fails unless the multiplicity is constant on Weyl orbits.
    pub fn check_weyl_symmetric(&self) -> Result<(), WeightError> {
        let bad = self.mult.par_iter().find_any(|(w, m)| self.mult(&self.datum.fold(w).0) != **m);
        if let Some((w, _)) = bad {
            return Err(WeightError::NotWeylSymmetric(w.clone()));
        }
        let mut covered = 0u64;
        let mut dominant: Vec<&Weight> = self.mult.keys().filter(|w| self.datum.is_dominant(w)).collect();
        dominant.sort();
        for w in dominant {
            covered += orbit_size(&self.datum, w);
            if covered > self.mult.len() as u64 {
                return Err(WeightError::NotWeylSymmetric(w.clone()));
            }
        }
        if covered != self.mult.len() as u64 {
            let w = self.mult.keys().min().cloned().unwrap_or_default();
            return Err(WeightError::NotWeylSymmetric(w));
        }
        Ok(())
    }

    /// Dominant weights with their multiplicities.
    pub fn dominant_part(&self) -> BTreeMap<Weight, i64> {
        self.mult.iter().filter(|(w, _)| self.datum.is_dominant(w)).map(|(w, m)| (w.clone(), *m)).collect()
    }

    /// Multiplicity of the trivial representation,
    /// `sum_w det(w) mult(rho - w rho)`, by a streaming sweep over the
    /// Weyl group.
    pub fn trivial_multiplicity(&self) -> Result<i64, WeightError> {
        self.check_weyl_symmetric()?;
        let d = &self.datum;
        Ok(weyl_sweep(d, |w_rho, det| det as i64 * self.mult(&d.normalize(&d.rho.sub(w_rho)))))
    }

    /// Highest weights with multiplicities, by repeated subtraction of
    /// irreducible characters computed with Freudenthal's formula.
    pub fn decompose(&self) -> Result<Vec<(Weight, i64)>, WeightError> {
        self.check_weyl_symmetric()?;
        let d = &self.datum;
        let mut residual = self.dominant_part();
        let mut out = Vec::new();
        while let Some(lambda) = residual.keys().max_by_key(|w| (d.height(w), (*w).clone())).cloned() {
            let m = residual[&lambda];
            if m < 0 {
                return Err(WeightError::NegativeMultiplicity(lambda, m));
            }
            for (mu, k) in freudenthal(d, &lambda) {
                let e = residual.entry(mu.clone()).or_insert(0);
                *e -= m * k;
                if *e == 0 {
                    residual.remove(&mu);
                }
            }
            out.push((lambda, m));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// `sum m_i^2` over the irreducible constituents.
    pub fn irreducibility_norm(&self) -> Result<i64, WeightError> {
        Ok(self.decompose()?.iter().map(|(_, m)| m * m).sum())
    }
}

/// Sum of `f(w rho, det w)` over the Weyl group, visiting elements as
/// permutations (Heap's algorithm) composed with sign changes, without
/// storing the group. Parallel over sign patterns.
pub fn weyl_sweep<F>(d: &RootDatum, f: F) -> i64
where
    F: Fn(&Weight, i32) -> i64 + Sync,
{
    let rho = d.rho.clone();
    let n = rho.len();
    let masks: Vec<u32> = match d.kind {
        RootKind::A => vec![0],
        RootKind::B | RootKind::C => (0..1u32 << n).collect(),
        RootKind::D => (0..1u32 << n).filter(|m| m.count_ones() % 2 == 0).collect(),
    };
    masks
        .par_iter()
        .map(|&mask| {
            let sign_det = match d.kind {
                RootKind::B | RootKind::C if mask.count_ones() % 2 == 1 => -1,
                _ => 1,
            };
            let base: Vec<i16> =
                rho.0.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x }).collect();
            let mut a = base;
            let mut c = vec![0usize; n];
            let mut parity = 1;
            let mut sum = f(&Weight(a.iter().copied().collect()), sign_det);
            let mut i = 0;
            while i < n {
                if c[i] < i {
                    if i % 2 == 0 {
                        a.swap(0, i);
                    } else {
                        a.swap(c[i], i);
                    }
                    parity = -parity;
                    sum += f(&Weight(a.iter().copied().collect()), sign_det * parity);
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            sum
        })
        .sum()
}

/// Dominant weight multiplicities of the irreducible representation with
/// highest weight `lambda`.
pub fn freudenthal(d: &RootDatum, lambda: &Weight) -> BTreeMap<Weight, i64> {
    // dominant weights below lambda
    let mut seen: FxHashSet<Weight> = FxHashSet::default();
    let mut queue = VecDeque::from([lambda.clone()]);
    seen.insert(lambda.clone());
    while let Some(mu) = queue.pop_front() {
        for a in &d.positive {
            let nu = d.normalize(&mu.sub(a));
            if d.is_dominant(&nu) && seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    let mut order: Vec<Weight> = seen.into_iter().collect();
    order.sort_by_key(|w| std::cmp::Reverse(d.height(w)));
    let lr = lambda.add(&d.rho);
    let lr2 = d.ip(&lr, &lr) as i128;
    let top = d.height(lambda);
    let mut mult: FxHashMap<Weight, i64> = FxHashMap::default();
    mult.insert(lambda.clone(), 1);
    for mu in order.iter().skip(1) {
        let mut num: i128 = 0;
        for a in &d.positive {
            let mut k = 1;
            loop {
                let x = d.normalize(&mu.add(&a.scale(k)));
                if d.height(&x) > top {
                    break;
                }
                let m = mult.get(&d.fold(&x).0).copied().unwrap_or(0);
                num += 2 * d.ip(&x, a) as i128 * m as i128;
                k += 1;
            }
        }
        let mr = mu.add(&d.rho);
        let den = lr2 - d.ip(&mr, &mr) as i128;
        debug_assert!(den > 0 && num % den == 0);
        let m = (num / den) as i64;
        if m != 0 {
            mult.insert(mu.clone(), m);
        }
    }
    mult.into_iter().collect()
}

/// Size of the Weyl orbit of a dominant weight.
pub fn orbit_size(d: &RootDatum, w: &Weight) -> u64 {
    let mut vals: Vec<i16> = w.0.iter().map(|x| if d.kind == RootKind::A { *x } else { x.abs() }).collect();
    vals.sort_unstable();
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    let mut size = fact(vals.len());
    let mut i = 0;
    while i < vals.len() {
        let j = vals[i..].iter().take_while(|&&v| v == vals[i]).count();
        size /= fact(j);
        i += j;
    }
    let nz = vals.iter().filter(|&&v| v != 0).count() as u32;
    match d.kind {
        RootKind::A => size,
        RootKind::B | RootKind::C => size << nz,
        RootKind::D if nz as usize == vals.len() => size << (nz - 1),
        RootKind::D => size << nz,
    }
}

/// Weyl orbit of a weight.
pub fn orbit(d: &RootDatum, w: &Weight) -> Vec<Weight> {
    let (dom, _, _) = d.fold(w);
    let mut abs: Vec<i16> = dom.0.iter().map(|x| if d.kind == RootKind::A { *x } else { x.abs() }).collect();
    abs.sort_unstable();
    let mut out = FxHashSet::default();
    let n = abs.len();
    loop {
        match d.kind {
            RootKind::A => {
                out.insert(d.normalize(&Weight(abs.iter().copied().collect())));
            }
            _ => {
                let nz: Vec<usize> = (0..n).filter(|&i| abs[i] != 0).collect();
                for mask in 0..1u32 << nz.len() {
                    let mut c: Vec<i16> = abs.clone();
                    for (b, &i) in nz.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            c[i] = -c[i];
                        }
                    }
                    out.insert(Weight(c.into_iter().collect()));
                }
            }
        }
        if !next_permutation(&mut abs) {
            break;
        }
    }
    // for D, drop the sign patterns of the wrong parity
    let mut v: Vec<Weight> = out.into_iter().collect();
    if d.kind == RootKind::D {
        let target = d.fold(w).0;
        v.retain(|x| d.fold(x).0 == target);
    }
    v.sort();
    v
}

fn next_permutation(a: &mut [i16]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Full character of the irreducible representation with highest weight `lambda`.
pub fn irreducible(d: &Arc<RootDatum>, lambda: &Weight) -> Character {
    let mut c = Character::zero(d);
    for (mu, m) in freudenthal(d, lambda) {
        for w in orbit(d, &mu) {
            c.add_weight(w, m);
        }
    }
    c
}

/// Character of `m (x) C` for a complex representation `m` whose
/// underlying real representation has the given type: `m` itself for real
/// type, `m + conj(m)` otherwise.
pub fn complexify(ch: &Character, t: RepType) -> Character {
    match t {
        RepType::Real => ch.clone(),
        RepType::Complex | RepType::Quaternionic => ch.add(&ch.dual()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    fn datum(k: RootKind, r: usize) -> Arc<RootDatum> {
        RootDatum::new(k, r)
    }

    fn binom(n: i64, k: i64) -> i64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn exterior_of_standard_su4() {
        let d = datum(RootKind::A, 3);
        let c4 = Character::from_weights(&d, (0..4).map(|i| Weight::unit(4, i))).unwrap();
        let l2 = c4.ext_power(2).unwrap();
        assert_eq!(l2.dim(), 6);
        assert_eq!(l2.decompose().unwrap(), vec![(Weight::integral(&[1, 1, 0, 0]), 1)]);
        assert_eq!(c4.sym_power(3).unwrap().dim(), 20);
        assert_eq!(c4.ext_power(4).unwrap(), Character::one(&d));
    }

    #[test]
    fn dimensions_are_binomial() {
        let d = datum(RootKind::B, 3);
        let spin = irreducible(&d, &Weight::doubled(&[1, 1, 1]));
        assert_eq!(spin.dim(), 8);
        for k in 0..=8 {
            assert_eq!(spin.ext_power(k as usize).unwrap().dim(), binom(8, k));
        }
        assert_eq!(spin.sym_power(2).unwrap().dim(), 36);
        for k in 0..=4 {
            assert_eq!(spin.ext_power_by_subsets(k).unwrap(), spin.ext_power(k).unwrap());
        }
    }

    #[test]
    fn freudenthal_matches_weyl_dimension() {
        for (k, r, hw) in [
            (RootKind::B, 2, vec![2, 2]),
            (RootKind::C, 3, vec![2, 2, 0]),
            (RootKind::D, 4, vec![2, 2, 0, 0]),
            (RootKind::A, 2, vec![4, 2, 0]),
            (RootKind::D, 5, vec![3, 1, 1, 1, 1]),
        ] {
            let d = datum(k, r);
            let w = Weight::doubled(&hw.iter().map(|&x| x as i16).collect::<Vec<_>>());
            assert_eq!(Scalar::from(irreducible(&d, &w).dim()), d.weyl_dimension(&w), "{k:?}{r} {w}");
        }
    }

    #[test]
    fn sym3_of_sp1() {
        // weights 3, 1, -1, -3; Lambda^2 = V_4 + V_0
        let d = datum(RootKind::C, 1);
        let m = irreducible(&d, &Weight::integral(&[3]));
        assert_eq!(m.dim(), 4);
        let l2 = m.ext_power(2).unwrap();
        assert_eq!(l2.decompose().unwrap(), vec![(Weight::zero(1), 1), (Weight::integral(&[4]), 1)]);
        assert_eq!(l2.trivial_multiplicity().unwrap(), 1);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let d = datum(RootKind::A, 1);
        let c = Character::from_weights(&d, [Weight::integral(&[1, 0])]).unwrap();
        assert!(matches!(c.decompose(), Err(WeightError::NotWeylSymmetric(_))));
        assert!(matches!(c.trivial_multiplicity(), Err(WeightError::NotWeylSymmetric(_))));
    }

    #[test]
    fn negative_multiplicity_detected() {
        let d = datum(RootKind::A, 1);
        let adj = irreducible(&d, &Weight::integral(&[1, -1]));
        let bad = Character::one(&d).axpy(-1, &adj).axpy(1, &Character::one(&d));
        assert!(matches!(bad.decompose(), Err(WeightError::NegativeMultiplicity(..))));
    }

    #[test]
    fn orbit_sizes() {
        for (k, r) in [(RootKind::A, 3), (RootKind::B, 3), (RootKind::D, 4), (RootKind::D, 3)] {
            let d = datum(k, r);
            for w in [Weight::integral(&vec![1; d.ambient()]), d.rho.clone(), Weight::unit(d.ambient(), 0)] {
                let w = d.fold(&d.normalize(&w)).0;
                assert_eq!(orbit(&d, &w).len() as u64, orbit_size(&d, &w), "{k:?}{r} {w}");
            }
        }
        let d = datum(RootKind::D, 4);
        assert_eq!(orbit(&d, &Weight::doubled(&[1, 1, 1, 1])).len(), 8);
        assert_eq!(orbit(&d, &Weight::integral(&[1, 0, 0, 0])).len(), 8);
        let b = datum(RootKind::B, 3);
        assert_eq!(orbit(&b, &Weight::integral(&[1, 1, 0])).len(), 12);
    }

    #[test]
    fn sweep_counts_group() {
        for (k, r) in [(RootKind::A, 3), (RootKind::B, 3), (RootKind::D, 4)] {
            let d = datum(k, r);
            assert_eq!(weyl_sweep(&d, |_, _| 1), d.weyl_order() as i64);
            // the alternating sum vanishes
            assert_eq!(weyl_sweep(&d, |_, det| det as i64), 0);
        }
    }
}
