use proptest::prelude::*;

use lieforge::exact::Scalar;
use lieforge::weights::{irreducible, q_ratio, Character, Metric, RootDatum, RootKind, Weight};

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn datum() -> impl Strategy<Value = (RootKind, usize)> {
    prop_oneof![
        (1usize..=3).prop_map(|r| (RootKind::A, r)),
        (1usize..=3).prop_map(|r| (RootKind::B, r)),
        (1usize..=3).prop_map(|r| (RootKind::C, r)),
        (3usize..=4).prop_map(|r| (RootKind::D, r)),
    ]
}

/// Small dominant highest weight for the given type.
fn highest(kind: RootKind, rank: usize, seed: &[u8]) -> Weight {
    let coords = match kind {
        RootKind::A => rank + 1,
        _ => rank,
    };
    let mut v: Vec<i16> = (0..coords).map(|i| (seed[i % seed.len()] % 3) as i16).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    if kind == RootKind::A {
        let last = *v.last().unwrap();
        v.iter_mut().for_each(|x| *x -= last);
    }
    Weight::integral(&v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_is_scale_invariant(a in prop::collection::vec(-4i16..=4, 4), b in prop::collection::vec(-4i16..=4, 4), s in 1i16..=5) {
        prop_assume!(b.iter().any(|&x| x != 0));
        let m = Metric::euclidean(4);
        let (wa, wb) = (Weight::integral(&a), Weight::integral(&b));
        let q = q_ratio(&wa, &wb, &m).unwrap();
        prop_assert_eq!(q_ratio(&wa.scale(s), &wb.scale(s), &m).unwrap(), q.clone());
        prop_assert_eq!(q_ratio(&wa.scale(s), &wb, &m).unwrap(), &q * &Scalar::from_int(s as i64));
    }

    #[test]
    fn power_dimensions((kind, rank) in datum(), seed in prop::collection::vec(any::<u8>(), 4), k in 0usize..=3) {
        let d = RootDatum::new(kind, rank);
        let v = irreducible(&d, &highest(kind, rank, &seed));
        let n = v.dim();
        prop_assert_eq!(v.ext_power(k).unwrap().dim(), binomial(n, k as i64));
        prop_assert_eq!(v.sym_power(k).unwrap().dim(), binomial(n + k as i64 - 1, k as i64));
        prop_assert!(v.ext_power(k).unwrap().check_weyl_symmetric().is_ok());
    }

    #[test]
    fn decomposition_resums((kind, rank) in datum(), seed in prop::collection::vec(any::<u8>(), 4), k in 1usize..=2, sym in any::<bool>()) {
        let d = RootDatum::new(kind, rank);
        let v = irreducible(&d, &highest(kind, rank, &seed));
        let ch = if sym { v.sym_power(k).unwrap() } else { v.ext_power(k).unwrap() };
        let dec = ch.decompose().unwrap();
        prop_assert!(dec.iter().all(|(_, m)| *m > 0));
        let resum = dec.iter().fold(Character::zero(&d), |acc, (w, m)| acc.axpy(*m, &irreducible(&d, w)));
        prop_assert_eq!(&resum, &ch);
        let trivial = dec.iter().find(|(w, _)| w.is_zero()).map_or(0, |(_, m)| *m);
        prop_assert_eq!(ch.trivial_multiplicity().unwrap(), trivial);
        let norm: i64 = dec.iter().map(|(_, m)| m * m).sum();
        prop_assert_eq!(ch.irreducibility_norm().unwrap(), norm);
    }
}
