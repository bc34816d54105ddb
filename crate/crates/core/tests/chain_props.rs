use std::cmp::Ordering;

use ellis_core::chain::{
    cell_index, cmp_extended, quotient_along, quotient_point, refines, stabilizer_partition,
    GapCut, Space,
};
use ellis_core::sample::Sampler;
use ellis_core::{BigRational, QPoint};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

type Q = BigRational;

fn rat() -> impl Strategy<Value = Q> {
    (-60i64..60, 1i64..9).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn nonzero() -> impl Strategy<Value = Q> {
    rat().prop_filter("nonzero", |s| !s.is_zero())
}

fn three_points(seed: u64, space: Space) -> Vec<QPoint> {
    let mut s = Sampler::new(seed);
    let mut pts = Vec::new();
    while pts.len() < 3 {
        pts.extend(s.points::<Q>(space));
    }
    use rand::seq::SliceRandom;
    pts.shuffle(s.rng());
    pts.truncate(3);
    pts
}

/// Whether `q < r + s*sqrt(2)`, decided by 256-bit interval bracketing.
fn below_oracle(r: &Q, s: &Q, q: &Q) -> Option<bool> {
    let scale: BigInt = BigInt::one() << 256u32;
    let two: BigUint = BigUint::from(2u32) << 512u32;
    let root = BigInt::from(two.sqrt());
    let (a, b) = (
        s.clone() * Q::new(root.clone(), scale.clone()),
        s.clone() * Q::new(root + 1, scale),
    );
    let (lo, hi) = if s.is_negative() { (b, a) } else { (a, b) };
    let (lo, hi) = (r.clone() + lo, r.clone() + hi);
    if *q < lo {
        Some(true)
    } else if hi < *q {
        Some(false)
    } else {
        None
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn extended_order_is_total(seed in any::<u64>(), which in 0usize..7) {
        let space = Space::ALL[which];
        let p = three_points(seed, space);
        let c = |a: &QPoint, b: &QPoint| cmp_extended(space, a, b).unwrap();
        prop_assert_eq!(c(&p[0], &p[1]), c(&p[1], &p[0]).reverse());
        prop_assert_eq!(c(&p[0], &p[1]) == Ordering::Equal, p[0] == p[1]);
        if c(&p[0], &p[1]) != Ordering::Greater && c(&p[1], &p[2]) != Ordering::Greater {
            prop_assert_ne!(c(&p[0], &p[2]), Ordering::Greater);
        }
    }

    #[test]
    fn gap_comparison_matches_interval_oracle(r in rat(), s in nonzero(), q in rat()) {
        let c = GapCut::new(r.clone(), s.clone()).unwrap();
        let oracle = below_oracle(&r, &s, &q);
        prop_assert!(oracle.is_some());
        prop_assert_eq!(Some(c.below(&q)), oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn both_paths_to_alpha_agree(seed in any::<u64>()) {
        for p in Sampler::new(seed).points::<Q>(Space::BmX) {
            let a = quotient_along(&[Space::BmX, Space::BlrX, Space::BplusX, Space::AlphaX], &p).unwrap();
            let b = quotient_along(&[Space::BmX, Space::BudX, Space::BplusX, Space::AlphaX], &p).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(quotient_point(Space::BmX, Space::AlphaX, &p).unwrap(), a);
        }
    }

    #[test]
    fn quotient_onto_bud_keeps_order(seed in any::<u64>()) {
        let p = three_points(seed, Space::BmX);
        let f = |x: &QPoint| quotient_point(Space::BmX, Space::BudX, x).unwrap();
        // the copies of one level are folded onto each other
        prop_assume!(p[0].level().is_none() || p[0].level() != p[1].level());
        if p[0] <= p[1] {
            prop_assert!(f(&p[0]) <= f(&p[1]));
        } else {
            prop_assert!(f(&p[1]) <= f(&p[0]));
        }
    }

    #[test]
    fn stabilizer_cells_partition_and_refine(
        sigma in proptest::collection::btree_set(rat(), 1..6),
        keep in proptest::collection::vec(any::<bool>(), 6),
        probes in proptest::collection::vec(rat(), 20),
    ) {
        let sigma: Vec<Q> = sigma.into_iter().collect();
        let cells = stabilizer_partition(&sigma).unwrap();
        for x in probes.iter().chain(&sigma) {
            prop_assert_eq!(cells.iter().filter(|c| c.contains(x)).count(), 1);
        }
        let sub: Vec<Q> = sigma.iter().zip(&keep).filter(|(_, k)| **k).map(|(x, _)| x.clone()).collect();
        if !sub.is_empty() {
            let coarse = stabilizer_partition(&sub).unwrap();
            prop_assert!(refines(&cells, &coarse));
            for x in &probes {
                for y in &probes {
                    if cell_index(&cells, x) == cell_index(&cells, y) {
                        prop_assert_eq!(cell_index(&coarse, x), cell_index(&coarse, y));
                    }
                }
            }
            if sub.len() < sigma.len() {
                prop_assert!(!refines(&coarse, &cells));
            }
        }
    }
}

#[test]
fn folding_reverses_order_within_a_level() {
    use ellis_core::chain::{ExtendedPoint, Tag};
    let x = Q::from_integer(2.into());
    let mid = ExtendedPoint::Tagged(x.clone(), Tag::Zero);
    let up = ExtendedPoint::Tagged(x, Tag::Plus);
    assert!(mid < up);
    let f = |p: &QPoint| quotient_point(Space::BmX, Space::BudX, p).unwrap();
    assert!(f(&mid) > f(&up));
}
