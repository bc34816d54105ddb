use std::collections::{BTreeMap, BTreeSet};

use ellis_core::approx::{
    ellis_witness, permutation_witness, pl_witness, star_star_witness, Entourage, PLAutomorphism,
};
use ellis_core::chain::ExtendedPoint;
use ellis_core::ellis::{check_membership, Observation, Target, Verdict};
use ellis_core::error::Error;
use ellis_core::sample::{observe, Kind, Sampler};
use ellis_core::{BigRational, Rational64, Scalar};
use proptest::prelude::*;

type Q = BigRational;

fn rat() -> impl Strategy<Value = Q> {
    (-200i64..200, 1i64..12).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn monotone_pairs() -> impl Strategy<Value = Vec<(Q, Q)>> {
    (0usize..7).prop_flat_map(|k| {
        (
            proptest::collection::btree_set(rat(), k),
            proptest::collection::btree_set(rat(), k),
        )
            .prop_filter("equal sizes", |(a, b)| a.len() == b.len())
            .prop_map(|(xs, ys)| xs.into_iter().zip(ys).collect())
    })
}

fn pl() -> impl Strategy<Value = PLAutomorphism<Q>> {
    monotone_pairs().prop_map(|p| pl_witness(&p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn pl_witness_interpolates_exactly(pairs in monotone_pairs()) {
        let g = pl_witness(&pairs).unwrap();
        for (x, y) in &pairs {
            prop_assert_eq!(&g.eval(x), y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn pl_group_laws(g in pl(), h in pl(), k in pl(), x in rat()) {
        prop_assert!(g.after(&g.inverse()).is_identity());
        prop_assert_eq!(g.after(&g.inverse()).eval(&x), x.clone());
        prop_assert_eq!(g.after(&h).after(&k), g.after(&h.after(&k)));
        prop_assert_eq!(g.after(&h).eval(&x), g.eval(&h.eval(&x)));
        prop_assert_eq!(g.preimage(&g.eval(&x)), x);
    }

    #[test]
    fn reversed_pairs_are_rejected(a in rat(), b in rat()) {
        prop_assume!(a < b);
        let r = pl_witness(&[(a.clone(), b.clone()), (b, a)]);
        prop_assert!(matches!(r, Err(Error::NotMonotonePairs(_))));
    }

    #[test]
    fn witnesses_repass_their_observations(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for kind in Kind::ALL {
            let obs: Observation<Q> = s.consistent(kind);
            prop_assert_eq!(check_membership(&obs).unwrap(), Verdict::Consistent);
            let space = kind.space();
            let points: Vec<ExtendedPoint<Q>> = obs.entries.iter().map(|e| e.point.clone()).collect();
            if kind == Kind::AlphaSym {
                let w = permutation_witness(&obs).unwrap();
                for e in &obs.entries {
                    prop_assert!(e.target.contains(space, &w.extend(&e.point).unwrap()));
                }
            } else {
                let g = ellis_witness(&obs).unwrap();
                for e in &obs.entries {
                    prop_assert!(e.target.contains(space, &g.extend(space, &e.point).unwrap()));
                }
                let mut exact = observe(&g, space, &points);
                exact.group = obs.group;
                exact.membership = obs.membership;
                prop_assert_eq!(check_membership(&exact).unwrap(), Verdict::Consistent);
            }
        }
    }

    #[test]
    fn completed_permutations_are_bijections(seed in any::<u64>()) {
        let obs: Observation<Q> = Sampler::new(seed).consistent(Kind::AlphaSym);
        let w = permutation_witness(&obs).unwrap();
        let full: BTreeMap<Q, Q> = w.complete();
        let dom: BTreeSet<&Q> = full.keys().collect();
        let img: BTreeSet<&Q> = full.values().collect();
        prop_assert_eq!(dom, img);
        for e in &obs.entries {
            let v = match &e.point {
                ExtendedPoint::Plain(x) => ExtendedPoint::Plain(full.get(x).cloned().unwrap_or_else(|| x.clone())),
                other => other.clone(),
            };
            prop_assert!(e.target.contains(obs.space, &v));
        }
    }

    #[test]
    fn star_star_agrees_on_sigma_and_stays_close(seed in any::<u64>(), chain in any::<bool>()) {
        let mut s = Sampler::new(seed);
        let g = s.pl::<Q>(4);
        let sigma = s.distinct::<Q>(3);
        let cuts = s.distinct::<Q>(3);
        let h = s.pl_fixing(&cuts).after(&g);
        let e = if chain { Entourage::Chain(cuts) } else { Entourage::Stabilizer(cuts) };
        let g2 = star_star_witness(&g, &h, &sigma, &e).unwrap();
        for x in &sigma {
            prop_assert_eq!(g2.eval(x), g.eval(x));
        }
        for _ in 0..50 {
            let x: Q = s.rational();
            prop_assert!(e.close(&h.eval(&x), &g2.eval(&x), e.guaranteed()));
        }
    }
}

#[test]
fn machine_rationals_work_too() {
    let g = pl_witness(&[
        (Rational64::from_i64(0), Rational64::from_i64(1)),
        (Rational64::from_i64(2), Rational64::from_i64(5)),
    ])
    .unwrap();
    assert_eq!(g.eval(&Rational64::from_i64(1)), Rational64::from_i64(3));
    let obs = Observation::<Rational64>::new(ellis_core::chain::Space::CmX).entry(
        ExtendedPoint::Plain(Rational64::from_i64(0)),
        Target::interval(
            ExtendedPoint::Plain(Rational64::from_i64(3)),
            ExtendedPoint::Sup,
        ),
    );
    let w = ellis_witness(&obs).unwrap();
    assert!(w.eval(&Rational64::from_i64(0)) > Rational64::from_i64(3));
}
