use ellis_core::partial::{enumerate_monoid, Mode};
use ellis_core::semigroup::{
    close_under_composition, enumerate_all_ideals, rank_ideal, rees_quotient, FiniteMonoid,
    DEFAULT_IDEAL_CAP,
};

fn monoids() -> Vec<(String, usize, FiniteMonoid)> {
    let mut out = Vec::new();
    for mode in [Mode::I, Mode::J] {
        for n in 1..=3 {
            let elems = enumerate_monoid(n, mode, 8).unwrap();
            out.push((
                format!("{mode}_{n}"),
                n,
                close_under_composition(&elems, 1000).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn every_rees_quotient_is_a_monoid_with_involution() {
    for (name, _, s) in monoids() {
        for ideal in enumerate_all_ideals(&s, DEFAULT_IDEAL_CAP).unwrap() {
            if ideal.is_empty() {
                continue;
            }
            let r = rees_quotient(&s, &ideal).unwrap();
            let q = &r.quotient;
            assert!(
                q.check_axioms().is_empty(),
                "{name}: {:?}",
                q.check_axioms()
            );
            assert_eq!(q.order(), s.order() - ideal.len() + 1, "{name}");
            assert_eq!(q.zero(), Some(q.order() - 1));
            let star = q
                .star()
                .expect("ideals of inverse monoids are star-invariant");
            for x in 0..q.order() {
                for y in 0..q.order() {
                    assert_eq!(star[q.mul(x, y)], q.mul(star[y], star[x]));
                }
            }
        }
    }
}

#[test]
fn rank_ideals_are_star_invariant() {
    for (name, n, s) in monoids() {
        let star = s.star().unwrap();
        for k in 0..=n {
            let ideal = rank_ideal(&s, k).unwrap();
            assert!(ideal.is_ideal_of(&s));
            for &i in ideal.members() {
                assert!(ideal.contains(star[i]), "{name}: rank {k}");
            }
        }
    }
}

#[test]
fn ideals_are_exactly_the_rank_ideals() {
    for (name, n, s) in monoids() {
        let mut expected = vec![Vec::new()];
        expected.extend((0..=n).map(|k| rank_ideal(&s, k).unwrap().members().to_vec()));
        let got: Vec<Vec<usize>> = enumerate_all_ideals(&s, DEFAULT_IDEAL_CAP)
            .unwrap()
            .iter()
            .map(|i| i.members().to_vec())
            .collect();
        assert_eq!(got, expected, "{name}");
    }
}
