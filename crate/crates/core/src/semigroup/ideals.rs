use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::monoid::FiniteMonoid;
use crate::error::{Error, Result};

pub const DEFAULT_IDEAL_CAP: usize = 2_000;
const MAX_IDEALS: usize = 1 << 16;

/// A set of element indices of a [`FiniteMonoid`], sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct IdealSet {
    members: Vec<usize>,
}

impl IdealSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        IdealSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Two-sided absorption in `s`.
    pub fn is_ideal_of<K: Ord + Clone + fmt::Debug>(&self, s: &FiniteMonoid<K>) -> bool {
        let mask = self.mask(s.order());
        if self.members.iter().any(|&i| i >= s.order()) {
            return false;
        }
        self.members
            .iter()
            .all(|&i| (0..s.order()).all(|x| mask[s.mul(x, i)] && mask[s.mul(i, x)]))
    }

    pub(crate) fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &i in &self.members {
            if i < n {
                m[i] = true;
            }
        }
        m
    }
}

/// Elements of rank at most `n` in a monoid of partial bijections.
pub fn rank_ideal<K: Ord + Clone + fmt::Debug>(s: &FiniteMonoid<K>, n: usize) -> Result<IdealSet> {
    let elements = s.elements().ok_or(Error::NotPartialMapMonoid)?;
    Ok(IdealSet::new(
        elements
            .iter()
            .enumerate()
            .filter(|(_, f)| f.rank() <= n)
            .map(|(i, _)| i),
    ))
}

type Bits = Vec<u64>;

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bit_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

/// The principal ideal `S x S`.
fn principal<K: Ord + Clone + fmt::Debug>(s: &FiniteMonoid<K>, x: usize) -> Bits {
    let n = s.order();
    let words = n.div_ceil(64);
    let mut left = vec![0u64; words];
    for a in 0..n {
        bit_set(&mut left, s.mul(a, x));
    }
    let mut out = vec![0u64; words];
    for l in (0..n).filter(|&l| bit_get(&left, l)) {
        for b in 0..n {
            bit_set(&mut out, s.mul(l, b));
        }
    }
    out
}

/// Every two-sided ideal of `s`, the empty set and `s` included, sorted by
/// size and then by members.
pub fn enumerate_all_ideals<K: Ord + Clone + fmt::Debug>(
    s: &FiniteMonoid<K>,
    cap: usize,
) -> Result<Vec<IdealSet>> {
    let n = s.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "monoid order",
            size: n,
            cap,
        });
    }
    let words = n.div_ceil(64);
    let mut principals: Vec<Bits> = (0..n).map(|x| principal(s, x)).collect();
    principals.sort();
    principals.dedup();
    let empty: Bits = vec![0; words];
    let mut seen: HashSet<Bits> = HashSet::new();
    seen.insert(empty.clone());
    let mut stack = vec![empty];
    while let Some(cur) = stack.pop() {
        for p in &principals {
            if p.iter().zip(&cur).all(|(a, b)| a & !b == 0) {
                continue;
            }
            let next: Bits = cur.iter().zip(p).map(|(a, b)| a | b).collect();
            if seen.insert(next.clone()) {
                if seen.len() > MAX_IDEALS {
                    return Err(Error::CapExceeded {
                        what: "ideal count",
                        size: seen.len(),
                        cap: MAX_IDEALS,
                    });
                }
                stack.push(next);
            }
        }
    }
    let mut out: Vec<IdealSet> = seen
        .into_iter()
        .map(|b| IdealSet::new((0..n).filter(|&i| bit_get(&b, i))))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::{enumerate_monoid, Mode};
    use crate::semigroup::close_under_composition;

    fn full(n: usize, mode: Mode) -> FiniteMonoid {
        close_under_composition(&enumerate_monoid(n, mode, 6).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn rank_ideal_sizes() {
        let i3 = full(3, Mode::I);
        assert_eq!(rank_ideal(&i3, 1).unwrap().len(), 10);
        assert_eq!(rank_ideal(&i3, 0).unwrap().len(), 1);
        let j3 = full(3, Mode::J);
        assert_eq!(rank_ideal(&j3, 1).unwrap().len(), 10);
        for k in 0..=3 {
            assert!(rank_ideal(&i3, k).unwrap().is_ideal_of(&i3));
        }
    }

    #[test]
    fn rank_ideal_needs_partial_maps() {
        let m = FiniteMonoid::<u32>::from_table(vec![vec![0]], vec!["1".into()], None).unwrap();
        assert_eq!(rank_ideal(&m, 0), Err(Error::NotPartialMapMonoid));
    }

    #[test]
    fn ideals_of_i2() {
        let i2 = full(2, Mode::I);
        let got = enumerate_all_ideals(&i2, DEFAULT_IDEAL_CAP).unwrap();
        let want: Vec<IdealSet> = std::iter::once(IdealSet::new([]))
            .chain((0..=2).map(|k| rank_ideal(&i2, k).unwrap()))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn ideals_of_trivial() {
        let m = FiniteMonoid::<u32>::from_table(vec![vec![0]], vec!["1".into()], None).unwrap();
        let got = enumerate_all_ideals(&m, 10).unwrap();
        assert_eq!(got, vec![IdealSet::new([]), IdealSet::new([0])]);
    }

    #[test]
    fn ideal_cap() {
        let i3 = full(3, Mode::I);
        assert!(matches!(
            enumerate_all_ideals(&i3, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
