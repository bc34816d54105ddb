use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::pl::{pl_witness, PLAutomorphism};
use crate::chain::{rational_between, ExtendedPoint, Level, Space};
use crate::ellis::bounds::{bounds, gap_slice, slice, LineInterval};
use crate::ellis::{check_membership, GroupKind, Observation, Target, Verdict};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

type P<S> = ExtendedPoint<S>;

/// A permutation of the rationals moving finitely many points, given by the
/// prescribed pairs; [`FinitePermutationWitness::complete`] closes it up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinitePermutationWitness<S> {
    pairs: BTreeMap<S, S>,
}

impl<S: Scalar> FinitePermutationWitness<S> {
    pub fn pairs(&self) -> &BTreeMap<S, S> {
        &self.pairs
    }

    /// A bijection of `domain + range` extending the pairs: the points of
    /// the range outside the domain go, in order, to the points of the
    /// domain outside the range.
    pub fn complete(&self) -> BTreeMap<S, S> {
        let domain: BTreeSet<&S> = self.pairs.keys().collect();
        let range: BTreeSet<&S> = self.pairs.values().collect();
        let mut out = self.pairs.clone();
        let sources = range.difference(&domain);
        let sinks = domain.difference(&range);
        for (a, b) in sources.zip(sinks) {
            out.insert((*a).clone(), (*b).clone());
        }
        out
    }

    /// The completed permutation at `x` (fixed if not moved).
    pub fn eval(&self, x: &S) -> S {
        self.complete().get(x).cloned().unwrap_or_else(|| x.clone())
    }

    pub fn extend(&self, p: &P<S>) -> Result<P<S>> {
        Space::AlphaX.check(p)?;
        Ok(match p {
            P::Plain(x) => P::Plain(self.eval(x)),
            other => other.clone(),
        })
    }
}

impl<S: Scalar> Serialize for FinitePermutationWitness<S> {
    fn serialize<Z: serde::Serializer>(&self, z: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let v: Vec<[String; 2]> = self
            .complete()
            .iter()
            .map(|(x, y)| [x.to_text(), y.to_text()])
            .collect();
        v.serialize(z)
    }
}

fn refuted<S: Scalar>(obs: &Observation<S>) -> Result<()> {
    match check_membership(obs)? {
        Verdict::Consistent => Ok(()),
        Verdict::Refuted(c) => Err(Error::Inconsistent(c.label().into())),
    }
}

fn unwitnessable<S: Scalar>(p: &P<S>, t: &Target<S>) -> Error {
    Error::UnwitnessableTarget(format!("{p} {t}"))
}

/// A finitary permutation realizing an `AlphaX` observation for the full
/// symmetric group.
pub fn permutation_witness<S: Scalar>(obs: &Observation<S>) -> Result<FinitePermutationWitness<S>> {
    if obs.space != Space::AlphaX {
        return Err(Error::SpaceMismatch);
    }
    let mut sym = obs.clone();
    sym.group = Some(GroupKind::Sym);
    refuted(&sym)?;
    let mut pairs = BTreeMap::new();
    let mut open = Vec::new();
    let norm = sym.normalized();
    for e in &norm.entries {
        match (&e.point, &e.target) {
            (P::Infinity, _) => {}
            (P::Plain(x), Target::Exactly { value: P::Plain(y) }) => {
                pairs.insert(x.clone(), y.clone());
            }
            (P::Plain(x), Target::Cofinite { excluded }) => open.push((x.clone(), excluded)),
            (p, t) => return Err(unwitnessable(p, t)),
        }
    }
    let mut used: BTreeSet<S> = pairs.values().cloned().collect();
    for (x, excluded) in open {
        let y = (1..)
            .map(S::from_i64)
            .find(|y| !used.contains(y) && !excluded.contains(y))
            .expect("finitely many exclusions");
        used.insert(y.clone());
        pairs.insert(x, y);
    }
    let w = FinitePermutationWitness { pairs };
    verify(obs, |p| w.extend(p))?;
    Ok(w)
}

fn verify<S: Scalar>(obs: &Observation<S>, f: impl Fn(&P<S>) -> Result<P<S>>) -> Result<()> {
    for e in &obs.entries {
        let v = f(&e.point)?;
        if !e.target.contains(obs.space, &v) {
            return Err(Error::Inconsistent(format!(
                "witness sends {} to {v}, outside {}",
                e.point, e.target
            )));
        }
    }
    Ok(())
}

/// Constraints on the image of one rational.
#[derive(Clone, Debug)]
struct Slot<S> {
    allowed: LineInterval<S>,
    excluded: Vec<S>,
}

impl<S: Scalar> Slot<S> {
    fn new() -> Self {
        Slot {
            allowed: LineInterval::all(),
            excluded: Vec::new(),
        }
    }
}

/// A group element realizing a consistent observation on `BmX`, `CmX`, `CX`
/// or `AlphaX` (order automorphisms).
///
/// The values at observed rationals, and at rational brackets around
/// observed gaps, are chosen left to right, each strictly below every later
/// upper bound; the result is rechecked against every entry.
pub fn ellis_witness<S: Scalar>(obs: &Observation<S>) -> Result<PLAutomorphism<S>> {
    let mut obs = obs.clone();
    match obs.space {
        Space::BmX | Space::CmX | Space::CX => {}
        Space::AlphaX => obs.group = Some(GroupKind::Aut),
        other => {
            return Err(Error::IllegalObservation(format!(
                "no witness search over {other}"
            )))
        }
    }
    refuted(&obs)?;
    let space = obs.space;
    let norm = obs.normalized();
    let mut slots: BTreeMap<S, Slot<S>> = BTreeMap::new();
    let mut gaps: Vec<(Level<S>, LineInterval<S>)> = Vec::new();
    for e in &norm.entries {
        let (p, t) = (&e.point, &e.target);
        match p {
            P::Inf | P::Sup | P::Infinity => {
                if !t.contains(space, p) {
                    return Err(unwitnessable(p, t));
                }
            }
            P::Tagged(x, _) | P::Plain(x) => {
                let tag = match p {
                    P::Tagged(_, tag) => Some(*tag),
                    _ => None,
                };
                let slot = slots.entry(x.clone()).or_insert_with(Slot::new);
                match t {
                    Target::Exactly { value } => match (value, tag) {
                        (P::Tagged(y, t2), Some(t1)) if *t2 == t1 => {
                            slot.allowed =
                                slot.allowed.intersect(&LineInterval::exactly(y.clone()));
                        }
                        (P::Plain(y), None) => {
                            slot.allowed =
                                slot.allowed.intersect(&LineInterval::exactly(y.clone()));
                        }
                        _ => return Err(unwitnessable(p, t)),
                    },
                    Target::Interval { .. } => {
                        let (lo, hi) = bounds(space, t).expect("interval bounds");
                        match slice(&lo, &hi, tag) {
                            Some(s) => slot.allowed = slot.allowed.intersect(&s),
                            None => return Err(unwitnessable(p, t)),
                        }
                    }
                    Target::Cofinite { excluded } => slot.excluded.extend(excluded.iter().cloned()),
                }
            }
            P::Gap(c) => match t {
                Target::Interval { .. } => {
                    let (lo, hi) = bounds(space, t).expect("interval bounds");
                    match gap_slice(&lo, &hi) {
                        Some(s) => gaps.push((Level::Quad(c.clone()), s)),
                        None => return Err(unwitnessable(p, t)),
                    }
                }
                _ => return Err(unwitnessable(p, t)),
            },
        }
    }
    add_brackets(&mut slots, &gaps);
    let values = choose(&slots)?;
    let g = pl_witness(&values)?;
    verify(&obs, |p| g.extend(space, p))?;
    Ok(g)
}

/// Replaces each observed gap by two rationals around it, close enough that
/// no other observed level lies between, constrained like the gap.
fn add_brackets<S: Scalar>(slots: &mut BTreeMap<S, Slot<S>>, gaps: &[(Level<S>, LineInterval<S>)]) {
    if gaps.is_empty() {
        return;
    }
    let mut levels: Vec<(Level<S>, Option<&LineInterval<S>>)> = slots
        .keys()
        .map(|x| (Level::Rat(x.clone()), None))
        .chain(gaps.iter().map(|(l, s)| (l.clone(), Some(s))))
        .collect();
    levels.sort_by(|a, b| a.0.cmp(&b.0));
    let mut extra = Vec::new();
    for (i, (level, allowed)) in levels.iter().enumerate() {
        let Some(allowed) = allowed else { continue };
        let below = if i == 0 {
            rational_between(None, Some(level))
        } else {
            // the upper of two rationals between the previous level and this one
            let r1 = rational_between(Some(&levels[i - 1].0), Some(level));
            rational_between(Some(&Level::Rat(r1)), Some(level))
        };
        let above = match levels.get(i + 1) {
            None => rational_between(Some(level), None),
            Some((next, _)) => rational_between(Some(level), Some(next)),
        };
        for x in [below, above] {
            extra.push((
                x,
                Slot {
                    allowed: (*allowed).clone(),
                    excluded: Vec::new(),
                },
            ));
        }
    }
    slots.extend(extra);
}

fn choose<S: Scalar>(slots: &BTreeMap<S, Slot<S>>) -> Result<Vec<(S, S)>> {
    let entries: Vec<(&S, &Slot<S>)> = slots.iter().collect();
    // suffix minima of the upper bounds, as strict bounds for earlier slots
    let mut ceiling: Vec<Option<Level<S>>> = vec![None; entries.len() + 1];
    for k in (0..entries.len()).rev() {
        let own = entries[k].1.allowed.hi.as_ref().map(|(h, _)| h.clone());
        ceiling[k] = match (own, ceiling[k + 1].clone()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    let mut out = Vec::with_capacity(entries.len());
    let mut prev: Option<S> = None;
    for (k, (x, slot)) in entries.iter().enumerate() {
        let mut range = slot.allowed.clone();
        if let Some(p) = &prev {
            range.raise(Level::Rat(p.clone()), false);
        }
        if let Some(c) = &ceiling[k + 1] {
            range.lower(c.clone(), false);
        }
        let mut v = range.pick();
        while let Some(y) = v.as_ref().filter(|y| slot.excluded.contains(y)) {
            range.lower(Level::Rat(y.clone()), false);
            v = range.pick();
        }
        let v = v.ok_or_else(|| {
            Error::UnwitnessableTarget(format!(
                "no increasing choice for the image of {}",
                x.to_text()
            ))
        })?;
        prev = Some(v.clone());
        out.push(((*x).clone(), v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{GapCut, Tag};
    use crate::scalar::{q, BigRational};

    type Q = BigRational;

    fn plain(n: i64) -> P<Q> {
        P::Plain(q(n, 1))
    }

    #[test]
    fn permutation_examples() {
        let obs = Observation::new(Space::AlphaX)
            .with_group(GroupKind::Sym)
            .exactly(plain(1), plain(2))
            .exactly(plain(2), plain(1));
        let w = permutation_witness(&obs).unwrap();
        assert_eq!(w.eval(&q(1, 1)), q(2, 1));
        assert_eq!(w.eval(&q(5, 1)), q(5, 1));
        let cof = Observation::new(Space::AlphaX)
            .exactly(plain(1), plain(3))
            .entry(plain(2), Target::cofinite(vec![q(1, 1)]));
        let w = permutation_witness(&cof).unwrap();
        assert_eq!(w.eval(&q(2, 1)), q(2, 1));
        let complete = w.complete();
        let vals: BTreeSet<_> = complete.values().collect();
        assert_eq!(vals.len(), complete.len());
        let bad = Observation::new(Space::AlphaX)
            .exactly(plain(1), plain(3))
            .exactly(plain(2), plain(3));
        assert_eq!(
            permutation_witness(&bad),
            Err(Error::Inconsistent("collision".into()))
        );
        let to_inf = Observation::new(Space::AlphaX).exactly(plain(1), P::Infinity);
        assert!(matches!(
            permutation_witness(&to_inf),
            Err(Error::UnwitnessableTarget(_))
        ));
    }

    #[test]
    fn bm_witness_with_gap() {
        let c = GapCut::<Q>::new(q(0, 1), q(1, 1)).unwrap(); // sqrt 2
        let obs = Observation::new(Space::BmX)
            .exactly(P::Inf, P::Inf)
            .exactly(
                P::Tagged(q(1, 1), Tag::Zero),
                P::Tagged(q(10, 1), Tag::Zero),
            )
            .exactly(
                P::Tagged(q(1, 1), Tag::Plus),
                P::Tagged(q(10, 1), Tag::Plus),
            )
            .entry(
                P::Gap(c),
                Target::interval(
                    P::Tagged(q(10, 1), Tag::Zero),
                    P::Tagged(q(11, 1), Tag::Zero),
                ),
            )
            .exactly(
                P::Tagged(q(2, 1), Tag::Minus),
                P::Tagged(q(11, 1), Tag::Minus),
            );
        let g = ellis_witness(&obs).unwrap();
        assert_eq!(g.eval(&q(1, 1)), q(10, 1));
        assert_eq!(g.eval(&q(2, 1)), q(11, 1));
    }

    #[test]
    fn cm_collision_is_unwitnessable() {
        let obs = Observation::new(Space::CmX)
            .exactly(plain(1), plain(0))
            .exactly(plain(2), plain(0));
        assert!(matches!(
            ellis_witness(&obs),
            Err(Error::UnwitnessableTarget(_))
        ));
        let relaxed = obs.relax_exact(&q(1, 10));
        let g = ellis_witness(&relaxed).unwrap();
        assert!(g.eval(&q(1, 1)) < g.eval(&q(2, 1)));
    }

    #[test]
    fn refuted_observation_has_no_witness() {
        let obs = Observation::new(Space::CmX)
            .exactly(plain(1), plain(3))
            .exactly(plain(2), plain(0));
        assert_eq!(
            ellis_witness(&obs),
            Err(Error::Inconsistent("monotone".into()))
        );
    }

    #[test]
    fn alpha_cofinite_aut() {
        let obs = Observation::new(Space::AlphaX)
            .entry(plain(1), Target::cofinite(vec![q(0, 1), q(1, 1)]))
            .exactly(plain(2), plain(1))
            .exactly(P::Infinity, P::Infinity);
        let g = ellis_witness(&obs).unwrap();
        let v = g.eval(&q(1, 1));
        assert!(v < q(1, 1) && v != q(0, 1));
    }

    #[test]
    fn cx_open_ended() {
        let obs = Observation::new(Space::CX)
            .entry(plain(0), Target::interval(plain(100), P::Infinity))
            .exactly(plain(1), plain(5));
        assert_eq!(
            ellis_witness(&obs),
            Err(Error::Inconsistent("monotone".into()))
        );
        let ok = Observation::new(Space::CX)
            .exactly(plain(0), plain(5))
            .entry(plain(1), Target::interval(plain(100), P::Infinity));
        let g = ellis_witness(&ok).unwrap();
        assert!(g.eval(&q(1, 1)) > q(100, 1));
    }
}
