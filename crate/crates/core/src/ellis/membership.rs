//! Decision procedures for finite observations of enveloping-semigroup
//! elements.
//!
//! Monotonicity is checked exactly (two intervals on a line can be matched
//! monotonically iff every pair can). The remaining clauses refute only what
//! the targets force, pair by pair or triple by triple.

use std::collections::{BTreeMap, BTreeSet};

use super::bounds::{bounds, slice, Hi, LineInterval, Lo};
use super::observation::{Clause, GroupKind, Membership, Observation, Target, Verdict};
use crate::chain::{ExtendedPoint, Space};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

type P<S> = ExtendedPoint<S>;

/// Dispatches on the space (and, for `BmX`, the membership kind; for
/// `AlphaX`, the group, `Aut` by default).
pub fn check_membership<S: Scalar>(obs: &Observation<S>) -> Result<Verdict> {
    Ok(first(membership_violations(obs)?))
}

/// Every clause the observation is refuted by, in clause order.
pub fn membership_violations<S: Scalar>(obs: &Observation<S>) -> Result<Vec<Clause>> {
    obs.validate()?;
    let obs = obs.normalized();
    let set = match obs.space {
        Space::BmX => match obs.membership.unwrap_or_default() {
            Membership::Bm => bm(&obs),
            Membership::Br => br(&obs),
        },
        Space::AlphaX => alpha(&obs, obs.group.unwrap_or_default()),
        Space::CmX => cm(&obs),
        Space::CX => cx(&obs),
        other => {
            return Err(Error::IllegalObservation(format!(
                "no membership test over {other}"
            )));
        }
    };
    Ok(set.into_iter().collect())
}

fn first(v: Vec<Clause>) -> Verdict {
    v.into_iter()
        .next()
        .map_or(Verdict::Consistent, Verdict::Refuted)
}

fn expect_space<S: Scalar>(obs: &Observation<S>, space: Space) -> Result<()> {
    if obs.space == space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Membership of the self-map observed by `obs` in the enveloping semigroup
/// of `Aut(X)` acting on `BmX`.
pub fn check_bm_membership<S: Scalar>(obs: &Observation<S>) -> Result<Verdict> {
    expect_space(obs, Space::BmX)?;
    let mut o = obs.clone();
    o.membership = Some(Membership::Bm);
    check_membership(&o)
}

/// Membership of a map `X -> BmX` in the closure of `Aut(X)`.
pub fn check_br_membership<S: Scalar>(obs: &Observation<S>) -> Result<Verdict> {
    expect_space(obs, Space::BmX)?;
    let mut o = obs.clone();
    o.membership = Some(Membership::Br);
    check_membership(&o)
}

pub fn check_alpha_membership<S: Scalar>(
    obs: &Observation<S>,
    group: GroupKind,
) -> Result<Verdict> {
    expect_space(obs, Space::AlphaX)?;
    let mut o = obs.clone();
    o.group = Some(group);
    check_membership(&o)
}

pub fn check_cm_membership<S: Scalar>(obs: &Observation<S>) -> Result<Verdict> {
    expect_space(obs, Space::CmX)?;
    check_membership(obs)
}

pub fn check_cx_membership<S: Scalar>(obs: &Observation<S>) -> Result<Verdict> {
    expect_space(obs, Space::CX)?;
    check_membership(obs)
}

struct Bounded<'a, S> {
    point: &'a P<S>,
    target: &'a Target<S>,
    lo: Lo<S>,
    hi: Hi<S>,
}

fn bounded<S: Scalar>(obs: &Observation<S>) -> Vec<Bounded<'_, S>> {
    obs.entries
        .iter()
        .filter_map(|e| {
            bounds(obs.space, &e.target).map(|(lo, hi)| Bounded {
                point: &e.point,
                target: &e.target,
                lo,
                hi,
            })
        })
        .collect()
}

/// Some pair of observed points (in increasing order) cannot be matched
/// monotonically.
fn monotone_fails<S: Scalar>(items: &[&Bounded<'_, S>]) -> bool {
    // Entries are sorted; the greatest lower bound so far must stay
    // matchable with every later upper bound.
    let mut best: Option<&Lo<S>> = None;
    for b in items {
        if let Some(lo) = best {
            if !Lo::feasible(lo, &b.hi) {
                return true;
            }
        }
        best = Some(match best {
            Some(cur) if !lo_greater(&b.lo, cur) => cur,
            _ => &b.lo,
        });
    }
    false
}

fn lo_greater<S: Scalar>(a: &Lo<S>, b: &Lo<S>) -> bool {
    match a.point().cmp(b.point()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => matches!((a, b), (Lo::Open(_), Lo::Closed(_))),
    }
}

fn hi_less<S: Scalar>(a: &Hi<S>, b: &Hi<S>) -> bool {
    match (a, b) {
        (Hi::Top, _) => false,
        (_, Hi::Top) => true,
        (Hi::Open(x) | Hi::Closed(x), Hi::Open(y) | Hi::Closed(y)) => match x.cmp(y) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => matches!((a, b), (Hi::Open(_), Hi::Closed(_))),
        },
    }
}

/// Points forced onto the same chain point, other than a point itself.
fn collides<S: Scalar>(obs: &Observation<S>) -> bool {
    let mut seen = BTreeSet::new();
    obs.entries
        .iter()
        .filter_map(|e| e.target.exact_value().filter(|v| v.is_chain_point()))
        .any(|v| !seen.insert(v))
}

fn bm<S: Scalar>(obs: &Observation<S>) -> BTreeSet<Clause> {
    let mut out = BTreeSet::new();
    let items = bounded(obs);
    if monotone_fails(&items.iter().collect::<Vec<_>>()) {
        out.insert(Clause::BmI);
    }
    if obs
        .entries
        .iter()
        .any(|e| !e.point.is_chain_point() && e.target.forces_chain_point())
    {
        out.insert(Clause::BmII);
    }
    if collides(obs) {
        out.insert(Clause::BmIII);
    }
    let mut triples: BTreeMap<&S, Vec<&Bounded<'_, S>>> = BTreeMap::new();
    for b in &items {
        if let P::Tagged(x, _) = b.point {
            triples.entry(x).or_default().push(b);
        }
    }
    if triples
        .values()
        .any(|t| t.len() >= 2 && !triple_feasible(t))
    {
        out.insert(Clause::BmIV);
    }
    for (end, e) in obs.entries.iter().map(|e| (&e.point, &e.target)) {
        if matches!(end, P::Inf | P::Sup) && !e.contains(Space::BmX, end) {
            out.insert(Clause::BmV);
        }
    }
    out
}

/// The observed copies of one point can all go to a single added point, or
/// to the matching copies of a single point.
fn triple_feasible<S: Scalar>(t: &[&Bounded<'_, S>]) -> bool {
    let mut lo = t[0].lo.clone();
    let mut hi = t[0].hi.clone();
    for b in &t[1..] {
        if lo_greater(&b.lo, &lo) {
            lo = b.lo.clone();
        }
        if hi_less(&b.hi, &hi) {
            hi = b.hi.clone();
        }
    }
    let common_added = Lo::feasible(&lo, &hi)
        && match (&lo, &hi) {
            (Lo::Closed(a), Hi::Closed(b)) if a == b => !a.is_chain_point(),
            _ => true,
        };
    if common_added {
        return true;
    }
    let mut ys = LineInterval::all();
    for b in t {
        let tag = match b.point {
            P::Tagged(_, tag) => *tag,
            _ => unreachable!("triples hold tagged points"),
        };
        match slice(&b.lo, &b.hi, Some(tag)) {
            Some(s) => ys = ys.intersect(&s),
            None => return false,
        }
    }
    ys.is_nonempty()
}

fn br<S: Scalar>(obs: &Observation<S>) -> BTreeSet<Clause> {
    let mut out = BTreeSet::new();
    let items = bounded(obs);
    if monotone_fails(&items.iter().collect::<Vec<_>>()) {
        out.insert(Clause::BrI);
    }
    if collides(obs) {
        out.insert(Clause::BrII);
    }
    out
}

fn alpha<S: Scalar>(obs: &Observation<S>, group: GroupKind) -> BTreeSet<Clause> {
    let mut out = BTreeSet::new();
    if collides(obs) {
        out.insert(Clause::Collision);
    }
    if obs
        .entries
        .iter()
        .any(|e| e.point == P::Infinity && !e.target.contains(Space::AlphaX, &P::Infinity))
    {
        out.insert(Clause::Infinity);
    }
    if group == GroupKind::Aut {
        let mut last: Option<&P<S>> = None;
        let mut reversed = false;
        for e in &obs.entries {
            if let (P::Plain(_), Some(v @ P::Plain(_))) = (&e.point, e.target.exact_value()) {
                if let Some(prev) = last {
                    reversed |= prev > v;
                }
                last = Some(match last {
                    Some(prev) if prev > v => prev,
                    _ => v,
                });
            }
        }
        if reversed {
            out.insert(Clause::Order);
        }
    }
    out
}

fn cm<S: Scalar>(obs: &Observation<S>) -> BTreeSet<Clause> {
    let mut out = BTreeSet::new();
    let items = bounded(obs);
    if monotone_fails(&items.iter().collect::<Vec<_>>()) {
        out.insert(Clause::Monotone);
    }
    for e in &obs.entries {
        if matches!(e.point, P::Inf | P::Sup) && !e.target.contains(Space::CmX, &e.point) {
            out.insert(Clause::Endpoint);
        }
    }
    out
}

fn cx<S: Scalar>(obs: &Observation<S>) -> BTreeSet<Clause> {
    let mut out = BTreeSet::new();
    let items = bounded(obs);
    let to_infinity = |b: &Bounded<'_, S>| b.target.exact_value() == Some(&P::Infinity);
    let line: Vec<&Bounded<'_, S>> = items
        .iter()
        .filter(|b| *b.point != P::Infinity && !to_infinity(b))
        .collect();
    if monotone_fails(&line) {
        out.insert(Clause::Monotone);
    }
    if obs
        .entries
        .iter()
        .any(|e| e.point == P::Infinity && !e.target.contains(Space::CX, &P::Infinity))
    {
        out.insert(Clause::Infinity);
    }
    if let (Some(first), Some(last)) = (line.first(), line.last()) {
        if items
            .iter()
            .any(|b| to_infinity(b) && b.point > first.point && b.point < last.point)
        {
            out.insert(Clause::Wrap);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Tag;
    use crate::scalar::{q, BigRational};

    type Q = BigRational;

    fn t(n: i64, tag: Tag) -> P<Q> {
        P::Tagged(q(n, 1), tag)
    }

    fn t0(n: i64) -> P<Q> {
        t(n, Tag::Zero)
    }

    fn refuted(obs: &Observation<Q>) -> Option<&'static str> {
        check_membership(obs).unwrap().clause().map(Clause::label)
    }

    #[test]
    fn bm_identity_and_endpoints() {
        let obs = Observation::new(Space::BmX)
            .exactly(P::Inf, P::Inf)
            .exactly(t(1, Tag::Minus), t(1, Tag::Minus))
            .exactly(t0(1), t0(1))
            .exactly(P::Sup, P::Sup);
        assert_eq!(check_bm_membership(&obs).unwrap(), Verdict::Consistent);
        let moved = Observation::new(Space::BmX).exactly(P::Inf, t(0, Tag::Minus));
        assert_eq!(refuted(&moved), Some("(v)"));
    }

    #[test]
    fn bm_reversal() {
        let obs = Observation::new(Space::BmX)
            .exactly(t0(1), t0(3))
            .exactly(t0(2), t0(2));
        assert_eq!(refuted(&obs), Some("(i)"));
    }

    #[test]
    fn bm_added_point_into_chain() {
        let obs = Observation::new(Space::BmX).exactly(t(1, Tag::Plus), t0(5));
        assert_eq!(refuted(&obs), Some("(ii)"));
    }

    #[test]
    fn bm_double_hit() {
        let obs = Observation::new(Space::BmX)
            .exactly(t0(1), t0(5))
            .exactly(t0(2), t0(5));
        assert_eq!(refuted(&obs), Some("(iii)"));
        let added = Observation::new(Space::BmX)
            .exactly(t0(1), t(5, Tag::Plus))
            .exactly(t0(2), t(5, Tag::Plus));
        assert_eq!(refuted(&added), None);
    }

    #[test]
    fn bm_triples() {
        let split = Observation::new(Space::BmX)
            .exactly(t(1, Tag::Minus), t(2, Tag::Minus))
            .exactly(t0(1), t0(3));
        assert_eq!(refuted(&split), Some("(iv)"));
        let collapsed = Observation::new(Space::BmX)
            .exactly(t(1, Tag::Minus), P::Sup)
            .exactly(t0(1), P::Sup);
        assert_eq!(refuted(&collapsed), None);
        let via_interval = Observation::new(Space::BmX)
            .entry(t(1, Tag::Minus), Target::interval(t0(0), t0(10)))
            .exactly(t0(1), t0(3));
        assert_eq!(refuted(&via_interval), None);
    }

    #[test]
    fn br_clauses() {
        let obs = Observation::new(Space::BmX)
            .with_membership(Membership::Br)
            .exactly(t0(1), t0(5))
            .exactly(t0(2), t0(5));
        assert_eq!(
            check_br_membership(&obs).unwrap(),
            Verdict::Refuted(Clause::BrII)
        );
        let ok = Observation::new(Space::BmX)
            .exactly(t0(1), P::Inf)
            .exactly(t0(2), P::Inf);
        assert_eq!(check_br_membership(&ok).unwrap(), Verdict::Consistent);
    }

    #[test]
    fn alpha_clauses() {
        let p = |n| P::<Q>::Plain(q(n, 1));
        let swap = Observation::new(Space::AlphaX)
            .exactly(p(1), p(2))
            .exactly(p(2), p(1));
        assert_eq!(
            check_alpha_membership(&swap, GroupKind::Sym).unwrap(),
            Verdict::Consistent
        );
        assert_eq!(
            check_alpha_membership(&swap, GroupKind::Aut).unwrap(),
            Verdict::Refuted(Clause::Order)
        );
        let hit = Observation::new(Space::AlphaX)
            .exactly(p(1), p(2))
            .exactly(p(3), p(2));
        assert_eq!(
            check_alpha_membership(&hit, GroupKind::Sym).unwrap(),
            Verdict::Refuted(Clause::Collision)
        );
        let inf = Observation::new(Space::AlphaX).exactly(P::Infinity, p(2));
        assert_eq!(
            check_alpha_membership(&inf, GroupKind::Sym).unwrap(),
            Verdict::Refuted(Clause::Infinity)
        );
    }

    #[test]
    fn cm_and_cx() {
        let p = |n| P::<Q>::Plain(q(n, 1));
        let merge = Observation::new(Space::CmX)
            .exactly(p(1), p(0))
            .exactly(p(2), p(0));
        assert_eq!(check_cm_membership(&merge).unwrap(), Verdict::Consistent);
        let rev = Observation::new(Space::CmX)
            .exactly(p(1), p(3))
            .exactly(p(2), p(0));
        assert_eq!(
            check_cm_membership(&rev).unwrap(),
            Verdict::Refuted(Clause::Monotone)
        );
        let end = Observation::new(Space::CmX).exactly(P::Sup, p(0));
        assert_eq!(
            check_cm_membership(&end).unwrap(),
            Verdict::Refuted(Clause::Endpoint)
        );
        let wrap = Observation::new(Space::CX)
            .exactly(p(1), p(1))
            .exactly(p(2), P::Infinity)
            .exactly(p(3), p(3));
        assert_eq!(
            check_cx_membership(&wrap).unwrap(),
            Verdict::Refuted(Clause::Wrap)
        );
        let ends = Observation::new(Space::CX)
            .exactly(p(1), P::Infinity)
            .exactly(p(2), p(2))
            .exactly(p(3), P::Infinity);
        assert_eq!(check_cx_membership(&ends).unwrap(), Verdict::Consistent);
    }

    #[test]
    fn wrong_space() {
        let obs = Observation::<Q>::new(Space::CmX);
        assert_eq!(check_bm_membership(&obs), Err(Error::SpaceMismatch));
        let other = Observation::<Q>::new(Space::BudX);
        assert!(check_membership(&other).is_err());
    }
}
