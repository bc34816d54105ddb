//! Induced maps between enveloping semigroups along quotient maps of
//! compactifications, and the Rees-quotient condition for elementary ones.

use std::collections::{BTreeMap, BTreeSet};

use super::bounds::{bounds, Lo};
use super::element::EllisElementFin;
use super::membership::membership_violations;
use super::observation::{GroupKind, Observation, Target};
use crate::chain::{arrow, in_collapsed_fiber, quotient_point, ExtendedPoint, Space, Tag};
use crate::error::{Error, Result};
use crate::partial::PartialBijection;
use crate::scalar::Scalar;
use crate::semigroup::{check_homomorphism, rees_quotient, FiniteMonoid, IdealSet};

type P<S> = ExtendedPoint<S>;

/// Pushes an observation on `from` through the quotient map to `to`.
///
/// Points and exact targets are mapped pointwise; an interval target becomes
/// the interval between the images of its ends. Entries whose points are
/// identified are merged: an exact target wins over one containing it and
/// two intervals are intersected.
pub fn induce_quotient_obs<S: Scalar>(
    obs: &Observation<S>,
    from: Space,
    to: Space,
) -> Result<Observation<S>> {
    if arrow(from, to).is_none() {
        return Err(Error::NoArrow { from, to });
    }
    if obs.space != from {
        return Err(Error::SpaceMismatch);
    }
    if from == to {
        return Ok(obs.clone());
    }
    let mut merged: BTreeMap<P<S>, Target<S>> = BTreeMap::new();
    for e in &obs.entries {
        let point = quotient_point(from, to, &e.point)?;
        let target = match &e.target {
            Target::Exactly { value } => Target::exactly(quotient_point(from, to, value)?),
            Target::Interval { lo, hi } => {
                if to == Space::AlphaX {
                    return Err(Error::IllegalObservation(format!(
                        "the image of ({lo}, {hi}) in AlphaX is not an interval"
                    )));
                }
                Target::interval(quotient_point(from, to, lo)?, quotient_point(from, to, hi)?)
            }
            Target::Cofinite { .. } => {
                return Err(Error::IllegalObservation(
                    "cofinite target outside AlphaX".into(),
                ));
            }
        };
        let next = match merged.remove(&point) {
            None => target,
            Some(prev) => merge(to, &point, prev, target)?,
        };
        merged.insert(point, next);
    }
    let mut out = Observation::new(to);
    out.group = obs.group;
    for (point, target) in merged {
        out.push(point, target);
    }
    Ok(out)
}

fn merge<S: Scalar>(space: Space, at: &P<S>, a: Target<S>, b: Target<S>) -> Result<Target<S>> {
    if a == b {
        return Ok(a);
    }
    let conflict = || Error::IllegalObservation(format!("conflicting targets at {at}"));
    match (&a, &b) {
        (Target::Exactly { value }, other) | (other, Target::Exactly { value }) => {
            if other.contains(space, value) {
                Ok(Target::exactly(value.clone()))
            } else {
                Err(conflict())
            }
        }
        (Target::Interval { lo: l1, hi: h1 }, Target::Interval { lo: l2, hi: h2 }) => {
            let lo = l1.clone().max(l2.clone());
            let hi = match (h1, h2) {
                (P::Infinity, h) | (h, P::Infinity) => h.clone(),
                (x, y) => x.clone().min(y.clone()),
            };
            let t = Target::interval(lo, hi);
            match bounds(space, &t) {
                Some((l, h)) if Lo::feasible(&l, &h) => Ok(t),
                _ => Err(conflict()),
            }
        }
        _ => Err(conflict()),
    }
}

/// A self-map of a finite set of points of a compactification; the trace
/// of an enveloping-semigroup element on an invariant finite set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointMap<S: Scalar> {
    space: Space,
    map: BTreeMap<P<S>, P<S>>,
}

impl<S: Scalar> PointMap<S> {
    pub fn new(space: Space, pairs: impl IntoIterator<Item = (P<S>, P<S>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, v) in pairs {
            space.check(&p)?;
            space.check(&v)?;
            if map.insert(p.clone(), v).is_some() {
                return Err(Error::PreconditionViolated(format!("{p} mapped twice")));
            }
        }
        Ok(PointMap { space, map })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn apply(&self, p: &P<S>) -> Option<&P<S>> {
        self.map.get(p)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&P<S>, &P<S>)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &P<S>> {
        self.map.keys()
    }

    /// `self` after `g`; `g` must map into the domain of `self`.
    pub fn after(&self, g: &Self) -> Result<Self> {
        if self.space != g.space {
            return Err(Error::SpaceMismatch);
        }
        let map = g
            .map
            .iter()
            .map(|(p, v)| {
                self.map
                    .get(v)
                    .map(|w| (p.clone(), w.clone()))
                    .ok_or(Error::CarrierMismatch)
            })
            .collect::<Result<_>>()?;
        Ok(PointMap {
            space: self.space,
            map,
        })
    }

    /// The exact observation of the map on its whole domain.
    pub fn observe(&self) -> Observation<S> {
        let mut obs = Observation::new(self.space);
        for (p, v) in &self.map {
            obs.push(p.clone(), Target::exactly(v.clone()));
        }
        obs
    }

    /// The induced map on the image of the domain in `to`. Fails if two
    /// identified points have non-identified images.
    pub fn push(&self, to: Space) -> Result<Self> {
        let mut map: BTreeMap<P<S>, P<S>> = BTreeMap::new();
        for (p, v) in &self.map {
            let (pp, vv) = (
                quotient_point(self.space, to, p)?,
                quotient_point(self.space, to, v)?,
            );
            match map.get(&pp) {
                Some(prev) if *prev != vv => {
                    return Err(Error::Inconsistent(format!(
                        "induced map not defined at {pp}"
                    )));
                }
                _ => {
                    map.insert(pp, vv);
                }
            }
        }
        Ok(PointMap { space: to, map })
    }

    /// Reads a map on `{oo} + carrier` of `AlphaX` as a finite element.
    pub fn to_alpha_element(&self, group: GroupKind) -> Result<EllisElementFin<S>> {
        if self.space != Space::AlphaX {
            return Err(Error::SpaceMismatch);
        }
        let mut carrier = Vec::new();
        let mut pairs = Vec::new();
        for (p, v) in &self.map {
            if let P::Plain(x) = p {
                carrier.push(x.clone());
                if let P::Plain(y) = v {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
        EllisElementFin::new(PartialBijection::new(carrier, pairs)?, group)
    }
}

/// The ideal and (EF) tests attached to an elementary quotient map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EfIdeal {
    pub from: Space,
    pub to: Space,
}

/// Sets up the ideal of maps into the collapsed fiber of `from -> to`.
pub fn check_ef_ideal(from: Space, to: Space) -> Result<EfIdeal> {
    let a = arrow(from, to).ok_or(Error::NoArrow { from, to })?;
    if from == to {
        return Err(Error::PreconditionViolated(
            "identity arrow has no collapsed fiber".into(),
        ));
    }
    if !a.elementary {
        return Err(Error::NotElementary { from, to });
    }
    Ok(EfIdeal { from, to })
}

impl EfIdeal {
    /// Every value of `f` lies in the collapsed fiber.
    pub fn ideal_predicate<S: Scalar>(&self, f: &PointMap<S>) -> Result<bool> {
        self.expect(f)?;
        for (_, v) in f.pairs() {
            if !in_collapsed_fiber(self.from, self.to, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the pair satisfies (EF): two maps outside the ideal with the
    /// same induced map must coincide.
    pub fn ef_check<S: Scalar>(&self, f: &PointMap<S>, h: &PointMap<S>) -> Result<bool> {
        self.expect(f)?;
        self.expect(h)?;
        if self.ideal_predicate(f)? || self.ideal_predicate(h)? {
            return Ok(true);
        }
        Ok(f.push(self.to)? != h.push(self.to)? || f == h)
    }

    fn expect<S: Scalar>(&self, f: &PointMap<S>) -> Result<()> {
        if f.space() == self.from {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

/// The traces of an enveloping semigroup on a finite invariant set of
/// points, as a monoid of maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainModel<S: Scalar> {
    space: Space,
    points: Vec<P<S>>,
    maps: Vec<PointMap<S>>,
}

impl<S: Scalar> ChainModel<S> {
    /// All maps of `points` (an invariant set) into itself that pass the
    /// membership test of `space`, found by trying each choice in
    /// `choices(point)` and pruning on partial assignments.
    fn search(
        space: Space,
        points: Vec<P<S>>,
        choices: impl Fn(&P<S>) -> Vec<P<S>>,
    ) -> Result<Self> {
        let options: Vec<Vec<P<S>>> = points.iter().map(&choices).collect();
        let mut maps = Vec::new();
        let mut current: Vec<(P<S>, P<S>)> = Vec::new();
        fn go<S: Scalar>(
            space: Space,
            points: &[P<S>],
            options: &[Vec<P<S>>],
            current: &mut Vec<(P<S>, P<S>)>,
            out: &mut Vec<PointMap<S>>,
        ) -> Result<()> {
            let k = current.len();
            let map = PointMap::new(space, current.iter().cloned())?;
            if !membership_violations(&map.observe())?.is_empty() {
                return Ok(());
            }
            if k == points.len() {
                out.push(map);
                return Ok(());
            }
            for v in &options[k] {
                current.push((points[k].clone(), v.clone()));
                go(space, points, options, current, out)?;
                current.pop();
            }
            Ok(())
        }
        go(space, &points, &options, &mut current, &mut maps)?;
        maps.sort();
        Ok(ChainModel {
            space,
            points,
            maps,
        })
    }

    /// The enveloping semigroup of `Aut(X)` on `BmX` traced on the endpoints
    /// and the three copies of `1..=n`.
    pub fn bm(n: u32) -> Result<Self> {
        let mut points = vec![P::Inf];
        for i in 1..=n {
            for t in [Tag::Minus, Tag::Zero, Tag::Plus] {
                points.push(P::Tagged(S::from_i64(i.into()), t));
            }
        }
        points.push(P::Sup);
        let all = points.clone();
        Self::search(Space::BmX, points, move |_| all.clone())
    }

    /// The enveloping semigroup of `Aut(X)` on `CmX` traced on the endpoints
    /// and `1..=n`.
    pub fn cm(n: u32) -> Result<Self> {
        let mut points = vec![P::Inf];
        points.extend((1..=n).map(|i| P::Plain(S::from_i64(i.into()))));
        points.push(P::Sup);
        let all = points.clone();
        Self::search(Space::CmX, points, move |_| all.clone())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn points(&self) -> &[P<S>] {
        &self.points
    }

    pub fn maps(&self) -> &[PointMap<S>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn index_of(&self, f: &PointMap<S>) -> Option<usize> {
        self.maps.binary_search(f).ok()
    }

    /// The induced maps on the image of the point set in `to`.
    pub fn push(&self, to: Space) -> Result<Self> {
        if arrow(self.space, to).is_none() {
            return Err(Error::NoArrow {
                from: self.space,
                to,
            });
        }
        let points: BTreeSet<P<S>> = self
            .points
            .iter()
            .map(|p| quotient_point(self.space, to, p))
            .collect::<Result<_>>()?;
        let maps: BTreeSet<PointMap<S>> = self
            .maps
            .iter()
            .map(|f| f.push(to))
            .collect::<Result<_>>()?;
        Ok(ChainModel {
            space: to,
            points: points.into_iter().collect(),
            maps: maps.into_iter().collect(),
        })
    }

    /// The composition table. Fails if the maps are not closed under
    /// composition.
    pub fn monoid(&self) -> Result<FiniteMonoid> {
        let n = self.maps.len();
        let mut table = vec![vec![0; n]; n];
        for (a, f) in self.maps.iter().enumerate() {
            for (b, g) in self.maps.iter().enumerate() {
                let fg = f.after(g)?;
                table[a][b] = self
                    .index_of(&fg)
                    .ok_or_else(|| Error::Inconsistent(format!("model not closed: {fg:?}")))?;
            }
        }
        let labels = (0..n).map(|i| format!("f{i}")).collect();
        FiniteMonoid::from_table(table, labels, None)
    }

    pub fn ideal(&self, ef: &EfIdeal) -> Result<IdealSet> {
        let mut members = Vec::new();
        for (i, f) in self.maps.iter().enumerate() {
            if ef.ideal_predicate(f)? {
                members.push(i);
            }
        }
        Ok(IdealSet::new(members))
    }

    /// Checks (EF) over all pairs of the model.
    pub fn ef_holds(&self, ef: &EfIdeal) -> Result<bool> {
        let mut by_image: BTreeMap<PointMap<S>, usize> = BTreeMap::new();
        for f in &self.maps {
            if !ef.ideal_predicate(f)? {
                *by_image.entry(f.push(ef.to)?).or_default() += 1;
            }
        }
        Ok(by_image.values().all(|&c| c == 1))
    }
}

/// How the Rees quotient by the fiber ideal compares with the induced image.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReesCorrespondence {
    pub model_order: usize,
    pub ideal_size: usize,
    pub quotient_order: usize,
    pub image_order: usize,
    pub ef_holds: bool,
    /// The map from the Rees quotient onto the image is a well-defined
    /// bijective homomorphism.
    pub isomorphic: bool,
}

/// Builds the Rees quotient of `model` by the ideal of `from -> to` and the
/// image of `model` in `to`, and compares them.
pub fn rees_correspondence<S: Scalar>(
    model: &ChainModel<S>,
    to: Space,
) -> Result<ReesCorrespondence> {
    let ef = check_ef_ideal(model.space(), to)?;
    let m = model.monoid()?;
    let ideal = model.ideal(&ef)?;
    let image = model.push(to)?;
    let im = image.monoid()?;
    let ef_holds = model.ef_holds(&ef)?;
    let r = rees_quotient(&m, &ideal)?;
    let mut p = vec![usize::MAX; r.quotient.order()];
    let mut well_defined = true;
    for (i, f) in model.maps().iter().enumerate() {
        let target = image
            .index_of(&f.push(to)?)
            .expect("image contains every push");
        let slot = &mut p[r.map[i]];
        if *slot == usize::MAX {
            *slot = target;
        } else if *slot != target {
            well_defined = false;
        }
    }
    let bijective = well_defined && {
        let distinct: BTreeSet<usize> = p.iter().copied().collect();
        distinct.len() == p.len() && p.len() == im.order()
    };
    let isomorphic = bijective && check_homomorphism(&p, &r.quotient, &im);
    Ok(ReesCorrespondence {
        model_order: m.order(),
        ideal_size: ideal.len(),
        quotient_order: r.quotient.order(),
        image_order: im.order(),
        ef_holds,
        isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::{enumerate_monoid, Mode};
    use crate::scalar::{q, BigRational};

    type Q = BigRational;

    fn t(n: i64, tag: Tag) -> P<Q> {
        P::Tagged(q(n, 1), tag)
    }

    #[test]
    fn pushes_endpoints_and_classes() {
        let obs = Observation::<Q>::new(Space::BmX).exactly(P::Inf, P::Inf);
        let pushed = induce_quotient_obs(&obs, Space::BmX, Space::BlrX).unwrap();
        assert_eq!(
            pushed,
            Observation::new(Space::BlrX).exactly(P::Infinity, P::Infinity)
        );
        let obs = Observation::<Q>::new(Space::BmX)
            .exactly(t(0, Tag::Minus), t(1, Tag::Minus))
            .exactly(t(0, Tag::Plus), t(1, Tag::Plus));
        let pushed = induce_quotient_obs(&obs, Space::BmX, Space::BudX).unwrap();
        assert_eq!(
            pushed,
            Observation::new(Space::BudX).exactly(t(0, Tag::Minus), t(1, Tag::Minus))
        );
        assert_eq!(
            induce_quotient_obs(&obs, Space::BmX, Space::BmX).unwrap(),
            obs
        );
        assert_eq!(
            induce_quotient_obs(&obs, Space::BudX, Space::BmX),
            Err(Error::NoArrow {
                from: Space::BudX,
                to: Space::BmX
            })
        );
    }

    #[test]
    fn intervals_into_alpha_rejected() {
        let obs = Observation::<Q>::new(Space::BmX)
            .entry(t(0, Tag::Zero), Target::interval(P::Inf, t(3, Tag::Zero)));
        assert!(matches!(
            induce_quotient_obs(&obs, Space::BmX, Space::AlphaX),
            Err(Error::IllegalObservation(_))
        ));
        let cm = Observation::<Q>::new(Space::CmX).entry(
            P::Plain(q(0, 1)),
            Target::interval(P::Plain(q(1, 1)), P::Sup),
        );
        let cx = induce_quotient_obs(&cm, Space::CmX, Space::CX).unwrap();
        assert!(cx.entries[0]
            .target
            .contains(Space::CX, &P::Plain(q(100, 1))));
    }

    #[test]
    fn ef_examples() {
        let ef = check_ef_ideal(Space::BplusX, Space::AlphaX).unwrap();
        let pts = [P::<Q>::Infinity, t(1, Tag::Minus), t(1, Tag::Zero)];
        let to_inf =
            PointMap::new(Space::BplusX, pts.iter().map(|p| (p.clone(), P::Infinity))).unwrap();
        assert!(ef.ideal_predicate(&to_inf).unwrap());
        let id = PointMap::new(Space::BplusX, pts.iter().map(|p| (p.clone(), p.clone()))).unwrap();
        assert!(!ef.ideal_predicate(&id).unwrap());
        assert_eq!(
            check_ef_ideal(Space::BmX, Space::BudX),
            Err(Error::NotElementary {
                from: Space::BmX,
                to: Space::BudX
            })
        );
    }

    #[test]
    fn cm_model_matches_monotone_count() {
        // monotone self-maps of {1..n} into {Inf, 1..n, Sup}: C(2n+1, n)
        let counts: Vec<usize> = (1..=3)
            .map(|n| ChainModel::<Q>::cm(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![3, 10, 35]);
    }

    #[test]
    fn bm_to_alpha_image_is_partial_automorphisms() {
        for n in 1..=3u32 {
            let image = ChainModel::<Q>::bm(n).unwrap().push(Space::AlphaX).unwrap();
            let got: BTreeSet<PartialBijection<Q>> = image
                .maps()
                .iter()
                .map(|f| f.to_alpha_element(GroupKind::Aut).unwrap().core().clone())
                .collect();
            let want: BTreeSet<PartialBijection<Q>> = enumerate_monoid(n as usize, Mode::J, 6)
                .unwrap()
                .into_iter()
                .map(|f| {
                    PartialBijection::new(
                        f.carrier().iter().map(|&x| q(x.into(), 1)),
                        f.pairs().map(|(&a, &b)| (q(a.into(), 1), q(b.into(), 1))),
                    )
                    .unwrap()
                })
                .collect();
            assert_eq!(got, want, "n = {n}");
        }
    }
}
