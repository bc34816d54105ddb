//! Seeded random generators for group elements, observations and clause
//! violations, shared by the property tests and the CLI.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{pl_witness, PLAutomorphism};
use crate::chain::{rational_between, ExtendedPoint, GapCut, Level, Space, Tag};
use crate::ellis::{Clause, GroupKind, Membership, Observation, Target};
use crate::scalar::Scalar;

type P<S> = ExtendedPoint<S>;

/// The observation families with a membership test.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Bm,
    Br,
    Cm,
    Cx,
    AlphaSym,
    AlphaAut,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Bm,
        Kind::Br,
        Kind::Cm,
        Kind::Cx,
        Kind::AlphaSym,
        Kind::AlphaAut,
    ];

    pub fn space(self) -> Space {
        match self {
            Kind::Bm | Kind::Br => Space::BmX,
            Kind::Cm => Space::CmX,
            Kind::Cx => Space::CX,
            Kind::AlphaSym | Kind::AlphaAut => Space::AlphaX,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Bm => "BmX",
            Kind::Br => "BmX/br",
            Kind::Cm => "CmX",
            Kind::Cx => "CX",
            Kind::AlphaSym => "AlphaX/sym",
            Kind::AlphaAut => "AlphaX/aut",
        }
    }

    /// The clauses of this family's membership test.
    pub fn clauses(self) -> &'static [Clause] {
        match self {
            Kind::Bm => &[
                Clause::BmI,
                Clause::BmII,
                Clause::BmIII,
                Clause::BmIV,
                Clause::BmV,
            ],
            Kind::Br => &[Clause::BrI, Clause::BrII],
            Kind::Cm => &[Clause::Monotone, Clause::Endpoint],
            Kind::Cx => &[Clause::Monotone, Clause::Infinity, Clause::Wrap],
            Kind::AlphaSym => &[Clause::Collision, Clause::Infinity],
            Kind::AlphaAut => &[Clause::Collision, Clause::Infinity, Clause::Order],
        }
    }

    fn empty<S: Scalar>(self) -> Observation<S> {
        let obs = Observation::new(self.space());
        match self {
            Kind::Bm => obs.with_membership(Membership::Bm),
            Kind::Br => obs.with_membership(Membership::Br),
            Kind::AlphaSym => obs.with_group(GroupKind::Sym),
            Kind::AlphaAut => obs.with_group(GroupKind::Aut),
            _ => obs,
        }
    }
}

/// A seeded source of random chain data.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational<S: Scalar>(&mut self) -> S {
        let n = self.rng.gen_range(-40..=40);
        let d = self.rng.gen_range(1..=4);
        S::from_i64(n) / S::from_i64(d)
    }

    /// `k` distinct rationals, sorted.
    pub fn distinct<S: Scalar>(&mut self, k: usize) -> Vec<S> {
        let mut set = BTreeSet::new();
        while set.len() < k {
            set.insert(self.rational::<S>());
        }
        set.into_iter().collect()
    }

    /// A random irrational cut `r + s*sqrt(2)`.
    pub fn gap<S: Scalar>(&mut self) -> GapCut<S> {
        let r = self.rational::<S>();
        let s = *[1i64, -1, 2, -2, 3]
            .choose(&mut self.rng)
            .expect("nonempty");
        let d = self.rng.gen_range(1..=4);
        GapCut::new(r, S::from_i64(s) / S::from_i64(d)).expect("s nonzero")
    }

    /// A gap strictly between two rationals `a < b`.
    pub fn gap_between<S: Scalar>(&mut self, a: &S, b: &S) -> GapCut<S> {
        // a + t*sqrt(2) with t = (b - a)/d, d >= 2
        let d = self.rng.gen_range(2..=5);
        let t = (b.clone() - a.clone()) / S::from_i64(d);
        GapCut::new(a.clone(), t).expect("a < b")
    }

    /// A random PL automorphism with up to `k` breakpoints.
    pub fn pl<S: Scalar>(&mut self, k: usize) -> PLAutomorphism<S> {
        let n = self.rng.gen_range(0..=k);
        let xs = self.distinct::<S>(n);
        let ys = self.distinct::<S>(n);
        pl_witness(&xs.into_iter().zip(ys).collect::<Vec<_>>()).expect("sorted pairs")
    }

    /// A random PL automorphism fixing every point of `fixed` (sorted).
    pub fn pl_fixing<S: Scalar>(&mut self, fixed: &[S]) -> PLAutomorphism<S> {
        let mut pairs: Vec<(S, S)> = fixed.iter().map(|c| (c.clone(), c.clone())).collect();
        let mut bounds: Vec<(Option<&S>, Option<&S>)> = Vec::new();
        if fixed.is_empty() {
            bounds.push((None, None));
        } else {
            bounds.push((None, fixed.first()));
            for w in fixed.windows(2) {
                bounds.push((Some(&w[0]), Some(&w[1])));
            }
            bounds.push((fixed.last(), None));
        }
        for (lo, hi) in bounds {
            let k = self.rng.gen_range(0..=2);
            let mut xs = BTreeSet::new();
            let mut ys = BTreeSet::new();
            for _ in 0..k {
                xs.insert(self.inside(lo, hi));
                ys.insert(self.inside(lo, hi));
            }
            if xs.len() == ys.len() {
                pairs.extend(xs.into_iter().zip(ys));
            }
        }
        pl_witness(&pairs).expect("cell-wise increasing")
    }

    /// A random rational strictly between optional bounds.
    pub fn inside<S: Scalar>(&mut self, lo: Option<&S>, hi: Option<&S>) -> S {
        let w = S::from_i64(self.rng.gen_range(1..=7)) / S::from_i64(8);
        match (lo, hi) {
            (Some(a), Some(b)) => a.clone() + (b.clone() - a.clone()) * w,
            (Some(a), None) => a.clone() + S::from_i64(self.rng.gen_range(0..=5)) + w,
            (None, Some(b)) => b.clone() - S::from_i64(self.rng.gen_range(0..=5)) - w,
            (None, None) => self.rational(),
        }
    }

    /// A random finite set of distinct legal points of `space`.
    pub fn points<S: Scalar>(&mut self, space: Space) -> Vec<P<S>> {
        let mut pts = BTreeSet::new();
        let r = &mut self.rng;
        let (ends, levels) = (r.gen_bool(0.6), r.gen_range(1..=5));
        let gaps = r.gen_range(0..=2);
        if ends {
            match space {
                Space::BmX | Space::BudX | Space::CmX => {
                    pts.insert(P::Inf);
                    pts.insert(P::Sup);
                }
                _ => {
                    pts.insert(P::Infinity);
                }
            }
        }
        for x in self.distinct::<S>(levels) {
            match space {
                Space::BmX | Space::BlrX => {
                    for t in [Tag::Minus, Tag::Zero, Tag::Plus] {
                        if self.rng.gen_bool(0.5) {
                            pts.insert(P::Tagged(x.clone(), t));
                        }
                    }
                    if self.rng.gen_bool(0.3) {
                        pts.insert(P::Tagged(x.clone(), Tag::Zero));
                    }
                }
                Space::BudX | Space::BplusX => {
                    let t = if self.rng.gen_bool(0.5) {
                        Tag::Minus
                    } else {
                        Tag::Zero
                    };
                    pts.insert(P::Tagged(x, t));
                }
                _ => {
                    pts.insert(P::Plain(x));
                }
            }
        }
        if space != Space::AlphaX {
            for _ in 0..gaps {
                pts.insert(P::Gap(self.gap()));
            }
        }
        pts.into_iter().collect()
    }

    /// A consistent observation of `kind`, from a random group element or
    /// (sometimes) from a limit of group elements through neighbourhoods.
    pub fn consistent<S: Scalar>(&mut self, kind: Kind) -> Observation<S> {
        match kind {
            Kind::AlphaSym => return self.permutation_observation(),
            Kind::AlphaAut => return self.aut_alpha_observation(),
            _ => {}
        }
        let space = kind.space();
        let g = self.pl::<S>(4);
        let mut pts = self.points::<S>(space);
        if kind == Kind::Br {
            pts = pts
                .into_iter()
                .filter_map(|p| match p {
                    P::Tagged(x, _) => Some(P::Tagged(x, Tag::Zero)),
                    _ => None,
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
        }
        let images: Vec<P<S>> = pts
            .iter()
            .map(|p| g.extend(space, p).expect("legal"))
            .collect();
        let levels: Vec<Level<S>> = images.iter().filter_map(P::level).collect();
        let floor = levels.iter().min().map(|l| rational_between(None, Some(l)));
        let ceil = levels.iter().max().map(|l| rational_between(Some(l), None));
        let limit = self.rng.gen_bool(0.3);
        let low = pts.iter().filter_map(P::level).collect::<BTreeSet<_>>();
        let (cut_lo, cut_hi) = if limit && !low.is_empty() {
            let v: Vec<_> = low.into_iter().collect();
            let i = self.rng.gen_range(0..=v.len());
            let j = self.rng.gen_range(i..=v.len());
            (v.get(i).cloned(), v.get(j).cloned())
        } else {
            (None, None)
        };
        let mut obs = kind.empty();
        for (p, v) in pts.iter().zip(&images) {
            let lvl = p.level();
            let below = matches!((&lvl, &cut_lo), (Some(l), Some(c)) if l < c);
            let above = matches!((&lvl, &cut_hi), (Some(l), Some(c)) if l >= c);
            let target = if below {
                Target::interval(
                    bottom(space),
                    line_point(space, floor.clone().expect("levels")),
                )
            } else if above {
                Target::interval(line_point(space, ceil.clone().expect("levels")), top(space))
            } else {
                self.neighbourhood(space, v)
            };
            obs.push(p.clone(), target);
        }
        obs
    }

    /// An exact target, or a random open interval around `v`.
    fn neighbourhood<S: Scalar>(&mut self, space: Space, v: &P<S>) -> Target<S> {
        let r = S::from_i64(self.rng.gen_range(1..=4)) / S::from_i64(self.rng.gen_range(1..=4));
        match v {
            P::Gap(c) => {
                let (a, b) = c.rational_bracket();
                Target::interval(line_point(space, a - r.clone()), line_point(space, b + r))
            }
            P::Tagged(y, _) | P::Plain(y) if self.rng.gen_bool(0.4) => Target::interval(
                line_point(space, y.clone() - r.clone()),
                line_point(space, y.clone() + r),
            ),
            other => Target::exactly(other.clone()),
        }
    }

    fn permutation_observation<S: Scalar>(&mut self) -> Observation<S> {
        let k = self.rng.gen_range(1..=6);
        let xs = self.distinct::<S>(k);
        let mut ys = self.distinct::<S>(k);
        ys.shuffle(&mut self.rng);
        let mut obs = Kind::AlphaSym.empty();
        for (x, y) in xs.into_iter().zip(ys) {
            let t = if self.rng.gen_bool(0.3) {
                let k = self.rng.gen_range(0..=4);
                let e = self.distinct::<S>(k);
                Target::cofinite(e)
            } else {
                Target::exactly(P::Plain(y))
            };
            obs.push(P::Plain(x), t);
        }
        if self.rng.gen_bool(0.5) {
            let t = if self.rng.gen_bool(0.5) {
                Target::exactly(P::Infinity)
            } else {
                Target::cofinite(self.distinct::<S>(2))
            };
            obs.push(P::Infinity, t);
        }
        obs
    }

    fn aut_alpha_observation<S: Scalar>(&mut self) -> Observation<S> {
        let g = self.pl::<S>(4);
        let mut obs = Kind::AlphaAut.empty();
        for p in self.points::<S>(Space::AlphaX) {
            let t = match &p {
                P::Plain(_) if self.rng.gen_bool(0.3) => {
                    let k = self.rng.gen_range(0..=4);
                    let e = self.distinct::<S>(k);
                    Target::cofinite(e)
                }
                P::Infinity if self.rng.gen_bool(0.5) => Target::cofinite(self.distinct::<S>(2)),
                _ => Target::exactly(g.extend(Space::AlphaX, &p).expect("legal")),
            };
            obs.push(p, t);
        }
        obs
    }

    /// An observation of a group element refuted by exactly `clause`.
    ///
    /// Returns `None` if `clause` does not belong to `kind`.
    pub fn mutation<S: Scalar>(&mut self, kind: Kind, clause: Clause) -> Option<Observation<S>> {
        if !kind.clauses().contains(&clause) {
            return None;
        }
        let space = kind.space();
        let l = self.distinct::<S>(5);
        let g = self.pl::<S>(4);
        let gx = |x: &S| g.eval(x);
        let t = |x: &S, tag| P::Tagged(x.clone(), tag);
        let mut obs = kind.empty();
        match kind {
            Kind::Bm => {
                // lone chain points at l0, l1, l3; two or three copies of l2;
                // a gap above l3; a lone added point at l4
                let mut pts = vec![
                    P::Inf,
                    P::Sup,
                    t(&l[0], Tag::Zero),
                    t(&l[1], Tag::Zero),
                    t(&l[3], Tag::Zero),
                ];
                pts.push(t(&l[2], Tag::Minus));
                let other = if self.rng.gen_bool(0.5) {
                    Tag::Zero
                } else {
                    Tag::Plus
                };
                pts.push(t(&l[2], other));
                if self.rng.gen_bool(0.5) {
                    pts.push(t(
                        &l[2],
                        if other == Tag::Zero {
                            Tag::Plus
                        } else {
                            Tag::Zero
                        },
                    ));
                }
                pts.push(P::Gap(self.gap_between(&l[3], &l[4])));
                let lone = if self.rng.gen_bool(0.5) {
                    Tag::Minus
                } else {
                    Tag::Plus
                };
                pts.push(t(&l[4], lone));
                for p in &pts {
                    obs.push(p.clone(), exact_image(&g, space, p));
                }
                obs = obs.normalized();
                match clause {
                    Clause::BmI => {
                        let (a, b) = self.two_of(&[0, 1, 3]);
                        swap_targets(&mut obs, &t(&l[a], Tag::Zero), &t(&l[b], Tag::Zero));
                    }
                    Clause::BmII => set(&mut obs, &t(&l[4], lone), t(&gx(&l[4]), Tag::Zero)),
                    Clause::BmIII => set(&mut obs, &t(&l[1], Tag::Zero), t(&gx(&l[0]), Tag::Zero)),
                    Clause::BmIV => {
                        let y = S::midpoint(&gx(&l[1]), &gx(&l[2]));
                        set(&mut obs, &t(&l[2], Tag::Minus), t(&y, Tag::Minus));
                    }
                    Clause::BmV => {
                        if self.rng.gen_bool(0.5) {
                            set(&mut obs, &P::Inf, t(&(gx(&l[0]) - S::one()), Tag::Minus));
                        } else {
                            set(&mut obs, &P::Sup, t(&(gx(&l[4]) + S::one()), Tag::Plus));
                        }
                    }
                    _ => unreachable!(),
                }
            }
            Kind::Br => {
                for x in &l {
                    let p = t(x, Tag::Zero);
                    obs.push(p.clone(), exact_image(&g, space, &p));
                }
                let i = self.rng.gen_range(0..4);
                match clause {
                    Clause::BrI => {
                        let (a, b) = self.two_of(&[0, 1, 2, 3, 4]);
                        swap_targets(&mut obs, &t(&l[a], Tag::Zero), &t(&l[b], Tag::Zero));
                    }
                    Clause::BrII => {
                        set(&mut obs, &t(&l[i + 1], Tag::Zero), t(&gx(&l[i]), Tag::Zero))
                    }
                    _ => unreachable!(),
                }
            }
            Kind::Cm | Kind::Cx => {
                let mut pts: Vec<P<S>> = l.iter().map(|x| P::Plain(x.clone())).collect();
                pts.push(P::Gap(self.gap_between(&l[3], &l[4])));
                if kind == Kind::Cm {
                    pts.extend([P::Inf, P::Sup]);
                } else {
                    pts.push(P::Infinity);
                }
                for p in &pts {
                    obs.push(p.clone(), exact_image(&g, space, p));
                }
                obs = obs.normalized();
                let plain = |i: usize| P::Plain(l[i].clone());
                match clause {
                    Clause::Monotone => {
                        let (a, b) = self.two_of(&[0, 1, 2, 3, 4]);
                        swap_targets(&mut obs, &plain(a), &plain(b));
                    }
                    Clause::Endpoint => {
                        if self.rng.gen_bool(0.5) {
                            set(&mut obs, &P::Inf, P::Plain(gx(&l[0]) - S::one()));
                        } else {
                            set(&mut obs, &P::Sup, P::Plain(gx(&l[4]) + S::one()));
                        }
                    }
                    Clause::Infinity => set(&mut obs, &P::Infinity, P::Plain(gx(&l[4]) + S::one())),
                    Clause::Wrap => {
                        let i = self.rng.gen_range(1..=3);
                        set(&mut obs, &plain(i), P::Infinity);
                    }
                    _ => unreachable!(),
                }
            }
            Kind::AlphaSym | Kind::AlphaAut => {
                let mut ys = self.distinct::<S>(5);
                if kind == Kind::AlphaSym {
                    ys.shuffle(&mut self.rng);
                } else {
                    ys = l.iter().map(&gx).collect();
                }
                for (x, y) in l.iter().zip(&ys) {
                    obs.push(P::Plain(x.clone()), Target::exactly(P::Plain(y.clone())));
                }
                obs.push(P::Infinity, Target::exactly(P::Infinity));
                let plain = |i: usize| P::Plain(l[i].clone());
                match clause {
                    Clause::Collision => {
                        let (a, b) = if kind == Kind::AlphaAut {
                            let i = self.rng.gen_range(0..4);
                            (i, i + 1)
                        } else {
                            self.two_of(&[0, 1, 2, 3, 4])
                        };
                        set(&mut obs, &plain(b), P::Plain(ys[a].clone()));
                    }
                    Clause::Infinity => {
                        let top = ys.iter().max().expect("nonempty").clone() + S::one();
                        set(&mut obs, &P::Infinity, P::Plain(top));
                    }
                    Clause::Order => {
                        let (a, b) = self.two_of(&[0, 1, 2, 3, 4]);
                        swap_targets(&mut obs, &plain(a), &plain(b));
                    }
                    _ => unreachable!(),
                }
            }
        }
        Some(obs)
    }

    fn two_of(&mut self, from: &[usize]) -> (usize, usize) {
        let v: Vec<usize> = from.choose_multiple(&mut self.rng, 2).copied().collect();
        (v[0].min(v[1]), v[0].max(v[1]))
    }
}

/// The exact observation of a group element at `points`.
pub fn observe<S: Scalar>(g: &PLAutomorphism<S>, space: Space, points: &[P<S>]) -> Observation<S> {
    let mut obs = Observation::new(space);
    for p in points {
        obs.push(p.clone(), exact_image(g, space, p));
    }
    obs
}

fn exact_image<S: Scalar>(g: &PLAutomorphism<S>, space: Space, p: &P<S>) -> Target<S> {
    Target::exactly(g.extend(space, p).expect("legal point"))
}

fn set<S: Scalar>(obs: &mut Observation<S>, at: &P<S>, value: P<S>) {
    let e = obs
        .entries
        .iter_mut()
        .find(|e| &e.point == at)
        .expect("observed point");
    e.target = Target::exactly(value);
}

fn swap_targets<S: Scalar>(obs: &mut Observation<S>, a: &P<S>, b: &P<S>) {
    let ta = obs.target_of(a).expect("observed").clone();
    let tb = obs.target_of(b).expect("observed").clone();
    for e in &mut obs.entries {
        if &e.point == a {
            e.target = tb.clone();
        } else if &e.point == b {
            e.target = ta.clone();
        }
    }
}

fn line_point<S: Scalar>(space: Space, y: S) -> P<S> {
    match space {
        Space::BmX | Space::BlrX | Space::BudX | Space::BplusX => P::Tagged(y, Tag::Zero),
        _ => P::Plain(y),
    }
}

fn bottom<S: Scalar>(space: Space) -> P<S> {
    match space {
        Space::BmX | Space::BudX | Space::CmX => P::Inf,
        _ => P::Infinity,
    }
}

fn top<S: Scalar>(space: Space) -> P<S> {
    match space {
        Space::BmX | Space::BudX | Space::CmX => P::Sup,
        _ => P::Infinity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{ellis_witness, permutation_witness};
    use crate::ellis::{check_membership, Verdict};
    use crate::scalar::BigRational;

    type Q = BigRational;

    #[test]
    fn deterministic() {
        let a: Observation<Q> = Sampler::new(7).consistent(Kind::Bm);
        let b: Observation<Q> = Sampler::new(7).consistent(Kind::Bm);
        assert_eq!(a, b);
    }

    #[test]
    fn small_round_trip() {
        let mut s = Sampler::new(1);
        for kind in Kind::ALL {
            for _ in 0..50 {
                let obs: Observation<Q> = s.consistent(kind);
                assert_eq!(
                    check_membership(&obs).unwrap(),
                    Verdict::Consistent,
                    "{obs:?}"
                );
                if kind == Kind::AlphaSym {
                    permutation_witness(&obs).unwrap();
                } else {
                    ellis_witness(&obs).unwrap_or_else(|e| panic!("{e}: {obs:?}"));
                }
            }
        }
    }

    #[test]
    fn small_mutations() {
        let mut s = Sampler::new(2);
        for kind in Kind::ALL {
            for &c in kind.clauses() {
                for _ in 0..30 {
                    let obs: Observation<Q> = s.mutation(kind, c).unwrap();
                    assert_eq!(
                        check_membership(&obs).unwrap(),
                        Verdict::Refuted(c),
                        "{obs:?}"
                    );
                }
            }
        }
    }
}
