//! Order-theoretic views of targets: lower and upper bounds in the ordered
//! compactifications, and the sets of line positions they allow.

use super::observation::Target;
use crate::chain::{ExtendedPoint, Level, Space, Tag};
use crate::scalar::Scalar;

type P<S> = ExtendedPoint<S>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Lo<S> {
    Open(P<S>),
    Closed(P<S>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Hi<S> {
    Open(P<S>),
    Closed(P<S>),
    Top,
}

impl<S: Scalar> Lo<S> {
    pub fn point(&self) -> &P<S> {
        match self {
            Lo::Open(p) | Lo::Closed(p) => p,
        }
    }

    pub fn admits(&self, v: &P<S>) -> bool {
        match self {
            Lo::Open(p) => v > p,
            Lo::Closed(p) => v >= p,
        }
    }

    /// Whether some `a` above `lo` and some `b` below `hi` have `a <= b`.
    pub fn feasible(lo: &Lo<S>, hi: &Hi<S>) -> bool {
        match (lo, hi) {
            (_, Hi::Top) => true,
            (Lo::Closed(a), Hi::Closed(b)) => a <= b,
            (Lo::Open(a) | Lo::Closed(a), Hi::Open(b) | Hi::Closed(b)) => a < b,
        }
    }
}

impl<S: Scalar> Hi<S> {
    pub fn admits(&self, v: &P<S>) -> bool {
        match self {
            Hi::Open(p) => v < p,
            Hi::Closed(p) => v <= p,
            Hi::Top => true,
        }
    }
}

/// Bounds of a target in an ordered space. Open bounds at a tagged point of
/// `BmX` next to an isolated point are closed up, so that `feasible` is exact.
pub(crate) fn bounds<S: Scalar>(space: Space, t: &Target<S>) -> Option<(Lo<S>, Hi<S>)> {
    match t {
        Target::Exactly { value } => Some((Lo::Closed(value.clone()), Hi::Closed(value.clone()))),
        Target::Interval { lo, hi } => {
            let jumps = matches!(space, Space::BmX | Space::BlrX);
            let l = match lo {
                P::Tagged(x, Tag::Minus) if jumps => Lo::Closed(P::Tagged(x.clone(), Tag::Zero)),
                P::Tagged(x, Tag::Zero) if jumps => Lo::Closed(P::Tagged(x.clone(), Tag::Plus)),
                other => Lo::Open(other.clone()),
            };
            let h = match hi {
                P::Infinity => Hi::Top,
                P::Tagged(x, Tag::Plus) if jumps => Hi::Closed(P::Tagged(x.clone(), Tag::Zero)),
                P::Tagged(x, Tag::Zero) if jumps => Hi::Closed(P::Tagged(x.clone(), Tag::Minus)),
                other => Hi::Open(other.clone()),
            };
            Some((l, h))
        }
        Target::Cofinite { .. } => None,
    }
}

/// A convex set of rationals, bounds given as `(level, closed)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct LineInterval<S> {
    pub lo: Option<(Level<S>, bool)>,
    pub hi: Option<(Level<S>, bool)>,
}

impl<S: Scalar> LineInterval<S> {
    pub fn all() -> Self {
        LineInterval { lo: None, hi: None }
    }

    pub fn exactly(y: S) -> Self {
        LineInterval {
            lo: Some((Level::Rat(y.clone()), true)),
            hi: Some((Level::Rat(y), true)),
        }
    }

    pub fn is_nonempty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some((a, ca)), Some((b, cb))) => a < b || (a == b && *ca && *cb),
            _ => true,
        }
    }

    #[cfg(test)]
    pub fn contains(&self, y: &S) -> bool {
        let v = Level::Rat(y.clone());
        let lo_ok = match &self.lo {
            None => true,
            Some((a, closed)) => &v > a || (*closed && &v == a),
        };
        let hi_ok = match &self.hi {
            None => true,
            Some((b, closed)) => &v < b || (*closed && &v == b),
        };
        lo_ok && hi_ok
    }

    /// Raises the lower bound to `(level, closed)` if that is tighter.
    pub fn raise(&mut self, level: Level<S>, closed: bool) {
        let tighter = match &self.lo {
            None => true,
            Some((a, ca)) => level > *a || (level == *a && *ca && !closed),
        };
        if tighter {
            self.lo = Some((level, closed));
        }
    }

    pub fn lower(&mut self, level: Level<S>, closed: bool) {
        let tighter = match &self.hi {
            None => true,
            Some((b, cb)) => level < *b || (level == *b && *cb && !closed),
        };
        if tighter {
            self.hi = Some((level, closed));
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = self.clone();
        if let Some((l, c)) = &other.lo {
            out.raise(l.clone(), *c);
        }
        if let Some((h, c)) = &other.hi {
            out.lower(h.clone(), *c);
        }
        out
    }

    /// A rational in the set, preferring interior points; `None` if empty.
    pub fn pick(&self) -> Option<S> {
        if !self.is_nonempty() {
            return None;
        }
        match (&self.lo, &self.hi) {
            (Some((a, _)), Some((b, _))) if a == b => a.as_rational().cloned(),
            (lo, hi) => Some(crate::chain::rational_between(
                lo.as_ref().map(|(l, _)| l),
                hi.as_ref().map(|(h, _)| h),
            )),
        }
    }
}

/// The rationals `y` such that the copy of `y` selected by `tag` (or the
/// plain point `y` when `tag` is `None`) lies between `lo` and `hi`.
pub(crate) fn slice<S: Scalar>(
    lo: &Lo<S>,
    hi: &Hi<S>,
    tag: Option<Tag>,
) -> Option<LineInterval<S>> {
    let rank = tag.map(Tag::as_i8).unwrap_or(0);
    let lower = match lo {
        Lo::Open(P::Inf | P::Infinity) | Lo::Closed(P::Inf | P::Infinity) => None,
        Lo::Open(P::Sup) | Lo::Closed(P::Sup) => return None,
        Lo::Open(P::Gap(c)) | Lo::Closed(P::Gap(c)) => Some((Level::Quad(c.clone()), false)),
        Lo::Open(p) => {
            let x = p.coordinate().expect("chain point").clone();
            let t = tag_rank(p);
            Some((Level::Rat(x), tag.is_some() && rank > t))
        }
        Lo::Closed(p) => {
            let x = p.coordinate().expect("chain point").clone();
            Some((Level::Rat(x), rank >= tag_rank(p)))
        }
    };
    let upper = match hi {
        Hi::Top | Hi::Open(P::Sup) | Hi::Closed(P::Sup) => None,
        Hi::Open(P::Inf | P::Infinity) => return None,
        Hi::Closed(P::Inf | P::Infinity) => return None,
        Hi::Open(P::Gap(c)) | Hi::Closed(P::Gap(c)) => Some((Level::Quad(c.clone()), false)),
        Hi::Open(p) => {
            let x = p.coordinate().expect("chain point").clone();
            Some((Level::Rat(x), tag.is_some() && rank < tag_rank(p)))
        }
        Hi::Closed(p) => {
            let x = p.coordinate().expect("chain point").clone();
            Some((Level::Rat(x), rank <= tag_rank(p)))
        }
    };
    let out = LineInterval {
        lo: lower,
        hi: upper,
    };
    out.is_nonempty().then_some(out)
}

/// The irrational levels `l` with `Gap(l)` between `lo` and `hi`, as an open
/// interval of levels.
pub(crate) fn gap_slice<S: Scalar>(lo: &Lo<S>, hi: &Hi<S>) -> Option<LineInterval<S>> {
    let lower = match lo.point() {
        P::Inf | P::Infinity => None,
        P::Sup => return None,
        p => Some((p.level().expect("line point"), false)),
    };
    let upper = match hi {
        Hi::Top => None,
        Hi::Open(p) | Hi::Closed(p) => match p {
            P::Sup => None,
            P::Inf | P::Infinity => return None,
            p => Some((p.level().expect("line point"), false)),
        },
    };
    let out = LineInterval {
        lo: lower,
        hi: upper,
    };
    match (&out.lo, &out.hi) {
        (Some((a, _)), Some((b, _))) if a >= b => None,
        _ => Some(out),
    }
}

fn tag_rank<S: Scalar>(p: &P<S>) -> i8 {
    match p {
        P::Tagged(_, t) => t.as_i8(),
        _ => 0,
    }
}
