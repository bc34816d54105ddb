//! Quotient maps between the compactifications.

use super::point::{ExtendedPoint, Space, Tag};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A non-identity quotient map of compactifications.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Arrow {
    pub from: Space,
    pub to: Space,
    /// At most one fiber has more than one point.
    pub elementary: bool,
}

const ARROWS: [(Space, Space, bool); 10] = [
    (Space::BmX, Space::BlrX, true),
    (Space::BmX, Space::BudX, false),
    (Space::BmX, Space::BplusX, false),
    (Space::BmX, Space::AlphaX, true),
    (Space::BlrX, Space::BplusX, false),
    (Space::BlrX, Space::AlphaX, true),
    (Space::BudX, Space::BplusX, true),
    (Space::BudX, Space::AlphaX, true),
    (Space::BplusX, Space::AlphaX, true),
    (Space::CmX, Space::CX, true),
];

/// All non-identity arrows of both lattices, transitively closed.
pub fn lattice_arrows() -> Vec<Arrow> {
    ARROWS
        .iter()
        .map(|&(from, to, elementary)| Arrow {
            from,
            to,
            elementary,
        })
        .collect()
}

/// The arrow `from -> to`, if any. Identity arrows are reported as elementary.
pub fn arrow(from: Space, to: Space) -> Option<Arrow> {
    if from == to {
        return Some(Arrow {
            from,
            to,
            elementary: true,
        });
    }
    ARROWS
        .iter()
        .find(|a| a.0 == from && a.1 == to)
        .map(|&(from, to, elementary)| Arrow {
            from,
            to,
            elementary,
        })
}

/// The canonical preimage of `p` in the least compactification.
pub fn lift<S: Scalar>(space: Space, p: &ExtendedPoint<S>) -> Result<ExtendedPoint<S>> {
    space.check(p)?;
    Ok(match p {
        ExtendedPoint::Infinity => ExtendedPoint::Inf,
        ExtendedPoint::Plain(x) if space == Space::AlphaX => {
            ExtendedPoint::Tagged(x.clone(), Tag::Zero)
        }
        other => other.clone(),
    })
}

/// Image of a point of the least compactification in `to`.
fn project<S: Scalar>(to: Space, p: ExtendedPoint<S>) -> ExtendedPoint<S> {
    use ExtendedPoint::*;
    match to {
        Space::BmX | Space::CmX => p,
        Space::BlrX | Space::CX => match p {
            Inf | Sup => Infinity,
            other => other,
        },
        Space::BudX => match p {
            Tagged(x, Tag::Plus) => Tagged(x, Tag::Minus),
            other => other,
        },
        Space::BplusX => match p {
            Inf | Sup => Infinity,
            Tagged(x, Tag::Plus) => Tagged(x, Tag::Minus),
            other => other,
        },
        Space::AlphaX => match p {
            Tagged(x, Tag::Zero) => Plain(x),
            _ => Infinity,
        },
    }
}

/// Applies the quotient map `from -> to` to `p`.
pub fn quotient_point<S: Scalar>(
    from: Space,
    to: Space,
    p: &ExtendedPoint<S>,
) -> Result<ExtendedPoint<S>> {
    if arrow(from, to).is_none() {
        return Err(Error::NoArrow { from, to });
    }
    if from == to {
        from.check(p)?;
        return Ok(p.clone());
    }
    Ok(project(to, lift(from, p)?))
}

/// Composes quotient maps along a path of spaces.
pub fn quotient_along<S: Scalar>(path: &[Space], p: &ExtendedPoint<S>) -> Result<ExtendedPoint<S>> {
    let mut cur = p.clone();
    for w in path.windows(2) {
        cur = quotient_point(w[0], w[1], &cur)?;
    }
    Ok(cur)
}

/// Whether `p` is in the collapsed fiber of the elementary arrow `from -> to`.
pub fn in_collapsed_fiber<S: Scalar>(from: Space, to: Space, p: &ExtendedPoint<S>) -> Result<bool> {
    let a = arrow(from, to).ok_or(Error::NoArrow { from, to })?;
    if !a.elementary {
        return Err(Error::NotElementary { from, to });
    }
    if from == to {
        return Ok(false);
    }
    let image = quotient_point(from, to, p)?;
    Ok(image == ExtendedPoint::Infinity)
}
