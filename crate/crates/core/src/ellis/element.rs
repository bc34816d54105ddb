use std::fmt;

use super::observation::{GroupKind, Observation, Target};
use crate::chain::{ExtendedPoint, Space};
use crate::error::{Error, Result};
use crate::partial::PartialBijection;
use crate::scalar::Scalar;

/// An element of the enveloping semigroup of a permutation group acting on
/// the one-point compactification that sends every point outside a finite
/// set to infinity.
///
/// On the finite carrier it acts as the partial bijection `core`; every
/// other point, and infinity, goes to infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EllisElementFin<S: Ord> {
    core: PartialBijection<S>,
    group: GroupKind,
}

impl<S: Scalar> EllisElementFin<S> {
    /// For `GroupKind::Aut` the core must preserve order.
    pub fn new(core: PartialBijection<S>, group: GroupKind) -> Result<Self> {
        if group == GroupKind::Aut && !core.is_order_preserving() {
            return Err(Error::PreconditionViolated(format!(
                "{core:?} is not order preserving"
            )));
        }
        Ok(EllisElementFin { core, group })
    }

    pub fn core(&self) -> &PartialBijection<S> {
        &self.core
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn apply(&self, p: &ExtendedPoint<S>) -> Result<ExtendedPoint<S>> {
        Space::AlphaX.check(p)?;
        Ok(match p {
            ExtendedPoint::Plain(x) => match self.core.apply(x) {
                Some(y) => ExtendedPoint::Plain(y.clone()),
                None => ExtendedPoint::Infinity,
            },
            _ => ExtendedPoint::Infinity,
        })
    }

    /// The exact observation of the element at `points`.
    pub fn observe(&self, points: &[ExtendedPoint<S>]) -> Result<Observation<S>> {
        let mut obs = Observation::new(Space::AlphaX).with_group(self.group);
        for p in points {
            obs.push(p.clone(), Target::exactly(self.apply(p)?));
        }
        Ok(obs)
    }
}

impl<S: Scalar> fmt::Display for EllisElementFin<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .core
            .pairs()
            .map(|(a, b)| format!("{}->{}", a.to_text(), b.to_text()))
            .collect();
        write!(f, "{{{}; else oo}}", pairs.join(", "))
    }
}

/// `f` after `g`, evaluated pointwise on the carrier and at infinity.
pub fn ellis_compose<S: Scalar>(
    f: &EllisElementFin<S>,
    g: &EllisElementFin<S>,
) -> Result<EllisElementFin<S>> {
    if f.core.carrier() != g.core.carrier() {
        return Err(Error::CarrierMismatch);
    }
    let mut pairs = Vec::new();
    for x in g.core.carrier() {
        if let ExtendedPoint::Plain(y) = f.apply(&g.apply(&ExtendedPoint::Plain(x.clone()))?)? {
            pairs.push((x.clone(), y));
        }
    }
    let group = if f.group == GroupKind::Aut && g.group == GroupKind::Aut {
        GroupKind::Aut
    } else {
        GroupKind::Sym
    };
    let core = PartialBijection::new(g.core.carrier().iter().cloned(), pairs)?;
    Ok(EllisElementFin { core, group })
}

/// The restriction of an element to its carrier.
pub fn xi_restrict<S: Scalar>(e: &EllisElementFin<S>) -> PartialBijection<S> {
    e.core.clone()
}
