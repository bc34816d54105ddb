use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bounds::{bounds, Hi, Lo};
use crate::chain::{ExtendedPoint, Space, Tag};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which group acts on the chain.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// All permutations of the chain.
    Sym,
    /// Order automorphisms.
    #[default]
    Aut,
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sym" => Ok(GroupKind::Sym),
            "aut" => Ok(GroupKind::Aut),
            other => Err(Error::Parse(format!("unknown group {other:?}"))),
        }
    }
}

/// Which membership predicate an observation over `BmX` is meant for.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    /// Self-maps of the compactification.
    #[default]
    Bm,
    /// Maps from the chain itself into the compactification.
    Br,
}

/// Where an observed point is required to go.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", bound = "S: Scalar")]
pub enum Target<S> {
    Exactly {
        value: ExtendedPoint<S>,
    },
    /// The open interval between two points.
    Interval {
        lo: ExtendedPoint<S>,
        hi: ExtendedPoint<S>,
    },
    /// Everything except finitely many chain points (a neighbourhood of
    /// infinity in the one-point compactification).
    Cofinite {
        #[serde(with = "scalar_list")]
        excluded: Vec<S>,
    },
}

mod scalar_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::scalar::Scalar;

    pub fn serialize<S: Scalar, Z: Serializer>(v: &[S], z: Z) -> Result<Z::Ok, Z::Error> {
        v.iter()
            .map(|x| x.to_text())
            .collect::<Vec<_>>()
            .serialize(z)
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(d: D) -> Result<Vec<S>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| {
                S::parse_text(t)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
            })
            .collect()
    }
}

impl<S: Scalar> Target<S> {
    pub fn exactly(value: ExtendedPoint<S>) -> Self {
        Target::Exactly { value }
    }

    pub fn interval(lo: ExtendedPoint<S>, hi: ExtendedPoint<S>) -> Self {
        Target::Interval { lo, hi }
    }

    pub fn cofinite(excluded: Vec<S>) -> Self {
        Target::Cofinite { excluded }
    }

    pub fn exact_value(&self) -> Option<&ExtendedPoint<S>> {
        match self {
            Target::Exactly { value } => Some(value),
            _ => None,
        }
    }

    /// Whether `v` (a point of `space`) satisfies the constraint.
    pub fn contains(&self, space: Space, v: &ExtendedPoint<S>) -> bool {
        match self {
            Target::Exactly { value } => value == v,
            Target::Interval { .. } => match bounds(space, self) {
                Some((lo, hi)) => lo.admits(v) && hi.admits(v),
                None => false,
            },
            Target::Cofinite { excluded } => match v {
                ExtendedPoint::Plain(x) => !excluded.contains(x),
                ExtendedPoint::Infinity => true,
                _ => false,
            },
        }
    }

    /// Whether every point satisfying the constraint is a point of the chain
    /// itself (a `(x,0)` or plain point).
    pub fn forces_chain_point(&self) -> bool {
        matches!(self, Target::Exactly { value } if value.is_chain_point())
    }

    fn check_legal(&self, space: Space) -> Result<()> {
        match self {
            Target::Exactly { value } => space.check(value),
            Target::Interval { lo, hi } => {
                if space == Space::AlphaX {
                    return Err(Error::IllegalObservation(
                        "interval targets are not neighbourhoods in AlphaX".into(),
                    ));
                }
                space.check(lo)?;
                space.check(hi)?;
                let (l, h) = bounds(space, self).expect("interval");
                if !Lo::feasible(&l, &h) {
                    return Err(Error::IllegalObservation(format!(
                        "empty interval ({lo}, {hi})"
                    )));
                }
                Ok(())
            }
            Target::Cofinite { .. } => {
                if space != Space::AlphaX {
                    return Err(Error::IllegalObservation(format!(
                        "cofinite targets only make sense in AlphaX, not {space}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Replaces intervals holding a single point by that point.
    pub(crate) fn normalized(&self, space: Space) -> Self {
        if let Target::Interval { .. } = self {
            if let Some((Lo::Closed(a), Hi::Closed(b))) = bounds(space, self) {
                if a == b {
                    return Target::Exactly { value: a };
                }
            }
        }
        self.clone()
    }
}

impl<S: Scalar> fmt::Display for Target<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Exactly { value } => write!(f, "= {value}"),
            Target::Interval { lo, hi } => write!(f, "in ({lo}, {hi})"),
            Target::Cofinite { excluded } => {
                let e: Vec<String> = excluded.iter().map(|x| x.to_text()).collect();
                write!(f, "not in {{{}}}", e.join(", "))
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Entry<S> {
    pub point: ExtendedPoint<S>,
    pub target: Target<S>,
}

/// Finitely many pointwise constraints on a self-map of a compactification.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Observation<S> {
    pub space: Space,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<Membership>,
    pub entries: Vec<Entry<S>>,
}

impl<S: Scalar> Observation<S> {
    pub fn new(space: Space) -> Self {
        Observation {
            space,
            group: None,
            membership: None,
            entries: Vec::new(),
        }
    }

    pub fn with_group(mut self, group: GroupKind) -> Self {
        self.group = Some(group);
        self
    }

    pub fn with_membership(mut self, membership: Membership) -> Self {
        self.membership = Some(membership);
        self
    }

    pub fn push(&mut self, point: ExtendedPoint<S>, target: Target<S>) -> &mut Self {
        self.entries.push(Entry { point, target });
        self
    }

    pub fn entry(mut self, point: ExtendedPoint<S>, target: Target<S>) -> Self {
        self.push(point, target);
        self
    }

    pub fn exactly(self, point: ExtendedPoint<S>, value: ExtendedPoint<S>) -> Self {
        self.entry(point, Target::exactly(value))
    }

    pub fn target_of(&self, p: &ExtendedPoint<S>) -> Option<&Target<S>> {
        self.entries
            .iter()
            .find(|e| &e.point == p)
            .map(|e| &e.target)
    }

    /// Checks the structural invariants: distinct legal points and legal,
    /// nonempty targets.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            self.space
                .check(&e.point)
                .map_err(|err| Error::IllegalObservation(err.to_string()))?;
            if !seen.insert(&e.point) {
                return Err(Error::IllegalObservation(format!(
                    "point {} observed twice",
                    e.point
                )));
            }
            e.target.check_legal(self.space).map_err(|err| match err {
                Error::IllegalPoint { .. } => Error::IllegalObservation(err.to_string()),
                other => other,
            })?;
        }
        if self.membership == Some(Membership::Br) {
            if self.space != Space::BmX {
                return Err(Error::IllegalObservation(
                    "br membership lives over BmX".into(),
                ));
            }
            if let Some(e) = self
                .entries
                .iter()
                .find(|e| !matches!(e.point, ExtendedPoint::Tagged(_, Tag::Zero)))
            {
                return Err(Error::IllegalObservation(format!(
                    "br observations only constrain chain points, not {}",
                    e.point
                )));
            }
        }
        Ok(())
    }

    /// A copy with single-point intervals replaced by exact targets and the
    /// entries sorted by point.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            e.target = e.target.normalized(self.space);
        }
        out.entries.sort_by(|a, b| a.point.cmp(&b.point));
        out
    }

    /// Replaces every exact chain-valued target `y` by the open interval of
    /// radius `radius` around it.
    pub fn relax_exact(&self, radius: &S) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            let relaxed = match &e.target {
                Target::Exactly {
                    value: ExtendedPoint::Plain(y),
                } if self.space != Space::AlphaX => Some(Target::interval(
                    ExtendedPoint::Plain(y.clone() - radius.clone()),
                    ExtendedPoint::Plain(y.clone() + radius.clone()),
                )),
                Target::Exactly {
                    value: ExtendedPoint::Tagged(y, _),
                } => Some(Target::interval(
                    ExtendedPoint::Tagged(y.clone() - radius.clone(), Tag::Zero),
                    ExtendedPoint::Tagged(y.clone() + radius.clone(), Tag::Zero),
                )),
                _ => None,
            };
            if let Some(t) = relaxed {
                e.target = t;
            }
        }
        out
    }
}

/// Result of a membership check.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Consistent,
    Refuted(Clause),
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }

    pub fn clause(&self) -> Option<Clause> {
        match self {
            Verdict::Consistent => None,
            Verdict::Refuted(c) => Some(*c),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::Consistent => serde_json::json!({"verdict": "consistent"}),
            Verdict::Refuted(c) => serde_json::json!({"verdict": "refuted", "clause": c.label()}),
        }
    }
}

/// The clause of a membership characterization that an observation violates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Clause {
    /// Monotone.
    BmI,
    /// Added points are not sent into the chain.
    BmII,
    /// Only added points can be hit twice.
    BmIII,
    /// The three copies of a point move together.
    BmIV,
    /// The endpoints are fixed.
    BmV,
    BrI,
    BrII,
    /// Two points forced onto the same chain point.
    Collision,
    /// The point at infinity is moved.
    Infinity,
    /// Order reversal between chain-valued points.
    Order,
    Monotone,
    Endpoint,
    /// A point sent to infinity sits between two points sent into the chain.
    Wrap,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::BmI => "(i)",
            Clause::BmII => "(ii)",
            Clause::BmIII => "(iii)",
            Clause::BmIV => "(iv)",
            Clause::BmV => "(v)",
            Clause::BrI => "(i')",
            Clause::BrII => "(ii')",
            Clause::Collision => "collision",
            Clause::Infinity => "infinity",
            Clause::Order => "order",
            Clause::Monotone => "monotone",
            Clause::Endpoint => "endpoint",
            Clause::Wrap => "wrap",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
