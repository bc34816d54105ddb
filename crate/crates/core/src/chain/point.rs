//! Points of the compactified chains and their total orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gap::{GapCut, Level};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The compactifications modelled by the crate.
///
/// `BmX` is the least linearly ordered compactification of the discrete
/// chain, `BlrX` identifies its two endpoints, `BudX` identifies `(x,-1)` with
/// `(x,+1)`, `BplusX` does both, and `AlphaX` is the one-point
/// compactification. `CmX` and `CX` are the two compactifications of the
/// chain with its order topology.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Space {
    BmX,
    BlrX,
    BudX,
    BplusX,
    AlphaX,
    CmX,
    CX,
}

impl Space {
    pub const ALL: [Space; 7] = [
        Space::BmX,
        Space::BlrX,
        Space::BudX,
        Space::BplusX,
        Space::AlphaX,
        Space::CmX,
        Space::CX,
    ];

    /// Spaces over the discrete chain (as opposed to the order topology).
    pub fn is_discrete_mode(self) -> bool {
        !matches!(self, Space::CmX | Space::CX)
    }

    /// The least compactification of the same lattice.
    pub fn top(self) -> Space {
        if self.is_discrete_mode() {
            Space::BmX
        } else {
            Space::CmX
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::BmX => "BmX",
            Space::BlrX => "BlrX",
            Space::BudX => "BudX",
            Space::BplusX => "BplusX",
            Space::AlphaX => "AlphaX",
            Space::CmX => "CmX",
            Space::CX => "CX",
        }
    }

    fn has_endpoints(self) -> bool {
        matches!(self, Space::BmX | Space::BudX | Space::CmX)
    }

    fn has_infinity(self) -> bool {
        !self.has_endpoints()
    }

    /// Whether `p` is a (canonical) point of this space.
    pub fn admits<S: Scalar>(self, p: &ExtendedPoint<S>) -> bool {
        use ExtendedPoint::*;
        match p {
            Inf | Sup => self.has_endpoints(),
            Infinity => self.has_infinity(),
            Tagged(_, tag) => match self {
                Space::BmX | Space::BlrX => true,
                Space::BudX | Space::BplusX => *tag != Tag::Plus,
                _ => false,
            },
            Gap(_) => !matches!(self, Space::AlphaX),
            Plain(_) => matches!(self, Space::AlphaX | Space::CmX | Space::CX),
        }
    }

    pub fn check<S: Scalar>(self, p: &ExtendedPoint<S>) -> Result<()> {
        if self.admits(p) {
            Ok(())
        } else {
            Err(Error::IllegalPoint {
                space: self,
                point: p.to_string(),
            })
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Space::ALL
            .iter()
            .copied()
            .find(|sp| sp.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown space {s:?}")))
    }
}

/// The copy of the chain a tagged point lives in: `X x {-1, 0, +1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tag {
    Minus,
    Zero,
    Plus,
}

impl Tag {
    pub const ALL: [Tag; 3] = [Tag::Minus, Tag::Zero, Tag::Plus];

    pub fn as_i8(self) -> i8 {
        match self {
            Tag::Minus => -1,
            Tag::Zero => 0,
            Tag::Plus => 1,
        }
    }

    fn text(self) -> &'static str {
        match self {
            Tag::Minus => "-1",
            Tag::Zero => "0",
            Tag::Plus => "+1",
        }
    }
}

/// A point of one of the compactified chains.
///
/// Which variants are legal depends on the [`Space`]; see [`Space::admits`].
/// Identified classes are represented by their canonical member, e.g. the
/// class `{(x,-1), (x,+1)}` of `BudX` is `Tagged(x, Minus)` and the class
/// `{inf, sup}` is `Infinity`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtendedPoint<S> {
    Inf,
    Sup,
    Tagged(S, Tag),
    Gap(GapCut<S>),
    Infinity,
    Plain(S),
}

/// Coarse position used by the order: bottom, a level on the line, or top.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Pos<'a, S: Scalar> {
    Bottom,
    At(LevelRef<'a, S>),
    Top,
}

#[derive(PartialEq, Eq)]
enum LevelRef<'a, S> {
    Rat(&'a S),
    Quad(&'a GapCut<S>),
}

impl<S: Scalar> Ord for LevelRef<'_, S> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LevelRef::Rat(a), LevelRef::Rat(b)) => a.cmp(b),
            (LevelRef::Quad(c), LevelRef::Rat(b)) => c.cmp_rational(b),
            (LevelRef::Rat(a), LevelRef::Quad(c)) => c.cmp_rational(a).reverse(),
            (LevelRef::Quad(c), LevelRef::Quad(d)) => c.cmp(d),
        }
    }
}

impl<S: Scalar> PartialOrd for LevelRef<'_, S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> ExtendedPoint<S> {
    pub fn tagged(x: S, tag: Tag) -> Self {
        ExtendedPoint::Tagged(x, tag)
    }

    pub fn x0(x: S) -> Self {
        ExtendedPoint::Tagged(x, Tag::Zero)
    }

    pub fn gap(r: S, s: S) -> Result<Self> {
        Ok(ExtendedPoint::Gap(GapCut::new(r, s)?))
    }

    /// The rational coordinate of an X-copy point (`Tagged` or `Plain`).
    pub fn coordinate(&self) -> Option<&S> {
        match self {
            ExtendedPoint::Tagged(x, _) | ExtendedPoint::Plain(x) => Some(x),
            _ => None,
        }
    }

    /// The position on the line, if the point is not an endpoint or infinity.
    pub fn level(&self) -> Option<Level<S>> {
        match self {
            ExtendedPoint::Tagged(x, _) | ExtendedPoint::Plain(x) => Some(Level::Rat(x.clone())),
            ExtendedPoint::Gap(c) => Some(Level::Quad(c.clone())),
            _ => None,
        }
    }

    /// Points of the chain itself (as opposed to added points).
    pub fn is_chain_point(&self) -> bool {
        matches!(
            self,
            ExtendedPoint::Tagged(_, Tag::Zero) | ExtendedPoint::Plain(_)
        )
    }

    fn tag_rank(&self) -> i8 {
        match self {
            ExtendedPoint::Tagged(_, t) => t.as_i8(),
            _ => 0,
        }
    }

    fn pos(&self) -> Pos<'_, S> {
        match self {
            ExtendedPoint::Inf | ExtendedPoint::Infinity => Pos::Bottom,
            ExtendedPoint::Sup => Pos::Top,
            ExtendedPoint::Tagged(x, _) | ExtendedPoint::Plain(x) => Pos::At(LevelRef::Rat(x)),
            ExtendedPoint::Gap(c) => Pos::At(LevelRef::Quad(c)),
        }
    }

    fn variant_index(&self) -> u8 {
        match self {
            ExtendedPoint::Inf => 0,
            ExtendedPoint::Sup => 1,
            ExtendedPoint::Tagged(..) => 2,
            ExtendedPoint::Gap(_) => 3,
            ExtendedPoint::Infinity => 4,
            ExtendedPoint::Plain(_) => 5,
        }
    }
}

/// The order is the lexicographic order of `X x {-1,0,+1}` with gaps at
/// their cut, `Inf`/`Infinity` first and `Sup` last. `Infinity` only occurs
/// in spaces without `Inf`, where placing it first cuts the circle there.
impl<S: Scalar> Ord for ExtendedPoint<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pos()
            .cmp(&other.pos())
            .then_with(|| self.tag_rank().cmp(&other.tag_rank()))
            .then_with(|| self.variant_index().cmp(&other.variant_index()))
    }
}

impl<S: Scalar> PartialOrd for ExtendedPoint<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two points of `space`; both must be legal there.
pub fn cmp_extended<S: Scalar>(
    space: Space,
    p: &ExtendedPoint<S>,
    q: &ExtendedPoint<S>,
) -> Result<Ordering> {
    space.check(p)?;
    space.check(q)?;
    Ok(p.cmp(q))
}

/// Shorthand for [`GapCut::new`].
pub fn make_gap<S: Scalar>(r: S, s: S) -> Result<GapCut<S>> {
    GapCut::new(r, s)
}

impl<S: Scalar> fmt::Display for ExtendedPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPoint::Inf => f.write_str("inf"),
            ExtendedPoint::Sup => f.write_str("sup"),
            ExtendedPoint::Infinity => f.write_str("oo"),
            ExtendedPoint::Tagged(x, t) => write!(f, "{}@{}", x.to_text(), t.text()),
            ExtendedPoint::Gap(c) => write!(f, "{c}"),
            ExtendedPoint::Plain(x) => f.write_str(&x.to_text()),
        }
    }
}

impl<S: Scalar> FromStr for ExtendedPoint<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad point {s:?}"));
        let t = s.trim();
        match t {
            "inf" => return Ok(ExtendedPoint::Inf),
            "sup" => return Ok(ExtendedPoint::Sup),
            "oo" => return Ok(ExtendedPoint::Infinity),
            _ => {}
        }
        if let Some(body) = t.strip_prefix("gap(").and_then(|b| b.strip_suffix(')')) {
            let (r, sc) = body.split_once(',').ok_or_else(bad)?;
            let r = S::parse_text(r).ok_or_else(bad)?;
            let sc = S::parse_text(sc).ok_or_else(bad)?;
            return Ok(ExtendedPoint::Gap(GapCut::new(r, sc)?));
        }
        if let Some((x, j)) = t.split_once('@') {
            let x = S::parse_text(x).ok_or_else(bad)?;
            let tag = match j.trim() {
                "-1" => Tag::Minus,
                "0" => Tag::Zero,
                "+1" | "1" => Tag::Plus,
                _ => return Err(bad()),
            };
            return Ok(ExtendedPoint::Tagged(x, tag));
        }
        S::parse_text(t).map(ExtendedPoint::Plain).ok_or_else(bad)
    }
}

impl<S: Scalar> Serialize for ExtendedPoint<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de, S: Scalar> Deserialize<'de> for ExtendedPoint<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, BigRational};

    type Q = BigRational;
    type P = ExtendedPoint<Q>;

    fn t(n: i64, d: i64, tag: Tag) -> P {
        P::Tagged(q(n, d), tag)
    }

    fn sqrt2() -> P {
        P::gap(q(0, 1), q(1, 1)).unwrap()
    }

    #[test]
    fn tags_are_lexicographic() {
        let lt = cmp_extended(Space::BmX, &t(1, 2, Tag::Minus), &t(1, 2, Tag::Zero)).unwrap();
        assert_eq!(lt, Ordering::Less);
        assert!(t(1, 2, Tag::Zero) < t(1, 2, Tag::Plus));
        assert!(t(1, 2, Tag::Plus) < t(2, 3, Tag::Minus));
    }

    #[test]
    fn gap_against_tagged() {
        // sqrt2 < 3/2 since (3/2)^2 = 9/4 > 2
        let o = cmp_extended(Space::BmX, &sqrt2(), &t(3, 2, Tag::Zero)).unwrap();
        assert_eq!(o, Ordering::Less);
        assert!(t(7, 5, Tag::Plus) < sqrt2());
        assert_eq!(
            cmp_extended(Space::BmX, &P::Inf, &sqrt2()).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            cmp_extended(Space::BmX, &P::Sup, &sqrt2()).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn legality() {
        assert!(cmp_extended(Space::BmX, &P::Infinity, &P::Inf).is_err());
        assert!(cmp_extended(Space::CmX, &t(0, 1, Tag::Plus), &P::Inf).is_err());
        assert!(!Space::BudX.admits(&t(0, 1, Tag::Plus)));
        assert!(Space::BudX.admits(&t(0, 1, Tag::Minus)));
        assert!(Space::AlphaX.admits(&P::Plain(q(3, 1))));
        assert!(!Space::AlphaX.admits(&sqrt2()));
        assert!(Space::CX.admits(&sqrt2()));
        assert!(!Space::CX.admits(&P::Sup));
    }

    #[test]
    fn text_forms() {
        for s in [
            "inf",
            "sup",
            "oo",
            "1/2@-1",
            "3@0",
            "-7/3@+1",
            "gap(3,-1)",
            "5/4",
        ] {
            let p: P = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("gap(1,0)".parse::<P>().is_err());
        assert!("1@2".parse::<P>().is_err());
        assert!("nope".parse::<P>().is_err());
        let p: P = "2@1".parse().unwrap();
        assert_eq!(p, t(2, 1, Tag::Plus));
    }

    #[test]
    fn space_names() {
        for sp in Space::ALL {
            assert_eq!(sp.name().parse::<Space>().unwrap(), sp);
        }
    }
}
