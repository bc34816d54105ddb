use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chain::{ExtendedPoint, Level, Space};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A piecewise-linear order automorphism of the rationals with finitely
/// many rational breakpoints and slope 1 outside them.
///
/// The breakpoint list is kept minimal, so equal maps compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PLAutomorphism<S> {
    points: Vec<(S, S)>,
}

impl<S: Scalar> PLAutomorphism<S> {
    pub fn identity() -> Self {
        PLAutomorphism { points: Vec::new() }
    }

    /// Translation by `d`.
    pub fn shift(d: S) -> Self {
        Self::normalized(vec![(S::zero(), d)])
    }

    pub fn breakpoints(&self) -> &[(S, S)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.is_empty()
    }

    fn normalized(mut points: Vec<(S, S)>) -> Self {
        loop {
            let n = points.len();
            let slope = |i: usize, j: usize, pts: &[(S, S)]| -> S {
                (pts[j].1.clone() - pts[i].1.clone()) / (pts[j].0.clone() - pts[i].0.clone())
            };
            let redundant = (0..n).find(|&i| {
                let left = if i == 0 {
                    S::one()
                } else {
                    slope(i - 1, i, &points)
                };
                let right = if i + 1 == n {
                    S::one()
                } else {
                    slope(i, i + 1, &points)
                };
                left == right && (n > 1 || points[0].0 == points[0].1)
            });
            match redundant {
                Some(i) => {
                    points.remove(i);
                }
                None => return PLAutomorphism { points },
            }
        }
    }

    /// `(a, b)` with the map equal to `v -> a*v + b` on the piece containing
    /// `v` (either piece at a breakpoint).
    fn piece(&self, v: &Level<S>) -> (S, S) {
        let pts = &self.points;
        let Some((x0, y0)) = pts.first() else {
            return (S::one(), S::zero());
        };
        if *v <= Level::Rat(x0.clone()) {
            return (S::one(), y0.clone() - x0.clone());
        }
        for w in pts.windows(2) {
            let ((xa, ya), (xb, yb)) = (&w[0], &w[1]);
            if *v <= Level::Rat(xb.clone()) {
                let a = (yb.clone() - ya.clone()) / (xb.clone() - xa.clone());
                let b = ya.clone() - a.clone() * xa.clone();
                return (a, b);
            }
        }
        let (xn, yn) = pts.last().expect("nonempty");
        (S::one(), yn.clone() - xn.clone())
    }

    pub fn eval(&self, x: &S) -> S {
        let (a, b) = self.piece(&Level::Rat(x.clone()));
        a * x.clone() + b
    }

    pub fn eval_level(&self, v: &Level<S>) -> Level<S> {
        let (a, b) = self.piece(v);
        v.affine(&a, &b)
    }

    /// The canonical extension to a compactification: copies and cuts move
    /// with their base point, endpoints and infinity are fixed.
    pub fn extend(&self, space: Space, p: &ExtendedPoint<S>) -> Result<ExtendedPoint<S>> {
        space.check(p)?;
        Ok(match p {
            ExtendedPoint::Tagged(x, t) => ExtendedPoint::Tagged(self.eval(x), *t),
            ExtendedPoint::Plain(x) => ExtendedPoint::Plain(self.eval(x)),
            ExtendedPoint::Gap(c) => {
                let (a, b) = self.piece(&Level::Quad(c.clone()));
                ExtendedPoint::Gap(c.affine(&a, &b))
            }
            other => other.clone(),
        })
    }

    /// `self` after `h`.
    pub fn after(&self, h: &Self) -> Self {
        let inv = h.inverse();
        let mut xs: Vec<S> = h
            .points
            .iter()
            .map(|(x, _)| x.clone())
            .chain(self.points.iter().map(|(x, _)| inv.eval(x)))
            .collect();
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&h.eval(&x));
                (x, y)
            })
            .collect();
        Self::normalized(points)
    }

    pub fn inverse(&self) -> Self {
        PLAutomorphism {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// The preimage of `y`.
    pub fn preimage(&self, y: &S) -> S {
        self.inverse().eval(y)
    }
}

/// The piecewise-linear automorphism through the given points, with slope 1
/// outside them.
pub fn pl_witness<S: Scalar>(pairs: &[(S, S)]) -> Result<PLAutomorphism<S>> {
    let mut pts = pairs.to_vec();
    pts.sort();
    pts.dedup();
    for w in pts.windows(2) {
        if w[0].0 == w[1].0 || w[0].1 >= w[1].1 {
            return Err(Error::NotMonotonePairs(format!(
                "({}, {}) and ({}, {})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    Ok(PLAutomorphism::normalized(pts))
}

impl<S: Scalar> fmt::Display for PLAutomorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(x, y)| format!("{}->{}", x.to_text(), y.to_text()))
            .collect();
        write!(f, "pl[{}]", parts.join(", "))
    }
}

impl<S: Scalar> Serialize for PLAutomorphism<S> {
    fn serialize<Z: Serializer>(&self, z: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let v: Vec<[String; 2]> = self
            .points
            .iter()
            .map(|(x, y)| [x.to_text(), y.to_text()])
            .collect();
        v.serialize(z)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for PLAutomorphism<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        let pairs = raw
            .iter()
            .map(|[x, y]| match (S::parse_text(x), S::parse_text(y)) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(serde::de::Error::custom(format!("bad pair ({x}, {y})"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        pl_witness(&pairs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{GapCut, Tag};
    use crate::scalar::{q, BigRational};

    type Q = BigRational;

    #[test]
    fn interpolates() {
        let g = pl_witness(&[(q::<Q>(0, 1), q(0, 1)), (q(1, 1), q(2, 1))]).unwrap();
        assert_eq!(g.eval(&q(1, 2)), q(1, 1));
        assert_eq!(g.eval(&q(-3, 1)), q(-3, 1));
        assert_eq!(g.eval(&q(5, 1)), q(6, 1));
        let t = pl_witness(&[(q::<Q>(0, 1), q(1, 1))]).unwrap();
        assert_eq!(t, PLAutomorphism::shift(q(1, 1)));
        assert_eq!(t.eval(&q(7, 1)), q(8, 1));
    }

    #[test]
    fn rejects_reversals() {
        let err = pl_witness(&[(q::<Q>(0, 1), q(1, 1)), (q(1, 1), q(0, 1))]);
        assert!(matches!(err, Err(Error::NotMonotonePairs(_))));
        let dup = pl_witness(&[(q::<Q>(0, 1), q(1, 1)), (q(0, 1), q(2, 1))]);
        assert!(matches!(dup, Err(Error::NotMonotonePairs(_))));
    }

    #[test]
    fn normal_form() {
        let g = pl_witness(&[
            (q::<Q>(0, 1), q(0, 1)),
            (q(1, 1), q(1, 1)),
            (q(2, 1), q(2, 1)),
        ])
        .unwrap();
        assert!(g.is_identity());
        let h = pl_witness(&[(q::<Q>(0, 1), q(1, 1)), (q(1, 1), q(2, 1))]).unwrap();
        assert_eq!(h.breakpoints().len(), 1);
    }

    #[test]
    fn group_laws() {
        let g = pl_witness(&[(q::<Q>(0, 1), q(0, 1)), (q(1, 1), q(3, 1))]).unwrap();
        let h = pl_witness(&[(q::<Q>(-1, 1), q(0, 1)), (q(2, 1), q(5, 2))]).unwrap();
        assert!(g.after(&g.inverse()).is_identity());
        assert!(g.inverse().after(&g).is_identity());
        for x in [-5, -1, 0, 1, 2, 3, 7] {
            let x = q::<Q>(x, 2);
            assert_eq!(g.after(&h).eval(&x), g.eval(&h.eval(&x)));
        }
    }

    #[test]
    fn extends_to_points() {
        let g = pl_witness(&[(q::<Q>(0, 1), q(0, 1)), (q(1, 1), q(2, 1))]).unwrap();
        let c = GapCut::new(q(0, 1), q(1, 2)).unwrap(); // sqrt(2)/2
        let img = g.extend(Space::BmX, &ExtendedPoint::Gap(c)).unwrap();
        assert_eq!(
            img,
            ExtendedPoint::Gap(GapCut::new(q(0, 1), q(1, 1)).unwrap())
        );
        let t = g
            .extend(Space::BmX, &ExtendedPoint::Tagged(q(1, 1), Tag::Plus))
            .unwrap();
        assert_eq!(t, ExtendedPoint::Tagged(q(2, 1), Tag::Plus));
        assert_eq!(
            g.extend(Space::CX, &ExtendedPoint::Infinity).unwrap(),
            ExtendedPoint::Infinity
        );
        assert!(g.extend(Space::CX, &ExtendedPoint::Inf).is_err());
    }

    #[test]
    fn json() {
        let g = pl_witness(&[(q::<Q>(0, 1), q(0, 1)), (q(1, 1), q(2, 1))]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"[["0","0"],["1","2"]]"#);
        assert_eq!(serde_json::from_str::<PLAutomorphism<Q>>(&s).unwrap(), g);
    }
}
