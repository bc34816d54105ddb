//! Quadratic cuts of the rationals and exact positions on the line.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sign of `a + b*sqrt(2)`, computed exactly by squaring.
fn sign_sqrt2<S: Scalar>(a: &S, b: &S) -> Ordering {
    let zero = S::zero();
    match (a.cmp(&zero), b.cmp(&zero)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
            Ordering::Greater
        }
        (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => {
            // a > 0 > b: compare a^2 with 2 b^2
            let two_b2 = S::from_i64(2) * b.clone() * b.clone();
            (a.clone() * a.clone()).cmp(&two_b2)
        }
        (Ordering::Less, Ordering::Greater) => {
            let two_b2 = S::from_i64(2) * b.clone() * b.clone();
            two_b2.cmp(&(a.clone() * a.clone()))
        }
    }
}

/// The cut of the rationals at the irrational number `r + s*sqrt(2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GapCut<S> {
    r: S,
    s: S,
}

impl<S: Scalar> GapCut<S> {
    pub fn new(r: S, s: S) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::RationalCut);
        }
        Ok(GapCut { r, s })
    }

    pub fn r(&self) -> &S {
        &self.r
    }

    pub fn s(&self) -> &S {
        &self.s
    }

    /// Compares the cut value with a rational.
    pub fn cmp_rational(&self, q: &S) -> Ordering {
        sign_sqrt2(&(self.r.clone() - q.clone()), &self.s)
    }

    /// `true` iff `q` lies in the lower class of the cut.
    pub fn below(&self, q: &S) -> bool {
        self.cmp_rational(q) == Ordering::Greater
    }

    /// Image under the affine map `v -> a*v + b` (`a` nonzero).
    pub fn affine(&self, a: &S, b: &S) -> Self {
        GapCut {
            r: a.clone() * self.r.clone() + b.clone(),
            s: a.clone() * self.s.clone(),
        }
    }

    /// Rationals `lo < value < hi`, using `sqrt(2)` in `(1, 3/2)`.
    pub fn rational_bracket(&self) -> (S, S) {
        let one = S::one();
        let three_halves = S::from_i64(3) / S::from_i64(2);
        if self.s.is_positive() {
            (
                self.r.clone() + self.s.clone() * one,
                self.r.clone() + self.s.clone() * three_halves,
            )
        } else {
            (
                self.r.clone() + self.s.clone() * three_halves,
                self.r.clone() + self.s.clone() * one,
            )
        }
    }
}

impl<S: Scalar> Ord for GapCut<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_sqrt2(
            &(self.r.clone() - other.r.clone()),
            &(self.s.clone() - other.s.clone()),
        )
    }
}

impl<S: Scalar> PartialOrd for GapCut<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> fmt::Display for GapCut<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gap({},{})", self.r.to_text(), self.s.to_text())
    }
}

/// A position on the line: a rational or a quadratic irrational.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Level<S> {
    Rat(S),
    Quad(GapCut<S>),
}

impl<S: Scalar> Level<S> {
    pub fn affine(&self, a: &S, b: &S) -> Self {
        match self {
            Level::Rat(x) => Level::Rat(a.clone() * x.clone() + b.clone()),
            Level::Quad(c) => Level::Quad(c.affine(a, b)),
        }
    }

    pub fn as_rational(&self) -> Option<&S> {
        match self {
            Level::Rat(x) => Some(x),
            Level::Quad(_) => None,
        }
    }

    /// Rationals strictly below and strictly above (equal to self when rational).
    fn bracket(&self) -> (S, S) {
        match self {
            Level::Rat(x) => (x.clone(), x.clone()),
            Level::Quad(c) => c.rational_bracket(),
        }
    }
}

impl<S: Scalar> Ord for Level<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Level::Rat(a), Level::Rat(b)) => a.cmp(b),
            (Level::Quad(c), Level::Rat(b)) => c.cmp_rational(b),
            (Level::Rat(a), Level::Quad(c)) => c.cmp_rational(a).reverse(),
            (Level::Quad(c), Level::Quad(d)) => c.cmp(d),
        }
    }
}

impl<S: Scalar> PartialOrd for Level<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> fmt::Display for Level<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Rat(x) => write!(f, "{}", x.to_text()),
            Level::Quad(c) => write!(f, "{c}"),
        }
    }
}

/// A rational strictly between `lo` and `hi`. Either bound may be absent
/// (unbounded). Panics if `lo >= hi`.
pub fn rational_between<S: Scalar>(lo: Option<&Level<S>>, hi: Option<&Level<S>>) -> S {
    match (lo, hi) {
        (None, None) => S::zero(),
        (Some(l), None) => l.bracket().1 + S::one(),
        (None, Some(h)) => h.bracket().0 - S::one(),
        (Some(l), Some(h)) => {
            assert!(l < h, "rational_between: empty interval");
            if let (Level::Rat(a), Level::Rat(b)) = (l, h) {
                return S::midpoint(a, b);
            }
            let mut a = l.bracket().0;
            let mut b = h.bracket().1;
            loop {
                let m = S::midpoint(&a, &b);
                let mq = Level::Rat(m.clone());
                if &mq <= l {
                    a = m;
                } else if &mq >= h {
                    b = m;
                } else {
                    return m;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, BigRational};

    type Q = BigRational;

    fn gap(r: Q, s: Q) -> GapCut<Q> {
        GapCut::new(r, s).unwrap()
    }

    #[test]
    fn sqrt2_cut() {
        let c = gap(q(0, 1), q(1, 1));
        assert!(c.below(&q(1, 1)));
        assert!(!c.below(&q(2, 1)));
        assert!(c.below(&q(141, 100)));
        assert!(!c.below(&q(142, 100)));
    }

    #[test]
    fn three_minus_sqrt2() {
        // 3/2 < 3 - sqrt2  <=>  sqrt2 < 3/2  <=>  2 < 9/4
        let c = gap(q(3, 1), q(-1, 1));
        assert!(c.below(&q(3, 2)));
        assert!(!c.below(&q(2, 1)));
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        assert_eq!(GapCut::<Q>::new(q(0, 1), q(0, 1)), Err(Error::RationalCut));
    }

    #[test]
    fn gap_gap_order() {
        let a = gap(q(0, 1), q(1, 1)); // 1.414
        let b = gap(q(3, 1), q(-1, 1)); // 1.586
        let c = gap(q(1, 2), q(1, 2)); // 1.207
        assert!(a < b);
        assert!(c < a);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn between_irrationals() {
        let a = Level::Quad(gap(q(0, 1), q(1, 1)));
        let b = Level::Quad(gap(q(1, 1000000), q(1, 1)));
        let m = rational_between(Some(&a), Some(&b));
        assert!(a < Level::Rat(m.clone()) && Level::Rat(m) < b);
        let lo = rational_between::<Q>(None, Some(&a));
        assert!(Level::Rat(lo) < a);
    }

    #[test]
    fn affine_image() {
        let c = gap(q(0, 1), q(1, 1));
        let d = c.affine(&q(2, 1), &q(1, 1)); // 1 + 2 sqrt2
        assert_eq!(d.r(), &q(1, 1));
        assert_eq!(d.s(), &q(2, 1));
        assert!(d.below(&q(3, 1)) && !d.below(&q(4, 1)));
    }
}
