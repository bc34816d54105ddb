//! Orbit partitions of pointwise stabilizers of finite sets.

use std::fmt;

use super::gap::Level;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One cell of an interval partition of the rationals. Interval cells are open.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Cell<S> {
    Below(S),
    Point(S),
    Between(S, S),
    Above(S),
}

impl<S: Scalar> Cell<S> {
    pub fn contains(&self, x: &S) -> bool {
        match self {
            Cell::Below(b) => x < b,
            Cell::Point(p) => x == p,
            Cell::Between(a, b) => a < x && x < b,
            Cell::Above(a) => x > a,
        }
    }

    /// Membership for irrational positions; `Point` cells never contain one.
    pub fn contains_level(&self, v: &Level<S>) -> bool {
        let r = |s: &S| Level::Rat(s.clone());
        match self {
            Cell::Below(b) => v < &r(b),
            Cell::Point(p) => v == &r(p),
            Cell::Between(a, b) => &r(a) < v && v < &r(b),
            Cell::Above(a) => v > &r(a),
        }
    }
}

impl<S: Scalar> fmt::Display for Cell<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Below(b) => write!(f, "(<-,{})", b.to_text()),
            Cell::Point(p) => write!(f, "{{{}}}", p.to_text()),
            Cell::Between(a, b) => write!(f, "({},{})", a.to_text(), b.to_text()),
            Cell::Above(a) => write!(f, "({},->)", a.to_text()),
        }
    }
}

/// The orbits of the stabilizer of `sigma` on the discrete chain:
/// `(<-,x1), {x1}, (x1,x2), ..., {xn}, (xn,->)` for sorted `sigma`.
pub fn stabilizer_partition<S: Scalar>(sigma: &[S]) -> Result<Vec<Cell<S>>> {
    let mut xs = sigma.to_vec();
    xs.sort();
    let before = xs.len();
    xs.dedup();
    if xs.is_empty() || xs.len() != before {
        return Err(Error::EmptySigma);
    }
    let mut cells = Vec::with_capacity(2 * xs.len() + 1);
    cells.push(Cell::Below(xs[0].clone()));
    for (i, x) in xs.iter().enumerate() {
        cells.push(Cell::Point(x.clone()));
        match xs.get(i + 1) {
            Some(y) => cells.push(Cell::Between(x.clone(), y.clone())),
            None => cells.push(Cell::Above(x.clone())),
        }
    }
    Ok(cells)
}

/// Index of the cell containing `x`.
pub fn cell_index<S: Scalar>(cells: &[Cell<S>], x: &S) -> Option<usize> {
    cells.iter().position(|c| c.contains(x))
}

/// Whether every cell of `fine` lies inside a cell of `coarse`.
pub fn refines<S: Scalar>(fine: &[Cell<S>], coarse: &[Cell<S>]) -> bool {
    fine.iter().all(|c| {
        let probe = match c {
            Cell::Point(p) => p.clone(),
            Cell::Below(b) => b.clone() - S::one(),
            Cell::Above(a) => a.clone() + S::one(),
            Cell::Between(a, b) => S::midpoint(a, b),
        };
        let Some(k) = cell_index(coarse, &probe) else {
            return false;
        };
        let host = &coarse[k];
        match c {
            Cell::Point(_) => true,
            Cell::Below(b) => match host {
                Cell::Below(hb) => b <= hb,
                _ => false,
            },
            Cell::Above(a) => match host {
                Cell::Above(ha) => a >= ha,
                _ => false,
            },
            Cell::Between(a, b) => match host {
                Cell::Below(hb) => b <= hb,
                Cell::Above(ha) => a >= ha,
                Cell::Between(ha, hb) => a >= ha && b <= hb,
                Cell::Point(_) => false,
            },
        }
    })
}
