use std::collections::BTreeSet;

use super::pl::{pl_witness, PLAutomorphism};
use crate::chain::{cell_index, stabilizer_partition, Cell};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A uniform neighbourhood of the diagonal of the chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Entourage<S> {
    /// Same cell of the partition cut out by finitely many points (the
    /// stabilizer partition of those points).
    Stabilizer(Vec<S>),
    /// Same closed cell of the cover `(-oo, t1], [t1, t2], ..., [tm, oo)`.
    Chain(Vec<S>),
}

impl<S: Scalar> Entourage<S> {
    fn cuts(&self) -> Vec<S> {
        let (Entourage::Stabilizer(v) | Entourage::Chain(v)) = self;
        let mut v = v.clone();
        v.sort();
        v.dedup();
        v
    }

    /// `(a, b)` is `k`-close: `k = 1` is the entourage, `k = 2` its square.
    pub fn close(&self, a: &S, b: &S, k: usize) -> bool {
        match self {
            // an equivalence relation: its square is itself
            Entourage::Stabilizer(points) => {
                if points.is_empty() {
                    return true;
                }
                let cells: Vec<Cell<S>> =
                    stabilizer_partition(&self.cuts()).expect("nonempty, distinct");
                cell_index(&cells, a) == cell_index(&cells, b)
            }
            Entourage::Chain(_) => {
                let cuts = self.cuts();
                let span = |y: &S| {
                    let below = cuts.iter().filter(|t| *t < y).count();
                    if cuts.contains(y) {
                        (below, below + 1)
                    } else {
                        (below, below)
                    }
                };
                let ((la, ha), (lb, hb)) = (span(a), span(b));
                la.max(lb) <= ha.min(hb) + (k - 1)
            }
        }
    }

    /// The closeness the construction guarantees: the entourage itself for
    /// stabilizer partitions, its square for chain covers.
    pub fn guaranteed(&self) -> usize {
        match self {
            Entourage::Stabilizer(_) => 1,
            Entourage::Chain(_) => 2,
        }
    }
}

/// Given `g` and `h` that are close on `sigma`, finds `g'` agreeing with `g`
/// on `sigma` (so `g' = g s` with `s` in the pointwise stabilizer of
/// `sigma`) and close to `h` everywhere.
///
/// `g'` is `psi h` for a piecewise-linear `psi` sending `h(x)` to `g(x)` on
/// `sigma` and moving each cut by less than one cell; closeness is then
/// verified on a grid that sees every change of cell.
pub fn star_star_witness<S: Scalar>(
    g: &PLAutomorphism<S>,
    h: &PLAutomorphism<S>,
    sigma: &[S],
    entourage: &Entourage<S>,
) -> Result<PLAutomorphism<S>> {
    let sigma: Vec<S> = sigma
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for s in &sigma {
        if !entourage.close(&g.eval(s), &h.eval(s), 1) {
            return Err(Error::PreconditionViolated(format!(
                "g({0}) and h({0}) are not close",
                s.to_text()
            )));
        }
    }
    let anchors: Vec<(S, S)> = sigma.iter().map(|s| (h.eval(s), g.eval(s))).collect();
    let cuts = entourage.cuts();
    let mut pairs = anchors.clone();
    for (k, t) in cuts.iter().enumerate() {
        if anchors.iter().any(|(a, _)| a == t) {
            continue;
        }
        let below = anchors.iter().filter(|(a, _)| a < t).map(|(_, b)| b).max();
        let above = anchors.iter().filter(|(a, _)| a > t).map(|(_, b)| b).min();
        let image = match entourage {
            Entourage::Stabilizer(_) => t.clone(),
            Entourage::Chain(_) => {
                let third = |d: S| d / S::from_i64(3);
                if below == Some(t) {
                    let hi = match (above, cuts.get(k + 1)) {
                        (Some(a), Some(n)) => a.min(n).clone(),
                        (Some(a), None) => a.clone(),
                        (None, Some(n)) => n.clone(),
                        (None, None) => t.clone() + S::one(),
                    };
                    t.clone() + third(hi - t.clone())
                } else if above == Some(t) {
                    let prev = k.checked_sub(1).map(|i| &cuts[i]);
                    let lo = match (below, prev) {
                        (Some(b), Some(p)) => b.max(p).clone(),
                        (Some(b), None) => b.clone(),
                        (None, Some(p)) => p.clone(),
                        (None, None) => t.clone() - S::one(),
                    };
                    t.clone() - third(t.clone() - lo)
                } else {
                    t.clone()
                }
            }
        };
        pairs.push((t.clone(), image));
    }
    let psi = pl_witness(&pairs)
        .map_err(|e| Error::Inconsistent(format!("no cell-preserving map: {e}")))?;
    let g2 = psi.after(h);
    for s in &sigma {
        if g2.eval(s) != g.eval(s) {
            return Err(Error::Inconsistent(format!("g' moved {}", s.to_text())));
        }
    }
    let k = entourage.guaranteed();
    for x in grid(&[g, h, &g2], &sigma, &cuts, &[h, &g2]) {
        if !entourage.close(&h.eval(&x), &g2.eval(&x), k) {
            return Err(Error::Inconsistent(format!(
                "g' is not close to h at {}",
                x.to_text()
            )));
        }
    }
    Ok(g2)
}

/// Breakpoints, `sigma`, preimages of the cuts under each map in `pull`,
/// the midpoints between consecutive such points and one point beyond each
/// end.
fn grid<S: Scalar>(
    maps: &[&PLAutomorphism<S>],
    sigma: &[S],
    cuts: &[S],
    pull: &[&PLAutomorphism<S>],
) -> Vec<S> {
    let mut pts: BTreeSet<S> = sigma.iter().cloned().collect();
    for m in maps {
        pts.extend(m.breakpoints().iter().map(|(x, _)| x.clone()));
    }
    for m in pull {
        pts.extend(cuts.iter().map(|t| m.preimage(t)));
    }
    let base: Vec<S> = pts.iter().cloned().collect();
    let (Some(first), Some(last)) = (base.first(), base.last()) else {
        return vec![S::zero()];
    };
    pts.insert(first.clone() - S::one());
    pts.insert(last.clone() + S::one());
    for w in base.windows(2) {
        pts.insert(S::midpoint(&w[0], &w[1]));
    }
    pts.into_iter().collect()
}
