//! Finite partial bijections and the monoids `I_n` and `J_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_ENUM_CAP: usize = 6;

/// An injective partial map of a finite totally ordered carrier into itself.
///
/// Equality is extensional: two maps are equal when they have the same
/// carrier, the same domain and the same values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PartialBijection<K: Ord> {
    map: BTreeMap<K, K>,
    carrier: BTreeSet<K>,
}

impl<K: Ord + Clone + fmt::Debug> PartialBijection<K> {
    pub fn new(
        carrier: impl IntoIterator<Item = K>,
        pairs: impl IntoIterator<Item = (K, K)>,
    ) -> Result<Self> {
        let carrier: BTreeSet<K> = carrier.into_iter().collect();
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (x, y) in pairs {
            if !carrier.contains(&x) || !carrier.contains(&y) {
                return Err(Error::PreconditionViolated(format!(
                    "pair {x:?}->{y:?} leaves the carrier"
                )));
            }
            if !seen.insert(y.clone()) {
                return Err(Error::PreconditionViolated(format!("{y:?} is hit twice")));
            }
            if map.insert(x.clone(), y).is_some() {
                return Err(Error::PreconditionViolated(format!(
                    "{x:?} is mapped twice"
                )));
            }
        }
        Ok(PartialBijection { map, carrier })
    }

    pub fn identity(carrier: impl IntoIterator<Item = K>) -> Self {
        let carrier: BTreeSet<K> = carrier.into_iter().collect();
        let map = carrier.iter().map(|x| (x.clone(), x.clone())).collect();
        PartialBijection { map, carrier }
    }

    pub fn empty(carrier: impl IntoIterator<Item = K>) -> Self {
        PartialBijection {
            map: BTreeMap::new(),
            carrier: carrier.into_iter().collect(),
        }
    }

    pub fn carrier(&self) -> &BTreeSet<K> {
        &self.carrier
    }

    pub fn apply(&self, x: &K) -> Option<&K> {
        self.map.get(x)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&K, &K)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &K> {
        self.map.keys()
    }

    pub fn range(&self) -> BTreeSet<K> {
        self.map.values().cloned().collect()
    }

    /// Size of the domain.
    pub fn rank(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.len() == self.carrier.len() && self.map.iter().all(|(x, y)| x == y)
    }

    /// `self` after `g`: defined on `D(g)` intersected with `g^-1(D(self))`.
    pub fn after(&self, g: &Self) -> Result<Self> {
        compose(self, g)
    }

    pub fn inverse(&self) -> Self {
        invert(self)
    }

    /// `x < y` in the domain implies `f(x) < f(y)`.
    pub fn is_order_preserving(&self) -> bool {
        self.map
            .values()
            .zip(self.map.values().skip(1))
            .all(|(a, b)| a < b)
    }
}

/// `f` after `g`.
pub fn compose<K: Ord + Clone + fmt::Debug>(
    f: &PartialBijection<K>,
    g: &PartialBijection<K>,
) -> Result<PartialBijection<K>> {
    if f.carrier != g.carrier {
        return Err(Error::CarrierMismatch);
    }
    let map = g
        .map
        .iter()
        .filter_map(|(x, y)| f.map.get(y).map(|z| (x.clone(), z.clone())))
        .collect();
    Ok(PartialBijection {
        map,
        carrier: f.carrier.clone(),
    })
}

pub fn invert<K: Ord + Clone>(f: &PartialBijection<K>) -> PartialBijection<K> {
    PartialBijection {
        map: f.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        carrier: f.carrier.clone(),
    }
}

pub fn rank<K: Ord>(f: &PartialBijection<K>) -> usize {
    f.map.len()
}

pub fn is_order_preserving<K: Ord + Clone + fmt::Debug>(f: &PartialBijection<K>) -> bool {
    f.is_order_preserving()
}

/// Which monoid of partial maps to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    /// All partial bijections (the symmetric inverse monoid).
    I,
    /// Order-preserving partial bijections.
    J,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::I => "I",
            Mode::J => "J",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" => Ok(Mode::I),
            "J" | "j" => Ok(Mode::J),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if (n - x + 1) as usize + cur.len() < k {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn arrangements(pool: &[u32], k: usize) -> Vec<Vec<u32>> {
    fn go(
        pool: &[u32],
        k: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            if !used[i] {
                used[i] = true;
                cur.push(pool[i]);
                go(pool, k, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        pool,
        k,
        &mut vec![false; pool.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// All elements of `I_n` or `J_n` on the carrier `{1..n}`, sorted.
pub fn enumerate_monoid(n: usize, mode: Mode, cap: usize) -> Result<Vec<PartialBijection<u32>>> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be positive".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "carrier size",
            size: n,
            cap,
        });
    }
    let n32 = n as u32;
    let all: Vec<u32> = (1..=n32).collect();
    let mut out = Vec::new();
    for k in 0..=n {
        let doms = subsets(n32, k);
        for d in &doms {
            let images = match mode {
                Mode::I => arrangements(&all, k),
                Mode::J => subsets(n32, k),
            };
            for r in images {
                let map = d.iter().copied().zip(r).collect();
                out.push(PartialBijection {
                    map,
                    carrier: all.iter().copied().collect(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

impl<K: Ord + fmt::Display> fmt::Display for PartialBijection<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        f.write_str("}")
    }
}

/// Parses the `{x1->y1, x2->y2}` form over the given carrier.
pub fn parse_partial<K>(
    carrier: impl IntoIterator<Item = K>,
    text: &str,
) -> Result<PartialBijection<K>>
where
    K: Ord + Clone + fmt::Debug + FromStr,
{
    let bad = || Error::Parse(format!("bad partial map {text:?}"));
    let body = text
        .trim()
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(bad)?;
    let mut pairs = Vec::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (x, y) = item.split_once("->").ok_or_else(bad)?;
        let x = x.trim().parse::<K>().map_err(|_| bad())?;
        let y = y.trim().parse::<K>().map_err(|_| bad())?;
        pairs.push((x, y));
    }
    PartialBijection::new(carrier, pairs)
}

impl<K: Ord + fmt::Display> Serialize for PartialBijection<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.map.len()))?;
        for (x, y) in &self.map {
            seq.serialize_element(&[x.to_string(), y.to_string()])?;
        }
        seq.end()
    }
}
