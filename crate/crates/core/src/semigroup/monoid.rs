use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partial::{compose, invert, PartialBijection};

pub const DEFAULT_CLOSURE_CAP: usize = 20_000;

/// A finite monoid given by its multiplication table.
///
/// Elements are indices `0..order`. When the monoid was built from partial
/// bijections the side table [`FiniteMonoid::element`] maps indices back.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteMonoid<K: Ord = u32> {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    zero: Option<usize>,
    star: Option<Vec<usize>>,
    labels: Vec<String>,
    elements: Option<Vec<PartialBijection<K>>>,
    adjoined_zero: bool,
}

/// Wire form of a monoid.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonoidJson {
    pub order: usize,
    pub identity: usize,
    pub zero: Option<usize>,
    pub mul: Vec<Vec<usize>>,
    pub star: Option<Vec<usize>>,
    pub labels: Vec<String>,
}

impl<K: Ord + Clone + fmt::Debug> FiniteMonoid<K> {
    /// Builds a monoid from a square table. The identity and zero are
    /// located by search; associativity is not checked here.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
        star: Option<Vec<usize>>,
    ) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::PreconditionViolated("empty table".into()));
        }
        if labels.len() != order || table.iter().any(|row| row.len() != order) {
            return Err(Error::PreconditionViolated("table is not square".into()));
        }
        if table.iter().flatten().any(|&v| v >= order) {
            return Err(Error::PreconditionViolated(
                "table entry out of range".into(),
            ));
        }
        if let Some(s) = &star {
            if s.len() != order || s.iter().any(|&v| v >= order) {
                return Err(Error::PreconditionViolated(
                    "star table out of range".into(),
                ));
            }
        }
        let mul: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::PreconditionViolated("no identity element".into()))?;
        let zero = (0..order).find(|&z| (0..order).all(|x| at(z, x) == z && at(x, z) == z));
        Ok(FiniteMonoid {
            order,
            mul,
            identity,
            zero,
            star,
            labels,
            elements: None,
            adjoined_zero: false,
        })
    }

    pub fn from_json(json: &MonoidJson) -> Result<Self> {
        let m = Self::from_table(json.mul.clone(), json.labels.clone(), json.star.clone())?;
        if m.order != json.order || m.identity != json.identity || m.zero != json.zero {
            return Err(Error::Parse(
                "order, identity or zero disagree with the table".into(),
            ));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> MonoidJson {
        MonoidJson {
            order: self.order,
            identity: self.identity,
            zero: self.zero,
            mul: (0..self.order)
                .map(|a| self.mul[a * self.order..(a + 1) * self.order].to_vec())
                .collect(),
            star: self.star.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn star(&self) -> Option<&[usize]> {
        self.star.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Whether the zero was adjoined by [`FiniteMonoid::with_zero`].
    pub fn adjoined_zero(&self) -> bool {
        self.adjoined_zero
    }

    pub fn element(&self, i: usize) -> Option<&PartialBijection<K>> {
        self.elements.as_ref().map(|e| &e[i])
    }

    pub fn elements(&self) -> Option<&[PartialBijection<K>]> {
        self.elements.as_deref()
    }

    pub fn index_of(&self, f: &PartialBijection<K>) -> Option<usize> {
        self.elements.as_ref()?.binary_search(f).ok()
    }

    /// The monoid with a zero adjoined (last index), or a copy if it has one.
    pub fn with_zero(&self) -> Self {
        if self.zero.is_some() {
            return self.clone();
        }
        let n = self.order;
        let z = n;
        let mut mul = Vec::with_capacity((n + 1) * (n + 1));
        for a in 0..=n {
            for b in 0..=n {
                mul.push(if a == z || b == z { z } else { self.mul(a, b) });
            }
        }
        let mut labels = self.labels.clone();
        labels.push("0".into());
        FiniteMonoid {
            order: n + 1,
            mul,
            identity: self.identity,
            zero: Some(z),
            star: self.star.as_ref().map(|s| {
                let mut s = s.clone();
                s.push(z);
                s
            }),
            labels,
            elements: None,
            adjoined_zero: true,
        }
    }

    /// Names of the violated monoid axioms; empty when all hold.
    pub fn check_axioms(&self) -> Vec<&'static str> {
        let n = self.order;
        let mut bad = Vec::new();
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        });
        if !assoc {
            bad.push("associativity");
        }
        let e = self.identity;
        if !(0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x) {
            bad.push("identity");
        }
        if let Some(z) = self.zero {
            if !(0..n).all(|x| self.mul(z, x) == z && self.mul(x, z) == z) {
                bad.push("zero");
            }
        }
        if let Some(s) = &self.star {
            if !(0..n).all(|x| s[s[x]] == x) {
                bad.push("star-involutive");
            }
            if !(0..n).all(|x| (0..n).all(|y| s[self.mul(x, y)] == self.mul(s[y], s[x]))) {
                bad.push("star-antimultiplicative");
            }
        }
        bad
    }

    pub(crate) fn raw(
        order: usize,
        mul: Vec<usize>,
        identity: usize,
        zero: Option<usize>,
        star: Option<Vec<usize>>,
        labels: Vec<String>,
        adjoined_zero: bool,
    ) -> Self {
        FiniteMonoid {
            order,
            mul,
            identity,
            zero,
            star,
            labels,
            elements: None,
            adjoined_zero,
        }
    }
}

/// The submonoid generated by `generators` (and the identity of their
/// carrier), with the involution filled in when it is closed under inverses.
pub fn close_under_composition<K>(
    generators: &[PartialBijection<K>],
    cap: usize,
) -> Result<FiniteMonoid<K>>
where
    K: Ord + Clone + fmt::Debug + fmt::Display,
{
    let first = generators
        .first()
        .ok_or_else(|| Error::PreconditionViolated("no generators".into()))?;
    let carrier = first.carrier().clone();
    if generators.iter().any(|g| g.carrier() != &carrier) {
        return Err(Error::CarrierMismatch);
    }
    let id = PartialBijection::identity(carrier.iter().cloned());
    let mut seen: BTreeMap<PartialBijection<K>, ()> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), ());
    queue.push_back(id);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let p = compose(&e, g)?;
            if !seen.contains_key(&p) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "closure",
                        size: seen.len() + 1,
                        cap,
                    });
                }
                seen.insert(p.clone(), ());
                queue.push_back(p);
            }
        }
    }
    let elements: Vec<PartialBijection<K>> = seen.into_keys().collect();
    let n = elements.len();
    let find = |f: &PartialBijection<K>| elements.binary_search(f).ok();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let ab = compose(a, b)?;
            mul.push(find(&ab).expect("closure is closed"));
        }
    }
    let identity = elements
        .iter()
        .position(|f| f.is_identity())
        .expect("identity present");
    let zero = (0..n).find(|&z| (0..n).all(|x| mul[z * n + x] == z && mul[x * n + z] == z));
    let star: Option<Vec<usize>> = elements.iter().map(|f| find(&invert(f))).collect();
    let labels = elements.iter().map(|f| f.to_string()).collect();
    Ok(FiniteMonoid {
        order: n,
        mul,
        identity,
        zero,
        star,
        labels,
        elements: Some(elements),
        adjoined_zero: false,
    })
}

/// Outcome of [`check_inverse_monoid`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InverseReport {
    pub ok: bool,
    /// Elements without exactly one generalized inverse, with their count.
    pub witnesses: Vec<(usize, usize)>,
}

/// Checks that every element `a` has exactly one `b` with `aba = a` and `bab = b`.
pub fn check_inverse_monoid<K: Ord + Clone + fmt::Debug>(s: &FiniteMonoid<K>) -> InverseReport {
    let n = s.order();
    let mut witnesses = Vec::new();
    for a in 0..n {
        let count = (0..n)
            .filter(|&b| s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b)
            .count();
        if count != 1 {
            witnesses.push((a, count));
        }
    }
    InverseReport {
        ok: witnesses.is_empty(),
        witnesses,
    }
}

/// Whether `h` is a monoid homomorphism `s -> t`.
pub fn check_homomorphism<K, L>(h: &[usize], s: &FiniteMonoid<K>, t: &FiniteMonoid<L>) -> bool
where
    K: Ord + Clone + fmt::Debug,
    L: Ord + Clone + fmt::Debug,
{
    let n = s.order();
    if h.len() != n || h.iter().any(|&v| v >= t.order()) {
        return false;
    }
    if h[s.identity()] != t.identity() {
        return false;
    }
    (0..n).all(|a| (0..n).all(|b| h[s.mul(a, b)] == t.mul(h[a], h[b])))
}
