use std::fmt;

use super::ideals::IdealSet;
use super::monoid::FiniteMonoid;
use crate::error::{Error, Result};

/// A Rees quotient together with the quotient map from the original monoid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReesQuotient<K: Ord = u32> {
    pub quotient: FiniteMonoid<K>,
    /// Image of each element of the original monoid.
    pub map: Vec<usize>,
}

/// Collapses the ideal `ideal` of `s` to a zero.
///
/// A zero is adjoined first when `s` has none. The elements of the quotient
/// are those of `s` outside the ideal, in their original order, followed by
/// the zero. The involution is carried over when the ideal is invariant
/// under it.
pub fn rees_quotient<K: Ord + Clone + fmt::Debug>(
    s: &FiniteMonoid<K>,
    ideal: &IdealSet,
) -> Result<ReesQuotient<K>> {
    if ideal.is_empty() {
        return Err(Error::PreconditionViolated("ideal must be nonempty".into()));
    }
    if !ideal.is_ideal_of(s) {
        return Err(Error::NotAnIdeal);
    }
    let t = s.with_zero();
    let mut in_ideal = ideal.mask(t.order());
    if let Some(z) = t.zero() {
        in_ideal[z] = true;
    }
    let keep: Vec<usize> = (0..t.order()).filter(|&i| !in_ideal[i]).collect();
    let zero = keep.len();
    let mut index = vec![zero; t.order()];
    for (new, &old) in keep.iter().enumerate() {
        index[old] = new;
    }
    let order = zero + 1;
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            mul.push(if a == zero || b == zero {
                zero
            } else {
                index[t.mul(keep[a], keep[b])]
            });
        }
    }
    let identity = index[t.identity()];
    let star = t.star().and_then(|st| {
        let invariant = (0..t.order()).all(|i| in_ideal[i] == in_ideal[st[i]]);
        invariant.then(|| {
            keep.iter()
                .map(|&old| index[st[old]])
                .chain(std::iter::once(zero))
                .collect()
        })
    });
    let labels = keep
        .iter()
        .map(|&old| t.label(old).to_string())
        .chain(std::iter::once("0".to_string()))
        .collect();
    let quotient = FiniteMonoid::raw(
        order,
        mul,
        identity,
        Some(zero),
        star,
        labels,
        t.adjoined_zero(),
    );
    let map = index[..s.order()].to_vec();
    Ok(ReesQuotient { quotient, map })
}
