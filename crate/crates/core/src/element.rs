//! Interval-valued hesitant fuzzy elements: small rank-sorted multisets of
//! unit intervals.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::interval::{
    operator_kernel, rank_compare, ring_product_kernel, ring_sum_kernel, OperatorKind, UnitInterval,
};

/// Endpoint tolerance used when collapsing duplicates and for the default
/// equality predicates.
pub const DEDUP_TOL: f64 = 1e-9;

pub type Intervals = SmallVec<[UnitInterval; 4]>;

/// How shorter elements are padded before a k-th-wise combination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlignmentPolicy {
    /// Append copies of the largest interval.
    #[default]
    Optimistic,
    /// Prepend copies of the smallest interval.
    Pessimistic,
}

/// How union and intersection pair up the intervals of their operands.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMode {
    /// Align to equal length, then combine the k-th smallest with the k-th
    /// smallest. Duplicates are kept.
    #[default]
    Aligned,
    /// Combine every interval with every interval and drop duplicates.
    Pairwise,
}

/// Mode and padding policy used by union and intersection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Semantics {
    pub mode: CombineMode,
    pub policy: AlignmentPolicy,
}

impl Semantics {
    pub const ALIGNED: Semantics = Semantics {
        mode: CombineMode::Aligned,
        policy: AlignmentPolicy::Optimistic,
    };
    pub const PAIRWISE: Semantics = Semantics {
        mode: CombineMode::Pairwise,
        policy: AlignmentPolicy::Optimistic,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOp {
    Union,
    Intersection,
}

impl SetOp {
    #[inline]
    pub fn kernel(self, a: &UnitInterval, b: &UnitInterval) -> UnitInterval {
        match self {
            SetOp::Union => a.join(b),
            SetOp::Intersection => a.meet(b),
        }
    }
}

/// A nonempty multiset of unit intervals kept sorted by [`rank_compare`].
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<UnitInterval>", into = "Vec<UnitInterval>")]
pub struct Ivhfe {
    items: Intervals,
}

/// Stable insertion sort. The comparator carries a tolerance band, so it is
/// not guaranteed transitive on arbitrary floats and `slice::sort_by` may
/// panic on it.
pub(crate) fn rank_sort(items: &mut [UnitInterval]) {
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && rank_compare(&items[j - 1], &items[j]) == Ordering::Greater {
            items.swap(j - 1, j);
            j -= 1;
        }
    }
}

pub fn is_rank_sorted(items: &[UnitInterval]) -> bool {
    items
        .windows(2)
        .all(|w| rank_compare(&w[0], &w[1]) != Ordering::Greater)
}

fn dedup_sorted(items: &mut Intervals, tol: f64) {
    let mut kept: Intervals = SmallVec::with_capacity(items.len());
    for a in items.iter() {
        if !kept.iter().any(|k| k.approx_eq(a, tol)) {
            kept.push(*a);
        }
    }
    *items = kept;
}

impl Ivhfe {
    pub fn new<I: IntoIterator<Item = UnitInterval>>(intervals: I) -> Result<Self> {
        let items: Intervals = intervals.into_iter().collect();
        if items.is_empty() {
            return Err(Error::EmptyElement);
        }
        Ok(Self::from_unsorted(items))
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let items = pairs
            .iter()
            .map(|&(l, u)| UnitInterval::new(l, u))
            .collect::<Result<Intervals>>()?;
        Self::new(items)
    }

    pub(crate) fn from_unsorted(mut items: Intervals) -> Self {
        debug_assert!(!items.is_empty());
        rank_sort(&mut items);
        Ivhfe { items }
    }

    pub fn singleton(a: UnitInterval) -> Self {
        Ivhfe {
            items: smallvec::smallvec![a],
        }
    }

    /// `{[0, 0]}`, the element carried by an empty soft set.
    pub fn empty() -> Self {
        Self::singleton(UnitInterval::ZERO)
    }

    /// `{[1, 1]}`, the element carried by a full soft set.
    pub fn full() -> Self {
        Self::singleton(UnitInterval::ONE)
    }

    #[inline]
    pub fn intervals(&self) -> &[UnitInterval] {
        &self.items
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// Always false; present for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn smallest(&self) -> UnitInterval {
        self.items[0]
    }

    pub fn largest(&self) -> UnitInterval {
        self.items[self.items.len() - 1]
    }

    pub fn complement(&self) -> Self {
        Self::from_unsorted(self.items.iter().map(UnitInterval::complement).collect())
    }

    /// The distinct intervals, in rank order.
    pub fn dedup(&self) -> Self {
        let mut items = self.items.clone();
        dedup_sorted(&mut items, DEDUP_TOL);
        Ivhfe { items }
    }

    /// Multiset equality with endpoint tolerance `tol`.
    pub fn strict_eq_within(&self, other: &Self, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self
            .items
            .iter()
            .zip(&other.items)
            .all(|(a, b)| a.approx_eq(b, tol))
        {
            return true;
        }
        // Near-ties may sort differently on the two sides; fall back to matching.
        let mut used: SmallVec<[bool; 8]> = smallvec::smallvec![false; other.len()];
        self.items.iter().all(|a| {
            match other
                .items
                .iter()
                .enumerate()
                .position(|(j, b)| !used[j] && a.approx_eq(b, tol))
            {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }

    /// Equality of the underlying sets (duplicates ignored) with tolerance `tol`.
    pub fn equivalent_within(&self, other: &Self, tol: f64) -> bool {
        let covers = |xs: &[UnitInterval], ys: &[UnitInterval]| {
            xs.iter().all(|x| ys.iter().any(|y| x.approx_eq(y, tol)))
        };
        covers(&self.items, &other.items) && covers(&other.items, &self.items)
    }

    pub fn strict_eq(&self, other: &Self) -> bool {
        self.strict_eq_within(other, DEDUP_TOL)
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.equivalent_within(other, DEDUP_TOL)
    }

    /// Componentwise mean of the intervals.
    pub fn score(&self) -> UnitInterval {
        let n = self.items.len() as f64;
        let (sl, su) = self
            .items
            .iter()
            .fold((0.0, 0.0), |(l, u), a| (l + a.lower(), u + a.upper()));
        UnitInterval::clamped(sl / n, su / n)
    }
}

impl fmt::Debug for Ivhfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items.iter()).finish()
    }
}

impl TryFrom<Vec<UnitInterval>> for Ivhfe {
    type Error = Error;

    fn try_from(v: Vec<UnitInterval>) -> Result<Self> {
        Ivhfe::new(v)
    }
}

impl From<Ivhfe> for Vec<UnitInterval> {
    fn from(e: Ivhfe) -> Self {
        e.items.into_vec()
    }
}

/// Pads the shorter operand to the length of the longer one.
pub fn align(a: &Ivhfe, b: &Ivhfe, policy: AlignmentPolicy) -> (Intervals, Intervals) {
    (pad(a, b.len(), policy), pad(b, a.len(), policy))
}

fn pad(a: &Ivhfe, target: usize, policy: AlignmentPolicy) -> Intervals {
    let n = a.len();
    if n >= target {
        return a.items.clone();
    }
    let mut out: Intervals = SmallVec::with_capacity(target);
    match policy {
        AlignmentPolicy::Optimistic => {
            out.extend_from_slice(&a.items);
            out.extend(std::iter::repeat_n(a.largest(), target - n));
        }
        AlignmentPolicy::Pessimistic => {
            out.extend(std::iter::repeat_n(a.smallest(), target - n));
            out.extend_from_slice(&a.items);
        }
    }
    out
}

fn all_pairs<F>(a: &Ivhfe, b: &Ivhfe, kernel: F) -> Ivhfe
where
    F: Fn(&UnitInterval, &UnitInterval) -> UnitInterval,
{
    let mut items: Intervals = SmallVec::with_capacity(a.len() * b.len());
    for x in &a.items {
        for y in &b.items {
            items.push(kernel(x, y));
        }
    }
    rank_sort(&mut items);
    dedup_sorted(&mut items, DEDUP_TOL);
    Ivhfe { items }
}

pub fn combine(a: &Ivhfe, b: &Ivhfe, op: SetOp, sem: Semantics) -> Ivhfe {
    match sem.mode {
        CombineMode::Aligned => {
            if a.len() == b.len() {
                return Ivhfe::from_unsorted(
                    a.items
                        .iter()
                        .zip(&b.items)
                        .map(|(x, y)| op.kernel(x, y))
                        .collect(),
                );
            }
            let (pa, pb) = align(a, b, sem.policy);
            Ivhfe::from_unsorted(pa.iter().zip(&pb).map(|(x, y)| op.kernel(x, y)).collect())
        }
        CombineMode::Pairwise => all_pairs(a, b, |x, y| op.kernel(x, y)),
    }
}

pub fn union(a: &Ivhfe, b: &Ivhfe, sem: Semantics) -> Ivhfe {
    combine(a, b, SetOp::Union, sem)
}

pub fn intersection(a: &Ivhfe, b: &Ivhfe, sem: Semantics) -> Ivhfe {
    combine(a, b, SetOp::Intersection, sem)
}

pub fn ring_sum(a: &Ivhfe, b: &Ivhfe) -> Ivhfe {
    all_pairs(a, b, ring_sum_kernel)
}

pub fn ring_product(a: &Ivhfe, b: &Ivhfe) -> Ivhfe {
    all_pairs(a, b, ring_product_kernel)
}

pub fn apply_operator(kind: OperatorKind, a: &Ivhfe, b: &Ivhfe) -> Ivhfe {
    all_pairs(a, b, |x, y| operator_kernel(kind, x, y))
}

pub fn compare_by_score(a: &Ivhfe, b: &Ivhfe) -> Ordering {
    rank_compare(&a.score(), &b.score())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(pairs: &[(f64, f64)]) -> Ivhfe {
        Ivhfe::from_pairs(pairs).unwrap()
    }

    #[test]
    fn construction_sorts_and_rejects_empty() {
        assert!(matches!(Ivhfe::new(Vec::new()), Err(Error::EmptyElement)));
        let e = el(&[(0.3, 0.8), (0.5, 0.6), (0.3, 0.6)]);
        let got: Vec<[f64; 2]> = e.intervals().iter().map(|&a| a.into()).collect();
        assert_eq!(got, vec![[0.3, 0.6], [0.3, 0.8], [0.5, 0.6]]);
    }

    #[test]
    fn alignment_pads_at_the_right_end() {
        let a = el(&[(0.1, 0.2), (0.5, 0.6)]);
        let b = el(&[(0.3, 0.3)]);
        let (pa, pb) = align(&a, &b, AlignmentPolicy::Optimistic);
        assert_eq!(pa.as_slice(), a.intervals());
        assert_eq!(pb.as_slice(), &[b.largest(), b.largest()]);
        let c = el(&[(0.1, 0.2), (0.3, 0.4), (0.5, 0.6)]);
        let (_, pa) = align(&c, &a, AlignmentPolicy::Pessimistic);
        assert_eq!(pa.as_slice(), &[a.smallest(), a.smallest(), a.largest()]);
    }

    #[test]
    fn aligned_union_keeps_duplicates_pairwise_drops_them() {
        let a = el(&[(0.2, 0.4)]);
        let b = el(&[(0.1, 0.3), (0.1, 0.35)]);
        assert_eq!(union(&a, &b, Semantics::ALIGNED).len(), 2);
        assert_eq!(union(&a, &b, Semantics::PAIRWISE).len(), 1);
    }

    #[test]
    fn score_is_componentwise_mean() {
        let s = el(&[(0.6, 0.8), (0.2, 0.7)]).score();
        assert!(s.approx_eq(&UnitInterval::new(0.4, 0.75).unwrap(), 1e-12));
    }

    #[test]
    fn equality_predicates_differ_on_multiplicity() {
        let a = el(&[(0.3, 0.8)]);
        let b = el(&[(0.3, 0.8), (0.3, 0.8)]);
        assert!(!a.strict_eq(&b));
        assert!(a.equivalent(&b));
    }

    #[test]
    fn ring_sum_of_points_and_intervals() {
        let got = ring_sum(&el(&[(0.3, 0.5)]), &el(&[(0.5, 0.5)]));
        assert!(got.strict_eq(&el(&[(0.65, 0.75)])));
    }
}
