//! Ground sets, subset masks, nested-pair enumeration and `ℕ ∪ {∞}`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// Largest ground set for which full families and tables are materialized.
pub const MAX_EXHAUSTIVE: usize = 16;

/// Largest ground set a [`SubsetMask`] can address.
pub const MAX_GROUND: usize = 32;

/// A subset of a finite ground set, one bit per element index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> SubsetMask {
        debug_assert!(n <= MAX_GROUND);
        if n == 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> SubsetMask {
        SubsetMask(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> SubsetMask {
        SubsetMask(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_superset(self, other: SubsetMask) -> bool {
        other.is_subset(self)
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, i: usize) -> SubsetMask {
        SubsetMask(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> SubsetMask {
        SubsetMask(self.0 & !(1 << i))
    }

    /// `|self \ other|`.
    #[inline]
    pub fn diff_size(self, other: SubsetMask) -> usize {
        self.difference(other).len()
    }

    /// Element indices in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// Packs the bits of `self` selected by `within` into the low positions
    /// (bit-parallel extract). Bits of `self` outside `within` are dropped.
    pub fn compress(self, within: SubsetMask) -> SubsetMask {
        let mut out = 0u32;
        for (k, i) in within.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << k;
            }
        }
        SubsetMask(out)
    }

    /// Inverse of [`SubsetMask::compress`]: spreads the low bits of `self`
    /// onto the positions of `within`.
    pub fn expand(self, within: SubsetMask) -> SubsetMask {
        let mut out = 0u32;
        for (k, i) in within.iter().enumerate() {
            if self.contains(k) {
                out |= 1 << i;
            }
        }
        SubsetMask(out)
    }
}

/// Iterator over the element indices of a mask.
#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Subsets of a fixed mask in increasing numeric order (carry-rippler).
#[derive(Clone, Debug)]
pub struct Subsets {
    set: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let current = self.next?;
        let following = current.wrapping_sub(self.set) & self.set;
        self.next = (following != 0).then_some(following);
        Some(SubsetMask(current))
    }
}

/// An ordered list of distinct element labels; element `i` is bit `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<GroundSet> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                n: labels.len(),
                max: MAX_GROUND,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// Ground set labelled `0, 1, .., n-1`.
    pub fn indexed(n: usize) -> Result<GroundSet> {
        GroundSet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    /// Rejects masks with bits outside the ground set.
    pub fn check(&self, mask: SubsetMask) -> Result<()> {
        if mask.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask: mask.0,
                n: self.len(),
            })
        }
    }

    pub fn check_exhaustive(&self) -> Result<()> {
        if self.len() > MAX_EXHAUSTIVE {
            Err(Error::GroundTooLarge {
                n: self.len(),
                max: MAX_EXHAUSTIVE,
            })
        } else {
            Ok(())
        }
    }

    pub fn mask_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<SubsetMask> {
        let mut mask = SubsetMask::EMPTY;
        for label in labels {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            mask = mask.with(i);
        }
        Ok(mask)
    }

    /// Sub-ground-set formed by the elements of `mask`, in index order.
    pub fn select(&self, mask: SubsetMask) -> GroundSet {
        GroundSet::new(mask.iter().map(|i| self.labels[i].clone()))
            .expect("labels of a valid ground set stay distinct")
    }

    /// `|a \ b|`, after checking both masks belong to this ground set.
    pub fn diff_size(&self, a: SubsetMask, b: SubsetMask) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.diff_size(b))
    }

    /// Every nested pair `(A, B)` with `B ⊆ A`; `3^n` in total.
    pub fn nested_pairs(&self) -> Result<NestedPairs> {
        self.check_exhaustive()?;
        Ok(NestedPairs::new(self.len()))
    }

    /// Brace-delimited, comma-separated labels in ascending index order.
    pub fn format(&self, mask: SubsetMask) -> String {
        let mut out = String::from("{");
        for (k, i) in mask.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.labels[i]);
        }
        out.push('}');
        out
    }
}

/// Stream of nested pairs `(A, B)`, `B ⊆ A ⊆ {0..n-1}`, ordered by `A` then `B`.
///
/// The cursor is the pair last produced, so a consumer can resume (or split
/// the space by `A`) with [`NestedPairs::starting_at`].
#[derive(Clone, Debug)]
pub struct NestedPairs {
    full: u32,
    cursor: Option<(u32, u32)>,
}

impl NestedPairs {
    pub fn new(n: usize) -> NestedPairs {
        NestedPairs::starting_at(n, SubsetMask::EMPTY)
    }

    /// Pairs whose first component is `a` or numerically larger.
    pub fn starting_at(n: usize, a: SubsetMask) -> NestedPairs {
        let full = SubsetMask::full(n).0;
        let cursor = (a.0 & !full == 0).then_some((a.0, 0));
        NestedPairs { full, cursor }
    }
}

impl Iterator for NestedPairs {
    type Item = (SubsetMask, SubsetMask);

    fn next(&mut self) -> Option<Self::Item> {
        let (a, b) = self.cursor?;
        let next_b = b.wrapping_sub(a) & a;
        self.cursor = if next_b != 0 {
            Some((a, next_b))
        } else if a < self.full {
            Some((a + 1, 0))
        } else {
            None
        };
        Some((SubsetMask(a), SubsetMask(b)))
    }
}

/// A value in `ℕ ∪ {∞}`.
///
/// Addition saturates at `∞` and panics on finite overflow; use
/// [`ExtendedNat::checked_add`] to observe overflow instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(u64),
    Infinite,
}

impl ExtendedNat {
    pub const ZERO: ExtendedNat = ExtendedNat::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedNat::Finite(v) => Some(v),
            ExtendedNat::Infinite => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == ExtendedNat::ZERO
    }

    pub fn checked_add(self, rhs: ExtendedNat) -> Option<ExtendedNat> {
        match (self, rhs) {
            (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => {
                a.checked_add(b).map(ExtendedNat::Finite)
            }
            _ => Some(ExtendedNat::Infinite),
        }
    }

    /// `max(self - k, 0)`; `∞ - k = ∞`.
    pub fn saturating_sub(self, k: u64) -> ExtendedNat {
        match self {
            ExtendedNat::Finite(v) => ExtendedNat::Finite(v.saturating_sub(k)),
            ExtendedNat::Infinite => ExtendedNat::Infinite,
        }
    }
}

impl From<u64> for ExtendedNat {
    fn from(v: u64) -> Self {
        ExtendedNat::Finite(v)
    }
}

impl From<usize> for ExtendedNat {
    fn from(v: usize) -> Self {
        ExtendedNat::Finite(v as u64)
    }
}

impl Add for ExtendedNat {
    type Output = ExtendedNat;

    fn add(self, rhs: ExtendedNat) -> ExtendedNat {
        self.checked_add(rhs)
            .expect("ExtendedNat addition overflowed")
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => a.cmp(b),
            (ExtendedNat::Finite(_), ExtendedNat::Infinite) => Ordering::Less,
            (ExtendedNat::Infinite, ExtendedNat::Finite(_)) => Ordering::Greater,
            (ExtendedNat::Infinite, ExtendedNat::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(v) => write!(f, "{v}"),
            ExtendedNat::Infinite => f.write_str("inf"),
        }
    }
}
