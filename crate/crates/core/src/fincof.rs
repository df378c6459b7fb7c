//! Two matroids on the integers with equal rank functions.
//!
//! The ground set is `ℤ` and only finite or cofinite subsets are modelled.
//! [`SymbolicMatroid::FreeZ`] has every subset independent;
//! [`SymbolicMatroid::AlmostFreeZ`] has every subset except `ℤ` itself.
//! Both assign rank `|X|` to every `X` (infinite sets hold arbitrarily large
//! finite independent subsets), yet their relative ranks differ at
//! `(ℤ, ℤ-0)`.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::sets::{ExtendedNat, GroundSet};

/// A finite or cofinite subset of `ℤ`.
///
/// `Finite(s)` is `s`; `Cofinite(s)` is `ℤ \ s`. The two variants never
/// denote the same set, so structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinCofSet {
    Finite(BTreeSet<i64>),
    Cofinite(BTreeSet<i64>),
}

impl FinCofSet {
    pub fn empty() -> FinCofSet {
        FinCofSet::Finite(BTreeSet::new())
    }

    /// `ℤ`.
    pub fn all() -> FinCofSet {
        FinCofSet::Cofinite(BTreeSet::new())
    }

    pub fn finite<I: IntoIterator<Item = i64>>(elements: I) -> FinCofSet {
        FinCofSet::Finite(elements.into_iter().collect())
    }

    /// `ℤ` minus the given elements.
    pub fn cofinite<I: IntoIterator<Item = i64>>(missing: I) -> FinCofSet {
        FinCofSet::Cofinite(missing.into_iter().collect())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FinCofSet::Finite(_))
    }

    pub fn is_all(&self) -> bool {
        matches!(self, FinCofSet::Cofinite(s) if s.is_empty())
    }

    pub fn support(&self) -> &BTreeSet<i64> {
        match self {
            FinCofSet::Finite(s) | FinCofSet::Cofinite(s) => s,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        match self {
            FinCofSet::Finite(s) => s.contains(&x),
            FinCofSet::Cofinite(s) => !s.contains(&x),
        }
    }

    /// `|S|`: the support size when finite, `∞` otherwise.
    pub fn card(&self) -> ExtendedNat {
        match self {
            FinCofSet::Finite(s) => ExtendedNat::from(s.len()),
            FinCofSet::Cofinite(_) => ExtendedNat::Infinite,
        }
    }

    pub fn complement(&self) -> FinCofSet {
        match self {
            FinCofSet::Finite(s) => FinCofSet::Cofinite(s.clone()),
            FinCofSet::Cofinite(s) => FinCofSet::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &FinCofSet) -> FinCofSet {
        use FinCofSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(f), Cofinite(c)) | (Cofinite(c), Finite(f)) => Cofinite(c - f),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
        }
    }

    pub fn intersection(&self, other: &FinCofSet) -> FinCofSet {
        use FinCofSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a & b),
            (Finite(f), Cofinite(c)) | (Cofinite(c), Finite(f)) => Finite(f - c),
            (Cofinite(a), Cofinite(b)) => Cofinite(a | b),
        }
    }

    pub fn difference(&self, other: &FinCofSet) -> FinCofSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &FinCofSet) -> bool {
        self.difference(other) == FinCofSet::empty()
    }

    pub fn insert(&self, x: i64) -> FinCofSet {
        self.union(&FinCofSet::finite([x]))
    }

    pub fn remove(&self, x: i64) -> FinCofSet {
        self.difference(&FinCofSet::finite([x]))
    }
}

impl fmt::Debug for FinCofSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FinCofSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<i64>| {
            s.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FinCofSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            FinCofSet::Cofinite(s) if s.is_empty() => f.write_str("Z"),
            FinCofSet::Cofinite(s) => write!(f, "Z-{{{}}}", list(s)),
        }
    }
}

/// Deterministic sample of finite and cofinite sets with supports drawn from
/// `-span..=span`. Roughly half are cofinite; `∅` and `ℤ` appear regularly.
pub fn sample_sets(seed: u64, count: usize, span: i64) -> Vec<FinCofSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.random_range(0..=4usize);
            let support: BTreeSet<i64> =
                (0..size).map(|_| rng.random_range(-span..=span)).collect();
            if rng.random_bool(0.5) {
                FinCofSet::Finite(support)
            } else {
                FinCofSet::Cofinite(support)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolicMatroid {
    /// `(ℤ, 2^ℤ)`.
    FreeZ,
    /// `(ℤ, 2^ℤ \ {ℤ})`.
    AlmostFreeZ,
}

impl SymbolicMatroid {
    pub const BOTH: [SymbolicMatroid; 2] = [SymbolicMatroid::FreeZ, SymbolicMatroid::AlmostFreeZ];

    pub fn name(self) -> &'static str {
        match self {
            SymbolicMatroid::FreeZ => "M",
            SymbolicMatroid::AlmostFreeZ => "M'",
        }
    }

    pub fn is_independent(self, set: &FinCofSet) -> bool {
        match self {
            SymbolicMatroid::FreeZ => true,
            SymbolicMatroid::AlmostFreeZ => !set.is_all(),
        }
    }

    /// `max{|I| : I independent, I ⊆ X}`, which is `|X|` in both matroids.
    pub fn rank(self, set: &FinCofSet) -> ExtendedNat {
        set.card()
    }

    /// Relative rank of `B ⊆ A`.
    ///
    /// In `FreeZ` the witness pair is `(A, B)` itself, giving `|A \ B|`.
    /// In `AlmostFreeZ` every set but `ℤ` is independent, so the same witness
    /// works unless `A = ℤ`. Then a maximal independent subset of `ℤ` is
    /// `ℤ - y`. If `B` is cofinite take `J = B` (or `ℤ - y` when `B = ℤ`) and
    /// `I = ℤ - y` with `y ∉ B`, losing one element of `A \ B`. If `B` is
    /// finite, `A \ B` is infinite and so is `|I \ J|`.
    pub fn relative_rank(self, a: &FinCofSet, b: &FinCofSet) -> Result<ExtendedNat> {
        if !b.is_subset(a) {
            return Err(Error::NotNested);
        }
        let gap = a.difference(b).card();
        Ok(match self {
            SymbolicMatroid::AlmostFreeZ if a.is_all() && !b.is_finite() => gap.saturating_sub(1),
            _ => gap,
        })
    }

    /// `I` is r-independent when `r(I|I-x) > 0` for every `x ∈ I`.
    ///
    /// The relative rank of `(I, I-x)` depends on `x` only through whether
    /// `I` is `ℤ`, so the cofinite part of `I` is represented by a single
    /// element beyond its support.
    pub fn is_r_independent(self, set: &FinCofSet) -> bool {
        let probes: Vec<i64> = match set {
            FinCofSet::Finite(s) => s.iter().copied().collect(),
            FinCofSet::Cofinite(s) => vec![s.last().map_or(0, |m| m + 1)],
        };
        probes.into_iter().all(|x| {
            let value = self
                .relative_rank(set, &set.remove(x))
                .expect("I - x is a subset of I");
            !value.is_zero()
        })
    }

    /// The restriction to the finite window `{0, .., n-1}`.
    pub fn window(self, n: usize) -> Result<Matroid> {
        let ground = GroundSet::indexed(n)?;
        let family: Vec<_> = ground
            .full()
            .subsets()
            .filter(|s| self.is_independent(&FinCofSet::finite(s.iter().map(|i| i as i64))))
            .collect();
        Matroid::from_explicit_family(ground, family)
    }
}

/// A nested pair on which the two symbolic matroids disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishingWitness {
    pub a: FinCofSet,
    pub b: FinCofSet,
    pub free: ExtendedNat,
    pub almost_free: ExtendedNat,
}

/// `(ℤ, ℤ-0)`, where the relative ranks are `1` and `0`.
pub fn distinguishing_witness() -> DistinguishingWitness {
    let a = FinCofSet::all();
    let b = a.remove(0);
    let free = SymbolicMatroid::FreeZ
        .relative_rank(&a, &b)
        .expect("Z-0 is a subset of Z");
    let almost_free = SymbolicMatroid::AlmostFreeZ
        .relative_rank(&a, &b)
        .expect("Z-0 is a subset of Z");
    DistinguishingWitness {
        a,
        b,
        free,
        almost_free,
    }
}
