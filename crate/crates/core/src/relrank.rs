//! Explicit relative-rank tables and the relative rank axioms.
//!
//! A [`RelRankTable`] assigns a value in `ℕ ∪ {∞}` to every nested pair
//! `B ⊆ A` of a finite ground set. Nothing about the values is presumed:
//! [`RelRankTable::check_axioms`] evaluates
//!
//! * **R1** `0 ≤ r(A|B) ≤ |A \ B|`,
//! * **R2** `r(A|A∩B) ≥ r(A∪B|B)`,
//! * **R3** `r(A|C) = r(A|B) + r(B|C)` for `C ⊆ B ⊆ A`,
//! * **R4** if `r(B+x|B) = 0` for every `x ∈ A \ B` then `r(A|B) = 0`
//!   (the union rule instantiated with the single-element cover of `A`),
//! * **R5** some r-independent `I ⊆ A` has `r(A|I) = 0` and `r(B|B∩I) = 0`,
//!
//! where `I` is r-independent when `r(I|I-x) > 0` for every `x ∈ I`.
//! A table satisfying all five is the relative rank function of the matroid
//! formed by its r-independent sets; [`RelRankTable::reconstruct`] rebuilds
//! that matroid and compares tables entry by entry.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::sets::{ExtendedNat, GroundSet, NestedPairs, SubsetMask};

/// Largest ground set for which a full table (`3^n` entries) is built.
pub const MAX_TABLE: usize = 12;

/// Witnesses kept per axiom in a [`RelRankReport`]; counts are always exact.
pub const WITNESS_LIMIT: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelAxiom {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl RelAxiom {
    pub const ALL: [RelAxiom; 5] = [
        RelAxiom::R1,
        RelAxiom::R2,
        RelAxiom::R3,
        RelAxiom::R4,
        RelAxiom::R5,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for RelAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.index() + 1)
    }
}

/// One concrete failure of a relative rank axiom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    R1 {
        a: SubsetMask,
        b: SubsetMask,
        value: ExtendedNat,
    },
    /// `left = r(A|A∩B)` is smaller than `right = r(A∪B|B)`.
    R2 {
        a: SubsetMask,
        b: SubsetMask,
        left: ExtendedNat,
        right: ExtendedNat,
    },
    /// `r(A|C) ≠ r(A|B) + r(B|C)`.
    R3 {
        a: SubsetMask,
        b: SubsetMask,
        c: SubsetMask,
        whole: ExtendedNat,
        upper: ExtendedNat,
        lower: ExtendedNat,
    },
    /// Every `r(B+x|B)` with `x ∈ A \ B` is zero but `r(A|B)` is not.
    R4 {
        a: SubsetMask,
        b: SubsetMask,
        value: ExtendedNat,
    },
    /// No r-independent set spans the pair.
    R5 { a: SubsetMask, b: SubsetMask },
}

impl Violation {
    pub fn axiom(&self) -> RelAxiom {
        match self {
            Violation::R1 { .. } => RelAxiom::R1,
            Violation::R2 { .. } => RelAxiom::R2,
            Violation::R3 { .. } => RelAxiom::R3,
            Violation::R4 { .. } => RelAxiom::R4,
            Violation::R5 { .. } => RelAxiom::R5,
        }
    }

    /// Re-evaluates the violation on `table`.
    pub fn retriggers(&self, table: &RelRankTable) -> bool {
        match *self {
            Violation::R1 { a, b, .. } => r1_fails(table, a, b),
            Violation::R2 { a, b, .. } => r2_fails(table, a, b),
            Violation::R3 { a, b, c, .. } => {
                c.is_subset(b) && b.is_subset(a) && r3_fails(table, a, b, c)
            }
            Violation::R4 { a, b, .. } => b.is_subset(a) && r4_fails(table, a, b),
            Violation::R5 { a, b } => {
                let independent = table.r_independent_flags();
                b.is_subset(a) && r5_fails(table, &independent, a, b)
            }
        }
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        let f = |s: SubsetMask| ground.format(s);
        match *self {
            Violation::R1 { a, b, value } => format!(
                "R1 violation: r({}|{}) = {} exceeds |A\\B| = {}",
                f(a),
                f(b),
                value,
                a.diff_size(b)
            ),
            Violation::R2 { a, b, left, right } => format!(
                "R2 violation: r({}|{}) = {} < r({}|{}) = {} for A = {}, B = {}",
                f(a),
                f(a.intersection(b)),
                left,
                f(a.union(b)),
                f(b),
                right,
                f(a),
                f(b)
            ),
            Violation::R3 {
                a,
                b,
                c,
                whole,
                upper,
                lower,
            } => format!(
                "R3 violation: r({}|{}) = {} but r({}|{}) + r({}|{}) = {} + {}",
                f(a),
                f(c),
                whole,
                f(a),
                f(b),
                f(b),
                f(c),
                upper,
                lower
            ),
            Violation::R4 { a, b, value } => format!(
                "R4 violation: r({}|{}) = {} although r(B+x|B) = 0 for every x in {}",
                f(a),
                f(b),
                value,
                f(a.difference(b))
            ),
            Violation::R5 { a, b } => format!(
                "R5 violation: no r-independent I inside {} has r({}|I) = 0 and r({}|{}∩I) = 0",
                f(a),
                f(a),
                f(b),
                f(b)
            ),
        }
    }
}

/// Violation count and the first [`WITNESS_LIMIT`] witnesses of one axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomStatus {
    pub violations: usize,
    pub witnesses: Vec<Violation>,
}

impl AxiomStatus {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn merge(mut self, other: AxiomStatus) -> AxiomStatus {
        self.violations += other.violations;
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort();
        self.witnesses.truncate(WITNESS_LIMIT);
        self
    }

    fn push(&mut self, v: Violation) {
        self.violations += 1;
        self.witnesses.push(v);
    }
}

/// Per-axiom results of [`RelRankTable::check_axioms`]; independent of the
/// thread schedule that produced it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelRankReport {
    statuses: [AxiomStatus; 5],
}

impl RelRankReport {
    pub fn status(&self, axiom: RelAxiom) -> &AxiomStatus {
        &self.statuses[axiom.index()]
    }

    pub fn passed(&self, axiom: RelAxiom) -> bool {
        self.status(axiom).passed()
    }

    pub fn all_passed(&self) -> bool {
        self.statuses.iter().all(AxiomStatus::passed)
    }

    pub fn failed_axioms(&self) -> Vec<RelAxiom> {
        RelAxiom::ALL
            .into_iter()
            .filter(|&ax| !self.passed(ax))
            .collect()
    }

    /// Kept witnesses of every axiom, R1 first.
    pub fn witnesses(&self) -> impl Iterator<Item = &Violation> {
        self.statuses.iter().flat_map(|s| s.witnesses.iter())
    }

    fn merge(self, other: RelRankReport) -> RelRankReport {
        let [a1, a2, a3, a4, a5] = self.statuses;
        let [b1, b2, b3, b4, b5] = other.statuses;
        RelRankReport {
            statuses: [
                a1.merge(b1),
                a2.merge(b2),
                a3.merge(b3),
                a4.merge(b4),
                a5.merge(b5),
            ],
        }
    }

    fn finish(mut self) -> RelRankReport {
        for s in &mut self.statuses {
            s.witnesses.sort();
            s.witnesses.truncate(WITNESS_LIMIT);
        }
        self
    }
}

/// The conditional consequences among the axioms on a finite ground set:
/// R1–R3 force R4, and R1–R4 with finite `r(E|∅)` force R5.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RedundancyReport {
    pub r1_to_r3: bool,
    pub total_finite: bool,
    pub r4: bool,
    pub r5: bool,
}

impl RedundancyReport {
    /// True when the table satisfies R1–R3 yet one of the implied axioms fails.
    pub fn contradiction(&self) -> bool {
        self.r1_to_r3 && (!self.r4 || (self.total_finite && !self.r5))
    }
}

/// Result of [`RelRankTable::reconstruct`].
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub matroid: Matroid,
    /// First nested pair (in stream order) where the rebuilt table differs.
    pub mismatch: Option<(SubsetMask, SubsetMask)>,
}

impl Reconstruction {
    pub fn roundtrip_ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Value of `r(A|B)` for every nested pair of a finite ground set.
pub struct RelRankTable {
    ground: GroundSet,
    // Entry (A, B) lives at Σ_{i∈A} 3^i + Σ_{i∈B} 3^i.
    weights: Arc<[u32]>,
    values: Vec<ExtendedNat>,
    report: OnceLock<RelRankReport>,
}

impl Clone for RelRankTable {
    fn clone(&self) -> Self {
        RelRankTable {
            ground: self.ground.clone(),
            weights: Arc::clone(&self.weights),
            values: self.values.clone(),
            report: self.report.clone(),
        }
    }
}

impl PartialEq for RelRankTable {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.values == other.values
    }
}

impl Eq for RelRankTable {}

impl fmt::Debug for RelRankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (a, b, v) in self.entries() {
            map.entry(
                &format!("{}|{}", self.ground.format(a), self.ground.format(b)),
                &v,
            );
        }
        map.finish()
    }
}

fn ternary_weights(n: usize) -> Arc<[u32]> {
    (0..1u32 << n)
        .map(|s| {
            SubsetMask(s)
                .iter()
                .map(|i| 3u32.pow(i as u32))
                .sum::<u32>()
        })
        .collect()
}

impl RelRankTable {
    /// Builds a table by evaluating `f` on every nested pair.
    pub fn from_fn<F>(ground: GroundSet, mut f: F) -> Result<RelRankTable>
    where
        F: FnMut(SubsetMask, SubsetMask) -> ExtendedNat,
    {
        if ground.len() > MAX_TABLE {
            return Err(Error::GroundTooLarge {
                n: ground.len(),
                max: MAX_TABLE,
            });
        }
        let n = ground.len();
        let weights = ternary_weights(n);
        let mut values = vec![ExtendedNat::ZERO; 3usize.pow(n as u32)];
        for (a, b) in NestedPairs::new(n) {
            values[(weights[a.0 as usize] + weights[b.0 as usize]) as usize] = f(a, b);
        }
        Ok(RelRankTable {
            ground,
            weights,
            values,
            report: OnceLock::new(),
        })
    }

    /// The all-zero table: the relative rank function of the rank-0 matroid.
    pub fn zeros(ground: GroundSet) -> Result<RelRankTable> {
        RelRankTable::from_fn(ground, |_, _| ExtendedNat::ZERO)
    }

    /// `r_M` on every nested pair, each value computed from its own greedy
    /// witness pair `J ⊆ I`.
    pub fn from_matroid(matroid: &Matroid) -> Result<RelRankTable> {
        let ground = matroid.ground().clone();
        let full = ground.full();
        let mut table = RelRankTable::zeros(ground)?;
        for b in full.subsets() {
            let j = matroid.max_independent_extension(SubsetMask::EMPTY, b)?;
            for extra in full.difference(b).subsets() {
                let a = b.union(extra);
                let i = matroid.max_independent_extension(j, a)?;
                let at = table.index(a, b);
                table.values[at] = ExtendedNat::from(i.diff_size(j));
            }
        }
        Ok(table)
    }

    #[inline]
    fn index(&self, a: SubsetMask, b: SubsetMask) -> usize {
        (self.weights[a.0 as usize] + self.weights[b.0 as usize]) as usize
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Unchecked lookup; `b ⊆ a ⊆ E` must hold.
    #[inline]
    pub fn get(&self, a: SubsetMask, b: SubsetMask) -> ExtendedNat {
        debug_assert!(b.is_subset(a) && a.is_subset(self.ground.full()));
        self.values[self.index(a, b)]
    }

    pub fn value(&self, a: SubsetMask, b: SubsetMask) -> Result<ExtendedNat> {
        self.check_pair(a, b)?;
        Ok(self.get(a, b))
    }

    fn check_pair(&self, a: SubsetMask, b: SubsetMask) -> Result<()> {
        self.ground.check(a)?;
        self.ground.check(b)?;
        if b.is_subset(a) {
            Ok(())
        } else {
            Err(Error::NotNested)
        }
    }

    /// Copy of the table with one entry replaced.
    pub fn with_value(&self, a: SubsetMask, b: SubsetMask, v: ExtendedNat) -> Result<RelRankTable> {
        self.check_pair(a, b)?;
        let mut values = self.values.clone();
        values[self.index(a, b)] = v;
        Ok(self.with_values(values))
    }

    pub(crate) fn with_values(&self, values: Vec<ExtendedNat>) -> RelRankTable {
        debug_assert_eq!(values.len(), self.values.len());
        RelRankTable {
            ground: self.ground.clone(),
            weights: Arc::clone(&self.weights),
            values,
            report: OnceLock::new(),
        }
    }

    pub(crate) fn raw_values(&self) -> &[ExtendedNat] {
        &self.values
    }

    pub(crate) fn raw_index(&self, a: SubsetMask, b: SubsetMask) -> usize {
        self.index(a, b)
    }

    /// `(A, B, r(A|B))` in nested-pair stream order.
    pub fn entries(&self) -> impl Iterator<Item = (SubsetMask, SubsetMask, ExtendedNat)> + '_ {
        NestedPairs::new(self.ground.len()).map(move |(a, b)| (a, b, self.get(a, b)))
    }

    /// First nested pair where the two tables disagree.
    pub fn first_mismatch(&self, other: &RelRankTable) -> Option<(SubsetMask, SubsetMask)> {
        if self.ground.len() != other.ground.len() {
            return Some((self.ground.full(), SubsetMask::EMPTY));
        }
        NestedPairs::new(self.ground.len()).find(|&(a, b)| self.get(a, b) != other.get(a, b))
    }

    /// `I` is r-independent when `r(I|I-x) > 0` for every `x ∈ I`.
    pub fn is_r_independent(&self, set: SubsetMask) -> bool {
        set.iter().all(|x| !self.get(set, set.without(x)).is_zero())
    }

    /// The family `𝓘_r` in increasing mask order; always contains `∅`.
    pub fn r_independents(&self) -> Vec<SubsetMask> {
        self.ground
            .full()
            .subsets()
            .filter(|&s| self.is_r_independent(s))
            .collect()
    }

    fn r_independent_flags(&self) -> Vec<bool> {
        (0..1u32 << self.ground.len())
            .map(|s| self.is_r_independent(SubsetMask(s)))
            .collect()
    }

    /// Checks R1–R5 exhaustively. The report is cached on the table.
    pub fn check_axioms(&self) -> &RelRankReport {
        self.report.get_or_init(|| self.compute_report())
    }

    fn compute_report(&self) -> RelRankReport {
        let full = self.ground.full();
        let independent = self.r_independent_flags();
        (0..=full.0)
            .into_par_iter()
            .map(|a| self.violations_at(SubsetMask(a), &independent))
            .reduce(RelRankReport::default, RelRankReport::merge)
            .finish()
    }

    /// Every violation whose first set is `a`.
    fn violations_at(&self, a: SubsetMask, independent: &[bool]) -> RelRankReport {
        let full = self.ground.full();
        let mut report = RelRankReport::default();
        let [r1, r2, r3, r4, r5] = &mut report.statuses;

        for b in full.subsets() {
            if r2_fails(self, a, b) {
                r2.push(Violation::R2 {
                    a,
                    b,
                    left: self.get(a, a.intersection(b)),
                    right: self.get(a.union(b), b),
                });
            }
        }

        for b in a.subsets() {
            let value = self.get(a, b);
            if r1_fails(self, a, b) {
                r1.push(Violation::R1 { a, b, value });
            }
            for c in b.subsets() {
                if r3_fails(self, a, b, c) {
                    r3.push(Violation::R3 {
                        a,
                        b,
                        c,
                        whole: self.get(a, c),
                        upper: value,
                        lower: self.get(b, c),
                    });
                }
            }
            if r4_fails(self, a, b) {
                r4.push(Violation::R4 { a, b, value });
            }
            if r5_fails(self, independent, a, b) {
                r5.push(Violation::R5 { a, b });
            }
        }
        report.finish()
    }

    /// Builds `(E, 𝓘_r)` and compares its relative rank table with `self`.
    ///
    /// Fails with [`Error::Axioms`] when `𝓘_r` is not a matroid family.
    pub fn reconstruct(&self) -> Result<Reconstruction> {
        let matroid = Matroid::from_explicit_family(self.ground.clone(), self.r_independents())?;
        let rebuilt = RelRankTable::from_matroid(&matroid)?;
        let mismatch = rebuilt.first_mismatch(self);
        Ok(Reconstruction { matroid, mismatch })
    }

    fn require(&self, axioms: &[RelAxiom]) -> Result<()> {
        let report = self.check_axioms();
        let failed: Vec<String> = axioms
            .iter()
            .filter(|&&ax| !report.passed(ax))
            .map(ToString::to_string)
            .collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "table violates {}",
                failed.join(", ")
            )))
        }
    }

    fn require_independent(&self, set: SubsetMask) -> Result<()> {
        if self.is_r_independent(set) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{} is not r-independent",
                self.ground.format(set)
            )))
        }
    }

    /// `r(I+x|I) > 0`, which decides whether `I+x` is r-independent when `I`
    /// is. Requires R1 and R3.
    pub fn plus_criterion(&self, set: SubsetMask, x: usize) -> Result<bool> {
        self.ground.check(set)?;
        if x >= self.ground.len() || set.contains(x) {
            return Err(Error::Precondition(format!(
                "element {x} must be a ground element outside {}",
                self.ground.format(set)
            )));
        }
        self.require(&[RelAxiom::R1, RelAxiom::R3])?;
        self.require_independent(set)?;
        Ok(!self.get(set.with(x), set).is_zero())
    }

    /// `r(F|I) = 0`, which decides whether r-independent `I` is maximal among
    /// r-independent subsets of `F`. Requires R1, R3 and R4.
    pub fn span_criterion(&self, set: SubsetMask, within: SubsetMask) -> Result<bool> {
        self.check_pair(within, set)?;
        self.require(&[RelAxiom::R1, RelAxiom::R3, RelAxiom::R4])?;
        self.require_independent(set)?;
        Ok(self.get(within, set).is_zero())
    }

    pub fn redundancy_report(&self) -> RedundancyReport {
        let report = self.check_axioms();
        let full = self.ground.full();
        RedundancyReport {
            r1_to_r3: report.passed(RelAxiom::R1)
                && report.passed(RelAxiom::R2)
                && report.passed(RelAxiom::R3),
            total_finite: self.get(full, SubsetMask::EMPTY).is_finite(),
            r4: report.passed(RelAxiom::R4),
            r5: report.passed(RelAxiom::R5),
        }
    }
}

fn r1_fails(t: &RelRankTable, a: SubsetMask, b: SubsetMask) -> bool {
    t.get(a, b) > ExtendedNat::from(a.diff_size(b))
}

fn r2_fails(t: &RelRankTable, a: SubsetMask, b: SubsetMask) -> bool {
    t.get(a, a.intersection(b)) < t.get(a.union(b), b)
}

fn r3_fails(t: &RelRankTable, a: SubsetMask, b: SubsetMask, c: SubsetMask) -> bool {
    // Widened so that no finite sum can overflow.
    let widen = |v: ExtendedNat| v.finite().map(u128::from);
    let sum = match (widen(t.get(a, b)), widen(t.get(b, c))) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    widen(t.get(a, c)) != sum
}

fn r4_fails(t: &RelRankTable, a: SubsetMask, b: SubsetMask) -> bool {
    !t.get(a, b).is_zero()
        && a.difference(b)
            .iter()
            .all(|x| t.get(b.with(x), b).is_zero())
}

fn r5_fails(t: &RelRankTable, independent: &[bool], a: SubsetMask, b: SubsetMask) -> bool {
    !a.subsets().any(|i| {
        independent[i.0 as usize] && t.get(a, i).is_zero() && t.get(b, b.intersection(i)).is_zero()
    })
}

/// First nested pair violating `r_M(A|B) + r_{M'}(E\B|E\A) = |A\B|`.
pub fn duality_violation(m: &Matroid, other: &Matroid) -> Result<Option<(SubsetMask, SubsetMask)>> {
    if m.ground() != other.ground() {
        return Err(Error::GroundMismatch);
    }
    let full = m.full();
    for (a, b) in m.ground().nested_pairs()? {
        let left = m.relative_rank(a, b)?;
        let right = other.relative_rank(full.difference(b), full.difference(a))?;
        if left + right != a.diff_size(b) {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// True iff the duality identity holds on every nested pair, which happens
/// exactly when `other` is the dual of `m`.
pub fn duality_identity(m: &Matroid, other: &Matroid) -> Result<bool> {
    Ok(duality_violation(m, other)?.is_none())
}

/// First pair `X ⊆ B ⊆ A ⊆ X ∪ Y` where `r_M(A|B)` differs from
/// `r_N(A\X|B\X)` for the minor `N = (M/X)|Y`.
pub fn zoom_violation(
    m: &Matroid,
    contracted: SubsetMask,
    kept: SubsetMask,
) -> Result<Option<(SubsetMask, SubsetMask)>> {
    m.ground().check(contracted)?;
    m.ground().check(kept)?;
    if !contracted.intersection(kept).is_empty() {
        return Err(Error::NotDisjoint);
    }
    let rest = m.full().difference(contracted);
    let minor = m.contract(contracted)?.restrict(kept.compress(rest))?;
    for extra_a in kept.subsets() {
        let a = contracted.union(extra_a);
        for extra_b in extra_a.subsets() {
            let b = contracted.union(extra_b);
            let direct = m.relative_rank(a, b)?;
            let zoomed = minor.relative_rank(extra_a.compress(kept), extra_b.compress(kept))?;
            if direct != zoomed {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn zoom_identity(m: &Matroid, contracted: SubsetMask, kept: SubsetMask) -> Result<bool> {
    Ok(zoom_violation(m, contracted, kept)?.is_none())
}
