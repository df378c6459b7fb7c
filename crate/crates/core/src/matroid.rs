//! Finite matroids stored as their full independence family.
//!
//! A [`Matroid`] keeps one membership bit per subset of its ground set, so
//! every constructor materializes the family and every oracle (independence,
//! greedy extension, rank, relative rank) is a lookup or a short scan.

use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::sets::{GroundSet, SubsetMask};

/// A single failure of the independence axioms, with concrete witnesses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndependenceViolation {
    /// The empty set is missing.
    EmptyMissing,
    /// `set` is in the family but `missing = set - x` is not.
    NotDownwardClosed {
        set: SubsetMask,
        missing: SubsetMask,
    },
    /// `set` is a non-maximal member, `maximal` is a maximal member and no
    /// `x ∈ maximal \ set` gives a member `set + x`.
    NoAugmentation {
        set: SubsetMask,
        maximal: SubsetMask,
    },
}

impl IndependenceViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            IndependenceViolation::EmptyMissing => "I1",
            IndependenceViolation::NotDownwardClosed { .. } => "I2",
            IndependenceViolation::NoAugmentation { .. } => "I3",
        }
    }

    /// Re-evaluates the violation against a membership predicate over the
    /// ground set `full`.
    pub fn retriggers<F: Fn(SubsetMask) -> bool>(&self, full: SubsetMask, member: F) -> bool {
        let has_proper_superset = |s: SubsetMask| {
            full.difference(s)
                .subsets()
                .skip(1)
                .any(|extra| member(s.union(extra)))
        };
        match *self {
            IndependenceViolation::EmptyMissing => !member(SubsetMask::EMPTY),
            IndependenceViolation::NotDownwardClosed { set, missing } => {
                missing.is_subset(set)
                    && set.len() == missing.len() + 1
                    && member(set)
                    && !member(missing)
            }
            IndependenceViolation::NoAugmentation { set, maximal } => {
                member(set)
                    && has_proper_superset(set)
                    && member(maximal)
                    && !has_proper_superset(maximal)
                    && maximal.difference(set).iter().all(|x| !member(set.with(x)))
            }
        }
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        match *self {
            IndependenceViolation::EmptyMissing => "I1 violation: {} absent from family".into(),
            IndependenceViolation::NotDownwardClosed { set, missing } => format!(
                "I2 violation: {} in family but {} absent",
                ground.format(set),
                ground.format(missing)
            ),
            IndependenceViolation::NoAugmentation { set, maximal } => format!(
                "I3 violation: {} is not maximal, {} is maximal, and no element of {} extends {}",
                ground.format(set),
                ground.format(maximal),
                ground.format(maximal.difference(set)),
                ground.format(set)
            ),
        }
    }
}

/// Outcome of validating a family against (I1), (I2) and (I3).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Sorted canonically.
    pub violations: Vec<IndependenceViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom() == axiom)
    }
}

/// Checks (I1)–(I3) on a family given as one membership flag per mask of an
/// `n`-element ground set. (IM) holds automatically on finite ground sets.
pub fn check_family(n: usize, members: &[bool]) -> AxiomReport {
    let size = 1usize << n;
    debug_assert_eq!(members.len(), size);
    let mut violations = Vec::new();

    if !members[0] {
        violations.push(IndependenceViolation::EmptyMissing);
    }

    for s in (0..size).filter(|&s| members[s]) {
        let set = SubsetMask(s as u32);
        for x in set.iter() {
            let missing = set.without(x);
            if !members[missing.0 as usize] {
                violations.push(IndependenceViolation::NotDownwardClosed { set, missing });
            }
        }
    }

    // above[s]: some proper superset of s is a member.
    let mut above = vec![false; size];
    for s in (0..size).rev() {
        let mut free = !(s as u32) & (size as u32 - 1);
        while free != 0 {
            let t = s | (1 << free.trailing_zeros());
            if members[t] || above[t] {
                above[s] = true;
                break;
            }
            free &= free - 1;
        }
    }
    let maximal: Vec<bool> = (0..size).map(|s| members[s] && !above[s]).collect();

    // below[s]: some maximal member is a subset of s (subset-sum over bits).
    let mut below = maximal.clone();
    for bit in 0..n {
        for s in 0..size {
            if s >> bit & 1 == 1 && below[s ^ (1 << bit)] {
                below[s] = true;
            }
        }
    }

    let full = size as u32 - 1;
    for s in (0..size).filter(|&s| members[s] && above[s]) {
        let set = SubsetMask(s as u32);
        let extenders = SubsetMask::full(n)
            .difference(set)
            .iter()
            .filter(|&x| members[set.with(x).0 as usize])
            .fold(SubsetMask::EMPTY, SubsetMask::with);
        // A maximal member avoiding every extender is exactly a violation.
        let avoid = SubsetMask(full).difference(extenders);
        if below[avoid.0 as usize] {
            let witness = avoid
                .subsets()
                .find(|m| maximal[m.0 as usize])
                .expect("subset-sum table promised a maximal member");
            violations.push(IndependenceViolation::NoAugmentation {
                set,
                maximal: witness,
            });
        }
    }

    violations.sort();
    AxiomReport { violations }
}

/// A finite matroid `(E, 𝓘)` with its independence family materialized.
#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    members: Vec<bool>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family: Vec<String> = self.independents().map(|s| self.ground.format(s)).collect();
        f.debug_struct("Matroid")
            .field("ground", &self.ground.labels())
            .field("independents", &family)
            .finish()
    }
}

impl Matroid {
    /// Validates `family` against (I1)–(I3) and builds the matroid, or returns
    /// [`Error::Axioms`] carrying every violation found.
    pub fn from_explicit_family<I>(ground: GroundSet, family: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        ground.check_exhaustive()?;
        let mut members = vec![false; 1 << ground.len()];
        for set in family {
            ground.check(set)?;
            members[set.0 as usize] = true;
        }
        Matroid::from_members(ground, members)
    }

    fn from_members(ground: GroundSet, members: Vec<bool>) -> Result<Matroid> {
        let report = check_family(ground.len(), &members);
        if report.passed() {
            Ok(Matroid { ground, members })
        } else {
            Err(Error::Axioms(report))
        }
    }

    /// Builds a matroid from a predicate known to describe a matroid.
    fn from_predicate<F: FnMut(SubsetMask) -> bool>(ground: GroundSet, mut f: F) -> Matroid {
        let members = (0..1u32 << ground.len())
            .map(|s| f(SubsetMask(s)))
            .collect();
        let m = Matroid { ground, members };
        debug_assert!(check_family(m.len(), &m.members).passed());
        m
    }

    /// The uniform matroid `U_{k,n}` on elements `0..n`.
    pub fn uniform(k: usize, n: usize) -> Result<Matroid> {
        if k > n {
            return Err(Error::RankTooLarge { k, n });
        }
        let ground = GroundSet::indexed(n)?;
        ground.check_exhaustive()?;
        Ok(Matroid::from_predicate(ground, |s| s.len() <= k))
    }

    /// The cycle matroid of a multigraph; element `i` is edge `i`.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        for (edge, &(u, v)) in edges.iter().enumerate() {
            for endpoint in [u, v] {
                if endpoint >= vertices {
                    return Err(Error::EndpointOutOfRange {
                        edge,
                        endpoint,
                        vertices,
                    });
                }
            }
        }
        let ground = GroundSet::indexed(edges.len())?;
        ground.check_exhaustive()?;
        Ok(Matroid::from_predicate(ground, |s| {
            let mut forest = UnionFind::<usize>::new(vertices);
            s.iter().all(|e| {
                let (u, v) = edges[e];
                forest.union(u, v)
            })
        }))
    }

    /// The column matroid of a 0/1 matrix over GF(2); element `i` is column `i`.
    pub fn linear_gf2(columns: &[Vec<bool>]) -> Result<Matroid> {
        let height = columns.first().map_or(0, Vec::len);
        for (column, c) in columns.iter().enumerate() {
            if c.len() != height {
                return Err(Error::ColumnLength {
                    column,
                    len: c.len(),
                    expected: height,
                });
            }
        }
        let ground = GroundSet::indexed(columns.len())?;
        ground.check_exhaustive()?;
        let packed: Vec<Vec<u64>> = columns.iter().map(|c| pack_bits(c)).collect();
        Ok(Matroid::from_predicate(ground, |s| {
            gf2_independent(s.iter().map(|i| packed[i].as_slice()))
        }))
    }

    /// Same family over a new ground set of equal size.
    pub fn relabel(self, ground: GroundSet) -> Result<Matroid> {
        if ground.len() != self.ground.len() {
            return Err(Error::GroundMismatch);
        }
        Ok(Matroid {
            ground,
            members: self.members,
        })
    }

    /// Image of the family under `element i ↦ perm[i]`, keeping the labels.
    pub fn permute(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.len());
        let mut members = vec![false; self.members.len()];
        for s in self.independents() {
            let image = s.iter().fold(SubsetMask::EMPTY, |acc, i| acc.with(perm[i]));
            members[image.0 as usize] = true;
        }
        Matroid {
            ground: self.ground.clone(),
            members,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full(&self) -> SubsetMask {
        self.ground.full()
    }

    /// Unchecked membership; `set` must lie in the ground set.
    #[inline]
    pub fn contains(&self, set: SubsetMask) -> bool {
        self.members[set.0 as usize]
    }

    pub fn is_independent(&self, set: SubsetMask) -> Result<bool> {
        self.ground.check(set)?;
        Ok(self.contains(set))
    }

    /// Independent sets in increasing mask order.
    pub fn independents(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(s, _)| SubsetMask(s as u32))
    }

    pub fn num_independents(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    /// Maximal independent sets in increasing mask order.
    pub fn bases(&self) -> Vec<SubsetMask> {
        let full = self.full();
        self.independents()
            .filter(|&s| full.difference(s).iter().all(|x| !self.contains(s.with(x))))
            .collect()
    }

    /// Compares families index by index, ignoring labels.
    pub fn same_family(&self, other: &Matroid) -> bool {
        self.members == other.members
    }

    /// Greedily extends independent `start` to a maximal independent subset of
    /// `within`, trying elements of `within \ start` in ascending index order.
    pub fn max_independent_extension(
        &self,
        start: SubsetMask,
        within: SubsetMask,
    ) -> Result<SubsetMask> {
        self.ground.check(start)?;
        self.ground.check(within)?;
        if !start.is_subset(within) {
            return Err(Error::NotNested);
        }
        if !self.contains(start) {
            return Err(Error::NotIndependent);
        }
        Ok(self.greedy(start, within))
    }

    #[inline]
    fn greedy(&self, start: SubsetMask, within: SubsetMask) -> SubsetMask {
        within.difference(start).iter().fold(start, |acc, x| {
            let grown = acc.with(x);
            if self.contains(grown) {
                grown
            } else {
                acc
            }
        })
    }

    /// `r(X) = max{|I| : I ∈ 𝓘, I ⊆ X}`.
    pub fn rank(&self, set: SubsetMask) -> Result<usize> {
        Ok(self
            .max_independent_extension(SubsetMask::EMPTY, set)?
            .len())
    }

    /// Witness pair `(I, J)` for `r(A|B)`: `J` is the greedy maximal
    /// independent subset of `B`, `I` its greedy extension inside `A`.
    pub fn relative_rank_witness(
        &self,
        a: SubsetMask,
        b: SubsetMask,
    ) -> Result<(SubsetMask, SubsetMask)> {
        self.ground.check(a)?;
        self.ground.check(b)?;
        if !b.is_subset(a) {
            return Err(Error::NotNested);
        }
        let j = self.greedy(SubsetMask::EMPTY, b);
        let i = self.greedy(j, a);
        Ok((i, j))
    }

    /// `r(A|B) = |I \ J|` for any witness pair; `B ⊆ A` required.
    pub fn relative_rank(&self, a: SubsetMask, b: SubsetMask) -> Result<usize> {
        let (i, j) = self.relative_rank_witness(a, b)?;
        Ok(i.diff_size(j))
    }

    /// `M|A`, re-indexed onto the elements of `A` in ascending order.
    pub fn restrict(&self, set: SubsetMask) -> Result<Matroid> {
        self.ground.check(set)?;
        let ground = self.ground.select(set);
        Ok(Matroid::from_predicate(ground, |s| {
            self.contains(s.expand(set))
        }))
    }

    /// `M/X`, using the greedy maximal independent subset of `X`.
    pub fn contract(&self, set: SubsetMask) -> Result<Matroid> {
        self.ground.check(set)?;
        let basis = self.greedy(SubsetMask::EMPTY, set);
        self.contract_with(set, basis)
    }

    /// `M/X` computed from a caller-chosen maximal independent `basis ⊆ X`.
    pub fn contract_with(&self, set: SubsetMask, basis: SubsetMask) -> Result<Matroid> {
        self.ground.check(set)?;
        self.ground.check(basis)?;
        if !basis.is_subset(set) || !self.contains(basis) || self.greedy(basis, set) != basis {
            return Err(Error::Precondition(format!(
                "{} is not a maximal independent subset of {}",
                self.ground.format(basis),
                self.ground.format(set)
            )));
        }
        let rest = self.full().difference(set);
        let ground = self.ground.select(rest);
        Ok(Matroid::from_predicate(ground, |s| {
            self.contains(s.expand(rest).union(basis))
        }))
    }

    /// `M*`: the downward closure of the complements of the bases.
    pub fn dual(&self) -> Matroid {
        let n = self.len();
        let full = self.full();
        let mut members = vec![false; self.members.len()];
        for basis in self.bases() {
            members[full.difference(basis).0 as usize] = true;
        }
        for bit in 0..n {
            for s in 0..members.len() {
                if s >> bit & 1 == 0 && members[s | 1 << bit] {
                    members[s] = true;
                }
            }
        }
        Matroid::from_members(self.ground.clone(), members)
            .expect("dual of a matroid satisfies the independence axioms")
    }
}

fn pack_bits(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

/// Linear independence over GF(2) by incremental elimination.
fn gf2_independent<'a, I: Iterator<Item = &'a [u64]>>(columns: I) -> bool {
    // Reduced vectors, each tagged with its pivot (lowest set bit).
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for column in columns {
        let mut v = column.to_vec();
        for (pivot, row) in &basis {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                v.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
            }
        }
        match v.iter().position(|&w| w != 0) {
            None => return false,
            Some(word) => {
                let pivot = word * 64 + v[word].trailing_zeros() as usize;
                for (_, row) in basis.iter_mut() {
                    if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                        row.iter_mut().zip(&v).for_each(|(a, b)| *a ^= b);
                    }
                }
                basis.push((pivot, v));
            }
        }
    }
    true
}
