//! Small-matroid corpora and relative-rank table fuzzing.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matroid::{check_family, Matroid};
use crate::relrank::{RelAxiom, RelRankTable};
use crate::sets::{ExtendedNat, GroundSet, SubsetMask};

pub const MAX_ENUMERATION: usize = 5;
pub const MAX_CANONICAL: usize = 7;
pub const MAX_FUZZ: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Enumerated,
    Constructed,
    Fuzzed,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub matroid: Matroid,
    pub canonical_key: Vec<u8>,
    pub source: Source,
}

impl CorpusEntry {
    pub fn new(matroid: Matroid, source: Source) -> Result<CorpusEntry> {
        let canonical_key = canonical_form(&matroid)?;
        Ok(CorpusEntry {
            matroid,
            canonical_key,
            source,
        })
    }
}

/// Every labeled matroid on `{0..n}`, each exactly once.
///
/// A matroid is determined by its bases, which all have the same size, so
/// the search picks a rank `k` and then a nonempty set of `k`-subsets; the
/// downward closure of that antichain is kept when it passes (I3). Work is
/// split by rank and first basis, and results come back in that order.
pub fn enumerate_matroids(n: usize) -> Result<Vec<Matroid>> {
    if n > MAX_ENUMERATION {
        return Err(Error::GroundTooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    let ground = GroundSet::indexed(n)?;
    let starts: Vec<(usize, usize)> = (0..=n)
        .flat_map(|k| (0..binomial(n, k)).map(move |first| (k, first)))
        .collect();
    let found: Vec<Vec<Matroid>> = starts
        .into_par_iter()
        .map(|(k, first)| {
            let layer: Vec<SubsetMask> = ground.full().subsets().filter(|s| s.len() == k).collect();
            let mut chosen = vec![layer[first]];
            let mut out = Vec::new();
            extend_antichain(&ground, &layer, first + 1, &mut chosen, &mut out);
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn extend_antichain(
    ground: &GroundSet,
    layer: &[SubsetMask],
    next: usize,
    chosen: &mut Vec<SubsetMask>,
    out: &mut Vec<Matroid>,
) {
    if next == layer.len() {
        let members = downward_closure(ground.len(), chosen);
        if check_family(ground.len(), &members).passed() {
            let family = (0..members.len() as u32)
                .filter(|&s| members[s as usize])
                .map(SubsetMask);
            out.push(
                Matroid::from_explicit_family(ground.clone(), family)
                    .expect("family already passed the axiom check"),
            );
        }
        return;
    }
    extend_antichain(ground, layer, next + 1, chosen, out);
    chosen.push(layer[next]);
    extend_antichain(ground, layer, next + 1, chosen, out);
    chosen.pop();
}

fn downward_closure(n: usize, tops: &[SubsetMask]) -> Vec<bool> {
    let mut members = vec![false; 1 << n];
    for top in tops {
        members[top.0 as usize] = true;
    }
    for bit in 0..n {
        for s in 0..members.len() {
            if s >> bit & 1 == 0 && members[s | 1 << bit] {
                members[s] = true;
            }
        }
    }
    members
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Isomorphism-invariant key: the lexicographically smallest sorted
/// mask list over all relabelings, prefixed by the ground set size.
pub fn canonical_form(matroid: &Matroid) -> Result<Vec<u8>> {
    let n = matroid.len();
    if n > MAX_CANONICAL {
        return Err(Error::GroundTooLarge {
            n,
            max: MAX_CANONICAL,
        });
    }
    let family: Vec<SubsetMask> = matroid.independents().collect();
    let best = (0..n)
        .permutations(n)
        .map(|perm| {
            let mut image: Vec<u8> = family
                .iter()
                .map(|s| s.iter().fold(0u8, |acc, i| acc | 1 << perm[i]))
                .collect();
            image.sort_unstable();
            image
        })
        .min()
        .unwrap_or_default();
    let mut key = Vec::with_capacity(best.len() + 1);
    key.push(n as u8);
    key.extend(best);
    Ok(key)
}

/// One representative per isomorphism class on `n` elements, ordered by
/// canonical key; the representative is the first labeled matroid found.
pub fn isomorphism_classes(n: usize) -> Result<Vec<CorpusEntry>> {
    let mut classes: BTreeMap<Vec<u8>, Matroid> = BTreeMap::new();
    for m in enumerate_matroids(n)? {
        let key = canonical_form(&m)?;
        classes.entry(key).or_insert(m);
    }
    Ok(classes
        .into_iter()
        .map(|(canonical_key, matroid)| CorpusEntry {
            matroid,
            canonical_key,
            source: Source::Enumerated,
        })
        .collect())
}

/// Number of labeled matroids and of isomorphism classes on `n` elements.
pub fn counts(n: usize) -> Result<(usize, usize)> {
    let labeled = enumerate_matroids(n)?.len();
    let classes = isomorphism_classes(n)?.len();
    Ok((labeled, classes))
}

/// Perturbs a seeded selection of entries by ±1, keeping every changed entry
/// inside `[0, |A\B|]`.
///
/// Each of one to three steps either shifts a single entry, or shifts the
/// implied rank of one set `S` (adding `δ` to every `r(S|B)` and subtracting
/// it from every `r(A|S)`), which keeps chain additivity intact. A shift that
/// would leave the box falls back to a single-entry change. Tables whose
/// entries are all pinned to zero by the box (`n = 0`) come back unchanged;
/// any other table comes back changed in at least one entry.
/// The generator is ChaCha8 seeded with `seed`.
pub fn mutate_table(table: &RelRankTable, seed: u64) -> RelRankTable {
    let n = table.ground().len();
    if n == 0 {
        return table.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = table.raw_values().to_vec();
    let full = table.ground().full();
    let steps = rng.random_range(1..=3);
    for _ in 0..steps {
        let delta: i64 = if rng.random_bool(0.5) { 1 } else { -1 };
        if rng.random_bool(0.5) {
            let set = SubsetMask(rng.random_range(0..=full.0));
            if shift_set(table, &mut values, set, delta) {
                continue;
            }
        }
        shift_entry(table, &mut values, &mut rng, delta);
    }
    // Steps may cancel out.
    while values == table.raw_values() {
        let delta = if rng.random_bool(0.5) { 1 } else { -1 };
        shift_entry(table, &mut values, &mut rng, delta);
    }
    table.with_values(values)
}

fn shift_set(
    table: &RelRankTable,
    values: &mut [ExtendedNat],
    set: SubsetMask,
    delta: i64,
) -> bool {
    let full = table.ground().full();
    let mut changes = Vec::new();
    for b in set.subsets().filter(|&b| b != set) {
        changes.push((set, b, delta));
    }
    for extra in full.difference(set).subsets().skip(1) {
        changes.push((set.union(extra), set, -delta));
    }
    let mut updated = Vec::with_capacity(changes.len());
    for (a, b, d) in changes {
        let at = table.raw_index(a, b);
        let Some(v) = values[at].finite() else {
            return false;
        };
        let shifted = v as i64 + d;
        if shifted < 0 || shifted > a.diff_size(b) as i64 {
            return false;
        }
        updated.push((at, ExtendedNat::from(shifted as u64)));
    }
    if updated.is_empty() {
        return false;
    }
    for (at, v) in updated {
        values[at] = v;
    }
    true
}

fn shift_entry(table: &RelRankTable, values: &mut [ExtendedNat], rng: &mut ChaCha8Rng, delta: i64) {
    let full = table.ground().full();
    let (a, b) = loop {
        let a = SubsetMask(rng.random_range(1..=full.0));
        let b = SubsetMask(rng.random::<u32>()).intersection(a);
        if b != a {
            break (a, b);
        }
    };
    let bound = a.diff_size(b) as i64;
    let at = table.raw_index(a, b);
    values[at] = match values[at].finite() {
        None => ExtendedNat::from(bound as u64),
        Some(v) => {
            let v = v as i64;
            let up = v + delta;
            let shifted = if (0..=bound).contains(&up) {
                up
            } else {
                v - delta
            };
            ExtendedNat::from(shifted.clamp(0, bound) as u64)
        }
    };
}

/// Outcome of [`converse_fuzz`].
#[derive(Clone, Debug, Default)]
pub struct FuzzReport {
    pub trials: usize,
    /// Tables passing R1–R5.
    pub passing: usize,
    /// Passing tables whose reconstruction reproduced them exactly.
    pub round_tripped: usize,
    /// Passing tables that did not round-trip. Must stay empty.
    pub hard_failures: Vec<RelRankTable>,
    /// Tables failing at least one axiom, with per-axiom counts.
    pub failing: usize,
    pub failing_by_axiom: [usize; 5],
    /// Reconstructions that failed (bad family or table mismatch).
    pub mismatches: usize,
    /// Of those, how many came from a table that passed every axiom.
    pub mismatches_without_violation: usize,
    /// Tables satisfying R1–R3.
    pub r1_to_r3: usize,
    /// R1–R3 tables where R4 or (with finite `r(E|∅)`) R5 failed. Must stay
    /// empty.
    pub redundancy_contradictions: Vec<RelRankTable>,
}

impl FuzzReport {
    pub fn clean(&self) -> bool {
        self.hard_failures.is_empty()
            && self.mismatches_without_violation == 0
            && self.redundancy_contradictions.is_empty()
    }

    pub fn record(&mut self, table: RelRankTable) {
        self.trials += 1;
        let report = table.check_axioms();
        let passed = report.all_passed();
        if passed {
            self.passing += 1;
        } else {
            self.failing += 1;
            for ax in report.failed_axioms() {
                self.failing_by_axiom[ax as usize] += 1;
            }
        }
        let round_trip = matches!(table.reconstruct(), Ok(rec) if rec.roundtrip_ok());
        if !round_trip {
            self.mismatches += 1;
            if passed {
                self.mismatches_without_violation += 1;
            }
        }
        let redundancy = table.redundancy_report();
        if redundancy.r1_to_r3 {
            self.r1_to_r3 += 1;
        }
        match (passed, round_trip) {
            (true, true) => self.round_tripped += 1,
            (true, false) => self.hard_failures.push(table.clone()),
            _ => {}
        }
        if redundancy.contradiction() {
            self.redundancy_contradictions.push(table);
        }
    }

    pub fn failing_on(&self, axiom: RelAxiom) -> usize {
        self.failing_by_axiom[axiom as usize]
    }
}

/// Mutates relative rank tables of the isomorphism classes on `n` elements
/// (cycled in canonical order) `trials` times and tallies how each fares
/// against the axioms and the reconstruction round trip.
pub fn converse_fuzz(n: usize, trials: usize, seed: u64) -> Result<FuzzReport> {
    if n > MAX_FUZZ {
        return Err(Error::GroundTooLarge { n, max: MAX_FUZZ });
    }
    let bases: Vec<RelRankTable> = isomorphism_classes(n)?
        .iter()
        .map(|entry| RelRankTable::from_matroid(&entry.matroid))
        .collect::<Result<_>>()?;
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FuzzReport::default();
    for trial in 0..trials {
        let base = &bases[trial % bases.len()];
        report.record(mutate_table(base, seeds.next_u64()));
    }
    Ok(report)
}
