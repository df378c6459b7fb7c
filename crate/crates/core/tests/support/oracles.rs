//! Brute-force references that only read membership bits of a family.
//!
//! Nothing here calls the greedy extension, the axiom checker, the minor
//! constructors or the enumerator of `relrank_core`; every quantity is
//! recomputed from its definition.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relrank_core::{Matroid, SubsetMask};

pub type Family = Vec<bool>;

pub fn masks(n: usize) -> impl Iterator<Item = SubsetMask> {
    (0..1u32 << n).map(SubsetMask)
}

pub fn subsets_of(x: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    (0..=x.0).filter(move |s| s & !x.0 == 0).map(SubsetMask)
}

pub fn family_of(m: &Matroid) -> Family {
    masks(m.len()).map(|s| m.contains(s)).collect()
}

pub fn rank_of(n: usize, family: &Family) -> usize {
    masks(n)
        .filter(|s| family[s.0 as usize])
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// `max{|I| : I ∈ 𝓘, I ⊆ X}`.
pub fn rank_by_definition(family: &Family, x: SubsetMask) -> usize {
    subsets_of(x)
        .filter(|s| family[s.0 as usize])
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// All inclusion-maximal members of the family inside `x`.
pub fn maximal_within(family: &Family, x: SubsetMask) -> Vec<SubsetMask> {
    let inside: Vec<SubsetMask> = subsets_of(x).filter(|s| family[s.0 as usize]).collect();
    inside
        .iter()
        .copied()
        .filter(|&s| !inside.iter().any(|&t| t != s && s.is_subset(t)))
        .collect()
}

/// `max{|I \ J| : J ⊆ I ⊆ A, I ∈ 𝓘, J maximal independent in B}`.
pub fn relrank_by_definition(family: &Family, a: SubsetMask, b: SubsetMask) -> usize {
    maximal_within(family, b)
        .into_iter()
        .flat_map(|j| {
            subsets_of(a)
                .filter(move |&i| family[i.0 as usize] && j.is_subset(i))
                .map(move |i| i.len() - j.len())
        })
        .max()
        .expect("a maximal independent subset always exists")
}

/// `|I \ J|` over every witness pair: `I` maximal in `A`, `J` maximal in `B`,
/// `J ⊆ I`.
pub fn witness_values(family: &Family, a: SubsetMask, b: SubsetMask) -> BTreeSet<usize> {
    let tops = maximal_within(family, a);
    let bottoms = maximal_within(family, b);
    let mut values = BTreeSet::new();
    for &i in &tops {
        for &j in &bottoms {
            if j.is_subset(i) {
                values.insert(i.len() - j.len());
            }
        }
    }
    values
}

/// Downward closure plus the cardinality augmentation rule: for members
/// `|I| < |J|` some `x ∈ J \ I` has `I + x` a member.
pub fn is_matroid_family(n: usize, family: &Family) -> bool {
    if !family[0] {
        return false;
    }
    let members: Vec<SubsetMask> = masks(n).filter(|s| family[s.0 as usize]).collect();
    for &s in &members {
        if s.iter().any(|x| !family[s.without(x).0 as usize]) {
            return false;
        }
    }
    for &i in &members {
        for &j in &members {
            if i.len() < j.len()
                && j.difference(i)
                    .iter()
                    .all(|x| !family[i.with(x).0 as usize])
            {
                return false;
            }
        }
    }
    true
}

/// Every matroid family on `n` elements, found by testing all
/// `2^(2^n - 1)` families that contain the empty set.
pub fn all_matroid_families(n: usize) -> Vec<Family> {
    let size = 1usize << n;
    (0u64..1 << (size - 1))
        .map(|choice| {
            (0..size)
                .map(|s| s == 0 || choice >> (s - 1) & 1 == 1)
                .collect()
        })
        .filter(|f| is_matroid_family(n, f))
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

pub fn apply(perm: &[usize], s: SubsetMask) -> SubsetMask {
    s.iter().fold(SubsetMask::EMPTY, |acc, i| acc.with(perm[i]))
}

pub fn permute_family(n: usize, family: &Family, perm: &[usize]) -> Family {
    let mut out = vec![false; 1 << n];
    for s in masks(n).filter(|s| family[s.0 as usize]) {
        out[apply(perm, s).0 as usize] = true;
    }
    out
}

pub fn isomorphic(n: usize, f: &Family, g: &Family) -> bool {
    f.iter().filter(|&&b| b).count() == g.iter().filter(|&&b| b).count()
        && permutations(n)
            .iter()
            .any(|p| &permute_family(n, f, p) == g)
}

/// Isomorphism classes grouped by rank, deduplicated by pairwise
/// permutation search.
pub fn classes_by_rank(n: usize) -> BTreeMap<usize, Vec<Family>> {
    let mut by_rank: BTreeMap<usize, Vec<Family>> = BTreeMap::new();
    for f in all_matroid_families(n) {
        let reps = by_rank.entry(rank_of(n, &f)).or_default();
        if !reps.iter().any(|g| isomorphic(n, g, &f)) {
            reps.push(f);
        }
    }
    by_rank
}

pub fn automorphism_count(n: usize, family: &Family) -> usize {
    permutations(n)
        .iter()
        .filter(|p| &permute_family(n, family, p) == family)
        .count()
}

/// Dual family from the rank formula: `I` is co-independent iff
/// `r(E \ I) = r(E)`.
pub fn dual_by_rank_formula(n: usize, family: &Family) -> Family {
    let full = SubsetMask::full(n);
    let total = rank_by_definition(family, full);
    masks(n)
        .map(|s| rank_by_definition(family, full.difference(s)) == total)
        .collect()
}

/// Family of `(M/X)|Y` from `r_{M/X}(S) = r(S ∪ X) - r(X)`, indexed by
/// subsets of `Y` in compressed coordinates.
pub fn minor_by_rank_formula(family: &Family, x: SubsetMask, y: SubsetMask) -> Family {
    let base = rank_by_definition(family, x);
    subsets_of(y)
        .map(|s| rank_by_definition(family, s.union(x)) - base == s.len())
        .collect()
}

/// Independence over GF(2) by brute force: no nonempty subset sums to zero.
pub fn gf2_independent_by_sums(columns: &[Vec<bool>], s: SubsetMask) -> bool {
    subsets_of(s).skip(1).all(|t| {
        let height = columns.first().map_or(0, Vec::len);
        (0..height).any(|row| t.iter().filter(|&c| columns[c][row]).count() % 2 == 1)
    })
}

/// A set of edges is a forest iff it has no loop and
/// `|E'| = |V(E')| - components(E')`; components come from a flood fill.
pub fn is_forest(edges: &[(usize, usize)], s: SubsetMask) -> bool {
    let chosen: Vec<(usize, usize)> = s.iter().map(|e| edges[e]).collect();
    if chosen.iter().any(|&(u, v)| u == v) {
        return false;
    }
    let mut vertices: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut seen = BTreeSet::new();
    let mut components = 0;
    for &start in &vertices {
        if !seen.insert(start) {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &chosen {
                for (p, q) in [(a, b), (b, a)] {
                    if p == v && seen.insert(q) {
                        stack.push(q);
                    }
                }
            }
        }
    }
    chosen.len() + components == vertices.len()
}

/// Named matroids from the constructors: uniform matroids up to 8 elements,
/// paths, cycles and wheels with at most 8 edges, and `gf2_count` seeded
/// random binary matroids with at most 8 columns.
pub fn constructed_corpus(gf2_count: usize, seed: u64) -> Vec<(String, Matroid)> {
    let mut out = Vec::new();
    for n in 0..=8 {
        for k in 0..=n {
            out.push((format!("U({k},{n})"), Matroid::uniform(k, n).unwrap()));
        }
    }
    for (name, vertices, edges) in graph_corpus() {
        out.push((name, Matroid::graphic(vertices, &edges).unwrap()));
    }
    for (i, columns) in random_gf2_columns(gf2_count, seed).into_iter().enumerate() {
        out.push((format!("GF2#{i}"), Matroid::linear_gf2(&columns).unwrap()));
    }
    out
}

/// `(name, vertex count, edges)`.
pub type NamedGraph = (String, usize, Vec<(usize, usize)>);

pub fn graph_corpus() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for len in 1..=8 {
        out.push((
            format!("path{len}"),
            len + 1,
            (0..len).map(|i| (i, i + 1)).collect(),
        ));
    }
    for len in 1..=8 {
        out.push((
            format!("cycle{len}"),
            len,
            (0..len).map(|i| (i, (i + 1) % len)).collect(),
        ));
    }
    for spokes in 3..=4 {
        let mut edges: Vec<(usize, usize)> = (0..spokes).map(|i| (0, i + 1)).collect();
        edges.extend((0..spokes).map(|i| (i + 1, (i + 1) % spokes + 1)));
        out.push((format!("wheel{spokes}"), spokes + 1, edges));
    }
    out
}

pub fn random_gf2_columns(count: usize, seed: u64) -> Vec<Vec<Vec<bool>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let width = rng.random_range(1..=8);
            let height = rng.random_range(1..=5);
            (0..width)
                .map(|_| (0..height).map(|_| rng.random_bool(0.5)).collect())
                .collect()
        })
        .collect()
}
