//! The ten acceptance criteria, one PASS/FAIL line each. Exits nonzero if
//! any criterion fails.

#[path = "../../core/tests/support/oracles.rs"]
mod oracles;


use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use oracles::*;
use relrank_core::enumeration::{
    converse_fuzz, enumerate_matroids, isomorphism_classes, FuzzReport,
};
use relrank_core::fincof::{distinguishing_witness, sample_sets, SymbolicMatroid};
use relrank_core::relrank::{duality_identity, zoom_identity};
use relrank_core::{ExtendedNat, Matroid, RelRankTable};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn classes(max_n: usize) -> Vec<Matroid> {
    (0..=max_n)
        .flat_map(|n| isomorphism_classes(n).unwrap())
        .map(|e| e.matroid)
        .collect()
}

fn axioms_forward() -> Outcome {
    let ours: Vec<usize> = (0..=4)
        .map(|n| isomorphism_classes(n).unwrap().len())
        .collect();
    let brute: Vec<usize> = (0..=4)
        .map(|n| classes_by_rank(n).values().map(Vec::len).sum())
        .collect();
    ensure(ours == brute && ours == [1, 2, 4, 8, 17], || {
        format!("class counts {ours:?}, second pipeline {brute:?}")
    })?;
    let mut checked = 0;
    let named = classes(4)
        .into_iter()
        .map(|m| (format!("class on {} elements", m.len()), m))
        .chain(constructed_corpus(50, 2024));
    for (name, m) in named {
        let report = RelRankTable::from_matroid(&m)
            .unwrap()
            .check_axioms()
            .clone();
        ensure(report.all_passed(), || format!("{name}: {report:?}"))?;
        checked += 1;
    }
    Ok(format!(
        "{checked} matroids, class counts {ours:?} from both pipelines"
    ))
}

fn round_trip() -> Outcome {
    let corpus = classes(4);
    for m in &corpus {
        let t = RelRankTable::from_matroid(m).unwrap();
        let rec = t.reconstruct().map_err(|e| format!("{m:?}: {e}"))?;
        ensure(family_of(&rec.matroid) == family_of(m), || {
            format!("{m:?}: family differs")
        })?;
        ensure(rec.roundtrip_ok(), || {
            format!("{m:?}: table mismatch at {:?}", rec.mismatch)
        })?;
    }
    Ok(format!("{} matroids", corpus.len()))
}

fn fuzz_summary(n: usize, r: &FuzzReport) -> String {
    format!(
        "n={n}: {} trials, {} passing, {} mismatches",
        r.trials, r.passing, r.mismatches
    )
}

fn converse_fuzzing() -> Outcome {
    let mut parts = Vec::new();
    for (n, trials) in [(3, 10_000), (4, 1_000)] {
        let r = converse_fuzz(n, trials, 7 + n as u64).unwrap();
        ensure(r.hard_failures.is_empty(), || {
            format!(
                "n={n}: passing tables that did not round-trip: {:?}",
                r.hard_failures
            )
        })?;
        ensure(r.mismatches_without_violation == 0, || {
            format!(
                "n={n}: {} mismatches without a violation",
                r.mismatches_without_violation
            )
        })?;
        ensure(r.passing > 0 && r.mismatches > 0, || {
            format!("n={n}: degenerate sample {r:?}")
        })?;
        parts.push(fuzz_summary(n, &r));
    }
    Ok(parts.join("; "))
}

fn witness_independence() -> Outcome {
    let mut pairs = 0;
    for m in classes(4) {
        let family = family_of(&m);
        for (a, b) in m.ground().nested_pairs().unwrap() {
            let values = witness_values(&family, a, b);
            let expected = m.relative_rank(a, b).unwrap();
            ensure(values.len() == 1 && values.contains(&expected), || {
                format!("{m:?} A={a:?} B={b:?}: witness values {values:?}, kernel {expected}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} nested pairs"))
}

fn zoom() -> Outcome {
    let mut checked = 0;
    for m in classes(4) {
        let family = family_of(&m);
        let full = m.full();
        for x in masks(m.len()) {
            for y in subsets_of(full.difference(x)) {
                ensure(zoom_identity(&m, x, y).unwrap(), || {
                    format!("{m:?} X={x:?} Y={y:?}")
                })?;
                let minor = minor_by_rank_formula(&family, x, y);
                for extra_a in subsets_of(y) {
                    for extra_b in subsets_of(extra_a) {
                        let direct =
                            relrank_by_definition(&family, x.union(extra_a), x.union(extra_b));
                        let zoomed =
                            relrank_by_definition(&minor, extra_a.compress(y), extra_b.compress(y));
                        ensure(direct == zoomed, || {
                            format!("{m:?} X={x:?} Y={y:?} A\\X={extra_a:?} B\\X={extra_b:?}")
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} instances"))
}

fn independence_from_relrank() -> Outcome {
    let mut sets = 0;
    for m in classes(5) {
        let family = family_of(&m);
        let t = RelRankTable::from_matroid(&m).unwrap();
        for i in masks(m.len()) {
            let by_definition = i
                .iter()
                .all(|x| relrank_by_definition(&family, i, i.without(x)) > 0);
            ensure(
                m.contains(i) == by_definition && m.contains(i) == t.is_r_independent(i),
                || format!("{m:?} I={i:?}"),
            )?;
            sets += 1;
        }
    }
    Ok(format!("{sets} subsets"))
}

fn duality() -> Outcome {
    let mut pairs = 0;
    for n in 0..=3 {
        let all = enumerate_matroids(n).unwrap();
        for m in &all {
            let dual = dual_by_rank_formula(n, &family_of(m));
            for other in &all {
                let holds = duality_identity(m, other).unwrap();
                ensure(holds == (family_of(other) == dual), || {
                    format!("{m:?} vs {other:?}")
                })?;
                pairs += 1;
            }
        }
    }
    let mut involutions = 0;
    for n in 0..=4 {
        for m in enumerate_matroids(n).unwrap() {
            ensure(m.dual().dual() == m, || format!("{m:?}"))?;
            involutions += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs, {involutions} involutions"))
}

fn redundancy() -> Outcome {
    let mut parts = Vec::new();
    for (n, trials) in [(1, 1_000), (2, 2_000), (3, 10_000), (4, 1_000)] {
        let r = converse_fuzz(n, trials, 7 + n as u64).unwrap();
        ensure(r.redundancy_contradictions.is_empty(), || {
            let tables: Vec<String> = r
                .redundancy_contradictions
                .iter()
                .map(relrank_cli::format::write_table)
                .collect();
            format!(
                "n={n}: tables satisfying R1-R3 but not R4/R5:\n{}",
                tables.join("\n")
            )
        })?;
        ensure(r.r1_to_r3 > 0, || {
            format!("n={n}: no fuzzed table satisfied R1-R3")
        })?;
        parts.push(format!(
            "n={n}: {} of {} satisfy R1-R3",
            r.r1_to_r3, r.trials
        ));
    }
    Ok(parts.join("; "))
}

fn counterexample() -> Outcome {
    let sets = sample_sets(99, 10_000, 6);
    for s in &sets {
        let (free, almost) = (
            SymbolicMatroid::FreeZ.rank(s),
            SymbolicMatroid::AlmostFreeZ.rank(s),
        );
        ensure(free == almost, || {
            format!("rank differs at {s}: {free} vs {almost}")
        })?;
    }
    let w = distinguishing_witness();
    let free = SymbolicMatroid::FreeZ.relative_rank(&w.a, &w.b).unwrap();
    let almost = SymbolicMatroid::AlmostFreeZ
        .relative_rank(&w.a, &w.b)
        .unwrap();
    ensure(
        (free, almost) == (ExtendedNat::Finite(1), ExtendedNat::Finite(0)),
        || {
            format!(
                "relative ranks at ({}|{}) are {free} and {almost}",
                w.a, w.b
            )
        },
    )?;
    for n in 0..=6 {
        for kind in SymbolicMatroid::BOTH {
            let window = kind.window(n).unwrap();
            ensure(window == Matroid::uniform(n, n).unwrap(), || {
                format!("{} window on {n} elements is not free", kind.name())
            })?;
        }
    }
    Ok(format!(
        "{} sets agree on rank; r({}|{}) = {free} vs {almost}; windows n<=6 free",
        sets.len(),
        w.a,
        w.b
    ))
}

fn cli_determinism() -> Outcome {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in golden::CASES {
        let first = golden::run(args, "1");
        let expected = std::fs::read_to_string(golden_dir.join(format!("{name}.txt")))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(first == expected, || {
            format!("{name}: differs from golden file")
        })?;
        ensure(first == golden::run(args, "1"), || {
            format!("{name}: second run differs")
        })?;
        ensure(first == golden::run(args, "4"), || {
            format!("{name}: four threads differ")
        })?;
    }
    Ok(format!("{} commands, 3 runs each", golden::CASES.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("axioms forward", axioms_forward),
        ("reconstruction round trip", round_trip),
        ("converse fuzzing", converse_fuzzing),
        ("witness independence", witness_independence),
        ("zoom identity", zoom),
        ("independence from relative rank", independence_from_relrank),
        ("duality characterization", duality),
        ("redundancy remarks", redundancy),
        ("infinite counterexample", counterexample),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS ({detail}) [{secs:.1}s]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} {name}: FAIL ({detail}) [{secs:.1}s]",
                    i + 1
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
