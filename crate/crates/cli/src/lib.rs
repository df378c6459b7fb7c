//! Commands behind the `relrank` binary.
//!
//! Each command takes file contents rather than paths and returns the
//! complete stdout together with the exit code, so the binary is a thin
//! wrapper and tests can call commands directly.

pub mod error;
pub mod format;

use std::fmt::Display;

use relrank_core::enumeration::{counts, MAX_ENUMERATION};
use relrank_core::fincof::{distinguishing_witness, SymbolicMatroid};
use relrank_core::relrank::{duality_violation, MAX_TABLE};
use relrank_core::{Error as CoreError, GroundSet, Matroid, RelAxiom, RelRankTable, SubsetMask};

pub use error::CliError;
use format::{mask_of, parse_file, parse_set, SpecFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNKNOWN_LABEL: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    /// One `key=value` record per line.
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

struct Out {
    format: OutputFormat,
    buf: String,
}

impl Out {
    fn new(format: OutputFormat) -> Out {
        Out {
            format,
            buf: String::new(),
        }
    }

    /// Emits `key=value` in machine mode and `text` otherwise.
    fn field(&mut self, key: &str, value: impl Display, text: impl Display) {
        let line = match self.format {
            OutputFormat::Machine => format!("{key}={value}"),
            OutputFormat::Text => text.to_string(),
        };
        self.buf.push_str(&line);
        self.buf.push('\n');
    }

    /// Same line in both modes, written as `key: value` in text.
    fn plain(&mut self, key: &str, value: impl Display) {
        let text = format!("{key}: {value}");
        self.field(&key.replace(' ', "_"), value, text);
    }

    fn done(self, code: i32) -> Outcome {
        Outcome {
            stdout: self.buf,
            code,
        }
    }
}

fn matroid_spec(text: &str) -> Result<format::MatroidSpec, CliError> {
    match parse_file(text)? {
        SpecFile::Matroid(spec) => Ok(spec),
        SpecFile::Table(_) => Err(CliError::Parse(
            "expected a matroid file (no `representation:` line found)".into(),
        )),
    }
}

fn table_spec(text: &str) -> Result<format::TableSpec, CliError> {
    match parse_file(text)? {
        SpecFile::Table(spec) => Ok(spec),
        SpecFile::Matroid(_) => Err(CliError::Parse("expected a table file".into())),
    }
}

fn load_matroid(text: &str) -> Result<Matroid, CliError> {
    matroid_spec(text)?.build()
}

fn set_arg(ground: &GroundSet, text: &str) -> Result<SubsetMask, CliError> {
    let labels = parse_set(text).map_err(CliError::Parse)?;
    mask_of(ground, &labels)
}

fn pair(ground: &GroundSet, a: SubsetMask, b: SubsetMask) -> String {
    format!("({}|{})", ground.format(a), ground.format(b))
}

/// `rank(M, X)` with the greedy maximal independent subset of `X`.
pub fn rank(spec: &str, set: &str, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let m = load_matroid(spec)?;
    let x = set_arg(m.ground(), set)?;
    let witness = m.max_independent_extension(SubsetMask::EMPTY, x)?;
    let g = m.ground();
    let mut out = Out::new(fmt);
    if fmt == OutputFormat::Machine {
        out.field("set", g.format(x), "");
    }
    out.field("rank", witness.len(), witness.len());
    out.plain("witness", g.format(witness));
    Ok(out.done(EXIT_OK))
}

/// `r(A|B)` with its greedy witness pair `(I, J)`.
pub fn relrank(spec: &str, a: &str, b: &str, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let m = load_matroid(spec)?;
    let g = m.ground();
    let (a, b) = (set_arg(g, a)?, set_arg(g, b)?);
    let (i, j) = m.relative_rank_witness(a, b)?;
    let mut out = Out::new(fmt);
    if fmt == OutputFormat::Machine {
        out.field("a", g.format(a), "");
        out.field("b", g.format(b), "");
    }
    out.field("value", i.diff_size(j), i.diff_size(j));
    out.plain("I", g.format(i));
    out.plain("J", g.format(j));
    Ok(out.done(EXIT_OK))
}

fn violations(count: usize) -> String {
    match count {
        1 => "1 violation".into(),
        n => format!("{n} violations"),
    }
}

fn report_table(out: &mut Out, table: &RelRankTable) -> bool {
    let report = table.check_axioms();
    for ax in RelAxiom::ALL {
        let status = report.status(ax);
        let verdict = if status.passed() {
            "ok".to_string()
        } else if status.violations > status.witnesses.len() {
            format!(
                "fail ({}, first {} shown)",
                violations(status.violations),
                status.witnesses.len()
            )
        } else {
            format!("fail ({})", violations(status.violations))
        };
        out.field(&ax.to_string(), &verdict, format!("{ax}: {verdict}"));
    }
    for v in report.witnesses() {
        let line = v.describe(table.ground());
        out.field("violation", &line, &line);
    }
    report.all_passed()
}

/// Validates a matroid file against the independence axioms and its table
/// against R1–R5, or a table file against R1–R5 plus the redundancy remarks.
pub fn check(text: &str, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let mut out = Out::new(fmt);
    match parse_file(text)? {
        SpecFile::Matroid(spec) => {
            out.plain("matroid", &spec.name);
            out.plain("elements", spec.elements.len());
            let m = match spec.build() {
                Ok(m) => m,
                Err(CliError::Core(CoreError::Axioms(report))) => {
                    let ground = GroundSet::new(spec.elements.iter().cloned())?;
                    let verdict = format!("fail ({})", violations(report.violations.len()));
                    out.plain("independence axioms", verdict);
                    for v in &report.violations {
                        let line = v.describe(&ground);
                        out.field("violation", &line, &line);
                    }
                    return Ok(out.done(EXIT_VIOLATION));
                }
                Err(e) => return Err(e),
            };
            out.plain("independent sets", m.num_independents());
            out.plain("independence axioms", "ok");
            if m.len() > MAX_TABLE {
                out.plain(
                    "relative rank axioms",
                    format!("skipped (more than {MAX_TABLE} elements)"),
                );
                return Ok(out.done(EXIT_OK));
            }
            let table = RelRankTable::from_matroid(&m)?;
            let ok = report_table(&mut out, &table);
            Ok(out.done(if ok { EXIT_OK } else { EXIT_VIOLATION }))
        }
        SpecFile::Table(spec) => {
            let table = spec.build()?;
            out.plain("elements", table.ground().len());
            out.plain("entries", table.entries().count());
            let ok = report_table(&mut out, &table);
            let redundancy = table.redundancy_report();
            let verdict = if redundancy.contradiction() {
                "contradiction"
            } else {
                "consistent"
            };
            out.plain("R1-R3", if redundancy.r1_to_r3 { "hold" } else { "fail" });
            out.plain("redundancy", verdict);
            let code = if ok && !redundancy.contradiction() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            Ok(out.done(code))
        }
    }
}

/// Rebuilds `(E, 𝓘_r)` from a table and compares its table with the input.
pub fn roundtrip(text: &str, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let table = table_spec(text)?.build()?;
    let g = table.ground();
    let independents = table.r_independents().len();
    let (axioms, verdict, details, code) = match table.reconstruct() {
        Ok(rec) => match rec.mismatch {
            None => ("ok", "match".to_string(), Vec::new(), EXIT_OK),
            Some((a, b)) => (
                "ok",
                format!("mismatch at {}", pair(g, a, b)),
                Vec::new(),
                EXIT_VIOLATION,
            ),
        },
        Err(CoreError::Axioms(report)) => (
            "fail",
            "n/a".to_string(),
            report.violations.iter().map(|v| v.describe(g)).collect(),
            EXIT_VIOLATION,
        ),
        Err(e) => return Err(e.into()),
    };
    let mut out = Out::new(fmt);
    match fmt {
        OutputFormat::Text => out.buf.push_str(&format!(
            "independents={independents}, axioms={axioms}, table={verdict}\n"
        )),
        OutputFormat::Machine => {
            out.field("independents", independents, "");
            out.field("axioms", axioms, "");
            out.field("table", &verdict, "");
        }
    }
    for line in details {
        out.field("violation", &line, &line);
    }
    Ok(out.done(code))
}

/// Tests `r_M(A|B) + r_N(E\B|E\A) = |A\B|` on every nested pair.
pub fn dualcheck(first: &str, second: &str, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let m = load_matroid(first)?;
    let n = load_matroid(second)?;
    if m.ground() != n.ground() {
        return Err(CliError::Precondition(
            "both files must list the same elements in the same order".into(),
        ));
    }
    let mut out = Out::new(fmt);
    match duality_violation(&m, &n)? {
        None => {
            out.plain("dual", "yes");
            Ok(out.done(EXIT_OK))
        }
        Some((a, b)) => {
            let g = m.ground();
            let full = m.full();
            let (ca, cb) = (full.difference(b), full.difference(a));
            let left = m.relative_rank(a, b)?;
            let right = n.relative_rank(ca, cb)?;
            out.plain("dual", "no");
            out.plain("first violation", pair(g, a, b));
            let line = format!(
                "r_M{} + r_N{} = {left} + {right} but |A\\B| = {}",
                pair(g, a, b),
                pair(g, ca, cb),
                a.diff_size(b)
            );
            out.field("detail", &line, &line);
            Ok(out.done(EXIT_VIOLATION))
        }
    }
}

/// Ranks and relative ranks of the free and almost-free matroids on `Z` at
/// the pair that separates them.
pub fn counterexample(fmt: OutputFormat) -> Result<Outcome, CliError> {
    let w = distinguishing_witness();
    let mut out = Out::new(fmt);
    out.plain("A", &w.a);
    out.plain("B", &w.b);
    for kind in SymbolicMatroid::BOTH {
        let name = kind.name();
        for (label, set) in [("A", &w.a), ("B", &w.b)] {
            let r = kind.rank(set);
            out.field(
                &format!("rank.{name}.{label}"),
                r,
                format!("rank_{name}({set}) = {r}"),
            );
        }
    }
    for kind in SymbolicMatroid::BOTH {
        let name = kind.name();
        let r = kind.relative_rank(&w.a, &w.b)?;
        out.field(
            &format!("relrank.{name}"),
            r,
            format!("r_{name}({}|{}) = {r}", w.a, w.b),
        );
    }
    Ok(out.done(EXIT_OK))
}

/// Labeled and isomorphism-class counts for every size up to `n`.
pub fn enumerate(n: usize, fmt: OutputFormat) -> Result<Outcome, CliError> {
    if n > MAX_ENUMERATION {
        return Err(CliError::Precondition(format!(
            "enumeration is limited to {MAX_ENUMERATION} elements"
        )));
    }
    let mut out = Out::new(fmt);
    let mut classes = Vec::new();
    for k in 0..=n {
        let (labeled, iso) = counts(k)?;
        classes.push(iso.to_string());
        out.field(
            &format!("labeled.{k}"),
            labeled,
            format!("n={k} labeled={labeled} classes={iso}"),
        );
        if fmt == OutputFormat::Machine {
            out.field(&format!("classes.{k}"), iso, "");
        }
    }
    out.plain("classes", classes.join(" "));
    Ok(out.done(EXIT_OK))
}

/// The relative rank table of a matroid file, in table file syntax.
pub fn table(spec: &str) -> Result<Outcome, CliError> {
    let m = load_matroid(spec)?;
    let t = RelRankTable::from_matroid(&m)?;
    Ok(Outcome {
        stdout: format::write_table(&t),
        code: EXIT_OK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const U24: &str = "name: U24\nelements: a, b, c, d\nrepresentation: uniform\nrank: 2\n";
    const U12: &str = "elements: a, b\nrepresentation: uniform\nrank: 1\n";
    const U13: &str = "elements: a, b, c\nrepresentation: uniform\nrank: 1\n";
    const U23: &str = "elements: a, b, c\nrepresentation: uniform\nrank: 2\n";
    const TEXT: OutputFormat = OutputFormat::Text;

    fn first_line(o: &Outcome) -> &str {
        o.stdout.lines().next().unwrap()
    }

    #[test]
    fn rank_examples() {
        let o = rank(U24, "{a,b,c,d}", TEXT).unwrap();
        assert_eq!(o.stdout, "2\nwitness: {a,b}\n");
        assert_eq!(first_line(&rank(U24, "{}", TEXT).unwrap()), "0");
        let tri = "elements: x, y, z\nrepresentation: graphic\nvertices: 3\nedge: 0 1\nedge: 1 2\nedge: 2 0\n";
        assert_eq!(first_line(&rank(tri, "{x,y,z}", TEXT).unwrap()), "2");
        assert_eq!(
            rank(U24, "{e}", TEXT).unwrap_err().exit_code(),
            EXIT_UNKNOWN_LABEL
        );
        assert_eq!(
            rank("elements: a\n", "{}", TEXT).unwrap_err().exit_code(),
            EXIT_PARSE
        );
        assert_eq!(rank(U24, "a", TEXT).unwrap_err().exit_code(), EXIT_PARSE);
    }

    #[test]
    fn relrank_examples() {
        assert_eq!(
            first_line(&relrank(U12, "{a,b}", "{a}", TEXT).unwrap()),
            "0"
        );
        assert_eq!(
            first_line(&relrank(U24, "{b,c}", "{b,c}", TEXT).unwrap()),
            "0"
        );
        let o = relrank(U24, "{a,b,c,d}", "{a}", TEXT).unwrap();
        assert_eq!(o.stdout, "1\nI: {a,b}\nJ: {a}\n");
        let e = relrank(U24, "{a}", "{a,b}", TEXT).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_PRECONDITION);
    }

    #[test]
    fn check_reports_independence_violations() {
        let spec = "name: broken\nelements: a, b\nrepresentation: explicit\nindependent: {}\nindependent: {a,b}\n";
        let o = check(spec, TEXT).unwrap();
        assert_eq!(o.code, EXIT_VIOLATION);
        assert!(o
            .stdout
            .contains("I2 violation: {a,b} in family but {a} absent\n"));
        let o = check(U24, TEXT).unwrap();
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.ends_with("R5: ok\n"));
    }

    #[test]
    fn check_reports_table_violations() {
        let good = table(U12).unwrap().stdout;
        assert_eq!(check(&good, TEXT).unwrap().code, EXIT_OK);
        let bad = good.replace("r({a,b}|{}) = 1", "r({a,b}|{}) = 2");
        let o = check(&bad, TEXT).unwrap();
        assert_eq!(o.code, EXIT_VIOLATION);
        assert!(o
            .stdout
            .contains("R3 violation: r({a,b}|{}) = 2 but r({a,b}|{a}) + r({a}|{}) = 0 + 1\n"));
    }

    #[test]
    fn roundtrip_examples() {
        let t = table(U23).unwrap().stdout;
        let o = roundtrip(&t, TEXT).unwrap();
        assert_eq!(
            (o.stdout.as_str(), o.code),
            ("independents=7, axioms=ok, table=match\n", 0)
        );

        let zeros: String = t
            .lines()
            .map(|l| match l.split_once(" = ") {
                Some((k, _)) => format!("{k} = 0\n"),
                None => format!("{l}\n"),
            })
            .collect();
        let o = roundtrip(&zeros, TEXT).unwrap();
        assert_eq!(o.stdout, "independents=1, axioms=ok, table=match\n");

        let bad = table(U12)
            .unwrap()
            .stdout
            .replace("r({a,b}|{}) = 1", "r({a,b}|{}) = 2");
        let o = roundtrip(&bad, TEXT).unwrap();
        assert_eq!(o.code, EXIT_VIOLATION);
        assert_eq!(
            o.stdout,
            "independents=3, axioms=ok, table=mismatch at ({a,b}|{})\n"
        );
    }

    #[test]
    fn dualcheck_examples() {
        assert_eq!(dualcheck(U13, U23, TEXT).unwrap().stdout, "dual: yes\n");
        let o = dualcheck(U13, U13, TEXT).unwrap();
        assert_eq!(o.code, EXIT_VIOLATION);
        assert!(o.stdout.starts_with("dual: no\n"));
        assert_eq!(
            dualcheck(U13, U24, TEXT).unwrap_err().exit_code(),
            EXIT_PRECONDITION
        );
    }

    #[test]
    fn counterexample_output() {
        let o = counterexample(TEXT).unwrap();
        assert!(o.stdout.contains("rank_M(Z) = inf\n"));
        assert!(o.stdout.contains("rank_M'(Z) = inf\n"));
        assert!(o.stdout.contains("r_M(Z|Z-{0}) = 1\n"));
        assert!(o.stdout.contains("r_M'(Z|Z-{0}) = 0\n"));
    }

    #[test]
    fn enumerate_output() {
        let o = enumerate(4, TEXT).unwrap();
        assert!(o.stdout.ends_with("classes: 1 2 4 8 17\n"));
        assert_eq!(
            enumerate(6, TEXT).unwrap_err().exit_code(),
            EXIT_PRECONDITION
        );
    }

    #[test]
    fn machine_mode_is_key_value() {
        for o in [
            rank(U24, "{a,b}", OutputFormat::Machine).unwrap(),
            relrank(U24, "{a,b}", "{}", OutputFormat::Machine).unwrap(),
            check(U24, OutputFormat::Machine).unwrap(),
            counterexample(OutputFormat::Machine).unwrap(),
            enumerate(2, OutputFormat::Machine).unwrap(),
        ] {
            for line in o.stdout.lines() {
                let (k, _) = line.split_once('=').unwrap();
                assert!(!k.is_empty() && !k.contains(' '), "{line:?}");
            }
        }
    }
}
