//! Command-line surface: the JSON algebra file format, analysis reports,
//! generators, and the classification runner.
//!
//! Exit codes: 0 success, 1 user/input error (parse failures, Jacobi
//! violations, bad parameters), 2 internal invariant breach (the
//! antidiagonal sums of the limit table disagreeing with the Betti
//! numbers — never expected).

use crate::cohomology;
use crate::constructors;
use crate::exactlin::Rational;
use crate::liealg::LieAlgebra;
use crate::rootsys::{self, Family};
use crate::symplectic::{self, NonSymplecticReason, SymplecticVerdict};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "1";

// ---------------------------------------------------------------------
// Algebra file format
// ---------------------------------------------------------------------

/// JSON document for a Lie algebra: 1-based indices, `i < j`, rationals
/// as canonical `"p/q"` (or integer) strings. Unknown fields rejected.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema_version: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: Vec<BracketTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketTerm {
    pub k: usize,
    pub c: String,
}

impl AlgebraFile {
    pub fn from_algebra(a: &LieAlgebra) -> AlgebraFile {
        AlgebraFile {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: a.dim(),
            basis: a.basis_labels().to_vec(),
            brackets: a
                .bracket_entries()
                .map(|(&(i, j), terms)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    out: terms
                        .iter()
                        .map(|(k, c)| BracketTerm {
                            k: k + 1,
                            c: c.to_canonical_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {:?}, expected {:?}",
                self.schema_version, SCHEMA_VERSION
            ));
        }
        if self.basis.len() != self.dim {
            return Err(format!(
                "dim is {} but {} basis labels are given",
                self.dim,
                self.basis.len()
            ));
        }
        let mut brackets = Vec::new();
        for (n, entry) in self.brackets.iter().enumerate() {
            let context = format!("brackets[{n}] (i={}, j={})", entry.i, entry.j);
            if entry.i == 0 || entry.j == 0 || entry.i > self.dim || entry.j > self.dim {
                return Err(format!("{context}: indices must be in 1..={}", self.dim));
            }
            if entry.i >= entry.j {
                return Err(format!("{context}: requires i < j"));
            }
            let mut terms = Vec::new();
            for term in &entry.out {
                if term.k == 0 || term.k > self.dim {
                    return Err(format!(
                        "{context}: output index k={} out of range 1..={}",
                        term.k, self.dim
                    ));
                }
                let c = Rational::from_str(&term.c)
                    .map_err(|e| format!("{context}: bad coefficient {:?}: {e}", term.c))?;
                terms.push((term.k - 1, c));
            }
            brackets.push(((entry.i - 1, entry.j - 1), terms));
        }
        LieAlgebra::new(self.dim, self.basis.clone(), brackets).map_err(|e| e.to_string())
    }

    /// Canonical serialization: fixed field order, two-space indent,
    /// trailing newline. Generate/parse/re-serialize is byte-identical.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<AlgebraFile, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }
}

// ---------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub algebra: AlgebraMeta,
    /// Betti numbers `b_0..b_2`, or all of them when the table was
    /// requested.
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_infty: Option<Vec<TableCell>>,
    pub e02_dim: usize,
    pub obstruction_vanishes: bool,
    pub verdict: VerdictReport,
    pub timing_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraMeta {
    pub dim: usize,
    pub nilpotency_index: usize,
    pub series_dims: Vec<usize>,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableCell {
    pub p: usize,
    pub q: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerdictReport {
    Symplectic {
        witness: Vec<WitnessTerm>,
        witness_display: String,
    },
    CertifiedNonSymplectic {
        reason: String,
    },
    Inconclusive {
        samples: usize,
        degree_bound: usize,
        sample_space_size: u64,
        failure_bound: String,
        failure_bound_log10: f64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessTerm {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

fn approx_log10(r: &Rational) -> f64 {
    let n = r.numer().magnitude().bits() as f64;
    let d = r.denom().magnitude().bits() as f64;
    (n - d) * std::f64::consts::LN_2 / std::f64::consts::LN_10
}

impl VerdictReport {
    fn from_verdict(v: &SymplecticVerdict) -> VerdictReport {
        match v {
            SymplecticVerdict::Symplectic { witness } => VerdictReport::Symplectic {
                witness: witness
                    .terms()
                    .map(|(t, c)| WitnessTerm {
                        i: t[0] + 1,
                        j: t[1] + 1,
                        c: c.to_canonical_string(),
                    })
                    .collect(),
                witness_display: witness.to_string(),
            },
            SymplecticVerdict::CertifiedNonSymplectic { reason } => {
                VerdictReport::CertifiedNonSymplectic {
                    reason: match reason {
                        NonSymplecticReason::OddDimension => "odd_dimension".into(),
                        NonSymplecticReason::ObstructionVanishes => "obstruction_vanishes".into(),
                    },
                }
            }
            SymplecticVerdict::Inconclusive {
                samples,
                degree_bound,
                sample_space_size,
                failure_bound,
            } => VerdictReport::Inconclusive {
                samples: *samples,
                degree_bound: *degree_bound,
                sample_space_size: *sample_space_size,
                failure_bound: failure_bound.to_canonical_string(),
                failure_bound_log10: approx_log10(failure_bound),
            },
        }
    }

    fn human(&self) -> String {
        match self {
            VerdictReport::Symplectic {
                witness_display, ..
            } => {
                format!("symplectic\nwitness: {witness_display}")
            }
            VerdictReport::CertifiedNonSymplectic { reason } => {
                format!("certified non-symplectic ({reason})")
            }
            VerdictReport::Inconclusive {
                samples,
                failure_bound_log10,
                ..
            } => format!(
                "inconclusive after {samples} samples (failure bound ~1e{:.0})",
                failure_bound_log10
            ),
        }
    }
}

pub struct AnalyzeOptions {
    pub seed: u64,
    pub samples: usize,
    pub coeff_bound: i64,
    pub e_table: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: 42,
            samples: symplectic::DEFAULT_SAMPLES,
            coeff_bound: symplectic::DEFAULT_COEFF_BOUND,
            e_table: false,
        }
    }
}

/// Full analysis of one algebra. `Err(String)` is a user-input problem
/// (exit 1); the `DecompositionMismatch` variant inside maps to exit 2
/// by the caller.
pub fn analyze(a: &LieAlgebra, opts: &AnalyzeOptions) -> crate::Result<AnalysisReport> {
    let start = Instant::now();
    let series = a.lower_central_series()?;
    let verdict = symplectic::decide_with_bound(a, opts.seed, opts.samples, opts.coeff_bound)?;
    let e02 = cohomology::e_infty_dim(a, 0, 2)?;
    let (betti, e_infty) = if opts.e_table {
        let table = cohomology::e_infty_table(a)?;
        let betti: Vec<usize> = (0..=a.dim()).map(|i| table.antidiagonal_sum(i)).collect();
        let cells = table
            .entries()
            .map(|(&(p, q), &dim)| TableCell { p, q, dim })
            .collect();
        (betti, Some(cells))
    } else {
        let betti = (0..=2.min(a.dim()))
            .map(|i| cohomology::betti(a, i))
            .collect::<crate::Result<Vec<_>>>()?;
        (betti, None)
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION.to_string(),
        algebra: AlgebraMeta {
            dim: a.dim(),
            nilpotency_index: series.nilpotency_index,
            series_dims: series.ideal_dims(),
            basis: a.basis_labels().to_vec(),
        },
        betti,
        e_infty,
        e02_dim: e02,
        obstruction_vanishes: e02 == 0,
        verdict: VerdictReport::from_verdict(&verdict),
        timing_ms: start.elapsed().as_millis(),
    })
}

fn render_report(report: &AnalysisReport, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    let meta = &report.algebra;
    let _ = writeln!(
        out,
        "algebra: dim {}, nilpotency index {}, series dims {:?}",
        meta.dim, meta.nilpotency_index, meta.series_dims
    );
    let betti_str = report
        .betti
        .iter()
        .enumerate()
        .map(|(i, b)| format!("b{i}={b}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "betti: {betti_str}");
    let _ = writeln!(out, "E_inf^(0,2): {}", report.e02_dim);
    let _ = writeln!(
        out,
        "obstruction vanishes: {}",
        if report.obstruction_vanishes { "yes" } else { "no" }
    );
    if let Some(cells) = &report.e_infty {
        let _ = writeln!(out, "E_infinity table (p, q) -> dim:");
        for cell in cells {
            let _ = writeln!(out, "  ({}, {}) -> {}", cell.p, cell.q, cell.dim);
        }
    }
    let _ = writeln!(out, "verdict: {}", report.verdict.human());
    let _ = writeln!(out, "time: {} ms", report.timing_ms);
    out
}

// ---------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyRow {
    pub family: String,
    pub rank: usize,
    pub dim: usize,
    pub nilpotency_index: usize,
    pub e02_dim: usize,
    pub extension_dim: usize,
    pub verdict: String,
}

/// Default desk-scale rank ranges per family.
pub fn default_ranges() -> Vec<(Family, usize, usize)> {
    vec![
        (Family::A, 1, 5),
        (Family::B, 2, 4),
        (Family::C, 3, 4),
        (Family::D, 4, 5),
    ]
}

/// One classification row: the nilradical's invariants plus the verdict
/// for its even-dimensional trivial extension. The antidiagonal sums of
/// low degrees are re-checked against the Betti numbers; a mismatch is
/// an internal error.
pub fn classify_cell(
    family: Family,
    rank: usize,
    opts: &AnalyzeOptions,
) -> crate::Result<ClassifyRow> {
    let nr = rootsys::nilradical(family, rank)?;
    let a = &nr.algebra;
    let series = a.lower_central_series()?;
    let e02 = cohomology::e_infty_dim(a, 0, 2)?;
    for i in 0..=2usize.min(a.dim()) {
        // Cells with negative q contribute, so p runs over the whole
        // filtration range.
        let sum: usize = (0..series.nilpotency_index)
            .map(|p| cohomology::e_infty_dim(a, p, i as i64 - p as i64))
            .collect::<crate::Result<Vec<_>>>()?
            .iter()
            .sum();
        let betti = cohomology::betti(a, i)?;
        if sum != betti {
            return Err(crate::Error::DecompositionMismatch {
                degree: i,
                sum,
                betti,
            });
        }
    }
    let s = a.dim() % 2;
    let extended = a.trivial_extension(s)?;
    let verdict = symplectic::decide_with_bound(&extended, opts.seed, opts.samples, opts.coeff_bound)?;
    Ok(ClassifyRow {
        family: family.to_string(),
        rank,
        dim: a.dim(),
        nilpotency_index: series.nilpotency_index,
        e02_dim: e02,
        extension_dim: extended.dim(),
        verdict: match verdict {
            SymplecticVerdict::Symplectic { .. } => "symplectic".into(),
            SymplecticVerdict::CertifiedNonSymplectic { .. } => "certified_non_symplectic".into(),
            SymplecticVerdict::Inconclusive { .. } => "inconclusive".into(),
        },
    })
}

/// Runs the classification over the requested cells in parallel; output
/// order is fixed by (family, rank) regardless of completion order.
pub fn classify(
    cells: &[(Family, usize)],
    opts: &AnalyzeOptions,
) -> crate::Result<Vec<ClassifyRow>> {
    let mut results: Vec<(usize, crate::Result<ClassifyRow>)> = cells
        .par_iter()
        .enumerate()
        .map(|(idx, &(family, rank))| (idx, classify_cell(family, rank, opts)))
        .collect();
    results.sort_by_key(|(idx, _)| *idx);
    results.into_iter().map(|(_, r)| r).collect()
}

pub fn render_classify(rows: &[ClassifyRow], json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<7} {:<5} {:<4} {:<3} {:<4} {:<8} verdict",
        "family", "rank", "dim", "k", "e02", "ext_dim"
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{:<7} {:<5} {:<4} {:<3} {:<4} {:<8} {}",
            row.family,
            row.rank,
            row.dim,
            row.nilpotency_index,
            row.e02_dim,
            row.extension_dim,
            row.verdict
        );
    }
    out
}

// ---------------------------------------------------------------------
// Command-line interface
// ---------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "nilpo",
    version,
    about = "Exact symplectic-existence decisions for nilpotent Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// PRNG seed for the witness search.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of witness samples.
    #[arg(long, global = true, default_value_t = symplectic::DEFAULT_SAMPLES)]
    samples: usize,
    /// Coefficient bound for sampled witnesses.
    #[arg(long, global = true, default_value_t = symplectic::DEFAULT_COEFF_BOUND)]
    coeff_bound: i64,
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze an algebra file: series, Betti numbers, obstruction,
    /// symplectic verdict.
    Analyze {
        /// Path to an algebra JSON file.
        path: PathBuf,
        /// Also compute the full E-infinity table (expensive).
        #[arg(long)]
        e_table: bool,
    },
    /// Generate an algebra file on stdout.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Classify nilradicals over desk-scale rank ranges.
    Classify {
        /// Comma-separated families to include (default: A,B,C,D).
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        /// Cap every family's maximal rank.
        #[arg(long)]
        max_rank: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GenerateKind {
    /// Abelian algebra of a given dimension.
    Abelian {
        #[arg(long)]
        dim: usize,
    },
    /// Heisenberg algebra of odd dimension.
    Heisenberg {
        #[arg(long)]
        dim: usize,
    },
    /// Free nilpotent algebra on a Hall basis (class <= 3).
    Free {
        #[arg(long)]
        gens: usize,
        #[arg(long)]
        class: usize,
    },
    /// Two-step algebra of a graph; edges as JSON, e.g. '[[1,2],[2,3]]'.
    Graph {
        /// Edge list as a JSON array of 1-based vertex pairs.
        #[arg(long)]
        edges: String,
        /// Vertex count (defaults to the largest endpoint).
        #[arg(long)]
        vertices: Option<usize>,
    },
    /// Nilradical of the minimal parabolic for a classical family.
    Nilradical {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
    },
    /// The fixed six-dimensional example.
    Example6,
}

fn generate(kind: &GenerateKind) -> Result<LieAlgebra, String> {
    match kind {
        GenerateKind::Abelian { dim } => constructors::abelian(*dim).map_err(|e| e.to_string()),
        GenerateKind::Heisenberg { dim } => {
            constructors::heisenberg(*dim).map_err(|e| e.to_string())
        }
        GenerateKind::Free { gens, class } => {
            constructors::free_nilpotent(*gens, *class).map_err(|e| e.to_string())
        }
        GenerateKind::Graph { edges, vertices } => {
            let pairs: Vec<(usize, usize)> =
                serde_json::from_str(edges).map_err(|e| format!("bad edge list: {e}"))?;
            if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
                return Err("vertices are 1-based".into());
            }
            let needed = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
            let count = vertices.unwrap_or(needed);
            let zero_based: Vec<(usize, usize)> =
                pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
            let graph =
                constructors::Graph::new(count, &zero_based).map_err(|e| e.to_string())?;
            constructors::graph_algebra(&graph).map_err(|e| e.to_string())
        }
        GenerateKind::Nilradical { family, rank } => {
            let family = Family::from_str(family)?;
            rootsys::nilradical(family, *rank)
                .map(|nr| nr.algebra)
                .map_err(|e| e.to_string())
        }
        GenerateKind::Example6 => Ok(constructors::example_six_dim().0),
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("NILPO_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    configure_threads();
    let cli = Cli::parse();
    let opts = AnalyzeOptions {
        seed: cli.seed,
        samples: cli.samples,
        coeff_bound: cli.coeff_bound,
        e_table: false,
    };
    match &cli.command {
        Command::Analyze { path, e_table } => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return 1;
                }
            };
            let file = match AlgebraFile::parse(&text) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return 1;
                }
            };
            let algebra = match file.to_algebra() {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return 1;
                }
            };
            let violations = algebra.validate();
            if !violations.is_empty() {
                eprintln!(
                    "error: {}: not a Lie algebra ({} Jacobi violations)",
                    path.display(),
                    violations.len()
                );
                for v in violations.iter().take(5) {
                    let crate::liealg::Violation::Jacobi { triple, .. } = v;
                    eprintln!(
                        "  Jacobi fails on (e{}, e{}, e{})",
                        triple.0 + 1,
                        triple.1 + 1,
                        triple.2 + 1
                    );
                }
                return 1;
            }
            let opts = AnalyzeOptions {
                e_table: *e_table,
                ..opts
            };
            match analyze(&algebra, &opts) {
                Ok(report) => {
                    print!("{}", render_report(&report, cli.json));
                    0
                }
                Err(crate::Error::DecompositionMismatch { degree, sum, betti }) => {
                    eprintln!(
                        "internal error: antidiagonal {degree} sums to {sum}, Betti number is {betti}"
                    );
                    2
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Command::Generate { kind } => match generate(kind) {
            Ok(algebra) => {
                print!("{}", AlgebraFile::from_algebra(&algebra).to_canonical_json());
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Command::Classify { families, max_rank } => {
            let keep: Option<Vec<Family>> = match families {
                None => None,
                Some(list) => {
                    let mut fams = Vec::new();
                    for f in list {
                        match Family::from_str(f) {
                            Ok(fam) => fams.push(fam),
                            Err(e) => {
                                eprintln!("error: {e}");
                                return 1;
                            }
                        }
                    }
                    Some(fams)
                }
            };
            let mut cells = Vec::new();
            for (family, lo, hi) in default_ranges() {
                if keep.as_ref().is_some_and(|k| !k.contains(&family)) {
                    continue;
                }
                let hi = max_rank.map_or(hi, |cap| hi.min(cap));
                for rank in lo..=hi {
                    cells.push((family, rank));
                }
            }
            match classify(&cells, &opts) {
                Ok(rows) => {
                    print!("{}", render_classify(&rows, cli.json));
                    0
                }
                Err(crate::Error::DecompositionMismatch { degree, sum, betti }) => {
                    eprintln!(
                        "internal error: antidiagonal {degree} sums to {sum}, Betti number is {betti}"
                    );
                    2
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;

    #[test]
    fn algebra_file_roundtrip_is_byte_identical() {
        let (a, _, _) = constructors::example_six_dim();
        let file = AlgebraFile::from_algebra(&a);
        let text = file.to_canonical_json();
        let reparsed = AlgebraFile::parse(&text).unwrap();
        assert_eq!(reparsed, file);
        assert_eq!(reparsed.to_canonical_json(), text);
        let algebra = reparsed.to_algebra().unwrap();
        assert_eq!(algebra, a);
    }

    #[test]
    fn algebra_file_rejects_bad_input() {
        let good = AlgebraFile::from_algebra(&constructors::heisenberg(3).unwrap());
        // Unknown field.
        let mut v: serde_json::Value =
            serde_json::from_str(&good.to_canonical_json()).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(AlgebraFile::parse(&v.to_string()).is_err());

        // i >= j.
        let mut bad = good.clone();
        bad.brackets[0].j = bad.brackets[0].i;
        assert!(bad.to_algebra().is_err());

        // 0-based index.
        let mut bad = good.clone();
        bad.brackets[0].i = 0;
        assert!(bad.to_algebra().is_err());

        // Bad rational.
        let mut bad = good.clone();
        bad.brackets[0].out[0].c = "1/0".into();
        assert!(bad.to_algebra().is_err());

        // Wrong schema version.
        let mut bad = good;
        bad.schema_version = "2".into();
        assert!(bad.to_algebra().is_err());
    }

    #[test]
    fn rationals_serialize_canonically() {
        let a = LieAlgebra::new(
            3,
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec![(
                (0, 1),
                vec![(2, Rational::new(2, 4))],
            )],
        )
        .unwrap();
        let file = AlgebraFile::from_algebra(&a);
        assert_eq!(file.brackets[0].out[0].c, "1/2");
    }

    #[test]
    fn analyze_six_dim_example() {
        let (a, _, _) = constructors::example_six_dim();
        let report = analyze(&a, &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.algebra.dim, 6);
        assert_eq!(report.algebra.nilpotency_index, 3);
        assert!(!report.obstruction_vanishes);
        assert!(matches!(report.verdict, VerdictReport::Symplectic { .. }));
    }

    #[test]
    fn analyze_with_table_checks_decomposition() {
        let h = constructors::heisenberg(3).unwrap();
        let opts = AnalyzeOptions {
            e_table: true,
            ..Default::default()
        };
        let report = analyze(&h, &opts).unwrap();
        assert_eq!(report.betti, vec![1, 2, 2, 1]);
        assert!(report.e_infty.is_some());
    }

    #[test]
    fn classify_single_cell() {
        let row = classify_cell(Family::A, 2, &AnalyzeOptions::default()).unwrap();
        assert_eq!(row.dim, 3);
        assert_eq!(row.extension_dim, 4);
        assert_eq!(row.verdict, "symplectic");
        assert!(row.e02_dim > 0);
    }
}
