//! Command-line front end of the `circper` binary.
//!
//! Every subcommand writes a deterministic report to standard output (and to
//! files where requested) and returns a [`Status`]: green reports exit with
//! 0, reports with a red flag exit with 2 and errors exit with 1.

use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{parse_exact, rational_serde, IntPoly, Rational};
use crate::families::{instance, mts1_scan, verify, FamilyName, VerifyConfig};
use crate::graphext::{extend, traversal, verify_extension, CombGraph, ExtensionReport, Traversal};
use crate::lifting::RotationInterval;
use crate::markov::GraphExport;
use crate::minentropy::{beta, min_entropy_model, model_rotation, BetaResult, MinEntropyModel, ModelRotation};
use crate::oracle::{periods_up_to, OracleConfig};
use crate::periods::{m_set, PeriodSet};
use crate::report::{scan_csv, scan_svg, to_json};

#[derive(Debug, Parser)]
#[command(name = "circper", version, about = "Periods, rotation intervals and entropy of degree-one circle maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The rotation-forced periods M(c, d) and the threshold of its tail.
    Periods {
        #[arg(long, value_parser = exact)]
        c: Rational,
        #[arg(long, value_parser = exact)]
        d: Rational,
    },
    /// Build a family member; with --verify run every check on it.
    Family {
        name: FamilyName,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        verify: bool,
        /// Skip the brute-force oracle during verification.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Scan a family over a parameter range.
    Scan {
        name: FamilyName,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Output file; the format follows the extension unless --format is given.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Also write an SVG chart of entropy and rotation-interval length.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The minimal entropy exponent beta(c, d) and its model map.
    Beta {
        #[arg(long, value_parser = exact)]
        c: Rational,
        #[arg(long, value_parser = exact)]
        d: Rational,
        #[arg(long, value_parser = positive, default_value = "1e-12")]
        tol: Rational,
        /// Iterations used to bracket the rotation numbers of the model.
        #[arg(long, default_value_t = 2000)]
        model_steps: u32,
    },
    /// Extend a family member to a graph read from a JSON file.
    Extend {
        name: FamilyName,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Periods found by loop enumeration, compared with the closed form.
    Oracle {
        name: FamilyName,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        max_period: u64,
        #[arg(long, default_value_t = crate::markov::DEFAULT_LOOP_CAP)]
        loop_cap: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

fn exact(s: &str) -> Result<Rational, String> {
    parse_exact(s).map_err(|e| e.to_string())
}

fn positive(s: &str) -> Result<Rational, String> {
    let t = exact(s)?;
    if t <= Rational::from_integer(0.into()) {
        return Err(format!("tolerance must be positive, got {s}"));
    }
    Ok(t)
}

/// Whether every check of the report passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Green,
    Red,
}

impl Status {
    fn from_green(ok: bool) -> Self {
        if ok {
            Status::Green
        } else {
            Status::Red
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Green => 0,
            Status::Red => 2,
        }
    }
}

/// Report text for standard output and the status of the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
}

#[derive(Serialize)]
struct PeriodsOutput {
    #[serde(with = "rational_serde")]
    c: Rational,
    #[serde(with = "rational_serde")]
    d: Rational,
    finite: BTreeSet<u64>,
    tail_from: Option<u64>,
}

#[derive(Serialize)]
struct FamilySummary {
    family: FamilyName,
    n: u64,
    classes: usize,
    graph: GraphExport,
    expected_rotation: RotationInterval,
    expected_per: PeriodSet,
    expected_poly: IntPoly,
}

#[derive(Serialize)]
struct ScanSummary {
    family: FamilyName,
    rows: usize,
    out: String,
    len_strictly_decreasing: bool,
    entropy_strictly_decreasing: bool,
    bc_nondecreasing: bool,
    bc_matches_claims: bool,
    green: bool,
}

#[derive(Serialize)]
struct BetaOutput {
    #[serde(flatten)]
    beta: BetaResult,
    model: MinEntropyModel,
    model_rotation: ModelRotation,
}

#[derive(Serialize)]
struct ExtendOutput {
    traversal: Traversal,
    report: ExtensionReport,
}

#[derive(Serialize)]
struct OracleOutput {
    family: FamilyName,
    n: u64,
    max_period: u64,
    found: BTreeSet<u64>,
    expected: BTreeSet<u64>,
    loops_examined: usize,
    agrees: bool,
}

/// Execute one subcommand.
pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Periods { c, d } => {
            let m = m_set(c, d)?;
            let out = PeriodsOutput { c: c.clone(), d: d.clone(), finite: m.finite().clone(), tail_from: m.tail_from() };
            Ok(Outcome { status: Status::Green, stdout: to_json(&out)? })
        }
        Command::Family { name, n, verify: false, .. } => {
            let inst = instance(*name, *n)?;
            let out = FamilySummary {
                family: inst.name,
                n: inst.n,
                classes: inst.markov.class_count(),
                graph: inst.markov.export(),
                expected_rotation: inst.expected_rot.clone(),
                expected_per: inst.expected_per.clone(),
                expected_poly: inst.expected_poly.clone(),
            };
            Ok(Outcome { status: Status::Green, stdout: to_json(&out)? })
        }
        Command::Family { name, n, verify: true, no_oracle } => {
            let inst = instance(*name, *n)?;
            let cfg = VerifyConfig { oracle: !no_oracle, ..VerifyConfig::default() };
            let r = verify(&inst, &cfg);
            if !r.errors.is_empty() {
                bail!("verification of {name} n = {n} failed: {}", r.errors.join("; "));
            }
            Ok(Outcome { status: Status::from_green(r.all_green()), stdout: to_json(&r)? })
        }
        Command::Scan { name, from, to, out, format, svg } => {
            if from > to {
                bail!("empty range: --from {from} is larger than --to {to}");
            }
            let fmt = match format {
                Some(f) => *f,
                None => match out.extension().and_then(|e| e.to_str()) {
                    Some("json") => Format::Json,
                    Some("svg") => Format::Svg,
                    _ => Format::Csv,
                },
            };
            let report = mts1_scan(*name, *from, *to, &VerifyConfig::default())?;
            let body = match fmt {
                Format::Csv => scan_csv(&report)?,
                Format::Json => to_json(&report)?,
                Format::Svg => scan_svg(&report),
            };
            std::fs::write(out, body).with_context(|| format!("writing {}", out.display()))?;
            if let Some(path) = svg {
                std::fs::write(path, scan_svg(&report)).with_context(|| format!("writing {}", path.display()))?;
            }
            let summary = ScanSummary {
                family: report.family,
                rows: report.rows.len(),
                out: out.display().to_string(),
                len_strictly_decreasing: report.len_strictly_decreasing,
                entropy_strictly_decreasing: report.entropy_strictly_decreasing,
                bc_nondecreasing: report.bc_nondecreasing,
                bc_matches_claims: report.bc_matches_claims,
                green: report.all_green(),
            };
            Ok(Outcome { status: Status::from_green(summary.green), stdout: to_json(&summary)? })
        }
        Command::Beta { c, d, tol, model_steps } => {
            let b = beta(c, d, tol)?;
            let model = min_entropy_model(c, d, tol)?;
            let rot = model_rotation(&model, *model_steps);
            let green = b.method_agreement && rot.consistent;
            let out = BetaOutput { beta: b, model, model_rotation: rot };
            Ok(Outcome { status: Status::from_green(green), stdout: to_json(&out)? })
        }
        Command::Extend { name, n, graph } => {
            let text = std::fs::read_to_string(graph).with_context(|| format!("reading {}", graph.display()))?;
            let g = CombGraph::from_json(&text)?;
            let inst = instance(*name, *n)?;
            let (x, a, b) = g.excised()?;
            let tr = traversal(&x, &a, &b)?;
            let e = extend(&inst, &g)?;
            let report = verify_extension(&inst, &e, &crate::graphext::default_tol());
            if !report.errors.is_empty() {
                bail!("extension of {name} n = {n} failed: {}", report.errors.join("; "));
            }
            let status = Status::from_green(report.all_green() && tr.is_valid());
            Ok(Outcome { status, stdout: to_json(&ExtendOutput { traversal: tr, report })? })
        }
        Command::Oracle { name, n, max_period, loop_cap } => {
            let inst = instance(*name, *n)?;
            let cfg = OracleConfig { loop_cap: *loop_cap, ..OracleConfig::default() };
            let r = periods_up_to(&inst.markov, *max_period, &cfg)?;
            let found = r.periods();
            let expected = inst.expected_per.members_up_to(*max_period);
            let agrees = found == expected;
            let out = OracleOutput { family: *name, n: *n, max_period: *max_period, found, expected, loops_examined: r.loops_examined, agrees };
            Ok(Outcome { status: Status::from_green(agrees), stdout: to_json(&out)? })
        }
    }
}
