//! The `fdiv` command-line front end.
//!
//! ```text
//! fdiv compute --input pairs.csv --measures kl,omega:1,phi --s 0.5,2
//! fdiv sweep   --input pairs.csv --s-min -1 --s-max 2 --s-step 0.5
//! fdiv verify  --input pairs.json --s=-1,0,1,2 --tolerance 1e-10
//! fdiv gen     --n 4 --count 10 --seed 7 --output pairs.csv
//! ```
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when `verify`
//! finds a violated inequality. Output rows are ordered by pair id, then `s`,
//! then measure name, and are byte-identical across runs.

mod input;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::bounds::{self, BoundReport, DEFAULT_S_VALUES, VIOLATION_TOLERANCE};
use crate::csiszar::GapTarget;
use crate::measures::Measure;
use crate::simplex::random_pair;
use crate::type_s::{omega_s, SParameter};

pub use input::{parse_pairs, NamedPair};
pub use output::{Format, Table};

use output::{num, opt_num, text};

#[derive(Debug, Parser)]
#[command(name = "fdiv", version, about = "Divergence measures and their bounds")]
struct Cli {
    /// Input file (CSV or JSON); standard input when absent or `-`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Divide each input vector by its sum before validation.
    #[arg(long, global = true)]
    renormalize: bool,
    /// Slack below which `verify` reports a violation.
    #[arg(long, global = true, default_value_t = VIOLATION_TOLERANCE)]
    tolerance: f64,
    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate named measures on every pair.
    Compute(ComputeArgs),
    /// Tabulate Omega_s and its bounds over a grid of s.
    Sweep(SweepArgs),
    /// Check every inequality and report its slack.
    Verify(VerifyArgs),
    /// Write reproducible random pairs as CSV.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Comma-separated measure names; bare `phi` and `omega` expand over `--s`.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "chi2,kl,rel_j,rel_js,rel_ag,delta,bhat,hellinger,v,psi_sym,j,i,t"
    )]
    measures: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0,0.5,1")]
    s: Vec<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0)]
    s_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    s_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    s_step: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    s: Option<Vec<f64>>,
    /// Inflate the first entry of each report by 1 to exercise the failure path.
    #[arg(long, hide = true)]
    self_test_corrupt: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    count: usize,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

impl Status {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Status::Ok => ExitCode::SUCCESS,
            Status::Violation => ExitCode::from(2),
        }
    }
}

/// Runs the CLI on the process arguments.
pub fn run() -> ExitCode {
    run_from(std::env::args_os())
}

/// Runs the CLI on `args` (the first item is the program name).
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<Status> {
    let mut buf = Vec::new();
    let status = match &cli.command {
        Command::Compute(args) => {
            let pairs = load(cli)?;
            compute_table(&pairs, &args.measures, &args.s)?.write(cli.format, &mut buf)?;
            Status::Ok
        }
        Command::Sweep(args) => {
            let grid = s_grid(args.s_min, args.s_max, args.s_step)?;
            let pairs = load(cli)?;
            sweep_table(&pairs, &grid).write(cli.format, &mut buf)?;
            Status::Ok
        }
        Command::Verify(args) => {
            if !(cli.tolerance >= 0.0 && cli.tolerance.is_finite()) {
                bail!("--tolerance must be a finite non-negative number");
            }
            let pairs = load(cli)?;
            let s_values = args.s.clone().unwrap_or_else(|| DEFAULT_S_VALUES.to_vec());
            if let Some(bad) = s_values.iter().find(|s| !s.is_finite()) {
                bail!("s value {bad} is not finite");
            }
            let reports: Vec<(String, BoundReport)> = pairs
                .iter()
                .map(|np| {
                    let mut report =
                        bounds::verify_all_with_tolerance(&np.pair, &s_values, cli.tolerance).with_pair_id(&np.id);
                    if args.self_test_corrupt {
                        corrupt(&mut report);
                    }
                    (np.id.clone(), report)
                })
                .collect();
            let failures: usize = reports.iter().map(|(_, r)| r.failures().count()).sum();
            let entries: usize = reports.iter().map(|(_, r)| r.entries.len()).sum();
            verify_table(&reports).write(cli.format, &mut buf)?;
            eprintln!("{entries} entries checked, {failures} violated");
            if failures == 0 {
                Status::Ok
            } else {
                Status::Violation
            }
        }
        Command::Gen(args) => {
            write_generated(&mut buf, args.n, args.count, cli.seed)?;
            Status::Ok
        }
    };
    emit(cli.output.as_deref(), &buf)?;
    Ok(status)
}

fn load(cli: &Cli) -> anyhow::Result<Vec<NamedPair>> {
    let text = input::read_input(cli.input.as_deref())?;
    parse_pairs(&text, cli.renormalize)
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("cannot write `{}`", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// One row per (pair, measure): `pair_id, measure, s, value`.
pub fn compute_table(pairs: &[NamedPair], names: &[String], s_values: &[f64]) -> anyhow::Result<Table> {
    let mut measures = Vec::new();
    for name in names {
        match name.trim() {
            "phi" => measures.extend(s_values.iter().map(|&s| Measure::Phi(s))),
            "omega" => measures.extend(s_values.iter().map(|&s| Measure::Omega(s))),
            other => measures.push(other.parse::<Measure>()?),
        }
    }
    if measures.is_empty() {
        bail!("no measures requested");
    }
    let s_of = |m: &Measure| match *m {
        Measure::Phi(s) | Measure::Omega(s) => Some(s),
        _ => None,
    };
    let mut keyed: Vec<(Option<f64>, String, Measure)> =
        measures.into_iter().map(|m| (s_of(&m), m.to_string(), m)).collect();
    keyed.sort_by(|a, b| {
        let key = |o: Option<f64>| o.map_or((0, 0.0), |v| (1, v));
        let (x, y) = (key(a.0), key(b.0));
        x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)).then(a.1.cmp(&b.1))
    });
    keyed.dedup_by(|a, b| a.1 == b.1);

    let mut table = Table::new(&["pair_id", "measure", "s", "value"]);
    for np in pairs {
        for (s, name, m) in &keyed {
            let value = m
                .evaluate(&np.pair)
                .with_context(|| format!("pair `{}`, measure {name}", np.id))?;
            table.push(vec![text(&np.id), text(name), opt_num(*s), num(value)]);
        }
    }
    Ok(table)
}

/// The grid `s_min, s_min + step, ...` up to `s_max`.
pub fn s_grid(s_min: f64, s_max: f64, step: f64) -> anyhow::Result<Vec<f64>> {
    if !(s_min.is_finite() && s_max.is_finite() && step.is_finite()) {
        bail!("grid bounds and step must be finite");
    }
    if s_min >= s_max {
        bail!("empty grid: s_min ({s_min}) must be below s_max ({s_max})");
    }
    if step <= 0.0 {
        bail!("s_step must be positive, got {step}");
    }
    let count = ((s_max - s_min) / step + 1e-9).floor();
    if count > 1e6 {
        bail!("grid has more than a million points");
    }
    Ok((0..=count as usize)
        .map(|k| {
            let s = s_min + k as f64 * step;
            // drop accumulated representation noise such as 0.30000000000000004
            (s * 1e12).round() / 1e12
        })
        .collect())
}

/// Per pair and grid point: `Omega_s`, `E`, `E*`, `A`, `B` and the gap bounds.
pub fn sweep_table(pairs: &[NamedPair], grid: &[f64]) -> Table {
    let mut table = Table::new(&[
        "pair_id",
        "s",
        "regime",
        "omega",
        "e",
        "e_star",
        "a",
        "b",
        "half_e_bound",
        "e_star_bound",
    ]);
    for np in pairs {
        let rb = np.pair.ratio_bounds();
        for &s in grid {
            let param = SParameter::new(s);
            let regime = serde_json::to_value(param.regime()).unwrap_or(Value::Null);
            let gap = |target| {
                bounds::omega_gap_bounds(&np.pair, &rb, s, target)
                    .ok()
                    .map(|g| g.bound())
            };
            table.push(vec![
                text(&np.id),
                num(s),
                regime,
                num(omega_s(&np.pair, param)),
                num(bounds::e_omega(&np.pair, param)),
                num(bounds::e_star_omega(&np.pair, param)),
                opt_num(bounds::a_omega(&rb, s).ok()),
                opt_num(bounds::b_omega(&rb, param).ok()),
                opt_num(gap(GapTarget::HalfE)),
                opt_num(gap(GapTarget::EStar)),
            ]);
        }
    }
    table
}

fn corrupt(report: &mut BoundReport) {
    if let Some(e) = report.entries.first_mut() {
        e.lhs += 1.0;
        e.slack = match e.mid {
            Some(mid) => (mid - e.lhs).min(e.rhs - mid),
            None => e.rhs - e.lhs,
        };
    }
    let tolerance = report.tolerance;
    report.reclassify(tolerance);
}

/// Entries, skipped checks, closed-form cross-checks and notes of each report.
pub fn verify_table(reports: &[(String, BoundReport)]) -> Table {
    let mut table = Table::new(&[
        "kind",
        "pair_id",
        "inequality_id",
        "s",
        "m",
        "lhs",
        "mid",
        "rhs",
        "slack",
        "verdict",
        "detail",
    ]);
    for (id, report) in reports {
        for e in &report.entries {
            let verdict = serde_json::to_value(e.verdict).unwrap_or(Value::Null);
            table.push(vec![
                text("entry"),
                text(id),
                text(e.inequality_id),
                opt_num(e.context.s),
                opt_num(e.context.m),
                num(e.lhs),
                opt_num(e.mid),
                num(e.rhs),
                num(e.slack),
                verdict,
                e.special_case.map_or(Value::Null, text),
            ]);
        }
        for s in &report.skipped {
            table.push(vec![
                text("skipped"),
                text(id),
                text(s.inequality_id),
                opt_num(s.s),
                opt_num(s.m),
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                text("skipped"),
                text(&s.reason),
            ]);
        }
        for c in &report.cross_checks {
            table.push(vec![
                text("cross_check"),
                text(id),
                text(c.quantity),
                num(c.s),
                Value::Null,
                num(c.generic),
                Value::Null,
                num(c.closed_form),
                Value::Null,
                Value::Null,
                text(format!("relative difference {:e}", c.relative_difference)),
            ]);
        }
        for note in &report.notes {
            table.push(vec![
                text("note"),
                text(id),
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                text(note),
            ]);
        }
    }
    table
}

/// Writes `count` random `n`-point pairs in the CSV input schema.
pub fn write_generated(out: &mut dyn Write, n: usize, count: usize, seed: u64) -> anyhow::Result<()> {
    if n < 2 {
        bail!("--n must be at least 2, got {n}");
    }
    if count < 1 {
        bail!("--count must be at least 1");
    }
    let width = count.to_string().len();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["pair_id".to_string(), "role".to_string()];
    header.extend((1..=n).map(|i| format!("v{i}")));
    w.write_record(&header)?;
    for k in 0..count {
        let pair_seed = seed.wrapping_add((k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let pair = random_pair(n, pair_seed, None)?;
        let id = format!("pair-{k:0width$}");
        for (role, dist) in [("P", pair.p()), ("Q", pair.q())] {
            let mut row = vec![id.clone(), role.to_string()];
            row.extend(dist.values().iter().map(|&v| num(v).to_string()));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_examples() {
        assert_eq!(s_grid(-1.0, 2.0, 1.0).unwrap(), vec![-1.0, 0.0, 1.0, 2.0]);
        assert_eq!(s_grid(0.0, 0.3, 0.1).unwrap(), vec![0.0, 0.1, 0.2, 0.3]);
        assert!(s_grid(1.0, 1.0, 0.5).is_err());
        assert!(s_grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn generated_pairs_round_trip() {
        let mut buf = Vec::new();
        write_generated(&mut buf, 4, 10, 7).unwrap();
        let pairs = parse_pairs(std::str::from_utf8(&buf).unwrap(), false).unwrap();
        assert_eq!(pairs.len(), 10);
        let mut again = Vec::new();
        write_generated(&mut again, 4, 10, 7).unwrap();
        assert_eq!(buf, again);
        assert!(write_generated(&mut Vec::new(), 1, 10, 7).is_err());
    }
}
