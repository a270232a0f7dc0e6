//! Command-line front end.
//!
//! Exit codes: 0 when every asserted check passes, 1 when a proven
//! inequality fails after strict re-verification, 2 on usage or input errors.

use std::ffi::OsString;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::fuzz::{self, Corpus, FuzzConfig, Suite};
use crate::geometry::{gamma, sigma_p, GammaReport, Power};
use crate::inequalities::{self as ineq, write_bounds_csv, BoundsRow, CheckOutcome, Tolerances};
use crate::poly::RootSet;
use crate::report::{write_json, PolynomialSpec, Report, CLI_MAX_DEGREE};
use crate::search::{maximize_gamma, write_sharpness_csv, SearchConfig, SharpnessRow, SHARPNESS_CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "critpoly", version, about = "Critical points, p-variance and centroid bounds for complex polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Profile::Default)]
    tol_profile: Profile,
    /// Write the output here instead of stdout (search appends a CSV row).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add a Unix timestamp to the report.
    #[arg(long, global = true)]
    timestamps: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Profile {
    Default,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance from the centroid of the zeros to the nearest critical point.
    Gamma { spec: PathBuf },
    /// p-variance of the zeros.
    Variance {
        spec: PathBuf,
        /// Exponent >= 1 or "inf".
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Fuzz the inequality checkers, or check a single spec.
    Check {
        /// schoenberg, thm11, identity, thm-mt, thm-mt1, pawlowski, borcea or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// "3", "2..8" (inclusive) or "2,5,9".
        #[arg(long, default_value = "2..12")]
        degrees: String,
        /// Exponent of the conjecture checks.
        #[arg(long, default_value = "2")]
        p: String,
        /// Exit 1 when a conjecture check fails after re-verification.
        #[arg(long)]
        strict_conjectures: bool,
        /// Draw collinear configurations.
        #[arg(long)]
        collinear: bool,
        /// Draw configurations with all zeros equal.
        #[arg(long, conflicts_with = "collinear")]
        all_equal: bool,
        /// Check this configuration instead of fuzzing.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Search the unit disk for configurations with large gamma.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        local_iters: usize,
        /// Restrict to one free zero plus a regular (n-1)-gon.
        #[arg(long)]
        symmetric: bool,
    },
    /// Degree-only bounds and their asymptotic ratios.
    BoundsTable {
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', conflicts_with = "n_range")]
        n_list: Option<Vec<u64>>,
        /// Inclusive range "a..b".
        #[arg(long)]
        n_range: Option<String>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Soundness(_) => EXIT_VIOLATION,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn tolerances(p: Profile) -> Tolerances {
    match p {
        Profile::Default => Tolerances::default(),
        Profile::Strict => Tolerances::strict(),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let tol = tolerances(cli.tol_profile);
    if cli.format == Format::Csv && !matches!(cli.command, Command::BoundsTable { .. } | Command::Search { .. }) {
        return Err(invalid("--format csv applies to bounds-table and search only"));
    }
    match &cli.command {
        Command::Gamma { spec } => {
            let doc = PolynomialSpec::read(spec)?;
            let results = gamma_results(&doc, &tol)?;
            emit(cli, stdout, "gamma", json!({ "spec": doc }), &results)?;
            Ok(EXIT_OK)
        }
        Command::Variance { spec, p } => {
            let doc = PolynomialSpec::read(spec)?;
            let power = Power::parse(p)?;
            let r = doc.resolve(&tol.rootfind)?;
            let v = sigma_p(&r, power)?;
            emit(cli, stdout, "variance", json!({ "spec": doc, "p": power }), &v)?;
            Ok(EXIT_OK)
        }
        Command::Check { suite, trials, degrees, p, strict_conjectures, collinear, all_equal, spec } => {
            let suites = Suite::parse(suite)?;
            let power = Power::parse(p)?;
            if let Some(path) = spec {
                let doc = PolynomialSpec::read(path)?;
                let r = doc.resolve(&tol.rootfind)?;
                let (rows, code) = check_spec(&r, &suites, power, &tol, *strict_conjectures)?;
                emit(cli, stdout, "check", json!({ "suite": suite, "p": power, "spec": doc }), &rows)?;
                return Ok(code);
            }
            let degrees = parse_degrees(degrees)?;
            let corpus = if *collinear {
                Some(Corpus::Collinear)
            } else if *all_equal {
                Some(Corpus::AllEqual)
            } else {
                None
            };
            let cfg = FuzzConfig { suites, degrees: degrees.clone(), trials: *trials, seed: cli.seed, p: power, corpus, tolerances: tol };
            let report = fuzz::run(&cfg)?;
            let code = if report.hard_failures() > 0 || (*strict_conjectures && report.conjecture_violations() > 0) {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            };
            let input = json!({
                "suite": suite,
                "trials": trials,
                "degrees": degrees,
                "p": power,
                "corpus": corpus,
                "strict_conjectures": strict_conjectures,
            });
            emit(cli, stdout, "check", input, &report)?;
            Ok(code)
        }
        Command::Search { n, restarts, local_iters, symmetric } => {
            let cfg = SearchConfig {
                restarts: *restarts,
                local_iters: *local_iters,
                symmetric: *symmetric,
                rootfind: tol.rootfind,
                ..SearchConfig::new(*n, cli.seed)
            };
            let result = maximize_gamma(&cfg)?;
            let row = SharpnessRow {
                n: result.n,
                best_gamma: result.best_gamma,
                lower: result.lower_bound,
                refined_upper: result.refined_upper,
                c_hat: result.c_hat(),
                evaluations: result.evaluations,
            };
            if cli.format == Format::Csv {
                write_to(cli.out.as_deref(), stdout, |w| write_sharpness_csv(std::slice::from_ref(&row), w))?;
                return Ok(EXIT_OK);
            }
            if let Some(path) = &cli.out {
                append_csv_row(path, &row)?;
            }
            let report = finish(cli, Report::new("search", json!({ "config": cfg }), &result, cli.seed)?);
            write_json(&report, &mut *stdout).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::BoundsTable { n_list, n_range } => {
            let ns = match (n_list, n_range) {
                (Some(v), None) => v.clone(),
                (None, Some(r)) => parse_range(r)?.into_iter().map(|n| n as u64).collect(),
                _ => return Err(invalid("give --n-list or --n-range")),
            };
            let rows = ineq::bounds_table(&ns)?;
            let ordered = rows.iter().filter(|r| r.n >= 3).all(|r| r.improvement() > 0.0);
            if cli.format == Format::Csv {
                write_to(cli.out.as_deref(), stdout, |w| write_bounds_csv(&rows, w))?;
            } else {
                let results = BoundsResults::new(rows, ordered);
                emit(cli, stdout, "bounds-table", json!({ "n": ns }), &results)?;
            }
            Ok(if ordered { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Bounds {
    pub unit: f64,
    pub refined: f64,
    pub pawlowski: f64,
    pub lower: f64,
}

#[derive(Debug, Serialize)]
pub struct GammaResults {
    pub roots: RootSet,
    #[serde(flatten)]
    pub report: GammaReport,
    pub in_unit_disk: bool,
    /// Present when every zero lies in the closed unit disk.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
}

pub fn gamma_results(doc: &PolynomialSpec, tol: &Tolerances) -> Result<GammaResults> {
    let r = doc.resolve(&tol.rootfind)?;
    let report = gamma(&r, &tol.rootfind)?;
    let in_disk = r.in_unit_disk(ineq::DISK_SLACK);
    let n = r.degree() as f64;
    let bounds = in_disk.then(|| Bounds {
        unit: 1.0,
        refined: ineq::refined_upper(n),
        pawlowski: ineq::pawlowski_upper(n),
        lower: ineq::lower_bound(n),
    });
    Ok(GammaResults { roots: r, report, in_unit_disk: in_disk, bounds })
}

#[derive(Debug, Serialize)]
struct SpecCheck {
    suite: Suite,
    outcome: CheckOutcome,
    rechecked: bool,
}

/// Checks one configuration; failures are recomputed with the strict root finder.
fn check_spec(r: &RootSet, suites: &[Suite], p: Power, tol: &Tolerances, strict_conjectures: bool) -> Result<(Vec<SpecCheck>, i32)> {
    let strict = Tolerances { rootfind: Tolerances::strict().rootfind, ..*tol };
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    for (suite, outcome) in fuzz::check_one(r, suites, p, tol) {
        let mut outcome = outcome?;
        let mut rechecked = false;
        if !outcome.passed {
            rechecked = true;
            if let Some((_, Ok(again))) = fuzz::check_one(r, &[suite], p, &strict).pop() {
                outcome = again;
            }
            if !outcome.passed && (!suite.is_conjecture() || strict_conjectures) {
                code = EXIT_VIOLATION;
            }
        }
        rows.push(SpecCheck { suite, outcome, rechecked });
    }
    Ok((rows, code))
}

#[derive(Debug, Serialize)]
struct RatioRow {
    n: u64,
    /// `(1 - pawlowski_upper) / (1/2 (ln n / n)^2)`
    pawlowski_ratio: f64,
    /// `(1 - lower) / (ln n / n)`
    lower_ratio: f64,
}

#[derive(Debug, Serialize)]
struct BoundsResults {
    rows: Vec<BoundsRow>,
    refined_below_pawlowski: bool,
    ratios: Vec<RatioRow>,
}

impl BoundsResults {
    fn new(rows: Vec<BoundsRow>, ordered: bool) -> Self {
        let ratios = rows
            .iter()
            .map(|r| RatioRow { n: r.n, pawlowski_ratio: r.pawlowski_ratio(), lower_ratio: r.lower_ratio() })
            .collect();
        Self { rows, refined_below_pawlowski: ordered, ratios }
    }
}

fn io_err(e: std::io::Error) -> Error {
    invalid(format!("cannot write output: {e}"))
}

fn finish(cli: &Cli, report: Report) -> Report {
    if cli.timestamps {
        report.stamp()
    } else {
        report
    }
}

fn emit<T: Serialize>(cli: &Cli, stdout: &mut dyn Write, command: &str, input: serde_json::Value, results: &T) -> Result<()> {
    let report = finish(cli, Report::new(command, input, results, cli.seed)?);
    write_to(cli.out.as_deref(), stdout, |w| write_json(&report, w))
}

fn write_to(path: Option<&Path>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut file = std::fs::File::create(p).map_err(io_err)?;
            f(&mut file).map_err(io_err)
        }
        None => f(stdout).map_err(io_err),
    }
}

fn append_csv_row(path: &Path, row: &SharpnessRow) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut buf = Vec::new();
    write_sharpness_csv(std::slice::from_ref(row), &mut buf).map_err(io_err)?;
    let text = String::from_utf8(buf).expect("CSV is UTF-8");
    let body = if fresh { text.as_str() } else { text.strip_prefix(SHARPNESS_CSV_HEADER).map(|s| s.trim_start_matches('\n')).unwrap_or(&text) };
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io_err)?;
    file.write_all(body.as_bytes()).map_err(io_err)
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| invalid(format!("expected a range like 2..8, got {s:?}")))?;
    let a: usize = a.trim().parse().map_err(|_| invalid(format!("bad range start in {s:?}")))?;
    let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| invalid(format!("bad range end in {s:?}")))?;
    if a > b {
        return Err(invalid(format!("empty range {s:?}")));
    }
    Ok((a..=b).collect())
}

/// `"3"`, `"2..8"` (inclusive) or `"2,5,9"`.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let ns = if s.contains("..") {
        parse_range(s)?
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| invalid(format!("bad degree {t:?}"))))
            .collect::<Result<Vec<_>>>()?
    };
    if let Some(n) = ns.iter().find(|&&n| !(2..=CLI_MAX_DEGREE).contains(&n)) {
        return Err(invalid(format!("degrees must lie in 2..={CLI_MAX_DEGREE}, got {n}")));
    }
    Ok(ns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_lists() {
        assert_eq!(parse_degrees("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_degrees("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_degrees("3").unwrap(), vec![3]);
        assert_eq!(parse_degrees("2, 7").unwrap(), vec![2, 7]);
        assert!(parse_degrees("1..4").is_err());
        assert!(parse_degrees("5..3").is_err());
        assert!(parse_degrees("65").is_err());
        assert!(parse_degrees("x").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["critpoly", "nope"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["critpoly", "variance", "/nonexistent.json"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["critpoly", "check", "--suite", "bogus"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["critpoly", "--version"], &mut out, &mut err), EXIT_OK);
    }
}
