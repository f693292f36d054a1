//! Command-line front end: reads a TOML run configuration, builds the code,
//! and writes deterministic JSON or CSV reports.

pub mod config;
pub mod suites;

use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::codes::{
    minimality_check, weight_distribution_predicted, CodeCD, CodeReport, MinimalityCheck, WeightDist,
};
use crate::error::{Error, Result};
use crate::ghw::{hierarchy_report, GhwSide, HierarchyOptions, HierarchyReport};

use config::{Format, Resolved, RunConfig, Task};
use suites::{Instance, Status, Suite, SuiteOptions, SuiteResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qfcodes", version, about = "Linear codes from two quadratic forms over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides the config.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format; overrides the config.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Proceed even when the code has dimension below s.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the defining set and generator matrix.
    Build,
    /// Enumerate the weight distribution and compare with the closed form.
    Wdist,
    /// Compute the weight hierarchy.
    Ghw {
        /// Ranks to compute, as `a..b` (inclusive) or a single `r`.
        #[arg(long, value_parser = parse_r_range)]
        r_range: Option<RangeInclusive<usize>>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Vec<Suite>,
        /// Negate ε in the predicted weight distribution (failure-path test).
        #[arg(long, hide = true)]
        corrupt_sign: bool,
    },
    /// Write the generator matrix.
    Export,
    /// Run every task listed in the config.
    Run,
}

pub fn parse_r_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a == 0 || a > b {
                return Err(format!("empty or invalid range {s:?}"));
            }
            Ok(a..=b)
        }
        None => {
            let r = parse(s)?;
            if r == 0 {
                return Err("r must be at least 1".into());
            }
            Ok(r..=r)
        }
    }
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => EXIT_LIMIT,
        Error::OracleMismatch(_) | Error::NonIntegerWeight(_) => EXIT_FAIL,
        _ => EXIT_CONFIG,
    }
}

/// Parses arguments, runs the command, prints diagnostics, and returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.common.threads {
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Session {
    config: Option<RunConfig>,
    out: PathBuf,
    format: Format,
    force: bool,
}

impl Session {
    fn new(common: &Common) -> Result<Self> {
        let config = match &common.config {
            Some(path) => Some(RunConfig::load(path)?),
            None => None,
        };
        let out = common
            .out
            .clone()
            .or_else(|| config.as_ref().map(|c| c.output.clone()))
            .unwrap_or_else(|| PathBuf::from("out"));
        let format = common.format.or(config.as_ref().map(|c| c.format)).unwrap_or(Format::Json);
        Ok(Session { config, out, format, force: common.force })
    }

    fn resolved(&self) -> Result<Resolved> {
        let mut resolved = self
            .config
            .as_ref()
            .ok_or_else(|| Error::Config("this command needs --config".into()))?
            .resolve()?;
        resolved.config.output = self.out.clone();
        resolved.config.format = self.format;
        Ok(resolved)
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.out).map_err(|e| io_error(&self.out, e))?;
        let path = self.out.join(name);
        fs::write(&path, contents).map_err(|e| io_error(&path, e))?;
        Ok(path)
    }

    fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
        text.push('\n');
        self.write(name, &text)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn execute(cli: &Cli) -> Result<i32> {
    let session = Session::new(&cli.common)?;
    match &cli.command {
        Command::Build => cmd_build(&session).map(|_| EXIT_OK),
        Command::Wdist => cmd_wdist(&session),
        Command::Ghw { r_range } => cmd_ghw(&session, r_range.clone()),
        Command::Verify { suite, corrupt_sign } => cmd_verify(&session, suite, *corrupt_sign),
        Command::Export => cmd_export(&session).map(|_| EXIT_OK),
        Command::Run => {
            let tasks = session.resolved()?.config.tasks;
            if tasks.is_empty() {
                return Err(Error::Config("config lists no tasks".into()));
            }
            let mut code = EXIT_OK;
            for task in tasks {
                let c = match task {
                    Task::Build => cmd_build(&session).map(|_| EXIT_OK)?,
                    Task::Wdist => cmd_wdist(&session)?,
                    Task::Ghw => cmd_ghw(&session, None)?,
                    Task::VerifyLemmas => cmd_verify(&session, &[Suite::All], false)?,
                    Task::Export => cmd_export(&session).map(|_| EXIT_OK)?,
                };
                code = code.max(c);
            }
            Ok(code)
        }
    }
}

#[derive(Serialize)]
struct BuildOutput<'a> {
    config: &'a RunConfig,
    code: CodeReport,
    generator: String,
}

fn cmd_build(session: &Session) -> Result<CodeReport> {
    let resolved = session.resolved()?;
    let code = resolved.code()?;
    let report = CodeReport::new(&code);
    let gen_path = session.write("generator.csv", &code.generator_csv())?;
    let generator = gen_path.file_name().unwrap().to_string_lossy().into_owned();
    match session.format {
        Format::Json => {
            session.write_json(
                "code.json",
                &BuildOutput { config: &resolved.config, code: report.clone(), generator },
            )?;
        }
        Format::Csv => {
            let mut csv = String::from("key,value\n");
            let _ = writeln!(csv, "p,{}", report.p);
            let _ = writeln!(csv, "s1,{}", report.s1);
            let _ = writeln!(csv, "s2,{}", report.s2);
            let _ = writeln!(csv, "rank_f,{}", report.rank_f);
            let _ = writeln!(csv, "sign_f,{}", report.sign_f);
            let _ = writeln!(csv, "rank_g,{}", report.rank_g);
            let _ = writeln!(csv, "sign_g,{}", report.sign_g);
            let _ = writeln!(csv, "n,{}", report.n);
            let _ = writeln!(csv, "dimension,{}", report.dimension);
            session.write("code.csv", &csv)?;
        }
    }
    println!("n = {}, dimension = {}, s = {}", report.n, report.dimension, report.s1 + report.s2);
    for w in &report.warnings {
        println!("warning: {w}");
    }
    Ok(report)
}

#[derive(Serialize)]
struct WdistOutput<'a> {
    config: &'a RunConfig,
    enumerated: WeightDist,
    predicted: Option<WeightDist>,
    matches: Option<bool>,
    minimality: Option<MinimalityCheck>,
    warnings: Vec<String>,
}

fn cmd_wdist(session: &Session) -> Result<i32> {
    let resolved = session.resolved()?;
    let code = resolved.code()?;
    let fp = code.prime_field();
    let enumerated = code.weight_distribution_bruteforce(resolved.config.limits.max_brute)?;
    let mut warnings = Vec::new();
    let predicted = if code.dimension() == code.s() {
        Some(weight_distribution_predicted(fp, code.s(), code.rank(), code.sign())?)
    } else {
        warnings.push(format!(
            "dimension {} < s = {}: closed-form distribution not applicable",
            code.dimension(),
            code.s()
        ));
        None
    };
    let matches = predicted.as_ref().map(|p| *p == enumerated);
    let minimality = minimality_check(&enumerated, fp).ok();
    if let Some(m) = &minimality {
        if !m.holds && code.rank() >= 3 {
            warnings.push(format!(
                "p·w_min > (p−1)·w_max fails (w_min={}, w_max={}) at R = {}",
                m.w_min,
                m.w_max,
                code.rank()
            ));
        }
    }
    match session.format {
        Format::Json => {
            session.write_json(
                "wdist.json",
                &WdistOutput {
                    config: &resolved.config,
                    enumerated: enumerated.clone(),
                    predicted: predicted.clone(),
                    matches,
                    minimality,
                    warnings: warnings.clone(),
                },
            )?;
        }
        Format::Csv => {
            let mut csv = String::from("weight,enumerated,predicted\n");
            let mut weights: Vec<u64> = enumerated.iter().map(|(w, _)| w).collect();
            if let Some(p) = &predicted {
                weights.extend(p.iter().map(|(w, _)| w));
            }
            weights.sort_unstable();
            weights.dedup();
            for w in weights {
                let pred = predicted.as_ref().map(|p| p.get(w).to_string()).unwrap_or_default();
                let _ = writeln!(csv, "{w},{},{pred}", enumerated.get(w));
            }
            session.write("wdist.csv", &csv)?;
        }
    }
    println!("weight  enumerated  predicted");
    for (w, a) in enumerated.iter() {
        let pred = predicted.as_ref().map(|p| p.get(w).to_string()).unwrap_or_else(|| "-".into());
        println!("{w:>6}  {a:>10}  {pred:>9}");
    }
    for w in &warnings {
        println!("warning: {w}");
    }
    Ok(if matches == Some(false) { EXIT_FAIL } else { EXIT_OK })
}

#[derive(Serialize)]
struct GhwOutput<'a> {
    config: &'a RunConfig,
    hierarchy: &'a HierarchyReport,
}

fn cmd_ghw(session: &Session, r_range: Option<RangeInclusive<usize>>) -> Result<i32> {
    let resolved = session.resolved()?;
    let code = resolved.code()?;
    if code.dimension() < code.s() && !session.force {
        return Err(Error::DimensionDeficient { dim: code.dimension(), s: code.s() });
    }
    let range = r_range.unwrap_or(1..=code.s());
    if *range.end() > code.s() {
        return Err(Error::BadDims(format!("r up to {} exceeds s = {}", range.end(), code.s())));
    }
    let opts = HierarchyOptions {
        limit: resolved.config.limits.max_subspaces,
        side: GhwSide::Auto,
        product_witness: true,
    };
    let report = hierarchy_report(&code, range, &opts)?;
    match session.format {
        Format::Json => {
            session.write_json("ghw.json", &GhwOutput { config: &resolved.config, hierarchy: &report })?;
        }
        Format::Csv => {
            let mut csv = String::from("r,exact,predicted,griesmer,match\n");
            for row in &report.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    row.r,
                    opt(row.exact),
                    opt(row.predicted),
                    opt(row.griesmer),
                    opt(row.matches)
                );
            }
            session.write("ghw.csv", &csv)?;
        }
    }
    print!("{}", hierarchy_table(&report));
    Ok(if report.verdict { EXIT_OK } else { EXIT_FAIL })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Human-readable hierarchy table.
pub fn hierarchy_table(report: &HierarchyReport) -> String {
    let mut out = String::new();
    let case = report.case.map(|c| format!("{c:?}")).unwrap_or_else(|| "none".into());
    let _ = writeln!(
        out,
        "n = {}, dimension = {}, R = {}, ε = {}, case = {case}",
        report.n,
        report.dimension,
        report.params.rank(),
        report.params.sign()
    );
    let _ = writeln!(out, "{:>3}  {:>6}  {:>9}  {:>8}  match", "r", "exact", "predicted", "griesmer");
    let dash = || "-".to_string();
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{:>3}  {:>6}  {:>9}  {:>8}  {}",
            row.r,
            row.exact.map(|v| v.to_string()).unwrap_or_else(dash),
            row.predicted.map(|v| v.to_string()).unwrap_or_else(dash),
            row.griesmer.map(|v| v.to_string()).unwrap_or_else(dash),
            row.matches.map(|v| v.to_string()).unwrap_or_else(dash),
        );
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<&'a RunConfig>,
    result: &'a SuiteResult,
}

fn cmd_verify(session: &Session, suites: &[Suite], corrupt_sign: bool) -> Result<i32> {
    let (resolved, matrix) = match &session.config {
        Some(_) => {
            let r = session.resolved()?;
            let code: CodeCD = r.code()?;
            let inst = Instance { name: "config".into(), code };
            (Some(r), vec![inst])
        }
        None => (None, suites::default_matrix()),
    };
    let limits = resolved.as_ref().map(|r| r.config.limits.clone()).unwrap_or_default();
    let opts = SuiteOptions { limits, corrupt_sign };
    let start = Instant::now();
    let result = suites::run(suites, &matrix, &opts);
    let elapsed = start.elapsed();
    match session.format {
        Format::Json => {
            session.write_json(
                "verify.json",
                &VerifyOutput { config: resolved.as_ref().map(|r| &r.config), result: &result },
            )?;
        }
        Format::Csv => {
            let mut csv = String::from("name,status,cases,detail\n");
            for c in &result.checks {
                let detail = c.detail.clone().unwrap_or_default().replace('"', "\"\"");
                let _ = writeln!(csv, "{},{:?},{},\"{detail}\"", c.name, c.status, c.cases);
            }
            session.write("verify.csv", &csv)?;
        }
    }
    for c in &result.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        match &c.detail {
            Some(d) => println!("{status} {} ({} cases): {d}", c.name, c.cases),
            None => println!("{status} {} ({} cases)", c.name, c.cases),
        }
    }
    println!(
        "{} passed, {} failed, {} skipped in {:.2}s",
        result.count(Status::Pass),
        result.count(Status::Fail),
        result.count(Status::Skipped),
        elapsed.as_secs_f64()
    );
    Ok(if result.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_export(session: &Session) -> Result<PathBuf> {
    let resolved = session.resolved()?;
    let code = resolved.code()?;
    let path = match session.format {
        Format::Csv => session.write("generator.csv", &code.generator_csv())?,
        Format::Json => session.write_json("generator.json", &code.generator().to_rows())?,
    };
    println!("{}", path.display());
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_range_parsing() {
        assert_eq!(parse_r_range("2..2"), Ok(2..=2));
        assert_eq!(parse_r_range("1..=3"), Ok(1..=3));
        assert_eq!(parse_r_range("4"), Ok(4..=4));
        assert!(parse_r_range("3..1").is_err());
        assert!(parse_r_range("0..2").is_err());
        assert!(parse_r_range("x").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::TooLarge { size: 2, limit: 1 }), EXIT_LIMIT);
        assert_eq!(exit_code(&Error::ReducibleModulus(vec![1, 0, 1], 2)), EXIT_CONFIG);
        assert_eq!(exit_code(&Error::OracleMismatch(String::new())), EXIT_FAIL);
    }
}
