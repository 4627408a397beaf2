//! Command-line front end: argument parsing, report rendering and exit codes.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::exactlin::int;
use crate::liealg::{DiagramCatalog, SamplingConfig, WeightedDynkinDiagram};
use crate::minnorm::{
    feasible_point, min_norm_point, verify_certificate, verify_farkas, CertificateDump,
    Feasibility, MinNormError, PolyhedronDump,
};
use crate::rootsys::{RootSystem, RootSystemSpec, DEFAULT_WEYL_CEILING};
use crate::signtypes::{
    closure_polyhedron, dump_ideals, enumerate_ideals, Constraint, Polyhedron, SignType,
};
use crate::verify::{
    min_point_of_nregion, recheck_certificate, run_verification, status_word, verify_property_d,
    verify_supp_region, verify_theorem, Checks, PropertyDMode, Status, VerifyConfig, VerifyError,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Weak,
    Strong,
}

#[derive(Debug, Parser)]
#[command(name = "dynkin", version, about = "Exact checks on minimum-norm points of nilpotent-orbit regions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for every randomized phase.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Generic samples per ideal.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Coefficients are drawn from [1, N].
    #[arg(long = "coeff-range", global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub coeff_range: u64,
    /// Largest Weyl group order the property-D search accepts.
    #[arg(long = "weyl-ceiling", global = true, default_value_t = DEFAULT_WEYL_CEILING)]
    pub weyl_ceiling: u128,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Comma-separated: theorem,prop31,corollary,propd-weak,propd-strong (or all).
    #[arg(long, global = true, default_value = "theorem")]
    pub checks: String,
    /// Include wall-clock timings in JSON output.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TypeArgs {
    /// Family letter, A to G.
    pub family: String,
    pub rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots, Cartan matrix and structure constants.
    Roots(TypeArgs),
    /// All ad-nilpotent ideals of the Borel subalgebra.
    Ideals(TypeArgs),
    /// Minimum-norm points of the orbit regions, plus optional checks.
    Verify(TypeArgs),
    /// Exact minimum-norm certificate for one region.
    Minpoint {
        #[command(flatten)]
        ty: TypeArgs,
        /// Closure of the region of this ideal (index from `ideals`).
        #[arg(long, conflicts_with_all = ["orbit", "debug_infeasible"])]
        ideal: Option<usize>,
        /// Whole region of the orbit with these marks, e.g. 2,0,2.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        orbit: Option<Vec<i64>>,
        /// Run the solver on an empty polyhedron to show its certificate.
        #[arg(long)]
        debug_infeasible: bool,
    },
    /// Search for property-D certificates.
    Propd {
        #[command(flatten)]
        ty: TypeArgs,
        /// Ideal index; all ideals when omitted.
        #[arg(long)]
        ideal: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
        mode: ModeArg,
    },
}

/// Resolved settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub spec: RootSystemSpec,
    pub seed: u64,
    pub trials: usize,
    pub coefficient_range: u64,
    pub weyl_ceiling: u128,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub checks: Checks,
    pub timings: bool,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs, t: &TypeArgs) -> Result<RunConfig, String> {
        let spec = RootSystemSpec::parse(&t.family, t.rank).map_err(|e| e.to_string())?;
        Ok(RunConfig {
            spec,
            seed: g.seed,
            trials: g.trials as usize,
            coefficient_range: g.coeff_range,
            weyl_ceiling: g.weyl_ceiling,
            output_format: g.format,
            output_path: g.out.clone(),
            jobs: g.jobs,
            checks: Checks::parse(&g.checks)?,
            timings: g.timings,
        })
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            seed: self.seed,
            sampling: SamplingConfig {
                trials: self.trials,
                coeff_range: self.coefficient_range,
                check_triples: true,
            },
            weyl_ceiling: self.weyl_ceiling,
            ..VerifyConfig::default()
        }
    }
}

/// Rendered output and the exit code it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: EXIT_PASS }
    }

    fn with_status(text: String, s: Status) -> Outcome {
        Outcome {
            text,
            code: s.exit_code(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Verify(_) => EXIT_MISMATCH,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let v = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn markdown_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

fn table(cfg: &RunConfig, header: &[&str], rows: Vec<Vec<String>>) -> String {
    match cfg.output_format {
        OutputFormat::Csv => csv_table(header, rows),
        _ => markdown_table(header, rows),
    }
}

fn coords(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn cmd_roots(cfg: &RunConfig) -> Outcome {
    let rs = RootSystem::build(cfg.spec);
    if cfg.output_format == OutputFormat::Json {
        return Outcome::ok(to_json(&rs.dump()));
    }
    let rows = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                i.to_string(),
                coords(&r.coords),
                r.height.to_string(),
                r.is_long.to_string(),
            ]
        })
        .collect();
    Outcome::ok(table(cfg, &["index", "root", "height", "long"], rows))
}

pub fn cmd_ideals(cfg: &RunConfig) -> Outcome {
    let rs = RootSystem::build(cfg.spec);
    let ideals = enumerate_ideals(&rs);
    let dump = dump_ideals(&rs, &ideals);
    if cfg.output_format == OutputFormat::Json {
        return Outcome::ok(to_json(&dump));
    }
    let rows = dump
        .ideals
        .iter()
        .map(|i| {
            let gens: Vec<String> = i.generators.iter().map(|g| coords(g)).collect();
            vec![
                i.index.to_string(),
                i.sign_type.clone(),
                gens.join(" "),
                i.members.len().to_string(),
            ]
        })
        .collect();
    Outcome::ok(table(cfg, &["index", "sign_type", "generators", "size"], rows))
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let report = run_verification(cfg.spec, &cfg.verify_config(), cfg.checks)?;
    let text = match cfg.output_format {
        OutputFormat::Json if cfg.timings => report.json_with_timings(),
        OutputFormat::Json => report.canonical_json(),
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Markdown => report.to_markdown(),
    };
    Ok(Outcome::with_status(text, report.status))
}

#[derive(Serialize)]
struct MinpointRegion {
    ideal: usize,
    sign_type: String,
    polyhedron: PolyhedronDump,
    certificate: CertificateDump,
    norm_squared: String,
    certificate_ok: bool,
}

#[derive(Serialize)]
struct MinpointReport {
    family: String,
    rank: usize,
    target: String,
    min_point: Vec<Vec<String>>,
    min_norm: String,
    regions: Vec<MinpointRegion>,
    status: Status,
}

#[derive(Serialize)]
struct InfeasibleReport {
    polyhedron: PolyhedronDump,
    infeasible: bool,
    farkas_weights: Vec<String>,
    farkas_ok: bool,
    status: Status,
}

fn minpoint_region(rs: &RootSystem, ideal: usize, s: &SignType) -> Result<MinpointRegion, CliError> {
    let p = closure_polyhedron(rs, s);
    let c = min_norm_point(&p, rs.gram_coweight()).map_err(VerifyError::from)?;
    Ok(MinpointRegion {
        ideal,
        sign_type: s.to_string(),
        certificate_ok: verify_certificate(&p, rs.gram_coweight(), &c).is_ok(),
        norm_squared: rs.norm_squared(&c.minimizer).to_string(),
        polyhedron: PolyhedronDump::from(&p),
        certificate: CertificateDump::from(&c),
    })
}

fn render_minpoint(cfg: &RunConfig, r: &MinpointReport) -> String {
    if cfg.output_format == OutputFormat::Json {
        return to_json(r);
    }
    let rows = r
        .regions
        .iter()
        .map(|m| {
            vec![
                m.ideal.to_string(),
                m.sign_type.clone(),
                format!("({})", m.certificate.minimizer.join(",")),
                m.norm_squared.clone(),
                m.certificate_ok.to_string(),
            ]
        })
        .collect();
    table(
        cfg,
        &["ideal", "sign_type", "minimizer", "norm_squared", "certificate_ok"],
        rows,
    )
}

pub fn cmd_minpoint(
    cfg: &RunConfig,
    ideal: Option<usize>,
    orbit: Option<Vec<i64>>,
    debug_infeasible: bool,
) -> Result<Outcome, CliError> {
    let rs = RootSystem::build(cfg.spec);
    let n = rs.rank();
    if debug_infeasible {
        let mut unit = vec![0; n];
        unit[0] = 1;
        let p = Polyhedron::new(
            n,
            vec![Constraint::ge(unit.clone(), int(1)), Constraint::le(unit, int(0))],
        );
        let (infeasible, weights, ok) = match feasible_point(&p) {
            Feasibility::Feasible(_) => (false, vec![], false),
            Feasibility::Infeasible(c) => (
                true,
                c.weights.iter().map(ToString::to_string).collect(),
                verify_farkas(&p, &c),
            ),
        };
        debug_assert!(matches!(
            min_norm_point(&p, rs.gram_coweight()),
            Err(MinNormError::Infeasible(_))
        ));
        let status = if infeasible && ok { Status::Pass } else { Status::Fail };
        let r = InfeasibleReport {
            polyhedron: PolyhedronDump::from(&p),
            infeasible,
            farkas_weights: weights,
            farkas_ok: ok,
            status,
        };
        return Ok(Outcome::with_status(to_json(&r), status));
    }
    let ideals = enumerate_ideals(&rs);
    let report = match (ideal, orbit) {
        (Some(k), None) => {
            let i = ideals.get(k).ok_or_else(|| {
                CliError::Usage(format!("ideal index {k} out of range (0..{})", ideals.len()))
            })?;
            let m = minpoint_region(&rs, k, &SignType::of_ideal(&rs, i))?;
            let status = if m.certificate_ok { Status::Pass } else { Status::Fail };
            MinpointReport {
                family: cfg.spec.family.to_string(),
                rank: n,
                target: format!("ideal {k}"),
                min_point: vec![m.certificate.minimizer.clone()],
                min_norm: m.norm_squared.clone(),
                regions: vec![m],
                status,
            }
        }
        (None, Some(marks)) => {
            if marks.len() != n {
                return Err(CliError::Usage(format!("expected {n} marks")));
            }
            let d = WeightedDynkinDiagram::new(marks);
            let catalog = DiagramCatalog::new(&rs);
            let run = verify_theorem(&rs, &catalog, &cfg.verify_config())?;
            let check = run
                .checks
                .iter()
                .find(|c| c.region.orbit_class.contains(&d))
                .ok_or_else(|| CliError::Usage(format!("no region has dense orbit {d}")))?;
            let min = min_point_of_nregion(&rs, &check.region)?;
            let regions = check
                .region
                .ideals
                .iter()
                .zip(&check.region.sign_types)
                .map(|(&k, s)| minpoint_region(&rs, k, s))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = check.passed() && regions.iter().all(|r| r.certificate_ok);
            MinpointReport {
                family: cfg.spec.family.to_string(),
                rank: n,
                target: format!("orbit {}", check.region.orbit_class),
                min_point: min.minimizers.iter().map(|p| p.to_strings()).collect(),
                min_norm: min.min_norm.to_string(),
                regions,
                status: if ok { Status::Pass } else { Status::Fail },
            }
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --ideal, --orbit or --debug-infeasible".into(),
            ))
        }
    };
    Ok(Outcome::with_status(render_minpoint(cfg, &report), report.status))
}

#[derive(Serialize)]
struct PropdLine {
    ideal: usize,
    sign_type: String,
    target: String,
    found: bool,
    witness: Option<Vec<usize>>,
    e: Option<String>,
    h: Option<String>,
    f: Option<String>,
    recheck_ok: Option<bool>,
    supp_region_ok: Option<bool>,
    samples_used: usize,
}

#[derive(Serialize)]
struct PropdReport {
    family: String,
    rank: usize,
    seed: u64,
    mode: &'static str,
    entries: Vec<PropdLine>,
    status: Status,
}

pub fn cmd_propd(cfg: &RunConfig, ideal: Option<usize>, mode: ModeArg) -> Result<Outcome, CliError> {
    let rs = RootSystem::build(cfg.spec);
    let catalog = DiagramCatalog::new(&rs);
    let vcfg = cfg.verify_config();
    let run = verify_theorem(&rs, &catalog, &vcfg)?;
    let indices: Vec<usize> = match ideal {
        Some(k) if k < run.ideals.len() => vec![k],
        Some(k) => {
            return Err(CliError::Usage(format!(
                "ideal index {k} out of range (0..{})",
                run.ideals.len()
            )))
        }
        None => (0..run.ideals.len()).collect(),
    };
    let mode = match mode {
        ModeArg::Weak => PropertyDMode::Weak,
        ModeArg::Strong => PropertyDMode::Strong,
    };
    let mut status = Status::Pass;
    let mut entries = Vec::new();
    for k in indices {
        for o in verify_property_d(&rs, &catalog, &run, k, mode, &vcfg)? {
            let mut line = PropdLine {
                ideal: k,
                sign_type: SignType::of_ideal(&rs, &run.ideals[k]).to_string(),
                target: o.target.to_string(),
                found: o.certificate.is_some(),
                witness: None,
                e: None,
                h: None,
                f: None,
                recheck_ok: None,
                supp_region_ok: None,
                samples_used: o.samples_used,
            };
            match &o.certificate {
                None => status = status.and(Status::Inconclusive),
                Some(c) => {
                    let ok = recheck_certificate(&rs, &catalog, c)?;
                    let supp = verify_supp_region(&rs, c)?.passed();
                    if !ok || !supp {
                        status = status.and(Status::Fail);
                    }
                    line.witness = Some(c.witness.clone());
                    line.e = Some(c.e.to_string());
                    line.h = Some(c.h.to_string());
                    line.f = Some(c.f.to_string());
                    line.recheck_ok = Some(ok);
                    line.supp_region_ok = Some(supp);
                }
            }
            entries.push(line);
        }
    }
    let report = PropdReport {
        family: cfg.spec.family.to_string(),
        rank: cfg.spec.rank,
        seed: cfg.seed,
        mode: match mode {
            PropertyDMode::Weak => "weak",
            PropertyDMode::Strong => "strong",
        },
        entries,
        status,
    };
    let text = if cfg.output_format == OutputFormat::Json {
        to_json(&report)
    } else {
        let rows = report
            .entries
            .iter()
            .map(|l| {
                vec![
                    l.ideal.to_string(),
                    l.sign_type.clone(),
                    l.target.clone(),
                    l.found.to_string(),
                    l.witness.as_ref().map_or(String::new(), |w| format!("{w:?}")),
                ]
            })
            .collect();
        table(cfg, &["ideal", "sign_type", "target", "found", "witness"], rows)
    };
    Ok(Outcome::with_status(text, report.status))
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_PASS
                }
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn type_args(c: &Command) -> &TypeArgs {
    match c {
        Command::Roots(t) | Command::Ideals(t) | Command::Verify(t) => t,
        Command::Minpoint { ty, .. } | Command::Propd { ty, .. } => ty,
    }
}

pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = RunConfig::from_args(&cli.global, type_args(&cli.command)).map_err(CliError::Usage)?;
    if let Some(j) = cfg.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        // a second call in one process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let outcome = match &cli.command {
        Command::Roots(_) => cmd_roots(&cfg),
        Command::Ideals(_) => cmd_ideals(&cfg),
        Command::Verify(_) => cmd_verify(&cfg)?,
        Command::Minpoint {
            ideal,
            orbit,
            debug_infeasible,
            ..
        } => cmd_minpoint(&cfg, *ideal, orbit.clone(), *debug_infeasible)?,
        Command::Propd { ideal, mode, .. } => cmd_propd(&cfg, *ideal, *mode)?,
    };
    match &cfg.output_path {
        Some(p) => fs::write(p, &outcome.text)?,
        None => std::io::stdout().write_all(outcome.text.as_bytes())?,
    }
    if outcome.code != EXIT_PASS {
        eprintln!(
            "status: {}",
            match outcome.code {
                EXIT_MISMATCH => status_word(Status::Fail),
                _ => status_word(Status::Inconclusive),
            }
        );
    }
    Ok(outcome.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn cfg(args: &[&str]) -> (Cli, RunConfig) {
        let cli = Cli::try_parse_from(args).unwrap();
        let c = RunConfig::from_args(&cli.global, type_args(&cli.command)).unwrap();
        (cli, c)
    }

    #[test]
    fn defaults() {
        let (_, c) = cfg(&["dynkin", "verify", "A", "2"]);
        assert_eq!(c.seed, 1);
        assert_eq!(c.trials, 8);
        assert_eq!(c.coefficient_range, 1_000_000);
        assert_eq!(c.output_format, OutputFormat::Json);
        assert_eq!(c.checks, Checks::default());
        assert_eq!(c.spec, RootSystemSpec::new(Family::A, 2).unwrap());
    }

    #[test]
    fn usage_errors() {
        assert!(Cli::try_parse_from(["dynkin", "verify", "A"]).is_err());
        assert!(Cli::try_parse_from(["dynkin", "verify", "A", "2", "--trials", "0"]).is_err());
        let cli = Cli::try_parse_from(["dynkin", "roots", "Q", "2"]).unwrap();
        assert!(RunConfig::from_args(&cli.global, type_args(&cli.command)).is_err());
        let cli = Cli::try_parse_from(["dynkin", "verify", "A", "2", "--checks", "nope"]).unwrap();
        assert!(RunConfig::from_args(&cli.global, type_args(&cli.command)).is_err());
        assert_eq!(run(["dynkin", "roots", "G", "3"]), EXIT_USAGE);
        assert_eq!(run(["dynkin", "frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn roots_and_ideals() {
        let (_, c) = cfg(&["dynkin", "roots", "G", "2"]);
        let v: serde_json::Value = serde_json::from_str(&cmd_roots(&c).text).unwrap();
        assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
        let (_, c) = cfg(&["dynkin", "ideals", "B", "2"]);
        let v: serde_json::Value = serde_json::from_str(&cmd_ideals(&c).text).unwrap();
        assert_eq!(v["count"], 6);
        let (_, c) = cfg(&["dynkin", "ideals", "A", "2", "--format", "csv"]);
        assert_eq!(cmd_ideals(&c).text.lines().count(), 6);
    }

    #[test]
    fn minpoint_targets() {
        let (_, c) = cfg(&["dynkin", "minpoint", "A", "2"]);
        let out = cmd_minpoint(&c, None, Some(vec![1, 1]), false).unwrap();
        assert_eq!(out.code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["min_point"], serde_json::json!([["1/2", "1/2"]]));
        let out = cmd_minpoint(&c, None, None, true).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["infeasible"], true);
        assert_eq!(v["farkas_ok"], true);
        assert!(matches!(cmd_minpoint(&c, None, None, false), Err(CliError::Usage(_))));
        assert!(matches!(cmd_minpoint(&c, Some(99), None, false), Err(CliError::Usage(_))));
    }
}
