//! Argument definitions and command implementations.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use grl_core::criteria::{check_amds_dual_thm, check_mds_thm, check_self_dual_thm, solve_self_dual_special};
use grl_core::search::StopReason;
use grl_core::{ConditionReport, Fe, Field, GrlSpec, LinearCode, Mat};
use serde_json::json;

use crate::report::{CliError, Outcome, RunReport, EXIT_FAILS, EXIT_OK};
use crate::specfile::{parse_matrix_file, FieldSpec, JobFile, SpecFile};
use crate::verify::run_suite;

#[derive(Debug, Parser)]
#[command(name = "grl", version, about = "Generalized Roth-Lempel code toolkit")]
pub struct Cli {
    /// Emit a JSON run report instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Projective classes allowed for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Mds,
    AmdsDual,
    SelfDual,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the generator (and optionally the parity-check) matrix of a spec.
    Build {
        spec: PathBuf,
        #[arg(long)]
        parity: bool,
    },
    /// Evaluate a closed-form criterion and list its conditions.
    Check { which: CheckKind, spec: PathBuf },
    /// Brute-force parameters, weight enumerator and non-GRS certificate.
    Analyze {
        #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
        spec: Option<PathBuf>,
        /// Generator matrix file instead of a spec.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Solve for a self-dual GRL code on the given evaluation points.
    SolveSelfDual {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated evaluation points.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<String>,
    },
    /// Run a search job file and stream hits as JSON lines.
    Search { job: PathBuf },
    /// Recompute the published examples, tables and enumerators.
    VerifyPaper,
    /// Describe a finite field.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Little-endian modulus coefficients, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn build(&self) -> Result<Field, CliError> {
        let spec = FieldSpec { p: self.p, m: self.m, modulus: self.modulus.clone() };
        Ok(spec.build()?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<GrlSpec, CliError> {
    let file = SpecFile::parse(&read(path)?).map_err(CliError::usage)?;
    Ok(file.to_spec()?)
}

fn fmt_vec(field: &Field, xs: &[Fe]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| field.format(x)).collect();
    format!("({})", parts.join(","))
}

fn fmt_set(field: &Field, xs: &[Fe]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| field.format(x)).collect();
    format!("{{{}}}", parts.join(","))
}

fn describe(spec: &GrlSpec) -> String {
    format!(
        "{} n={} k={} alpha={} v={}",
        spec.field(),
        spec.n(),
        spec.k(),
        fmt_vec(spec.field(), spec.alpha()),
        fmt_vec(spec.field(), spec.v())
    )
}

fn indent(grid: &str) -> String {
    grid.lines().map(|l| format!("  {l}\n")).collect()
}

fn cmd_build(spec_path: &Path, parity: bool) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let g = spec.generator();
    let mut human = format!("{}\nG ({}x{}):\n{}", describe(&spec), g.rows(), g.cols(), indent(&g.render()));
    let mut results = json!({ "generator": g.to_codes() });
    if parity {
        let h = spec.parity_check()?;
        let _ = write!(human, "H ({}x{}):\n{}", h.rows(), h.cols(), indent(&h.render()));
        results["parity_check"] = json!(h.to_codes());
    }
    Ok(Outcome { status: EXIT_OK, human, results, stderr: String::new() })
}

fn render_report(field: &Field, report: &ConditionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "criterion: {}", report.criterion);
    let _ = writeln!(out, "{:<10} {:<10} {:<10} description", "condition", "quantifier", "status");
    for c in &report.conditions {
        let q = format!("{:?}", c.quantifier).to_lowercase();
        let st = if c.satisfied { "ok" } else { "fails" };
        let _ = writeln!(out, "{:<10} {:<10} {:<10} {}", c.id, q, st, c.description);
    }
    if !report.findings.is_empty() {
        let _ = writeln!(out, "findings (violations for 'all', witnesses for 'exists'):");
        for f in &report.findings {
            let sides: Vec<String> = f
                .sides
                .iter()
                .map(|&(l, r)| format!("{} vs {}", field.format(l), field.format(r)))
                .collect();
            let subset = if f.subset.is_empty() { String::new() } else { format!(" subset {}", fmt_set(field, &f.subset)) };
            let _ = writeln!(out, "  [{}]{subset} index {:?}: {}", f.condition, f.index, sides.join(", "));
        }
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "verdict: {}", if report.holds { "holds" } else { "does not hold" });
    out
}

fn cmd_check(which: CheckKind, spec_path: &Path) -> Result<Outcome, CliError> {
    let spec = load_spec(spec_path)?;
    let f = spec.field();
    let (report, lambda) = match which {
        CheckKind::Mds => (check_mds_thm(&spec)?, None),
        CheckKind::AmdsDual => (check_amds_dual_thm(&spec)?, None),
        CheckKind::SelfDual => {
            let c = check_self_dual_thm(&spec)?;
            (c.report, c.lambda)
        }
    };
    let mut human = format!("{}\n{}", describe(&spec), render_report(f, &report));
    if let Some(l) = lambda {
        let _ = writeln!(human, "λ = {}", f.format(l));
    }
    let status = if report.holds { EXIT_OK } else { EXIT_FAILS };
    let results = json!({ "report": report, "lambda": lambda });
    Ok(Outcome { status, human, results, stderr: String::new() })
}

fn cmd_analyze(spec: Option<&Path>, matrix: Option<&Path>, budget: u64) -> Result<Outcome, CliError> {
    let (code, grl) = match (spec, matrix) {
        (_, Some(path)) => {
            let g: Mat = parse_matrix_file(&read(path)?).map_err(CliError::usage)?;
            (LinearCode::from_generator(&g)?, None)
        }
        (Some(path), None) => {
            let spec = load_spec(path)?;
            (spec.code(), Some(spec))
        }
        (None, None) => return Err(CliError::usage("give a spec file or --matrix")),
    };
    let f = code.field().clone();
    let we = code.weight_enumerator(budget)?;
    let class = code.classify(budget)?;
    let witness = code.non_grs_witness();
    let self_dual = code.is_self_dual();

    let mut human = String::new();
    if let Some(spec) = &grl {
        let _ = writeln!(human, "{}", describe(spec));
    } else {
        let _ = writeln!(human, "{}", f);
    }
    let _ = writeln!(human, "n = {}", class.n);
    let _ = writeln!(human, "k = {}", class.k);
    let _ = writeln!(human, "d = {}", class.d);
    let _ = writeln!(human, "class: {class}");
    let _ = writeln!(human, "weight enumerator: {we}");
    let _ = writeln!(human, "Schur square dimension: {} (GRS bound {})", witness.schur_dim, witness.threshold);
    let _ = writeln!(
        human,
        "non-GRS: {}",
        if witness.certified { "certified" } else { "not certified" }
    );
    let _ = writeln!(human, "self-dual: {}", if self_dual { "yes" } else { "no" });
    let results = json!({
        "classification": class,
        "weight_enumerator": we.counts,
        "non_grs": witness,
        "self_dual": self_dual,
    });
    Ok(Outcome { status: EXIT_OK, human, results, stderr: String::new() })
}

fn cmd_solve(field: &FieldArgs, alpha: &[String]) -> Result<Outcome, CliError> {
    let f = field.build()?;
    let alpha = alpha.iter().map(|t| f.parse(t)).collect::<Result<Vec<_>, _>>()?;
    match solve_self_dual_special(&f, &alpha) {
        Ok(sol) => {
            let spec = sol.spec(&f)?;
            let mut human = String::new();
            let _ = writeln!(human, "{} alpha={} k={}", f, fmt_vec(&f, &sol.alpha), sol.k);
            let _ = writeln!(human, "λ = {}", f.format(sol.lambda));
            let _ = writeln!(
                human,
                "(mu, delta, tau) = ({}, {}, {})",
                f.format(sol.mu),
                f.format(sol.delta),
                f.format(sol.tau)
            );
            let _ = writeln!(human, "v = {}", fmt_vec(&f, &sol.v));
            let _ = write!(human, "A:\n{}", indent(&sol.mixing(&f).render()));
            let results = json!({ "solution": sol, "spec": SpecFile::from_spec(&spec) });
            Ok(Outcome { status: EXIT_OK, human, results, stderr: String::new() })
        }
        Err(failure) => Ok(Outcome {
            status: EXIT_FAILS,
            human: format!("no solution: {failure}\n"),
            results: json!({ "failure": failure }),
            stderr: String::new(),
        }),
    }
}

fn cmd_search(job_path: &Path, budget: u64, json_footer: bool) -> Result<Outcome, CliError> {
    let job = JobFile::parse(&read(job_path)?).map_err(CliError::usage)?;
    let job = job.to_job(budget)?;
    let start = Instant::now();
    let out = grl_core::run_search(&job)?;
    let mut lines = String::new();
    for hit in &out.hits {
        let line = json!({
            "candidate": hit.candidate,
            "spec": SpecFile::from_spec(&hit.spec),
            "holds": hit.report.holds,
            "lambda": hit.lambda,
            "validated": hit.validated,
            "report": hit.report,
        });
        lines.push_str(&serde_json::to_string(&line).expect("serializable"));
        lines.push('\n');
    }
    let stop = match out.stop {
        StopReason::Exhausted => "exhausted",
        StopReason::MaxHits => "max-hits",
        StopReason::MaxCandidates => "max-candidates",
    };
    let results = json!({
        "hits": out.hits.len(),
        "candidates_examined": out.candidates_examined,
        "stop": stop,
    });
    let stderr = if json_footer {
        String::new()
    } else {
        format!(
            "search: {} hits, {} candidates examined, stop: {stop}, {} ms\n",
            out.hits.len(),
            out.candidates_examined,
            start.elapsed().as_millis()
        )
    };
    Ok(Outcome { status: EXIT_OK, human: lines, results, stderr })
}

fn cmd_verify() -> Outcome {
    let rows = run_suite();
    let width = rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(0);
    let mut human = String::new();
    for r in &rows {
        let pad = width - r.label.chars().count();
        let _ = write!(human, "{:<10} {}{}", r.status.to_string(), r.label, " ".repeat(pad));
        if !r.detail.is_empty() {
            let _ = write!(human, "  {}", r.detail);
        }
        human.push('\n');
    }
    let failed = rows.iter().filter(|r| !r.ok()).count();
    let _ = writeln!(human, "{} rows, {} failed", rows.len(), failed);
    let status = if failed == 0 { EXIT_OK } else { EXIT_FAILS };
    Outcome {
        status,
        human,
        results: json!({ "rows": rows, "failed": failed }),
        stderr: String::new(),
    }
}

fn cmd_field_info(args: &FieldArgs) -> Result<Outcome, CliError> {
    let f = args.build()?;
    let g = f.generator();
    let mut human = String::new();
    let _ = writeln!(human, "field: {f}");
    let _ = writeln!(human, "order: {}", f.order());
    let _ = writeln!(human, "characteristic: {}", f.characteristic());
    let _ = writeln!(human, "degree: {}", f.degree());
    let _ = writeln!(human, "modulus (little-endian): {:?}", f.modulus());
    let _ = writeln!(human, "primitive element: code {} ({})", g.code(), f.format(g));
    if f.order() <= 64 {
        let _ = writeln!(human, "code  text  log");
        for x in f.elements() {
            let log = f.log(x).map_or("-".to_string(), |l| l.to_string());
            let _ = writeln!(human, "{:<5} {:<5} {log}", x.code(), f.format(x));
        }
    }
    let results = json!({
        "p": f.characteristic(),
        "m": f.degree(),
        "order": f.order(),
        "modulus": f.modulus(),
        "generator": g.code(),
    });
    Ok(Outcome { status: EXIT_OK, human, results, stderr: String::new() })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Build { spec, parity } => cmd_build(spec, *parity),
        Command::Check { which, spec } => cmd_check(*which, spec),
        Command::Analyze { spec, matrix } => cmd_analyze(spec.as_deref(), matrix.as_deref(), cli.budget),
        Command::SolveSelfDual { field, alpha } => cmd_solve(field, alpha),
        Command::Search { job } => cmd_search(job, cli.budget, cli.json),
        Command::VerifyPaper => Ok(cmd_verify()),
        Command::FieldInfo { field } => cmd_field_info(field),
    }
}

/// Runs a parsed command line, returning the exit status after writing
/// output.
pub fn run(cli: &Cli, argv: Vec<String>) -> i32 {
    if let Some(n) = cli.threads {
        // a second initialization only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    let result = execute(cli);
    let timing_micros = start.elapsed().as_micros() as u64;
    let is_search = matches!(cli.command, Command::Search { .. });
    let (status, results) = match result {
        Ok(out) => {
            if !cli.json || is_search {
                print!("{}", out.human);
            }
            eprint!("{}", out.stderr);
            (out.status, out.results)
        }
        Err(e) => {
            eprintln!("error: {e}");
            (e.status, json!({ "error": e.message }))
        }
    };
    if cli.json {
        let report = RunReport { command: argv, results, timing_micros, exit_status: status };
        let text = serde_json::to_string(&report).expect("serializable");
        if is_search {
            eprintln!("{text}");
        } else {
            println!("{text}");
        }
    }
    status
}
