//! Command-line front end. Each invocation runs one command and yields a JSON
//! (or CSV) report together with a stable exit code.

pub mod args;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use ifps_core::castle::{
    descend, enumerate, is_essential, is_solution, repetition_filter, residual, CastleError, DescentStep,
};
use ifps_core::pv::{castling_check, is_pv_type_ifps, CastlingSide, PvError, SearchConfig, Verdict};
use ifps_core::reps::{tensor_triplet, RepError, Triplet};
use ifps_core::{parse_expr, parse_solution, parse_triplet, render_solution, render_triplet, DslError, Expr, Solution};
use serde::Serialize;
use thiserror::Error;

use args::{Cli, Command, Format, SearchArgs};
use config::{check_prime, Defaults};
use report::*;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const NOT_A_SOLUTION: i32 = 3;
    pub const NEGATIVE: i32 = 4;
    pub const UNSUPPORTED: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{error}")]
    Parse { input: String, error: DslError },
    #[error("{0}")]
    NotASolution(String),
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Parse { .. } => exit::USAGE,
            CliError::NotASolution(_) => exit::NOT_A_SOLUTION,
            CliError::Unsupported(_) => exit::UNSUPPORTED,
        }
    }

    /// Message for stderr; parse errors underline the offending span.
    pub fn render(&self) -> String {
        match self {
            CliError::Parse { input, error } => match error.span() {
                Some(span) => {
                    let pad = input[..span.start].chars().count();
                    let width = input[span.start..span.end].chars().count().max(1);
                    format!("error: {error}\n  {input}\n  {}{}\n", " ".repeat(pad), "^".repeat(width))
                }
                None => format!("error: {error}\n  {input}\n"),
            },
            other => format!("error: {other}\n"),
        }
    }
}

impl From<CastleError> for CliError {
    fn from(e: CastleError) -> Self {
        match e {
            CastleError::NotASolution { .. } => CliError::NotASolution(e.to_string()),
            CastleError::UnsupportedA(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Castle(c) => c.into(),
            RepError::ExceedsDeskScale { .. } => CliError::Unsupported(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name). `config` is the path
/// named by the config environment variable, if set.
pub fn run<I, T>(args: I, config: Option<&Path>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: exit::USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: exit::OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli, config) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: e.render() },
    }
}

fn execute(cli: &Cli, config: Option<&Path>) -> Result<(i32, String), CliError> {
    let t0 = cli.timings.then(Instant::now);
    match &cli.command {
        Command::Residual { solution } => {
            let s = solution_arg(solution)?;
            let ok = is_solution(&s);
            let code = if ok { exit::OK } else { exit::NOT_A_SOLUTION };
            let result = ResidualResult {
                residual: residual(&s).to_string(),
                is_solution: ok,
            };
            Ok(finish(t0, code, Report::new("residual", render_solution(&s), None, result)))
        }
        Command::Enumerate {
            a,
            max_part,
            max_k,
            essential_only,
            exclude_repetition,
            format,
        } => {
            if *a < 2 {
                return Err(CliError::Usage(format!("a must be at least 2, got {a}")));
            }
            let mut sols = enumerate(*a, *max_part, *max_k)?;
            if *exclude_repetition {
                sols = repetition_filter(&sols, *a);
            }
            let sols: Vec<Solution> = sols.into_iter().filter(|s| !essential_only || is_essential(s)).collect();
            if *format == Format::Csv {
                return Ok((exit::OK, csv_rows(&sols)));
            }
            let result = EnumerateResult {
                a: *a,
                max_part: *max_part,
                max_k: *max_k,
                essential_only: *essential_only,
                exclude_repetition: *exclude_repetition,
                count: sols.len(),
                all_residuals_zero: sols.iter().all(is_solution),
                solutions: sols.iter().map(render_solution).collect(),
            };
            Ok(finish(t0, exit::OK, Report::new("enumerate", a.to_string(), None, result)))
        }
        Command::Descend { solution } => {
            let s = solution_arg(solution)?;
            let d = descend(&s)?;
            let result = DescendResult {
                reduced: render_solution(&d.reduced),
                path: d.path(),
                steps: d
                    .steps
                    .iter()
                    .map(|step| match *step {
                        DescentStep::DropOnes(count) => StepReport::DropOnes { count },
                        DescentStep::Transform { position, landed } => StepReport::Transform { position, landed },
                    })
                    .collect(),
                chain: d.chain().iter().map(render_solution).collect(),
            };
            Ok(finish(t0, exit::OK, Report::new("descend", render_solution(&s), None, result)))
        }
        Command::Verify { expr, search } => {
            let cfg = search_config(search, config)?;
            let t = match parse_expr(expr).map_err(|error| parse_error(expr, error))? {
                Expr::Solution(s) => tensor_triplet(&s)?,
                Expr::Triplet(t) => t,
            };
            let assessment = is_pv_type_ifps(&t, &cfg);
            let cert = &assessment.certificate;
            let type_ifps = assessment.is_type_ifps();
            let result = VerifyResult {
                triplet: render_triplet(&t),
                algebra_dim: cert.algebra_dim,
                space_dim: cert.space_dim,
                has_gl1: t.algebra().has_center(),
                dimension_match: assessment.dimension_match,
                verdict: verdict_name(cert.verdict),
                orbit_rank: cert.orbit_rank,
                isotropy_dim: cert.isotropy_dim,
                witness: cert.witness.iter().map(ToString::to_string).collect(),
                search: search_report(&cfg, cert.trials_used),
                type_ifps,
            };
            let code = if type_ifps { exit::OK } else { exit::NEGATIVE };
            Ok(finish(t0, code, Report::new("verify", canonical_expr(expr, &t), Some(cfg.seed), result)))
        }
        Command::CastleCheck { triplet, n, search } => {
            let cfg = search_config(search, config)?;
            let t = parse_triplet(triplet).map_err(|error| parse_error(triplet, error))?;
            let m = t.space_dim();
            let input = render_triplet(&t);
            let (code, result) = match castling_check(t.rep(), *n, &cfg) {
                Ok(r) => {
                    let ok = r.both_generic() && r.isotropy_agrees();
                    let result = CastleResult {
                        m,
                        n: *n,
                        status: if ok { "agree" } else { "disagree" },
                        side1: Some(side_report(&r.side1)),
                        side2: Some(side_report(&r.side2)),
                        isotropy_equal: Some(r.isotropy_agrees()),
                        h_isotropy_equal: Some(r.h_isotropy_agrees()),
                        search: search_report(&cfg, r.search.trials_used),
                    };
                    (if ok { exit::OK } else { exit::NEGATIVE }, result)
                }
                Err(PvError::InvalidSplit { n, m }) => {
                    return Err(CliError::Usage(format!("--n must satisfy 1 ≤ n < m = {m}, got {n}")));
                }
                Err(PvError::NoGenericFound { .. }) => (
                    exit::NEGATIVE,
                    CastleResult {
                        m,
                        n: *n,
                        status: "no_generic_found",
                        side1: None,
                        side2: None,
                        isotropy_equal: None,
                        h_isotropy_equal: None,
                        search: search_report(&cfg, cfg.trials),
                    },
                ),
                Err(e @ PvError::DimensionMismatch { .. }) => return Err(CliError::Usage(e.to_string())),
            };
            Ok(finish(t0, code, Report::new("castle-check", input, Some(cfg.seed), result)))
        }
    }
}

fn finish<R: Serialize>(started: Option<Instant>, code: i32, mut report: Report<R>) -> (i32, String) {
    if let Some(start) = started {
        report.timings = Some(Timings {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    (code, report.to_json())
}

fn parse_error(input: &str, error: DslError) -> CliError {
    CliError::Parse {
        input: input.to_string(),
        error,
    }
}

fn solution_arg(text: &str) -> Result<Solution, CliError> {
    parse_solution(text).map_err(|error| parse_error(text, error))
}

/// Solutions echo as solutions; triplets as their canonical rendering.
fn canonical_expr(text: &str, t: &Triplet) -> String {
    match parse_expr(text) {
        Ok(Expr::Solution(s)) => render_solution(&s),
        _ => render_triplet(t),
    }
}

fn search_config(args: &SearchArgs, config: Option<&Path>) -> Result<SearchConfig, CliError> {
    let d = Defaults::load(config)?;
    Ok(SearchConfig {
        trials: args.trials.unwrap_or(d.trials),
        coeff_bound: args.bound.unwrap_or(d.bound),
        seed: args.seed,
        prime: check_prime(args.prime.unwrap_or(d.prime))?,
    })
}

fn search_report(cfg: &SearchConfig, trials_used: u32) -> SearchReport {
    SearchReport {
        trials: cfg.trials,
        bound: cfg.coeff_bound,
        prime: cfg.prime.to_string(),
        trials_used,
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::GenericWitnessFound => "GENERIC_WITNESS_FOUND",
        Verdict::NoWitnessFound { .. } => "NO_WITNESS_FOUND",
    }
}

fn side_report(s: &CastlingSide) -> SideReport {
    SideReport {
        algebra_dim: s.algebra_dim,
        space_dim: s.space_dim,
        generic: s.generic,
        isotropy_dim: s.isotropy_dim,
        h_isotropy_dim: s.h_isotropy_dim,
        point: s.point.iter().map(ToString::to_string).collect(),
    }
}

fn csv_rows(sols: &[Solution]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["solution", "a", "k", "parts", "residual"]).expect("in-memory write");
    for s in sols {
        let parts: Vec<String> = s.parts().iter().map(ToString::to_string).collect();
        w.write_record([
            render_solution(s),
            s.a().to_string(),
            s.k().to_string(),
            parts.join(" "),
            residual(s).to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
