//! Command-line front end. [`run`] does all the work and returns what the
//! binary should print, so it can be driven from tests.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::action::{
    action_coefficient_formula, action_zero_mode_oracle, check_gauge_invariance, index_pairing_with, ActionReport,
    INDEX_TOLERANCE,
};
use crate::algebra::{diophantine_diagnostic, Mode, ThetaMatrix};
use crate::error::{ActionError, IoError};
use crate::io::{emit_field, parse_field, parse_unitary, read_file, to_json, ExperimentConfig, ThetaSpec};
use crate::loops::{expansion_term, two_loop_sum, Channel, Convention, Coupling, LoopLimits};
use crate::selftest::run_selftest;
use crate::spin::{random_field, GaugeField, UnitaryElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "NCTORUS_THREADS";

pub const DEFAULT_ACTION_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_GAUGE_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_LOOP_TOLERANCE: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "nctorus", version, about = "Chern-Simons theory on the truncated noncommutative 3-torus")]
struct Cli {
    /// JSON experiment config; explicit flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the verb's default tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Evaluate the action with both evaluators.
    Action {
        /// Field JSON; a seeded random field is used when absent.
        #[arg(long)]
        field: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check S(A^u) − S(A) − 2πk·ind(u).
    GaugeCheck {
        #[arg(long)]
        field: Option<PathBuf>,
        #[command(flatten)]
        unitary: UnitaryArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Index pairing of a unitary.
    Index {
        #[command(flatten)]
        unitary: UnitaryArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Loop-expansion terms and the two-loop cancellation certificate.
    Loops {
        /// Number of gauge vertices.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Number of ghost vertices.
        #[arg(long, default_value_t = 0)]
        ghosts: usize,
        /// Two-vertex channel; overrides --order and --ghosts.
        #[arg(long)]
        channel: Option<Channel>,
        #[arg(long)]
        convention: Option<Convention>,
        #[arg(long)]
        pairing_ceiling: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Finite-cutoff diophantine constant of a vector.
    Diophantine {
        /// Comma-separated components; defaults to (φ−1, √2−1, √3−1).
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long, default_value_t = 4.0)]
        delta: f64,
        #[arg(long, default_value_t = 50)]
        bound: i64,
    },
    /// Emit a seeded random skew-adjoint gauge field.
    RandomField {
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

#[derive(Args, Debug, Default)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "N")]
    size: Option<usize>,
    #[arg(long = "K")]
    support: Option<i64>,
    #[arg(long)]
    decay: Option<f64>,
    /// Preset (zero, golden, single-angle[:x]), inline matrix or file.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    level: Option<i64>,
    #[arg(long)]
    cutoff: Option<i64>,
    #[arg(long)]
    no_zero_mode: bool,
}

#[derive(Args, Debug, Default)]
struct UnitaryArgs {
    /// Unitary JSON.
    #[arg(long, conflicts_with_all = ["weyl", "constant_seed"])]
    unitary: Option<PathBuf>,
    /// `U_m ⊗ I_N` for the mode `a,b,c`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "constant_seed")]
    weyl: Option<String>,
    /// Seeded random constant unitary.
    #[arg(long)]
    constant_seed: Option<u64>,
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Configures the global worker pool from [`THREADS_ENV`], if set.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|n| *n > 0) {
        // a pool may already exist when embedded; keep it then
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `argv` (including the program name) and runs the verb.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome::invalid(e),
    }
}

fn config(path: &Option<PathBuf>, common: &Common) -> Result<ExperimentConfig, IoError> {
    let mut c = match path {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = common.seed {
        c.seed = v;
    }
    if let Some(v) = common.size {
        c.size = v;
    }
    if let Some(v) = common.support {
        c.support = v;
    }
    if let Some(v) = common.decay {
        c.decay = v;
    }
    if let Some(v) = &common.theta {
        c.theta = ThetaSpec::from_arg(v)?;
    }
    if let Some(v) = common.level {
        c.level = v;
    }
    if let Some(v) = common.cutoff {
        c.cutoff = v;
    }
    c.no_zero_mode |= common.no_zero_mode;
    c.validate()?;
    Ok(c)
}

fn parse_triple<T: std::str::FromStr>(s: &str, what: &str) -> Result<[T; 3], IoError> {
    let parts: Vec<T> = s.split(',').map(|p| p.trim().parse::<T>()).collect::<Result<_, _>>().map_err(|_| {
        IoError::invalid(what, format!("expected three comma-separated numbers, got `{s}`"))
    })?;
    parts.try_into().map_err(|_| IoError::invalid(what, format!("expected three components, got `{s}`")))
}

fn load_field(path: &Option<PathBuf>, cfg: &ExperimentConfig, theta: ThetaMatrix) -> Result<GaugeField, IoError> {
    match path {
        Some(p) => parse_field(&read_file(p)?).map_err(|e| IoError::File { path: p.display().to_string(), message: e.to_string() }),
        None => Ok(random_field(&cfg.field_params(), theta)),
    }
}

fn load_unitary(args: &UnitaryArgs, size: usize, theta: ThetaMatrix) -> Result<(UnitaryElement, String), IoError> {
    if let Some(p) = &args.unitary {
        let u = parse_unitary(&read_file(p)?)
            .map_err(|e| IoError::File { path: p.display().to_string(), message: e.to_string() })?;
        return Ok((u, format!("file {}", p.display())));
    }
    if let Some(seed) = args.constant_seed {
        return Ok((UnitaryElement::random_constant(size, seed, theta), format!("random constant (seed {seed})")));
    }
    let m = match &args.weyl {
        Some(s) => Mode(parse_triple::<i64>(s, "weyl")?),
        None => Mode::new(1, 0, 0),
    };
    Ok((UnitaryElement::weyl(size, m, theta), format!("Weyl U_{m} ⊗ I")))
}

fn emit<T: Serialize>(value: &T, code: i32, summary: String) -> Outcome {
    Outcome { code, stdout: to_json(value), stderr: summary }
}

fn relative(a: &ActionReport, b: &ActionReport) -> f64 {
    let scale = 1.0 + a.total.norm();
    ((a.quadratic - b.quadratic).norm() / scale).max((a.cubic - b.cubic).norm() / scale)
}

fn dispatch(cli: Cli) -> Result<Outcome, Box<dyn std::error::Error>> {
    match cli.verb {
        Verb::Action { field, common } => {
            let cfg = config(&cli.config, &common)?;
            let theta = cfg.theta_matrix()?;
            let a = load_field(&field, &cfg, theta)?;
            let tol = cli.tolerance.unwrap_or(DEFAULT_ACTION_TOLERANCE);
            let oracle = action_zero_mode_oracle(&a, cfg.level)?;
            let (coefficient, skipped) = match action_coefficient_formula(&a, cfg.level) {
                Ok(r) => (Some(r), None),
                Err(e @ ActionError::ZeroModePresent { .. }) => (None, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            let diff = coefficient.as_ref().map(|c| relative(&oracle, c));
            let breach = diff.is_some_and(|d| d > tol);
            let summary = format!(
                "S_CS = {:.12e} {:+.3e}i (oracle){}\n",
                oracle.total.re,
                oracle.total.im,
                diff.map(|d| format!(", evaluators differ by {d:.2e} (tolerance {tol:.0e})")).unwrap_or_default()
            );
            let out = json!({
                "oracle": oracle,
                "coefficientFormula": coefficient,
                "coefficientFormulaSkipped": skipped,
                "relativeDifference": diff,
                "tolerance": tol,
            });
            Ok(emit(&out, if breach { EXIT_TOLERANCE } else { EXIT_OK }, summary))
        }
        Verb::GaugeCheck { field, unitary, common } => {
            let cfg = config(&cli.config, &common)?;
            let theta = cfg.theta_matrix()?;
            let a = load_field(&field, &cfg, theta)?;
            let (u, label) = load_unitary(&unitary, a.size(), *a.theta())?;
            let tol = cli.tolerance.unwrap_or(DEFAULT_GAUGE_TOLERANCE);
            let report = check_gauge_invariance(&a, &u, cfg.level)?;
            let ok = report.within(tol);
            let summary = format!(
                "gauge check with {label}: index {}, relative defect {:.2e} (tolerance {tol:.0e}) {}\n",
                report.index.index,
                report.relative_defect,
                if ok { "ok" } else { "BREACH" }
            );
            let out = json!({ "unitary": label, "tolerance": tol, "report": report });
            Ok(emit(&out, if ok { EXIT_OK } else { EXIT_TOLERANCE }, summary))
        }
        Verb::Index { unitary, common } => {
            let cfg = config(&cli.config, &common)?;
            let theta = cfg.theta_matrix()?;
            let (u, label) = load_unitary(&unitary, cfg.size, theta)?;
            let tol = cli.tolerance.unwrap_or(INDEX_TOLERANCE);
            match index_pairing_with(&u, tol) {
                Ok(r) => {
                    let summary = format!("index of {label}: {} (residual {:.2e})\n", r.index, r.residual);
                    Ok(emit(&json!({ "unitary": label, "tolerance": tol, "report": r }), EXIT_OK, summary))
                }
                Err(e @ ActionError::IndexResidual { .. }) => {
                    let out = json!({ "unitary": label, "tolerance": tol, "error": e.to_string() });
                    Ok(emit(&out, EXIT_TOLERANCE, format!("index pairing: {e}\n")))
                }
                Err(e) => Err(e.into()),
            }
        }
        Verb::Loops { order, ghosts, channel, convention, pairing_ceiling, common } => {
            let mut cfg = config(&cli.config, &common)?;
            if let Some(c) = convention {
                cfg.convention = c;
            }
            let coupling = Coupling::new(cfg.level, cfg.size, cfg.theta_matrix()?, cfg.convention)?;
            let limits = LoopLimits {
                pairing_ceiling: pairing_ceiling.unwrap_or(LoopLimits::default().pairing_ceiling),
                ..LoopLimits::default()
            };
            let report = match channel {
                Some(ch) => two_loop_sum(cfg.cutoff, &coupling, ch)?,
                None => expansion_term(order, ghosts, cfg.cutoff, &coupling, &limits)?,
            };
            let tol = cli.tolerance.unwrap_or(DEFAULT_LOOP_TOLERANCE);
            let ok = report.cancellation_ratio <= tol;
            let summary = format!(
                "loops: {} pairings, {} terms, |value| {:.3e}, gross {:.3e}, ratio {:.2e}{}\n",
                report.pairing_count,
                report.term_count,
                report.value.norm(),
                report.gross_magnitude,
                report.cancellation_ratio,
                if report.structurally_zero { " (structurally zero)" } else { "" }
            );
            Ok(emit(&report, if ok { EXIT_OK } else { EXIT_TOLERANCE }, summary))
        }
        Verb::Diophantine { vector, delta, bound } => {
            let a = match vector {
                Some(s) => parse_triple::<f64>(&s, "vector")?,
                None => ThetaMatrix::golden_rotation(),
            };
            if !delta.is_finite() || delta <= 0.0 || bound < 1 || a.iter().any(|x| !x.is_finite()) {
                return Err(IoError::invalid("diophantine", "need delta > 0, bound ≥ 1 and a finite vector").into());
            }
            let r = diophantine_diagnostic(a, delta, bound);
            let summary = format!("worst constant {:.6e} at q = {}\n", r.worst_constant, r.witness_q);
            Ok(emit(&r, EXIT_OK, summary))
        }
        Verb::RandomField { common } => {
            let cfg = config(&cli.config, &common)?;
            let a = random_field(&cfg.field_params(), cfg.theta_matrix()?);
            let summary = format!("random field: N = {}, K = {}, seed {}\n", cfg.size, cfg.support, cfg.seed);
            Ok(Outcome { code: EXIT_OK, stdout: emit_field(&a), stderr: summary })
        }
        Verb::Selftest => {
            let r = run_selftest();
            let code = if r.failed == 0 { EXIT_OK } else { EXIT_TOLERANCE };
            let summary = format!("selftest: {} passed, {} failed\n", r.passed, r.failed);
            Ok(emit(&r, code, summary))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("nctorus").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["loops", "--bogus"]).code, EXIT_USAGE);
        assert_eq!(run_args(&[]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn validation_errors_exit_1() {
        let o = run_args(&["random-field", "--theta", "[[0.1,0,0],[0,0,0],[0,0,0]]"]);
        assert_eq!(o.code, EXIT_INVALID);
        assert!(o.stderr.contains("theta not skew-symmetric"), "{}", o.stderr);
        assert_eq!(run_args(&["action", "--N", "0"]).code, EXIT_INVALID);
        assert_eq!(run_args(&["diophantine", "--vector", "1,2"]).code, EXIT_INVALID);
    }

    #[test]
    fn tolerance_override_can_force_a_breach() {
        let o = run_args(&["gauge-check", "--weyl", "1,-1,0", "--tolerance", "0"]);
        assert_eq!(o.code, EXIT_TOLERANCE, "{}", o.stderr);
        let o = run_args(&["gauge-check", "--weyl", "1,-1,0"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    }
}
