//! Batch front-end: one JSON config per run, one artifact (CSV or JSON) plus a
//! JSON summary per run.
//!
//! Defaults, all overridable under `numeric` in the config:
//!
//! | key               | default                                  |
//! |-------------------|------------------------------------------|
//! | `order`           | 64                                       |
//! | `max_lag`         | `max(256, order)`                        |
//! | `n_grid`          | next power of two `>= 8 L_w`             |
//! | `truncation`      | `max(64, 4 L_c)`, grown until psi tail < 1e-12 |
//! | `tol`             | 1e-8                                     |
//! | `route_tol`       | 1e-8                                     |
//! | `dense_n`         | 400                                      |
//! | `p_list`          | `[2, 4, 8, 16]`                          |
//! | `reference_order` | `max(64, 4 max(p_list))`                 |
//! | `smoothness_k`    | 3.5                                      |
//!
//! Log verbosity is read from `WHOPF_LOG` (`error`, `warn`, `info`, `debug`).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::approx::{decay_study, ApproxConfig};
use crate::covmodel::{
    eval_spectral_density, wold_from_covariance_with, CovarianceSequence, ModelSpec,
    WoldFactorization, WoldOptions,
};
use crate::error::Error;
use crate::grid::{next_pow2, SpectralGrid};
use crate::seq::CausalSeq;
use crate::toeplitz::{dense_inverse, inverse_row, toeplitz_solve_truncated, FiniteInverse, ToeplitzSpec};
use crate::wiener::{
    default_check_len, m_step_filter, multistep_coeffs, solve_wh_classical, solve_wh_prediction_with,
    verify_normal_equations, PredictionOptions, PredictionRoute,
};

pub const LOG_ENV: &str = "WHOPF_LOG";

#[derive(Debug, Parser)]
#[command(name = "wiener-hopf", about = "Solve discrete-time Wiener-Hopf equations", version)]
pub struct Cli {
    /// Run configuration (JSON).
    #[arg(short, long, global = true)]
    pub config: Option<PathBuf>,
    /// Output path; overrides `output.path`. Stdout when absent.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; overrides `output.format`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Wold factorization of the model.
    Factorize,
    /// Solve the Wiener-Hopf equations for the configured right-hand side.
    Solve {
        #[arg(long, value_enum, default_value_t = SolveMethod::Classical)]
        method: SolveMethod,
    },
    /// Entries of the inverse Toeplitz operator.
    Invert {
        #[arg(long, default_value_t = 1)]
        rows: usize,
        #[arg(long, default_value_t = 10)]
        cols: usize,
        #[arg(long, value_enum, default_value_t = InvertMethod::Corollary)]
        method: InvertMethod,
    },
    /// m-step-ahead prediction coefficients.
    Predict {
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Decay of the AR(p) approximation error.
    ApproxStudy,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Factorize => "factorize",
            Command::Solve { .. } => "solve",
            Command::Invert { .. } => "invert",
            Command::Predict { .. } => "predict",
            Command::ApproxStudy => "approx-study",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    Classical,
    Prediction,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvertMethod {
    Corollary,
    Dense,
    Finite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RhsSpec {
    Array { values: Vec<f64> },
    /// `g_l = c(l + m)`.
    CrossCovShift { m: usize },
    /// `g = e_k`.
    Unit { k: usize },
}

impl RhsSpec {
    pub fn materialize(&self, cov: &CovarianceSequence) -> Result<CausalSeq, Error> {
        match self {
            RhsSpec::Array { values } if values.is_empty() => {
                Err(Error::Domain("rhs array is empty".into()))
            }
            RhsSpec::Array { values } => Ok(CausalSeq::new(values.clone())),
            RhsSpec::CrossCovShift { m } => {
                let v = cov.values().get(*m..).unwrap_or(&[]).to_vec();
                Ok(CausalSeq::new(if v.is_empty() { vec![0.0] } else { v }))
            }
            RhsSpec::Unit { k } => Ok(CausalSeq::unit(*k)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Numeric {
    pub order: usize,
    pub max_lag: Option<usize>,
    pub n_grid: Option<usize>,
    pub truncation: Option<usize>,
    pub tol: f64,
    pub route_tol: f64,
    pub dense_n: usize,
    pub p_list: Vec<usize>,
    pub reference_order: Option<usize>,
    pub smoothness_k: f64,
}

impl Default for Numeric {
    fn default() -> Self {
        Numeric {
            order: 64,
            max_lag: None,
            n_grid: None,
            truncation: None,
            tol: 1e-8,
            route_tol: 1e-8,
            dense_n: 400,
            p_list: vec![2, 4, 8, 16],
            reference_order: None,
            smoothness_k: 3.5,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Informational; the subcommand on the command line decides.
    #[serde(default)]
    pub command: Option<String>,
    pub model: ModelSpec,
    #[serde(default)]
    pub rhs: Option<RhsSpec>,
    #[serde(default)]
    pub numeric: Numeric,
    #[serde(default)]
    pub output: OutputSpec,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        let n = &self.numeric;
        if !(n.tol > 0.0) || !(n.route_tol > 0.0) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        if n.order == 0 || n.dense_n == 0 {
            return Err(CliError::Config("order and dense_n must be >= 1".into()));
        }
        if n.n_grid.is_some_and(|g| !g.is_power_of_two()) {
            return Err(CliError::Config("n_grid must be a power of two".into()));
        }
        Ok(())
    }

    fn max_lag(&self) -> usize {
        self.numeric.max_lag.unwrap_or(self.numeric.order.max(256))
    }

    fn wold_options(&self) -> WoldOptions {
        WoldOptions {
            order: self.numeric.order,
            truncation: self.numeric.truncation,
            n_grid: self.numeric.n_grid,
            tolerance: self.numeric.tol,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Lib(e) if e.is_domain() => 3,
            CliError::Lib(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "io",
            2 => "config",
            3 => "domain",
            _ => "numerical_consistency",
        }
    }

    /// One-line JSON for the diagnostic stream.
    pub fn structured(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

/// Fixed `%.17g`-style rendering so that CSV output is byte-stable.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let mant = strip_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    strip_zeros(&format!("{:.*}", (16 - exp) as usize, x)).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// What a run produced: the primary artifact and a JSON summary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub artifact: String,
    pub summary: Value,
}

fn load_model(cfg: &RunConfig) -> Result<(CovarianceSequence, WoldFactorization), Error> {
    let cov = cfg.model.covariance(cfg.max_lag())?;
    // positivity first so that a bad model names the offending frequency
    let n = next_pow2((2 * cov.truncation_length() + 2).max(1024));
    eval_spectral_density(&cov, n)?;
    let wold = wold_from_covariance_with(&cov, &cfg.wold_options())?;
    Ok((cov, wold))
}

fn solution_grid(cfg: &RunConfig, wold: &WoldFactorization, g: &CausalSeq) -> Result<SpectralGrid, Error> {
    let need = wold.truncation_length + g.len() + wold.order();
    match cfg.numeric.n_grid {
        Some(n) => SpectralGrid::new(n.max(next_pow2(need))),
        None => SpectralGrid::new(next_pow2(8 * (wold.truncation_length + 1)).max(next_pow2(2 * need))),
    }
}

fn csv(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Executes one command against a parsed config.
pub fn run(cfg: &RunConfig, command: &Command, format: Format) -> Result<RunOutput, CliError> {
    let (cov, wold) = load_model(cfg)?;
    let tol = cfg.numeric.tol;
    match command {
        Command::Factorize => {
            let summary = json!({
                "command": "factorize",
                "sigma2": wold.sigma2,
                "order": wold.order(),
                "truncation_length": wold.truncation_length,
                "residual": wold.residual,
            });
            let artifact = match format {
                Format::Json => json_text(&json!({
                    "sigma2": wold.sigma2,
                    "phi": wold.phi,
                    "psi": wold.psi,
                    "truncation_length": wold.truncation_length,
                    "residual": wold.residual,
                })),
                Format::Csv => csv(
                    "j,phi_j,psi_j",
                    (0..wold.psi.len().max(wold.order() + 1)).map(|j| {
                        let phi = if j == 0 { 0.0 } else { wold.phi(j) };
                        vec![j.to_string(), fmt_g17(phi), fmt_g17(wold.psi(j))]
                    }),
                ),
            };
            Ok(RunOutput { artifact, summary })
        }
        Command::Solve { method } => {
            let rhs = cfg
                .rhs
                .as_ref()
                .ok_or_else(|| CliError::Config("solve needs an `rhs`".into()))?;
            let g = rhs.materialize(&cov)?;
            let grid = solution_grid(cfg, &wold, &g)?;
            let (h, tail, condition) = match method {
                SolveMethod::Classical => {
                    let s = solve_wh_classical(&g, &wold, &grid)?;
                    (s.h, s.tail_energy, None)
                }
                SolveMethod::Prediction => {
                    let opts = PredictionOptions {
                        route: PredictionRoute::Coefficient,
                        route_tol: cfg.numeric.route_tol,
                        out_len: None,
                    };
                    let s = solve_wh_prediction_with(&g, &wold, &grid, &opts)?;
                    (s.h, s.tail_energy, None)
                }
                SolveMethod::Oracle => {
                    let spec = ToeplitzSpec::new(cov.clone(), cfg.numeric.dense_n.max(g.len()))?;
                    let s = toeplitz_solve_truncated(&spec, &g)?;
                    (s.h, 0.0, Some(s.condition_estimate))
                }
            };
            let check_len = default_check_len(&g);
            let report = verify_normal_equations(&cov, &h, &g, check_len);
            if report.max > tol {
                return Err(Error::Consistency {
                    what: "normal-equation residual".into(),
                    value: report.max,
                    tolerance: tol,
                }
                .into());
            }
            let method_tag = match method {
                SolveMethod::Classical => "classical",
                SolveMethod::Prediction => "prediction",
                SolveMethod::Oracle => "oracle",
            };
            let summary = json!({
                "command": "solve",
                "method": method_tag,
                "len": h.len(),
                "residual": report.max,
                "check_len": check_len,
                "tolerance": tol,
                "tail_energy": tail,
                "condition_estimate": condition,
            });
            let artifact = match format {
                Format::Json => json_text(&json!({ "method": method_tag, "h": h.values() })),
                Format::Csv => csv(
                    "j,h_j",
                    h.values().iter().enumerate().map(|(j, v)| vec![j.to_string(), fmt_g17(*v)]),
                ),
            };
            Ok(RunOutput { artifact, summary })
        }
        Command::Invert { rows, cols, method } => {
            let (rows, cols) = (*rows, *cols);
            if rows == 0 || cols == 0 {
                return Err(CliError::Config("--rows and --cols must be >= 1".into()));
            }
            let (tag, entries): (&str, Vec<Vec<f64>>) = match method {
                InvertMethod::Corollary => (
                    "corollary",
                    (0..rows).map(|k| inverse_row(&wold, k, cols).values).collect(),
                ),
                InvertMethod::Dense | InvertMethod::Finite => {
                    let n = cfg.numeric.dense_n;
                    if rows > n || cols > n {
                        return Err(Error::Domain(format!(
                            "{rows}x{cols} block does not fit in dimension dense_n = {n}"
                        ))
                        .into());
                    }
                    let spec = ToeplitzSpec::new(cov.clone(), n)?;
                    if *method == InvertMethod::Dense {
                        let inv = dense_inverse(&spec)?;
                        ("dense", (0..rows).map(|k| (0..cols).map(|j| inv[(k, j)]).collect()).collect())
                    } else {
                        let fi = FiniteInverse::with_window(&spec, &wold, 4 * wold.truncation_length, tol)?;
                        ("finite", (0..rows).map(|k| (0..cols).map(|j| fi.entry(k, j)).collect()).collect())
                    }
                }
            };
            let summary = json!({
                "command": "invert",
                "method": tag,
                "rows": rows,
                "cols": cols,
                "dense_n": cfg.numeric.dense_n,
            });
            let artifact = match format {
                Format::Json => json_text(&json!({ "method": tag, "rows": entries })),
                Format::Csv => {
                    let mut out = String::from("k,j,d_kj,method\n");
                    for (k, row) in entries.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            let _ = writeln!(out, "{k},{j},{},{tag}", fmt_g17(*v));
                        }
                    }
                    out
                }
            };
            Ok(RunOutput { artifact, summary })
        }
        Command::Predict { m } => {
            let g = CausalSeq::unit(0);
            let grid = solution_grid(cfg, &wold, &g)?;
            let h = m_step_filter(&wold, *m, &grid)?.h;
            let phi = multistep_coeffs(&wold, *m, h.len())?;
            let agreement = h
                .values()
                .iter()
                .zip(&phi.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let summary = json!({
                "command": "predict",
                "m": m,
                "len": h.len(),
                "multistep_agreement": agreement,
            });
            let artifact = match format {
                Format::Json => json_text(&json!({ "m": m, "h": h.values() })),
                Format::Csv => csv(
                    "j,phi_j_m",
                    h.values().iter().enumerate().map(|(j, v)| vec![j.to_string(), fmt_g17(*v)]),
                ),
            };
            Ok(RunOutput { artifact, summary })
        }
        Command::ApproxStudy => {
            let g = match &cfg.rhs {
                Some(r) => r.materialize(&cov)?,
                None => CausalSeq::unit(0),
            };
            let p_list = cfg.numeric.p_list.clone();
            let max_p = p_list.iter().copied().max().unwrap_or(1);
            let config = ApproxConfig {
                p_list,
                n_grid: cfg.numeric.n_grid,
                reference_order: cfg.numeric.reference_order.unwrap_or((4 * max_p).max(64)),
                g,
                smoothness_k: cfg.numeric.smoothness_k,
            };
            let study = decay_study(&cov, &config)?;
            let summary = json!({
                "command": "approx-study",
                "slope": study.loglog_slope,
                "semilog_slope": study.semilog_slope,
                "C_fit": study.c_fit,
                "uniform_ok": study.uniform_ok,
                "reference_residual": study.reference_residual,
                "reference_order": config.reference_order,
            });
            let artifact = match format {
                Format::Json => json_text(&serde_json::to_value(&study.rows).expect("serializable")),
                Format::Csv => csv(
                    "p,sup_err,baxter_lhs,ar_tail,sup_g,sup_Gplus",
                    study.rows.iter().map(|r| {
                        vec![
                            r.p.to_string(),
                            fmt_g17(r.sup_err),
                            fmt_g17(r.baxter_lhs),
                            fmt_g17(r.ar_tail),
                            fmt_g17(r.sup_g),
                            fmt_g17(r.sup_gplus),
                        ]
                    }),
                ),
            };
            Ok(RunOutput { artifact, summary })
        }
    }
}

/// `out.csv` -> `out.summary.json`.
pub fn summary_path(path: &Path) -> PathBuf {
    path.with_extension("summary.json")
}

fn default_format(command: &Command) -> Format {
    match command {
        Command::Factorize => Format::Json,
        _ => Format::Csv,
    }
}

/// Parses arguments, runs, writes outputs. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            log::error!("{e}");
            eprintln!("{}", e.structured());
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let cfg = RunConfig::from_json(&text)?;
    if let Some(c) = &cfg.command {
        if c != cli.command.name() {
            log::warn!("config names command `{c}`, running `{}`", cli.command.name());
        }
    }
    let format = cli
        .format
        .or(cfg.output.format)
        .unwrap_or_else(|| default_format(&cli.command));
    let out = run(&cfg, &cli.command, format)?;
    let summary = json_text(&out.summary);
    match cli.out.as_ref().or(cfg.output.path.as_ref()) {
        Some(p) => {
            std::fs::write(p, &out.artifact)?;
            std::fs::write(summary_path(p), &summary)?;
        }
        None => {
            std::io::stdout().write_all(out.artifact.as_bytes())?;
            eprint!("{summary}");
        }
    }
    Ok(())
}

/// Initializes logging from [`LOG_ENV`]; safe to call more than once.
pub fn init_logging() {
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter_or(LOG_ENV, "warn")).try_init();
}
