//! Command-line driver: configs, runs and machine-readable reports.
//!
//! Every report is an [`Envelope`] whose `header` carries the volatile
//! fields (timestamp, tool version) and whose `body` is a pure function of
//! the config and seed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{standard_family, KernelSpec};
use crate::oracle::{brute_force_extremal, OracleConfig};
use crate::polycore::AnalyticPoly;
use crate::report::{ReportContext, VerificationReport};
use crate::solver::{
    extremality_residual, solve_extremal, ExtremalProblem, ExtremalSolution, NonConvergence,
    DEFAULT_CERTIFICATE_TOLERANCE, DEFAULT_TOLERANCE,
};
use crate::spaces::QuadratureGrid;
use crate::theorems::{
    check_coefficient_bound, check_fourier_formula, check_hinfty_criterion,
    check_norm_equality, check_ryabykh_bound, conjugate, convergence_study, growth_study,
    ConvergenceRow, ExtremalPair, GrowthStudyRow, HinftyConfig, HinftyRow,
    DEFAULT_IDENTITY_TOLERANCE, DEFAULT_SLACK_TOLERANCE,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 7;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_NON_CONVERGENCE: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

fn default_format() -> OutputFormat {
    OutputFormat::Json
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Extremality,
    NormEquality,
    FourierFormula,
    CoefficientBound,
    RyabykhBound,
}

impl CheckName {
    pub fn defaults() -> Vec<CheckName> {
        vec![
            CheckName::Extremality,
            CheckName::NormEquality,
            CheckName::FourierFormula,
        ]
    }
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}
fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}
fn default_identity_tolerance() -> f64 {
    DEFAULT_IDENTITY_TOLERANCE
}
fn default_slack_tolerance() -> f64 {
    DEFAULT_SLACK_TOLERANCE
}
fn default_fourier_modes() -> usize {
    8
}

/// Run configuration, read from a JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub p: u32,
    pub degree: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Empty means [`CheckName::defaults`].
    #[serde(default)]
    pub checks: Vec<CheckName>,
    /// Empty means `{q, 2, 4}` with `q` conjugate to `p`.
    #[serde(default)]
    pub q1_list: Vec<f64>,
    #[serde(default)]
    pub kernel: Option<KernelSpec>,
    /// Kernel family for the growth study; empty means the standard family.
    #[serde(default)]
    pub family: Vec<KernelSpec>,
    /// Degrees for the convergence and H^∞ studies.
    #[serde(default)]
    pub degrees: Vec<usize>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default = "default_fourier_modes")]
    pub fourier_modes: usize,
    #[serde(default = "default_identity_tolerance")]
    pub identity_tolerance: f64,
    #[serde(default = "default_slack_tolerance")]
    pub slack_tolerance: f64,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub exploratory: bool,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

impl RunConfig {
    pub fn new(p: u32, degree: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            p,
            degree,
            tolerance: DEFAULT_TOLERANCE,
            checks: Vec::new(),
            q1_list: Vec::new(),
            kernel: None,
            family: Vec::new(),
            degrees: Vec::new(),
            alpha: None,
            fourier_modes: default_fourier_modes(),
            identity_tolerance: DEFAULT_IDENTITY_TOLERANCE,
            slack_tolerance: DEFAULT_SLACK_TOLERANCE,
            seed: None,
            exploratory: false,
            output: None,
        }
    }

    pub fn with_kernel(mut self, kernel: KernelSpec) -> Self {
        self.kernel = Some(kernel);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.p < 2 || !self.p.is_multiple_of(2) {
            return Err(Error::OddExponent { p: self.p });
        }
        if self.degree < 1 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        for (name, t) in [
            ("tolerance", self.tolerance),
            ("identity_tolerance", self.identity_tolerance),
            ("slack_tolerance", self.slack_tolerance),
        ] {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn checks(&self) -> Vec<CheckName> {
        if self.checks.is_empty() {
            CheckName::defaults()
        } else {
            self.checks.clone()
        }
    }

    fn q1_list(&self) -> Vec<f64> {
        if self.q1_list.is_empty() {
            vec![conjugate(self.p as f64), 2.0, 4.0]
        } else {
            self.q1_list.clone()
        }
    }

    fn family(&self) -> Vec<KernelSpec> {
        if self.family.is_empty() {
            standard_family(2 * self.degree + 1, self.seed())
        } else {
            self.family.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema_version: u32,
    pub tool_version: String,
    pub generated_at_unix: u64,
    pub seed: Option<u64>,
}

impl Header {
    fn now(seed: Option<u64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            generated_at_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub header: Header,
    pub body: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(seed: Option<u64>, body: T) -> Self {
        Self {
            header: Header::now(seed),
            body,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveBody {
    pub config: RunConfig,
    pub kernel_id: String,
    pub kernel: AnalyticPoly,
    pub outcome: SolveOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolveOutcome {
    Converged {
        solution: ExtremalSolution,
        extremality_residuals: Vec<Complex64>,
        checks: Vec<VerificationReport>,
    },
    NonConvergence {
        failure: NonConvergence,
    },
}

impl SolveBody {
    pub fn exit_code(&self) -> i32 {
        match &self.outcome {
            SolveOutcome::Converged { checks, .. } => checks_exit_code(checks),
            SolveOutcome::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
        }
    }
}

fn checks_exit_code(checks: &[VerificationReport]) -> i32 {
    if checks.iter().any(VerificationReport::is_blocking_failure) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_PASS
    }
}

/// Solve for the configured kernel over `P_degree` and run the requested checks.
///
/// Non-convergence is reported in the body (exit code 2), not as an error.
pub fn run_solve(config: &RunConfig, kernel_spec: &KernelSpec) -> Result<SolveBody> {
    config.validate()?;
    let kernel = kernel_spec.build()?;
    let problem =
        ExtremalProblem::new(config.p, kernel.clone(), config.degree).with_tolerance(config.tolerance);
    let outcome = match solve_extremal(&problem) {
        Ok(solution) => {
            let (extremality_residuals, checks) =
                verify_solution(config, &kernel, &kernel_spec.id(), &solution)?;
            SolveOutcome::Converged {
                solution,
                extremality_residuals,
                checks,
            }
        }
        Err(Error::NonConvergence(failure)) => SolveOutcome::NonConvergence { failure: *failure },
        Err(e) => return Err(e),
    };
    Ok(SolveBody {
        config: config.clone(),
        kernel_id: kernel_spec.id(),
        kernel,
        outcome,
    })
}

/// Extremality residuals (`j ≤ degree`) and the configured checks for a solution.
pub fn verify_solution(
    config: &RunConfig,
    kernel: &AnalyticPoly,
    kernel_id: &str,
    solution: &ExtremalSolution,
) -> Result<(Vec<Complex64>, Vec<VerificationReport>)> {
    let residuals = extremality_residual(
        &solution.extremal,
        kernel,
        solution.p,
        solution.phi_norm,
        solution.degree,
    )?;
    let pair = ExtremalPair::from_solution(solution, kernel);
    let context = ReportContext {
        p: Some(solution.p),
        kernel_id: Some(kernel_id.to_string()),
        degree: Some(solution.degree),
        ..ReportContext::default()
    };
    let mut checks = Vec::new();
    for check in config.checks() {
        match check {
            CheckName::Extremality => {
                let max = residuals.iter().map(|r| r.norm()).fold(0.0, f64::max);
                checks.push(VerificationReport::equality(
                    "extremality",
                    max.into(),
                    0.0.into(),
                    1.0,
                    DEFAULT_CERTIFICATE_TOLERANCE,
                ));
            }
            CheckName::NormEquality => {
                checks.push(check_norm_equality(&pair, config.identity_tolerance)?)
            }
            CheckName::FourierFormula => {
                for m in 0..=config.fourier_modes {
                    checks.push(check_fourier_formula(&pair, m, config.identity_tolerance)?);
                }
            }
            CheckName::CoefficientBound => {
                for m in 0..=2 * solution.degree {
                    checks.push(check_coefficient_bound(&pair, m, config.slack_tolerance)?);
                }
            }
            CheckName::RyabykhBound => {
                let grid = QuadratureGrid::for_degree(kernel.len().max(solution.degree) * 2);
                checks.push(check_ryabykh_bound(&pair, &grid)?);
            }
        }
    }
    let checks = checks
        .into_iter()
        .map(|c| c.with_context(context.clone()))
        .collect();
    Ok((residuals, checks))
}

/// Re-run the checks of a stored solve report.
pub fn run_verify(stored: &SolveBody) -> Result<VerifyBody> {
    stored.config.validate()?;
    let SolveOutcome::Converged { solution, .. } = &stored.outcome else {
        return Err(Error::InvalidInput(
            "report holds no converged solution to verify".into(),
        ));
    };
    let (extremality_residuals, checks) =
        verify_solution(&stored.config, &stored.kernel, &stored.kernel_id, solution)?;
    Ok(VerifyBody {
        kernel_id: stored.kernel_id.clone(),
        extremality_residuals,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyBody {
    pub kernel_id: String,
    pub extremality_residuals: Vec<Complex64>,
    pub checks: Vec<VerificationReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum StudyKind {
    Growth,
    Convergence,
    Hinfty,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "study", rename_all = "snake_case")]
pub enum StudyBody {
    Growth {
        p: u32,
        degree: usize,
        band: f64,
        rows: Vec<GrowthStudyRow>,
        failures: Vec<(String, String)>,
    },
    Convergence {
        p: u32,
        kernel_id: String,
        rows: Vec<ConvergenceRow>,
        report: VerificationReport,
    },
    Hinfty {
        p: u32,
        alpha: f64,
        rows: Vec<HinftyRow>,
        report: VerificationReport,
    },
}

impl StudyBody {
    pub fn exit_code(&self) -> i32 {
        match self {
            StudyBody::Growth { failures, .. } if !failures.is_empty() => EXIT_CHECK_FAILED,
            StudyBody::Growth { .. } => EXIT_PASS,
            StudyBody::Convergence { report, .. } | StudyBody::Hinfty { report, .. } => {
                checks_exit_code(std::slice::from_ref(report))
            }
        }
    }

    /// CSV table of the rows (one per kernel and exponent, or per degree).
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            StudyBody::Growth { rows, .. } => rows.iter().try_for_each(|r| w.serialize(r))?,
            StudyBody::Convergence { rows, .. } => rows.iter().try_for_each(|r| w.serialize(r))?,
            StudyBody::Hinfty { rows, .. } => rows.iter().try_for_each(|r| w.serialize(r))?,
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Run one study. Kernel failures in the growth study are isolated per row.
pub fn run_study(config: &RunConfig, kind: StudyKind) -> Result<StudyBody> {
    config.validate()?;
    match kind {
        StudyKind::Growth => {
            let family = config.family();
            let grid = QuadratureGrid::for_degree(4 * config.degree + 4);
            let study = growth_study(&family, config.p, &config.q1_list(), config.degree, &grid);
            Ok(StudyBody::Growth {
                p: study.p,
                degree: study.degree,
                band: study.band,
                rows: study.rows,
                failures: study.failures,
            })
        }
        StudyKind::Convergence => {
            let spec = config.kernel.clone().unwrap_or(KernelSpec::PowerDecay {
                alpha: 2.0,
                count: 2 * config.degree + 1,
            });
            let degrees = if config.degrees.is_empty() {
                vec![8, 16, 32, config.degree.max(64)]
            } else {
                config.degrees.clone()
            };
            let template = ExtremalProblem::new(config.p, spec.build()?, config.degree)
                .with_tolerance(config.tolerance);
            let rows = convergence_study(&template, &degrees)?;
            let report = monotone_report(&rows).with_kernel_id(spec.id());
            Ok(StudyBody::Convergence {
                p: config.p,
                kernel_id: spec.id(),
                rows,
                report,
            })
        }
        StudyKind::Hinfty => {
            let alpha = config.alpha.unwrap_or(2.0);
            let degrees = if config.degrees.is_empty() {
                vec![16, 32, 64]
            } else {
                config.degrees.clone()
            };
            let mut hc = HinftyConfig::new(alpha, config.p, degrees);
            hc.exploratory = config.exploratory;
            let study = check_hinfty_criterion(&hc)?;
            Ok(StudyBody::Hinfty {
                p: config.p,
                alpha,
                rows: study.rows,
                report: study.report,
            })
        }
    }
}

/// Worst consecutive difference of the distance column (excluding the reference
/// row, which is 0 by construction); must be negative.
fn monotone_report(rows: &[ConvergenceRow]) -> VerificationReport {
    let body = &rows[..rows.len().saturating_sub(1)];
    let worst = body
        .windows(2)
        .map(|w| w[1].distance - w[0].distance)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut r = VerificationReport::inequality("convergence_monotone", worst, 0.0, 0.0);
    if worst == 0.0 || body.len() < 2 {
        // Exactly equal distances (e.g. a polynomial kernel) are not a failure.
        r.verdict = crate::report::Verdict::Pass;
    }
    r.series = rows
        .iter()
        .map(|row| crate::report::SeriesPoint {
            x: row.degree as f64,
            y: row.distance,
        })
        .collect();
    r
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub kernel_id: String,
    pub degree: usize,
    pub max_coeff_diff: f64,
    pub solver: AnalyticPoly,
    pub oracle: AnalyticPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleBody {
    pub p: u32,
    pub tolerance: f64,
    pub rows: Vec<OracleRow>,
    pub checks: Vec<VerificationReport>,
}

impl OracleBody {
    pub fn exit_code(&self) -> i32 {
        checks_exit_code(&self.checks)
    }
}

pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// Kernels supported on `{1, z}` used when the config names none.
pub fn oracle_kernels() -> Vec<KernelSpec> {
    let c = |v: &[(f64, f64)]| KernelSpec::Coeffs { values: v.to_vec() };
    vec![
        c(&[(0.0, 0.0), (1.0, 0.0)]),
        c(&[(1.0, 0.0)]),
        c(&[(1.0, 0.0), (1.0, 0.0)]),
        c(&[(1.0, 0.0), (0.5, 0.0)]),
        c(&[(0.3, 0.0), (1.0, 0.0)]),
        c(&[(1.0, 0.0), (0.0, 0.7)]),
    ]
}

/// Brute-force `P_2`/`P_3` search against the solver, coefficientwise.
pub fn run_oracle_compare(config: &RunConfig) -> Result<OracleBody> {
    config.validate()?;
    let kernels = match &config.kernel {
        Some(k) => vec![k.clone()],
        None => oracle_kernels(),
    };
    let oracle_config = OracleConfig {
        seed: config.seed(),
        ..OracleConfig::default()
    };
    let mut rows = Vec::new();
    for spec in &kernels {
        let kernel = spec.build()?;
        for degree in [2, 3] {
            let solver = solve_extremal(&ExtremalProblem::new(config.p, kernel.clone(), degree))?
                .extremal;
            let oracle = brute_force_extremal(&kernel, config.p, degree, &oracle_config)?;
            let max_coeff_diff = (0..=degree)
                .map(|j| (solver.coeff(j) - oracle.coeff(j)).norm())
                .fold(0.0, f64::max);
            rows.push(OracleRow {
                kernel_id: spec.id(),
                degree,
                max_coeff_diff,
                solver,
                oracle,
            });
        }
    }
    let checks = rows
        .iter()
        .map(|r| {
            VerificationReport::equality(
                "oracle_agreement",
                r.max_coeff_diff.into(),
                0.0.into(),
                1.0,
                ORACLE_TOLERANCE,
            )
            .with_context(ReportContext {
                p: Some(config.p),
                kernel_id: Some(r.kernel_id.clone()),
                degree: Some(r.degree),
                ..ReportContext::default()
            })
        })
        .collect();
    Ok(OracleBody {
        p: config.p,
        tolerance: ORACLE_TOLERANCE,
        rows,
        checks,
    })
}

/// Kernel used by `solve` when neither the config nor the flags name one.
pub fn default_kernel(degree: usize) -> KernelSpec {
    KernelSpec::PowerDecay {
        alpha: 2.0,
        count: degree + 1,
    }
}

// Argument parsing and dispatch.

#[derive(Debug, Parser)]
#[command(name = "bergman", version, about = "Extremal problems in Bergman spaces A^p (p even)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Seed for randomized kernel families and the oracle search.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for study rows.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the configured kernel and run the configured checks.
    Solve(CommonArgs),
    /// Re-verify a stored solve report.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Solve report (JSON) to re-verify.
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a study table.
    Study {
        #[arg(value_enum)]
        kind: StudyKind,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the solver with a brute-force search over P_2 and P_3.
    OracleCompare(CommonArgs),
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Solve(c) | Command::OracleCompare(c) => c,
            Command::Verify { common, .. } | Command::Study { common, .. } => common,
        }
    }
}

/// Parse-free entry point; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NonConvergence(_) => EXIT_NON_CONVERGENCE,
                _ => EXIT_INVALID_INPUT,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let common = cli.command.common();
    let mut config = RunConfig::load(&common.config)?;
    if let Some(seed) = common.seed {
        config.seed = Some(seed);
    }
    let out = common
        .out
        .clone()
        .or_else(|| config.output.as_ref().and_then(|o| o.path.clone()));
    let format = common
        .format
        .or_else(|| config.output.as_ref().map(|o| o.format))
        .unwrap_or(OutputFormat::Json);
    if let Some(jobs) = common.jobs {
        if jobs == 0 {
            return Err(Error::InvalidInput("--jobs must be at least 1".into()));
        }
        // Only the first pool configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let seed = Some(config.seed());
    match &cli.command {
        Command::Solve(_) => {
            let spec = config.kernel.clone().unwrap_or_else(|| default_kernel(config.degree));
            let body = run_solve(&config, &spec)?;
            if let SolveOutcome::NonConvergence { failure } = &body.outcome {
                eprintln!("{failure}");
            }
            require_json(format)?;
            emit(out.as_deref(), &Envelope::new(seed, &body).to_json()?)?;
            Ok(body.exit_code())
        }
        Command::Verify { input, .. } => {
            let stored: Envelope<SolveBody> = serde_json::from_str(&fs::read_to_string(input)?)?;
            let body = run_verify(&stored.body)?;
            require_json(format)?;
            emit(out.as_deref(), &Envelope::new(seed, &body).to_json()?)?;
            Ok(checks_exit_code(&body.checks))
        }
        Command::Study { kind, .. } => {
            let body = run_study(&config, *kind)?;
            let text = match format {
                OutputFormat::Json => Envelope::new(seed, &body).to_json()?,
                OutputFormat::Csv => csv_with_header(&Header::now(seed), *kind, &body)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(body.exit_code())
        }
        Command::OracleCompare(_) => {
            let body = run_oracle_compare(&config)?;
            require_json(format)?;
            emit(out.as_deref(), &Envelope::new(seed, &body).to_json()?)?;
            Ok(body.exit_code())
        }
    }
}

fn require_json(format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Json => Ok(()),
        OutputFormat::Csv => Err(Error::InvalidInput(
            "csv output is available for study tables only".into(),
        )),
    }
}

/// `#`-prefixed header lines followed by the CSV table.
pub fn csv_with_header(header: &Header, kind: StudyKind, body: &StudyBody) -> Result<String> {
    let mut s = format!(
        "# schema_version={}\n# tool_version={}\n# generated_at_unix={}\n# seed={}\n# study={}\n",
        header.schema_version,
        header.tool_version,
        header.generated_at_unix,
        header.seed.map_or("none".to_string(), |s| s.to_string()),
        serde_json::to_value(kind)?.as_str().unwrap_or("study"),
    );
    if let StudyBody::Growth { band, failures, .. } = body {
        s.push_str(&format!("# band={band:e}\n"));
        for (id, msg) in failures {
            s.push_str(&format!("# failed {id}: {msg}\n"));
        }
    }
    s.push_str(&body.to_csv()?);
    Ok(s)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}
