//! Identities and inequalities satisfied by extremal functions, as reports.
//!
//! All equalities are evaluated in coefficients. For an extremal function
//! `F` of a kernel `k` with `K = k_transform(k)` and `b_m` the Fourier
//! coefficients of `|F|^p` on the circle:
//!
//! ```text
//! b_{-m} = (1/‖φ‖) Σ_n a_n conj[(p/2) c_{n+m} + (1 - p/2)(m+1) c_{n+m}/(n+m+1)]
//! |b_m| ≤ (p / 2‖φ‖) ‖F‖_{H^2} (Σ_{n≥m} |c_n|²)^{1/2}
//! ```
//!
//! The case `m = 0` is the norm-equality.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{power_decay, KernelSpec};
use crate::polycore::AnalyticPoly;
use crate::report::{ReportContext, SeriesPoint, Verdict, VerificationReport};
use crate::solver::{solve_extremal, solve_truncated_family, ExtremalProblem, ExtremalSolution};
use crate::spaces::{
    abs_power_coeff, bergman_norm_even, bergman_norm_general, hardy_inner, hardy_norm_even,
    hardy_norm_even_pow, hardy_norm_general, HardyNormRequest, QuadratureGrid,
};

pub const DEFAULT_IDENTITY_TOLERANCE: f64 = 1e-4;
pub const DEFAULT_SLACK_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_HINFTY_GROWTH: f64 = 0.01;

/// An extremal function together with the kernel and `‖φ‖` it is extremal for.
#[derive(Clone, Copy, Debug)]
pub struct ExtremalPair<'a> {
    pub extremal: &'a AnalyticPoly,
    pub kernel: &'a AnalyticPoly,
    pub p: u32,
    pub phi_norm: f64,
}

impl<'a> ExtremalPair<'a> {
    pub fn new(extremal: &'a AnalyticPoly, kernel: &'a AnalyticPoly, p: u32, phi_norm: f64) -> Self {
        Self {
            extremal,
            kernel,
            p,
            phi_norm,
        }
    }

    pub fn from_solution(solution: &'a ExtremalSolution, kernel: &'a AnalyticPoly) -> Self {
        Self::new(&solution.extremal, kernel, solution.p, solution.phi_norm)
    }

    fn context(&self) -> ReportContext {
        ReportContext {
            p: Some(self.p),
            degree: self.extremal.degree(),
            ..ReportContext::default()
        }
    }

    fn half(&self) -> f64 {
        self.p as f64 / 2.0
    }
}

/// `(b_{-m}, RHS)` of the Fourier-coefficient identity, sharing one code path
/// with the norm-equality.
fn fourier_sides(pair: &ExtremalPair<'_>, m: usize) -> Result<(Complex64, Complex64)> {
    let b = pair.extremal.power(crate::error::half_even(pair.p)?);
    let lhs = abs_power_coeff(&b, -(m as i64));
    let half = pair.half();
    let weight = &pair.kernel.scale_real(half)
        + &pair.kernel.k_transform().scale_real((1.0 - half) * (m + 1) as f64);
    let rhs = hardy_inner(&pair.extremal.shift(m), &weight) / pair.phi_norm;
    Ok((lhs, rhs))
}

/// `‖F‖_{H^p}^p = (1/‖φ‖)·(1/2π)∫ F[(p/2)k̄ + (1−p/2)K̄] dθ`, residual relative.
pub fn check_norm_equality(pair: &ExtremalPair<'_>, tolerance: f64) -> Result<VerificationReport> {
    let (lhs, rhs) = fourier_sides(pair, 0)?;
    Ok(
        VerificationReport::equality("norm_equality", lhs, rhs, lhs.norm().max(1.0), tolerance)
            .with_context(pair.context()),
    )
}

/// `(1/2π)∫|F|^p h dθ = (1/‖φ‖)(1/2π)∫ F[(p/2)h k̄ + (1−p/2)(zh)′K̄] dθ` for an analytic polynomial `h`.
pub fn check_weighted_norm_formula(
    pair: &ExtremalPair<'_>,
    h: &AnalyticPoly,
    tolerance: f64,
) -> Result<VerificationReport> {
    let b = pair.extremal.power(crate::error::half_even(pair.p)?);
    let lhs: Complex64 = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, hm)| hm * abs_power_coeff(&b, -(m as i64)))
        .sum();
    let half = pair.half();
    let f = pair.extremal;
    let zh_prime = h.shift(1).derivative();
    let rhs = (hardy_inner(&f.multiply(h), pair.kernel) * half
        + hardy_inner(&f.multiply(&zh_prime), &pair.kernel.k_transform()) * (1.0 - half))
        / pair.phi_norm;
    Ok(VerificationReport::equality(
        "weighted_norm_formula",
        lhs,
        rhs,
        lhs.norm().max(1.0),
        tolerance,
    )
    .with_context(pair.context()))
}

/// Fourier coefficient `b_{-m}` of `|F|^p` against its kernel expression.
pub fn check_fourier_formula(
    pair: &ExtremalPair<'_>,
    m: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let (lhs, rhs) = fourier_sides(pair, m)?;
    Ok(VerificationReport::equality(
        &format!("fourier_formula[m={m}]"),
        lhs,
        rhs,
        lhs.norm().max(1.0),
        tolerance,
    )
    .with_context(pair.context()))
}

/// `|b_m| ≤ (p/(2‖φ‖))·‖F‖_{H²}·(Σ_{n≥m}|c_n|²)^{1/2}`; residual is the slack.
pub fn check_coefficient_bound(
    pair: &ExtremalPair<'_>,
    m: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let b = pair.extremal.power(crate::error::half_even(pair.p)?);
    let lhs = abs_power_coeff(&b, m as i64).norm();
    let tail: f64 = pair
        .kernel
        .coeffs()
        .iter()
        .skip(m)
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let rhs = pair.half() / pair.phi_norm * pair.extremal.coeff_norm() * tail;
    Ok(VerificationReport::inequality(
        &format!("coefficient_bound[m={m}]"),
        lhs,
        rhs,
        tolerance,
    )
    .with_context(pair.context()))
}

/// `‖F‖_{H^p}^{p−1}·‖k‖_{A^q} / (max(p−1,1)·‖k‖_{H^q})`, the lower bound it implies
/// on the isomorphism constant.
pub fn check_ryabykh_bound(
    pair: &ExtremalPair<'_>,
    grid: &QuadratureGrid,
) -> Result<VerificationReport> {
    let p = pair.p as f64;
    let q = conjugate(p);
    let f_hardy = hardy_norm_even(pair.extremal, pair.p)?;
    let k_bergman = bergman_norm_any(pair.kernel, q, grid)?;
    let k_hardy = hardy_norm_any(pair.kernel, q, grid)?;
    let value = f_hardy.powf(p - 1.0) * k_bergman / ((p - 1.0).max(1.0) * k_hardy);
    Ok(VerificationReport::informational("ryabykh_bound", value).with_context(pair.context()))
}

pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

fn as_even(exponent: f64) -> Option<u32> {
    (exponent.fract() == 0.0 && exponent >= 2.0 && exponent % 2.0 == 0.0 && exponent < 1e6)
        .then_some(exponent as u32)
}

/// `‖f‖_{A^s}`: exact for even `s` and for constants, quadrature otherwise.
pub fn bergman_norm_any(f: &AnalyticPoly, exponent: f64, grid: &QuadratureGrid) -> Result<f64> {
    if f.len() <= 1 && exponent > 0.0 {
        return Ok(f.coeff(0).norm());
    }
    match as_even(exponent) {
        Some(p) => bergman_norm_even(f, p),
        None => bergman_norm_general(f, exponent, grid),
    }
}

/// `‖f‖_{H^s}`: exact for even `s` and for constants, boundary quadrature otherwise.
pub fn hardy_norm_any(f: &AnalyticPoly, exponent: f64, grid: &QuadratureGrid) -> Result<f64> {
    if f.len() <= 1 && exponent > 0.0 {
        return Ok(f.coeff(0).norm());
    }
    match as_even(exponent) {
        Some(p) => hardy_norm_even(f, p),
        None => hardy_norm_general(f, &HardyNormRequest::boundary(exponent), grid),
    }
}

/// `max_θ |f(e^{iθ})|` over `samples` equispaced angles.
pub fn boundary_sup(f: &AnalyticPoly, samples: usize) -> f64 {
    (0..samples)
        .map(|j| f.eval(Complex64::from_polar(1.0, TAU * j as f64 / samples as f64)).norm())
        .fold(0.0, f64::max)
}

fn sup_samples(degree: usize) -> usize {
    (64 * (degree + 1)).max(8192)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HinftyConfig {
    pub alpha: f64,
    pub p: u32,
    pub degrees: Vec<usize>,
    /// Allowed relative growth of the boundary sup between the two largest degrees.
    pub growth_threshold: f64,
    /// Permit `alpha ≤ 3/2`; the verdict is then withheld.
    pub exploratory: bool,
}

impl HinftyConfig {
    pub fn new(alpha: f64, p: u32, degrees: Vec<usize>) -> Self {
        Self {
            alpha,
            p,
            degrees,
            growth_threshold: DEFAULT_HINFTY_GROWTH,
            exploratory: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HinftyRow {
    pub degree: usize,
    pub boundary_sup: f64,
    /// `Σ_m |b_m|` over all Fourier coefficients of `|F_n|^p`.
    pub abs_power_l1: f64,
    pub phi_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HinftyStudy {
    pub rows: Vec<HinftyRow>,
    pub report: VerificationReport,
}

/// Boundedness of `sup_θ |F_n(e^{iθ})|` for `c_n = (n+1)^{-α}`, solved at each degree.
pub fn check_hinfty_criterion(config: &HinftyConfig) -> Result<HinftyStudy> {
    if !(config.alpha > 1.5) && !config.exploratory {
        return Err(Error::InvalidInput(format!(
            "H^inf criterion needs alpha > 3/2, got {}",
            config.alpha
        )));
    }
    let mut degrees = config.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    if degrees.len() < 2 {
        return Err(Error::InvalidInput("need at least two degrees".into()));
    }
    let rows = degrees
        .par_iter()
        .map(|&n| {
            let kernel = power_decay(config.alpha, n + 1);
            let sol = solve_extremal(&ExtremalProblem::new(config.p, kernel, n))?;
            let b = sol.extremal.power(config.p / 2);
            let width = b.len() as i64;
            let abs_power_l1 = (-width..=width).map(|m| abs_power_coeff(&b, m).norm()).sum();
            Ok(HinftyRow {
                degree: n,
                boundary_sup: boundary_sup(&sol.extremal, sup_samples(n)),
                abs_power_l1,
                phi_norm: sol.phi_norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let last = rows[rows.len() - 1].boundary_sup;
    let prev = rows[rows.len() - 2].boundary_sup;
    let growth = (last - prev) / prev;
    let mut report = VerificationReport::inequality(
        "hinfty_criterion",
        growth,
        config.growth_threshold,
        0.0,
    )
    .with_context(ReportContext {
        p: Some(config.p),
        kernel_id: Some(KernelSpec::PowerDecay { alpha: config.alpha, count: 0 }.id()),
        degree: degrees.last().copied(),
        ..ReportContext::default()
    })
    .with_note(format!("relative growth of sup|F_n| between n={} and n={}", degrees[degrees.len() - 2], degrees[degrees.len() - 1]));
    report.series = rows
        .iter()
        .map(|r| SeriesPoint {
            x: r.degree as f64,
            y: r.boundary_sup,
        })
        .collect();
    if !(config.alpha > 1.5) {
        report.verdict = Verdict::Withheld;
    }
    Ok(HinftyStudy { rows, report })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthStudyRow {
    pub kernel_id: String,
    pub q1: f64,
    pub p1: f64,
    /// `‖k‖_{H^{q1}}`
    pub k_hardy: f64,
    /// `‖k‖_{A^q}`
    pub k_bergman: f64,
    /// `‖F‖_{H^{p1}}`
    pub f_hardy: f64,
    /// `‖F‖_{H^{p1}}^{p−1} · ‖k‖_{A^q} / ‖k‖_{H^{q1}}`
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthStudy {
    pub p: u32,
    pub degree: usize,
    pub rows: Vec<GrowthStudyRow>,
    /// Kernels whose solve failed, with the error message.
    pub failures: Vec<(String, String)>,
    /// Smallest `C` with every ratio in `[1/C, C]`.
    pub band: f64,
}

/// Growth rows for one solved kernel.
pub fn growth_rows(
    kernel_id: &str,
    kernel: &AnalyticPoly,
    solution: &ExtremalSolution,
    q1_list: &[f64],
    grid: &QuadratureGrid,
) -> Result<Vec<GrowthStudyRow>> {
    let p = solution.p as f64;
    let q = conjugate(p);
    let k_bergman = bergman_norm_any(kernel, q, grid)?;
    q1_list
        .iter()
        .map(|&q1| {
            if !(q1 >= q - 1e-12) || !q1.is_finite() {
                return Err(Error::InvalidExponent {
                    p: q1,
                    reason: "growth study needs q <= q1 < inf",
                });
            }
            let p1 = (p - 1.0) * q1;
            let k_hardy = hardy_norm_any(kernel, q1, grid)?;
            let f_hardy = hardy_norm_any(&solution.extremal, round_exponent(p1), grid)?;
            Ok(GrowthStudyRow {
                kernel_id: kernel_id.to_string(),
                q1,
                p1,
                k_hardy,
                k_bergman,
                f_hardy,
                ratio: f_hardy.powf(p - 1.0) * k_bergman / k_hardy,
            })
        })
        .collect()
}

/// Snap `(p−1)·q1` to the nearest integer when it is one up to round-off,
/// so that even exponents take the exact route.
fn round_exponent(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r
    } else {
        x
    }
}

/// Two-sided growth ratios over a kernel family, each kernel solved over `P_degree`.
pub fn growth_study(
    kernels: &[KernelSpec],
    p: u32,
    q1_list: &[f64],
    degree: usize,
    grid: &QuadratureGrid,
) -> GrowthStudy {
    let outcomes: Vec<(String, Result<Vec<GrowthStudyRow>>)> = kernels
        .par_iter()
        .map(|spec| {
            let id = spec.id();
            let run = || -> Result<Vec<GrowthStudyRow>> {
                let kernel = spec.build()?.taylor_truncate(degree);
                let sol = solve_extremal(&ExtremalProblem::new(p, kernel.clone(), degree))?;
                growth_rows(&id, &kernel, &sol, q1_list, grid)
            };
            (id.clone(), run())
        })
        .collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (id, outcome) in outcomes {
        match outcome {
            Ok(r) => rows.extend(r),
            Err(e) => failures.push((id, e.to_string())),
        }
    }
    let band = growth_band(&rows);
    GrowthStudy {
        p,
        degree,
        rows,
        failures,
        band,
    }
}

pub fn growth_band(rows: &[GrowthStudyRow]) -> f64 {
    rows.iter()
        .map(|r| r.ratio.max(1.0 / r.ratio))
        .fold(1.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub degree: usize,
    /// `‖F_n − F_N‖_{H^p}` with `N` the largest degree.
    pub distance: f64,
}

/// Distances of the extremal functions `F_n` of the truncated kernels `S_n k`
/// to the reference `F_N`, `N = max(degrees)`. Every level is solved over
/// the common space `P_{max(template.degree, N)}`.
pub fn convergence_study(
    template: &ExtremalProblem,
    degrees: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    let reference_degree = *degrees
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidInput("no degrees given".into()))?;
    let mut all = degrees.to_vec();
    all.push(reference_degree);
    all.sort_unstable();
    all.dedup();
    let mut template = template.clone();
    template.degree = template.degree.max(reference_degree);
    let solutions = solve_truncated_family(&template, &all)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let reference = &solutions[solutions.len() - 1].extremal;
    degrees
        .iter()
        .map(|&n| {
            let idx = all.binary_search(&n).expect("degree present");
            let diff = &solutions[idx].extremal - reference;
            Ok(ConvergenceRow {
                degree: n,
                distance: hardy_norm_even_pow(&diff, template.p)?.powf(1.0 / template.p as f64),
            })
        })
        .collect()
}
