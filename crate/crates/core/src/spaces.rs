//! Bergman and Hardy norms and pairings.
//!
//! For even exponents every quantity is a finite coefficient sum: with
//! `b = f^{p/2}`,
//!
//! ```text
//! ‖f‖_{A^p}^p = Σ |b_m|² / (m+1)        ‖f‖_{H^p}^p = Σ |b_m|²
//! ```
//!
//! General exponents go through a tensor quadrature on the disc (uniform
//! angular samples × Gauss–Legendre in the radius), with normalized area
//! measure `dσ = r dr dθ / π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, half_even, Error, Result};
use crate::polycore::AnalyticPoly;

/// Radial node count used by [`QuadratureGrid::for_degree`].
pub const DEFAULT_RADIAL_NODES: usize = 64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess for the i-th root, counted from x = 1.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule.reverse();
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Tensor grid on the closed disc: `angular_count` equispaced angles and
/// radial Gauss nodes `r ∈ (0,1)` with `dr`-weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    angular_count: usize,
    radial_nodes: Vec<(f64, f64)>,
}

impl QuadratureGrid {
    pub fn new(angular_count: usize, radial_nodes: Vec<(f64, f64)>) -> Result<Self> {
        if angular_count == 0 {
            return Err(Error::DegenerateGrid("no angular samples"));
        }
        if radial_nodes.is_empty() {
            return Err(Error::DegenerateGrid("no radial nodes"));
        }
        if radial_nodes
            .iter()
            .any(|&(r, w)| !(r > 0.0 && r < 1.0) || !(w > 0.0))
        {
            return Err(Error::DegenerateGrid(
                "radial nodes must lie in (0,1) with positive weights",
            ));
        }
        Ok(Self {
            angular_count,
            radial_nodes,
        })
    }

    /// Gauss–Legendre rule with `radial` nodes mapped to `(0,1)`.
    pub fn with_counts(angular_count: usize, radial: usize) -> Result<Self> {
        let nodes = gauss_legendre(radial)
            .into_iter()
            .map(|(x, w)| ((x + 1.0) / 2.0, w / 2.0))
            .collect();
        Self::new(angular_count, nodes)
    }

    /// Default grid for polynomials up to `max_degree`: the smallest power of
    /// two ≥ `4·max_degree + 4` angles and 64 radial nodes.
    pub fn for_degree(max_degree: usize) -> Self {
        Self::with_counts((4 * max_degree + 4).next_power_of_two(), DEFAULT_RADIAL_NODES)
            .expect("default grid is valid")
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn radial_nodes(&self) -> &[(f64, f64)] {
        &self.radial_nodes
    }

    /// Largest degree `d` such that trigonometric polynomials of bandwidth
    /// `2d` are integrated exactly by the angular rule.
    pub fn bandwidth(&self) -> usize {
        (self.angular_count - 1) / 2
    }

    /// `Σ w·2r`, the discrete area of the disc (should be 1).
    pub fn area(&self) -> f64 {
        self.radial_nodes.iter().map(|&(r, w)| 2.0 * r * w).sum()
    }

    fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        let step = 2.0 * PI / self.angular_count as f64;
        (0..self.angular_count).map(move |j| j as f64 * step)
    }

    /// `(1/2π) ∫ g(re^{iθ}) dθ` by the angular rule.
    pub fn circle_mean<G: Fn(Complex64) -> f64>(&self, r: f64, g: G) -> f64 {
        let total: f64 = self.angles().map(|t| g(Complex64::from_polar(r, t))).sum();
        total / self.angular_count as f64
    }

    /// `∫_D g dσ` by the tensor rule.
    pub fn disc_mean<G: Fn(Complex64) -> f64>(&self, g: G) -> f64 {
        self.radial_nodes
            .iter()
            .map(|&(r, w)| 2.0 * r * w * self.circle_mean(r, &g))
            .sum()
    }
}

/// Where general-exponent Hardy norms are evaluated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusPolicy {
    /// Integral mean at `r = 1`; the supremum for polynomials since means increase in `r`.
    BoundaryOnly,
    /// Maximum of the integral means over the listed radii (diagnostic).
    RadialSweep(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardyNormRequest {
    pub exponent: f64,
    pub radius_policy: RadiusPolicy,
}

impl HardyNormRequest {
    pub fn boundary(exponent: f64) -> Self {
        Self {
            exponent,
            radius_policy: RadiusPolicy::BoundaryOnly,
        }
    }
}

/// `∫_D f ḡ dσ = Σ a_n conj(b_n)/(n+1)`.
pub fn bergman_inner(f: &AnalyticPoly, g: &AnalyticPoly) -> Complex64 {
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .enumerate()
        .map(|(n, (a, b))| a * b.conj() / (n + 1) as f64)
        .sum()
}

/// `(1/2π) ∫ f ḡ dθ = Σ a_n conj(b_n)`.
pub fn hardy_inner(f: &AnalyticPoly, g: &AnalyticPoly) -> Complex64 {
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// The functional `φ(f) = ∫_D f k̄ dσ` represented by the kernel `k`.
pub fn functional_value(k: &AnalyticPoly, f: &AnalyticPoly) -> Complex64 {
    bergman_inner(f, k)
}

/// `‖f‖_{A^p}^p` for even `p`, exactly.
pub fn bergman_norm_even_pow(f: &AnalyticPoly, p: u32) -> Result<f64> {
    let b = f.power(half_even(p)?);
    let s = b
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| c.norm_sqr() / (m + 1) as f64)
        .sum();
    finite(s, "Bergman norm")
}

pub fn bergman_norm_even(f: &AnalyticPoly, p: u32) -> Result<f64> {
    Ok(bergman_norm_even_pow(f, p)?.powf(1.0 / p as f64))
}

/// `‖f‖_{H^p}^p` for even `p` (Parseval at `r = 1`).
pub fn hardy_norm_even_pow(f: &AnalyticPoly, p: u32) -> Result<f64> {
    let b = f.power(half_even(p)?);
    let s = b.coeffs().iter().map(|c| c.norm_sqr()).sum();
    finite(s, "Hardy norm")
}

pub fn hardy_norm_even(f: &AnalyticPoly, p: u32) -> Result<f64> {
    Ok(hardy_norm_even_pow(f, p)?.powf(1.0 / p as f64))
}

fn check_grid_bandwidth(f: &AnalyticPoly, grid: &QuadratureGrid) -> Result<()> {
    if f.degree().unwrap_or(0) > grid.bandwidth() {
        return Err(Error::DegenerateGrid(
            "angular sample count too small for the polynomial degree",
        ));
    }
    Ok(())
}

/// `‖f‖_{A^p}` for real `p > 1` by tensor quadrature.
pub fn bergman_norm_general(f: &AnalyticPoly, p: f64, grid: &QuadratureGrid) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent {
            p,
            reason: "Bergman norms need p > 1",
        });
    }
    check_grid_bandwidth(f, grid)?;
    let s = grid.disc_mean(|z| f.eval(z).norm().powf(p));
    Ok(finite(s, "Bergman norm")?.powf(1.0 / p))
}

/// Integral mean `M_p(f, r) = {(1/2π) ∫ |f(re^{iθ})|^p dθ}^{1/p}`.
pub fn integral_mean(f: &AnalyticPoly, p: f64, r: f64, grid: &QuadratureGrid) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidExponent {
            p,
            reason: "integral means need p > 0",
        });
    }
    let s = grid.circle_mean(r, |z| f.eval(z).norm().powf(p));
    Ok(finite(s, "integral mean")?.powf(1.0 / p))
}

/// `‖f‖_{H^p} = sup_r M_p(f, r)` for real `p > 0`.
pub fn hardy_norm_general(
    f: &AnalyticPoly,
    req: &HardyNormRequest,
    grid: &QuadratureGrid,
) -> Result<f64> {
    check_grid_bandwidth(f, grid)?;
    match &req.radius_policy {
        RadiusPolicy::BoundaryOnly => integral_mean(f, req.exponent, 1.0, grid),
        RadiusPolicy::RadialSweep(radii) => {
            if radii.is_empty() {
                return Err(Error::DegenerateGrid("empty radial sweep"));
            }
            radii.iter().try_fold(0.0_f64, |acc, &r| {
                Ok(acc.max(integral_mean(f, req.exponent, r, grid)?))
            })
        }
    }
}

/// `b_m = (1/2π) ∫ |f(e^{iθ})|^p e^{-imθ} dθ` for even `p`, exactly.
pub fn fourier_coeff_abs_power(f: &AnalyticPoly, p: u32, m: i64) -> Result<Complex64> {
    let b = f.power(half_even(p)?);
    Ok(abs_power_coeff(&b, m))
}

/// Fourier coefficient `m` of `|B|²` on the circle, given `B`.
pub(crate) fn abs_power_coeff(b: &AnalyticPoly, m: i64) -> Complex64 {
    let shift = m.unsigned_abs() as usize;
    let c = b.coeffs();
    let s: Complex64 = c
        .iter()
        .skip(shift)
        .zip(c)
        .map(|(hi, lo)| hi * lo.conj())
        .sum();
    if m >= 0 {
        s
    } else {
        s.conj()
    }
}
