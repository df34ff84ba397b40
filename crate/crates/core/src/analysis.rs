//! Littlewood–Paley g-function, radial maximal function and disc pairings.
//!
//! For polynomials every disc integral here is proper, so principal values
//! reduce to ordinary integrals and the pairings are exact coefficient sums.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::AnalyticPoly;
use crate::report::{SeriesPoint, VerificationReport};
use crate::spaces::{bergman_inner, gauss_legendre, hardy_norm_general, HardyNormRequest, QuadratureGrid};

pub const DEFAULT_G_NODES: usize = 128;
pub const DEFAULT_MAXIMAL_POINTS: usize = 512;

/// Radii in `[0, 1]` with quadrature weights for `dr`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialRule {
    nodes: Vec<(f64, f64)>,
}

impl RadialRule {
    /// Gauss–Legendre on `(0,1)`; exact for polynomial integrands of degree `< 2n`.
    pub fn gauss(n: usize) -> Self {
        Self {
            nodes: gauss_legendre(n)
                .into_iter()
                .map(|(x, w)| ((x + 1.0) / 2.0, w / 2.0))
                .collect(),
        }
    }

    /// `n` equispaced interior radii plus both endpoints (trapezoid weights).
    pub fn uniform(n: usize) -> Self {
        let h = 1.0 / (n + 1) as f64;
        let nodes = (0..=n + 1)
            .map(|i| {
                let w = if i == 0 || i == n + 1 { h / 2.0 } else { h };
                (i as f64 * h, w)
            })
            .collect();
        Self { nodes }
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }
}

impl Default for RadialRule {
    fn default() -> Self {
        Self::gauss(DEFAULT_G_NODES)
    }
}

/// `|f(re^{iθ})|` sampled along one radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub theta: f64,
    pub samples: Vec<(f64, f64)>,
}

impl RadialProfile {
    pub fn new(f: &AnalyticPoly, theta: f64, radii: &[f64]) -> Result<Self> {
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput("radii must be strictly increasing".into()));
        }
        let samples = radii
            .iter()
            .map(|&r| (r, f.eval(Complex64::from_polar(r, theta)).norm()))
            .collect();
        Ok(Self { theta, samples })
    }

    pub fn max(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }
}

/// `g(θ, f) = {∫_0^1 (1−r)|f′(re^{iθ})|² dr}^{1/2}`.
pub fn lp_g_function(f: &AnalyticPoly, theta: f64, rule: &RadialRule) -> f64 {
    let df = f.derivative();
    let dir = Complex64::from_polar(1.0, theta);
    rule.nodes
        .iter()
        .map(|&(r, w)| w * (1.0 - r) * df.eval(dir * r).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `f*(e^{iθ}) = sup_r |f(re^{iθ})|` over the rule's radii, `r = 0` and `r = 1`.
pub fn hl_maximal(f: &AnalyticPoly, theta: f64, rule: &RadialRule) -> f64 {
    let dir = Complex64::from_polar(1.0, theta);
    rule.nodes
        .iter()
        .map(|&(r, _)| r)
        .chain([0.0, 1.0])
        .map(|r| f.eval(dir * r).norm())
        .fold(0.0, f64::max)
}

/// `{(1/2π) ∫ g(θ)^p dθ}^{1/p}` over `samples` angles.
pub fn lp_norm_over_circle<G: Fn(f64) -> f64>(g: G, p: f64, samples: usize) -> f64 {
    let s: f64 = (0..samples)
        .map(|j| g(TAU * j as f64 / samples as f64).powf(p))
        .sum();
    (s / samples as f64).powf(1.0 / p)
}

/// `h(z) = ∫_0^z f₁ f₂′ dζ`.
pub fn antiderivative_product(f1: &AnalyticPoly, f2: &AnalyticPoly) -> AnalyticPoly {
    f1.multiply(&f2.derivative()).integral()
}

/// `∫_D conj(f₁) f₂ f₃′ dσ`.
pub fn disc_pairing(f1: &AnalyticPoly, f2: &AnalyticPoly, f3: &AnalyticPoly) -> Complex64 {
    bergman_inner(&f2.multiply(&f3.derivative()), f1)
}

/// Boundary form of [`disc_pairing`] via Cauchy–Green:
/// `(1/2π) ∫ conj(f₁(e^{iθ})) h(e^{iθ}) e^{−iθ} dθ` with `h = antiderivative_product(f₂, f₃)`,
/// evaluated by sampling the circle.
pub fn disc_pairing_boundary(
    f1: &AnalyticPoly,
    f2: &AnalyticPoly,
    f3: &AnalyticPoly,
) -> Complex64 {
    let h = antiderivative_product(f2, f3);
    let samples = 2 * (h.len() + f1.len()) + 8;
    let total: Complex64 = (0..samples)
        .map(|j| {
            let w = Complex64::from_polar(1.0, TAU * j as f64 / samples as f64);
            f1.eval(w).conj() * h.eval(w) * w.conj()
        })
        .sum();
    total / samples as f64
}

/// `disc_pairing(f₁, f₂, S_n f₃) → disc_pairing(f₁, f₂, f₃)`; the residual at
/// the largest truncation is checked against `tolerance` (relative to max(1, |limit|)).
pub fn check_klb_truncation(
    f1: &AnalyticPoly,
    f2: &AnalyticPoly,
    f3: &AnalyticPoly,
    truncations: &[usize],
    tolerance: f64,
) -> Result<VerificationReport> {
    let last = *truncations
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidInput("no truncation levels".into()))?;
    let limit = disc_pairing(f1, f2, f3);
    let scale = limit.norm().max(1.0);
    let series = truncations
        .iter()
        .map(|&n| SeriesPoint {
            x: n as f64,
            y: (disc_pairing(f1, f2, &f3.taylor_truncate(n)) - limit).norm() / scale,
        })
        .collect();
    let at_last = disc_pairing(f1, f2, &f3.taylor_truncate(last));
    let mut report = VerificationReport::equality("klb_truncation", at_last, limit, scale, tolerance);
    report.context.degree = Some(last);
    report.series = series;
    Ok(report)
}

/// Ratio `‖h‖_{H^p} / (‖f₁‖_{H^{p₁}} ‖f₂‖_{H^{p₂}})` with `1/p = 1/p₁ + 1/p₂`.
pub fn check_hardy_mult_int(
    f1: &AnalyticPoly,
    f2: &AnalyticPoly,
    p1: f64,
    p2: f64,
    grid: &QuadratureGrid,
) -> Result<VerificationReport> {
    if !(p1 > 1.0) || !(p2 > 1.0) {
        return Err(Error::InvalidExponent {
            p: p1.min(p2),
            reason: "p1 and p2 must exceed 1",
        });
    }
    let p = 1.0 / (1.0 / p1 + 1.0 / p2);
    if !(p > 1.0) {
        return Err(Error::InvalidExponent {
            p,
            reason: "1/p = 1/p1 + 1/p2 must give p > 1",
        });
    }
    let h = antiderivative_product(f1, f2);
    let ratio = if h.is_zero() {
        0.0
    } else {
        let norm = |f: &AnalyticPoly, e: f64| hardy_norm_general(f, &HardyNormRequest::boundary(e), grid);
        norm(&h, p)? / (norm(f1, p1)? * norm(f2, p2)?)
    };
    Ok(VerificationReport::informational("hardy_mult_int", ratio)
        .with_note(format!("p = {p}, p1 = {p1}, p2 = {p2}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::hardy_norm_even;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z() -> AnalyticPoly {
        AnalyticPoly::monomial(1, c(1.0, 0.0))
    }

    #[test]
    fn g_function_examples() {
        let rule = RadialRule::default();
        for theta in [0.0, 1.0, 4.0] {
            assert!((lp_g_function(&z(), theta, &rule) - 0.5_f64.sqrt()).abs() < 1e-14);
            assert!((lp_g_function(&z().power(2), theta, &rule) - (1.0_f64 / 3.0).sqrt()).abs() < 1e-14);
            assert_eq!(lp_g_function(&AnalyticPoly::constant(c(2.0, 1.0)), theta, &rule), 0.0);
        }
    }

    #[test]
    fn maximal_examples() {
        let rule = RadialRule::uniform(DEFAULT_MAXIMAL_POINTS);
        assert_eq!(hl_maximal(&z(), 0.3, &rule), 1.0);
        let f = AnalyticPoly::from_real(&[1.0, 0.5, 0.25]);
        assert_eq!(hl_maximal(&f, 0.0, &rule), f.eval(c(1.0, 0.0)).norm());
        let g = AnalyticPoly::from_real(&[1.0, -1.0]);
        assert_eq!(hl_maximal(&g, 0.0, &rule), 1.0);
    }

    #[test]
    fn antiderivative_examples() {
        let one = AnalyticPoly::one();
        assert_eq!(antiderivative_product(&one, &z()), z());
        assert_eq!(
            antiderivative_product(&z(), &z()),
            AnalyticPoly::monomial(2, c(0.5, 0.0))
        );
        let opz = AnalyticPoly::from_real(&[1.0, 1.0]);
        assert_eq!(
            antiderivative_product(&opz, &opz),
            AnalyticPoly::from_real(&[0.0, 1.0, 0.5])
        );
    }

    #[test]
    fn pairing_examples() {
        let one = AnalyticPoly::one();
        assert_eq!(disc_pairing(&z(), &one, &z()), c(0.0, 0.0));
        assert_eq!(disc_pairing(&one, &one, &z()), c(1.0, 0.0));
        let v = disc_pairing(&z().power(2), &z(), &z().power(2));
        assert!((v - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_route_matches() {
        let f1 = AnalyticPoly::new(vec![c(0.2, 1.0), c(-1.0, 0.4), c(0.3, 0.3)]);
        let f2 = AnalyticPoly::new(vec![c(1.0, 0.0), c(0.5, -0.5)]);
        let f3 = AnalyticPoly::new(vec![c(0.0, 0.0), c(1.0, 1.0), c(0.25, 0.0), c(-0.5, 2.0)]);
        let d = disc_pairing(&f1, &f2, &f3);
        let b = disc_pairing_boundary(&f1, &f2, &f3);
        assert!((d - b).norm() < 1e-14, "{d} vs {b}");
    }

    #[test]
    fn klb_truncation_examples() {
        let f1 = AnalyticPoly::from_real(&[1.0, 0.5]);
        let f2 = AnalyticPoly::from_real(&[0.3, 1.0]);
        let f3 = AnalyticPoly::from_real(&[0.0, 1.0, -1.0, 0.5]);
        let r = check_klb_truncation(&f1, &f2, &f3, &[0, 1, 3, 5], 0.0).unwrap();
        assert!(r.passed());
        assert_eq!(r.residual, 0.0);
        assert_eq!(disc_pairing(&f1, &f2, &f3.taylor_truncate(0)), c(0.0, 0.0));
    }

    #[test]
    fn mult_int_examples() {
        let grid = QuadratureGrid::for_degree(16);
        let r = check_hardy_mult_int(&AnalyticPoly::zero(), &z(), 4.0, 4.0, &grid).unwrap();
        assert_eq!(r.lhs.re, 0.0);
        let r = check_hardy_mult_int(&AnalyticPoly::one(), &z(), 4.0, 4.0, &grid).unwrap();
        assert!((r.lhs.re - 1.0).abs() < 1e-14);
        assert!(check_hardy_mult_int(&z(), &z(), 1.5, 1.5, &grid).is_err());
        assert!(check_hardy_mult_int(&z(), &z(), 1.0, 4.0, &grid).is_err());
    }

    #[test]
    fn maximal_dominates_boundary() {
        let f = AnalyticPoly::new(vec![c(0.3, 0.1), c(-1.0, 0.5), c(0.2, 0.9), c(0.4, -0.3)]);
        let rule = RadialRule::uniform(DEFAULT_MAXIMAL_POINTS);
        for p in [2u32, 4] {
            let star = lp_norm_over_circle(|t| hl_maximal(&f, t, &rule), p as f64, 512);
            assert!(star >= hardy_norm_even(&f, p).unwrap() - 1e-12);
        }
    }

    #[test]
    fn profile_validation() {
        assert!(RadialProfile::new(&z(), 0.0, &[0.5, 0.2]).is_err());
        let prof = RadialProfile::new(&z(), 0.0, &[0.1, 0.5, 0.9]).unwrap();
        assert!((prof.max() - 0.9).abs() < 1e-15);
    }
}
