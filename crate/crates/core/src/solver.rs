//! Extremal problems over the polynomial space `P_n`.
//!
//! We solve the minimal-norm problem
//!
//! ```text
//! minimize ‖f‖_{A^p}^p   over f ∈ P_n   subject to φ(f) = 1
//! ```
//!
//! which is smooth and strictly convex for even `p`. The complex constraint
//! `φ(f) = ⟨f, w⟩ = 1` with `w_j = c_j/(j+1)` cuts out an affine slice of real
//! codimension two; its tangent space is the complex orthogonal complement of
//! `w`, so the reduced gradient is the complex projection `g − w⟨g,w⟩/‖w‖²`.
//! BFGS with backtracking runs on that slice, then the minimizer is
//! normalized to `F = f/‖f‖_{A^p}`, the extremal function of `φ` restricted
//! to `P_n`.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{half_even, Error, Result};
use crate::polycore::{AnalyticPoly, DEFAULT_MAX_DEGREE};
use crate::spaces::{bergman_norm_even, bergman_norm_even_pow, functional_value};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_CERTIFICATE_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

const MIN_STEP: f64 = 1e-16;
const ARMIJO: f64 = 1e-4;
const POLISH_STEPS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalProblem {
    pub p: u32,
    pub kernel: AnalyticPoly,
    pub degree: usize,
    /// Target for the reduced (projected) gradient norm.
    pub tolerance: f64,
    /// Bound on the extremality residuals over `h = z^j`, `j ≤ degree`.
    pub certificate_tolerance: f64,
    pub max_iterations: usize,
}

impl ExtremalProblem {
    pub fn new(p: u32, kernel: AnalyticPoly, degree: usize) -> Self {
        Self {
            p,
            kernel,
            degree,
            tolerance: DEFAULT_TOLERANCE,
            certificate_tolerance: DEFAULT_CERTIFICATE_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn validate(&self) -> Result<()> {
        half_even(self.p)?;
        if self.kernel.taylor_truncate(self.degree).is_zero() {
            return Err(Error::ZeroKernel);
        }
        if self.degree > DEFAULT_MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree: self.degree,
                max: DEFAULT_MAX_DEGREE,
            });
        }
        if !(self.tolerance > 0.0) || !(self.certificate_tolerance > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        Ok(())
    }

    /// Non-fatal remarks about the setup.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(d) = self.kernel.degree() {
            if d > self.degree {
                out.push(format!(
                    "kernel degree {d} exceeds solve degree {}; only S_{} k is seen",
                    self.degree, self.degree
                ));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub objective: f64,
    pub gradient_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSolution {
    pub p: u32,
    pub degree: usize,
    /// The extremal function `F`, normalized so that `‖F‖_{A^p} = 1`.
    pub extremal: AnalyticPoly,
    /// `‖φ|P_n‖ = Re φ(F)`.
    pub phi_norm: f64,
    /// `max_j |extremality residual|` over `h = z^j`, `j ≤ degree`.
    pub residual_max: f64,
    pub iterations: usize,
    pub trace: Vec<TraceEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    MaxIterations,
    LineSearchStalled,
    CertificateRejected,
}

/// A solve that ended without meeting its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonConvergence {
    pub reason: FailureReason,
    pub iterations: usize,
    pub gradient_norm: f64,
    /// Last feasible iterate of the minimal-norm problem (not normalized).
    pub last_iterate: AnalyticPoly,
    pub trace: Vec<TraceEntry>,
}

impl fmt::Display for NonConvergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "solver did not converge ({:?}) after {} iterations, reduced gradient norm {:.3e}",
            self.reason, self.iterations, self.gradient_norm
        )
    }
}

impl std::error::Error for NonConvergence {}

impl From<NonConvergence> for Error {
    fn from(e: NonConvergence) -> Self {
        Error::NonConvergence(Box::new(e))
    }
}

/// Wirtinger gradient `∂/∂ā_m ‖f‖_{A^p}^p` for `m = 0..dim`:
/// `(p/2) ∫_D f^{p/2} conj(z^m f^{p/2-1}) dσ`.
pub fn gradient_norm_p(f: &AnalyticPoly, p: u32, dim: usize) -> Result<Vec<Complex64>> {
    let h = half_even(p)?;
    let b = f.power(h);
    let e = f.power(h - 1);
    Ok(wirtinger_gradient(&b, &e, h, dim))
}

fn wirtinger_gradient(b: &AnalyticPoly, e: &AnalyticPoly, h: u32, dim: usize) -> Vec<Complex64> {
    let (b, e) = (b.coeffs(), e.coeffs());
    (0..dim)
        .map(|j| {
            let s: Complex64 = e
                .iter()
                .zip(b.iter().skip(j))
                .enumerate()
                .map(|(l, (el, bm))| bm * el.conj() / (l + j + 1) as f64)
                .sum();
            s * h as f64
        })
        .collect()
}

/// `∫_D z^j |F|^{p-1} conj(sgn F) dσ = ∫_D z^j F^{p/2-1} conj(F)^{p/2} dσ` for `j ≤ max_j`.
pub fn characteristic_pairings(f: &AnalyticPoly, p: u32, max_j: usize) -> Result<Vec<Complex64>> {
    let h = half_even(p)?;
    let grad = gradient_norm_p(f, p, max_j + 1)?;
    Ok(grad.into_iter().map(|g| g.conj() / h as f64).collect())
}

/// Residuals `∫_D z^j |F|^{p-1} conj(sgn F) dσ − φ(z^j)/phi_norm`, `j = 0..=max_test_degree`.
pub fn extremality_residual(
    extremal: &AnalyticPoly,
    kernel: &AnalyticPoly,
    p: u32,
    phi_norm: f64,
    max_test_degree: usize,
) -> Result<Vec<Complex64>> {
    let norm = bergman_norm_even(extremal, p)?;
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidInput(format!(
            "extremal function must have unit A^p norm, got {norm}"
        )));
    }
    let pairings = characteristic_pairings(extremal, p, max_test_degree)?;
    Ok(pairings
        .into_iter()
        .enumerate()
        .map(|(j, s)| s - kernel.coeff(j).conj() / ((j + 1) as f64 * phi_norm))
        .collect())
}

/// The kernel (normalized so that `‖φ‖ = 1`) whose extremal function is `F`:
/// `c_j = (j+1)·conj(∫_D z^j F^{p/2-1} conj(F)^{p/2} dσ)`.
pub fn kernel_from_extremal(
    extremal: &AnalyticPoly,
    p: u32,
    out_degree: usize,
) -> Result<AnalyticPoly> {
    if extremal.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let norm = bergman_norm_even(extremal, p)?;
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidInput(format!(
            "extremal function must have unit A^p norm, got {norm}"
        )));
    }
    let pairings = characteristic_pairings(extremal, p, out_degree)?;
    Ok(AnalyticPoly::new(
        pairings
            .into_iter()
            .enumerate()
            .map(|(j, s)| s.conj() * (j + 1) as f64)
            .collect(),
    ))
}

/// Solve from the default start `S_n k / φ(S_n k)`.
pub fn solve_extremal(problem: &ExtremalProblem) -> Result<ExtremalSolution> {
    solve_extremal_from(problem, None)
}

/// Solve from a caller-supplied start, projected onto the constraint slice.
pub fn solve_extremal_from(
    problem: &ExtremalProblem,
    start: Option<&AnalyticPoly>,
) -> Result<ExtremalSolution> {
    problem.validate()?;
    let kernel = problem.kernel.taylor_truncate(problem.degree);
    let scale = kernel.coeff_norm();
    let unit_kernel = kernel.scale_real(1.0 / scale);
    let mut slice = Slice::new(&unit_kernel, problem.degree);

    let x0 = match start {
        Some(s) => slice.project_point(&pad(s.coeffs(), slice.dim)),
        None => {
            let phi = functional_value(&unit_kernel, &unit_kernel);
            slice.project_point(&pad(unit_kernel.scale(phi.inv()).coeffs(), slice.dim))
        }
    };

    let h = problem.p / 2;
    let mut minimizer = bfgs(&mut slice, h, x0, problem)?;
    newton_polish(&mut slice, h, &mut minimizer);

    let f = AnalyticPoly::new(minimizer.x);
    let norm = bergman_norm_even(&f, problem.p)?;
    let extremal = f.scale_real(1.0 / norm);
    let value = functional_value(&kernel, &extremal);
    let phi_norm = value.re;
    if !(phi_norm > 0.0) || value.im.abs() > problem.certificate_tolerance * phi_norm.max(1.0) {
        return Err(NonConvergence {
            reason: FailureReason::CertificateRejected,
            iterations: minimizer.iterations,
            gradient_norm: minimizer.gradient_norm,
            last_iterate: f,
            trace: minimizer.trace,
        }
        .into());
    }
    let residual_max = extremality_residual(&extremal, &kernel, problem.p, phi_norm, problem.degree)?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    // Residuals scale like 1/‖φ‖ through the kernel term.
    if residual_max > problem.certificate_tolerance * (1.0 + scale / phi_norm) {
        return Err(NonConvergence {
            reason: FailureReason::CertificateRejected,
            iterations: minimizer.iterations,
            gradient_norm: minimizer.gradient_norm,
            last_iterate: f,
            trace: minimizer.trace,
        }
        .into());
    }
    Ok(ExtremalSolution {
        p: problem.p,
        degree: problem.degree,
        extremal,
        phi_norm,
        residual_max,
        iterations: minimizer.iterations,
        trace: minimizer.trace,
    })
}

/// One certified solve per truncation level: kernel `S_n k` over
/// `P_{max(template.degree, n)}`. A template degree of 0 solves each level
/// over its own `P_n`; a common degree puts all levels in one space.
/// Levels fail independently.
pub fn solve_truncated_family(
    template: &ExtremalProblem,
    degrees: &[usize],
) -> Vec<Result<ExtremalSolution>> {
    degrees
        .par_iter()
        .map(|&n| {
            let mut problem = template.clone();
            problem.kernel = template.kernel.taylor_truncate(n);
            problem.degree = template.degree.max(n);
            solve_extremal(&problem)
        })
        .collect()
}

/// `‖f‖_{A^p}^p` on a raw coefficient vector.
pub fn objective(coeffs: &[Complex64], p: u32) -> Result<f64> {
    bergman_norm_even_pow(&AnalyticPoly::new(coeffs.to_vec()), p)
}

fn pad(coeffs: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = coeffs.iter().take(dim).copied().collect();
    v.resize(dim, Complex64::new(0.0, 0.0));
    v
}

/// Real inner product `Re Σ u_j conj(v_j)` on `C^n ≅ R^{2n}`.
fn rdot(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a.re * b.re + a.im * b.im).sum()
}

fn cdot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// The affine slice `{a ∈ C^{n+1} : ⟨a, w⟩ = 1}`.
struct Slice {
    dim: usize,
    w: Vec<Complex64>,
    w_norm_sqr: f64,
    evaluations: usize,
}

impl Slice {
    fn new(kernel: &AnalyticPoly, degree: usize) -> Self {
        let dim = degree + 1;
        let w: Vec<Complex64> = (0..dim).map(|j| kernel.coeff(j) / (j + 1) as f64).collect();
        let w_norm_sqr = rdot(&w, &w);
        Self {
            dim,
            w,
            w_norm_sqr,
            evaluations: 0,
        }
    }

    fn project_tangent(&self, v: &mut [Complex64]) {
        let c = cdot(v, &self.w) / self.w_norm_sqr;
        for (x, wj) in v.iter_mut().zip(&self.w) {
            *x -= wj * c;
        }
    }

    fn project_point(&self, a: &[Complex64]) -> Vec<Complex64> {
        let c = (Complex64::new(1.0, 0.0) - cdot(a, &self.w)) / self.w_norm_sqr;
        a.iter().zip(&self.w).map(|(x, wj)| x + wj * c).collect()
    }

    /// Objective and real gradient (twice the Wirtinger gradient), projected.
    fn evaluate(&mut self, a: &[Complex64], h: u32) -> (f64, Vec<Complex64>) {
        self.evaluations += 1;
        let f = AnalyticPoly::new(a.to_vec());
        let e = f.power(h - 1);
        let b = e.multiply(&f);
        let value = b
            .coeffs()
            .iter()
            .enumerate()
            .map(|(m, c)| c.norm_sqr() / (m + 1) as f64)
            .sum();
        let mut g: Vec<Complex64> = wirtinger_gradient(&b, &e, h, self.dim)
            .into_iter()
            .map(|x| x * 2.0)
            .collect();
        self.project_tangent(&mut g);
        (value, g)
    }

    /// Projected real Hessian of the objective at `a` applied to the tangent vector `v`.
    fn hessian_apply(&self, a: &[Complex64], h: u32, v: &[Complex64]) -> Vec<Complex64> {
        let f = AnalyticPoly::new(a.to_vec());
        let dir = AnalyticPoly::new(v.to_vec());
        let e = f.power(h - 1);
        let b = e.multiply(&f);
        let db = e.multiply(&dir).scale_real(h as f64);
        let mut out = wirtinger_gradient(&db, &e, h, self.dim);
        if h > 1 {
            let de = f.power(h - 2).multiply(&dir).scale_real((h - 1) as f64);
            for (o, x) in out.iter_mut().zip(wirtinger_gradient(&b, &de, h, self.dim)) {
                *o += x;
            }
        }
        for o in out.iter_mut() {
            *o *= 2.0;
        }
        self.project_tangent(&mut out);
        out
    }
}

struct Minimizer {
    x: Vec<Complex64>,
    iterations: usize,
    gradient_norm: f64,
    trace: Vec<TraceEntry>,
}

/// BFGS on the slice with an inverse-Hessian approximation acting on `R^{2(n+1)}`.
fn bfgs(
    slice: &mut Slice,
    h: u32,
    mut x: Vec<Complex64>,
    problem: &ExtremalProblem,
) -> Result<Minimizer> {
    let n = slice.dim;
    let m = 2 * n;
    let (mut fx, mut g) = slice.evaluate(&x, h);
    let mut gnorm = rdot(&g, &g).sqrt();
    let mut trace = vec![TraceEntry {
        iteration: 0,
        objective: fx,
        gradient_norm: gnorm,
    }];
    if !fx.is_finite() || !gnorm.is_finite() {
        return Err(Error::NonFinite("solver objective"));
    }
    // Dense inverse Hessian; `None` until the first curvature pair sets the scale.
    let mut hinv: Option<Vec<f64>> = None;
    let mut iterations = 0;

    let fail = |reason, iterations, gradient_norm, x: &[Complex64], trace: Vec<TraceEntry>| {
        Error::from(NonConvergence {
            reason,
            iterations,
            gradient_norm,
            last_iterate: AnalyticPoly::new(x.to_vec()),
            trace,
        })
    };

    while gnorm > problem.tolerance {
        if iterations >= problem.max_iterations {
            return Err(fail(FailureReason::MaxIterations, iterations, gnorm, &x, trace));
        }
        iterations += 1;

        let gr = to_real(&g);
        let mut dr = match &hinv {
            Some(hm) => matvec(hm, &gr, m),
            None => gr.clone(),
        };
        dr.iter_mut().for_each(|v| *v = -*v);
        let mut d = from_real(&dr);
        slice.project_tangent(&mut d);
        let mut slope = rdot(&g, &d);
        if !(slope < 0.0) {
            // Lost descent through round-off: restart from steepest descent.
            hinv = None;
            d = g.iter().map(|v| -v).collect();
            slope = -gnorm * gnorm;
        }

        let mut step = if hinv.is_none() {
            (1.0 / gnorm).min(1.0)
        } else {
            1.0
        };
        let (x_new, f_new, g_new) = loop {
            let cand: Vec<Complex64> = x.iter().zip(&d).map(|(a, b)| a + b * step).collect();
            let (fc, gc) = slice.evaluate(&cand, h);
            if fc.is_finite() && fc <= fx + ARMIJO * step * slope {
                break (cand, fc, gc);
            }
            // Sufficient decrease is unmeasurable once the change is at round-off.
            if fc.is_finite() && (fc - fx).abs() <= 4.0 * f64::EPSILON * fx.abs() {
                let gn = rdot(&gc, &gc).sqrt();
                if gn < gnorm {
                    break (cand, fc, gc);
                }
            }
            step *= 0.5;
            if step < MIN_STEP {
                return Err(fail(
                    FailureReason::LineSearchStalled,
                    iterations,
                    gnorm,
                    &x,
                    trace,
                ));
            }
        };

        let s = to_real(
            &x_new
                .iter()
                .zip(&x)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        let y = to_real(&g_new.iter().zip(&g).map(|(a, b)| a - b).collect::<Vec<_>>());
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-300 {
            let hm = hinv.get_or_insert_with(|| {
                let yy: f64 = y.iter().map(|v| v * v).sum();
                let gamma = sy / yy;
                let mut id = vec![0.0; m * m];
                for i in 0..m {
                    id[i * m + i] = gamma;
                }
                id
            });
            bfgs_update(hm, &s, &y, sy, m);
        }

        x = x_new;
        fx = f_new;
        g = g_new;
        gnorm = rdot(&g, &g).sqrt();
        trace.push(TraceEntry {
            iteration: iterations,
            objective: fx,
            gradient_norm: gnorm,
        });
        if !gnorm.is_finite() {
            return Err(Error::NonFinite("solver gradient"));
        }
    }

    Ok(Minimizer {
        x,
        iterations,
        gradient_norm: gnorm,
        trace,
    })
}

/// Projected Newton steps after BFGS has met the tolerance; the reduced
/// Hessian system is solved by conjugate gradients on the tangent space.
/// Steps are kept only while they reduce the gradient norm.
fn newton_polish(slice: &mut Slice, h: u32, state: &mut Minimizer) {
    for _ in 0..POLISH_STEPS {
        let (_, g) = slice.evaluate(&state.x, h);
        let gnorm = rdot(&g, &g).sqrt();
        if gnorm == 0.0 {
            break;
        }
        let rhs: Vec<Complex64> = g.iter().map(|v| -v).collect();
        let d = conjugate_gradient(|v| slice.hessian_apply(&state.x, h, v), &rhs, 4 * slice.dim);
        let cand: Vec<Complex64> = state.x.iter().zip(&d).map(|(a, b)| a + b).collect();
        let cand = slice.project_point(&cand);
        let (fc, gc) = slice.evaluate(&cand, h);
        let gc_norm = rdot(&gc, &gc).sqrt();
        if !(gc_norm < gnorm) || !fc.is_finite() {
            break;
        }
        state.x = cand;
        state.gradient_norm = gc_norm;
        let iteration = state.trace.last().map_or(0, |t| t.iteration) + 1;
        state.iterations = iteration;
        state.trace.push(TraceEntry {
            iteration,
            objective: fc,
            gradient_norm: gc_norm,
        });
    }
}

fn conjugate_gradient<A: FnMut(&[Complex64]) -> Vec<Complex64>>(
    mut apply: A,
    rhs: &[Complex64],
    max_iter: usize,
) -> Vec<Complex64> {
    let mut x = vec![Complex64::new(0.0, 0.0); rhs.len()];
    let mut r = rhs.to_vec();
    let mut d = r.clone();
    let mut rr = rdot(&r, &r);
    let stop = rr * 1e-32;
    for _ in 0..max_iter {
        if rr <= stop {
            break;
        }
        let ad = apply(&d);
        let dad = rdot(&d, &ad);
        if !(dad > 0.0) {
            break;
        }
        let alpha = rr / dad;
        for i in 0..x.len() {
            x[i] += d[i] * alpha;
            r[i] -= ad[i] * alpha;
        }
        let rr_new = rdot(&r, &r);
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..d.len() {
            d[i] = r[i] + d[i] * beta;
        }
    }
    x
}

fn to_real(v: &[Complex64]) -> Vec<f64> {
    v.iter().flat_map(|c| [c.re, c.im]).collect()
}

fn from_real(v: &[f64]) -> Vec<Complex64> {
    v.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

fn matvec(a: &[f64], x: &[f64], m: usize) -> Vec<f64> {
    a.chunks_exact(m)
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

/// `H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ`.
fn bfgs_update(hm: &mut [f64], s: &[f64], y: &[f64], sy: f64, m: usize) {
    let rho = 1.0 / sy;
    let hy = matvec(hm, y, m);
    let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
    let coef = rho * rho * yhy + rho;
    for i in 0..m {
        for j in 0..m {
            hm[i * m + j] += coef * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::bergman_norm_even;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn p2_is_normalized_kernel() {
        let k = AnalyticPoly::new(vec![c(1.0, 0.5), c(-0.3, 0.2), c(0.7, -1.0)]);
        let sol = solve_extremal(&ExtremalProblem::new(2, k.clone(), 4)).unwrap();
        let expected = k.scale_real(1.0 / bergman_norm_even(&k, 2).unwrap());
        for j in 0..5 {
            assert!((sol.extremal.coeff(j) - expected.coeff(j)).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_kernel_gives_constant() {
        for p in [2, 4, 6] {
            let sol = solve_extremal(&ExtremalProblem::new(p, AnalyticPoly::one(), 6)).unwrap();
            assert!((sol.extremal.coeff(0) - c(1.0, 0.0)).norm() < 1e-9, "p={p}");
            assert!(sol.extremal.coeffs()[1..].iter().all(|a| a.norm() < 1e-9));
            assert!((sol.phi_norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn monomial_kernel_p4() {
        let k = AnalyticPoly::monomial(1, c(1.0, 0.0));
        let sol = solve_extremal(&ExtremalProblem::new(4, k, 3)).unwrap();
        let target = 3.0_f64.powf(0.25);
        assert!((sol.extremal.coeff(1) - c(target, 0.0)).norm() < 1e-8);
        assert!((sol.phi_norm - target / 2.0).abs() < 1e-10);
        assert!((bergman_norm_even(&sol.extremal, 4).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gradient_examples() {
        let g = gradient_norm_p(&AnalyticPoly::one(), 4, 1).unwrap();
        assert_eq!(g[0], c(2.0, 0.0));
        let z = AnalyticPoly::monomial(1, c(1.0, 0.0));
        let g = gradient_norm_p(&z, 2, 2).unwrap();
        assert_eq!(g[1], c(0.5, 0.0));
        assert_eq!(g[0], c(0.0, 0.0));
        assert!(gradient_norm_p(&z, 5, 2).is_err());
    }

    #[test]
    fn residual_examples() {
        let one = AnalyticPoly::one();
        let r = extremality_residual(&one, &one, 4, 1.0, 5).unwrap();
        assert!(r.iter().all(|x| x.norm() == 0.0));
        let z = AnalyticPoly::monomial(1, c(1.0, 0.0));
        let phi_norm = 0.75;
        let r = extremality_residual(&one, &z, 4, phi_norm, 3).unwrap();
        let phi_z = functional_value(&z, &z);
        assert!((r[1] + phi_z / phi_norm).norm() < 1e-15);
        assert!(r[1].norm() > 0.0);
        assert!(extremality_residual(&z.scale_real(2.0), &z, 4, 1.0, 2).is_err());
    }

    #[test]
    fn kernel_recovery_examples() {
        let k = kernel_from_extremal(&AnalyticPoly::one(), 4, 4).unwrap();
        assert!(k.coeff(0).re > 0.0);
        assert!(k.coeffs()[1..].iter().all(|c| c.norm() < 1e-15));
        let f = AnalyticPoly::monomial(1, c(3.0_f64.powf(0.25), 0.0));
        let k = kernel_from_extremal(&f, 4, 5).unwrap();
        // c_1 = 2·conj(3^{3/4}/3)
        assert!((k.coeff(1) - c(2.0 * 3.0_f64.powf(-0.25), 0.0)).norm() < 1e-14);
        for j in [0, 2, 3, 4, 5] {
            assert!(k.coeff(j).norm() < 1e-15);
        }
        assert!(matches!(
            kernel_from_extremal(&AnalyticPoly::zero(), 4, 2),
            Err(Error::ZeroFunction)
        ));
    }

    #[test]
    fn rejects_bad_problems() {
        assert!(matches!(
            solve_extremal(&ExtremalProblem::new(4, AnalyticPoly::zero(), 3)),
            Err(Error::ZeroKernel)
        ));
        let k = AnalyticPoly::monomial(5, c(1.0, 0.0));
        assert!(matches!(
            solve_extremal(&ExtremalProblem::new(4, k, 3)),
            Err(Error::ZeroKernel)
        ));
        assert!(matches!(
            solve_extremal(&ExtremalProblem::new(3, AnalyticPoly::one(), 3)),
            Err(Error::OddExponent { p: 3 })
        ));
    }

    #[test]
    fn non_convergence_carries_trace() {
        let k = AnalyticPoly::from_real(&[1.0, 0.5, -0.25, 0.3]);
        let problem = ExtremalProblem::new(4, k, 8).with_max_iterations(2);
        match solve_extremal(&problem) {
            Err(Error::NonConvergence(nc)) => {
                assert_eq!(nc.reason, FailureReason::MaxIterations);
                assert_eq!(nc.trace.len(), 3);
                assert!(!nc.last_iterate.is_zero());
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn truncated_family_p2_closed_form() {
        let k = AnalyticPoly::from_real(&[1.0, 0.5, 0.25, 0.125, 0.0625]);
        let template = ExtremalProblem::new(2, k.clone(), 0);
        let sols = solve_truncated_family(&template, &[1, 2, 4]);
        for (n, sol) in [1, 2, 4].into_iter().zip(sols) {
            let sol = sol.unwrap();
            let sk = k.taylor_truncate(n);
            let expected = sk.scale_real(1.0 / bergman_norm_even(&sk, 2).unwrap());
            assert!((&sol.extremal - &expected).coeff_max() < 1e-12);
        }
    }
}
