//! Brute-force reference for small extremal problems.
//!
//! Minimizes `‖f‖_{A^p}^p` over `P_n` (n ≤ 3) subject to `φ(f) = 1` with a
//! multi-start Nelder–Mead search. The objective is evaluated by tensor
//! quadrature of `|f|^p` (exact for these degrees), so nothing here shares a
//! code path with the coefficient-based solver.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{half_even, Error, Result};
use crate::polycore::AnalyticPoly;
use crate::spaces::QuadratureGrid;

pub const MAX_ORACLE_DEGREE: usize = 3;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_evaluations: usize,
    /// Restarts of the simplex around the incumbent after each convergence.
    pub restarts: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            starts: 24,
            seed: 0x5eed,
            max_evaluations: 40_000,
            restarts: 8,
        }
    }
}

/// Extremal function over `P_degree`, normalized to unit `A^p` norm.
pub fn brute_force_extremal(
    kernel: &AnalyticPoly,
    p: u32,
    degree: usize,
    config: &OracleConfig,
) -> Result<AnalyticPoly> {
    half_even(p)?;
    if degree > MAX_ORACLE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_ORACLE_DEGREE,
        });
    }
    let w: Vec<Complex64> = (0..=degree)
        .map(|j| kernel.coeff(j) / (j + 1) as f64)
        .collect();
    let pivot = (0..=degree)
        .max_by(|&a, &b| w[a].norm().total_cmp(&w[b].norm()))
        .expect("nonempty");
    if w[pivot].norm() == 0.0 {
        return Err(Error::ZeroKernel);
    }
    // ∫|f|^p dσ: trigonometric degree p·n in θ, polynomial degree p·n/2 in r².
    let grid = QuadratureGrid::with_counts(p as usize * degree + 2, 16)?;
    let lift = |x: &[f64]| -> AnalyticPoly {
        let mut a = vec![Complex64::new(0.0, 0.0); degree + 1];
        let mut it = x.chunks_exact(2);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, aj) in a.iter_mut().enumerate() {
            if j == pivot {
                continue;
            }
            let c = it.next().expect("dimension");
            *aj = Complex64::new(c[0], c[1]);
            acc += *aj * w[j].conj();
        }
        a[pivot] = (Complex64::new(1.0, 0.0) - acc) / w[pivot].conj();
        AnalyticPoly::new(a)
    };
    let objective = |x: &[f64]| -> f64 {
        let f = lift(x);
        grid.disc_mean(|z| f.eval(z).norm().powi(p as i32))
    };

    let dim = 2 * degree;
    if dim == 0 {
        return normalize(&lift(&[]), p, &grid);
    }
    // Feasible points have coefficients of order 1/|w_pivot|.
    let scale = 1.0 / w[pivot].norm();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..config.starts {
        let x0: Vec<f64> = (0..dim).map(|_| rng.gen_range(-scale..scale)).collect();
        let (mut x, mut fx) = nelder_mead(&objective, &x0, 0.5 * scale, config.max_evaluations);
        let mut step = 0.1 * scale;
        for _ in 0..config.restarts {
            let (xr, fr) = nelder_mead(&objective, &x, step, config.max_evaluations);
            if fr <= fx {
                x = xr;
                fx = fr;
            }
            step *= 0.1;
        }
        if best.as_ref().is_none_or(|(_, fb)| fx < *fb) {
            best = Some((x, fx));
        }
    }
    let (x, _) = best.expect("at least one start");
    normalize(&lift(&x), p, &grid)
}

fn normalize(f: &AnalyticPoly, p: u32, grid: &QuadratureGrid) -> Result<AnalyticPoly> {
    let norm = grid
        .disc_mean(|z| f.eval(z).norm().powi(p as i32))
        .powf(1.0 / p as f64);
    Ok(f.scale_real(1.0 / norm))
}

/// Plain Nelder–Mead with standard coefficients; returns the best vertex.
fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    step: f64,
    max_evaluations: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = n + 1;
    while evals < max_evaluations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (fbest, fworst) = (simplex[0].1, simplex[n].1);
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if (fworst - fbest) <= 1e-16 * fbest.abs() && size < 1e-12 {
            break;
        }
        if size < 1e-14 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            evals += 1;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let x = along(-0.5);
                let fx = f(&x);
                (x, fx)
            } else {
                let x = along(0.5);
                let fx = f(&x);
                (x, fx)
            };
            evals += 1;
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex[1..].iter_mut() {
                    for (xi, bi) in v.0.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    v.1 = f(&v.0);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}
