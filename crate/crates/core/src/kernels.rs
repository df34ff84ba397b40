//! Kernel recipes: explicit coefficients, power decay, truncations and
//! seeded random polynomials.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::AnalyticPoly;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum KernelSpec {
    /// Explicit `(re, im)` coefficient pairs, `c_0` first.
    Coeffs { values: Vec<(f64, f64)> },
    /// `c_n = (n+1)^{-alpha}` for `n = 0..count`.
    PowerDecay { alpha: f64, count: usize },
    /// `S_n` of another kernel.
    Truncate { inner: Box<KernelSpec>, n: usize },
    /// Coefficients with real and imaginary parts uniform in `[-1, 1]`.
    Random { degree: usize, seed: u64 },
}

impl KernelSpec {
    pub fn build(&self) -> Result<AnalyticPoly> {
        let k = match self {
            KernelSpec::Coeffs { values } => AnalyticPoly::new(
                values
                    .iter()
                    .map(|&(re, im)| Complex64::new(re, im))
                    .collect(),
            ),
            KernelSpec::PowerDecay { alpha, count } => {
                if !alpha.is_finite() {
                    return Err(Error::InvalidInput("power_decay alpha must be finite".into()));
                }
                power_decay(*alpha, *count)
            }
            KernelSpec::Truncate { inner, n } => inner.build()?.taylor_truncate(*n),
            KernelSpec::Random { degree, seed } => random_kernel(*degree, *seed),
        };
        if k.is_zero() {
            return Err(Error::ZeroKernel);
        }
        if k.coeffs().iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("kernel coefficients must be finite".into()));
        }
        Ok(k)
    }

    /// Short identifier used in report rows.
    pub fn id(&self) -> String {
        match self {
            KernelSpec::Coeffs { values } => {
                let parts: Vec<String> = values
                    .iter()
                    .map(|(re, im)| {
                        if *im == 0.0 {
                            format!("{re}")
                        } else {
                            format!("{re}{im:+}i")
                        }
                    })
                    .collect();
                format!("coeffs[{}]", parts.join(","))
            }
            KernelSpec::PowerDecay { alpha, count } => format!("power_decay(a={alpha},n={count})"),
            KernelSpec::Truncate { inner, n } => format!("S_{n}({})", inner.id()),
            KernelSpec::Random { degree, seed } => format!("random(deg={degree},seed={seed})"),
        }
    }
}

pub fn power_decay(alpha: f64, count: usize) -> AnalyticPoly {
    AnalyticPoly::new(
        (0..count)
            .map(|n| Complex64::new((n as f64 + 1.0).powf(-alpha), 0.0))
            .collect(),
    )
}

pub fn random_kernel(degree: usize, seed: u64) -> AnalyticPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    AnalyticPoly::new(
        (0..=degree)
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect(),
    )
}

/// Explicit kernels, power decay with `alpha ∈ {1.6, 2, 3}` (`count` terms)
/// and two seeded random kernels of degree 8.
pub fn standard_family(count: usize, seed: u64) -> Vec<KernelSpec> {
    let coeffs = |v: &[f64]| KernelSpec::Coeffs {
        values: v.iter().map(|&x| (x, 0.0)).collect(),
    };
    vec![
        coeffs(&[1.0]),
        coeffs(&[0.0, 1.0]),
        coeffs(&[1.0, 1.0]),
        KernelSpec::Coeffs {
            values: vec![(1.0, 0.0), (0.5, 0.25), (-0.3, 0.0), (0.2, -0.1), (0.1, 0.0)],
        },
        KernelSpec::PowerDecay { alpha: 1.6, count },
        KernelSpec::PowerDecay { alpha: 2.0, count },
        KernelSpec::PowerDecay { alpha: 3.0, count },
        KernelSpec::Random { degree: 8, seed },
        KernelSpec::Random {
            degree: 8,
            seed: seed.wrapping_add(1),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_decay_values() {
        let k = KernelSpec::PowerDecay { alpha: 2.0, count: 4 }.build().unwrap();
        assert_eq!(k.len(), 4);
        assert_eq!(k.coeff(0).re, 1.0);
        assert_eq!(k.coeff(3).re, 1.0 / 16.0);
    }

    #[test]
    fn truncate_and_zero() {
        let inner = KernelSpec::PowerDecay { alpha: 1.0, count: 10 };
        let k = KernelSpec::Truncate {
            inner: Box::new(inner),
            n: 2,
        }
        .build()
        .unwrap();
        assert_eq!(k.degree(), Some(2));
        let zero = KernelSpec::Coeffs {
            values: vec![(0.0, 0.0)],
        };
        assert!(matches!(zero.build(), Err(Error::ZeroKernel)));
        let z = KernelSpec::Truncate {
            inner: Box::new(KernelSpec::Coeffs {
                values: vec![(0.0, 0.0), (1.0, 0.0)],
            }),
            n: 0,
        };
        assert!(z.build().is_err());
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(random_kernel(8, 7), random_kernel(8, 7));
        assert_ne!(random_kernel(8, 7), random_kernel(8, 8));
    }

    #[test]
    fn json_grammar() {
        let spec: KernelSpec =
            serde_json::from_str(r#"{"type":"coeffs","values":[[1,0],[1,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap(), AnalyticPoly::from_real(&[1.0, 1.0]));
        let spec: KernelSpec = serde_json::from_str(
            r#"{"type":"truncate","n":3,"inner":{"type":"power_decay","alpha":2,"count":64}}"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().degree(), Some(3));
    }
}
