//! Analytic polynomials on the disc and trigonometric polynomials on the circle.
//!
//! Every norm, pairing and certificate in this crate reduces to finite
//! coefficient arithmetic on these two types. Storage is dense from index 0.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Largest polynomial degree accepted by the solver and the CLI by default.
pub const DEFAULT_MAX_DEGREE: usize = 512;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A polynomial `f(z) = Σ a_n z^n` with complex coefficients.
///
/// The coefficient vector never ends in an exact zero, so the zero polynomial
/// is the empty vector and `degree` is total.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct AnalyticPoly {
    coeffs: Vec<Complex64>,
}

impl From<Vec<Complex64>> for AnalyticPoly {
    fn from(coeffs: Vec<Complex64>) -> Self {
        Self::new(coeffs)
    }
}

impl From<AnalyticPoly> for Vec<Complex64> {
    fn from(p: AnalyticPoly) -> Self {
        p.coeffs
    }
}

impl AnalyticPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^n`.
    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^n`, zero past the degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients (`degree + 1`, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Coefficientwise complex conjugate, i.e. `conj(f(conj z))`.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Cauchy product of coefficient sequences.
    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ZERO; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (o, &b) in out[i..].iter_mut().zip(&other.coeffs) {
                *o += a * b;
            }
        }
        Self::new(out)
    }

    /// `f^m` by repeated squaring; `f^0 = 1` (also for the zero polynomial).
    pub fn power(&self, m: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        result
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &a)| a * n as f64)
                .collect(),
        )
    }

    /// `K(z) = (1/z) ∫_0^z k`, so that `(zK)' = k`: coefficient `n` is `c_n/(n+1)`.
    pub fn k_transform(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| c / (n + 1) as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at the origin.
    pub fn integral(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(ZERO);
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| c / (n + 1) as f64),
        );
        Self::new(out)
    }

    /// Taylor polynomial `S_n f`.
    pub fn taylor_truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n + 1).copied().collect())
    }

    /// `z^j · f`.
    pub fn shift(&self, j: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ZERO; j];
        out.extend_from_slice(&self.coeffs);
        Self { coeffs: out }
    }

    /// `z ↦ f(e^{-iρ} z)`.
    pub fn rotate(&self, rho: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &a)| a * Complex64::from_polar(1.0, -rho * n as f64))
                .collect(),
        )
    }

    /// Euclidean norm of the coefficient vector (equals the `H^2` norm).
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest coefficient modulus.
    pub fn coeff_max(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Boundary values as a trigonometric polynomial.
    pub fn to_trig(&self) -> TrigPoly {
        TrigPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &a)| (n as i64, a)),
        )
    }
}

impl fmt::Display for AnalyticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        Ok(())
    }
}

impl Add for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn add(self, rhs: Self) -> AnalyticPoly {
        let n = self.len().max(rhs.len());
        AnalyticPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn sub(self, rhs: Self) -> AnalyticPoly {
        let n = self.len().max(rhs.len());
        AnalyticPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn mul(self, rhs: Self) -> AnalyticPoly {
        self.multiply(rhs)
    }
}

impl Neg for &AnalyticPoly {
    type Output = AnalyticPoly;

    fn neg(self) -> AnalyticPoly {
        AnalyticPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// A boundary function `h(e^{iθ}) = Σ_m h_m e^{imθ}` with finitely many frequencies.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    terms: BTreeMap<i64, Complex64>,
}

impl TrigPoly {
    pub fn from_terms<I: IntoIterator<Item = (i64, Complex64)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert(ZERO) += c;
        }
        map.retain(|_, c| *c != ZERO);
        Self { terms: map }
    }

    /// `e^{imθ}`.
    pub fn exponential(m: i64) -> Self {
        Self::from_terms([(m, ONE)])
    }

    pub fn term(&self, m: i64) -> Complex64 {
        self.terms.get(&m).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Largest |m| carrying a nonzero amplitude.
    pub fn bandwidth(&self) -> u64 {
        self.terms.keys().map(|m| m.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&m, &c)| c * Complex64::from_polar(1.0, m as f64 * theta))
            .sum()
    }

    /// Real-valued on the circle iff `h_{-m} = conj(h_m)` for every `m`.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|(&m, &c)| (self.term(-m) - c.conj()).norm() <= tol)
    }

    /// Szegő projection: keep the frequencies `m ≥ 0`.
    pub fn szego_project(&self) -> AnalyticPoly {
        let top = match self.terms.keys().next_back() {
            Some(&m) if m >= 0 => m as usize,
            _ => return AnalyticPoly::zero(),
        };
        AnalyticPoly::new((0..=top).map(|n| self.term(n as i64)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiply_examples() {
        let a = AnalyticPoly::from_real(&[1.0, 1.0]);
        let b = AnalyticPoly::from_real(&[1.0, -1.0]);
        assert_eq!(a.multiply(&b), AnalyticPoly::from_real(&[1.0, 0.0, -1.0]));
        assert_eq!(a.multiply(&AnalyticPoly::one()), a);
        assert_eq!(a.multiply(&a), AnalyticPoly::from_real(&[1.0, 2.0, 1.0]));
        assert!(a.multiply(&AnalyticPoly::zero()).is_zero());
    }

    #[test]
    fn power_examples() {
        let a = AnalyticPoly::from_real(&[1.0, 1.0]);
        assert_eq!(a.power(2), AnalyticPoly::from_real(&[1.0, 2.0, 1.0]));
        let z = AnalyticPoly::monomial(1, ONE);
        assert_eq!(z.power(3), AnalyticPoly::monomial(3, ONE));
        assert_eq!(a.power(0), AnalyticPoly::one());
        assert_eq!(AnalyticPoly::zero().power(0), AnalyticPoly::one());
        assert_eq!(a.power(5).coeffs()[2], c(10.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            AnalyticPoly::monomial(2, ONE).derivative(),
            AnalyticPoly::monomial(1, c(2.0, 0.0))
        );
        assert!(AnalyticPoly::constant(c(3.0, 1.0)).derivative().is_zero());
        assert_eq!(
            AnalyticPoly::from_real(&[1.0, 2.0, 1.0]).derivative(),
            AnalyticPoly::from_real(&[2.0, 2.0])
        );
    }

    #[test]
    fn k_transform_examples() {
        let k = AnalyticPoly::from_real(&[1.0, 2.0]);
        assert_eq!(k.k_transform(), AnalyticPoly::from_real(&[1.0, 1.0]));
        let zk = k.k_transform().shift(1).derivative();
        assert_eq!(zk, k);
        assert_eq!(
            AnalyticPoly::monomial(4, ONE).k_transform(),
            AnalyticPoly::monomial(4, c(0.2, 0.0))
        );
        assert!(AnalyticPoly::zero().k_transform().is_zero());
    }

    #[test]
    fn truncate_examples() {
        let f = AnalyticPoly::from_real(&[1.0, 2.0, 1.0]);
        assert_eq!(f.taylor_truncate(1), AnalyticPoly::from_real(&[1.0, 2.0]));
        assert_eq!(f.taylor_truncate(2), f);
        assert_eq!(f.taylor_truncate(10), f);
        assert!(AnalyticPoly::monomial(1, ONE).taylor_truncate(0).is_zero());
    }

    #[test]
    fn szego_examples() {
        assert!(TrigPoly::exponential(-1).szego_project().is_zero());
        let h = TrigPoly::from_terms([(1, ONE), (-1, ONE)]);
        assert_eq!(h.szego_project(), AnalyticPoly::monomial(1, ONE));
        assert!(h.is_real_valued(0.0));
        let three = TrigPoly::from_terms([(0, c(3.0, 0.0))]);
        assert_eq!(three.szego_project(), AnalyticPoly::constant(c(3.0, 0.0)));
        assert!(!TrigPoly::exponential(2).is_real_valued(1e-12));
    }

    #[test]
    fn zero_is_canonical() {
        let z = AnalyticPoly::new(vec![ZERO, ZERO]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(AnalyticPoly::from_real(&[0.0, 1.0, 0.0]).degree(), Some(1));
    }

    #[test]
    fn integral_and_eval() {
        let f = AnalyticPoly::from_real(&[1.0, 1.0]);
        assert_eq!(f.integral(), AnalyticPoly::from_real(&[0.0, 1.0, 0.5]));
        assert_eq!(f.eval(c(0.0, 1.0)), c(1.0, 1.0));
        let r = f.rotate(std::f64::consts::FRAC_PI_2);
        assert!((r.coeff(1) - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn trig_eval_matches_analytic_eval() {
        let f = AnalyticPoly::new(vec![c(1.0, -0.5), c(0.25, 2.0), c(-1.0, 0.0)]);
        let t = f.to_trig();
        let theta = 0.7_f64;
        let direct = f.eval(Complex64::from_polar(1.0, theta));
        assert!((t.eval(theta) - direct).norm() < 1e-14);
        assert_eq!(t.szego_project(), f);
    }
}
