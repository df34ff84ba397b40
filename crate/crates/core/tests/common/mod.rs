#![allow(dead_code)]

use bergman_core::{AnalyticPoly, Complex64};
use proptest::prelude::*;

/// Polynomials with coefficients in the unit square, degree `< max_len`.
pub fn poly(max_len: usize) -> impl Strategy<Value = AnalyticPoly> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..max_len).prop_map(|v| {
        AnalyticPoly::new(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    })
}

/// Like [`poly`] but with a nonzero constant term bounded away from 0.
pub fn nonzero_poly(max_len: usize) -> impl Strategy<Value = AnalyticPoly> {
    (poly(max_len), 0.5f64..1.0).prop_map(|(f, c0)| {
        let mut a = f.into_coeffs();
        a[0] = Complex64::new(c0, a[0].im);
        AnalyticPoly::new(a)
    })
}

pub fn max_coeff_diff(f: &AnalyticPoly, g: &AnalyticPoly) -> f64 {
    (f - g).coeff_max()
}
