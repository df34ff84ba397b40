mod common;

use bergman_core::spaces::{
    bergman_inner, bergman_norm_even, bergman_norm_general, fourier_coeff_abs_power,
    hardy_norm_even, QuadratureGrid,
};
use bergman_core::{AnalyticPoly, Complex64};
use common::{nonzero_poly, poly};
use proptest::prelude::*;

/// Tensor grid exact for `|f|^p` with `deg f ≤ degree`.
fn exact_grid(degree: usize, p: u32) -> QuadratureGrid {
    let d = p as usize * degree;
    QuadratureGrid::with_counts(d + 2, d / 2 + 2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn even_and_general_norms_agree(f in nonzero_poly(33), pi in 0usize..3) {
        let p = [2u32, 4, 6][pi];
        let exact = bergman_norm_even(&f, p).unwrap();
        let quad = bergman_norm_general(&f, p as f64, &exact_grid(f.len(), p)).unwrap();
        prop_assert!((exact - quad).abs() <= 1e-9 * exact);
    }

    #[test]
    fn bergman_below_hardy(f in nonzero_poly(33), pi in 0usize..3) {
        let p = [2u32, 4, 6][pi];
        prop_assert!(bergman_norm_even(&f, p).unwrap() <= hardy_norm_even(&f, p).unwrap() * (1.0 + 1e-14));
    }

    #[test]
    fn norms_are_homogeneous(f in nonzero_poly(17), re in -3.0f64..3.0, im in -3.0f64..3.0, pi in 0usize..3) {
        let p = [2u32, 4, 6][pi];
        let lambda = Complex64::new(re, im);
        prop_assume!(lambda.norm() > 1e-3);
        let g = f.scale(lambda);
        for norm in [bergman_norm_even, hardy_norm_even] {
            let (a, b) = (norm(&g, p).unwrap(), lambda.norm() * norm(&f, p).unwrap());
            prop_assert!((a - b).abs() <= 1e-12 * b);
        }
    }

    #[test]
    fn zeroth_fourier_coefficient_is_hardy_power(f in poly(17), pi in 0usize..3) {
        let p = [2u32, 4, 6][pi];
        let b0 = fourier_coeff_abs_power(&f, p, 0).unwrap();
        let h = hardy_norm_even(&f, p).unwrap().powi(p as i32);
        prop_assert!(b0.im == 0.0);
        prop_assert!((b0.re - h).abs() <= 1e-12 * h.max(1e-300));
    }

    #[test]
    fn fourier_coefficients_are_hermitian(f in poly(17), m in 0i64..40) {
        let (bp, bm) = (
            fourier_coeff_abs_power(&f, 4, m).unwrap(),
            fourier_coeff_abs_power(&f, 4, -m).unwrap(),
        );
        prop_assert_eq!(bm, bp.conj());
    }
}

#[test]
fn monomials_are_orthogonal() {
    let one = Complex64::new(1.0, 0.0);
    for a in 0..24 {
        for b in 0..24 {
            let v = bergman_inner(&AnalyticPoly::monomial(a, one), &AnalyticPoly::monomial(b, one));
            let want = if a == b { 1.0 / (a + 1) as f64 } else { 0.0 };
            assert_eq!(v, Complex64::new(want, 0.0), "a={a} b={b}");
        }
    }
}
