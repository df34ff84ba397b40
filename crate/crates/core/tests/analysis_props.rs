mod common;

use bergman_core::analysis::{
    disc_pairing, disc_pairing_boundary, hl_maximal, lp_g_function, lp_norm_over_circle,
    RadialRule,
};
use bergman_core::spaces::hardy_norm_even;
use bergman_core::Complex64;
use common::poly;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pairing_is_sesquilinear(
        f1 in poly(9), g1 in poly(9), f2 in poly(9), g2 in poly(9), f3 in poly(9),
        a in (-2.0f64..2.0, -2.0f64..2.0), b in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let (a, b) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        let scale = 1.0 + f1.coeff_norm() + g1.coeff_norm() + f2.coeff_norm() + g2.coeff_norm();
        let tol = 1e-12 * scale * scale * (1.0 + f3.coeff_norm()) * 16.0;

        let lhs = disc_pairing(&(&f1.scale(a) + &g1.scale(b)), &f2, &f3);
        let rhs = a.conj() * disc_pairing(&f1, &f2, &f3) + b.conj() * disc_pairing(&g1, &f2, &f3);
        prop_assert!((lhs - rhs).norm() <= tol);

        let lhs = disc_pairing(&f1, &(&f2.scale(a) + &g2.scale(b)), &f3);
        let rhs = a * disc_pairing(&f1, &f2, &f3) + b * disc_pairing(&f1, &g2, &f3);
        prop_assert!((lhs - rhs).norm() <= tol);
    }

    #[test]
    fn cauchy_green_boundary_matches_area(f1 in poly(17), f2 in poly(17), f3 in poly(17)) {
        let area = disc_pairing(&f1, &f2, &f3);
        let boundary = disc_pairing_boundary(&f1, &f2, &f3);
        prop_assert!((area - boundary).norm() <= 1e-10 * area.norm().max(1.0));
    }

    #[test]
    fn g_function_is_homogeneous(f in poly(17), re in -4.0f64..4.0, im in -4.0f64..4.0, theta in 0.0f64..6.3) {
        let lambda = Complex64::new(re, im);
        let rule = RadialRule::default();
        let g = lp_g_function(&f, theta, &rule);
        let gl = lp_g_function(&f.scale(lambda), theta, &rule);
        prop_assert!((gl - lambda.norm() * g).abs() <= 1e-12 * (lambda.norm() * g).max(1e-300));
    }

    #[test]
    fn maximal_function_dominates_center(f in poly(17), theta in 0.0f64..6.3) {
        let rule = RadialRule::default();
        prop_assert!(hl_maximal(&f, theta, &rule) >= f.coeff(0).norm());
    }
}

#[test]
fn maximal_function_dominates_boundary_norm() {
    let rule = RadialRule::gauss(64);
    for seed in 0..8 {
        let f = bergman_core::kernels::random_kernel(10, 900 + seed);
        for p in [2u32, 4] {
            let star = lp_norm_over_circle(|t| hl_maximal(&f, t, &rule), p as f64, 256);
            assert!(star >= hardy_norm_even(&f, p).unwrap() * (1.0 - 1e-12));
        }
    }
}
