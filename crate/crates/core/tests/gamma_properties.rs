use std::f64::consts::PI;

use mbkit::gamma::{beta, beta_binet, gamma, log_gamma};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn sin_pi_direct(z: Complex64) -> Complex64 {
    (z * PI).sin()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reflection(x in 0.001f64..0.999, y in -5.0f64..5.0) {
        let z = Complex64::new(x, y);
        let lhs = gamma(z).unwrap() * gamma(Complex64::new(1.0, 0.0) - z).unwrap();
        let rhs = PI / sin_pi_direct(z);
        prop_assert!(rel(lhs, rhs) < 1e-12, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn duplication(x in 0.1f64..10.0, y in -10.0f64..10.0) {
        let a = Complex64::new(x, y);
        let lhs = gamma(a).unwrap() * PI.sqrt();
        let two = Complex64::new(2.0, 0.0);
        let rhs = two.powc(a - 1.0) * gamma(a / 2.0).unwrap() * gamma((a + 1.0) / 2.0).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{a}: {lhs} vs {rhs}");
    }

    #[test]
    fn recurrence(x in 0.1f64..10.0, y in -10.0f64..10.0) {
        let z = Complex64::new(x, y);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-13, "{z}");
    }

    #[test]
    fn conjugate_symmetry(x in -9.5f64..10.0, y in -20.0f64..20.0) {
        prop_assume!(y.abs() > 1e-6);
        let z = Complex64::new(x, y);
        let g = gamma(z).unwrap();
        let gc = gamma(z.conj()).unwrap();
        prop_assert!(rel(gc, g.conj()) < 1e-14);
        let l = log_gamma(z).unwrap();
        prop_assert!((log_gamma(z.conj()).unwrap() - l.conj()).norm() <= 1e-14 * l.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn binet_matches_beta(p in 0.2f64..5.0, q in 0.2f64..5.0) {
        let (p, q) = (Complex64::new(p, 0.0), Complex64::new(q, 0.0));
        let tol = 1e-10;
        let b = beta(p, q).unwrap();
        let binet = beta_binet(p, q, tol).unwrap();
        prop_assert!((b - binet).norm() < tol, "{p} {q}: {b} vs {binet}");
    }
}

#[test]
fn log_gamma_continuous_across_vertical_lines() {
    // no 2πi jumps along Re z = -2.5 as Im z crosses ±small values
    let mut prev = log_gamma(Complex64::new(-2.5, -3.0)).unwrap();
    for k in 1..=600 {
        let z = Complex64::new(-2.5, -3.0 + k as f64 * 0.01);
        let cur = log_gamma(z).unwrap();
        if z.im.abs() > 1e-9 {
            assert!((cur.im - prev.im).abs() < 0.2 || (z.im.abs() < 0.011), "jump at {z}");
        }
        prev = cur;
    }
}
