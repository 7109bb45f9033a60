use std::f64::consts::PI;

use mbkit::oracles::*;
use mbkit::quad::double_exponential::Abscissa;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn two_routes_to_k_agree() {
    for lambda in [0.0, 0.3, 0.5, 1.7] {
        for x in [0.5, 1.0, 2.0] {
            let a = cosh_transform_k(lambda, x).unwrap();
            let b = 2.0 * bessel_k(lambda, 2.0 * x).unwrap();
            assert!((a - b).abs() <= 1e-9 * b, "lambda {lambda}, x {x}: {a} vs {b}");
        }
    }
}

#[test]
fn k_from_modified_bessel_i() {
    // K_p = π (I_{-p} - I_p) / (2 sin pπ) at non-integer p
    for p in [0.25, 0.5, 1.3, 2.7] {
        for z in [0.4, 2.0, 5.0] {
            let k = bessel_k(p, z).unwrap();
            let via_i = PI * (bessel_i(-p, z).unwrap() - bessel_i(p, z).unwrap()) / (2.0 * (p * PI).sin());
            assert!((k - via_i).abs() <= 1e-9 * k, "p {p}, z {z}: {k} vs {via_i}");
        }
    }
}

#[test]
fn refinement_is_stable() {
    let f = |n: Abscissa| c((-n.x - 0.7 / n.x).exp() * n.x.powf(-0.6));
    for tol in [1e-8, 1e-10] {
        let coarse = oracle_integrate(&RealLineIntegralSpec { integrand: &f, domain: OracleDomain::HalfLine, tol }).unwrap();
        let fine =
            oracle_integrate(&RealLineIntegralSpec { integrand: &f, domain: OracleDomain::HalfLine, tol: tol / 10.0 })
                .unwrap();
        assert!((coarse - fine).norm() < tol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k_is_even_in_order(p in -3.0f64..3.0, z in 0.2f64..6.0) {
        let a = bessel_k(p, z).unwrap();
        let b = bessel_k(-p, z).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a);
    }

    #[test]
    fn hypergeometrics_are_one_at_zero(a in 0.1f64..3.0, d in 0.1f64..3.0, b in -2.0f64..3.0) {
        let m = kummer_m(c(a), c(a + d), 0.0).unwrap();
        prop_assert!((m - 1.0).norm() < 1e-12);
        let f = gauss_2f1(c(a), c(b), c(a + d), 0.0).unwrap();
        prop_assert!((f - 1.0).norm() < 1e-12);
    }
}
