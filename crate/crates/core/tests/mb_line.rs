use std::f64::consts::PI;

use mbkit::gamma::reciprocal_gamma;
use mbkit::mb::*;
use mbkit::oracles::{bessel_k, hecke_rhs};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn num(a: f64, s: f64) -> GammaFactor {
    GammaFactor::numerator(c(a), s).unwrap()
}

fn den(a: f64, s: f64) -> GammaFactor {
    GammaFactor::denominator(c(a), s).unwrap()
}

fn mb(gammas: Vec<GammaFactor>, powers: Vec<PowerFactor>) -> MBIntegrand {
    MBIntegrand::new(c(1.0), gammas, powers, None).unwrap()
}

#[test]
fn truncated_examples() {
    // Γ(1+it) · 1^{-1-it}
    let f = mb(vec![num(1.0, 1.0)], vec![PowerFactor::new(c(1.0), c(-1.0), -1.0).unwrap()]);
    let r = integrate_line(&f, 1e-10).unwrap();
    assert!((r.value - 2.0 * PI / 1f64.exp()).norm() < 1e-9, "{:?}", r);

    let f = mb(vec![num(0.5, 1.0), num(0.5, -1.0)], vec![]);
    let p = decay_profile(&f);
    let t = truncation_point(&p, f.tail_constant(), 1e-10).unwrap();
    let r = integrate_truncated(&f, t, 1e-10).unwrap();
    assert!((r.value - PI).norm() < 1e-9, "{:?}", r);

    let f = mb(vec![num(0.5, 1.0), num(0.5, 1.0), num(0.5, -1.0), num(0.5, -1.0)], vec![]);
    let r = integrate_line(&f, 1e-10).unwrap();
    assert!((r.value - 2.0 * PI).norm() < 1e-9, "{:?}", r);
    assert_eq!(r.class_used, DecayClass::AbsoluteExponential);
}

#[test]
fn line_examples() {
    // Barnes first lemma at a = b = c = d = 1/2
    let f = mb(vec![num(0.5, 1.0), num(0.5, 1.0), num(0.5, -1.0), num(0.5, -1.0)], vec![]);
    let r = integrate_line(&f, 1e-10).unwrap();
    assert!((r.value / (2.0 * PI) - 1.0).norm() < 1e-10);

    // Hecke with a = b = 0, c = 1/2, p = q = 1
    let f = mb(vec![num(0.5, 1.0), num(0.5, 1.0)], vec![]);
    let r = integrate_line(&f, 1e-10).unwrap();
    let want = 2.0 * PI * hecke_rhs(1.0, 1.0, 0.0, 0.0).unwrap();
    assert!((r.value - want).norm() < 1e-9, "{} vs {want}", r.value);
    assert!((want / (2.0 * PI) - 2.0 * bessel_k(0.0, 2.0).unwrap()).abs() < 1e-12);

    // Γ-Fourier at a = 1, ξ = 0
    let f = mb(vec![num(1.0, 1.0)], vec![PowerFactor::exponential(c(0.0), -0.0)]);
    let r = integrate_line(&f, 1e-10).unwrap();
    assert!((r.value - 2.0 * PI / 1f64.exp()).norm() < 1e-9);
}

#[test]
fn polynomial_ratio() {
    let (a, b) = (0.4, 1.1);
    let f = mb(vec![num(a, 1.0), num(a, -1.0), den(b, 1.0), den(b, -1.0)], vec![]);
    let r = integrate_line(&f, 1e-8).unwrap();
    assert_eq!(r.class_used, DecayClass::AbsolutePolynomial);
    // ∫ |Γ(a+it)/Γ(b+it)|² dt = 2π Γ(2a) Γ(2b-2a-1) / (Γ(2b-1) Γ(b-a)²)
    let g = |x: f64| 1.0 / reciprocal_gamma(c(x)).re;
    let want = 2.0 * PI * g(2.0 * a) * g(2.0 * b - 2.0 * a - 1.0) / (g(2.0 * b - 1.0) * g(b - a) * g(b - a));
    assert!((r.value - want).norm() < 1e-8, "{} vs {want}", r.value);
    assert!(r.value.im.abs() < 1e-8);
}

fn gamma_ratio_ft(xi: f64) -> MBIntegrand {
    mb(vec![num(1.0, 1.0), den(1.8, 1.0)], vec![PowerFactor::exponential(c(0.0), -xi)])
}

#[test]
fn regularized_examples() {
    let s = RegularizationSchedule { eps0: 1e-2, ratio: 0.5, steps: 6 };
    let r = integrate_regularized(&gamma_ratio_ft(-1.0), 1e-6, s).unwrap();
    let e = 1f64.exp();
    let want = 2.0 * PI / e * (1.0 - 1.0 / e).powf(-0.2) * reciprocal_gamma(c(0.8)).re;
    assert!((r.value - want).norm() < 1e-6, "{} vs {want}", r.value);
    assert_eq!(r.class_used, DecayClass::Conditional);

    let r = integrate_regularized(&gamma_ratio_ft(1.0), 1e-6, s).unwrap();
    assert!(r.value.norm() < 1e-6, "{}", r.value);

    // Γ(λ+r+it)/Γ(1-r-it) s^{-λ-2r-2it} at λ = 1/2, r = 0.4, s = π/4 gives 2π J_{1/2}(π/2) = 4
    let (lambda, rr, sv) = (0.5, 0.4, PI / 4.0);
    let f = mb(
        vec![num(lambda + rr, 1.0), den(1.0 - rr, -1.0)],
        vec![PowerFactor::new(c(sv), c(-lambda - 2.0 * rr), -2.0).unwrap()],
    );
    let r = integrate_line(&f, 1e-6).unwrap();
    assert!((r.value - 4.0).norm() < 1e-5, "{:?}", r);
}

#[test]
fn conjugate_pair_reality_and_linearity() {
    let f = mb(vec![num(0.7, 1.0), num(1.3, -1.0), num(0.9, 1.0), num(0.4, -1.0)], vec![]);
    let r = integrate_line(&f, 1e-10).unwrap();
    let sym = mb(vec![num(0.7, 1.0), num(0.7, -1.0), num(1.3, 1.0), num(1.3, -1.0)], vec![]);
    let rs = integrate_line(&sym, 1e-10).unwrap();
    assert!(rs.value.im.abs() < 1e-10);
    assert!(r.value.norm() > 0.0);

    let alpha = Complex64::new(0.3, -2.0);
    let scaled = integrate_line(&sym.scaled(alpha), 1e-10).unwrap();
    assert!((scaled.value - rs.value * alpha).norm() <= 1e-9 * scaled.value.norm());
}

#[test]
fn doubling_truncation_is_consistent() {
    let f = mb(vec![num(0.6, 1.0), num(1.1, -1.0)], vec![PowerFactor::new(c(2.5), c(-0.6), -1.0).unwrap()]);
    let tol = 1e-10;
    let r = integrate_line(&f, tol).unwrap();
    let r2 = integrate_truncated(&f, 2.0 * r.truncation_t, tol).unwrap();
    assert!((r.value - r2.value).norm() < r.error_estimate + tol);
}

#[test]
fn regularized_agrees_with_direct_on_absolute_integrand() {
    let f = mb(vec![num(0.5, 1.0), num(0.5, -1.0)], vec![PowerFactor::exponential(c(0.0), 0.7)]);
    let direct = integrate_line(&f, 1e-10).unwrap();
    let reg = integrate_regularized(&f, 1e-6, RegularizationSchedule::default()).unwrap();
    assert!((direct.value - reg.value).norm() < direct.error_estimate + reg.error_estimate + 1e-9);
}

#[test]
fn growing_integrand_is_rejected() {
    let f = mb(vec![num(0.5, 1.0), den(0.5, 1.0), den(0.7, -1.0)], vec![]);
    assert!(matches!(
        integrate_regularized(&f, 1e-6, RegularizationSchedule::default()),
        Err(mbkit::Error::InvalidIntegrand(_))
    ));
}
