//! Independent right-hand-side evaluators: closed forms and one-dimensional
//! integral representations computed with double-exponential quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::gamma::{log_gamma, reciprocal_gamma};
use crate::quad::double_exponential::{self as de, Abscissa, DeDomain};

/// Relative accuracy requested from the internal oracle integrals.
pub const ORACLE_REL_TOL: f64 = 1e-13;

/// Integration domains for [`oracle_integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleDomain {
    /// (0, 1)
    UnitInterval,
    /// (0, ∞)
    HalfLine,
    /// (-∞, ∞)
    RealLine,
    /// (-1, 1)
    Symmetric,
}

impl OracleDomain {
    fn de(self) -> DeDomain {
        match self {
            OracleDomain::UnitInterval => DeDomain::Finite(0.0, 1.0),
            OracleDomain::HalfLine => DeDomain::HalfLine(0.0),
            OracleDomain::RealLine => DeDomain::Real,
            OracleDomain::Symmetric => DeDomain::Finite(-1.0, 1.0),
        }
    }
}

/// A one-dimensional integral on one of the standard domains. The integrand
/// receives the abscissa together with its endpoint distances.
pub struct RealLineIntegralSpec<'a> {
    pub integrand: &'a dyn Fn(Abscissa) -> Complex64,
    pub domain: OracleDomain,
    pub tol: f64,
}

/// Double-exponential quadrature to absolute accuracy `spec.tol`.
pub fn oracle_integrate(spec: &RealLineIntegralSpec<'_>) -> Result<Complex64> {
    if !(spec.tol > 0.0) {
        return domain(format!("oracle tolerance must be positive, got {}", spec.tol));
    }
    Ok(de::integrate(spec.domain.de(), spec.integrand, spec.tol, 0.0)?.value)
}

fn integrate_rel(dom: OracleDomain, f: impl Fn(Abscissa) -> Complex64) -> Result<Complex64> {
    Ok(de::integrate(dom.de(), f, 0.0, ORACLE_REL_TOL)?.value)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be positive and finite, got {v}"))
    }
}

/// ln sech(y) without overflow.
fn ln_sech(y: f64) -> f64 {
    std::f64::consts::LN_2 - y.abs() - (-2.0 * y.abs()).exp().ln_1p()
}

/// √π Γ(a) Γ(a + 1/2) sech(ξ/2)^{2a}.
pub fn sech_power_rhs(a: Complex64, xi: f64) -> Result<Complex64> {
    if !(a.re > 0.0) {
        return domain(format!("sech_power_rhs requires Re a > 0, got {a}"));
    }
    let log = log_gamma(a)? + log_gamma(a + 0.5)? + a * (2.0 * ln_sech(0.5 * xi));
    Ok(log.exp() * PI.sqrt())
}

/// Kummer's M(a, b, x) from its Euler integral on (0, 1).
pub fn kummer_m(a: Complex64, b: Complex64, x: f64) -> Result<Complex64> {
    if !(b.re > a.re && a.re > 0.0) || !x.is_finite() {
        return domain(format!("kummer_m requires Re b > Re a > 0, got a = {a}, b = {b}"));
    }
    let pre = (log_gamma(b)? - log_gamma(b - a)? - log_gamma(a)?).exp();
    let v = integrate_rel(OracleDomain::UnitInterval, |n| {
        (x * n.x + (a - 1.0) * n.left.ln() + (b - a - 1.0) * n.right.ln()).exp()
    })?;
    Ok(pre * v)
}

/// Tricomi's U(a, b, x) from its Laplace-type integral on (0, ∞).
pub fn kummer_u(a: Complex64, b: Complex64, x: f64) -> Result<Complex64> {
    if !(a.re > 0.0) {
        return domain(format!("kummer_u requires Re a > 0, got {a}"));
    }
    positive("x", x)?;
    let v = integrate_rel(OracleDomain::HalfLine, |n| {
        (-x * n.x + (a - 1.0) * n.left.ln() + (b - a - 1.0) * n.x.ln_1p()).exp()
    })?;
    Ok(reciprocal_gamma(a) * v)
}

/// Gauss 2F1(a, b; c; z) for z < 1 from Euler's integral.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if !(c.re > a.re && a.re > 0.0) {
        return domain(format!("gauss_2f1 requires Re c > Re a > 0, got a = {a}, c = {c}"));
    }
    if !(z < 1.0) || !z.is_finite() {
        return domain(format!("gauss_2f1 requires z < 1, got {z}"));
    }
    let pre = (log_gamma(c)? - log_gamma(a)? - log_gamma(c - a)?).exp();
    let v = integrate_rel(OracleDomain::UnitInterval, |n| {
        // 1 - z s = (1 - z) + z (1 - s)
        let base = (1.0 - z) + z * n.right;
        ((a - 1.0) * n.left.ln() + (c - a - 1.0) * n.right.ln() - b * base.ln()).exp()
    })?;
    Ok(pre * v)
}

/// J_a(x) from Poisson's integral on (-1, 1).
pub fn bessel_j_poisson(a: Complex64, x: f64) -> Result<Complex64> {
    if !(a.re > -0.5) {
        return domain(format!("bessel_j_poisson requires Re a > -1/2, got {a}"));
    }
    positive("x", x)?;
    let v = integrate_rel(OracleDomain::Symmetric, |n| {
        ((a - 0.5) * (n.left * n.right).ln()).exp() * (x * n.x).cos()
    })?;
    let pre = (a * (0.5 * x).ln() - log_gamma(a + 0.5)?).exp() / PI.sqrt();
    Ok(pre * v)
}

/// K_p(2x) = (1/2) ∫_0^∞ exp(-ux - x/u) u^{-p-1} du, evaluated at 2x = `two_x`.
pub fn bessel_k(p: f64, two_x: f64) -> Result<f64> {
    positive("two_x", two_x)?;
    let x = 0.5 * two_x;
    let v = integrate_rel(OracleDomain::HalfLine, |n| {
        let u = n.x;
        real((-u * x - x / u - (p + 1.0) * u.ln()).exp())
    })?;
    Ok(0.5 * v.re)
}

/// I_p(2x) = (1/π) ∫_0^π e^{2x cos t} cos(pt) dt - (sin pπ / π) ∫_0^∞ e^{-2x cosh u - pu} du,
/// evaluated at 2x = `two_x`. The second term is omitted at integer p.
pub fn bessel_i(p: f64, two_x: f64) -> Result<f64> {
    positive("two_x", two_x)?;
    let z = two_x;
    let first = de::integrate(
        DeDomain::Finite(0.0, PI),
        |n| real((z * n.x.cos()).exp() * (p * n.x).cos()),
        0.0,
        ORACLE_REL_TOL,
    )?
    .value
    .re
        / PI;
    if p == p.round() {
        return Ok(first);
    }
    let tail = integrate_rel(OracleDomain::HalfLine, |n| real((-z * n.x.cosh() - p * n.x).exp()))?.re;
    Ok(first - (p * PI).sin() / PI * tail)
}

/// 2 ∫_0^∞ exp(-2x cosh u) cosh(λu) du.
pub fn cosh_transform_k(lambda: f64, x: f64) -> Result<f64> {
    positive("x", x)?;
    let v = integrate_rel(OracleDomain::HalfLine, |n| {
        let u = n.x;
        let e = -2.0 * x * u.cosh();
        real((e + lambda * u).exp() + (e - lambda * u).exp())
    })?;
    Ok(v.re)
}

/// ∫_0^∞ exp(-p/s - qs) s^{b-a-1} ds.
pub fn hecke_rhs(p: f64, q: f64, a: f64, b: f64) -> Result<f64> {
    positive("p", p)?;
    positive("q", q)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("hecke_rhs requires finite a, b".into()));
    }
    let v = integrate_rel(OracleDomain::HalfLine, |n| {
        let s = n.x;
        real((-p / s - q * s + (b - a - 1.0) * s.ln()).exp())
    })?;
    Ok(v.re)
}
