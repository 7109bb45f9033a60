//! Complex gamma, log-gamma and beta functions, plus the Stirling envelope
//! |Γ(c+it)| ≈ |t|^{c-1/2} e^{-π|t|/2} with a numerically calibrated constant.
//!
//! log Γ uses the Stirling series once the argument is far enough from the
//! origin and upward recurrence otherwise. Summing principal logarithms of
//! the recurrence factors gives the branch of log Γ that is continuous on
//! ℂ \ (-∞, 0].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quad::double_exponential::{self as de, DeDomain};

/// The universal complex scalar.
pub type ComplexValue = Complex64;

/// Distance to a non-positive integer below which an argument is a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Safety factor applied to the empirical maximum in [`calibrate_bound`].
pub const CALIBRATION_SAFETY: f64 = 4.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

// B_{2k} / (2k (2k-1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn is_pole(z: Complex64) -> bool {
    z.im.abs() <= POLE_TOLERANCE
        && z.re < 0.5
        && (z.re - z.re.round()).abs() <= POLE_TOLERANCE
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        domain(format!("non-finite argument {z}"))
    }
}

/// 1/w without overflow in |w|².
fn safe_inv(w: Complex64) -> Complex64 {
    let s = w.norm();
    w.conj() / s / s
}

fn stirling_series(w: Complex64) -> Complex64 {
    let inv = safe_inv(w);
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    series
}

fn stirling(w: Complex64) -> Complex64 {
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + stirling_series(w)
}

/// ln(1 + q) for complex q, accurate when |q| is tiny.
pub fn ln_1p(q: Complex64) -> Complex64 {
    if q.norm() < 1e-3 {
        // q - q²/2 + ... + q^7/7
        let mut term = q;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..=7 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += term * (sign / k as f64);
            term *= q;
        }
        sum
    } else {
        (q + 1.0).ln()
    }
}

/// |Im| above which [`log_gamma_ratio`] switches to the paired Stirling form.
pub const RATIO_PAIRING_THRESHOLD: f64 = 1e4;

/// log Γ(a) - log Γ(b). When both arguments are far out along the same
/// vertical direction the two large Stirling terms are combined before
/// subtraction so that their O(|Im|) parts cancel exactly.
pub fn log_gamma_ratio(a: ComplexValue, b: ComplexValue) -> Result<ComplexValue> {
    let d = a - b;
    if b.im.abs() < RATIO_PAIRING_THRESHOLD || d.norm() > 1e-3 * b.norm() || b.re < 0.0 && b.re.abs() > 0.1 * b.im.abs() {
        return Ok(log_gamma(a)? - log_gamma(b)?);
    }
    check_finite(a)?;
    // (a - 1/2) ln a - (b - 1/2) ln b - (a - b) = (b - 1/2)(ln a - ln b) + d ln a - d
    let log_quot = ln_1p(d * safe_inv(b));
    Ok((b - 0.5) * log_quot + d * a.ln() - d + stirling_series(a) - stirling_series(b))
}

/// Principal-branch log Γ(z), continuous on the plane cut along (-∞, 0].
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    if is_pole(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 10.0 && !(w.re >= 0.0 && w.norm_sqr() >= 225.0) {
        shift += w.ln();
        w += 1.0;
    }
    let mut out = stirling(w) - shift;
    if z.im == 0.0 && z.re > 0.0 {
        out.im = 0.0;
    }
    Ok(out)
}

/// Γ(z) = exp(log Γ(z)).
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    let mut g = log_gamma(z)?.exp();
    if z.im == 0.0 {
        g.im = 0.0;
    }
    Ok(g)
}

/// sin(πz) with the argument reduced modulo 2 before multiplying by π.
pub fn sin_pi(z: ComplexValue) -> ComplexValue {
    let k = z.re.round();
    let r = z.re - k;
    let y = PI * z.im;
    let s = Complex64::new((PI * r).sin() * y.cosh(), (PI * r).cos() * y.sinh());
    if (k as i64).rem_euclid(2) == 1 {
        -s
    } else {
        s
    }
}

/// 1/Γ(z), an entire function with exact zeros at the non-positive integers.
pub fn reciprocal_gamma(z: ComplexValue) -> ComplexValue {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    let mut out = if z.re < 0.5 && z.im.abs() < 5.0 {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        let g = log_gamma(Complex64::new(1.0, 0.0) - z)
            .expect("1 - z is not a pole when Re z < 1/2")
            .exp();
        sin_pi(z) * g / PI
    } else {
        (-log_gamma(z).expect("pole already excluded")).exp()
    };
    if z.im == 0.0 {
        out.im = 0.0;
    }
    out
}

/// B(p, q) = Γ(p)Γ(q)/Γ(p+q) for Re p, Re q > 0.
pub fn beta(p: ComplexValue, q: ComplexValue) -> Result<ComplexValue> {
    if !(p.re > 0.0 && q.re > 0.0) {
        return domain(format!("beta requires Re p > 0 and Re q > 0, got {p}, {q}"));
    }
    let mut b = (log_gamma(p)? + log_gamma(q)? - log_gamma(p + q)?).exp();
    if p.im == 0.0 && q.im == 0.0 {
        b.im = 0.0;
    }
    Ok(b)
}

/// Binet's full-line integral for B(p, q):
/// ∫ (e^{(p-q)u} + e^{(q-p)u}) (e^u + e^{-u})^{-p-q} du.
pub fn beta_binet(p: ComplexValue, q: ComplexValue, tol: f64) -> Result<ComplexValue> {
    if !(p.re > 0.0 && q.re > 0.0) {
        return domain(format!("beta_binet requires Re p > 0 and Re q > 0, got {p}, {q}"));
    }
    let s = p + q;
    let d = p - q;
    let integrand = |node: de::Abscissa| {
        let u = node.x;
        // ln(e^u + e^{-u}) without overflow
        let log_2cosh = u.abs() + (-2.0 * u.abs()).exp().ln_1p();
        (d * u - s * log_2cosh).exp() + (-d * u - s * log_2cosh).exp()
    };
    let est = de::integrate(DeDomain::Real, integrand, tol, 0.0)?;
    if est.error > tol {
        return Err(Error::NonConvergence(format!(
            "Binet integral error estimate {:e} exceeds tol {:e}",
            est.error, tol
        )));
    }
    Ok(est.value)
}

/// The un-calibrated Stirling envelope |t|^{c-1/2} e^{-π|t|/2}, |t| ≥ 1.
pub fn gamma_magnitude_estimate(c: f64, t: f64) -> Result<f64> {
    if !(t.abs() >= 1.0) {
        return domain(format!("gamma_magnitude_estimate requires |t| >= 1, got {t}"));
    }
    Ok(log_envelope(c, t).exp())
}

fn log_envelope(c: f64, t: f64) -> f64 {
    (c - 0.5) * t.abs().ln() - 0.5 * PI * t.abs()
}

/// log of |Γ(c+it)| / envelope(c, t).
fn log_ratio(c: f64, t: f64) -> f64 {
    let lg = log_gamma(Complex64::new(c, t)).expect("|t| >= 1 keeps c + it off the poles");
    lg.re - log_envelope(c, t)
}

/// A calibrated bound |Γ(c+it)| ≤ K |t|^{c-1/2} e^{-π|t|/2} for |t| ≥ T0
/// (or a lower bound, when produced by [`calibrate_lower_bound`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBoundModel {
    pub c: f64,
    pub k: f64,
    pub t0: f64,
}

impl GammaBoundModel {
    /// K · envelope(c, t).
    pub fn bound(&self, t: f64) -> f64 {
        self.k * log_envelope(self.c, t.abs().max(1.0)).exp()
    }

    /// Whether |Γ(c+it)| ≤ bound(t) holds at every sample of `ts` with |t| ≥ T0.
    pub fn holds_on(&self, ts: &[f64]) -> bool {
        ts.iter()
            .filter(|t| t.abs() >= self.t0)
            .all(|&t| log_ratio(self.c, t) <= self.k.ln())
    }
}

const CALIBRATION_SAMPLES: usize = 400;

fn calibration_grid(t0: f64) -> impl Iterator<Item = f64> {
    let (lo, hi) = (t0.ln(), (10.0 * t0).ln());
    (0..CALIBRATION_SAMPLES)
        .map(move |i| (lo + (hi - lo) * i as f64 / (CALIBRATION_SAMPLES - 1) as f64).exp())
}

/// Upper-bound calibration: K = 4 · max_{t ∈ [T0, 10 T0]} |Γ(c+it)| / envelope.
pub fn calibrate_bound(c: f64, t0: f64) -> GammaBoundModel {
    let t0 = t0.max(1.0);
    let max = calibration_grid(t0)
        .map(|t| log_ratio(c, t))
        .fold(f64::NEG_INFINITY, f64::max);
    GammaBoundModel {
        c,
        k: (CALIBRATION_SAFETY * max.exp()).max(1e-3),
        t0,
    }
}

/// Lower-bound calibration (for gamma factors in a denominator):
/// K = min ratio / 4, so that |Γ(c+it)| ≥ K · envelope on the grid.
pub fn calibrate_lower_bound(c: f64, t0: f64) -> GammaBoundModel {
    let t0 = t0.max(1.0);
    let min = calibration_grid(t0)
        .map(|t| log_ratio(c, t))
        .fold(f64::INFINITY, f64::min);
    GammaBoundModel {
        c,
        k: min.exp() / CALIBRATION_SAFETY,
        t0,
    }
}
