//! Integrals over the real line of products of gamma factors, complex powers
//! and an optional extra analytic factor, i.e. Mellin-Barnes integrals along
//! a vertical line Re s = const written in the variable t = Im s.

mod integrand;
mod tails;

pub use integrand::{
    decay_profile, DecayClass, DecayProfile, ExtraFactor, GammaFactor, MBIntegrand, Position, PowerFactor,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::extrapolation::richardson;
use crate::quad::gauss_kronrod::{adaptive_weighted, AdaptiveOptions};

/// Maximum integrand evaluations per integral.
pub const EVALUATION_BUDGET: usize = 2_000_000;

/// Default tolerances per convergence class.
pub const TOL_EXPONENTIAL: f64 = 1e-10;
pub const TOL_POLYNOMIAL: f64 = 1e-8;
pub const TOL_CONDITIONAL: f64 = 1e-6;

/// Half-width of the panel-integrated core when [`integrate_line`] handles
/// polynomially decaying tails separately.
const POLYNOMIAL_CORE_T: f64 = 20.0;

const MAX_TRUNCATION_T: f64 = 1e15;

/// Value of a line integral with its error estimate and bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub truncation_t: f64,
    pub evaluations: usize,
    pub class_used: DecayClass,
    /// Empirical leading order of the regularization error, when regularized.
    pub extrapolation_order: Option<f64>,
}

/// Gaussian damping parameters ε_k = ε0 · ratio^k, k = 0..steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizationSchedule {
    pub eps0: f64,
    pub ratio: f64,
    pub steps: usize,
}

impl Default for RegularizationSchedule {
    fn default() -> Self {
        Self { eps0: 1e-2, ratio: 0.5, steps: 6 }
    }
}

impl RegularizationSchedule {
    pub fn epsilons(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.eps0 * self.ratio.powi(k as i32)).collect()
    }
}

/// Smallest T ≥ 2 with bound(T) < target, found by doubling then bisection.
fn smallest_t(bound: impl Fn(f64) -> f64, target: f64) -> Result<f64> {
    let mut hi = 2.0;
    if bound(hi) < target {
        return Ok(hi);
    }
    while bound(hi) >= target {
        hi *= 2.0;
        if hi > MAX_TRUNCATION_T {
            return Err(Error::NonConvergence(format!(
                "no truncation point below {MAX_TRUNCATION_T:e} meets the tail target {target:e}"
            )));
        }
    }
    let mut lo = hi / 2.0;
    for _ in 0..200 {
        if hi - lo <= 1e-9 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if bound(mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn side_tail_bound(class: DecayClass, rate: f64, power: f64, k_total: f64, t: f64) -> f64 {
    match class {
        DecayClass::AbsoluteExponential => k_total * t.powf(power) * (-rate * t).exp() / rate,
        _ => k_total * t.powf(power + 1.0) / (power + 1.0).abs(),
    }
}

/// Tail bound on both sides at T for an absolutely convergent profile.
fn tail_bounds(profile: &DecayProfile, k_total: f64, t: f64) -> (f64, f64) {
    (
        side_tail_bound(profile.class, profile.rate_plus, profile.power_plus, k_total, t),
        side_tail_bound(profile.class, profile.rate_minus, profile.power_minus, k_total, t),
    )
}

/// Smallest T ≥ 2 such that the analytic tail bound on each side is below tol/2.
pub fn truncation_point(profile: &DecayProfile, k_total: f64, tol: f64) -> Result<f64> {
    if profile.class == DecayClass::Conditional {
        return Err(Error::UnboundedTail);
    }
    if !(tol > 0.0) || !(k_total > 0.0) {
        return Err(Error::Domain(format!("truncation needs tol > 0 and K > 0, got {tol}, {k_total}")));
    }
    smallest_t(
        |t| {
            let (a, b) = tail_bounds(profile, k_total, t);
            a.max(b)
        },
        0.5 * tol,
    )
}

/// Contiguous initial panels covering [lo, hi], each no wider than
/// π / (1 + local frequency) at its far end.
fn initial_panels(f: &MBIntegrand, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut a = lo;
    while a < hi {
        let w0 = std::f64::consts::PI / (1.0 + f.local_frequency(a));
        let far = a.abs().max((a + w0).abs());
        let w = std::f64::consts::PI / (1.0 + f.local_frequency(far));
        let b = if a + w >= hi - 1e-3 * w { hi } else { a + w };
        out.push((a, b));
        a = b;
    }
    out
}

/// Adaptive panel quadrature of f on [-T, T] to absolute accuracy tol.
pub fn integrate_truncated(f: &MBIntegrand, t: f64, tol: f64) -> Result<QuadResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("truncation point must be positive, got {t}")));
    }
    let panels = initial_panels(f, -t, t);
    let mut eval = |x: f64| f.evaluate(x);
    let r = adaptive_weighted(&mut eval, &panels, &[], AdaptiveOptions::new(tol, EVALUATION_BUDGET))?;
    Ok(QuadResult {
        value: r.values[0],
        error_estimate: r.errors[0],
        truncation_t: t,
        evaluations: r.evaluations,
        class_used: decay_profile(f).class,
        extrapolation_order: None,
    })
}

/// Dispatch on the decay class: truncation for exponentially decaying
/// integrands, core plus exact tails for polynomially decaying ones,
/// Gaussian regularization with extrapolation for conditional ones.
pub fn integrate_line(f: &MBIntegrand, tol: f64) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let profile = decay_profile(f);
    match profile.class {
        DecayClass::AbsoluteExponential => {
            let k = f.tail_constant();
            let t = truncation_point(&profile, k, 0.5 * tol)?;
            let mut r = integrate_truncated(f, t, 0.5 * tol)?;
            let (a, b) = tail_bounds(&profile, k, t);
            r.error_estimate += a + b;
            Ok(r)
        }
        DecayClass::AbsolutePolynomial => {
            if f.net_slope().abs() > 1e-12 {
                // chirped tails: only the plain truncation bound applies
                let k = f.tail_constant();
                let t = truncation_point(&profile, k, 0.5 * tol)?;
                let mut r = integrate_truncated(f, t, 0.5 * tol)?;
                let (a, b) = tail_bounds(&profile, k, t);
                r.error_estimate += a + b;
                return Ok(r);
            }
            let mut r = integrate_truncated(f, POLYNOMIAL_CORE_T, 0.5 * tol)?;
            for dir in [1.0, -1.0] {
                let tail = tails::tail(f, dir, POLYNOMIAL_CORE_T, 0.25 * tol)?;
                r.value += tail.value;
                r.error_estimate += tail.error;
                r.evaluations += tail.evaluations;
            }
            if r.evaluations > EVALUATION_BUDGET {
                return Err(Error::BudgetExceeded { budget: EVALUATION_BUDGET });
            }
            Ok(r)
        }
        DecayClass::Conditional => integrate_regularized(f, tol, RegularizationSchedule::default()),
    }
}

/// ∫ f(t) e^{-ε t²} dt for each ε of the schedule, extrapolated to ε = 0.
pub fn integrate_regularized(f: &MBIntegrand, tol: f64, schedule: RegularizationSchedule) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if !(schedule.eps0 > 0.0 && schedule.ratio > 0.0 && schedule.ratio < 1.0 && schedule.steps >= 3) {
        return Err(Error::Domain(format!("invalid regularization schedule {schedule:?}")));
    }
    let profile = decay_profile(f);
    if profile.rate_plus < -1e-12 || profile.rate_minus < -1e-12 {
        return Err(Error::InvalidIntegrand(format!(
            "integrand grows exponentially (rates {}, {})",
            profile.rate_plus, profile.rate_minus
        )));
    }
    // Polynomial growth is Gauss-summable only under oscillation.
    let oscillates = f.net_slope().abs() > 1e-12 || f.power_frequency().abs() > 1e-12;
    for (rate, power) in [(profile.rate_plus, profile.power_plus), (profile.rate_minus, profile.power_minus)] {
        if rate.abs() <= 1e-12 && power > 1e-12 && !oscillates {
            return Err(Error::Domain(format!("non-oscillating integrand grows like |t|^{power}")));
        }
    }
    let eps = schedule.epsilons();
    let eps_min = eps[eps.len() - 1];
    let k = f.tail_constant();
    let gaussian_tail = |t: f64| {
        let side = |p: f64| k * t.powf(p.max(0.0)) * (-eps_min * t * t).exp() / (2.0 * eps_min * t);
        side(profile.power_plus).max(side(profile.power_minus))
    };
    let quad_tol = tol / 50.0;
    let t = smallest_t(gaussian_tail, 0.5 * quad_tol)?;
    let panels = initial_panels(f, -t, t);
    let mut eval = |x: f64| f.evaluate(x);
    let r = adaptive_weighted(&mut eval, &panels, &eps, AdaptiveOptions::new(quad_tol, EVALUATION_BUDGET))?;
    let noise = r.errors.iter().cloned().fold(0.0, f64::max) + gaussian_tail(t);
    let ex = richardson(&eps, &r.values, noise)?;
    Ok(QuadResult {
        value: ex.value,
        error_estimate: ex.error,
        truncation_t: t,
        evaluations: r.evaluations,
        class_used: profile.class,
        extrapolation_order: Some(ex.order),
    })
}
