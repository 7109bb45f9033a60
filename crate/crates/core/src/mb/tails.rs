//! Semi-infinite tails ∫_T^∞ f(±t) dt of polynomially decaying integrands.

use num_complex::Complex64;

use super::MBIntegrand;
use crate::error::{Error, Result};
use crate::quad::double_exponential::{self as de, DeDomain};
use crate::quad::extrapolation::wynn_epsilon;
use crate::quad::gauss_kronrod::{adaptive, AdaptiveOptions};

pub(super) struct Tail {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

const MAX_HALF_PERIODS: usize = 480;

/// ∫_T^∞ f(dir·t) dt (for dir = -1 this is ∫_{-∞}^{-T} f).
pub(super) fn tail(f: &MBIntegrand, dir: f64, t0: f64, tol: f64) -> Result<Tail> {
    let omega = f.power_frequency().abs();
    if omega < 1e-12 {
        monotone_tail(f, dir, t0, tol)
    } else {
        oscillatory_tail(f, dir, t0, omega, tol)
    }
}

/// t = T/u maps the tail onto (0, 1); the endpoint u → 0 carries an
/// integrable power singularity handled by the double-exponential rule.
fn monotone_tail(f: &MBIntegrand, dir: f64, t0: f64, tol: f64) -> Result<Tail> {
    let est = de::integrate(
        DeDomain::Finite(0.0, 1.0),
        |n| {
            let u = n.left;
            let t = t0 / u;
            let v = f.evaluate(dir * t);
            if v.norm() == 0.0 {
                return v;
            }
            let r = v * t / u;
            if r.re.is_finite() && r.im.is_finite() {
                r
            } else {
                Complex64::new(0.0, 0.0)
            }
        },
        tol,
        0.0,
    )?;
    Ok(Tail { value: est.value, error: est.error, evaluations: est.evaluations })
}

/// Sum of half-period integrals, accelerated with Wynn's epsilon algorithm.
fn oscillatory_tail(f: &MBIntegrand, dir: f64, t0: f64, omega: f64, tol: f64) -> Result<Tail> {
    let half = std::f64::consts::PI / omega;
    let mut sums: Vec<Complex64> = Vec::new();
    let mut running = Complex64::new(0.0, 0.0);
    let mut quad_err = 0.0;
    let mut evaluations = 0;
    let mut n = 30;
    let mut last: Option<Complex64> = None;
    loop {
        while sums.len() < n {
            let k = sums.len() as f64;
            let (a, b) = (t0 + k * half, t0 + (k + 1.0) * half);
            let (v, e, used) = adaptive(
                |t| f.evaluate(dir * t),
                a,
                b,
                1,
                AdaptiveOptions::new(tol / (4.0 * MAX_HALF_PERIODS as f64), 200_000),
            )?;
            running += v;
            quad_err += e;
            evaluations += used;
            sums.push(running);
        }
        let (est, err) = wynn_epsilon(&sums);
        if let Some(prev) = last {
            let diff = (est - prev).norm();
            let error = err.max(diff) + quad_err;
            if error <= tol || n >= MAX_HALF_PERIODS {
                if error > tol {
                    return Err(Error::NonConvergence(format!(
                        "oscillatory tail error {error:e} above {tol:e} after {n} half periods"
                    )));
                }
                return Ok(Tail { value: est, error, evaluations });
            }
        }
        last = Some(est);
        n *= 2;
    }
}
