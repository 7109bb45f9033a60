//! Double-exponential (tanh-sinh family) quadrature with trapezoid halving.
//!
//! Each domain is mapped onto the real s-axis so that the transformed
//! integrand decays doubly exponentially; the trapezoid rule is then refined
//! by halving the step until successive sums agree.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Integration domains supported by the transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeDomain {
    /// (a, b) with a < b finite.
    Finite(f64, f64),
    /// (a, ∞).
    HalfLine(f64),
    /// (-∞, ∞).
    Real,
}

/// A sample point together with its distances to the two endpoints, which
/// the transform produces without cancellation. Integrands with endpoint
/// singularities should use these instead of recomputing x - a or b - x.
#[derive(Debug, Clone, Copy)]
pub struct Abscissa {
    pub x: f64,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct DeEstimate {
    pub value: Complex64,
    pub error: f64,
    pub l1: f64,
    pub evaluations: usize,
    pub levels: usize,
}

/// Maximum number of step halvings.
pub const MAX_LEVELS: usize = 20;

const S_MAX: f64 = 8.0;
const S_MIN_SCAN: f64 = 3.0;

fn transform(domain: DeDomain, s: f64) -> Option<(Abscissa, f64)> {
    match domain {
        DeDomain::Finite(a, b) => {
            let len = b - a;
            let v = PI * s.sinh();
            let left = len / (1.0 + (-v).exp());
            let right = len / (1.0 + v.exp());
            if left <= 0.0 || right <= 0.0 {
                return None;
            }
            let x = if left < right { a + left } else { b - right };
            let w = left * right / len * PI * s.cosh();
            Some((Abscissa { x, left, right }, w))
        }
        DeDomain::HalfLine(a) => {
            let e = (FRAC_PI_2 * s.sinh()).exp();
            if e <= 0.0 || !e.is_finite() {
                return None;
            }
            let w = FRAC_PI_2 * s.cosh() * e;
            Some((Abscissa { x: a + e, left: e, right: f64::INFINITY }, w))
        }
        DeDomain::Real => {
            let v = FRAC_PI_2 * s.sinh();
            let x = v.sinh();
            let w = FRAC_PI_2 * s.cosh() * v.cosh();
            if !x.is_finite() || !w.is_finite() {
                return None;
            }
            Some((Abscissa { x, left: f64::INFINITY, right: f64::INFINITY }, w))
        }
    }
}

struct Walker<'a, F: FnMut(Abscissa) -> Complex64> {
    domain: DeDomain,
    f: &'a mut F,
    sum: Complex64,
    l1: f64,
    evaluations: usize,
}

impl<F: FnMut(Abscissa) -> Complex64> Walker<'_, F> {
    /// Adds w f at s; returns |w f| or None for a degenerate abscissa.
    fn add(&mut self, s: f64) -> Result<Option<f64>> {
        let Some((node, w)) = transform(self.domain, s) else {
            return Ok(None);
        };
        let v = (self.f)(node);
        self.evaluations += 1;
        let term = v * w;
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::NonConvergence(format!("integrand not finite at x = {}", node.x)));
        }
        self.sum += term;
        self.l1 += term.norm();
        Ok(Some(term.norm()))
    }
}

/// Integrate `f` over `domain` until two successive trapezoid sums differ by
/// less than max(abs_tol, rel_tol·|value|) (or the roundoff floor).
pub fn integrate<F: FnMut(Abscissa) -> Complex64>(
    domain: DeDomain,
    mut f: F,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<DeEstimate> {
    if let DeDomain::Finite(a, b) = domain {
        if !(a < b) {
            return Err(Error::Domain(format!("empty interval ({a}, {b})")));
        }
    }
    let mut walker = Walker { domain, f: &mut f, sum: Complex64::new(0.0, 0.0), l1: 0.0, evaluations: 0 };
    let mut h = 1.0;

    // level 0 scans outward until the terms are negligible
    walker.add(0.0)?;
    let mut reach = [0.0f64; 2];
    for (side, dir) in [1.0f64, -1.0].into_iter().enumerate() {
        let mut quiet = 0;
        let mut k = 1;
        loop {
            let s = dir * k as f64 * h;
            if s.abs() > S_MAX {
                break;
            }
            match walker.add(s)? {
                None => break,
                Some(t) => {
                    reach[side] = s.abs();
                    if t <= 1e-18 * walker.l1 {
                        quiet += 1;
                    } else {
                        quiet = 0;
                    }
                }
            }
            if quiet >= 3 && s.abs() >= S_MIN_SCAN {
                break;
            }
            k += 1;
        }
    }
    let mut prev = walker.sum * h;
    for level in 1..=MAX_LEVELS {
        h *= 0.5;
        for (side, dir) in [1.0f64, -1.0].into_iter().enumerate() {
            let mut k = 1usize;
            loop {
                let s = dir * k as f64 * h;
                if s.abs() > reach[side] + h {
                    break;
                }
                if walker.add(s)?.is_none() {
                    break;
                }
                k += 2;
            }
        }
        let cur = walker.sum * h;
        let error = (cur - prev).norm();
        let floor = 50.0 * f64::EPSILON * walker.l1 * h;
        let target = abs_tol.max(rel_tol * cur.norm()).max(floor);
        if level >= 2 && error <= target {
            return Ok(DeEstimate {
                value: cur,
                error,
                l1: walker.l1 * h,
                evaluations: walker.evaluations,
                levels: level,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!(
        "double-exponential quadrature did not converge after {MAX_LEVELS} halvings"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn unit_interval_constant() {
        let r = integrate(DeDomain::Finite(0.0, 1.0), |_| re(1.0), 1e-14, 0.0).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 u^{-0.9} du = 10
        let r = integrate(DeDomain::Finite(0.0, 1.0), |n| re(n.left.powf(-0.9)), 1e-12, 0.0).unwrap();
        assert!((r.value.re - 10.0).abs() < 1e-9, "{}", r.value);
        // ∫_{-1}^1 (1 - x)^{-1/2} dx = 2 sqrt 2
        let r = integrate(DeDomain::Finite(-1.0, 1.0), |n| re(n.right.powf(-0.5)), 1e-13, 0.0).unwrap();
        assert!((r.value.re - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn half_line_and_real_line() {
        let r = integrate(DeDomain::HalfLine(0.0), |n| re((-n.x).exp()), 1e-14, 0.0).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-13);
        let r = integrate(DeDomain::Real, |n| re((-n.x * n.x).exp()), 1e-14, 0.0).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_empty_interval() {
        assert!(integrate(DeDomain::Finite(1.0, 1.0), |_| re(1.0), 1e-10, 0.0).is_err());
    }
}
