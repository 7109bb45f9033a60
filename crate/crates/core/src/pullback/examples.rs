//! Ready-made phase/test-function pairs with known pull-back values.
//! Phases on the positive quadrant are written in exponential coordinates
//! u = e^s, with the Jacobian folded into φ.

use num_complex::Complex64;

use super::{LocusChart, PhaseField, SchwartzFunction};
use crate::error::{Error, Result};
use crate::oracles::bessel_k;

/// A catalogued pull-back problem.
#[derive(Debug, Clone)]
pub struct PhaseExample {
    pub name: &'static str,
    pub rho: PhaseField,
    pub phi: SchwartzFunction,
    pub charts: Vec<LocusChart>,
    pub exact: f64,
}

/// Names accepted by [`example`].
pub const EXAMPLE_NAMES: [&str; 5] = ["line", "hyperbola", "parabola", "gelfand", "empty"];

pub fn example(name: &str) -> Result<PhaseExample> {
    match name {
        "line" => line(0.0),
        "hyperbola" => hyperbola(),
        "parabola" => parabola(),
        "gelfand" => gelfand(0.3),
        "empty" => empty_locus(3.0),
        other => Err(Error::Domain(format!("unknown pull-back example `{other}`"))),
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// ρ(u) = 2u - ξ, φ(u) = (e^u + e^{-u})^{-1}; the pull-back is φ(ξ/2)/2.
pub fn line(xi: f64) -> Result<PhaseExample> {
    let phi = |u: f64| 1.0 / (2.0 * u.cosh());
    Ok(PhaseExample {
        name: "line",
        rho: PhaseField::new(1, move |x| 2.0 * x[0] - xi, |_| vec![2.0])?,
        phi: SchwartzFunction::new(1, move |x| re(phi(x[0])), 37.5 + 0.5 * xi.abs())?,
        charts: vec![LocusChart::point(0.5 * xi)],
        exact: 0.5 * phi(0.5 * xi),
    })
}

/// log(uv) on the positive quadrant with φ = e^{-u-v}: ρ(s, w) = s + w and
/// φ(s, w) = exp(-e^s - e^w + s + w). The locus is the anti-diagonal and the
/// pull-back is 2 K_0(2).
pub fn hyperbola() -> Result<PhaseExample> {
    let r2 = std::f64::consts::SQRT_2;
    Ok(PhaseExample {
        name: "hyperbola",
        rho: PhaseField::new(2, |x| x[0] + x[1], |_| vec![1.0, 1.0])?,
        phi: SchwartzFunction::new(2, |x| re((-x[0].exp() - x[1].exp() + x[0] + x[1]).exp()), 37.0)?,
        charts: vec![LocusChart::new(vec![(f64::NEG_INFINITY, f64::INFINITY)], |y| vec![y[0], -y[0]], move |_| r2)],
        exact: 2.0 * bessel_k(0.0, 2.0)?,
    })
}

/// u - 1 + y² with φ = e^{1-u-y²} (constant 1 on the locus) in the
/// coordinates u = e^s; the locus is the arc s = ln(1 - y²), |y| < 1, and
/// the pull-back is ∫_{-1}^{1} dy = 2.
pub fn parabola() -> Result<PhaseExample> {
    Ok(PhaseExample {
        name: "parabola",
        rho: PhaseField::new(2, |x| x[0].exp() - 1.0 + x[1] * x[1], |x| vec![x[0].exp(), 2.0 * x[1]])?,
        phi: SchwartzFunction::new(2, |x| re((1.0 - x[0].exp() - x[1] * x[1] + x[0]).exp()), 38.5)?,
        charts: vec![LocusChart::new(
            vec![(-1.0, 1.0)],
            |y| vec![((1.0 - y[0]) * (1.0 + y[0])).ln(), y[0]],
            // sqrt(1 + (ds/dy)²) with ds/dy = -2y/(1-y²)
            |y| (1.0 + y[0] * y[0]) / ((1.0 - y[0]) * (1.0 + y[0])),
        )],
        exact: 2.0,
    })
}

/// ρ(u) = u - v0, φ = e^{-u²}: the pull-back is φ(v0).
pub fn gelfand(v0: f64) -> Result<PhaseExample> {
    Ok(PhaseExample {
        name: "gelfand",
        rho: PhaseField::new(1, move |x| x[0] - v0, |_| vec![1.0])?,
        phi: SchwartzFunction::new(1, |x| re((-x[0] * x[0]).exp()), 6.1)?,
        charts: vec![LocusChart::point(v0)],
        exact: (-v0 * v0).exp(),
    })
}

/// ρ(u) = ln x + ln(1 + e^{-2u}) ≥ ln x > 0 for x > 1: no zero, pull-back 0.
pub fn empty_locus(x: f64) -> Result<PhaseExample> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("the locus is empty only for x > 1, got {x}")));
    }
    let lx = x.ln();
    Ok(PhaseExample {
        name: "empty",
        rho: PhaseField::new(
            1,
            move |v| lx + (-2.0 * v[0]).exp().ln_1p(),
            |v| vec![-2.0 / (1.0 + (2.0 * v[0]).exp())],
        )?,
        phi: SchwartzFunction::new(1, |v| re((2.0 * v[0].cosh()).powi(-2)), 19.0)?,
        charts: vec![],
        exact: 0.0,
    })
}
