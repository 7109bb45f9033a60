//! The pull-back ρ*(δ₀) of the Dirac delta through a smooth submersive phase
//! ρ: ℝⁿ → ℝ, paired with a rapidly decreasing test function φ. Three routes:
//! Gaussian mollification with extrapolation, the surface measure dS/|∇ρ| on
//! an explicit chart of the zero locus, and the damped oscillatory double
//! integral (1/2π) ∫∫ φ(x) e^{-itρ(x)} dx dt.

pub mod examples;
mod faddeeva;
mod nested;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::double_exponential::{self as de, DeDomain};
use crate::quad::extrapolation::richardson;

pub use faddeeva::{damped_delta_kernel, faddeeva};
use nested::{Integrator, Kernel, Options};

type RealMap = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type VectorMap = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
type ComplexMap = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

/// Smooth phase ρ with its gradient.
#[derive(Clone)]
pub struct PhaseField {
    pub dim: usize,
    pub evaluate: RealMap,
    pub gradient: VectorMap,
}

impl fmt::Debug for PhaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhaseField {{ dim: {} }}", self.dim)
    }
}

impl PhaseField {
    pub fn new(
        dim: usize,
        evaluate: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Domain(format!("phase dimension must be 1, 2 or 3, got {dim}")));
        }
        Ok(Self { dim, evaluate: Arc::new(evaluate), gradient: Arc::new(gradient) })
    }
}

/// Test function φ with a radius beyond which |φ| < 1e-16.
#[derive(Clone)]
pub struct SchwartzFunction {
    pub dim: usize,
    pub evaluate: ComplexMap,
    pub decay_radius: f64,
}

impl fmt::Debug for SchwartzFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchwartzFunction {{ dim: {}, decay_radius: {} }}", self.dim, self.decay_radius)
    }
}

/// |φ| bound promised beyond the decay radius.
pub const DECAY_FLOOR: f64 = 1e-16;

impl SchwartzFunction {
    /// Wraps φ and spot-checks |φ| ≤ 1e-16 on spheres of radius R, 1.5R, 2R.
    pub fn new(
        dim: usize,
        evaluate: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
        decay_radius: f64,
    ) -> Result<Self> {
        if !(decay_radius > 0.0) {
            return Err(Error::Domain(format!("decay radius must be positive, got {decay_radius}")));
        }
        for x in sphere_sample(dim, decay_radius) {
            let v = evaluate(&x);
            if !(v.norm() <= DECAY_FLOOR) {
                return Err(Error::Domain(format!(
                    "|phi({x:?})| = {:e} exceeds {DECAY_FLOOR:e} outside the decay radius",
                    v.norm()
                )));
            }
        }
        Ok(Self { dim, evaluate: Arc::new(evaluate), decay_radius })
    }

    /// α·self + other.
    pub fn combine(&self, alpha: Complex64, other: &SchwartzFunction) -> SchwartzFunction {
        let (f, g) = (self.evaluate.clone(), other.evaluate.clone());
        SchwartzFunction {
            dim: self.dim,
            evaluate: Arc::new(move |x| alpha * f(x) + g(x)),
            decay_radius: self.decay_radius.max(other.decay_radius),
        }
    }
}

fn sphere_sample(dim: usize, r: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for scale in [1.0, 1.5, 2.0] {
        let rr = r * scale;
        match dim {
            1 => {
                out.push(vec![rr]);
                out.push(vec![-rr]);
            }
            2 => {
                for k in 0..64 {
                    let a = 2.0 * PI * k as f64 / 64.0;
                    out.push(vec![rr * a.cos(), rr * a.sin()]);
                }
            }
            _ => {
                for i in 0..12 {
                    let th = PI * (i as f64 + 0.5) / 12.0;
                    for k in 0..24 {
                        let a = 2.0 * PI * k as f64 / 24.0;
                        out.push(vec![rr * th.sin() * a.cos(), rr * th.sin() * a.sin(), rr * th.cos()]);
                    }
                }
            }
        }
    }
    out
}

/// Parametrisation y ↦ map(y) ∈ {ρ = 0} over a box in ℝ^{n-1}, with the
/// Euclidean surface element. For n = 1 the box is empty and the chart is
/// the single point map(&[]).
#[derive(Clone)]
pub struct LocusChart {
    pub domain: Vec<(f64, f64)>,
    pub map: VectorMap,
    pub area_weight: RealMap,
}

impl fmt::Debug for LocusChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocusChart {{ domain: {:?} }}", self.domain)
    }
}

impl LocusChart {
    pub fn new(
        domain: Vec<(f64, f64)>,
        map: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        area_weight: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { domain, map: Arc::new(map), area_weight: Arc::new(area_weight) }
    }

    /// The zero-dimensional chart {point} of a one-dimensional phase.
    pub fn point(p: f64) -> Self {
        Self::new(vec![], move |_| vec![p], |_| 1.0)
    }
}

/// ε_k = ε0 · ratio^k, k = 0..steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollifierSchedule {
    pub eps0: f64,
    pub ratio: f64,
    pub steps: usize,
}

impl Default for MollifierSchedule {
    fn default() -> Self {
        Self { eps0: 1e-2, ratio: 0.25, steps: 5 }
    }
}

impl MollifierSchedule {
    pub fn epsilons(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.eps0 * self.ratio.powi(k as i32)).collect()
    }
}

/// Outcome of [`pullback_mollified`].
#[derive(Debug, Clone)]
pub struct MollifiedResult {
    pub value: Complex64,
    pub error_estimate: f64,
    /// Empirical order of P(ε) - P(0) from the last three iterates.
    pub order: f64,
    pub epsilons: Vec<f64>,
    /// P(ε_k).
    pub values: Vec<Complex64>,
    pub evaluations: usize,
}

/// Absolute accuracy of each mollified or oscillatory quadrature.
pub const PULLBACK_QUAD_TOL: f64 = 1e-11;

/// Maximum (φ, ρ) evaluations per pull-back quadrature.
pub const PULLBACK_BUDGET: usize = 200_000_000;

// e^{-ρ²/4ε} < 1e-32 beyond this many √ε
const GAUSS_CUT: f64 = 17.2;

struct Gaussians {
    eps: Vec<f64>,
}

impl Kernel for Gaussians {
    fn count(&self) -> usize {
        self.eps.len()
    }

    fn eval(&self, rho: f64, out: &mut [f64]) {
        for (o, &e) in out.iter_mut().zip(&self.eps) {
            *o = (-rho * rho / (4.0 * e)).exp() / (4.0 * PI * e).sqrt();
        }
    }

    fn cut(&self, k: usize) -> Option<f64> {
        Some(GAUSS_CUT * self.eps[k].sqrt())
    }

    fn scale(&self, k: usize) -> f64 {
        self.eps[k].sqrt()
    }

    fn submersivity_band(&self) -> f64 {
        // weight e^{-ρ²/4ε0} above 1e-12
        (4.0 * self.eps[0] * 12.0 * std::f64::consts::LN_10).sqrt()
    }
}

struct Damped {
    t_max: f64,
    eps: f64,
}

impl Damped {
    fn truncation_negligible(&self) -> bool {
        (-self.eps * self.t_max * self.t_max).exp() < 1e-16
    }
}

impl Kernel for Damped {
    fn count(&self) -> usize {
        1
    }

    fn eval(&self, rho: f64, out: &mut [f64]) {
        out[0] = damped_delta_kernel(rho, self.t_max, self.eps);
    }

    fn cut(&self, _k: usize) -> Option<f64> {
        self.truncation_negligible().then(|| GAUSS_CUT * self.eps.sqrt())
    }

    fn scale(&self, _k: usize) -> f64 {
        self.eps.sqrt().min(1.0 / self.t_max)
    }

    fn submersivity_band(&self) -> f64 {
        (4.0 * self.eps * 12.0 * std::f64::consts::LN_10).sqrt().max(10.0 / self.t_max)
    }
}

fn check_dims(rho: &PhaseField, phi: &SchwartzFunction) -> Result<()> {
    if rho.dim != phi.dim {
        return Err(Error::Domain(format!("phase has dimension {} but test function {}", rho.dim, phi.dim)));
    }
    Ok(())
}

/// P(ε) = (4πε)^{-1/2} ∫ φ(x) e^{-ρ(x)²/4ε} dx for each ε of the schedule,
/// extrapolated to ε → 0.
pub fn pullback_mollified(
    rho: &PhaseField,
    phi: &SchwartzFunction,
    schedule: MollifierSchedule,
) -> Result<MollifiedResult> {
    check_dims(rho, phi)?;
    if !(schedule.steps >= 3 && schedule.eps0 > 0.0 && schedule.ratio > 0.0 && schedule.ratio < 1.0) {
        return Err(Error::Domain(format!("invalid mollifier schedule {schedule:?}")));
    }
    let kernel = Gaussians { eps: schedule.epsilons() };
    let mut integrator = Integrator {
        rho,
        phi,
        kernel: &kernel,
        radius: phi.decay_radius,
        opts: Options { tol: PULLBACK_QUAD_TOL, budget: PULLBACK_BUDGET },
        evaluations: 0,
    };
    let (values, quad_err) = integrator.run()?;
    let evaluations = integrator.evaluations;
    let ex = richardson(&kernel.eps, &values, quad_err.max(PULLBACK_QUAD_TOL))?;
    Ok(MollifiedResult {
        value: ex.value,
        error_estimate: ex.error,
        order: ex.order,
        epsilons: kernel.eps,
        values,
        evaluations,
    })
}

/// Relative tolerance for ρ(map(y)) = 0 at chart nodes.
pub const CHART_RESIDUAL_TOL: f64 = 1e-12;

/// ∫ φ(map(y)) · area_weight(y) / |∇ρ(map(y))| dy summed over the charts.
/// An empty chart list is the empty locus.
pub fn pullback_surface(rho: &PhaseField, charts: &[LocusChart], phi: &SchwartzFunction) -> Result<Complex64> {
    check_dims(rho, phi)?;
    let mut total = Complex64::new(0.0, 0.0);
    for chart in charts {
        if chart.domain.len() + 1 != rho.dim {
            return Err(Error::Domain(format!(
                "chart of dimension {} for a phase on R^{}",
                chart.domain.len(),
                rho.dim
            )));
        }
        let mut y = vec![0.0; chart.domain.len()];
        total += chart_integral(rho, chart, phi, 0, &mut y)?;
    }
    Ok(total)
}

fn chart_density(rho: &PhaseField, chart: &LocusChart, phi: &SchwartzFunction, y: &[f64]) -> Result<Complex64> {
    let x = (chart.map)(y);
    let g = (rho.gradient)(&x);
    let scale = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    let residual = (rho.evaluate)(&x);
    let magnitude = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if residual.abs() > CHART_RESIDUAL_TOL * magnitude.max(scale * magnitude) {
        return Err(Error::ChartInconsistent { residual, point: x });
    }
    if scale == 0.0 {
        return Err(Error::NotSubmersive(x));
    }
    Ok((phi.evaluate)(&x) * (chart.area_weight)(y) / scale)
}

fn chart_integral(
    rho: &PhaseField,
    chart: &LocusChart,
    phi: &SchwartzFunction,
    axis: usize,
    y: &mut [f64],
) -> Result<Complex64> {
    if axis == chart.domain.len() {
        return chart_density(rho, chart, phi, y);
    }
    let (lo, hi) = chart.domain[axis];
    let dom = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => DeDomain::Finite(lo, hi),
        (false, false) => DeDomain::Real,
        _ => return Err(Error::Domain("chart boxes must be finite or the whole line".into())),
    };
    let mut failure = None;
    let est = de::integrate(
        dom,
        |n| {
            if failure.is_some() {
                return Complex64::new(0.0, 0.0);
            }
            let mut yy = y.to_vec();
            yy[axis] = n.x;
            match chart_integral(rho, chart, phi, axis + 1, &mut yy) {
                // the chart may degenerate at the box boundary
                Ok(v) if !v.is_finite() && n.left.min(n.right) < 1e-12 * (1.0 + n.x.abs()) => Complex64::new(0.0, 0.0),
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        1e-13,
        1e-12,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(est.value)
}

/// (1/2π) ∫_{-T}^{T} e^{-εt²} ∫ φ(x) e^{-itρ(x)} dx dt with the t-integral in
/// closed form and the x-integral by nested panels.
pub fn oscillatory_check(rho: &PhaseField, phi: &SchwartzFunction, t_max: f64, eps: f64) -> Result<Complex64> {
    check_dims(rho, phi)?;
    if rho.dim > 2 {
        return Err(Error::Domain("oscillatory_check supports n <= 2".into()));
    }
    if !(t_max > 0.0 && eps > 0.0) {
        return Err(Error::Domain(format!("need T > 0 and eps > 0, got {t_max}, {eps}")));
    }
    let kernel = Damped { t_max, eps };
    let mut integrator = Integrator {
        rho,
        phi,
        kernel: &kernel,
        radius: phi.decay_radius,
        opts: Options { tol: PULLBACK_QUAD_TOL * 100.0, budget: PULLBACK_BUDGET },
        evaluations: 0,
    };
    Ok(integrator.run()?.0[0])
}
