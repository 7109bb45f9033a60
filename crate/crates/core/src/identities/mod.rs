//! Verification harness: each catalog case pairs a vertical-line integral
//! (evaluated by [`crate::mb`]) with an independent right-hand side, over a
//! sampled parameter domain.

mod catalog;
mod report;

use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mb::{
    decay_profile, integrate_line, integrate_regularized, DecayClass, MBIntegrand, QuadResult, RegularizationSchedule,
    TOL_CONDITIONAL, TOL_EXPONENTIAL, TOL_POLYNOMIAL,
};

pub use catalog::{builtin_catalog, case_by_id, CATALOG_IDS};
pub use report::{reports_to_json, REPORT_VERSION};

/// Identifies the sampling stream recorded in reports.
pub const PRNG_ALGORITHM: &str = "chacha8/rand_chacha-0.3; seed_from_u64(seed ^ fnv1a64(case id)); u = (next_u64 >> 11) * 2^-53";

/// Attempts per sample before a domain is declared infeasible.
pub const MAX_REJECTIONS: usize = 10_000;

/// Pass thresholds on the relative error, by convergence class.
pub fn ladder_tolerance(class: DecayClass) -> f64 {
    match class {
        DecayClass::AbsoluteExponential => 1e-8,
        DecayClass::AbsolutePolynomial => 1e-6,
        DecayClass::Conditional => 1e-4,
    }
}

/// Right-hand sides below this magnitude are compared absolutely.
pub const ABSOLUTE_FALLBACK: f64 = 1e-12;

/// Named parameter values in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params(pub Vec<(&'static str, f64)>);

impl Params {
    pub fn get(&self, name: &str) -> f64 {
        self.0
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("parameter `{name}` missing from {self:?}"))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParamRange {
    pub name: &'static str,
    pub lo: f64,
    pub hi: f64,
}

/// A parameter fixed by an equality constraint on the sampled ones.
#[derive(Clone, Copy)]
pub struct Derived {
    pub name: &'static str,
    pub description: &'static str,
    pub solve: fn(&Params) -> f64,
}

#[derive(Clone, Copy)]
pub struct Constraint {
    pub description: &'static str,
    pub holds: fn(&Params) -> bool,
}

/// Box of sampled parameters, equality-derived parameters and inequality
/// constraints enforced by rejection.
#[derive(Clone, Default)]
pub struct ParamDomain {
    pub ranges: Vec<ParamRange>,
    pub derived: Vec<Derived>,
    pub constraints: Vec<Constraint>,
}

impl fmt::Debug for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamDomain")
            .field("ranges", &self.ranges)
            .field("derived", &self.derived.iter().map(|d| d.description).collect::<Vec<_>>())
            .field("constraints", &self.constraints.iter().map(|c| c.description).collect::<Vec<_>>())
            .finish()
    }
}

impl ParamDomain {
    pub fn contains(&self, p: &Params) -> bool {
        self.ranges.iter().all(|r| {
            let v = p.get(r.name);
            v >= r.lo && v <= r.hi
        }) && self.constraints.iter().all(|c| (c.holds)(p))
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Params {
        let mut p = Params(
            self.ranges
                .iter()
                .map(|r| {
                    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                    (r.name, r.lo + (r.hi - r.lo) * u)
                })
                .collect(),
        );
        for d in &self.derived {
            let v = (d.solve)(&p);
            p.0.push((d.name, v));
        }
        p
    }
}

/// n samples from the domain, deterministic in `seed`.
pub fn sample_params(domain: &ParamDomain, n: usize, seed: u64) -> Result<Vec<Params>> {
    if n == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut found = None;
        for _ in 0..MAX_REJECTIONS {
            let p = domain.draw(&mut rng);
            if domain.constraints.iter().all(|c| (c.holds)(&p)) {
                found = Some(p);
                break;
            }
        }
        match found {
            Some(p) => out.push(p),
            None => {
                return Err(Error::InfeasibleDomain(format!(
                    "no sample satisfied {:?} within {MAX_REJECTIONS} attempts",
                    domain.constraints.iter().map(|c| c.description).collect::<Vec<_>>()
                )))
            }
        }
    }
    Ok(out)
}

fn fnv1a64(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The sampling seed used for `id` under the run seed.
pub fn case_seed(seed: u64, id: &str) -> u64 {
    seed ^ fnv1a64(id)
}

/// Left-hand side: normalization × ∫ integrand dt.
pub struct Lhs {
    pub integrand: MBIntegrand,
    pub normalization: Complex64,
    /// Damping schedule when the integral is only conditionally convergent.
    pub schedule: RegularizationSchedule,
}

impl Lhs {
    pub fn new(integrand: MBIntegrand, normalization: Complex64) -> Self {
        Self { integrand, normalization, schedule: RegularizationSchedule::default() }
    }

    /// Damping starts at ε0 = min(1e-2, d²/100) where d is the distance of
    /// the evaluation point to the nearest singularity of the transform.
    pub fn with_gap(mut self, d: f64) -> Self {
        self.schedule.eps0 = (d * d / 100.0).min(1e-2);
        self
    }
}

pub type LhsBuilder = fn(&Params) -> Result<Lhs>;
pub type RhsEvaluator = fn(&Params) -> Result<Complex64>;

/// One catalogued identity.
#[derive(Clone)]
pub struct IdentityCase {
    pub id: &'static str,
    pub lhs_builder: LhsBuilder,
    pub rhs_evaluator: RhsEvaluator,
    pub domain: ParamDomain,
    pub convergence_class: DecayClass,
    pub tol: f64,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("convergence_class", &self.convergence_class)
            .field("tol", &self.tol)
            .finish()
    }
}

/// Outcome at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub params: Params,
    pub lhs: Option<Complex64>,
    pub rhs: Option<Complex64>,
    pub abs_error: f64,
    /// Relative error, or the absolute error when |rhs| < 1e-12.
    pub rel_error: f64,
    pub class_used: Option<DecayClass>,
    pub failure: Option<String>,
}

/// Result of [`verify_case`].
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: &'static str,
    pub convergence_class: DecayClass,
    pub tol: f64,
    pub samples: Vec<SampleRecord>,
    pub max_rel_error: f64,
    pub pass: bool,
    pub wall_time: Duration,
}

fn quad_tolerance(class: DecayClass) -> f64 {
    match class {
        DecayClass::AbsoluteExponential => TOL_EXPONENTIAL,
        DecayClass::AbsolutePolynomial => TOL_POLYNOMIAL,
        DecayClass::Conditional => TOL_CONDITIONAL,
    }
}

/// normalization × ∫ f, with the quadrature tolerance scaled by `scale`
/// (the expected magnitude of the result). The value and error estimate of
/// the returned result include the normalization.
pub fn integrate_lhs(lhs: &Lhs, scale: f64) -> Result<QuadResult> {
    let profile = decay_profile(&lhs.integrand);
    let norm = lhs.normalization.norm();
    if !(norm > 0.0) {
        return Err(Error::Domain("zero normalization".into()));
    }
    let tol = quad_tolerance(profile.class) * scale.max(1e-3) / norm;
    let r = match profile.class {
        DecayClass::Conditional => integrate_regularized(&lhs.integrand, tol, lhs.schedule)?,
        _ => integrate_line(&lhs.integrand, tol)?,
    };
    Ok(QuadResult { value: lhs.normalization * r.value, error_estimate: norm * r.error_estimate, class_used: profile.class, ..r })
}

/// Value and convergence class of [`integrate_lhs`].
pub fn evaluate_lhs(lhs: &Lhs, scale: f64) -> Result<(Complex64, DecayClass)> {
    let r = integrate_lhs(lhs, scale)?;
    Ok((r.value, r.class_used))
}

/// Both sides at one parameter point.
pub fn evaluate_sample(case: &IdentityCase, params: &Params) -> SampleRecord {
    let mut rec = SampleRecord {
        params: params.clone(),
        lhs: None,
        rhs: None,
        abs_error: f64::INFINITY,
        rel_error: f64::INFINITY,
        class_used: None,
        failure: None,
    };
    let rhs = match (case.rhs_evaluator)(params) {
        Ok(v) => v,
        Err(e) => {
            rec.failure = Some(format!("rhs: {e}"));
            return rec;
        }
    };
    rec.rhs = Some(rhs);
    let lhs = (case.lhs_builder)(params).and_then(|l| evaluate_lhs(&l, rhs.norm()));
    let (lhs, class) = match lhs {
        Ok(v) => v,
        Err(e) => {
            rec.failure = Some(format!("lhs: {e}"));
            return rec;
        }
    };
    rec.lhs = Some(lhs);
    rec.class_used = Some(class);
    rec.abs_error = (lhs - rhs).norm();
    rec.rel_error = if rhs.norm() < ABSOLUTE_FALLBACK { rec.abs_error } else { rec.abs_error / rhs.norm() };
    if !rec.rel_error.is_finite() {
        rec.failure = Some("non-finite error".into());
        rec.rel_error = f64::INFINITY;
    }
    rec
}

/// Samples the case's domain and compares both sides at every sample.
pub fn verify_case(case: &IdentityCase, n_samples: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let params = sample_params(&case.domain, n_samples, case_seed(seed, case.id))?;
    let samples: Vec<SampleRecord> = params.iter().map(|p| evaluate_sample(case, p)).collect();
    let max_rel_error = samples.iter().map(|s| s.rel_error).fold(0.0, f64::max);
    let pass = samples.iter().all(|s| s.failure.is_none()) && max_rel_error < case.tol;
    Ok(VerificationReport {
        id: case.id,
        convergence_class: case.convergence_class,
        tol: case.tol,
        samples,
        max_rel_error,
        pass,
        wall_time: start.elapsed(),
    })
}

/// Verifies the catalog (or the cases named in `filter`) in parallel,
/// returning reports in catalog order.
pub fn verify_all(n_samples: usize, seed: u64, filter: Option<&[String]>) -> Result<Vec<VerificationReport>> {
    let catalog = builtin_catalog();
    if let Some(ids) = filter {
        for id in ids {
            if !catalog.iter().any(|c| c.id == id) {
                return Err(Error::UnknownIdentity(id.clone()));
            }
        }
    }
    let selected: Vec<IdentityCase> = catalog
        .into_iter()
        .filter(|c| filter.is_none_or(|ids| ids.iter().any(|i| i == c.id)))
        .collect();
    verify_cases(&selected, n_samples, seed)
}

/// [`verify_case`] over `cases` in parallel; reports keep the input order.
pub fn verify_cases(cases: &[IdentityCase], n_samples: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    cases.par_iter().map(|c| verify_case(c, n_samples, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn domain() -> ParamDomain {
        ParamDomain {
            ranges: vec![ParamRange { name: "a", lo: 0.0, hi: 1.0 }, ParamRange { name: "b", lo: 0.0, hi: 1.0 }],
            derived: vec![Derived { name: "s", description: "s = a + b", solve: |p| p.get("a") + p.get("b") }],
            constraints: vec![Constraint { description: "a < b", holds: |p| p.get("a") < p.get("b") }],
        }
    }

    #[test]
    fn sampling_is_deterministic_and_constrained() {
        let d = domain();
        let x = sample_params(&d, 50, 42).unwrap();
        assert_eq!(x, sample_params(&d, 50, 42).unwrap());
        assert_ne!(x, sample_params(&d, 50, 43).unwrap());
        for p in &x {
            assert!(p.get("a") < p.get("b"));
            assert_eq!(p.get("s"), p.get("a") + p.get("b"));
            assert!(d.contains(p));
        }
        assert!(sample_params(&d, 0, 1).is_err());
    }

    #[test]
    fn infeasible_domain() {
        let mut d = domain();
        d.constraints.push(Constraint { description: "a > 2", holds: |p| p.get("a") > 2.0 });
        assert!(matches!(sample_params(&d, 1, 1), Err(Error::InfeasibleDomain(_))));
    }

    #[test]
    fn case_seeds_differ_by_id() {
        assert_ne!(case_seed(7, "cahen-4.7i"), case_seed(7, "hecke-4.1"));
        assert_eq!(fnv1a64(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a64("a"), 0xaf63_dc4c_8601_ec8c);
    }
}
