use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{
    calibrate_bound, calibrate_lower_bound, log_gamma, log_gamma_ratio, reciprocal_gamma,
    RATIO_PAIRING_THRESHOLD,
};

/// Where a gamma factor sits in the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Numerator,
    Denominator,
}

/// Γ(offset + slope·it) in the numerator or denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub offset: Complex64,
    pub slope: f64,
    pub position: Position,
}

impl GammaFactor {
    pub fn numerator(offset: Complex64, slope: f64) -> Result<Self> {
        Self::new(offset, slope, Position::Numerator)
    }

    pub fn denominator(offset: Complex64, slope: f64) -> Result<Self> {
        Self::new(offset, slope, Position::Denominator)
    }

    pub fn new(offset: Complex64, slope: f64, position: Position) -> Result<Self> {
        if !(slope != 0.0 && slope.is_finite()) {
            return Err(Error::InvalidIntegrand(format!("gamma slope must be non-zero, got {slope}")));
        }
        if !(offset.re.is_finite() && offset.im.is_finite()) {
            return Err(Error::InvalidIntegrand(format!("non-finite gamma offset {offset}")));
        }
        if position == Position::Numerator && !(offset.re > 0.0) {
            return Err(Error::InvalidIntegrand(format!(
                "numerator gamma offset must have positive real part, got {offset}"
            )));
        }
        if position == Position::Denominator && offset.re <= 0.0 && offset.re == offset.re.round() {
            return Err(Error::InvalidIntegrand(format!(
                "denominator gamma offset {offset} reaches a pole on the line"
            )));
        }
        Ok(Self { offset, slope, position })
    }

    fn argument(&self, t: f64) -> Complex64 {
        self.offset + Complex64::new(0.0, self.slope * t)
    }
}

/// exp((w0 + i·w1·t) · log z) with the principal logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFactor {
    pub base: Complex64,
    pub w0: Complex64,
    pub w1: f64,
    log_base: Complex64,
}

impl PowerFactor {
    pub fn new(base: Complex64, w0: Complex64, w1: f64) -> Result<Self> {
        if !(base.norm() > 0.0) || (base.im == 0.0 && base.re < 0.0) || !base.re.is_finite() || !base.im.is_finite() {
            return Err(Error::InvalidIntegrand(format!("power base {base} must lie off (-inf, 0]")));
        }
        Ok(Self { base, w0, w1, log_base: base.ln() })
    }

    /// e^{(w0 + i w1 t)}: the base is e.
    pub fn exponential(w0: Complex64, w1: f64) -> Self {
        Self { base: Complex64::new(std::f64::consts::E, 0.0), w0, w1, log_base: Complex64::new(1.0, 0.0) }
    }

    fn log_value(&self, t: f64) -> Complex64 {
        (self.w0 + Complex64::new(0.0, self.w1 * t)) * self.log_base
    }

    /// |z^{w0}|, the t-independent part of the modulus.
    fn modulus_constant(&self) -> f64 {
        (self.w0 * self.log_base).re.exp()
    }
}

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A smooth extra factor with declared decay |g(t)| ≤ C |t|^{P±} e^{-R±|t|}.
#[derive(Clone)]
pub struct ExtraFactor {
    evaluator: Evaluator,
    pub rate_plus: f64,
    pub rate_minus: f64,
    pub power_plus: f64,
    pub power_minus: f64,
    /// Empirical constant C (times the calibration safety factor).
    pub constant: f64,
}

impl fmt::Debug for ExtraFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtraFactor")
            .field("rate_plus", &self.rate_plus)
            .field("rate_minus", &self.rate_minus)
            .field("power_plus", &self.power_plus)
            .field("power_minus", &self.power_minus)
            .field("constant", &self.constant)
            .finish()
    }
}

const EXTRA_SPOT_SAMPLES: usize = 60;
const EXTRA_SPOT_MAX_T: f64 = 1000.0;

impl ExtraFactor {
    /// Wraps `evaluator` and spot-checks the declared envelope on a
    /// geometric grid 1 ≤ |t| ≤ 1000 in both directions: the ratio to the
    /// envelope must stay bounded (no growth beyond a factor 4 over the
    /// last decade).
    pub fn new(
        evaluator: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        rate_plus: f64,
        rate_minus: f64,
        power_plus: f64,
        power_minus: f64,
    ) -> Result<Self> {
        let mut constant: f64 = 0.0;
        for (dir, rate, power) in [(1.0, rate_plus, power_plus), (-1.0, rate_minus, power_minus)] {
            let mut early: f64 = 0.0;
            let mut late: f64 = 0.0;
            for k in 0..EXTRA_SPOT_SAMPLES {
                let s = EXTRA_SPOT_MAX_T.ln() * k as f64 / (EXTRA_SPOT_SAMPLES - 1) as f64;
                let t = s.exp();
                let v = evaluator(dir * t);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::InvalidIntegrand(format!("extra factor not finite at t = {}", dir * t)));
                }
                let log_env = power * t.ln() - rate * t;
                let log_ratio = if v.norm() == 0.0 { f64::NEG_INFINITY } else { v.norm().ln() - log_env };
                if t <= EXTRA_SPOT_MAX_T / 10.0 {
                    early = early.max(log_ratio.exp());
                } else {
                    late = late.max(log_ratio.exp());
                }
            }
            if late > 4.0 * early && late > 0.0 {
                return Err(Error::InvalidIntegrand(format!(
                    "extra factor exceeds its declared envelope (rate {rate}, power {power}) in direction {dir}"
                )));
            }
            constant = constant.max(early.max(late));
        }
        Ok(Self {
            evaluator: Arc::new(evaluator),
            rate_plus,
            rate_minus,
            power_plus,
            power_minus,
            constant: 4.0 * constant,
        })
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        (self.evaluator)(t)
    }
}

/// A vertical-line integrand: prefactor × Π Γ^{±1} × Π powers × extra.
#[derive(Debug, Clone)]
pub struct MBIntegrand {
    pub prefactor: Complex64,
    pub gamma_factors: Vec<GammaFactor>,
    pub power_factors: Vec<PowerFactor>,
    pub extra: Option<ExtraFactor>,
    // (numerator index, denominator index) with equal slopes
    pairs: Vec<(usize, usize)>,
}

impl MBIntegrand {
    pub fn new(
        prefactor: Complex64,
        gamma_factors: Vec<GammaFactor>,
        power_factors: Vec<PowerFactor>,
        extra: Option<ExtraFactor>,
    ) -> Result<Self> {
        if !(prefactor.re.is_finite() && prefactor.im.is_finite()) {
            return Err(Error::InvalidIntegrand(format!("non-finite prefactor {prefactor}")));
        }
        let mut used = vec![false; gamma_factors.len()];
        let mut pairs = Vec::new();
        for (d, den) in gamma_factors.iter().enumerate() {
            if den.position != Position::Denominator {
                continue;
            }
            if let Some(n) = gamma_factors
                .iter()
                .enumerate()
                .position(|(n, g)| !used[n] && g.position == Position::Numerator && g.slope == den.slope)
            {
                used[n] = true;
                pairs.push((n, d));
            }
        }
        Ok(Self { prefactor, gamma_factors, power_factors, extra, pairs })
    }

    /// The same integrand with the prefactor multiplied by `alpha`.
    pub fn scaled(&self, alpha: Complex64) -> Self {
        let mut out = self.clone();
        out.prefactor *= alpha;
        out
    }

    /// f(t).
    pub fn evaluate(&self, t: f64) -> Complex64 {
        let mut log = Complex64::new(0.0, 0.0);
        let mut mult = self.prefactor;
        let far = t.abs() * self.max_slope() >= RATIO_PAIRING_THRESHOLD;
        let mut done = vec![false; self.gamma_factors.len()];
        if far {
            for &(n, d) in &self.pairs {
                let a = self.gamma_factors[n].argument(t);
                let b = self.gamma_factors[d].argument(t);
                log += log_gamma_ratio(a, b).expect("arguments far from the real axis");
                done[n] = true;
                done[d] = true;
            }
        }
        for (g, skip) in self.gamma_factors.iter().zip(done) {
            if skip {
                continue;
            }
            let z = g.argument(t);
            match g.position {
                Position::Numerator => log += log_gamma(z).expect("numerator offsets have Re > 0"),
                Position::Denominator => {
                    if z.re < 0.5 && z.im.abs() < 5.0 {
                        mult *= reciprocal_gamma(z);
                    } else {
                        log -= log_gamma(z).expect("pole excluded at construction");
                    }
                }
            }
        }
        for p in &self.power_factors {
            log += p.log_value(t);
        }
        let mut v = mult * log.exp();
        if let Some(e) = &self.extra {
            v *= e.eval(t);
        }
        v
    }

    fn max_slope(&self) -> f64 {
        self.gamma_factors.iter().map(|g| g.slope.abs()).fold(0.0, f64::max)
    }

    /// Net gamma slope κ = Σ_num σ - Σ_den σ (the chirp coefficient).
    pub fn net_slope(&self) -> f64 {
        self.gamma_factors
            .iter()
            .map(|g| match g.position {
                Position::Numerator => g.slope,
                Position::Denominator => -g.slope,
            })
            .sum()
    }

    /// Constant angular frequency Σ w1 ln|z| of the power factors.
    pub fn power_frequency(&self) -> f64 {
        self.power_factors.iter().map(|p| p.w1 * p.log_base.re).sum()
    }

    /// Local oscillation frequency used to size the initial panels.
    pub fn local_frequency(&self, t: f64) -> f64 {
        self.power_frequency().abs() + self.net_slope().abs() * (1.0 + t.abs()).ln()
    }

    /// K_total for the tail bound K_total |t|^{power} e^{-rate |t|}:
    /// calibrated upper constants for numerator gammas over calibrated lower
    /// constants for denominator gammas, times the power and extra constants.
    pub fn tail_constant(&self) -> f64 {
        let mut k = self.prefactor.norm();
        for g in &self.gamma_factors {
            let alpha = g.offset.re;
            let beta = g.offset.im;
            let s = g.slope.abs();
            let shift = (FRAC_PI_2 * beta.abs()).exp() * s.powf(alpha - 0.5) * (1.0 + beta.abs() / (2.0 * s)).powf((alpha - 0.5).abs());
            match g.position {
                Position::Numerator => k *= calibrate_bound(alpha, 1.0).k * shift,
                Position::Denominator => {
                    let lower = calibrate_lower_bound(alpha, 1.0).k;
                    k *= (FRAC_PI_2 * beta.abs()).exp() * s.powf(0.5 - alpha) * (1.0 + beta.abs() / (2.0 * s)).powf((alpha - 0.5).abs()) / lower;
                }
            }
        }
        for p in &self.power_factors {
            k *= p.modulus_constant();
        }
        if let Some(e) = &self.extra {
            k *= e.constant;
        }
        k
    }
}

/// Convergence class of a line integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecayClass {
    AbsoluteExponential,
    AbsolutePolynomial,
    Conditional,
}

impl DecayClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DecayClass::AbsoluteExponential => "absolute-exponential",
            DecayClass::AbsolutePolynomial => "absolute-polynomial",
            DecayClass::Conditional => "conditional",
        }
    }
}

impl fmt::Display for DecayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Modulus envelope ∝ |t|^{power±} e^{-rate± |t|} as t → ±∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayProfile {
    pub rate_plus: f64,
    pub rate_minus: f64,
    pub power_plus: f64,
    pub power_minus: f64,
    pub class: DecayClass,
}

const RATE_EPS: f64 = 1e-12;

/// Decay rates and powers from Stirling's formula applied factor by factor.
pub fn decay_profile(f: &MBIntegrand) -> DecayProfile {
    let mut slope_sum = 0.0;
    let mut power = 0.0;
    for g in &f.gamma_factors {
        match g.position {
            Position::Numerator => {
                slope_sum += g.slope.abs();
                power += g.offset.re - 0.5;
            }
            Position::Denominator => {
                slope_sum -= g.slope.abs();
                power -= g.offset.re - 0.5;
            }
        }
    }
    // |exp(i w1 t log z)| = exp(-w1 t arg z)
    let arg_term: f64 = f.power_factors.iter().map(|p| p.w1 * p.log_base.im).sum();
    let base = FRAC_PI_2 * slope_sum;
    let (mut rate_plus, mut rate_minus) = (base + arg_term, base - arg_term);
    let (mut power_plus, mut power_minus) = (power, power);
    if let Some(e) = &f.extra {
        rate_plus += e.rate_plus;
        rate_minus += e.rate_minus;
        power_plus += e.power_plus;
        power_minus += e.power_minus;
    }
    let class = if rate_plus.min(rate_minus) > RATE_EPS {
        DecayClass::AbsoluteExponential
    } else if rate_plus.abs() <= RATE_EPS && rate_minus.abs() <= RATE_EPS && power_plus.max(power_minus) < -1.0 {
        DecayClass::AbsolutePolynomial
    } else {
        DecayClass::Conditional
    };
    DecayProfile { rate_plus, rate_minus, power_plus, power_minus, class }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn profile_examples() {
        let f = MBIntegrand::new(
            c(1.0),
            vec![GammaFactor::numerator(c(0.5), 1.0).unwrap(), GammaFactor::numerator(c(0.5), -1.0).unwrap()],
            vec![],
            None,
        )
        .unwrap();
        let p = decay_profile(&f);
        assert!((p.rate_plus - PI).abs() < 1e-15 && (p.rate_minus - PI).abs() < 1e-15);
        assert_eq!((p.power_plus, p.power_minus), (0.0, 0.0));
        assert_eq!(p.class, DecayClass::AbsoluteExponential);

        let (a, b) = (0.3, 1.2);
        let f = MBIntegrand::new(
            c(1.0),
            vec![
                GammaFactor::numerator(c(a), 1.0).unwrap(),
                GammaFactor::numerator(c(a), -1.0).unwrap(),
                GammaFactor::denominator(c(b), 1.0).unwrap(),
                GammaFactor::denominator(c(b), -1.0).unwrap(),
            ],
            vec![],
            None,
        )
        .unwrap();
        let p = decay_profile(&f);
        assert_eq!((p.rate_plus, p.rate_minus), (0.0, 0.0));
        assert!((p.power_plus - 2.0 * (a - b)).abs() < 1e-15);
        assert_eq!(p.class, DecayClass::AbsolutePolynomial);

        let y: f64 = 2.5;
        let f = MBIntegrand::new(
            c(1.0),
            vec![GammaFactor::numerator(c(0.7), 1.0).unwrap()],
            vec![PowerFactor::new(c(y), c(-0.7), -1.0).unwrap()],
            None,
        )
        .unwrap();
        let p = decay_profile(&f);
        assert!((p.rate_plus - FRAC_PI_2).abs() < 1e-15 && (p.rate_minus - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(p.class, DecayClass::AbsoluteExponential);
    }

    #[test]
    fn complex_base_shifts_rates() {
        let z = Complex64::from_polar(2.0, 0.4);
        let f = MBIntegrand::new(
            c(1.0),
            vec![GammaFactor::numerator(c(1.0), 1.0).unwrap()],
            vec![PowerFactor::new(z, c(0.0), 1.0).unwrap()],
            None,
        )
        .unwrap();
        let p = decay_profile(&f);
        assert!((p.rate_plus - (FRAC_PI_2 + 0.4)).abs() < 1e-14);
        assert!((p.rate_minus - (FRAC_PI_2 - 0.4)).abs() < 1e-14);
        // the modulus really decays like t^{1/2} e^{-rate_plus t}
        let r = (f.evaluate(40.0).norm() / f.evaluate(30.0).norm()).ln() / -10.0 + 0.5 * (4f64 / 3.0).ln() / 10.0;
        assert!((r - p.rate_plus).abs() < 0.01, "{r}");
    }

    #[test]
    fn construction_guards() {
        assert!(GammaFactor::numerator(c(0.0), 1.0).is_err());
        assert!(GammaFactor::numerator(c(1.0), 0.0).is_err());
        assert!(GammaFactor::denominator(c(-2.0), 1.0).is_err());
        assert!(GammaFactor::denominator(c(-1.5), 1.0).is_ok());
        assert!(PowerFactor::new(c(-1.0), c(1.0), 1.0).is_err());
        assert!(PowerFactor::new(c(0.0), c(1.0), 1.0).is_err());
        // declared decay faster than the actual one
        assert!(ExtraFactor::new(|t| c(1.0 / (1.0 + t * t)), 0.0, 0.0, -3.0, -3.0).is_err());
        assert!(ExtraFactor::new(|t| c(1.0 / (1.0 + t * t)), 0.0, 0.0, -2.0, -2.0).is_ok());
    }

    #[test]
    fn paired_evaluation_is_continuous_at_the_switch() {
        let f = MBIntegrand::new(
            c(1.0),
            vec![GammaFactor::numerator(c(0.4), 1.0).unwrap(), GammaFactor::denominator(c(1.3), 1.0).unwrap()],
            vec![],
            None,
        )
        .unwrap();
        let below = f.evaluate(RATIO_PAIRING_THRESHOLD * (1.0 - 1e-12));
        let above = f.evaluate(RATIO_PAIRING_THRESHOLD);
        assert!((below - above).norm() < 1e-10 * above.norm());
    }
}
