//! 21-point Gauss-Kronrod panels (10-point Gauss embedded) and an adaptive
//! bisection driver built on them.

#![allow(clippy::excessive_precision)]

use num_complex::Complex64;

use super::{pairwise_sum, pairwise_sum_real};
use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_864_035,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Number of abscissae in one panel.
pub const NODES: usize = 21;

/// Abscissae of the panel [a, b]: index 0 is the centre, then pairs
/// (c - h x_j, c + h x_j) for j = 0..10.
pub fn nodes(a: f64, b: f64) -> [f64; NODES] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = [c; NODES];
    for j in 0..10 {
        out[1 + 2 * j] = c - h * XGK[j];
        out[2 + 2 * j] = c + h * XGK[j];
    }
    out
}

/// Kronrod value and error estimate of one panel.
#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub value: Complex64,
    pub error: f64,
    /// Rounding level 50ε∫|f|; an error at this level cannot be reduced.
    pub roundoff: f64,
}

/// Combine integrand values laid out as in [`nodes`].
pub fn combine(a: f64, b: f64, f: &[Complex64; NODES]) -> Panel {
    let h = 0.5 * (b - a);
    let mut kron = f[0] * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut abs = f[0].norm() * WGK[10];
    for j in 0..10 {
        let s = f[1 + 2 * j] + f[2 + 2 * j];
        kron += s * WGK[j];
        abs += (f[1 + 2 * j].norm() + f[2 + 2 * j].norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (f[0] - mean).norm() * WGK[10];
    for j in 0..10 {
        asc += ((f[1 + 2 * j] - mean).norm() + (f[2 + 2 * j] - mean).norm()) * WGK[j];
    }
    let value = kron * h;
    let asc = asc * h.abs();
    let abs = abs * h.abs();
    let mut error = ((kron - gauss) * h).norm();
    if asc > 0.0 && error > 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * abs;
    if floor > error {
        error = floor;
    }
    Panel { value, error, roundoff: floor }
}

/// One 21-point panel.
pub fn gk21(mut f: impl FnMut(f64) -> Complex64, a: f64, b: f64) -> Panel {
    let xs = nodes(a, b);
    let mut vals = [Complex64::new(0.0, 0.0); NODES];
    for (v, &x) in vals.iter_mut().zip(xs.iter()) {
        *v = f(x);
    }
    combine(a, b, &vals)
}

/// Result of an adaptive integration with several Gaussian damping weights
/// e^{-ε t²} applied to the same integrand samples.
#[derive(Debug, Clone)]
pub struct Adaptive {
    pub values: Vec<Complex64>,
    pub errors: Vec<f64>,
    pub evaluations: usize,
    pub panels: usize,
}

/// Controls for [`adaptive_weighted`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    /// Absolute tolerance for the whole range.
    pub tol: f64,
    /// Maximum number of integrand evaluations.
    pub budget: usize,
    /// Panels narrower than this fraction of the range are accepted as is.
    pub min_width_fraction: f64,
}

impl AdaptiveOptions {
    pub fn new(tol: f64, budget: usize) -> Self {
        Self { tol, budget, min_width_fraction: 1e-13 }
    }
}

/// Integrate f(t) e^{-ε_k t²} for every ε_k in `eps` over the union of the
/// given contiguous initial panels, bisecting a panel until each weighted
/// estimate has error below tol · width / (total width).
pub fn adaptive_weighted(
    f: &mut dyn FnMut(f64) -> Complex64,
    initial: &[(f64, f64)],
    eps: &[f64],
    opts: AdaptiveOptions,
) -> Result<Adaptive> {
    let m = eps.len().max(1);
    let eps: Vec<f64> = if eps.is_empty() { vec![0.0] } else { eps.to_vec() };
    let total: f64 = initial.iter().map(|(a, b)| (b - a).abs()).sum();
    let min_width = total * opts.min_width_fraction;
    let mut evaluations = 0usize;
    let mut accepted_vals: Vec<Vec<Complex64>> = vec![Vec::new(); m];
    let mut accepted_errs: Vec<Vec<f64>> = vec![Vec::new(); m];
    let mut panels = 0usize;

    let mut samples = [Complex64::new(0.0, 0.0); NODES];
    let mut weighted = [Complex64::new(0.0, 0.0); NODES];
    // depth-first, left before right, keeps positional order
    let mut stack: Vec<(f64, f64)> = initial.iter().rev().copied().collect();
    while let Some((a, b)) = stack.pop() {
        if evaluations + NODES > opts.budget {
            return Err(Error::BudgetExceeded { budget: opts.budget });
        }
        let xs = nodes(a, b);
        for (s, &x) in samples.iter_mut().zip(xs.iter()) {
            *s = f(x);
        }
        evaluations += NODES;
        if samples.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonConvergence(format!(
                "integrand not finite on panel [{a}, {b}]"
            )));
        }
        let budget_here = opts.tol * (b - a).abs() / total;
        let mut ok = true;
        let mut results = Vec::with_capacity(m);
        for &e in &eps {
            for k in 0..NODES {
                weighted[k] = if e == 0.0 { samples[k] } else { samples[k] * (-e * xs[k] * xs[k]).exp() };
            }
            let p = combine(a, b, &weighted);
            if p.error > budget_here && p.error > p.roundoff {
                ok = false;
            }
            results.push(p);
        }
        let width = (b - a).abs();
        if ok || width <= min_width {
            for (k, p) in results.into_iter().enumerate() {
                accepted_vals[k].push(p.value);
                accepted_errs[k].push(p.error);
            }
            panels += 1;
        } else {
            let c = 0.5 * (a + b);
            stack.push((c, b));
            stack.push((a, c));
        }
    }
    Ok(Adaptive {
        values: accepted_vals.iter().map(|v| pairwise_sum(v)).collect(),
        errors: accepted_errs.iter().map(|v| pairwise_sum_real(v)).collect(),
        evaluations,
        panels,
    })
}

/// Scalar adaptive integral over [a, b] split into `pieces` equal panels.
pub fn adaptive(
    mut f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    pieces: usize,
    opts: AdaptiveOptions,
) -> Result<(Complex64, f64, usize)> {
    let n = pieces.max(1);
    let initial: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let lo = a + (b - a) * k as f64 / n as f64;
            let hi = if k + 1 == n { b } else { a + (b - a) * (k + 1) as f64 / n as f64 };
            (lo, hi)
        })
        .collect();
    let r = adaptive_weighted(&mut f, &initial, &[], opts)?;
    Ok((r.values[0], r.errors[0], r.evaluations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn single_panel_polynomials_exact() {
        let p = gk21(|x| re(x.powi(20)), -1.0, 1.0);
        assert!((p.value.re - 2.0 / 21.0).abs() < 1e-15);
        let p = gk21(|x| re(x * x), 0.0, 3.0);
        assert!((p.value.re - 9.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_oscillatory() {
        let (v, err, _) =
            adaptive(|x| Complex64::new(0.0, 50.0 * x).exp(), 0.0, 10.0, 4, AdaptiveOptions::new(1e-12, 1_000_000))
                .unwrap();
        let want = (Complex64::new(0.0, 500.0).exp() - 1.0) / Complex64::new(0.0, 50.0);
        assert!((v - want).norm() < 1e-12, "{v} {want} {err}");
    }

    #[test]
    fn weighted_matches_separate_runs() {
        let mut f = |x: f64| re(1.0 / (1.0 + x * x));
        let r = adaptive_weighted(&mut f, &[(-20.0, 0.0), (0.0, 20.0)], &[0.0, 0.1], AdaptiveOptions::new(1e-12, 1_000_000))
            .unwrap();
        let want0 = 2.0 * 20f64.atan();
        assert!((r.values[0].re - want0).abs() < 1e-11);
        let (w, _, _) = adaptive(
            |x| re((-0.1 * x * x).exp() / (1.0 + x * x)),
            -20.0,
            20.0,
            2,
            AdaptiveOptions::new(1e-12, 1_000_000),
        )
        .unwrap();
        assert!((r.values[1] - w).norm() < 1e-11);
    }

    #[test]
    fn budget_is_enforced() {
        let r = adaptive(|x| re((1.0 / x).sin()), 1e-9, 1.0, 1, AdaptiveOptions::new(1e-15, 2000));
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
