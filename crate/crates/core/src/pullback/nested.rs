//! ∫ φ(x) K_k(ρ(x)) dx over a box for a family of kernels K_k that are
//! sharply concentrated near ρ = 0. Axis 0 is integrated innermost with
//! panels refined to the kernel scale; the remaining axes use adaptive
//! Gauss-Kronrod panels on the vector of inner results.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{PhaseField, SchwartzFunction};
use crate::error::{Error, Result};
use crate::quad::gauss_kronrod::{combine, nodes, Panel, NODES};
use crate::quad::pairwise_sum;

/// A family of functions of ρ evaluated together.
pub(super) trait Kernel {
    fn count(&self) -> usize;
    fn eval(&self, rho: f64, out: &mut [f64]);
    /// |ρ| beyond which kernel k is negligible, if any.
    fn cut(&self, k: usize) -> Option<f64>;
    /// Resolution in ρ required by kernel k.
    fn scale(&self, k: usize) -> f64;
    /// ρ-width inside which a vanishing gradient is an error.
    fn submersivity_band(&self) -> f64;
}

pub(super) struct Options {
    pub tol: f64,
    pub budget: usize,
}

const MAX_DEPTH: usize = 60;
const OUTER_PIECES: usize = 8;
const SCREEN_SAMPLES: usize = 9;
// a 21-node panel this many kernel scales wide still has 8 nodes per scale
const PANEL_SCALES: f64 = 2.5;
const SUBMERSIVITY_FLOOR: f64 = 1e-8;
// panels are accepted once the error is at this fraction of their value
const PANEL_REL_TOL: f64 = 1e-12;

fn accept(panels: &[Panel], abs: f64) -> bool {
    panels.iter().all(|p| p.error <= abs.max(PANEL_REL_TOL * p.value.norm()))
}

pub(super) struct Integrator<'a, K: Kernel> {
    pub rho: &'a PhaseField,
    pub phi: &'a SchwartzFunction,
    pub kernel: &'a K,
    pub radius: f64,
    pub opts: Options,
    pub evaluations: usize,
}

impl<K: Kernel + Sync> Integrator<'_, K> {
    pub fn run(&mut self) -> Result<(Vec<Complex64>, f64)> {
        let n = self.rho.dim;
        let mut x = vec![0.0; n];
        let (v, err) = self.outer(n - 1, &mut x, self.opts.tol)?;
        Ok((v, err))
    }

    fn charge(&mut self, k: usize) -> Result<()> {
        self.evaluations += k;
        if self.evaluations > self.opts.budget {
            return Err(Error::BudgetExceeded { budget: self.opts.budget });
        }
        Ok(())
    }

    /// Integrate over axes 1..=axis (outer) and 0 (inner).
    fn outer(&mut self, axis: usize, x: &mut [f64], tol: f64) -> Result<(Vec<Complex64>, f64)> {
        if axis == 0 {
            return self.inner(x, tol);
        }
        let r = self.radius;
        let m = self.kernel.count();
        let mut vals: Vec<Vec<Complex64>> = vec![Vec::new(); m];
        let mut err_total = 0.0;
        let pieces = OUTER_PIECES;
        let mut stack: Vec<(f64, f64, usize)> = (0..pieces)
            .rev()
            .map(|i| {
                let a = -r + 2.0 * r * i as f64 / pieces as f64;
                let b = -r + 2.0 * r * (i + 1) as f64 / pieces as f64;
                (a, b, 0)
            })
            .collect();
        let sub_tol = tol / (2.0 * r);
        while let Some((a, b, depth)) = stack.pop() {
            let xs = nodes(a, b);
            let mut samples = vec![[Complex64::new(0.0, 0.0); NODES]; m];
            let mut inner_err = 0.0;
            for (j, (v, e)) in self.slices(axis, x, &xs, sub_tol * 0.25)?.into_iter().enumerate() {
                inner_err += e;
                for k in 0..m {
                    samples[k][j] = v[k];
                }
            }
            let panels: Vec<_> = samples.iter().map(|s| combine(a, b, s)).collect();
            let err = panels.iter().map(|p| p.error).fold(0.0, f64::max);
            if !accept(&panels, sub_tol * (b - a)) && depth < MAX_DEPTH {
                let c = 0.5 * (a + b);
                stack.push((c, b, depth + 1));
                stack.push((a, c, depth + 1));
                continue;
            }
            for k in 0..m {
                vals[k].push(panels[k].value);
            }
            err_total += err + inner_err * (b - a) / NODES as f64;
        }
        Ok((vals.iter().map(|v| pairwise_sum(v)).collect(), err_total))
    }

    /// Integrals over the lower axes at each node of `axis`. The slices of
    /// the outermost axis run in parallel, each with the remaining budget.
    fn slices(&mut self, axis: usize, x: &mut [f64], xs: &[f64], tol: f64) -> Result<Vec<(Vec<Complex64>, f64)>> {
        if axis + 1 < self.rho.dim {
            return xs
                .iter()
                .map(|&xj| {
                    x[axis] = xj;
                    self.outer(axis - 1, x, tol)
                })
                .collect();
        }
        let remaining = self.opts.budget.saturating_sub(self.evaluations);
        let (rho, phi, kernel, radius) = (self.rho, self.phi, self.kernel, self.radius);
        let base = x.to_vec();
        let runs: Vec<Result<(Vec<Complex64>, f64, usize)>> = xs
            .par_iter()
            .map(|&xj| {
                let mut sub = Integrator {
                    rho,
                    phi,
                    kernel,
                    radius,
                    opts: Options { tol, budget: remaining },
                    evaluations: 0,
                };
                let mut y = base.clone();
                y[axis] = xj;
                sub.outer(axis - 1, &mut y, tol).map(|(v, e)| (v, e, sub.evaluations))
            })
            .collect();
        let mut out = Vec::with_capacity(xs.len());
        for run in runs {
            let (v, e, used) = run?;
            self.charge(used)?;
            out.push((v, e));
        }
        Ok(out)
    }

    /// Locates the zero of ∂ρ/∂x0 bracketed by [lo, hi] and fails if ρ is
    /// critical there inside the submersivity band.
    fn check_turning_point(&mut self, x: &mut [f64], mut lo: f64, mut hi: f64) -> Result<()> {
        let d0 = |x: &mut [f64], t: f64| {
            x[0] = t;
            (self.rho.gradient)(x)[0]
        };
        let g_lo = d0(x, lo);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if d0(x, mid) * g_lo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.charge(80)?;
        x[0] = 0.5 * (lo + hi);
        let rv = (self.rho.evaluate)(x);
        let norm = (self.rho.gradient)(x).iter().map(|v| v * v).sum::<f64>().sqrt();
        if rv.abs() <= self.kernel.submersivity_band() && norm < SUBMERSIVITY_FLOOR {
            return Err(Error::NotSubmersive(x.to_vec()));
        }
        Ok(())
    }

    fn inner(&mut self, x: &mut [f64], tol: f64) -> Result<(Vec<Complex64>, f64)> {
        let r = self.radius;
        let m = self.kernel.count();
        let mut vals: Vec<Vec<Complex64>> = vec![Vec::new(); m];
        let mut err_total = 0.0;
        let per_len = tol / (2.0 * r);
        let mut stack: Vec<(f64, f64, usize)> = vec![(-r, r, 0)];
        let mut kbuf = vec![0.0; m];
        while let Some((a, b, depth)) = stack.pop() {
            // screen the panel on equispaced samples
            let mut min_abs = f64::INFINITY;
            let mut max_grad: f64 = 0.0;
            let mut signs = (false, false);
            let mut prev: Option<(f64, f64)> = None;
            let mut turning = None;
            for j in 0..SCREEN_SAMPLES {
                x[0] = a + (b - a) * j as f64 / (SCREEN_SAMPLES - 1) as f64;
                let rv = (self.rho.evaluate)(x);
                let g = (self.rho.gradient)(x);
                min_abs = min_abs.min(rv.abs());
                max_grad = max_grad.max(g[0].abs());
                if let Some((xp, gp)) = prev {
                    if gp * g[0] <= 0.0 && turning.is_none() {
                        turning = Some((xp, x[0]));
                    }
                }
                prev = Some((x[0], g[0]));
                if rv >= 0.0 {
                    signs.0 = true;
                } else {
                    signs.1 = true;
                }
            }
            self.charge(SCREEN_SAMPLES)?;
            let crosses = signs.0 && signs.1;
            let slack = (b - a) / (SCREEN_SAMPLES - 1) as f64 * max_grad;
            let mut needed = f64::INFINITY;
            let mut any_active = false;
            for k in 0..m {
                let active = match self.kernel.cut(k) {
                    Some(cut) => crosses || min_abs <= cut + slack,
                    None => true,
                };
                if active {
                    any_active = true;
                    needed = needed.min(self.kernel.scale(k));
                }
            }
            if !any_active {
                continue;
            }
            if let Some((lo, hi)) = turning {
                self.check_turning_point(x, lo, hi)?;
            }
            if (b - a) * max_grad > PANEL_SCALES * needed && depth < MAX_DEPTH {
                let c = 0.5 * (a + b);
                stack.push((c, b, depth + 1));
                stack.push((a, c, depth + 1));
                continue;
            }
            let xs = nodes(a, b);
            let mut samples = vec![[Complex64::new(0.0, 0.0); NODES]; m];
            for (j, &xj) in xs.iter().enumerate() {
                x[0] = xj;
                let rv = (self.rho.evaluate)(x);
                self.kernel.eval(rv, &mut kbuf);
                if kbuf.iter().any(|w| w.abs() > 0.0) && rv.abs() <= self.kernel.submersivity_band() {
                    let g = (self.rho.gradient)(x);
                    let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm < SUBMERSIVITY_FLOOR {
                        return Err(Error::NotSubmersive(x.to_vec()));
                    }
                }
                let f = (self.phi.evaluate)(x);
                for k in 0..m {
                    samples[k][j] = f * kbuf[k];
                }
            }
            self.charge(NODES)?;
            let panels: Vec<_> = samples.iter().map(|s| combine(a, b, s)).collect();
            let err = panels.iter().map(|p| p.error).fold(0.0, f64::max);
            if !accept(&panels, per_len * (b - a)) && depth < MAX_DEPTH {
                let c = 0.5 * (a + b);
                stack.push((c, b, depth + 1));
                stack.push((a, c, depth + 1));
                continue;
            }
            for k in 0..m {
                vals[k].push(panels[k].value);
            }
            err_total += err;
        }
        Ok((vals.iter().map(|v| pairwise_sum(v)).collect(), err_total))
    }
}
