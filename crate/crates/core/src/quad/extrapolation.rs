//! Sequence acceleration: polynomial (Richardson/Neville) extrapolation to a
//! zero parameter, and Wynn's epsilon algorithm for partial sums.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Outcome of extrapolating I(ε_k) to ε = 0.
#[derive(Debug, Clone)]
pub struct Extrapolation {
    pub value: Complex64,
    /// |last diagonal entry - previous diagonal entry|.
    pub error: f64,
    /// Leading order p in I(ε) - I(0) ~ ε^p, from the last three raw values.
    pub order: f64,
    /// Diagonal of the Neville table.
    pub diagonal: Vec<Complex64>,
}

/// Neville extrapolation of values[k] = I(eps[k]) to ε = 0.
///
/// `noise` is the absolute accuracy of the inputs; successive diagonal
/// differences that grow while above the amplified noise level are reported
/// as non-contraction.
pub fn richardson(eps: &[f64], values: &[Complex64], noise: f64) -> Result<Extrapolation> {
    let n = values.len();
    if n < 3 || eps.len() != n {
        return Err(Error::Domain(format!(
            "extrapolation needs at least 3 matching samples, got {} values and {} parameters",
            n,
            eps.len()
        )));
    }
    let mut row: Vec<Complex64> = vec![values[0]];
    let mut diagonal = vec![values[0]];
    for i in 1..n {
        let mut next = Vec::with_capacity(i + 1);
        next.push(values[i]);
        for j in 1..=i {
            let t = next[j - 1] + (next[j - 1] - row[j - 1]) * (eps[i] / (eps[i - j] - eps[i]));
            next.push(t);
        }
        diagonal.push(next[i]);
        row = next;
    }

    let d = |k: usize| (diagonal[k] - diagonal[k - 1]).norm();
    let error = d(n - 1);
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 100.0 * noise + 1e-13 * scale;
    if n >= 3 && error > d(n - 2) && error > floor {
        return Err(Error::NonConvergentExtrapolation(format!(
            "diagonal differences {:e} -> {:e} do not contract",
            d(n - 2),
            error
        )));
    }

    let d1 = (values[n - 2] - values[n - 3]).norm();
    let d2 = (values[n - 1] - values[n - 2]).norm();
    let order = if d1 > 0.0 && d2 > 0.0 {
        (d1 / d2).ln() / (eps[n - 2] / eps[n - 1]).ln()
    } else {
        f64::NAN
    };
    Ok(Extrapolation { value: diagonal[n - 1], error, order, diagonal })
}

/// Wynn's epsilon algorithm applied to partial sums. Returns the accelerated
/// limit and an error estimate.
pub fn wynn_epsilon(sums: &[Complex64]) -> (Complex64, f64) {
    let n = sums.len();
    if n == 0 {
        return (Complex64::new(0.0, 0.0), f64::INFINITY);
    }
    if n < 3 {
        let e = if n == 2 { (sums[1] - sums[0]).norm() } else { f64::INFINITY };
        return (sums[n - 1], e);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut prev: Vec<Complex64> = vec![zero; n + 1];
    let mut cur: Vec<Complex64> = sums.to_vec();
    let mut best = sums[n - 1];
    let mut best_err = (sums[n - 1] - sums[n - 2]).norm();
    let mut k = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for m in 0..cur.len() - 1 {
            let diff = cur[m + 1] - cur[m];
            if diff.norm() == 0.0 {
                return (cur[m + 1], (cur[m + 1] - best).norm());
            }
            next.push(prev[m + 1] + diff.inv());
        }
        k += 1;
        prev = cur;
        cur = next;
        if k % 2 == 0 && cur.len() >= 2 {
            let last = cur[cur.len() - 1];
            let err = (last - cur[cur.len() - 2]).norm();
            if err < best_err {
                best = last;
                best_err = err;
            }
        }
    }
    (best, best_err)
}
