//! Quadrature building blocks shared by the line-integral, oracle and
//! pull-back code.

pub mod double_exponential;
pub mod extrapolation;
pub mod gauss_kronrod;

use num_complex::Complex64;

/// Pairwise (cascade) summation. The tree is fixed by position, so the
/// result depends only on the order of `xs`.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// Real counterpart of [`pairwise_sum`].
pub fn pairwise_sum_real(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum_real(l) + pairwise_sum_real(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let xs: Vec<Complex64> = (0..37).map(|k| Complex64::new(k as f64, -(k as f64))).collect();
        assert_eq!(pairwise_sum(&xs), Complex64::new(666.0, -666.0));
        assert_eq!(pairwise_sum_real(&[1.0, 2.0, 3.0]), 6.0);
        assert_eq!(pairwise_sum(&[]), Complex64::new(0.0, 0.0));
    }
}
