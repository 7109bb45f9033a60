//! Faddeeva function w(z) = e^{-z²} erfc(-iz) in the upper half plane,
//! via Weideman's rational expansion.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

const N: usize = 36;

struct Expansion {
    l: f64,
    coeffs: [f64; N],
}

fn expansion() -> &'static Expansion {
    static CELL: OnceLock<Expansion> = OnceLock::new();
    CELL.get_or_init(|| {
        let m = 2 * N;
        let l = (N as f64 / std::f64::consts::SQRT_2).sqrt();
        let mut coeffs = [0.0; N];
        for (n, c) in coeffs.iter_mut().enumerate() {
            let order = (n + 1) as f64;
            let mut sum = 0.0;
            for k in -(m as i64) + 1..m as i64 {
                let theta = k as f64 * PI / m as f64;
                let t = l * (0.5 * theta).tan();
                let f = (-t * t).exp() * (l * l + t * t);
                sum += f * (order * theta).cos();
            }
            *c = sum / (2 * m) as f64;
        }
        Expansion { l, coeffs }
    })
}

/// w(z) for Im z ≥ 0.
pub fn faddeeva(z: Complex64) -> Complex64 {
    let e = expansion();
    let i = Complex64::new(0.0, 1.0);
    let denom = e.l - i * z;
    let zz = (e.l + i * z) / denom;
    let mut p = Complex64::new(0.0, 0.0);
    for c in e.coeffs.iter().rev() {
        p = p * zz + c;
    }
    2.0 * p / (denom * denom) + (1.0 / PI.sqrt()) / denom
}

/// (1/2π) ∫_{-T}^{T} e^{-εt² - itρ} dt in closed form.
pub fn damped_delta_kernel(rho: f64, t_max: f64, eps: f64) -> f64 {
    let a = eps.sqrt() * t_max;
    let b = rho / (2.0 * eps.sqrt());
    let tail = (Complex64::new(-a * a, -2.0 * a * b)).exp() * faddeeva(Complex64::new(-b, a));
    ((-b * b).exp() - tail.re) / (2.0 * (PI * eps).sqrt())
}
