use clap::{Args, ValueEnum};
use mbkit::gamma::{beta, beta_binet, gamma};
use mbkit::identities::{case_by_id, integrate_lhs, Params};
use mbkit::mb::QuadResult;
use mbkit::oracles;
use num_complex::Complex64;

use crate::{Failure, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// K_p(x)
    Besselk,
    /// I_p(x)
    Besseli,
    /// J_p(x)
    Besselj,
    /// M(a, b, x)
    Kummerm,
    /// U(a, b, x)
    Kummeru,
    /// 2F1(a, b; c; z)
    #[value(name = "2f1")]
    Hyp2f1,
    /// Γ(re + i im)
    Gamma,
    /// B(p, q)
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Line integral of a gamma product.
    Mb,
    /// Independent reference evaluation.
    Oracle,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long, value_enum, default_value = "oracle")]
    pub method: Method,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub re: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub im: f64,
}

/// Contour abscissa used for the Bessel line integrals.
const CONTOUR: f64 = 1.0;

/// Outcome of one evaluation.
pub struct Evaluation {
    pub value: Complex64,
    /// Quadrature details when the line-integral route was taken.
    pub quad: Option<QuadResult>,
}

fn need(name: &str, v: Option<f64>) -> Result<f64, Failure> {
    match v {
        Some(v) if v.is_finite() => Ok(v),
        Some(v) => Err(Failure::usage(format!("--{name} must be finite, got {v}"))),
        None => Err(Failure::usage(format!("--{name} is required"))),
    }
}

fn require(ok: bool, message: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::usage(message.to_string()))
    }
}

fn core(e: mbkit::Error) -> Failure {
    match e {
        mbkit::Error::Domain(m) => Failure::usage(m),
        other => Failure::fail(other.to_string()),
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Line integral of catalog case `id` at `params`, times `factor`.
fn line(id: &str, params: Vec<(&'static str, f64)>, factor: f64) -> Result<Evaluation, Failure> {
    let case = case_by_id(id).expect("catalog case exists");
    let lhs = (case.lhs_builder)(&Params(params)).map_err(core)?;
    let r = integrate_lhs(&lhs, 1.0).map_err(core)?;
    Ok(Evaluation {
        value: r.value * factor,
        quad: Some(QuadResult { value: r.value * factor, error_estimate: r.error_estimate * factor.abs(), ..r }),
    })
}

fn oracle(v: Complex64) -> Evaluation {
    Evaluation { value: v, quad: None }
}

/// Evaluates `args.function` by the requested method.
pub fn evaluate(args: &EvalArgs) -> Result<Evaluation, Failure> {
    let mb = args.method == Method::Mb;
    match args.function {
        Function::Besselk => {
            let (p, x) = (need("p", args.p)?, need("x", args.x)?);
            require(x > 0.0, "besselk requires x > 0")?;
            let p = p.abs();
            if !mb {
                return Ok(oracle(re(oracles::bessel_k(p, x).map_err(core)?)));
            }
            // 2 (x/2)^p K_p(x) is the Macdonald line integral at x/2.
            let h = 0.5 * x;
            line("macdonald-4.6", vec![("p", p), ("c", CONTOUR), ("x", h)], 0.5 * h.powf(-p))
        }
        Function::Besseli => {
            let (p, x) = (need("p", args.p)?, need("x", args.x)?);
            require(x > 0.0, "besseli requires x > 0")?;
            if !mb {
                return Ok(oracle(re(oracles::bessel_i(p, x).map_err(core)?)));
            }
            require(p > 0.0, "the besseli line integral requires p > 0")?;
            let h = 0.5 * x;
            line("basset-4.5-line", vec![("p", p), ("c", CONTOUR), ("x", h)], h.powf(p))
        }
        Function::Besselj => {
            let (p, x) = (need("p", args.p)?, need("x", args.x)?);
            require(x > 0.0, "besselj requires x > 0")?;
            if !mb {
                return Ok(oracle(oracles::bessel_j_poisson(re(p), x).map_err(core)?));
            }
            if p > 0.0 {
                line("sonine-4.4", vec![("a", p), ("c", CONTOUR), ("x", x)], 1.0)
            } else {
                require(p > -1.0, "the besselj line integral requires p > -1")?;
                let r = 0.5 * (1.0 - p);
                line("bessel-j-4.3", vec![("lambda", p), ("r", r), ("s", 0.5 * x)], 1.0)
            }
        }
        Function::Kummerm => {
            let (a, b, x) = (need("a", args.a)?, need("b", args.b)?, need("x", args.x)?);
            if !mb {
                return Ok(oracle(oracles::kummer_m(re(a), re(b), x).map_err(core)?));
            }
            require(x < 0.0 && a > 1.0 && b > a, "the kummerm line integral requires x < 0 and b > a > 1")?;
            line("kummer-m-3.10", vec![("a", a), ("b", b), ("x", -x)], 1.0)
        }
        Function::Kummeru => {
            let (a, b, x) = (need("a", args.a)?, need("b", args.b)?, need("x", args.x)?);
            if !mb {
                return Ok(oracle(oracles::kummer_u(re(a), re(b), x).map_err(core)?));
            }
            require(x > 0.0 && a > 1.0 && a > b, "the kummeru line integral requires x > 0, a > 1 and a > b")?;
            line("kummer-u-3.10", vec![("a", a), ("b", b), ("x", x)], 1.0)
        }
        Function::Hyp2f1 => {
            let (a, b, c, z) = (need("a", args.a)?, need("b", args.b)?, need("c", args.c)?, need("z", args.z)?);
            if !mb {
                return Ok(oracle(oracles::gauss_2f1(re(a), re(b), re(c), z).map_err(core)?));
            }
            require(z < 0.0 && a > 1.0 && b > 1.0 && c > a, "the 2f1 line integral requires z < 0, a, b > 1 and c > a")?;
            line("gauss-3.11", vec![("a", a), ("b", b), ("c", c), ("z", -z)], 1.0)
        }
        Function::Gamma => {
            require(!mb, "gamma has no line-integral route; use --method oracle")?;
            Ok(oracle(gamma(Complex64::new(need("re", args.re)?, args.im)).map_err(core)?))
        }
        Function::Beta => {
            let (p, q) = (need("p", args.p)?, need("q", args.q)?);
            let v = if mb { beta_binet(re(p), re(q), 1e-12) } else { beta(re(p), re(q)) };
            Ok(oracle(v.map_err(core)?))
        }
    }
}

fn show(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.16e}", z.re)
    } else {
        format!("{:.16e} {:+.16e}i", z.re, z.im)
    }
}

pub fn run(args: EvalArgs) -> Result<Status, Failure> {
    let e = evaluate(&args)?;
    let mut out = format!("value: {}\n", show(e.value));
    if let Some(q) = &e.quad {
        out += &format!(
            "class: {}\ntruncation_t: {:.6e}\nevaluations: {}\nerror_estimate: {:.3e}\n",
            q.class_used.as_str(),
            q.truncation_t,
            q.evaluations,
            q.error_estimate
        );
        if let Some(order) = q.extrapolation_order {
            out += &format!("extrapolation_order: {order:.3}\n");
        }
    }
    crate::emit(None, &out)?;
    Ok(Status::Pass)
}
