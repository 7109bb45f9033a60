//! The built-in identities. Each left-hand side carries its printed
//! normalization; right-hand sides come from closed forms or
//! [`crate::oracles`].

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ladder_tolerance, Constraint, Derived, IdentityCase, Lhs, ParamDomain, ParamRange, Params};
use crate::error::{Error, Result};
use crate::gamma::{gamma, reciprocal_gamma};
use crate::mb::{DecayClass, ExtraFactor, GammaFactor, MBIntegrand, PowerFactor};
use crate::oracles::{
    bessel_i, bessel_j_poisson, bessel_k, cosh_transform_k, gauss_2f1, hecke_rhs, kummer_m, kummer_u,
    sech_power_rhs,
};

use DecayClass::{AbsoluteExponential as Exp, AbsolutePolynomial as Poly, Conditional as Cond};

/// Catalog ids in catalog order.
pub const CATALOG_IDS: [&str; 21] = [
    "ramanujan-3.3",
    "barnes-first-3.4",
    "ramanujan-3.5",
    "ramanujan-ratio-3.6",
    "ratio-3.7",
    "gamma-ratio-ft-3.8",
    "hardy-3.9i",
    "hardy-3.9ii",
    "kummer-m-3.10",
    "kummer-u-3.10",
    "gauss-3.11",
    "barnes-second-3.12",
    "hecke-4.1",
    "hankel-4.2",
    "bessel-j-4.3",
    "sonine-4.4",
    "basset-4.5-line",
    "macdonald-4.6",
    "cahen-4.7i",
    "laplace-4.7ii",
    "gammaft-4.7iii",
];

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn g(x: f64) -> Result<f64> {
    Ok(gamma(re(x))?.re)
}

fn rg(x: f64) -> f64 {
    reciprocal_gamma(re(x)).re
}

fn up(offset: f64) -> Result<GammaFactor> {
    GammaFactor::numerator(re(offset), 1.0)
}

fn down(offset: f64) -> Result<GammaFactor> {
    GammaFactor::numerator(re(offset), -1.0)
}

fn over_up(offset: f64) -> Result<GammaFactor> {
    GammaFactor::denominator(re(offset), 1.0)
}

fn over_down(offset: f64) -> Result<GammaFactor> {
    GammaFactor::denominator(re(offset), -1.0)
}

/// base^{w0 + i w1 t}
fn pow(base: f64, w0: f64, w1: f64) -> Result<PowerFactor> {
    PowerFactor::new(re(base), re(w0), w1)
}

/// e^{-iξt}
fn fourier(xi: f64) -> PowerFactor {
    PowerFactor::exponential(re(0.0), -xi)
}

fn integrand(gammas: Vec<Result<GammaFactor>>, powers: Vec<PowerFactor>) -> Result<MBIntegrand> {
    MBIntegrand::new(re(1.0), gammas.into_iter().collect::<Result<_>>()?, powers, None)
}

const TWO_PI: f64 = 2.0 * PI;

fn range(name: &'static str, lo: f64, hi: f64) -> ParamRange {
    ParamRange { name, lo, hi }
}

fn domain(ranges: Vec<ParamRange>, constraints: Vec<Constraint>) -> ParamDomain {
    ParamDomain { ranges, derived: vec![], constraints }
}

fn entry(
    id: &'static str,
    class: DecayClass,
    domain: ParamDomain,
    lhs_builder: fn(&Params) -> Result<Lhs>,
    rhs_evaluator: fn(&Params) -> Result<Complex64>,
) -> IdentityCase {
    IdentityCase { id, lhs_builder, rhs_evaluator, domain, convergence_class: class, tol: ladder_tolerance(class) }
}

/// The case with the given id.
pub fn case_by_id(id: &str) -> Result<IdentityCase> {
    builtin_catalog().into_iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// All 21 cases in catalog order.
pub fn builtin_catalog() -> Vec<IdentityCase> {
    vec![
        entry(
            "ramanujan-3.3",
            Exp,
            domain(vec![range("a", 0.2, 3.0), range("xi", -3.0, 3.0)], vec![]),
            |p| {
                let a = p.get("a");
                Ok(Lhs::new(integrand(vec![up(a), down(a)], vec![fourier(p.get("xi"))])?, re(1.0)))
            },
            |p| sech_power_rhs(re(p.get("a")), p.get("xi")),
        ),
        entry(
            "barnes-first-3.4",
            Exp,
            domain(
                vec![range("a", 0.2, 3.0), range("b", 0.2, 3.0), range("c", 0.2, 3.0), range("d", 0.2, 3.0)],
                vec![],
            ),
            |p| {
                let f = integrand(vec![up(p.get("a")), up(p.get("b")), down(p.get("c")), down(p.get("d"))], vec![])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| {
                let (a, b, c, d) = (p.get("a"), p.get("b"), p.get("c"), p.get("d"));
                Ok(re(g(a + c)? * g(a + d)? * g(b + c)? * g(b + d)? * rg(a + b + c + d)))
            },
        ),
        entry(
            "ramanujan-3.5",
            Exp,
            domain(vec![range("a", 0.2, 3.0), range("b", 0.2, 3.0)], vec![]),
            |p| {
                let (a, b) = (p.get("a"), p.get("b"));
                let f = integrand(vec![up(a), down(a), up(b), down(b)], vec![])?;
                Ok(Lhs::new(f, re(1.0 / PI.sqrt())))
            },
            |p| {
                let (a, b) = (p.get("a"), p.get("b"));
                Ok(re(g(a)? * g(a + 0.5)? * g(b)? * g(b + 0.5)? * g(a + b)? * rg(a + b + 0.5)))
            },
        ),
        entry(
            "ramanujan-ratio-3.6",
            Poly,
            domain(
                vec![range("a", 0.2, 2.0), range("b", 0.75, 4.5)],
                vec![Constraint { description: "2(b - a) >= 1.1", holds: |p| 2.0 * (p.get("b") - p.get("a")) >= 1.1 }],
            ),
            |p| {
                let (a, b) = (p.get("a"), p.get("b"));
                let f = integrand(vec![up(a), down(a), over_up(b), over_down(b)], vec![])?;
                Ok(Lhs::new(f, re(1.0 / PI.sqrt())))
            },
            |p| {
                let (a, b) = (p.get("a"), p.get("b"));
                Ok(re(g(a)? * g(a + 0.5)? * g(b - a - 0.5)? * rg(b) * rg(b - 0.5) * rg(b - a)))
            },
        ),
        entry(
            "ratio-3.7",
            Poly,
            domain(
                vec![range("a", 0.2, 2.0), range("c", 0.2, 2.0), range("b", 0.25, 4.0), range("d", 0.25, 4.0)],
                vec![
                    Constraint { description: "b - a >= 0.05", holds: |p| p.get("b") - p.get("a") >= 0.05 },
                    Constraint { description: "d - c >= 0.05", holds: |p| p.get("d") - p.get("c") >= 0.05 },
                    Constraint {
                        description: "b + d - a - c >= 1.1",
                        holds: |p| p.get("b") + p.get("d") - p.get("a") - p.get("c") >= 1.1,
                    },
                ],
            ),
            |p| {
                let (a, b, c, d) = (p.get("a"), p.get("b"), p.get("c"), p.get("d"));
                let f = integrand(vec![up(a), down(c), over_up(b), over_down(d)], vec![])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| {
                let (a, b, c, d) = (p.get("a"), p.get("b"), p.get("c"), p.get("d"));
                Ok(re(g(a + c)? * g(b + d - a - c - 1.0)? * rg(b + d - 1.0) * rg(b - a) * rg(d - c)))
            },
        ),
        entry(
            "gamma-ratio-ft-3.8",
            Cond,
            domain(
                vec![range("a", 0.2, 2.0), range("b", 0.8, 4.5), range("xi", -3.0, 3.0)],
                vec![
                    Constraint {
                        description: "0.6 <= b - a <= 2.5",
                        holds: |p| (0.6..=2.5).contains(&(p.get("b") - p.get("a"))),
                    },
                    Constraint { description: "|xi| >= 0.2", holds: |p| p.get("xi").abs() >= 0.2 },
                ],
            ),
            |p| {
                let (a, b, xi) = (p.get("a"), p.get("b"), p.get("xi"));
                let f = integrand(vec![up(a), over_up(b)], vec![fourier(xi)])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)).with_gap(xi.abs()))
            },
            |p| {
                let (a, b, xi) = (p.get("a"), p.get("b"), p.get("xi"));
                if xi > 0.0 {
                    return Ok(re(0.0));
                }
                Ok(re((xi * a).exp() * (-xi.exp_m1()).powf(b - a - 1.0) * rg(b - a)))
            },
        ),
        entry(
            "hardy-3.9i",
            Exp,
            domain(
                vec![range("p", 0.2, 3.0), range("q", 0.3, 4.0), range("a", -2.9, 3.8), range("y", 0.2, 5.0)],
                vec![
                    Constraint { description: "a + p >= 0.1", holds: |p| p.get("a") + p.get("p") >= 0.1 },
                    Constraint {
                        description: "q - p - a >= 0.1",
                        holds: |p| p.get("q") - p.get("p") - p.get("a") >= 0.1,
                    },
                ],
            ),
            |p| {
                let (pp, q, a, y) = (p.get("p"), p.get("q"), p.get("a"), p.get("y"));
                let f = integrand(vec![up(a + pp), down(q - pp - a)], vec![pow(y, -a, -1.0)?])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| {
                let (pp, q, y) = (p.get("p"), p.get("q"), p.get("y"));
                Ok(re(g(q)? * y.powf(pp) / (1.0 + y).powf(q)))
            },
        ),
        entry(
            "hardy-3.9ii",
            Cond,
            domain(
                vec![range("a", 0.2, 3.0), range("q", 0.3, 2.5), range("x", 0.1, 4.0)],
                vec![Constraint {
                    description: "x <= 0.9 or x >= 1.2",
                    holds: |p| p.get("x") <= 0.9 || p.get("x") >= 1.2,
                }],
            ),
            |p| {
                let (a, q, x) = (p.get("a"), p.get("q"), p.get("x"));
                let f = integrand(vec![up(a), over_up(a + q)], vec![pow(x, -a, -1.0)?])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)).with_gap(x.ln().abs()))
            },
            |p| {
                let (q, x) = (p.get("q"), p.get("x"));
                if x > 1.0 {
                    return Ok(re(0.0));
                }
                Ok(re((1.0 - x).powf(q - 1.0) * rg(q)))
            },
        ),
        entry(
            "kummer-m-3.10",
            Exp,
            domain(vec![range("a", 1.1, 3.0), range("b", 1.2, 5.0), range("x", 0.1, 5.0)], vec![Constraint {
                description: "b - a >= 0.1",
                holds: |p| p.get("b") - p.get("a") >= 0.1,
            }]),
            |p| {
                let (a, b, x) = (p.get("a"), p.get("b"), p.get("x"));
                let f = integrand(vec![down(1.0), up(a - 1.0), over_up(b - 1.0)], vec![pow(x, -1.0, 1.0)?])?;
                Ok(Lhs::new(f, re(g(b)? * rg(a) / TWO_PI)))
            },
            |p| kummer_m(re(p.get("a")), re(p.get("b")), -p.get("x")),
        ),
        entry(
            "kummer-u-3.10",
            Exp,
            domain(vec![range("a", 1.1, 3.0), range("b", -1.0, 2.9), range("x", 0.1, 5.0)], vec![Constraint {
                description: "a - b >= 0.1",
                holds: |p| p.get("a") - p.get("b") >= 0.1,
            }]),
            |p| {
                let (a, b, x) = (p.get("a"), p.get("b"), p.get("x"));
                let f = integrand(vec![down(1.0), up(a - 1.0), up(a - b)], vec![pow(x, 0.0, -1.0)?])?;
                Ok(Lhs::new(f, re(x.powf(1.0 - a) * rg(a) * rg(1.0 + a - b) / TWO_PI)))
            },
            |p| kummer_u(re(p.get("a")), re(p.get("b")), p.get("x")),
        ),
        entry(
            "gauss-3.11",
            Exp,
            domain(
                vec![range("a", 1.1, 3.0), range("b", 1.1, 3.0), range("c", 1.2, 5.0), range("z", 0.1, 5.0)],
                vec![Constraint { description: "c - a >= 0.1", holds: |p| p.get("c") - p.get("a") >= 0.1 }],
            ),
            |p| {
                let (a, b, c, z) = (p.get("a"), p.get("b"), p.get("c"), p.get("z"));
                let f = integrand(vec![up(a - 1.0), up(b - 1.0), down(1.0), over_up(c - 1.0)], vec![pow(z, -1.0, 1.0)?])?;
                Ok(Lhs::new(f, re(g(c)? * rg(a) * rg(b) / TWO_PI)))
            },
            |p| gauss_2f1(re(p.get("a")), re(p.get("b")), re(p.get("c")), -p.get("z")),
        ),
        entry(
            "barnes-second-3.12",
            Exp,
            ParamDomain {
                ranges: vec![
                    range("a", 0.2, 2.0),
                    range("b", 0.2, 2.0),
                    range("c", 0.2, 2.0),
                    range("lambda", 0.2, 2.0),
                    range("mu", 0.2, 2.5),
                ],
                derived: vec![Derived {
                    name: "nu",
                    description: "nu = a + b + c + lambda + mu",
                    solve: |p| p.get("a") + p.get("b") + p.get("c") + p.get("lambda") + p.get("mu"),
                }],
                constraints: vec![Constraint { description: "mu > lambda", holds: |p| p.get("mu") > p.get("lambda") }],
            },
            |p| {
                let (a, b, c, l, m, n) = (p.get("a"), p.get("b"), p.get("c"), p.get("lambda"), p.get("mu"), p.get("nu"));
                let f = integrand(vec![up(a), up(b), up(c), down(l), down(m), over_up(n)], vec![])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| {
                let (a, b, c, l, m, n) = (p.get("a"), p.get("b"), p.get("c"), p.get("lambda"), p.get("mu"), p.get("nu"));
                let top = g(l + a)? * g(l + b)? * g(l + c)? * g(m + a)? * g(m + b)? * g(m + c)?;
                Ok(re(top * rg(n - a) * rg(n - b) * rg(n - c)))
            },
        ),
        entry(
            "hecke-4.1",
            Exp,
            domain(
                vec![range("p", 0.2, 5.0), range("q", 0.2, 5.0), range("a", -1.0, 1.0), range("b", -1.0, 1.0), range("c", -0.9, 2.5)],
                vec![
                    Constraint { description: "c + a > 0.1", holds: |p| p.get("c") + p.get("a") > 0.1 },
                    Constraint { description: "c + b > 0.1", holds: |p| p.get("c") + p.get("b") > 0.1 },
                ],
            ),
            |p| {
                let (pp, q, a, b, c) = (p.get("p"), p.get("q"), p.get("a"), p.get("b"), p.get("c"));
                let f = integrand(vec![up(a + c), up(b + c)], vec![pow(pp, -a - c, -1.0)?, pow(q, -b - c, -1.0)?])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| Ok(re(hecke_rhs(p.get("p"), p.get("q"), p.get("a"), p.get("b"))?)),
        ),
        entry(
            "hankel-4.2",
            Exp,
            domain(
                vec![range("lambda", -1.5, 2.5), range("r", 0.1, 2.0), range("x", 0.2, 4.0)],
                vec![Constraint { description: "lambda + r >= 0.1", holds: |p| p.get("lambda") + p.get("r") >= 0.1 }],
            ),
            |p| {
                let (l, r, x) = (p.get("lambda"), p.get("r"), p.get("x"));
                let f = integrand(vec![up(l + r), up(r)], vec![pow(x, -l - 2.0 * r, -2.0)?])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| Ok(re(cosh_transform_k(p.get("lambda"), p.get("x"))?)),
        ),
        entry(
            "bessel-j-4.3",
            Cond,
            domain(
                vec![range("lambda", 0.0, 2.0), range("r", 0.1, 0.9), range("s", 0.2, 4.0)],
                vec![Constraint { description: "r >= 0.1 - lambda", holds: |p| p.get("r") >= 0.1 - p.get("lambda") }],
            ),
            |p| {
                let (l, r, s) = (p.get("lambda"), p.get("r"), p.get("s"));
                let f = integrand(vec![up(l + r), over_down(1.0 - r)], vec![pow(s, -l - 2.0 * r, -2.0)?])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| bessel_j_poisson(re(p.get("lambda")), 2.0 * p.get("s")),
        ),
        entry(
            "sonine-4.4",
            Poly,
            domain(vec![range("a", 0.6, 3.0), range("c", 0.2, 2.0), range("x", 0.2, 5.0)], vec![]),
            |p| {
                let (a, c, x) = (p.get("a"), p.get("c"), p.get("x"));
                let extra = ExtraFactor::new(
                    move |t| {
                        let z = Complex64::new(c, t);
                        (-(a + 1.0) * z.ln() - x * x / (4.0 * z)).exp()
                    },
                    0.0,
                    0.0,
                    -a - 1.0,
                    -a - 1.0,
                )?;
                let f = MBIntegrand::new(re(1.0), vec![], vec![PowerFactor::exponential(re(c), 1.0)], Some(extra))?;
                Ok(Lhs::new(f, re((0.5 * x).powf(a) / TWO_PI)))
            },
            |p| bessel_j_poisson(re(p.get("a")), p.get("x")),
        ),
        entry(
            "basset-4.5-line",
            Poly,
            domain(vec![range("p", 0.5, 3.0), range("c", 0.2, 2.0), range("x", 0.2, 3.0)], vec![]),
            |p| {
                let (pp, c, x) = (p.get("p"), p.get("c"), p.get("x"));
                let extra = ExtraFactor::new(
                    move |t| {
                        let z = Complex64::new(c, t);
                        (-(pp + 1.0) * z.ln() + x * x / z).exp()
                    },
                    0.0,
                    0.0,
                    -pp - 1.0,
                    -pp - 1.0,
                )?;
                let f = MBIntegrand::new(re(1.0), vec![], vec![PowerFactor::exponential(re(c), 1.0)], Some(extra))?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| {
                let (pp, x) = (p.get("p"), p.get("x"));
                Ok(re(x.powf(-pp) * bessel_i(pp, 2.0 * x)?))
            },
        ),
        entry(
            "macdonald-4.6",
            Exp,
            domain(vec![range("p", 0.1, 3.0), range("c", 0.1, 2.0), range("x", 0.2, 4.0)], vec![]),
            |p| {
                let (pp, c, x) = (p.get("p"), p.get("c"), p.get("x"));
                let f = integrand(vec![up(c), up(c + pp)], vec![pow(x, -2.0 * c, -2.0)?])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| {
                let (pp, x) = (p.get("p"), p.get("x"));
                Ok(re(2.0 * x.powf(pp) * bessel_k(pp, 2.0 * x)?))
            },
        ),
        entry(
            "cahen-4.7i",
            Exp,
            domain(vec![range("c", 0.2, 3.0), range("y", 0.2, 5.0)], vec![]),
            |p| {
                let (c, y) = (p.get("c"), p.get("y"));
                let f = integrand(vec![up(c)], vec![pow(y, -c, -1.0)?])?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)))
            },
            |p| Ok(re((-p.get("y")).exp())),
        ),
        entry(
            "laplace-4.7ii",
            Cond,
            domain(vec![range("c", 0.2, 3.0), range("z", 0.3, 3.0)], vec![]),
            |p| {
                let (c, z) = (p.get("c"), p.get("z"));
                let extra = ExtraFactor::new(move |t| (-z * Complex64::new(c, t).ln()).exp(), 0.0, 0.0, -z, -z)?;
                let f = MBIntegrand::new(re(1.0), vec![], vec![PowerFactor::exponential(re(c), 1.0)], Some(extra))?;
                Ok(Lhs::new(f, re(1.0 / TWO_PI)).with_gap(1.0))
            },
            |p| Ok(re(rg(p.get("z")))),
        ),
        entry(
            "gammaft-4.7iii",
            Exp,
            domain(vec![range("a", 0.2, 3.0), range("xi", -3.0, 2.0)], vec![]),
            |p| {
                let (a, xi) = (p.get("a"), p.get("xi"));
                Ok(Lhs::new(integrand(vec![up(a)], vec![fourier(xi)])?, re(1.0 / TWO_PI)))
            },
            |p| {
                let (a, xi) = (p.get("a"), p.get("xi"));
                Ok(re((-xi.exp() + a * xi).exp()))
            },
        ),
    ]
}
