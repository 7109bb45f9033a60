use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};

use crate::eval::{evaluate, EvalArgs, Function, Method};
use crate::{emit, Failure, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFunction {
    Besselk,
    Besselj,
    #[value(name = "2f1")]
    Hyp2f1,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "besselk")]
    pub function: BenchFunction,
    /// Number of grid points.
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn blank(function: Function) -> EvalArgs {
    EvalArgs {
        function,
        method: Method::Oracle,
        p: None,
        q: None,
        x: None,
        a: None,
        b: None,
        c: None,
        z: None,
        re: None,
        im: 0.0,
    }
}

/// Grid point `k` of `n` for `f`, spread evenly over a box inside the
/// domain of the line-integral route.
fn point(f: BenchFunction, k: usize, n: usize) -> (EvalArgs, String) {
    let s = if n > 1 { k as f64 / (n - 1) as f64 } else { 0.5 };
    match f {
        BenchFunction::Besselk => {
            let mut a = blank(Function::Besselk);
            let (p, x) = (0.2 + 2.3 * s, 0.5 + 4.5 * (1.0 - s));
            (a.p, a.x) = (Some(p), Some(x));
            (a, format!("p={p};x={x}"))
        }
        BenchFunction::Besselj => {
            let mut a = blank(Function::Besselj);
            let (p, x) = (0.5 + 2.0 * s, 0.5 + 5.5 * s);
            (a.p, a.x) = (Some(p), Some(x));
            (a, format!("p={p};x={x}"))
        }
        BenchFunction::Hyp2f1 => {
            let mut a = blank(Function::Hyp2f1);
            let (av, bv, cv, z) = (1.2 + 1.3 * s, 1.5 + s, 3.0 + s, -0.2 - 3.8 * s);
            (a.a, a.b, a.c, a.z) = (Some(av), Some(bv), Some(cv), Some(z));
            (a, format!("a={av};b={bv};c={cv};z={z}"))
        }
    }
}

fn name(f: BenchFunction) -> &'static str {
    match f {
        BenchFunction::Besselk => "besselk",
        BenchFunction::Besselj => "besselj",
        BenchFunction::Hyp2f1 => "2f1",
    }
}

pub fn run(args: BenchArgs) -> Result<Status, Failure> {
    if args.points < 1 {
        return Err(Failure::usage("--points must be at least 1"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::io(e.to_string());
    w.write_record(["function", "params", "route", "wall_time", "value", "cross_route_rel_err"]).map_err(io)?;
    for k in 0..args.points {
        let (mut a, params) = point(args.function, k, args.points);
        let mut rows = Vec::with_capacity(2);
        for (method, route) in [(Method::Mb, "mb"), (Method::Oracle, "oracle")] {
            a.method = method;
            let clock = Instant::now();
            let v = evaluate(&a)?.value;
            rows.push((route, clock.elapsed().as_secs_f64(), v));
        }
        let err = (rows[0].2 - rows[1].2).norm() / rows[1].2.norm();
        for (route, t, v) in rows {
            w.write_record([
                name(args.function).to_string(),
                params.clone(),
                route.to_string(),
                format!("{t:.6e}"),
                format!("{:.16e}", v.re),
                format!("{err:.3e}"),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::io(e.to_string()))?;
    emit(args.output.as_deref(), &String::from_utf8(bytes).expect("csv is utf-8"))?;
    Ok(Status::Pass)
}
