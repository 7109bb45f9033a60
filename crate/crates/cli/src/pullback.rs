use std::time::Instant;

use clap::Args;
use mbkit::pullback::examples::{example, EXAMPLE_NAMES};
use mbkit::pullback::{oscillatory_check, pullback_mollified, pullback_surface, MollifierSchedule};

use crate::{emit, Failure, Status};

#[derive(Args, Debug)]
pub struct PullbackArgs {
    /// Example phase: line, hyperbola, parabola, gelfand or empty.
    pub example: String,
    /// Cut-off of the oscillatory frequency integral.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Gaussian damping of the oscillatory frequency integral.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Skip the oscillatory cross-check.
    #[arg(long)]
    pub no_oscillatory: bool,
}

/// Oscillatory cut-off and damping by phase dimension.
fn oscillatory_defaults(dim: usize) -> (f64, f64) {
    if dim == 1 {
        (1e5, 4e-9)
    } else {
        (400.0, 2.5e-4)
    }
}

fn core(e: mbkit::Error) -> Failure {
    match e {
        mbkit::Error::Domain(m) => Failure::usage(m),
        other => Failure::fail(other.to_string()),
    }
}

pub fn run(args: PullbackArgs) -> Result<Status, Failure> {
    if !EXAMPLE_NAMES.contains(&args.example.as_str()) {
        return Err(Failure::usage(format!(
            "unknown example `{}`; expected one of {}",
            args.example,
            EXAMPLE_NAMES.join(", ")
        )));
    }
    let ex = example(&args.example).map_err(core)?;
    let mut out = format!("example: {}\nexact: {:.16e}\n", ex.name, ex.exact);

    let clock = Instant::now();
    let m = pullback_mollified(&ex.rho, &ex.phi, MollifierSchedule::default()).map_err(core)?;
    out += &format!(
        "mollified: {:.16e} (error estimate {:.2e}, order {:.3}, {} evaluations, {:.2}s)\n",
        m.value.re,
        m.error_estimate,
        m.order,
        m.evaluations,
        clock.elapsed().as_secs_f64()
    );

    let clock = Instant::now();
    let s = pullback_surface(&ex.rho, &ex.charts, &ex.phi).map_err(core)?;
    out += &format!("surface: {:.16e} ({:.2}s)\n", s.re, clock.elapsed().as_secs_f64());
    out += &format!("|mollified - surface|: {:.3e}\n", (m.value - s).norm());

    if !args.no_oscillatory && ex.rho.dim <= 2 {
        let (t0, e0) = oscillatory_defaults(ex.rho.dim);
        let (t, eps) = (args.t_max.unwrap_or(t0), args.eps.unwrap_or(e0));
        let clock = Instant::now();
        let o = oscillatory_check(&ex.rho, &ex.phi, t, eps).map_err(core)?;
        out += &format!("oscillatory: {:.16e} (T = {t}, eps = {eps}, {:.2}s)\n", o.re, clock.elapsed().as_secs_f64());
        out += &format!("|oscillatory - surface|: {:.3e}\n", (o - s).norm());
    }
    emit(None, &out)?;
    Ok(Status::Pass)
}
