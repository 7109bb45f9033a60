use std::path::PathBuf;

use clap::Args;
use mbkit::identities::{builtin_catalog, reports_to_json, verify_cases, VerificationReport, CATALOG_IDS};
use mbkit::mb::DecayClass;

use crate::config::{self, Format};
use crate::{emit, Failure, Status};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity to check; repeat for several. All identities when omitted.
    #[arg(long = "id", value_name = "ID")]
    pub ids: Vec<String>,
    /// Parameter samples per identity.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Base seed of the sampler.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file with defaults for the options above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_name = "TOL")]
    pub tol_exponential: Option<f64>,
    #[arg(long, value_name = "TOL")]
    pub tol_polynomial: Option<f64>,
    #[arg(long, value_name = "TOL")]
    pub tol_conditional: Option<f64>,
}

struct Settings {
    ids: Vec<String>,
    samples: usize,
    seed: u64,
    format: Format,
    output: Option<PathBuf>,
    tol: [Option<f64>; 3],
}

fn class_index(class: DecayClass) -> usize {
    match class {
        DecayClass::AbsoluteExponential => 0,
        DecayClass::AbsolutePolynomial => 1,
        DecayClass::Conditional => 2,
    }
}

fn settings(args: VerifyArgs) -> Result<Settings, Failure> {
    let file = match &args.config {
        Some(p) => config::load(p)?,
        None => Default::default(),
    };
    let mut tol = [None; 3];
    for (name, &v) in &file.tol {
        let slot = match name.as_str() {
            "absolute-exponential" | "exponential" => 0,
            "absolute-polynomial" | "polynomial" => 1,
            "conditional" => 2,
            _ => return Err(Failure::usage(format!("unknown convergence class `{name}` in config"))),
        };
        tol[slot] = Some(v);
    }
    for (slot, v) in [args.tol_exponential, args.tol_polynomial, args.tol_conditional].into_iter().enumerate() {
        if v.is_some() {
            tol[slot] = v;
        }
    }
    if let Some(bad) = tol.iter().flatten().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Failure::usage(format!("tolerance must be positive, got {bad}")));
    }
    let s = Settings {
        ids: if args.ids.is_empty() { file.id } else { args.ids },
        samples: args.samples.or(file.samples).unwrap_or(20),
        seed: args.seed.or(file.seed).unwrap_or(7),
        format: args.format.or(file.format).unwrap_or(Format::Table),
        output: args.output.or(file.output),
        tol,
    };
    if s.samples < 1 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    if let Some(bad) = s.ids.iter().find(|id| !CATALOG_IDS.contains(&id.as_str())) {
        return Err(Failure::usage(format!("unknown identity `{bad}`")));
    }
    Ok(s)
}

pub fn run(args: VerifyArgs) -> Result<Status, Failure> {
    let s = settings(args)?;
    let mut cases = builtin_catalog();
    if !s.ids.is_empty() {
        cases.retain(|c| s.ids.iter().any(|id| id == c.id));
    }
    for c in &mut cases {
        if let Some(t) = s.tol[class_index(c.convergence_class)] {
            c.tol = t;
        }
    }
    let reports = verify_cases(&cases, s.samples, s.seed).map_err(|e| Failure::fail(e.to_string()))?;
    let text = match s.format {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&reports_to_json(&reports, s.seed)).expect("report serializes");
            t.push('\n');
            t
        }
        Format::Csv => csv_text(&reports)?,
        Format::Table => table(&reports),
    };
    emit(s.output.as_deref(), &text)?;
    Ok(if reports.iter().all(|r| r.pass) { Status::Pass } else { Status::Fail })
}

fn table(reports: &[VerificationReport]) -> String {
    let mut out = format!("{:<22} {:<6} {:>12} {:>8} {:>8} {:>9}\n", "id", "result", "max_rel_err", "tol", "samples", "time_s");
    for r in reports {
        out += &format!(
            "{:<22} {:<6} {:>12.3e} {:>8.0e} {:>8} {:>9.3}\n",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.max_rel_error,
            r.tol,
            r.samples.len(),
            r.wall_time.as_secs_f64()
        );
        for (i, smp) in r.samples.iter().enumerate() {
            if let Some(f) = &smp.failure {
                out += &format!("    sample {i} ({}): {f}\n", smp.params);
            }
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    out += &format!("{passed}/{} identities passed\n", reports.len());
    out
}

fn csv_text(reports: &[VerificationReport]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::io(e.to_string());
    w.write_record(["id", "sample", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_error", "pass"]).map_err(io)?;
    for r in reports {
        for (i, smp) in r.samples.iter().enumerate() {
            let params = smp.params.0.iter().map(|(k, v)| format!("{k}={v:.16e}")).collect::<Vec<_>>().join(";");
            let part = |z: Option<num_complex::Complex64>, im: bool| {
                z.map(|z| format!("{:.16e}", if im { z.im } else { z.re })).unwrap_or_default()
            };
            let ok = smp.failure.is_none() && smp.rel_error <= r.tol;
            w.write_record([
                r.id.to_string(),
                i.to_string(),
                params,
                part(smp.lhs, false),
                part(smp.lhs, true),
                part(smp.rhs, false),
                part(smp.rhs, true),
                format!("{:.16e}", smp.rel_error),
                ok.to_string(),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> VerifyArgs {
        VerifyArgs {
            ids: vec![],
            samples: None,
            seed: None,
            format: None,
            output: None,
            config: None,
            tol_exponential: None,
            tol_polynomial: None,
            tol_conditional: None,
        }
    }

    #[test]
    fn defaults() {
        let s = settings(args()).unwrap();
        assert_eq!((s.samples, s.seed, s.format), (20, 7, Format::Table));
        assert!(s.ids.is_empty() && s.output.is_none() && s.tol == [None; 3]);
    }

    #[test]
    fn rejects_bad_values() {
        let mut a = args();
        a.tol_polynomial = Some(-1.0);
        assert_eq!(settings(a).err().unwrap().status, Status::Usage);
        let mut a = args();
        a.ids = vec!["cahen-4.7i".into(), "nope".into()];
        assert_eq!(settings(a).err().unwrap().status, Status::Usage);
    }
}
