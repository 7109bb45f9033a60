//! JSON form of verification reports. Numbers carry 17 significant digits
//! and key order is fixed, so identical runs give identical bytes.

use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use super::{SampleRecord, VerificationReport, PRNG_ALGORITHM};

/// Schema version written at the top of every report.
pub const REPORT_VERSION: &str = "1";

fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format!("{x:.16e}")).map(Value::Number).unwrap_or(Value::Null)
}

fn pair(z: Option<Complex64>) -> Value {
    match z {
        Some(z) => Value::Array(vec![num(z.re), num(z.im)]),
        None => Value::Null,
    }
}

fn sample(s: &SampleRecord) -> Value {
    let mut params = Map::new();
    for &(name, v) in &s.params.0 {
        params.insert(name.to_string(), num(v));
    }
    let mut m = Map::new();
    m.insert("params".into(), Value::Object(params));
    m.insert("lhs".into(), pair(s.lhs));
    m.insert("rhs".into(), pair(s.rhs));
    m.insert("rel_error".into(), num(s.rel_error));
    if let Some(f) = &s.failure {
        m.insert("error".into(), Value::String(f.clone()));
    }
    Value::Object(m)
}

/// {version, seed, prng, cases: [{id, pass, max_rel_error, samples}]}.
pub fn reports_to_json(reports: &[VerificationReport], seed: u64) -> Value {
    let cases = reports
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("id".into(), Value::String(r.id.to_string()));
            m.insert("pass".into(), Value::Bool(r.pass));
            m.insert("max_rel_error".into(), num(r.max_rel_error));
            m.insert("samples".into(), Value::Array(r.samples.iter().map(sample).collect()));
            Value::Object(m)
        })
        .collect();
    let mut top = Map::new();
    top.insert("version".into(), Value::String(REPORT_VERSION.into()));
    top.insert("seed".into(), Value::Number(seed.into()));
    top.insert("prng".into(), Value::String(PRNG_ALGORITHM.into()));
    top.insert("cases".into(), Value::Array(cases));
    Value::Object(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(num(-2.5).to_string(), "-2.5000000000000000e+0");
        assert_eq!(num(f64::NAN), Value::Null);
    }
}
