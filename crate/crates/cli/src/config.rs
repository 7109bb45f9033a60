//! Optional JSON run configuration. Keys mirror the `verify` flags; flags
//! given on the command line take precedence.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub id: Vec<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    /// Pass tolerance per convergence class, keyed by class name.
    #[serde(default)]
    pub tol: BTreeMap<String, f64>,
}

pub fn load(path: &Path) -> Result<FileConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_key() {
        let c: FileConfig = serde_json::from_str(
            r#"{"id": ["hecke-4.1"], "samples": 4, "seed": 9, "format": "json", "output": "r.json", "tol": {"conditional": 1e-3}}"#,
        )
        .unwrap();
        assert_eq!(c.id, ["hecke-4.1"]);
        assert_eq!((c.samples, c.seed, c.format), (Some(4), Some(9), Some(Format::Json)));
        assert_eq!(c.tol["conditional"], 1e-3);
        assert!(serde_json::from_str::<FileConfig>(r#"{"format": "xml"}"#).is_err());
    }
}
