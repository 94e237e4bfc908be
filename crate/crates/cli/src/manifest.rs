use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Record of one run. `command` is the fully resolved argument list; feeding
/// it back through `rerun` regenerates the outputs byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub command: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub version: String,
    pub outputs: Vec<PathBuf>,
    pub wall_time_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absorbed: Option<u64>,
    /// Free-form remarks such as preset choices.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, command: Vec<String>, resolved: &[(String, String)]) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            command,
            params: resolved.iter().cloned().collect(),
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
            wall_time_s: 0.0,
            absorbed: None,
            notes: Vec::new(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read manifest {}: {e}", path.display()))
        })?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// `<output>.manifest.json` next to a single-file output.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}
