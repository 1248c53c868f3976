use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Record of a run, sufficient to repeat it and compare the output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the program name, as given.
    pub parameters: Vec<String>,
    pub version: String,
    /// SHA-256 of each input file, by path.
    pub input_digests: BTreeMap<String, String>,
    pub wall_time_secs: f64,
    /// SHA-256 of everything written to standard output.
    pub result_digest: String,
}

impl RunManifest {
    pub fn read(path: &Path) -> crate::Result<RunManifest> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn write(&self, path: &Path) -> crate::Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| e.to_string())?;
        std::fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
    }
}
