//! Run manifests: every subcommand records what it was asked to do, what
//! it read, and what it wrote.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::commands::CliError;

pub const SCHEMA: &str = "waa/1";

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

/// Record of one command invocation, written as `manifest.json` next to
/// the outputs. `wall_time_ms` stays `null` unless timing was explicitly
/// requested, so reruns stay byte-identical.
#[derive(Serialize)]
pub struct RunManifest {
    schema: &'static str,
    command: &'static str,
    config: serde_json::Value,
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    outputs: Vec<String>,
    wall_time_ms: Option<u64>,
    #[serde(skip)]
    started: Instant,
}

impl RunManifest {
    /// Starts a manifest for `command`, echoing its full configuration.
    pub fn new<C: Serialize>(command: &'static str, config: &C) -> Result<Self, CliError> {
        let config = serde_json::to_value(config)
            .map_err(|e| CliError::Usage(format!("cannot encode configuration: {e}")))?;
        Ok(RunManifest {
            schema: SCHEMA,
            command,
            config,
            inputs: Vec::new(),
            seed: None,
            outputs: Vec::new(),
            wall_time_ms: None,
            started: Instant::now(),
        })
    }

    /// Hashes an input file into the manifest.
    pub fn record_input(&mut self, path: &Path) -> Result<(), CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        let mut sha256 = String::with_capacity(64);
        for b in digest {
            sha256.push_str(&format!("{b:02x}"));
        }
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256,
        });
        Ok(())
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Writes `manifest.json` under `out_dir`. Timing is filled in only
    /// when `emit_timing` is set.
    pub fn finish(mut self, out_dir: &Path, emit_timing: bool) -> Result<PathBuf, CliError> {
        if emit_timing {
            self.wall_time_ms = Some(self.started.elapsed().as_millis() as u64);
        }
        let path = out_dir.join("manifest.json");
        let mut body = serde_json::to_string_pretty(&self)
            .map_err(|e| CliError::Usage(format!("cannot encode manifest: {e}")))?;
        body.push('\n');
        std::fs::write(&path, body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }
}
