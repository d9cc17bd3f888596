//! Output files and the run manifest.

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::CliError;

/// Version of the output file layout.
pub const ARTIFACT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct OutputDigest {
    pub file: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Phase {
    pub name: String,
    pub ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub artifact_version: u32,
    pub tool_version: String,
    pub command: String,
    pub config: ExperimentConfig,
    pub config_digest: String,
    pub seed: u64,
    pub started_unix: u64,
    pub wall_clock_ms: f64,
    pub phases: Vec<Phase>,
    pub outputs: Vec<OutputDigest>,
    pub summary: Value,
}

/// Collects the files of one run and writes the manifest last.
pub struct Run {
    command: String,
    config: ExperimentConfig,
    digest: String,
    dir: PathBuf,
    started: Instant,
    started_unix: u64,
    phase_start: Instant,
    phases: Vec<Phase>,
    outputs: Vec<OutputDigest>,
}

impl Run {
    pub fn start(command: &str, config: &ExperimentConfig) -> Result<Self, CliError> {
        let dir = config.out_dir.clone();
        std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        let now = Instant::now();
        Ok(Self {
            command: command.into(),
            config: config.clone(),
            digest: config.digest(),
            dir,
            started: now,
            started_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            phase_start: now,
            phases: Vec::new(),
            outputs: Vec::new(),
        })
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Closes the current phase under `name`.
    pub fn phase(&mut self, name: &str) {
        let now = Instant::now();
        self.phases.push(Phase {
            name: name.into(),
            ms: (now - self.phase_start).as_secs_f64() * 1e3,
        });
        self.phase_start = now;
    }

    /// Provenance fields added to every JSON output.
    pub fn stamp(&self) -> Value {
        json!({
            "command": self.command,
            "artifact_version": ARTIFACT_VERSION,
            "config_digest": self.digest,
            "tol": self.config.tol,
            "seed": self.config.seed,
        })
    }

    /// Writes a CSV with `config_digest`, `tol` and `seed` columns appended
    /// to every row.
    pub fn write_csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let mut full: Vec<&str> = header.to_vec();
        full.extend(["config_digest", "tol", "seed"]);
        w.write_record(&full)?;
        let tail = [self.digest.clone(), fmt(self.config.tol), self.config.seed.to_string()];
        for row in rows {
            w.write_record(row.iter().chain(&tail))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
        self.write_bytes(name, &bytes)
    }

    /// Writes `body` merged with the provenance stamp, pretty-printed.
    pub fn write_json(&mut self, name: &str, body: Value) -> Result<(), CliError> {
        let mut doc = self.stamp();
        if let (Some(d), Value::Object(b)) = (doc.as_object_mut(), body) {
            d.extend(b);
        }
        let mut bytes = serde_json::to_vec_pretty(&doc)?;
        bytes.push(b'\n');
        self.write_bytes(name, &bytes)
    }

    fn write_bytes(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        self.outputs.push(OutputDigest {
            file: name.into(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len(),
        });
        Ok(())
    }

    /// Writes `manifest.json` and returns it.
    pub fn finish(mut self, summary: Value) -> Result<RunManifest, CliError> {
        self.phase("write");
        let manifest = RunManifest {
            artifact_version: ARTIFACT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: self.command,
            config_digest: self.digest,
            seed: self.config.seed,
            config: self.config,
            started_unix: self.started_unix,
            wall_clock_ms: self.started.elapsed().as_secs_f64() * 1e3,
            phases: self.phases,
            outputs: self.outputs,
            summary,
        };
        let path = self.dir.join("manifest.json");
        let mut bytes = serde_json::to_vec_pretty(&manifest)?;
        bytes.push(b'\n');
        std::fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        Ok(manifest)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Shortest decimal that reads back to the same float.
pub fn fmt(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

/// Recomputes the digest of an output file listed in a manifest.
pub fn verify_output(dir: &Path, out: &OutputDigest) -> bool {
    std::fs::read(dir.join(&out.file)).is_ok_and(|b| sha256_hex(&b) == out.sha256)
}
