//! Reproducibility manifest for corpus runs: line-oriented `key=value`
//! header (seed, config hash, effective config) followed by one record per
//! image with its gate decisions and drawn cut-off.

use std::io::Write;
use std::path::{Path, PathBuf};

use specmix_core::pipeline::RunTrace;

use crate::config::ResolvedConfig;
use crate::error::{CliError, Result};

pub const MANIFEST_NAME: &str = "manifest.txt";

/// Per-image record, ordered by corpus index.
#[derive(Debug, Clone)]
pub struct ImageRecord {
    pub index: usize,
    pub input: PathBuf,
    pub output: PathBuf,
    pub gates: String,
    pub cutoff: Option<f64>,
    pub real_index: Option<usize>,
}

impl ImageRecord {
    pub fn new(
        index: usize,
        input: PathBuf,
        output: PathBuf,
        trace: &RunTrace,
        real_index: Option<usize>,
    ) -> Self {
        let gates = trace
            .stages
            .iter()
            .map(|s| format!("{}:{}", s.label, u8::from(s.gate)))
            .collect::<Vec<_>>()
            .join(",");
        Self {
            index,
            input,
            output,
            gates,
            cutoff: trace.cutoff(),
            real_index,
        }
    }
}

pub fn write_manifest(
    dir: &Path,
    config: &ResolvedConfig,
    records: &[ImageRecord],
) -> Result<PathBuf> {
    let path = dir.join(MANIFEST_NAME);
    let mut out = String::new();
    out.push_str("manifest_version=1\n");
    out.push_str(&format!("seed={}\n", config.pipeline.master_seed));
    out.push_str(&format!("config_hash={}\n", config.hash()));
    for line in config.dump() {
        out.push_str("config.");
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("images={}\n", records.len()));
    for r in records {
        let mut line = format!(
            "image {} in={} out={} gates={}",
            r.index,
            r.input.display(),
            r.output.display(),
            if r.gates.is_empty() { "-" } else { &r.gates }
        );
        if let Some(d0) = r.cutoff {
            line.push_str(&format!(" d0={d0}"));
        }
        if let Some(real) = r.real_index {
            line.push_str(&format!(" real={real}"));
        }
        out.push_str(&line);
        out.push('\n');
    }
    let mut file = std::fs::File::create(&path).map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })?;
    file.write_all(out.as_bytes())
        .map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
    Ok(path)
}
