//! The `--config` file: one flat, human-editable JSON document shared by all
//! subcommands. Unknown keys are rejected before any work starts.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub task: Option<String>,
    pub variant: Option<String>,
    pub splits: Option<Vec<String>>,
    pub count: Option<usize>,
    pub episodes: Option<usize>,
    pub concurrency: Option<usize>,
    pub target: Option<i64>,
    pub diversity: Option<bool>,
    pub regimes: Option<Vec<String>>,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub boxes: Option<usize>,
    pub wall_density: Option<f64>,
    pub agent: Option<String>,
    pub model: Option<String>,
    pub temperature: Option<f64>,
    pub max_tokens: Option<u32>,
    pub bind: Option<String>,
    pub idle_timeout_secs: Option<u64>,
    pub reward_mode: Option<String>,
    pub k_per_prompt: Option<usize>,
    pub transcript: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<FileConfig> {
        let Some(path) = path else { return Ok(FileConfig::default()) };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: FileConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        Ok(config)
    }
}
