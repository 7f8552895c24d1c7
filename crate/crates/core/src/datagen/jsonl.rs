//! JSON-lines persistence: one record per line, UTF-8, stable key order, and
//! a manifest document alongside whose counts must match the file exactly.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{DatagenError, DatasetSplit, DemonstrationRecord};
use crate::seed::fnv1a64;

/// Sidecar metadata for a persisted dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub total: u64,
    /// Record counts keyed by `<split>/<variant>`.
    pub counts: BTreeMap<String, u64>,
    pub config_digest: String,
    pub seed: u64,
}

/// Stable hex digest of any serializable config; recorded in manifests and
/// reports so reruns can be matched to their generating configuration.
pub fn config_digest<T: Serialize>(config: &T) -> String {
    let canonical = serde_json::to_string(config).expect("config serializes");
    format!("{:016x}", fnv1a64(canonical.as_bytes()))
}

/// `data.jsonl` gets its manifest at `data.manifest.json`.
pub fn manifest_path(dataset_path: &Path) -> PathBuf {
    dataset_path.with_extension("manifest.json")
}

/// Write records as JSON lines plus the manifest sidecar. Key order within a
/// line is fixed by the record struct, so equal inputs give byte-identical
/// files.
pub fn persist_dataset(
    records: &[DemonstrationRecord],
    path: &Path,
    config_digest: &str,
    seed: u64,
) -> Result<DatasetManifest, DatagenError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    {
        let mut writer = BufWriter::new(fs::File::create(path)?);
        for record in records {
            let line = serde_json::to_string(record).expect("record serializes");
            writer.write_all(line.as_bytes())?;
            writer.write_all(b"\n")?;
            let split = match record.split {
                DatasetSplit::Train => "train",
                DatasetSplit::Validation => "validation",
            };
            *counts.entry(format!("{split}/{}", record.variant)).or_insert(0) += 1;
        }
        writer.flush()?;
    }
    let manifest = DatasetManifest {
        total: records.len() as u64,
        counts,
        config_digest: config_digest.to_string(),
        seed,
    };
    fs::write(
        manifest_path(path),
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n",
    )?;
    Ok(manifest)
}

/// Load a JSON-lines dataset. Schema violations name the offending line
/// (1-based).
pub fn load_dataset(path: &Path) -> Result<Vec<DemonstrationRecord>, DatagenError> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: DemonstrationRecord =
            serde_json::from_str(&line).map_err(|e| DatagenError::Schema {
                line: i + 1,
                message: e.to_string(),
            })?;
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::super::{gen_gp_demos, GpDemoConfig};
    use super::*;

    #[test]
    fn round_trip_preserves_records_and_counts() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("demos.jsonl");
        let records =
            gen_gp_demos(&GpDemoConfig { count: 50, ..GpDemoConfig::default() }, 4).unwrap();
        let manifest = persist_dataset(&records, &path, &config_digest(&"cfg"), 4).unwrap();
        assert_eq!(manifest.total, 50);
        assert_eq!(manifest.counts.values().sum::<u64>(), 50);
        let loaded = load_dataset(&path).unwrap();
        assert_eq!(records, loaded);
        let line_count = std::fs::read_to_string(&path).unwrap().lines().count();
        assert_eq!(line_count, 50);
        assert!(manifest_path(&path).exists());
    }

    #[test]
    fn persistence_is_byte_identical_across_runs() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
        let records =
            gen_gp_demos(&GpDemoConfig { count: 20, ..GpDemoConfig::default() }, 9).unwrap();
        persist_dataset(&records, &a, "d", 9).unwrap();
        persist_dataset(&records, &b, "d", 9).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn truncated_line_names_its_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("broken.jsonl");
        let records =
            gen_gp_demos(&GpDemoConfig { count: 3, ..GpDemoConfig::default() }, 2).unwrap();
        persist_dataset(&records, &path, "d", 2).unwrap();
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.truncate(text.len() - 20);
        std::fs::write(&path, text).unwrap();
        match load_dataset(&path) {
            Err(DatagenError::Schema { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected schema violation, got {other:?}"),
        }
    }
}
