//! Run records: what was run, on which input, with which settings, and what
//! came out. Appended to a log as one JSON object per line.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::search::Strategy;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub attempts: usize,
    pub strategy: Strategy,
    pub budget_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Arguments after the program name.
    pub command: Vec<String>,
    /// SHA-256 of the input facet text (inputs joined by `+`).
    pub input_digest: Option<String>,
    pub config: RunConfig,
    pub result: serde_json::Value,
    pub duration_ms: u64,
    pub tool_version: String,
}

impl RunRecord {
    /// The result payload as compact JSON, the form compared on replay.
    pub fn payload_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(&self.result).expect("values serialize")
    }

    pub fn append_to(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        let mut line = serde_json::to_vec(self)?;
        line.push(b'\n');
        f.write_all(&line)?;
        Ok(())
    }

    pub fn read_log(path: &Path) -> Result<Vec<RunRecord>> {
        let text = std::fs::read_to_string(path)?;
        text.lines().filter(|l| !l.trim().is_empty()).map(|l| Ok(serde_json::from_str(l)?)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.jsonl");
        let r = RunRecord {
            command: vec!["info".into(), "corpus:cycle-3".into()],
            input_digest: Some("ab".into()),
            config: RunConfig { seed: 1, attempts: 2, strategy: Strategy::LexMin, budget_seconds: Some(0.5) },
            result: serde_json::json!({"f_vector": [3, 3]}),
            duration_ms: 4,
            tool_version: "0.1.0".into(),
        };
        r.append_to(&path).unwrap();
        r.append_to(&path).unwrap();
        assert_eq!(RunRecord::read_log(&path).unwrap(), vec![r.clone(), r]);
    }
}
