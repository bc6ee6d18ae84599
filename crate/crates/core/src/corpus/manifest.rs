//! Line-delimited JSON manifest of a filtered corpus: one record per bundle,
//! metadata only.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::bundle::PostBundle;
use super::sample::{Sampleable, Stratum};
use crate::error::CorpusError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: u64,
    pub year: i32,
    pub score: i64,
    pub solved: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accepted_answer_id: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub view_count: Option<u64>,
    #[serde(default)]
    pub other_answer_count: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratum: Option<Stratum>,
}

impl From<&PostBundle> for ManifestEntry {
    fn from(b: &PostBundle) -> Self {
        ManifestEntry {
            id: b.question.id,
            year: b.year(),
            score: b.question.score,
            solved: b.solved,
            accepted_answer_id: b.accepted_answer.as_ref().map(|a| a.id),
            view_count: b.question.view_count,
            other_answer_count: b.other_answer_count,
            stratum: None,
        }
    }
}

impl Sampleable for ManifestEntry {
    fn id(&self) -> u64 {
        self.id
    }
    fn year(&self) -> i32 {
        self.year
    }
    fn score(&self) -> i64 {
        self.score
    }
}

pub fn write_manifest<W: Write>(mut out: W, entries: &[ManifestEntry]) -> std::io::Result<()> {
    for e in entries {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Reads a manifest, skipping blank lines. Errors carry the 1-based line.
pub fn read_manifest<R: BufRead>(input: R) -> Result<Vec<ManifestEntry>, CorpusError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line)
            .map_err(|e| CorpusError::Manifest { line: i + 1, message: e.to_string() })?;
        out.push(entry);
    }
    Ok(out)
}
