//! Tagged outcome streams with trial and seed metadata.
//!
//! Records serialize one-per-line as JSON:
//! `{"trial":3,"seed":7,"entries":[{"kind":"homodyne","mode":0,...},...]}`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One tagged measurement outcome, in circuit order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutcomeEntry {
    Homodyne {
        mode: usize,
        value: f64,
        resolution_sq: f64,
    },
    Heterodyne {
        mode: usize,
        x: f64,
        p: f64,
    },
    Photocount {
        mode: usize,
        count: u64,
    },
}

/// Ordered outcome stream of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub trial: u64,
    pub seed: u64,
    pub entries: Vec<OutcomeEntry>,
}

impl MeasurementRecord {
    pub fn new(trial: u64, seed: u64) -> Self {
        Self {
            trial,
            seed,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: OutcomeEntry) {
        self.entries.push(entry);
    }
}

/// Writes records as JSON lines.
pub fn write_jsonl<W: Write>(records: &[MeasurementRecord], mut out: W) -> Result<()> {
    for record in records {
        let line = serde_json::to_string(record).map_err(|e| crate::Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Reads records from JSON lines, skipping blank lines.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<MeasurementRecord>> {
    let mut records = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(
            serde_json::from_str(&line).map_err(|e| crate::Error::Io(format!("bad record: {e}")))?,
        );
    }
    Ok(records)
}
