//! Trial records and append-only JSONL persistence.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use simplicia::classes::ClassReportDto;
use simplicia::simplex::SimplexLiteral;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Counterexample,
}

/// One reproducible trial: replaying `(seed, family, n, k)` regenerates the
/// identical simplex and verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub family: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub simplex: SimplexLiteral,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ClassReportDto>,
}

/// Append-only JSONL sink; one record per line.
pub struct JsonlLog {
    writer: BufWriter<File>,
}

impl JsonlLog {
    pub fn append_to(path: &Path) -> std::io::Result<JsonlLog> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(JsonlLog {
            writer: BufWriter::new(file),
        })
    }

    pub fn write(&mut self, record: &TrialRecord) -> std::io::Result<()> {
        let line = serde_json::to_string(record).expect("record serializes");
        writeln!(self.writer, "{line}")
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        self.writer.flush()
    }
}

/// Optional log handle most campaign entry points take.
pub type LogSink<'a> = Option<&'a mut JsonlLog>;

pub fn log_record(log: &mut LogSink<'_>, record: &TrialRecord) {
    if let Some(l) = log.as_deref_mut() {
        l.write(record).expect("jsonl append");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip_as_jsonl_lines() {
        let r = TrialRecord {
            seed: 7,
            n: 3,
            k: Some(2),
            family: "grid".into(),
            verdict: Verdict::Pass,
            note: None,
            witness: None,
        };
        let line = serde_json::to_string(&r).unwrap();
        let back: TrialRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back.seed, 7);
        assert_eq!(back.verdict, Verdict::Pass);
        assert!(!line.contains("witness"));
    }
}
