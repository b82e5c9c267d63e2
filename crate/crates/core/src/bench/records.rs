//! Run records and their append-only CSV store.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WspError};

pub const CSV_HEADER: [&str; 6] = ["instance", "algorithm", "seed", "objective", "wall_seconds", "status"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    /// The solver refused to start or stopped on a resource limit.
    Limit,
    /// The solver returned an error or panicked.
    Error,
}

/// One replication of one algorithm on one instance. `objective` is empty
/// unless the run finished with status `ok`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub objective: Option<u64>,
    pub wall_seconds: f64,
    pub status: RunStatus,
}

impl RunRecord {
    pub fn ok(instance: &str, algorithm: &str, seed: u64, objective: u64, wall_seconds: f64) -> Self {
        RunRecord {
            instance: instance.into(),
            algorithm: algorithm.into(),
            seed,
            objective: Some(objective),
            wall_seconds,
            status: RunStatus::Ok,
        }
    }

    /// The cell key used for resuming: (instance, algorithm, seed).
    pub fn key(&self) -> (String, String, u64) {
        (self.instance.clone(), self.algorithm.clone(), self.seed)
    }

    /// Objective of a successful run.
    pub fn ok_objective(&self) -> Option<u64> {
        match self.status {
            RunStatus::Ok => self.objective,
            _ => None,
        }
    }
}

/// Sort order used when comparing record sets.
pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by_key(RunRecord::key);
}

pub fn read_records_from(reader: impl Read) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(WspError::structural(format!(
            "unexpected record header '{}' (expected '{}')",
            header.iter().collect::<Vec<_>>().join(","),
            CSV_HEADER.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<RunRecord>().enumerate() {
        let rec = row?;
        if rec.status == RunStatus::Ok && rec.objective.is_none() {
            return Err(WspError::structural(format!("record {}: ok run without objective", i + 1)));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    read_records_from(File::open(path)?)
}

pub fn write_records(path: impl AsRef<Path>, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends records to a CSV file, writing the header only when the file is
/// new or empty. Each record is flushed as soon as it is written.
pub struct RecordAppender {
    writer: csv::Writer<File>,
}

impl RecordAppender {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let mut file = OpenOptions::new().create(true).append(true).read(true).open(path)?;
        let fresh = file.metadata()?.len() == 0;
        if fresh {
            writeln!(file, "{}", CSV_HEADER.join(","))?;
        }
        let writer = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        Ok(RecordAppender { writer })
    }

    pub fn append(&mut self, record: &RunRecord) -> Result<()> {
        self.writer.serialize(record)?;
        self.writer.flush()?;
        Ok(())
    }
}

/// Groups records by instance id.
pub(crate) fn by_instance(records: &[RunRecord]) -> BTreeMap<&str, Vec<&RunRecord>> {
    let mut map: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        map.entry(r.instance.as_str()).or_default().push(r);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_keeps_empty_objectives() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.csv");
        let recs = vec![
            RunRecord::ok("i1", "beam", 3, 12, 0.25),
            RunRecord {
                instance: "i1".into(),
                algorithm: "exact".into(),
                seed: 0,
                objective: None,
                wall_seconds: 0.0,
                status: RunStatus::Limit,
            },
        ];
        write_records(&path, &recs).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("instance,algorithm,seed,objective,wall_seconds,status\n"));
        assert!(text.contains("i1,exact,0,,0.0,limit"));
        assert_eq!(read_records(&path).unwrap(), recs);
    }

    #[test]
    fn appender_writes_header_once() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.csv");
        RecordAppender::open(&path).unwrap().append(&RunRecord::ok("a", "r", 1, 5, 1.0)).unwrap();
        RecordAppender::open(&path).unwrap().append(&RunRecord::ok("a", "r", 2, 6, 1.0)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.matches("instance,").count(), 1);
        assert_eq!(read_records(&path).unwrap().len(), 2);
    }

    #[test]
    fn rejects_foreign_header_and_ok_without_objective() {
        assert!(read_records_from("a,b\n1,2\n".as_bytes()).is_err());
        let bad = "instance,algorithm,seed,objective,wall_seconds,status\ni,a,1,,0.5,ok\n";
        assert!(read_records_from(bad.as_bytes()).is_err());
    }
}
