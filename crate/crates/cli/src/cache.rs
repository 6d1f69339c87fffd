//! Append-only result cache.
//!
//! The first line is a header `{"schema_version":1}`; every following line
//! is one record tagged with `kind` and carrying its own `schema`. Records
//! with any other version are rejected rather than migrated.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    schema_version: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CacheRecord {
    Hurwitz {
        g: usize,
        profile: Vec<usize>,
        value: String,
        engine: String,
    },
    Hodge {
        g: usize,
        n: usize,
        b: Vec<usize>,
        j: usize,
        value: String,
        engine: String,
    },
    Degll {
        g: usize,
        profile: Vec<usize>,
        value: String,
        engine: String,
    },
}

impl CacheRecord {
    /// Identity of the computation, everything except the value.
    fn key(&self) -> String {
        match self {
            CacheRecord::Hurwitz { g, profile, engine, .. } => format!("hurwitz {g} {profile:?} {engine}"),
            CacheRecord::Hodge { g, b, j, engine, .. } => format!("hodge {g} {b:?} {j} {engine}"),
            CacheRecord::Degll { g, profile, engine, .. } => format!("degll {g} {profile:?} {engine}"),
        }
    }

    fn value(&self) -> &str {
        match self {
            CacheRecord::Hurwitz { value, .. } | CacheRecord::Hodge { value, .. } | CacheRecord::Degll { value, .. } => {
                value
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    schema: u32,
    #[serde(flatten)]
    record: CacheRecord,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: BTreeMap<String, CacheRecord>,
}

impl Cache {
    /// Loads `path`, or starts empty if it does not exist yet.
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let mut records = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let mut lines = reader.lines();
            if let Some(first) = lines.next() {
                let header: Header = serde_json::from_str(&first?)
                    .map_err(|e| CliError::Cache(format!("{}: bad header: {e}", path.display())))?;
                if header.schema_version != SCHEMA_VERSION {
                    return Err(CliError::Cache(format!(
                        "{}: schema version {} is not supported (expected {SCHEMA_VERSION})",
                        path.display(),
                        header.schema_version
                    )));
                }
            }
            for (i, line) in lines.enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: Line = serde_json::from_str(&line)
                    .map_err(|e| CliError::Cache(format!("{}:{}: {e}", path.display(), i + 2)))?;
                if parsed.schema != SCHEMA_VERSION {
                    return Err(CliError::Cache(format!(
                        "{}:{}: record schema {} is not supported",
                        path.display(),
                        i + 2,
                        parsed.schema
                    )));
                }
                records.insert(parsed.record.key(), parsed.record);
            }
        }
        Ok(Cache {
            path: path.to_path_buf(),
            records,
        })
    }

    pub fn hurwitz(&self, g: usize, profile: &[usize], engine: &str) -> Option<&str> {
        let probe = CacheRecord::Hurwitz {
            g,
            profile: profile.to_vec(),
            value: String::new(),
            engine: engine.to_string(),
        };
        self.records.get(&probe.key()).map(CacheRecord::value)
    }

    pub fn records(&self) -> impl Iterator<Item = &CacheRecord> {
        self.records.values()
    }

    /// Appends records that are not already present.
    pub fn append(&mut self, new: impl IntoIterator<Item = CacheRecord>) -> Result<(), CliError> {
        let mut fresh: BTreeMap<String, CacheRecord> = BTreeMap::new();
        for record in new {
            let key = record.key();
            if !self.records.contains_key(&key) {
                fresh.entry(key).or_insert(record);
            }
        }
        if fresh.is_empty() {
            return Ok(());
        }
        let needs_header = !self.path.exists() || std::fs::metadata(&self.path)?.len() == 0;
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        if needs_header {
            serde_json::to_writer(&mut file, &Header {
                schema_version: SCHEMA_VERSION,
            })
            .map_err(|e| CliError::Cache(e.to_string()))?;
            writeln!(file)?;
        }
        for (key, record) in fresh {
            let line = Line {
                schema: SCHEMA_VERSION,
                record: record.clone(),
            };
            serde_json::to_writer(&mut file, &line).map_err(|e| CliError::Cache(e.to_string()))?;
            writeln!(file)?;
            self.records.insert(key, record);
        }
        Ok(())
    }
}
