//! Append-only JSONL store of solver results.
//!
//! Each line is one [`Record`]. Lookups re-verify the stored witness, and a
//! line that fails to parse or verify is an error rather than a miss.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use ordered_ramsey::matrix_patterns::ExtremalResult;
use ordered_ramsey::RamseyResult;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const DEFAULT_PATH: &str = ".ordered-ramsey-cache.jsonl";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "result", rename_all = "snake_case")]
pub enum Entry {
    Ramsey(RamseyResult),
    Extremal(ExtremalResult),
}

impl Entry {
    fn verify(&self) -> bool {
        match self {
            Entry::Ramsey(r) => r.verify().unwrap_or(false),
            Entry::Extremal(e) => e.verify(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Record {
    pub key: String,
    pub version: String,
    pub timestamp: u64,
    #[serde(flatten)]
    pub entry: Entry,
}

/// Key of a request: hash of the object's JSON plus the parameters that
/// affect the answer.
pub fn key<T: Serialize>(object: &T, params: &[(&str, u64)]) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(object).expect("serializable"));
    for (name, value) in params {
        h.update(format!("|{name}={value}").as_bytes());
    }
    format!("{:x}", h.finalize())
}

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn open(&self) -> CliResult<File> {
        let file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(&self.path)?;
        file.lock()?;
        Ok(file)
    }

    /// Latest record stored under `key`. Every line is checked on the way.
    pub fn get(&self, key: &str) -> CliResult<Option<Entry>> {
        let file = self.open()?;
        let hit = scan(&file, &self.path, key);
        file.unlock()?;
        hit
    }

    pub fn put(&self, key: &str, entry: Entry) -> CliResult<()> {
        let record = Record {
            key: key.to_string(),
            version: VERSION.to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            entry,
        };
        let mut line = serde_json::to_string(&record)?;
        line.push('\n');
        let mut file = self.open()?;
        file.seek(SeekFrom::End(0))?;
        file.write_all(line.as_bytes())?;
        file.flush()?;
        file.unlock()?;
        Ok(())
    }
}

fn scan(file: &File, path: &Path, key: &str) -> CliResult<Option<Entry>> {
    let mut hit = None;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let corrupt = |reason: String| CliError::CorruptCache {
            path: path.to_path_buf(),
            line: i + 1,
            reason,
        };
        let record: Record = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
        if !record.entry.verify() {
            return Err(corrupt("stored witness does not verify".into()));
        }
        if record.key == key {
            hit = Some(record.entry);
        }
    }
    Ok(hit)
}
