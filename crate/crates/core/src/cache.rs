//! On-disk cache of brute-force coefficients.
//!
//! The file is JSON lines, one `{key, value, timestamp}` record per line.
//! Lines that fail to parse are skipped and reported as warnings; they are
//! never trusted. Saving rewrites the whole file through a temporary file
//! and a rename.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::rings::Poly;

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    key: String,
    value: String,
    timestamp: u64,
}

#[derive(Debug, Clone)]
struct Entry {
    value: Poly,
    timestamp: u64,
}

#[derive(Debug, Default)]
pub struct CoefficientCache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, Entry>,
    dirty: bool,
    warnings: Vec<String>,
}

impl CoefficientCache {
    /// A cache that never touches the filesystem.
    pub fn in_memory() -> Self {
        CoefficientCache::default()
    }

    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> io::Result<Self> {
        let path = path.into();
        let mut cache = CoefficientCache { path: Some(path.clone()), ..Default::default() };
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for (lineno, line) in io::BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed = serde_json::from_str::<Record>(&line)
                .map_err(|e| e.to_string())
                .and_then(|r| r.value.parse::<Poly>().map(|v| (r, v)).map_err(|e| e.to_string()));
            match parsed {
                Ok((r, value)) => {
                    cache.entries.insert(r.key, Entry { value, timestamp: r.timestamp });
                }
                Err(e) => {
                    cache.warnings.push(format!("{}:{}: skipped corrupt cache line ({e})", path.display(), lineno + 1))
                }
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&Poly> {
        self.entries.get(key).map(|e| &e.value)
    }

    pub fn insert(&mut self, key: String, value: Poly) {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        self.entries.insert(key, Entry { value, timestamp });
        self.dirty = true;
    }

    /// Writes the cache back if anything changed.
    pub fn save(&mut self) -> io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        tmp_name.push(format!(".tmp{}", std::process::id()));
        let tmp = path.with_file_name(tmp_name);
        {
            let mut out = io::BufWriter::new(fs::File::create(&tmp)?);
            for (key, e) in &self.entries {
                let rec = Record { key: key.clone(), value: e.value.to_string(), timestamp: e.timestamp };
                serde_json::to_writer(&mut out, &rec)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        fs::rename(&tmp, path)?;
        self.dirty = false;
        Ok(())
    }
}
