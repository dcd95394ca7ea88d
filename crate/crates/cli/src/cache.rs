//! Append-only JSON-lines cache of point counts.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

/// Canonical key of one count: fiber, prime, extension degree and modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountKey {
    pub fiber: String,
    pub p: u64,
    pub r: usize,
    pub modulus: String,
}

#[derive(Serialize, Deserialize)]
struct Line {
    key: CountKey,
    count: u64,
}

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    entries: HashMap<CountKey, u64>,
    skipped: usize,
    hits: usize,
    misses: usize,
}

impl CountCache {
    /// Load the cache; a missing file is an empty cache. Corrupt lines are
    /// skipped with a warning on stderr.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache =
            CountCache { path: path.to_path_buf(), entries: HashMap::new(), skipped: 0, hits: 0, misses: 0 };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<Line>(&line) {
                Ok(l) => {
                    cache.entries.insert(l.key, l.count);
                }
                Err(e) => {
                    eprintln!("warning: skipping corrupt cache line {} in {}: {e}", n + 1, path.display());
                    cache.skipped += 1;
                }
            }
        }
        Ok(cache)
    }

    /// Most recent count stored for `key`.
    pub fn get(&mut self, key: &CountKey) -> Option<u64> {
        let v = self.entries.get(key).copied();
        if v.is_some() {
            self.hits += 1;
        } else {
            self.misses += 1;
        }
        v
    }

    pub fn put(&mut self, key: CountKey, count: u64) -> io::Result<()> {
        let line = serde_json::to_string(&Line { key: key.clone(), count }).map_err(io::Error::other)?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        self.entries.insert(key, count);
        Ok(())
    }

    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn misses(&self) -> usize {
        self.misses
    }
}
