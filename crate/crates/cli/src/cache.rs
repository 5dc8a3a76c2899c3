//! On-disk artifact cache.
//!
//! One JSON file per entry, named by the SHA-256 of
//! `version|spec|kind|params`. Writes go to a temporary file in the cache
//! directory that is then renamed over the target.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use solgraph::verifier::{ArtifactKey, ArtifactStore};

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub spec: String,
    pub kind: String,
    pub params: String,
    pub created_at: u64,
    /// The serialized artifact, itself JSON.
    pub payload: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub writes: u64,
    /// `--verify-cache` only.
    pub verified: u64,
    pub mismatched: u64,
}

pub struct FileCache {
    dir: PathBuf,
    /// Recompute everything and compare against stored entries.
    verify: bool,
    hits: AtomicU64,
    misses: AtomicU64,
    writes: AtomicU64,
    verified: AtomicU64,
    mismatched: Mutex<Vec<String>>,
}

pub fn key_digest(key: &ArtifactKey) -> String {
    let text = format!("{}|{}|{}|{}", solgraph::VERSION, key.spec, key.kind, key.params);
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// `$XDG_CACHE_HOME/solgraph`, else `$HOME/.cache/solgraph`, else a
/// directory under the system temp dir.
pub fn default_dir() -> PathBuf {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
        return PathBuf::from(x).join("solgraph");
    }
    if let Some(h) = std::env::var_os("HOME").filter(|x| !x.is_empty()) {
        return PathBuf::from(h).join(".cache").join("solgraph");
    }
    std::env::temp_dir().join("solgraph-cache")
}

impl FileCache {
    pub fn open(dir: &Path, verify: bool) -> std::io::Result<FileCache> {
        fs::create_dir_all(dir)?;
        Ok(FileCache {
            dir: dir.to_path_buf(),
            verify,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            writes: AtomicU64::new(0),
            verified: AtomicU64::new(0),
            mismatched: Mutex::new(Vec::new()),
        })
    }

    fn path(&self, key: &ArtifactKey) -> PathBuf {
        self.dir.join(format!("{}.json", key_digest(key)))
    }

    fn read(&self, key: &ArtifactKey) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let e: CacheEntry = serde_json::from_str(&text).ok()?;
        let matches = e.version == solgraph::VERSION
            && e.spec == key.spec
            && e.kind == key.kind
            && e.params == key.params;
        matches.then_some(e)
    }

    fn write(&self, key: &ArtifactKey, payload: &[u8]) -> std::io::Result<()> {
        let entry = CacheEntry {
            version: solgraph::VERSION.to_string(),
            spec: key.spec.clone(),
            kind: key.kind.to_string(),
            params: key.params.clone(),
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            payload: String::from_utf8_lossy(payload).into_owned(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            writes: self.writes.load(Ordering::Relaxed),
            verified: self.verified.load(Ordering::Relaxed),
            mismatched: self.mismatched.lock().expect("lock").len() as u64,
        }
    }

    /// Specs and kinds whose stored payload differed from recomputation.
    pub fn mismatches(&self) -> Vec<String> {
        let mut m = self.mismatched.lock().expect("lock").clone();
        m.sort();
        m
    }
}

impl ArtifactStore for FileCache {
    fn load(&self, key: &ArtifactKey) -> Option<Vec<u8>> {
        if self.verify {
            return None;
        }
        match self.read(key) {
            Some(e) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(e.payload.into_bytes())
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn save(&self, key: &ArtifactKey, payload: &[u8]) {
        if self.verify {
            if let Some(old) = self.read(key) {
                self.verified.fetch_add(1, Ordering::Relaxed);
                if old.payload.as_bytes() != payload {
                    self.mismatched
                        .lock()
                        .expect("lock")
                        .push(format!("{} [{}]", key.spec, key.kind));
                }
                return;
            }
        }
        // a failed write only costs a later recomputation
        if self.write(key, payload).is_ok() {
            self.writes.fetch_add(1, Ordering::Relaxed);
        }
    }
}
