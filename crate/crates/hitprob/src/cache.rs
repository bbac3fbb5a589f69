//! A small content-checked result cache. Entries are JSON payloads stored
//! one per key under the directory named by `HITPROB_CACHE`; a sha256 line
//! guards against truncation and tampering. Writes go through a temp file
//! and a rename, so concurrent readers never see a partial entry.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "HITPROB_CACHE";

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Reads `HITPROB_CACHE`; an unset variable disables caching.
    pub fn from_env() -> Cache {
        Cache { dir: std::env::var_os(CACHE_ENV).map(PathBuf::from) }
    }

    pub fn at(dir: PathBuf) -> Cache {
        Cache { dir: Some(dir) }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        debug_assert!(key.chars().all(|c| c.is_ascii_alphanumeric() || "-_.,".contains(c)));
        Some(dir.join(format!("{key}.json")))
    }

    /// Returns the stored payload, or `None` on a miss. A corrupt entry
    /// (bad header or digest mismatch) warns and reads as a miss; the next
    /// `put` overwrites it.
    pub fn get(&self, key: &str) -> Option<String> {
        let path = self.path_for(key)?;
        let raw = fs::read_to_string(&path).ok()?;
        let (header, payload) = raw.split_once('\n')?;
        let expected = header.strip_prefix("sha256:");
        match expected {
            Some(hex) if hex == digest_hex(payload) => Some(payload.to_string()),
            _ => {
                eprintln!(
                    "warning: cache entry {} is corrupt; recomputing",
                    path.display()
                );
                None
            }
        }
    }

    pub fn put(&self, key: &str, payload: &str) -> std::io::Result<()> {
        let Some(path) = self.path_for(key) else { return Ok(()) };
        let dir = self.dir.as_ref().unwrap();
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        write!(tmp, "sha256:{}\n{}", digest_hex(payload), payload)?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(())
    }
}

fn digest_hex(payload: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(payload.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
