//! On-disk JSON cache for finished reports, keyed by a hash of the run configuration.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::report::Report;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: Value,
    report: Report,
}

pub struct Cache {
    dir: PathBuf,
}

/// Whether a lookup found a stored report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Evicted,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Cache {
        Cache { dir }
    }

    /// `$XDG_CACHE_HOME/normtrace`, falling back to `~/.cache/normtrace` and then the temp dir.
    pub fn default_dir() -> PathBuf {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
            return PathBuf::from(x).join("normtrace");
        }
        if let Some(h) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
            return PathBuf::from(h).join(".cache").join("normtrace");
        }
        std::env::temp_dir().join("normtrace-cache")
    }

    fn path(&self, key: &Value) -> PathBuf {
        // serde_json maps keep keys sorted, so the serialization is canonical.
        let digest = Sha256::digest(key.to_string().as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn get(&self, key: &Value) -> (Option<Report>, Lookup) {
        let path = self.path(key);
        let Ok(bytes) = fs::read(&path) else {
            return (None, Lookup::Miss);
        };
        match serde_json::from_slice::<Entry>(&bytes) {
            Ok(entry) if entry.key == *key => (Some(entry.report), Lookup::Hit),
            _ => {
                let _ = fs::remove_file(&path);
                (None, Lookup::Evicted)
            }
        }
    }

    /// Best effort: a cache that cannot be written is skipped silently.
    pub fn put(&self, key: &Value, report: &Report) {
        let entry = Entry { key: key.clone(), report: report.clone() };
        let Ok(bytes) = serde_json::to_vec(&entry) else {
            return;
        };
        let path = self.path(key);
        let _ = write_atomic(&self.dir, &path, &bytes);
    }
}

fn write_atomic(dir: &Path, path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn report() -> Report {
        Report { json: json!({"schema": 1, "d_r": 17}), text: "d_3 = 17\n".into(), csv: None }
    }

    #[test]
    fn roundtrip_and_eviction() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        let key = json!({"command": "ghw", "q": 3});
        assert_eq!(cache.get(&key).1, Lookup::Miss);
        cache.put(&key, &report());
        let (hit, how) = cache.get(&key);
        assert_eq!(how, Lookup::Hit);
        assert_eq!(hit.unwrap(), report());
        fs::write(cache.path(&key), b"{not json").unwrap();
        assert_eq!(cache.get(&key).1, Lookup::Evicted);
        assert!(!cache.path(&key).exists());
    }

    #[test]
    fn distinct_keys_do_not_collide() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        cache.put(&json!({"modulus": [2, 4, 1]}), &report());
        assert_eq!(cache.get(&json!({"modulus": [3, 4, 1]})).1, Lookup::Miss);
    }
}
