//! On-disk result cache: one JSON file per key, SHA-256 checksummed,
//! written atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{PairPayload, ARTIFACT_VERSION};
use crate::error::{integrity, Error, Result};
use crate::modsym::{GroupKind, GroupSpec, HEILBRONN_FAMILY_ID};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "HECKE_MULT_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub p: u64,
    pub level: u64,
    pub group: GroupKind,
    pub sturm_bound: u64,
    pub version: String,
    pub heilbronn_family: String,
}

impl CacheKey {
    pub fn new(p: u64, group: GroupSpec, sturm_bound: u64) -> Self {
        Self {
            p,
            level: group.level,
            group: group.kind,
            sturm_bound,
            version: ARTIFACT_VERSION.to_string(),
            heilbronn_family: HEILBRONN_FAMILY_ID.to_string(),
        }
    }

    pub fn file_stem(&self) -> String {
        format!(
            "{}-N{}-p{}-b{}-{}-v{}",
            self.group, self.level, self.p, self.sturm_bound, self.heilbronn_family, self.version
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    /// Hex SHA-256 of the compact JSON encoding of the payload.
    pub checksum: String,
    pub payload: PairPayload,
}

pub fn checksum(payload: &PairPayload) -> Result<String> {
    let bytes = serde_json::to_vec(payload)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl CacheEntry {
    pub fn new(key: CacheKey, payload: PairPayload) -> Result<Self> {
        Ok(Self {
            checksum: checksum(&payload)?,
            key,
            payload,
        })
    }

    pub fn verify(&self) -> Result<()> {
        if checksum(&self.payload)? != self.checksum {
            return Err(integrity!(
                "checksum mismatch for {}; remove it with `cache rm` and rescan to recompute",
                self.key.file_stem()
            ));
        }
        Ok(())
    }
}

/// Status of one file in the cache directory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheListing {
    pub name: String,
    pub bytes: u64,
    pub status: EntryStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Valid,
    Stale,
    Corrupt,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let probe = tempfile::NamedTempFile::new_in(&dir)?;
        drop(probe);
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.file_stem()))
    }

    fn read_path(&self, path: &Path) -> Result<CacheEntry> {
        let text = fs::read_to_string(path)?;
        let entry: CacheEntry =
            serde_json::from_str(&text).map_err(|e| integrity!("unreadable cache entry {}: {e}", path.display()))?;
        entry.verify()?;
        Ok(entry)
    }

    /// Load and validate an entry. A stale version counts as missing.
    pub fn load(&self, key: &CacheKey) -> Result<CacheEntry> {
        let path = self.path_for(key);
        if !path.exists() {
            return Err(Error::NotFound(format!("no cache entry {}", key.file_stem())));
        }
        let entry = self.read_path(&path)?;
        if entry.key != *key {
            return Err(Error::NotFound(format!(
                "cache entry {} has a different key",
                key.file_stem()
            )));
        }
        Ok(entry)
    }

    /// Load by file stem, as printed by `ls`.
    pub fn load_named(&self, stem: &str) -> Result<CacheEntry> {
        let path = self.dir.join(format!("{}.json", stem.trim_end_matches(".json")));
        if !path.exists() {
            return Err(Error::NotFound(format!("no cache entry {stem}")));
        }
        self.read_path(&path)
    }

    /// Write via a temporary file in the same directory and rename.
    pub fn store(&self, entry: &CacheEntry) -> Result<PathBuf> {
        let path = self.path_for(&entry.key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, entry)?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(path)
    }

    pub fn list(&self) -> Result<Vec<CacheListing>> {
        let mut out = Vec::new();
        for item in fs::read_dir(&self.dir)? {
            let item = item?;
            let path = item.path();
            let name = item.file_name().to_string_lossy().into_owned();
            let bytes = item.metadata()?.len();
            let status = if path.extension().is_some_and(|e| e == "json") {
                match self.read_path(&path) {
                    Ok(e) if e.key.version == ARTIFACT_VERSION && e.key.heilbronn_family == HEILBRONN_FAMILY_ID => {
                        EntryStatus::Valid
                    }
                    Ok(_) => EntryStatus::Stale,
                    Err(_) => EntryStatus::Corrupt,
                }
            } else {
                EntryStatus::Corrupt
            };
            out.push(CacheListing { name, bytes, status });
        }
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }

    pub fn remove(&self, stem: &str) -> Result<()> {
        let path = self.dir.join(format!("{}.json", stem.trim_end_matches(".json")));
        if !path.exists() {
            return Err(Error::NotFound(format!("no cache entry {stem}")));
        }
        fs::remove_file(path)?;
        Ok(())
    }

    /// Remove every stale or corrupt file; returns their names.
    pub fn gc(&self) -> Result<Vec<String>> {
        let mut removed = Vec::new();
        for l in self.list()? {
            if l.status != EntryStatus::Valid {
                fs::remove_file(self.dir.join(&l.name))?;
                removed.push(l.name);
            }
        }
        Ok(removed)
    }

    pub fn clear(&self) -> Result<usize> {
        let names = self.list()?;
        for l in &names {
            fs::remove_file(self.dir.join(&l.name))?;
        }
        Ok(names.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::analyze_pair;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let g = GroupSpec::gamma0(23);
        let key = CacheKey::new(2, g, g.sturm_bound());
        assert!(matches!(cache.load(&key), Err(Error::NotFound(_))));
        let payload = analyze_pair(2, g, None).unwrap();
        let path = cache
            .store(&CacheEntry::new(key.clone(), payload.clone()).unwrap())
            .unwrap();
        assert_eq!(cache.load(&key).unwrap().payload, payload);
        assert_eq!(cache.list().unwrap()[0].status, EntryStatus::Valid);

        let text = fs::read_to_string(&path).unwrap();
        let bad = text.replacen("\"cuspidal_dim\":4", "\"cuspidal_dim\":5", 1);
        assert_ne!(bad, text);
        fs::write(&path, bad).unwrap();
        assert!(matches!(cache.load(&key), Err(Error::Integrity(_))));
        assert_eq!(cache.gc().unwrap().len(), 1);
        assert!(cache.list().unwrap().is_empty());
    }
}
