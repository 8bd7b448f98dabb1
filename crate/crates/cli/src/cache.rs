//! On-disk cache of weak-order strata and order filters.
//!
//! Each entry is one JSON file holding its key, a SHA-256 checksum of the
//! serialized payload, and the payload. An entry whose checksum does not
//! match is recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use matroid_minor::weak::{enumerate_matroids, upper_set, weak_poset, WeakError};
use matroid_minor::{GroundSet, Matroid};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::json::{matroid_doc, matroid_from_doc, matroid_to_json, JsonError, MatroidDoc};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "MMC_CACHE_DIR";

/// Matroids of a poset in a fixed order, with Hasse edges as index pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub size: usize,
    pub rank: usize,
    pub matroids: Vec<MatroidDoc>,
    pub hasse: Vec<(usize, usize)>,
}

impl PosetDoc {
    pub fn matroids(&self) -> Result<Vec<Matroid>, JsonError> {
        self.matroids.iter().map(matroid_from_doc).collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    payload: PosetDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn checksum(payload: &PosetDoc) -> String {
    let bytes = serde_json::to_vec(payload).expect("serializable");
    hex::encode(Sha256::digest(&bytes))
}

fn poset_doc(matroids: Vec<Matroid>, size: usize, rank: usize) -> PosetDoc {
    let p = weak_poset(matroids);
    PosetDoc {
        size,
        rank,
        matroids: p.elements().iter().map(matroid_doc).collect(),
        hasse: p.hasse_edges(),
    }
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    /// `explicit` if given, else the directory named by [`CACHE_ENV`].
    pub fn from_env(explicit: Option<PathBuf>) -> Self {
        let dir = explicit.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        Cache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// All matroids of rank `rank` on the standard ground set of size `n`.
    pub fn stratum(&self, n: usize, rank: usize) -> Result<(PosetDoc, CacheStatus), WeakError> {
        let key = format!("stratum-{n}-{rank}");
        self.get_or_build(&key, || {
            let ms = enumerate_matroids(&GroundSet::standard(n), Some(rank))?;
            Ok(poset_doc(ms, n, rank))
        })
    }

    /// The order filter `W_M`, with `M` first.
    pub fn filter(&self, m: &Matroid) -> Result<(PosetDoc, CacheStatus), WeakError> {
        let digest = hex::encode(Sha256::digest(matroid_to_json(m).as_bytes()));
        let key = format!("filter-{}-{}-{}", m.size(), m.rank(), &digest[..16]);
        self.get_or_build(&key, || Ok(poset_doc(upper_set(m)?, m.size(), m.rank())))
    }

    fn get_or_build(
        &self,
        key: &str,
        build: impl FnOnce() -> Result<PosetDoc, WeakError>,
    ) -> Result<(PosetDoc, CacheStatus), WeakError> {
        let Some(dir) = &self.dir else {
            return Ok((build()?, CacheStatus::Disabled));
        };
        let path = dir.join(format!("{key}.json"));
        if let Some(doc) = load(&path, key) {
            return Ok((doc, CacheStatus::Hit));
        }
        let doc = build()?;
        let entry = Entry {
            key: key.to_string(),
            checksum: checksum(&doc),
            payload: doc,
        };
        // Write failures only cost a recomputation next time.
        if fs::create_dir_all(dir).is_ok() {
            let tmp = path.with_extension("tmp");
            if fs::write(&tmp, serde_json::to_vec(&entry).expect("serializable")).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
        Ok((entry.payload, CacheStatus::Miss))
    }
}

fn load(path: &Path, key: &str) -> Option<PosetDoc> {
    let bytes = fs::read(path).ok()?;
    let entry: Entry = serde_json::from_slice(&bytes).ok()?;
    (entry.key == key && entry.checksum == checksum(&entry.payload)).then_some(entry.payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_matches_cold_and_corruption_is_repaired() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let (cold, s1) = cache.stratum(3, 1).unwrap();
        let (warm, s2) = cache.stratum(3, 1).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Miss, CacheStatus::Hit));
        assert_eq!(cold, warm);
        assert_eq!(cold.matroids.len(), 7);
        let path = dir.path().join("stratum-3-1.json");
        let text = fs::read_to_string(&path).unwrap().replace("\"rank\":1", "\"rank\":2");
        fs::write(&path, text).unwrap();
        let (again, s3) = cache.stratum(3, 1).unwrap();
        assert_eq!(s3, CacheStatus::Miss);
        assert_eq!(again, cold);
        let (nocache, s4) = Cache::new(None).stratum(3, 1).unwrap();
        assert_eq!((nocache, s4), (cold, CacheStatus::Disabled));
    }
}
