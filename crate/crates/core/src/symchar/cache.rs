use std::fs;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CharacterTable;
use crate::error::Result;

/// Where character tables are persisted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheSetting {
    /// Use `$COVERTQFT_CACHE` if set, otherwise no disk cache.
    FromEnv,
    Dir(PathBuf),
    Disabled,
}

static SETTING: RwLock<CacheSetting> = RwLock::new(CacheSetting::FromEnv);

pub const CACHE_ENV: &str = "COVERTQFT_CACHE";

pub fn set_cache_dir(setting: CacheSetting) {
    *SETTING.write().expect("cache setting poisoned") = setting;
}

/// The active cache directory, if any.
pub fn cache_dir() -> Option<PathBuf> {
    match &*SETTING.read().expect("cache setting poisoned") {
        CacheSetting::Dir(p) => Some(p.clone()),
        CacheSetting::Disabled => None,
        CacheSetting::FromEnv => std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(flatten)]
    table: CharacterTable,
    sha256: String,
}

pub(crate) fn table_path(dir: &Path, d: u32) -> PathBuf {
    dir.join(format!("chartable-d{d}.json"))
}

fn content_hash(table: &CharacterTable) -> Result<String> {
    let bytes = serde_json::to_vec(table)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Read a cached table, returning `None` when absent or failing its hash.
pub(crate) fn read_cached(dir: &Path, d: u32) -> Option<CharacterTable> {
    let text = fs::read_to_string(table_path(dir, d)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    let ok = file.table.d == d && content_hash(&file.table).ok()? == file.sha256;
    ok.then_some(file.table)
}

pub(crate) fn write_cached(dir: &Path, table: &CharacterTable) -> Result<()> {
    fs::create_dir_all(dir)?;
    let file = CacheFile { table: table.clone(), sha256: content_hash(table)? };
    let path = table_path(dir, table.d);
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec_pretty(&file)?)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

pub(crate) fn load_or_compute(d: u32) -> Result<CharacterTable> {
    let dir = cache_dir();
    if let Some(dir) = &dir {
        if let Some(t) = read_cached(dir, d) {
            return Ok(t);
        }
    }
    let table = CharacterTable::compute(d)?;
    if let Some(dir) = &dir {
        write_cached(dir, &table)?;
    }
    Ok(table)
}

/// Degrees with a valid cached table in `dir`.
pub fn cached_degrees(dir: &Path) -> Vec<u32> {
    (0..=super::MAX_TABLE_DEGREE).filter(|&d| read_cached(dir, d).is_some()).collect()
}

/// Remove every cached table in `dir`; returns how many files were deleted.
pub fn clear_cache(dir: &Path) -> Result<usize> {
    let mut n = 0;
    for d in 0..=super::MAX_TABLE_DEGREE {
        let p = table_path(dir, d);
        if p.exists() {
            fs::remove_file(p)?;
            n += 1;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper_detection() {
        let dir = tempfile::tempdir().unwrap();
        let t = CharacterTable::compute(4).unwrap();
        write_cached(dir.path(), &t).unwrap();
        assert_eq!(read_cached(dir.path(), 4), Some(t.clone()));
        assert_eq!(cached_degrees(dir.path()), vec![4]);

        let path = table_path(dir.path(), 4);
        let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        v["entries"][0][0] = serde_json::json!(7);
        fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
        assert_eq!(read_cached(dir.path(), 4), None);

        assert_eq!(clear_cache(dir.path()).unwrap(), 1);
        assert!(cached_degrees(dir.path()).is_empty());
    }
}
