use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{hurwitz_connected, hurwitz_disconnected, BranchData, HurwitzValue};
use crate::error::Result;
use crate::exactalg::{fmt_rational, parse_rational};
use crate::partitions::Partition;
use crate::symchar::cache_dir;

/// One cached value: `{d, g, classes, s, connected, value}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HurwitzCacheEntry {
    pub d: u32,
    pub g: u32,
    pub classes: Vec<Partition>,
    pub s: u32,
    pub connected: bool,
    pub value: String,
}

fn subdir(dir: &Path) -> PathBuf {
    dir.join("hurwitz")
}

fn key_hash(b: &BranchData, connected: bool) -> Result<String> {
    let bytes = serde_json::to_vec(&(b.canonical(), connected))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn entry_path(dir: &Path, b: &BranchData, connected: bool) -> Result<PathBuf> {
    Ok(subdir(dir).join(format!("{}.json", key_hash(b, connected)?)))
}

fn read_entry(path: &Path) -> Option<HurwitzCacheEntry> {
    serde_json::from_str(&fs::read_to_string(path).ok()?).ok()
}

/// Connected or disconnected Hurwitz number, read from and written to the
/// disk cache when one is active.
pub fn hurwitz_cached(b: &BranchData, connected: bool) -> Result<HurwitzValue> {
    b.validate()?;
    let compute = || if connected { hurwitz_connected(b) } else { hurwitz_disconnected(b) };
    let Some(dir) = cache_dir() else {
        return compute();
    };
    let path = entry_path(&dir, b, connected)?;
    let key = b.canonical();
    if let Some(e) = read_entry(&path) {
        let same = e.d == key.d && e.g == key.g && e.classes == key.classes && e.s == key.s;
        if same && e.connected == connected {
            if let Ok(value) = parse_rational(&e.value) {
                return Ok(HurwitzValue { value, connected });
            }
        }
    }
    let v = compute()?;
    let entry = HurwitzCacheEntry {
        d: key.d,
        g: key.g,
        classes: key.classes,
        s: key.s,
        connected,
        value: fmt_rational(&v.value),
    };
    fs::create_dir_all(subdir(&dir))?;
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&entry)?)?;
    fs::rename(&tmp, &path)?;
    Ok(v)
}

/// All readable cache entries in `dir`, sorted by file name.
pub fn cached_hurwitz(dir: &Path) -> Vec<HurwitzCacheEntry> {
    let Ok(rd) = fs::read_dir(subdir(dir)) else {
        return Vec::new();
    };
    let mut paths: Vec<PathBuf> = rd.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    paths.iter().filter_map(|p| read_entry(p)).collect()
}

/// Remove every cached Hurwitz value in `dir`; returns the file count.
pub fn clear_hurwitz_cache(dir: &Path) -> Result<usize> {
    let Ok(rd) = fs::read_dir(subdir(dir)) else {
        return Ok(0);
    };
    let mut n = 0;
    for e in rd {
        let p = e?.path();
        if p.extension().is_some_and(|x| x == "json") {
            fs::remove_file(p)?;
            n += 1;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symchar::{set_cache_dir, CacheSetting};

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let b = BranchData::new(3, 0, vec![Partition::parse("3").unwrap()], 2).unwrap();
        let direct = hurwitz_connected(&b).unwrap();
        let path = entry_path(dir.path(), &b, true).unwrap();
        // write and read through the file functions, not the global setting
        set_cache_dir(CacheSetting::Dir(dir.path().to_path_buf()));
        let first = hurwitz_cached(&b, true);
        set_cache_dir(CacheSetting::FromEnv);
        assert_eq!(first.unwrap(), direct);
        assert!(path.exists());
        let e = read_entry(&path).unwrap();
        assert_eq!(e.value, fmt_rational(&direct.value));
        assert_eq!(cached_hurwitz(dir.path()).len(), 1);
        assert_eq!(clear_hurwitz_cache(dir.path()).unwrap(), 1);
        assert!(cached_hurwitz(dir.path()).is_empty());
    }
}
