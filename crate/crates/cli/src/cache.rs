//! On-disk cache of closure dimensions.
//!
//! One JSON file per (congruence key, symmetrize flag). A file that fails to
//! parse, carries another format tag, or names another key is ignored and
//! overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "setoperads-dims/1";

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct CacheFile {
    format: String,
    operad_key: String,
    symmetrize: bool,
    entries: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct DimsCache {
    dir: PathBuf,
}

impl DimsCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DimsCache { dir: dir.into() }
    }

    /// `$XDG_CACHE_HOME/setoperads`, falling back to `~/.cache/setoperads`.
    pub fn default_dir() -> PathBuf {
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
            return PathBuf::from(d).join("setoperads");
        }
        match std::env::var_os("HOME") {
            Some(h) => PathBuf::from(h).join(".cache").join("setoperads"),
            None => PathBuf::from(".setoperads-cache"),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str, symmetrize: bool) -> PathBuf {
        let flag = if symmetrize { "s" } else { "r" };
        self.dir.join(format!("dims-{key}-{flag}.json"))
    }

    /// Cached dimensions for arities `1..`, possibly fewer than wanted.
    pub fn load(&self, key: &str, symmetrize: bool) -> Option<Vec<u64>> {
        let text = fs::read_to_string(self.path(key, symmetrize)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        (file.format == FORMAT
            && file.operad_key == key
            && file.symmetrize == symmetrize
            && sane(&file.entries))
        .then_some(file.entries)
    }

    /// Writes through a temporary file so readers never see a partial file.
    pub fn store(&self, key: &str, symmetrize: bool, entries: &[u64]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            format: FORMAT.to_string(),
            operad_key: key.to_string(),
            symmetrize,
            entries: entries.to_vec(),
        };
        let target = self.path(key, symmetrize);
        let tmp = target.with_extension(format!("tmp{}", std::process::id()));
        let mut out = fs::File::create(&tmp)?;
        out.write_all(serde_json::to_string(&file)?.as_bytes())?;
        out.sync_all()?;
        fs::rename(tmp, target)
    }
}

/// Arity 1 always has dimension 1; anything else is corrupt.
fn sane(entries: &[u64]) -> bool {
    entries.first() == Some(&1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DimsCache::new(dir.path());
        assert_eq!(cache.load("0123", false), None);
        cache.store("0123", false, &[1, 2, 6]).unwrap();
        assert_eq!(cache.load("0123", false), Some(vec![1, 2, 6]));
        assert_eq!(cache.load("0123", true), None);
        fs::write(cache.path("0123", false), "{not json").unwrap();
        assert_eq!(cache.load("0123", false), None);
        fs::write(
            cache.path("0123", false),
            r#"{"format":"other/9","operad_key":"0123","symmetrize":false,"entries":[1]}"#,
        )
        .unwrap();
        assert_eq!(cache.load("0123", false), None);
    }
}
