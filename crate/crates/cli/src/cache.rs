//! Content-addressed store of truncated invariants.
//!
//! An entry is keyed by everything except the level and holds the highest
//! level computed so far; lower levels are served by projection.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use habiro_core::habiro::HabiroTrunc;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Key<'a> {
    pub knot: &'a str,
    pub quantity: &'a str,
    pub b: usize,
    pub shifts: &'a [i64],
    pub m: usize,
}

impl Key<'_> {
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("keys serialize");
        hex::encode(Sha256::digest(bytes))
    }
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("creating cache directory {}", d.display()))?;
        }
        Ok(Cache { dir })
    }

    fn path(&self, key: &Key) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", key.digest())))
    }

    /// A cached value at `level` or above, projected to `level`.
    pub fn get(&self, key: &Key, level: usize) -> Option<HabiroTrunc> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let stored: HabiroTrunc = serde_json::from_str(&text).ok()?;
        if stored.level() < level {
            return None;
        }
        stored.project(level).ok()
    }

    /// Stores `value` unless an entry of at least the same level exists.
    /// Writes go through a temporary file and an atomic rename.
    pub fn put(&self, key: &Key, value: &HabiroTrunc) -> Result<()> {
        let (Some(dir), Some(path)) = (&self.dir, self.path(key)) else {
            return Ok(());
        };
        if self.get(key, value.level()).is_some() {
            return Ok(());
        }
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, value)?;
        tmp.write_all(b"\n")?;
        tmp.persist(&path)
            .with_context(|| format!("writing cache entry {}", path.display()))?;
        Ok(())
    }
}
