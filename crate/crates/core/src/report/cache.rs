//! Content-addressed file cache for enumerations and verdicts.
//!
//! The key hashes the tool version, the kind of result, the group label and
//! the group table, so a changed table never reuses a stale entry. Files are
//! written to a temporary name and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::{parse, sha256_hex, to_canonical_json, TOOL_VERSION};
use crate::enumerate::BraceEnumeration;
use crate::error::Result;
use crate::group::FiniteGroup;

pub const DEFAULT_CACHE_DIR: &str = ".braceforge-cache";
pub const CACHE_DIR_ENV: &str = "BRACEFORGE_CACHE_DIR";

const ENUMERATION: &str = "enumeration";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusCache {
    dir: PathBuf,
}

impl CensusCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CensusCache { dir: dir.into() }
    }

    /// Uses `dir` if given, else `$BRACEFORGE_CACHE_DIR`, else the default.
    pub fn resolve(dir: Option<PathBuf>) -> Self {
        let dir = dir
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Key of the cached enumeration for `g`.
    pub fn key(&self, g: &FiniteGroup) -> String {
        self.key_for(ENUMERATION, g)
    }

    /// Key of a cached result of the given kind for `g`.
    pub fn key_for(&self, kind: &str, g: &FiniteGroup) -> String {
        let material = format!(
            "braceforge {TOOL_VERSION}\n{kind}\n{}\n{}",
            g.label(),
            to_canonical_json(&g.rows())
        );
        sha256_hex(material.as_bytes())
    }

    pub fn path_for(&self, g: &FiniteGroup) -> PathBuf {
        self.path_for_kind(ENUMERATION, g)
    }

    pub fn path_for_kind(&self, kind: &str, g: &FiniteGroup) -> PathBuf {
        self.dir.join(format!("{kind}-{}.json", self.key_for(kind, g)))
    }

    /// Returns the stored enumeration for `g`, or computes and stores it.
    pub fn get_or_compute(
        &self,
        g: &FiniteGroup,
        compute: impl FnOnce() -> Result<BraceEnumeration>,
    ) -> Result<BraceEnumeration> {
        self.entry(ENUMERATION, g, |e: &BraceEnumeration| e.additive == *g, compute)
    }

    /// Returns the stored result of `kind` for `g` if it parses and passes
    /// `accept`; otherwise computes it and overwrites the entry.
    pub fn entry<T: Serialize + DeserializeOwned>(
        &self,
        kind: &str,
        g: &FiniteGroup,
        accept: impl Fn(&T) -> bool,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        let path = self.path_for_kind(kind, g);
        if let Ok(bytes) = fs::read(&path) {
            match parse::<T>(&bytes) {
                Ok(value) if accept(&value) => return Ok(value),
                Ok(_) => log::warn!(
                    "cache entry {} does not match its key; recomputing",
                    path.display()
                ),
                Err(err) => log::warn!(
                    "cache entry {} is corrupt ({err}); recomputing",
                    path.display()
                ),
            }
        }
        let value = compute()?;
        self.store(&path, &value)?;
        Ok(value)
    }

    fn store<T: Serialize>(&self, path: &Path, value: &T) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(to_canonical_json(value).as_bytes())?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}
