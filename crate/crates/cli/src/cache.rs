//! Content-addressed store of JSON reports.
//!
//! Keys are SHA-256 digests of the module, the operation, a canonical
//! argument encoding and [`CODE_VERSION`]; changing any of them misses.
//! Entries are written to a temporary file in the cache directory and
//! renamed into place, so concurrent writers never expose partial files.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, SCHEMA_VERSION};

/// Environment variable naming the cache directory. Unset or empty
/// disables caching.
pub const CACHE_ENV: &str = "MGN_CACHE_DIR";

/// Mixed into every key together with the schema version, so a release or
/// a schema change invalidates old entries.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default)]
pub struct ResultCache {
    dir: Option<PathBuf>,
}

impl ResultCache {
    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        ResultCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        ResultCache {
            dir: Some(dir.into()),
        }
    }

    /// The directory from [`CACHE_ENV`], if set.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => ResultCache::at(d),
            _ => ResultCache::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Hex digest identifying `(module, operation, args)` at this code
    /// version. `args` is serialized with sorted keys.
    pub fn key<A: Serialize>(module: &str, operation: &str, args: &A) -> String {
        let args = serde_json::to_value(args).expect("arguments serialize");
        let mut h = Sha256::new();
        for part in [
            module,
            operation,
            &args.to_string(),
            CODE_VERSION,
            &SCHEMA_VERSION.to_string(),
        ] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// The cached value, or `None` on a miss or an unreadable entry.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Stores `value` atomically. A disabled cache does nothing.
    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<(), CliError> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, value)?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| CliError::Io(e.error.to_string()))?;
        Ok(())
    }

    /// Looks up `key`, computing and storing the value on a miss.
    pub fn get_or_compute<T, F>(&self, key: &str, compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &v)?;
        Ok(v)
    }
}
