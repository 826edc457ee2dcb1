//! On-disk result cache keyed by command and parameters.
//!
//! Failures to read or write the cache are ignored; it only ever saves work.

use std::fs;
use std::path::PathBuf;

use chrono::{DateTime, Utc};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_ENV: &str = "COREABACUS_CACHE";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub payload: serde_json::Value,
    pub created_at: DateTime<Utc>,
    pub tool_version: String,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// `$COREABACUS_CACHE`, else the platform data directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| dirs::data_dir().map(|d| d.join("coreabacus").join("cache")));
        Cache { dir }
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        let name: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect();
        self.dir.as_ref().map(|d| d.join(format!("{name}.json")))
    }

    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path_for(key)?).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.key != key || entry.tool_version != TOOL_VERSION {
            return None;
        }
        serde_json::from_value(entry.payload).ok()
    }

    pub fn store<T: Serialize>(&self, key: &str, value: &T) {
        let (Some(path), Ok(payload)) = (self.path_for(key), serde_json::to_value(value)) else {
            return;
        };
        let entry = CacheEntry {
            key: key.to_string(),
            payload,
            created_at: Utc::now(),
            tool_version: TOOL_VERSION.to_string(),
        };
        let Ok(text) = serde_json::to_string(&entry) else {
            return;
        };
        if let Some(parent) = path.parent() {
            let _ = fs::create_dir_all(parent);
        }
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }

    /// Returns the cached value for `key`, computing and storing it on a miss.
    pub fn get_or_compute<T, E>(&self, key: &str, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(hit) = self.load(key) {
            return Ok(hit);
        }
        let value = compute()?;
        self.store(key, &value);
        Ok(value)
    }
}
