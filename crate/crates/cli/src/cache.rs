//! On-disk cache of quantum product expansions.
//!
//! One JSON file (`products.json`) maps `"r|n|λ|μ"` keys to term lists with
//! coefficients as decimal strings, so entries are human-diffable and
//! byte-stable.  `QSC_CACHE_DIR` overrides the location; the default is
//! `$HOME/.cache/qsc`, falling back to `./.qsc-cache`.  A hit must be
//! bit-identical to recomputation — `qsc selftest` verifies every entry.

use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use qsc_core::serial::SCHEMA_VERSION;
use qsc_core::Partition;
use serde::{Deserialize, Serialize};

use crate::output::{render_parts, Term};
use crate::CliError;

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct CachedTerm {
    pub partition: Vec<u32>,
    pub q: u32,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct CacheFile {
    pub schema: u32,
    pub entries: BTreeMap<String, Vec<CachedTerm>>,
}

pub struct Store {
    path: PathBuf,
    file: CacheFile,
}

/// Cache directory honoring the `QSC_CACHE_DIR` override.
pub fn dir() -> PathBuf {
    if let Ok(d) = env::var("QSC_CACHE_DIR") {
        return PathBuf::from(d);
    }
    match env::var("HOME") {
        Ok(home) => PathBuf::from(home).join(".cache").join("qsc"),
        Err(_) => PathBuf::from(".qsc-cache"),
    }
}

/// Lookup key for one product query.
pub fn key(r: u32, n: u32, lhs: &Partition, rhs: &Partition) -> String {
    format!("{}|{}|{}|{}", r, n, render_parts(lhs.parts()), render_parts(rhs.parts()))
}

/// Inverse of [`key`], used when re-validating stored entries.
pub fn parse_key(key: &str) -> Result<(u32, u32, Partition, Partition), CliError> {
    let bad = || CliError::Internal(format!("unparsable cache key {key:?}"));
    let fields: Vec<&str> = key.split('|').collect();
    if fields.len() != 4 {
        return Err(bad());
    }
    let parse_parts = |s: &str| -> Result<Partition, CliError> {
        if s == "0" {
            return Ok(Partition::new(Vec::new())?);
        }
        let parts = s
            .split(',')
            .map(|w| w.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Partition::new(parts)?)
    };
    Ok((
        fields[0].parse().map_err(|_| bad())?,
        fields[1].parse().map_err(|_| bad())?,
        parse_parts(fields[2])?,
        parse_parts(fields[3])?,
    ))
}

pub fn to_cached(terms: &[Term]) -> Vec<CachedTerm> {
    terms
        .iter()
        .map(|t| CachedTerm { partition: t.partition.clone(), q: t.q, coeff: t.coeff.to_string() })
        .collect()
}

pub fn from_cached(key: &str, cached: &[CachedTerm]) -> Result<Vec<Term>, CliError> {
    cached
        .iter()
        .map(|t| {
            let coeff = BigInt::from_str(&t.coeff).map_err(|e| {
                CliError::Input(format!("cache entry {key:?} has bad coefficient: {e}"))
            })?;
            Ok(Term { partition: t.partition.clone(), q: t.q, coeff })
        })
        .collect()
}

impl Store {
    /// Opens (or initializes) the cache; `None` when caching is off.
    /// A file that fails to parse is reported as an input error naming
    /// the path, never silently rebuilt.
    pub fn open(no_cache: bool) -> Result<Option<Store>, CliError> {
        if no_cache {
            return Ok(None);
        }
        let path = dir().join("products.json");
        let file = if path.exists() {
            let body = fs::read_to_string(&path)?;
            let parsed: CacheFile = serde_json::from_str(&body).map_err(|e| {
                CliError::Input(format!(
                    "corrupt cache {} ({e}); delete the file to rebuild",
                    path.display()
                ))
            })?;
            if parsed.schema != SCHEMA_VERSION {
                return Err(CliError::Input(format!(
                    "cache {} has schema {} (expected {}); delete the file to rebuild",
                    path.display(),
                    parsed.schema,
                    SCHEMA_VERSION
                )));
            }
            parsed
        } else {
            CacheFile { schema: SCHEMA_VERSION, entries: BTreeMap::new() }
        };
        Ok(Some(Store { path, file }))
    }

    pub fn get(&self, key: &str) -> Option<Result<Vec<Term>, CliError>> {
        self.file.entries.get(key).map(|c| from_cached(key, c))
    }

    pub fn put(&mut self, key: String, terms: &[Term]) {
        self.file.entries.insert(key, to_cached(terms));
    }

    pub fn entries(&self) -> &BTreeMap<String, Vec<CachedTerm>> {
        &self.file.entries
    }

    /// Writes atomically (temp file + rename) so a crash never leaves a
    /// half-written cache behind.
    pub fn save(&self) -> Result<(), CliError> {
        if let Some(parent) = self.path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = self.path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&self.file)? + "\n")?;
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
