//! On-disk cache of full-pass tallies, one JSON file per `n`.
//!
//! Only raw counts are stored; rescaled coefficients are recomputed on load.
//! Integers are written as decimal strings.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::engine::Tally;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::polygon::double_factorial_odd;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CacheFile {
    schema_version: u32,
    n: usize,
    gluings: String,
    tallies: Vec<CacheEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CacheEntry {
    mu: Partition,
    raw_count: String,
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("zkerov-cache-v{SCHEMA_VERSION}-n{n}.json"))
}

fn parse_decimal(s: &str, what: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| Error::Cache(format!("{what} {s:?} is not a decimal integer")))
}

/// Loads the cached tally for `n`. A missing file or a different schema
/// version is a miss; a malformed file is an error.
pub fn load(dir: &Path, n: usize) -> Result<Option<Tally>> {
    let path = cache_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let file: CacheFile = serde_json::from_str(&text)
        .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    if file.schema_version != SCHEMA_VERSION {
        return Ok(None);
    }
    if file.n != n {
        return Err(Error::Cache(format!(
            "{} holds n = {}, expected {n}",
            path.display(),
            file.n
        )));
    }
    let gluings = parse_decimal(&file.gluings, "gluings")?;
    if gluings != BigUint::from(double_factorial_odd(n)) {
        return Err(Error::Cache(format!(
            "{} records {gluings} gluings, which is wrong for n = {n}",
            path.display()
        )));
    }
    let mut raw = BTreeMap::new();
    for entry in file.tallies {
        let count = parse_decimal(&entry.raw_count, "rawCount")?;
        if raw.insert(entry.mu.clone(), count).is_some() {
            return Err(Error::Cache(format!("duplicate entry for {:?}", entry.mu)));
        }
    }
    Ok(Some(Tally {
        n,
        doubled_genus: None,
        gluings,
        raw,
    }))
}

/// Writes a full-pass tally. Restricted (single genus) tallies are refused.
pub fn store(dir: &Path, tally: &Tally) -> Result<PathBuf> {
    if tally.doubled_genus.is_some() {
        return Err(Error::Cache("only full-pass tallies are cached".into()));
    }
    fs::create_dir_all(dir)?;
    let file = CacheFile {
        schema_version: SCHEMA_VERSION,
        n: tally.n,
        gluings: tally.gluings.to_string(),
        tallies: tally
            .raw
            .iter()
            .map(|(mu, c)| CacheEntry {
                mu: mu.clone(),
                raw_count: c.to_string(),
            })
            .collect(),
    };
    let path = cache_path(dir, tally.n);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string_pretty(&file)?)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}
