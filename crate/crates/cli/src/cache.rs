//! On-disk cache of Rees quotient tables, keyed by a hash of the sorted,
//! deduplicated generating words.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use monvar::monoid::build_sw;
use monvar::{FiniteMonoid, Word};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "MONVAR_CACHE_DIR";

pub fn normalize(words: &[Word]) -> Vec<Word> {
    let mut ws = words.to_vec();
    ws.sort();
    ws.dedup();
    ws
}

pub fn key(words: &[Word]) -> String {
    let text: Vec<String> = normalize(words).iter().map(Word::to_string).collect();
    let digest = Sha256::digest(text.join("\n").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".cache"))
}

/// Loads S(W) from the cache or builds and stores it. Cache write failures
/// are reported on stderr and otherwise ignored.
pub fn load_or_build(words: &[Word]) -> Result<FiniteMonoid> {
    let path = dir().join(format!("sw-{}.json", key(words)));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(m) = serde_json::from_str::<FiniteMonoid>(&text) {
            return Ok(m);
        }
        eprintln!("warning: ignoring unreadable cache entry {}", path.display());
    }
    let m = build_sw(&normalize(words));
    let stored = fs::create_dir_all(dir())
        .and_then(|_| fs::write(&path, serde_json::to_string(&m).expect("tables serialize")));
    if let Err(e) = stored {
        eprintln!("warning: could not write cache entry {}: {e}", path.display());
    }
    Ok(m)
}

pub fn read_monoid(path: &PathBuf) -> Result<FiniteMonoid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing monoid table {}", path.display()))
}
