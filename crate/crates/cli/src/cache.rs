//! On-disk cache of built curves, keyed by recipe and field.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use detq_core::FieldSpec;
use sha2::{Digest, Sha256};

use crate::fixtures::{CurveBundle, Recipe};

pub fn key(recipe: &Recipe, field: FieldSpec) -> String {
    let src = serde_json::to_vec(&(recipe, field)).expect("recipe serializes");
    hex::encode(&Sha256::digest(&src)[..16])
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("curve-{key}.json"))
}

/// A cached bundle, or `None` when absent or unreadable.
pub fn load(dir: &Path, key: &str) -> Option<CurveBundle> {
    let text = fs::read_to_string(path(dir, key)).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(dir: &Path, key: &str, bundle: &CurveBundle) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    let p = path(dir, key);
    let tmp = p.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(bundle)?)?;
    fs::rename(&tmp, &p)?;
    Ok(())
}
