//! On-disk JSON cache: `<root>/<schema>/<pair-slug>/<artifact>.json`.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use hsp_core::HermitianPair;
use serde_json::Value;

/// Bumped whenever a cached artifact changes shape.
pub const SCHEMA_VERSION: &str = "v1";

pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    pub fn new(root: Option<PathBuf>) -> Self {
        Cache { root }
    }

    fn path(&self, pair: HermitianPair, artifact: &str) -> Option<PathBuf> {
        let root = self.root.as_ref()?;
        Some(root.join(SCHEMA_VERSION).join(pair.slug()).join(format!("{artifact}.json")))
    }

    /// Returns the stored value if present, otherwise computes and stores
    /// it. A top-level `cached` field records which happened.
    pub fn get_or_compute(
        &self,
        pair: HermitianPair,
        artifact: &str,
        compute: impl FnOnce() -> Result<Value>,
    ) -> Result<Value> {
        let path = self.path(pair, artifact);
        if let Some(p) = &path {
            if let Ok(text) = fs::read_to_string(p) {
                if let Ok(mut v) = serde_json::from_str::<Value>(&text) {
                    set_cached(&mut v, true);
                    return Ok(v);
                }
            }
        }
        let mut v = compute()?;
        if let Some(p) = &path {
            let dir = p.parent().expect("cache path has a parent");
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let tmp = p.with_extension("json.tmp");
            fs::write(&tmp, serde_json::to_string(&v)?).with_context(|| format!("writing {}", tmp.display()))?;
            fs::rename(&tmp, p).with_context(|| format!("writing {}", p.display()))?;
        }
        set_cached(&mut v, false);
        Ok(v)
    }
}

fn set_cached(v: &mut Value, cached: bool) {
    if let Value::Object(m) = v {
        m.insert("cached".into(), Value::Bool(cached));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hit_after_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let p = HermitianPair::e6d5();
        let a = cache.get_or_compute(p, "x", || Ok(json!({"a": 1}))).unwrap();
        assert_eq!(a, json!({"a": 1, "cached": false}));
        let b = cache.get_or_compute(p, "x", || panic!("should hit")).unwrap();
        assert_eq!(b, json!({"a": 1, "cached": true}));
        assert!(dir.path().join("v1/E6D5/x.json").exists());
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = Cache::new(None);
        let v = cache.get_or_compute(HermitianPair::e6d5(), "x", || Ok(json!({}))).unwrap();
        assert_eq!(v["cached"], false);
    }
}
