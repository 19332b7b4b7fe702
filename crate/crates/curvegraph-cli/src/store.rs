//! Sample cache: orbit enumerations keyed by their full configuration.
//!
//! The key hashes the surface, seeds, generator set, bounds, and the
//! algorithm version; the stored file carries a content hash that is
//! re-verified on every read, so a corrupt or hand-edited cache entry is
//! rejected instead of silently reused.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use curvegraph::curves::{
    enumerate_curves, CurveClass, CurveGraphSample, FreeAutomorphism, SampleFile, SurfaceModel,
    ALGORITHM_VERSION,
};
use sha2::{Digest, Sha256};

pub struct EnumerateConfig {
    pub genus: u32,
    pub punctures: u32,
    pub depth: usize,
    pub maxlen: usize,
    pub cap: usize,
    /// Identifies the generator set: "builtin" or the generator file text.
    pub gens_tag: String,
}

impl EnumerateConfig {
    pub fn cache_key(&self, m: &SurfaceModel, seeds: &[CurveClass]) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!(
            "enumerate-v{ALGORITHM_VERSION}|{},{}|depth {}|maxlen {}|cap {}|",
            self.genus, self.punctures, self.depth, self.maxlen, self.cap
        ));
        for s in seeds {
            hasher.update(s.format(m));
            hasher.update("|");
        }
        hasher.update(&self.gens_tag);
        let digest = hasher.finalize();
        digest.iter().take(16).map(|b| format!("{b:02x}")).collect()
    }
}

pub fn cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_owned();
    }
    if let Ok(env) = std::env::var("CURVEGRAPH_CACHE") {
        return PathBuf::from(env);
    }
    PathBuf::from(".curvegraph-cache")
}

/// Returns the cached or freshly computed sample, plus whether it was a
/// cache hit.
pub fn sample_for(
    m: &SurfaceModel,
    seeds: &[CurveClass],
    gens: &[FreeAutomorphism],
    config: &EnumerateConfig,
    dir: &Path,
) -> Result<(CurveGraphSample, bool)> {
    let key = config.cache_key(m, seeds);
    let path = dir.join(format!("{key}.json"));
    if path.exists() {
        let text = fs::read_to_string(&path)
            .with_context(|| format!("reading cache file {}", path.display()))?;
        let file: SampleFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing cache file {}", path.display()))?;
        if file.config_key != key {
            bail!(
                "cache file {} was stored under config key {} but resolves to {}",
                path.display(),
                file.config_key,
                key
            );
        }
        let (_, sample) = file
            .load()
            .with_context(|| format!("validating cache file {}", path.display()))?;
        return Ok((sample, true));
    }
    let sample = enumerate_curves(m, seeds, gens, config.depth, config.maxlen, config.cap)?;
    fs::create_dir_all(dir)
        .with_context(|| format!("creating cache directory {}", dir.display()))?;
    let file = sample.to_file(m, &key);
    let text = serde_json::to_string(&file).expect("sample serializes");
    fs::write(&path, text).with_context(|| format!("writing cache file {}", path.display()))?;
    Ok((sample, false))
}
