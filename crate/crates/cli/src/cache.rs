//! On-disk cache of word balls and axes sets.
//!
//! Files are JSON with a versioned header. Anything unreadable or
//! mismatched is recomputed and overwritten, so the cache never changes
//! results.

use std::path::{Path, PathBuf};

use isoaxis_core::grp::{Ball, Representation, Word};
use isoaxis_core::hypgeom::Geodesic;
use isoaxis_core::spectra::AxesSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const CACHE_ENV: &str = "ISOAXIS_CACHE_DIR";
const FORMAT: &str = "isoaxis-cache";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct BallFile {
    format: String,
    version: u32,
    rank: usize,
    depth: usize,
    words: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct AxesFile {
    format: String,
    version: u32,
    key: String,
    depth: usize,
    axes: Vec<Geodesic>,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    hits: usize,
}

impl Cache {
    /// `$ISOAXIS_CACHE_DIR`, else `$XDG_CACHE_HOME/isoaxis` or
    /// `~/.cache/isoaxis`; disabled when none is set.
    pub fn from_env() -> Self {
        let var = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
        let dir = var(CACHE_ENV)
            .or_else(|| var("XDG_CACHE_HOME").map(|d| d.join("isoaxis")))
            .or_else(|| var("HOME").map(|d| d.join(".cache").join("isoaxis")));
        Self { dir, hits: 0 }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: Some(dir.into()),
            hits: 0,
        }
    }

    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Number of lookups answered from disk.
    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn ball(&mut self, rank: usize, depth: usize, cap: usize) -> Result<Ball, CliError> {
        let name = format!("ball-r{rank}-d{depth}.json");
        if let Some(f) = self.read::<BallFile>(&name) {
            if f.format == FORMAT && f.version == VERSION && f.rank == rank && f.depth == depth {
                if let Ok(b) = Ball::from_words(rank, depth, f.words) {
                    self.hits += 1;
                    return Ok(b);
                }
            }
        }
        let ball = Ball::enumerate(rank, depth, cap)?;
        self.write(
            &name,
            &BallFile {
                format: FORMAT.into(),
                version: VERSION,
                rank,
                depth,
                words: ball.words().to_vec(),
            },
        );
        Ok(ball)
    }

    /// Axes of the hyperbolic elements of `rep` in the ball of radius
    /// `depth`, keyed by the generator matrices.
    pub fn axes(&mut self, rep: &Representation, depth: usize, cap: usize) -> Result<AxesSet, CliError> {
        let key = rep_key(rep);
        let name = format!("axes-{}-d{depth}.json", &key[..16]);
        if let Some(f) = self.read::<AxesFile>(&name) {
            if f.format == FORMAT && f.version == VERSION && f.key == key && f.depth == depth {
                self.hits += 1;
                return Ok(AxesSet::from_geodesics(depth, f.axes));
            }
        }
        let ball = self.ball(rep.rank(), depth, cap)?;
        let set = AxesSet::from_geodesics(
            depth,
            rep.evaluate_ball(&ball).into_iter().filter_map(|g| g.axis().ok()),
        );
        self.write(
            &name,
            &AxesFile {
                format: FORMAT.into(),
                version: VERSION,
                key,
                depth,
                axes: set.iter().copied().collect(),
            },
        );
        Ok(set)
    }

    fn read<T: for<'de> Deserialize<'de>>(&self, name: &str) -> Option<T> {
        let path = self.dir.as_ref()?.join(name);
        let text = std::fs::read(path).ok()?;
        serde_json::from_slice(&text).ok()
    }

    // Best effort: a cache that cannot be written is just slower.
    fn write<T: Serialize>(&self, name: &str, value: &T) {
        let Some(dir) = &self.dir else { return };
        if std::fs::create_dir_all(dir).is_err() {
            return;
        }
        let Ok(bytes) = serde_json::to_vec(value) else { return };
        let tmp = dir.join(format!("{name}.{}.tmp", std::process::id()));
        if std::fs::write(&tmp, bytes).is_ok() && std::fs::rename(&tmp, dir.join(name)).is_err() {
            let _ = std::fs::remove_file(&tmp);
        }
    }
}

/// Hash of the exact generator entries.
fn rep_key(rep: &Representation) -> String {
    let mut h = Sha256::new();
    h.update((rep.rank() as u64).to_le_bytes());
    for g in rep.generators() {
        for e in g.entries() {
            h.update(e.to_bits().to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use isoaxis_core::grp::preset;
    use isoaxis_core::spectra::axes_set;

    #[test]
    fn cached_values_equal_fresh_ones() {
        let dir = tempfile::tempdir().unwrap();
        let rep = preset("perturbed_torus(0.05)").unwrap();
        let fresh = axes_set(&rep, 3).unwrap();
        let mut cache = Cache::at(dir.path());
        assert_eq!(cache.axes(&rep, 3, 12).unwrap(), fresh);
        assert_eq!(cache.hits(), 0);
        assert_eq!(cache.axes(&rep, 3, 12).unwrap(), fresh);
        assert_eq!(cache.hits(), 1);
        let ball = cache.ball(2, 3, 12).unwrap();
        assert_eq!(ball.words(), Ball::new(2, 3).unwrap().words());
        assert_eq!(cache.hits(), 2);
    }

    #[test]
    fn corrupt_files_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("ball-r2-d2.json"), b"{\"format\": 1}").unwrap();
        let mut cache = Cache::at(dir.path());
        assert_eq!(cache.ball(2, 2, 12).unwrap().len(), 17);
        assert_eq!(cache.hits(), 0);
        assert_eq!(cache.ball(2, 2, 12).unwrap().len(), 17);
        assert_eq!(cache.hits(), 1);
    }

    #[test]
    fn disabled_cache_still_computes() {
        let mut cache = Cache::disabled();
        assert_eq!(cache.ball(2, 1, 12).unwrap().len(), 5);
        assert!(cache.dir().is_none());
    }
}
