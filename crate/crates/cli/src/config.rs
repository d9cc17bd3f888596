//! Experiment configuration: one JSON document, every field overridable by
//! the flag of the same name.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use isoaxis_core::grp::{PresetSpec, Representation, Word, DEFAULT_DEPTH_CAP};
use isoaxis_core::spectra::DEFAULT_CONJ_CAP;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    /// Crossing angle of the pair along the twist.
    Angle,
    /// Distance between two disjoint axes along the twist.
    Separation,
    /// Distance from the endpoints of `first` to curve lifts.
    Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Against {
    /// The group against itself.
    #[serde(rename = "self")]
    #[value(name = "self")]
    Itself,
    /// The group against a conjugate.
    Conjugate,
    /// A subgroup against the group.
    Subgroup,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub preset: String,
    pub compare_preset: Option<String>,
    pub depth: usize,
    pub conj_depth: Option<usize>,
    pub tol: f64,
    pub include_self: bool,
    pub curve: String,
    pub first: String,
    pub second: String,
    pub pair_conjugator: String,
    pub sweep: SweepKind,
    pub t_min: f64,
    pub t_max: f64,
    pub t_step: f64,
    pub against: Vec<Against>,
    /// A word, or `random` for a seeded random isometry.
    pub conjugator: String,
    pub subgroup: Vec<String>,
    pub depth2: Option<usize>,
    pub out_dir: PathBuf,
    pub workers: usize,
    pub seed: u64,
    pub unsafe_depth: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            preset: "modular_torus".into(),
            compare_preset: None,
            depth: 4,
            conj_depth: None,
            tol: 1e-9,
            include_self: true,
            curve: "a".into(),
            first: "a".into(),
            second: "b".into(),
            pair_conjugator: String::new(),
            sweep: SweepKind::Angle,
            t_min: -30.0,
            t_max: 30.0,
            t_step: 0.25,
            against: vec![Against::Itself, Against::Conjugate, Against::Subgroup],
            conjugator: "random".into(),
            subgroup: vec!["aa".into(), "b".into(), "aBA".into()],
            depth2: None,
            out_dir: PathBuf::from("out"),
            workers: 0,
            seed: 0,
            unsafe_depth: false,
        }
    }
}

/// Flags overriding config fields one to one.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub compare_preset: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub conj_depth: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub include_self: Option<bool>,
    #[arg(long)]
    pub curve: Option<String>,
    #[arg(long)]
    pub first: Option<String>,
    #[arg(long)]
    pub second: Option<String>,
    #[arg(long)]
    pub pair_conjugator: Option<String>,
    #[arg(long, value_enum)]
    pub sweep: Option<SweepKind>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_step: Option<f64>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub against: Option<Vec<Against>>,
    #[arg(long)]
    pub conjugator: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub subgroup: Option<Vec<String>>,
    #[arg(long)]
    pub depth2: Option<usize>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Lift the depth caps.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub unsafe_depth: Option<bool>,
}

impl ExperimentConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn apply(&mut self, o: Overrides) {
        macro_rules! set {
            ($($f:ident),*) => {$(if let Some(v) = o.$f { self.$f = v; })*};
        }
        macro_rules! set_some {
            ($($f:ident),*) => {$(if let Some(v) = o.$f { self.$f = Some(v); })*};
        }
        set!(preset, depth, tol, include_self, curve, first, second, pair_conjugator, sweep);
        set!(t_min, t_max, t_step, against, conjugator, subgroup, out_dir, workers, seed, unsafe_depth);
        set_some!(compare_preset, conj_depth, depth2);
    }

    pub fn conj_depth(&self) -> usize {
        self.conj_depth.unwrap_or(self.depth)
    }

    /// Deep depth of axes comparisons; by default `2·depth + 1`, within
    /// the cap.
    pub fn depth2(&self) -> usize {
        self.depth2
            .unwrap_or((2 * self.depth + 1).min(self.word_cap()).max(self.depth))
    }

    pub fn word_cap(&self) -> usize {
        if self.unsafe_depth {
            DEFAULT_DEPTH_CAP.max(self.depth).max(self.depth2.unwrap_or(0))
        } else {
            DEFAULT_DEPTH_CAP
        }
    }

    pub fn conj_cap(&self) -> usize {
        if self.unsafe_depth {
            DEFAULT_CONJ_CAP.max(self.conj_depth())
        } else {
            DEFAULT_CONJ_CAP
        }
    }

    /// Checks everything that does not need a command: exit code 2 for bad
    /// values, 3 for depths over the caps.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.depth == 0 || self.conj_depth == Some(0) {
            return bad("depths must be at least 1".into());
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return bad(format!("tolerance {} must be finite and non-negative", self.tol));
        }
        if !(self.t_min.is_finite() && self.t_max.is_finite() && self.t_step.is_finite())
            || self.t_step <= 0.0
            || self.t_min > self.t_max
        {
            return bad(format!(
                "empty t-grid [{}, {}] step {}",
                self.t_min, self.t_max, self.t_step
            ));
        }
        if self.depth2() < self.depth {
            return bad("depth2 must be at least depth".into());
        }
        self.preset_spec(&self.preset)?;
        if let Some(p) = &self.compare_preset {
            self.preset_spec(p)?;
        }
        for w in [&self.first, &self.second, &self.pair_conjugator]
            .into_iter()
            .chain(&self.subgroup)
        {
            parse_word(w)?;
        }
        if self.conjugator != "random" {
            parse_word(&self.conjugator)?;
        }
        if self.curve_generator().is_none() {
            return bad(format!("curve {:?} must be a single generator letter", self.curve));
        }
        if self.depth > self.word_cap() || self.depth2() > self.word_cap() {
            return Err(CliError::Cap(format!(
                "word depth {} exceeds {}",
                self.depth.max(self.depth2()),
                self.word_cap()
            )));
        }
        if self.conj_depth() > self.conj_cap() {
            return Err(CliError::Cap(format!(
                "conjugator depth {} exceeds {}",
                self.conj_depth(),
                self.conj_cap()
            )));
        }
        Ok(())
    }

    pub fn preset_spec(&self, name: &str) -> Result<PresetSpec, CliError> {
        Ok(name.parse::<PresetSpec>()?)
    }

    pub fn build(&self, name: &str) -> Result<Representation, CliError> {
        Ok(self.preset_spec(name)?.build()?)
    }

    pub fn curve_generator(&self) -> Option<usize> {
        let w = parse_word(&self.curve).ok()?;
        match w.letters() {
            [l] if !l.is_inverse() => Some(l.generator()),
            _ => None,
        }
    }

    /// Grid `t_min + i·t_step` up to `t_max`.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.t_max - self.t_min) / self.t_step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.t_min + i as f64 * self.t_step).collect()
    }

    /// SHA-256 of the canonical JSON of the fields that determine the
    /// results: everything but the output directory and the worker count.
    pub fn digest(&self) -> String {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(m) = v.as_object_mut() {
            m.remove("out_dir");
            m.remove("workers");
        }
        hex::encode(Sha256::digest(v.to_string().as_bytes()))
    }
}

pub fn parse_word(s: &str) -> Result<Word, CliError> {
    s.parse::<Word>()
        .map_err(|e| CliError::Config(format!("word {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn digest_ignores_paths_and_workers() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        b.out_dir = "elsewhere".into();
        b.workers = 7;
        assert_eq!(a.digest(), b.digest());
        b.seed = 1;
        assert_ne!(a.digest(), b.digest());
    }

    #[test]
    fn grid_is_inclusive() {
        let c = ExperimentConfig::default();
        let g = c.grid();
        assert_eq!(g.len(), 241);
        assert_eq!(g[0], -30.0);
        assert_eq!(*g.last().unwrap(), 30.0);
    }

    #[test]
    fn exit_codes() {
        let mut c = ExperimentConfig {
            depth: 0,
            ..Default::default()
        };
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        c.depth = 13;
        assert_eq!(c.validate().unwrap_err().exit_code(), 3);
        c.unsafe_depth = true;
        c.validate().unwrap();
        c = ExperimentConfig {
            t_step: 0.0,
            ..Default::default()
        };
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        c = ExperimentConfig {
            preset: "hyperbolic_pretzel".into(),
            ..Default::default()
        };
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        c = ExperimentConfig {
            conj_depth: Some(11),
            ..Default::default()
        };
        assert_eq!(c.validate().unwrap_err().exit_code(), 3);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r: Result<ExperimentConfig, _> = serde_json::from_str(r#"{"depht": 3}"#);
        assert!(r.is_err());
        let c: ExperimentConfig = serde_json::from_str(r#"{"depth": 3, "against": ["self"]}"#).unwrap();
        assert_eq!(c.depth, 3);
        assert_eq!(c.against, vec![Against::Itself]);
    }
}
