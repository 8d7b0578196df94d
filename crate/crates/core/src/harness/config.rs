use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ccucb::MIN_ALPHA;
use crate::error::{Error, Result};
use crate::model::{ArmParams, BanditInstance, DEFAULT_EPSILON};

/// One simulation experiment: an instance, learner settings and the
/// replication plan.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub instance: BanditInstance,
    pub alpha: f64,
    pub horizon: u64,
    pub runs: u64,
    pub base_seed: u64,
    pub known_cost: bool,
    /// Keep every `log_every`-th regret record (the final step is always kept).
    pub log_every: u64,
}

/// On-disk JSON layout of [`ExperimentConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub arms: Vec<ArmParams>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    pub horizon: u64,
    #[serde(default = "default_runs")]
    pub runs: u64,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub known_cost: bool,
    #[serde(default = "default_log_every")]
    pub log_every: u64,
}

fn default_alpha() -> f64 {
    MIN_ALPHA
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

fn default_runs() -> u64 {
    1
}

fn default_log_every() -> u64 {
    1
}

impl ExperimentConfig {
    pub fn new(instance: BanditInstance, horizon: u64, runs: u64, base_seed: u64) -> Self {
        Self {
            instance,
            alpha: MIN_ALPHA,
            horizon,
            runs,
            base_seed,
            known_cost: false,
            log_every: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.instance.validate()?;
        if !(self.alpha >= MIN_ALPHA && self.alpha.is_finite()) {
            return Err(Error::BadAlpha(self.alpha));
        }
        if self.horizon == 0 {
            return Err(Error::BadConfig("horizon must be at least 1".into()));
        }
        if self.runs == 0 {
            return Err(Error::BadConfig("runs must be at least 1".into()));
        }
        if self.log_every == 0 {
            return Err(Error::BadConfig("log_every must be at least 1".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text)?;
        let cfg = Self::from(file);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ConfigFile::from(self)).expect("config is serializable")
    }
}

impl From<ConfigFile> for ExperimentConfig {
    fn from(f: ConfigFile) -> Self {
        Self {
            instance: BanditInstance {
                arms: f.arms,
                epsilon: f.epsilon,
            },
            alpha: f.alpha,
            horizon: f.horizon,
            runs: f.runs,
            base_seed: f.base_seed,
            known_cost: f.known_cost,
            log_every: f.log_every,
        }
    }
}

impl From<&ExperimentConfig> for ConfigFile {
    fn from(c: &ExperimentConfig) -> Self {
        Self {
            arms: c.instance.arms.clone(),
            alpha: c.alpha,
            epsilon: c.instance.epsilon,
            horizon: c.horizon,
            runs: c.runs,
            base_seed: c.base_seed,
            known_cost: c.known_cost,
            log_every: c.log_every,
        }
    }
}
