//! Domain types for a cost-aware cascading bandit problem.
//!
//! Arms are indexed from 0. Each arm has a Bernoulli state with mean
//! `theta` and a random examination cost on `[0, 1]` with mean `cost_mean`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cost floor.
pub const DEFAULT_EPSILON: f64 = 1e-5;

/// Law of an arm's per-step cost. Every variant has mean `cost_mean`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CostDist {
    /// Always exactly `cost_mean`.
    #[default]
    Constant,
    /// 1 with probability `cost_mean`, else 0.
    Bernoulli,
    /// Uniform on `[cost_mean - width, cost_mean + width]`.
    #[serde(alias = "uniform_width")]
    Uniform { width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArmParams {
    pub theta: f64,
    pub cost_mean: f64,
    #[serde(default)]
    pub cost_dist: CostDist,
}

impl ArmParams {
    pub fn new(theta: f64, cost_mean: f64, cost_dist: CostDist) -> Self {
        Self {
            theta,
            cost_mean,
            cost_dist,
        }
    }

    pub fn constant(theta: f64, cost_mean: f64) -> Self {
        Self::new(theta, cost_mean, CostDist::Constant)
    }

    /// State-to-cost ratio used for ranking.
    pub fn ratio(&self) -> f64 {
        self.theta / self.cost_mean
    }

    /// Closed support of the cost law.
    pub fn cost_support(&self) -> (f64, f64) {
        match self.cost_dist {
            CostDist::Constant => (self.cost_mean, self.cost_mean),
            CostDist::Bernoulli => (0.0, 1.0),
            CostDist::Uniform { width } => (self.cost_mean - width, self.cost_mean + width),
        }
    }

    fn validate(&self, arm: usize, epsilon: f64) -> Result<()> {
        let theta = self.theta;
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::ThetaOutOfRange { arm, theta });
        }
        if !(self.cost_mean > epsilon && self.cost_mean <= 1.0) {
            return Err(Error::CostBelowFloor {
                arm,
                cost: self.cost_mean,
                epsilon,
            });
        }
        if theta == self.cost_mean {
            return Err(Error::DegenerateArm { arm, theta });
        }
        let (lo, hi) = self.cost_support();
        let width_ok = match self.cost_dist {
            CostDist::Uniform { width } => width.is_finite() && width >= 0.0,
            _ => true,
        };
        if !width_ok || lo < 0.0 || hi > 1.0 {
            return Err(Error::BadSupport { arm, lo, hi });
        }
        Ok(())
    }
}

/// Complete generative description of a problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BanditInstance {
    pub arms: Vec<ArmParams>,
    pub epsilon: f64,
}

impl BanditInstance {
    /// Builds and validates an instance.
    pub fn new(arms: Vec<ArmParams>, epsilon: f64) -> Result<Self> {
        let inst = Self { arms, epsilon };
        inst.validate()?;
        Ok(inst)
    }

    /// Instance where every arm shares one cost law and mean.
    pub fn uniform_cost(thetas: &[f64], cost_mean: f64, cost_dist: CostDist) -> Result<Self> {
        Self::new(
            thetas
                .iter()
                .map(|&t| ArmParams::new(t, cost_mean, cost_dist))
                .collect(),
            DEFAULT_EPSILON,
        )
    }

    pub fn k(&self) -> usize {
        self.arms.len()
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.arms.iter().map(|a| a.theta).collect()
    }

    pub fn cost_means(&self) -> Vec<f64> {
        self.arms.iter().map(|a| a.cost_mean).collect()
    }

    /// Checks every field constraint; see [`Error`] for the failure kinds.
    pub fn validate(&self) -> Result<()> {
        if self.arms.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::BadEpsilon(self.epsilon));
        }
        for (i, arm) in self.arms.iter().enumerate() {
            arm.validate(i, self.epsilon)?;
        }
        Ok(())
    }
}

/// Free-function form of [`BanditInstance::validate`].
pub fn validate_instance(inst: &BanditInstance) -> Result<()> {
    inst.validate()
}

/// Ordered sequence of distinct arm indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct OrderedList(Vec<usize>);

impl OrderedList {
    /// Rejects duplicate indices. Range is checked against an instance with
    /// [`OrderedList::check_bounds`].
    pub fn new(items: Vec<usize>) -> Result<Self> {
        let mut seen = items.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(w[0]));
        }
        Ok(Self(items))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Caller guarantees distinct indices.
    pub(crate) fn from_distinct(items: Vec<usize>) -> Self {
        debug_assert!(Self::new(items.clone()).is_ok());
        Self(items)
    }

    pub fn check_bounds(&self, k: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i >= k) {
            Some(&index) => Err(Error::IndexOutOfRange { index, len: k }),
            None => Ok(()),
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arm: usize) -> bool {
        self.0.contains(&arm)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Copy with positions `pos` and `pos + 1` exchanged.
    pub fn swapped(&self, pos: usize) -> Result<Self> {
        if pos + 1 >= self.0.len() {
            return Err(Error::IndexOutOfRange {
                index: pos + 1,
                len: self.0.len(),
            });
        }
        let mut items = self.0.clone();
        items.swap(pos, pos + 1);
        Ok(Self(items))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl std::fmt::Display for OrderedList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// States and costs of all arms for one step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRealization {
    pub states: Vec<bool>,
    pub costs: Vec<f64>,
}

impl StepRealization {
    pub fn new(states: Vec<bool>, costs: Vec<f64>) -> Result<Self> {
        if states.len() != costs.len() {
            return Err(Error::LengthMismatch {
                expected: states.len(),
                got: costs.len(),
            });
        }
        Ok(Self { states, costs })
    }

    pub fn k(&self) -> usize {
        self.states.len()
    }
}

/// What happened when a list was examined in one step.
#[derive(Debug, Clone, PartialEq)]
pub struct PullTrace {
    /// Examined prefix of the submitted list.
    pub pulled: OrderedList,
    pub observed_states: Vec<bool>,
    pub observed_costs: Vec<f64>,
    pub reward: u8,
    pub total_cost: f64,
    pub net_reward: f64,
}

impl PullTrace {
    pub fn empty() -> Self {
        Self {
            pulled: OrderedList::empty(),
            observed_states: Vec::new(),
            observed_costs: Vec::new(),
            reward: 0,
            total_cost: 0.0,
            net_reward: 0.0,
        }
    }

    /// Checks the cascade invariants against the list that was submitted.
    pub fn is_consistent_with(&self, submitted: &OrderedList, k: usize) -> bool {
        let pulled = self.pulled.as_slice();
        let n = pulled.len();
        if n > submitted.len() || pulled != &submitted.as_slice()[..n] {
            return false;
        }
        if self.observed_states.len() != n || self.observed_costs.len() != n {
            return false;
        }
        let ones = self.observed_states.iter().filter(|&&s| s).count();
        let stopped_on_one = ones == 1 && self.observed_states.last() == Some(&true);
        if ones > 1 || (ones == 1 && !stopped_on_one) {
            return false;
        }
        // Stopping early requires a 1 at the end of the prefix.
        if ones == 0 && n != submitted.len() {
            return false;
        }
        let reward_ok = self.reward == u8::from(ones == 1);
        let cost: f64 = self.observed_costs.iter().sum();
        let cost_ok = (cost - self.total_cost).abs() <= 1e-12;
        let net_ok = (self.net_reward - (f64::from(self.reward) - self.total_cost)).abs() <= 1e-12;
        let range_ok = self.net_reward >= -(k as f64) - 1e-12 && self.net_reward <= 1.0;
        reward_ok && cost_ok && net_ok && range_ok
    }
}
