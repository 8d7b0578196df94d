//! Cost-aware cascading UCB (CC-UCB).
//!
//! Each step ranks arms by an optimistic state estimate over a pessimistic
//! cost estimate, `U / L` with `U = theta_hat + u` and
//! `L = max(c_hat - u, epsilon)`, keeps the arms with `U / L > 1`, examines
//! them under the cascade rule and updates the statistics of the examined
//! prefix only. The padding is `u = sqrt(alpha * ln t / N)`.
//!
//! Initialization pulls every arm once, one arm per environment step, before
//! the main loop. The main loop starts at `t = 1`.

use crate::env::execute_list;
use crate::error::{Error, Result};
use crate::model::{OrderedList, PullTrace, StepRealization};
use crate::offline::rank_by_ratio;

/// Smallest admissible exploration constant.
pub const MIN_ALPHA: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ArmStats {
    pub pulls: u64,
    pub state_sum: u64,
    pub cost_sum: f64,
}

impl ArmStats {
    pub fn record(&mut self, state: bool, cost: f64) {
        self.pulls += 1;
        self.state_sum += u64::from(state);
        self.cost_sum += cost;
    }

    pub fn theta_hat(&self) -> Option<f64> {
        (self.pulls > 0).then(|| self.state_sum as f64 / self.pulls as f64)
    }

    pub fn cost_hat(&self) -> Option<f64> {
        (self.pulls > 0).then(|| self.cost_sum / self.pulls as f64)
    }
}

/// Per-arm confidence indices at the current step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmIndex {
    pub upper_state: f64,
    pub lower_cost: f64,
}

impl ArmIndex {
    pub fn ratio(&self) -> f64 {
        self.upper_state / self.lower_cost
    }
}

/// Learner state: sufficient statistics plus hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CcUcbState {
    stats: Vec<ArmStats>,
    t: u64,
    alpha: f64,
    epsilon: f64,
    known_costs: Option<Vec<f64>>,
}

fn check_params(alpha: f64, epsilon: f64) -> Result<()> {
    if !(alpha >= MIN_ALPHA && alpha.is_finite()) {
        return Err(Error::BadAlpha(alpha));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::BadEpsilon(epsilon));
    }
    Ok(())
}

impl CcUcbState {
    /// Runs the initialization pass: `draw` is called once per arm and only
    /// that arm's state and cost are recorded.
    pub fn initialize(
        k: usize,
        alpha: f64,
        epsilon: f64,
        mut draw: impl FnMut() -> StepRealization,
    ) -> Result<Self> {
        check_params(alpha, epsilon)?;
        if k == 0 {
            return Err(Error::EmptyInstance);
        }
        let mut stats = vec![ArmStats::default(); k];
        for (arm, s) in stats.iter_mut().enumerate() {
            let real = draw();
            if real.k() != k {
                return Err(Error::LengthMismatch {
                    expected: k,
                    got: real.k(),
                });
            }
            s.record(real.states[arm], real.costs[arm]);
        }
        Ok(Self {
            stats,
            t: 1,
            alpha,
            epsilon,
            known_costs: None,
        })
    }

    /// Builds a state from given statistics, e.g. to probe index behaviour.
    pub fn from_stats(stats: Vec<ArmStats>, t: u64, alpha: f64, epsilon: f64) -> Result<Self> {
        check_params(alpha, epsilon)?;
        if stats.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if t == 0 || stats.iter().any(|s| s.pulls == 0) {
            return Err(Error::BadConfig(
                "statistics require t >= 1 and at least one pull per arm".into(),
            ));
        }
        Ok(Self {
            stats,
            t,
            alpha,
            epsilon,
            known_costs: None,
        })
    }

    /// Switches to the known-cost variant: `L` becomes the true mean cost.
    pub fn with_known_costs(mut self, costs: Vec<f64>) -> Result<Self> {
        if costs.len() != self.stats.len() {
            return Err(Error::LengthMismatch {
                expected: self.stats.len(),
                got: costs.len(),
            });
        }
        if let Some((arm, &cost)) = costs
            .iter()
            .enumerate()
            .find(|(_, &c)| !(c > self.epsilon && c <= 1.0))
        {
            return Err(Error::CostBelowFloor {
                arm,
                cost,
                epsilon: self.epsilon,
            });
        }
        self.known_costs = Some(costs);
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.stats.len()
    }

    pub fn stats(&self) -> &[ArmStats] {
        &self.stats
    }

    /// Index of the next main-loop step.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn known_costs(&self) -> Option<&[f64]> {
        self.known_costs.as_deref()
    }

    /// Confidence radius `sqrt(alpha * ln t / N)`.
    pub fn padding(&self, arm: usize) -> f64 {
        let n = self.stats[arm].pulls as f64;
        (self.alpha * (self.t as f64).ln() / n).sqrt()
    }

    pub fn index(&self, arm: usize) -> ArmIndex {
        let s = &self.stats[arm];
        let pulls = s.pulls as f64;
        let u = self.padding(arm);
        let upper_state = s.state_sum as f64 / pulls + u;
        let lower_cost = match &self.known_costs {
            Some(c) => c[arm],
            None => (s.cost_sum / pulls - u).max(self.epsilon),
        };
        ArmIndex {
            upper_state,
            lower_cost,
        }
    }

    /// Arms with `U / L > 1`, by descending ratio, ties to the lower index.
    pub fn select_list(&self) -> OrderedList {
        let candidates: Vec<(usize, f64)> = (0..self.k())
            .map(|arm| (arm, self.index(arm).ratio()))
            .filter(|&(_, r)| r > 1.0)
            .collect();
        OrderedList::from_distinct(rank_by_ratio(&candidates))
    }

    /// Records what was observed on the examined prefix and advances `t`.
    pub fn update(&mut self, trace: &PullTrace) {
        for ((arm, &state), &cost) in trace
            .pulled
            .iter()
            .zip(&trace.observed_states)
            .zip(&trace.observed_costs)
        {
            self.stats[arm].record(state, cost);
        }
        self.t += 1;
    }

    /// One main-loop step against a fresh realization.
    pub fn step(&mut self, real: &StepRealization) -> Result<PullTrace> {
        let list = self.select_list();
        let trace = execute_list(&list, real)?;
        self.update(&trace);
        Ok(trace)
    }
}
