//! Regret bookkeeping and the analytic log-T bound coefficients.

use serde::Serialize;

use crate::ccucb::MIN_ALPHA;
use crate::error::{Error, Result};
use crate::model::{BanditInstance, PullTrace};
use crate::offline::ucr_t1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegretRecord {
    pub t: u64,
    pub realized_net: f64,
    pub optimal_value: f64,
    pub cum_regret: f64,
    /// Running sum of `optimal_value` minus the expected net reward of each
    /// submitted list. Same expectation as `cum_regret`, without the
    /// per-step reward noise.
    pub cum_expected_regret: f64,
}

/// `optimal_value - trace.net_reward`. Unbiased for the expected per-step
/// regret because `optimal_value` is the optimal list's expected net reward.
pub fn per_step_regret(optimal_value: f64, trace: &PullTrace) -> f64 {
    optimal_value - trace.net_reward
}

/// Running cumulative regret over main-loop steps `1..=T`.
#[derive(Debug, Clone)]
pub struct RegretTracker {
    optimal_value: f64,
    t: u64,
    cum_regret: f64,
    cum_expected_regret: f64,
}

impl RegretTracker {
    pub fn new(optimal_value: f64) -> Self {
        Self {
            optimal_value,
            t: 0,
            cum_regret: 0.0,
            cum_expected_regret: 0.0,
        }
    }

    /// `list_value` is the expected net reward of the list that produced
    /// `trace`.
    pub fn push(&mut self, trace: &PullTrace, list_value: f64) -> RegretRecord {
        self.t += 1;
        self.cum_regret += per_step_regret(self.optimal_value, trace);
        self.cum_expected_regret += self.optimal_value - list_value;
        RegretRecord {
            t: self.t,
            realized_net: trace.net_reward,
            optimal_value: self.optimal_value,
            cum_regret: self.cum_regret,
            cum_expected_regret: self.cum_expected_regret,
        }
    }

    pub fn cum_regret(&self) -> f64 {
        self.cum_regret
    }

    pub fn steps(&self) -> u64 {
        self.t
    }
}

/// Bernoulli KL divergence `d(p; q)` in nats, with `0 ln 0 = 0`.
pub fn bernoulli_kl(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::KlSupport { p, q });
    }
    if p == q {
        return Ok(0.0);
    }
    if q == 0.0 || q == 1.0 {
        return Err(Error::KlSupport { p, q });
    }
    let term = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a * (a / b).ln() };
    Ok(term(p, q) + term(1.0 - p, 1.0 - q))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmGap {
    pub arm: usize,
    /// `cost_mean - theta`, positive for every arm outside the optimal list.
    pub gap: f64,
}

/// Coefficients of `ln T` in the upper and lower regret bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    /// `sum_{i not in I*} c_i * 16 alpha / gap_i^2`
    pub upper_coeff: f64,
    /// `sum_{i not in I*} gap_i / d(theta_i; c_i)`
    pub lower_coeff: f64,
    pub gaps: Vec<ArmGap>,
}

impl BoundReport {
    pub fn upper_at(&self, horizon: u64) -> f64 {
        self.upper_coeff * (horizon as f64).ln()
    }

    pub fn lower_at(&self, horizon: u64) -> f64 {
        self.lower_coeff * (horizon as f64).ln()
    }
}

pub fn bound_report(inst: &BanditInstance, alpha: f64) -> Result<BoundReport> {
    inst.validate()?;
    if !(alpha >= MIN_ALPHA && alpha.is_finite()) {
        return Err(Error::BadAlpha(alpha));
    }
    let optimal = ucr_t1(inst);
    let mut report = BoundReport {
        upper_coeff: 0.0,
        lower_coeff: 0.0,
        gaps: Vec::new(),
    };
    for (arm, params) in inst.arms.iter().enumerate() {
        if optimal.list.contains(arm) {
            continue;
        }
        let gap = params.cost_mean - params.theta;
        debug_assert!(gap > 0.0);
        report.upper_coeff += params.cost_mean * 16.0 * alpha / (gap * gap);
        report.lower_coeff += gap / bernoulli_kl(params.theta, params.cost_mean)?;
        report.gaps.push(ArmGap { arm, gap });
    }
    Ok(report)
}
