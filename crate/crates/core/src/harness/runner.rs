//! Replicated simulation runs and their CSV output.

use std::io::Write;

use rayon::prelude::*;

use crate::ccucb::CcUcbState;
use crate::env::{execute_list, sample_step, RngStream};
use crate::error::Result;
use crate::harness::config::ExperimentConfig;
use crate::model::{BanditInstance, OrderedList, PullTrace};
use crate::offline::{expected_net_reward, ucr_t1, OfflineSolution};
use crate::regret::{bound_report, BoundReport, RegretRecord, RegretTracker};

/// A list-choosing policy that learns from the examined prefix.
pub trait Learner {
    fn choose(&self) -> OrderedList;
    fn observe(&mut self, trace: &PullTrace);
}

impl Learner for CcUcbState {
    fn choose(&self) -> OrderedList {
        self.select_list()
    }

    fn observe(&mut self, trace: &PullTrace) {
        self.update(trace);
    }
}

/// Always submits the same list.
#[derive(Debug, Clone)]
pub struct FixedList(pub OrderedList);

impl Learner for FixedList {
    fn choose(&self) -> OrderedList {
        self.0.clone()
    }

    fn observe(&mut self, _trace: &PullTrace) {}
}

/// Regret trace of one replication.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub run: u64,
    /// Decimated records; the last one is always step `T`.
    pub records: Vec<RegretRecord>,
}

impl RunTrace {
    pub fn final_regret(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.cum_regret)
    }

    pub fn final_expected_regret(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.cum_expected_regret)
    }

    /// Cumulative regret at step `t`, if that step was kept.
    pub fn regret_at(&self, t: u64) -> Option<f64> {
        self.records
            .binary_search_by_key(&t, |r| r.t)
            .ok()
            .map(|i| self.records[i].cum_regret)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (zero for a single run).
    pub std: f64,
    pub runs: usize,
}

impl Summary {
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, std, runs: n }
    }

    pub fn std_error(&self) -> f64 {
        self.std / (self.runs as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub runs: Vec<RunTrace>,
    /// Realized cumulative regret at `T`.
    pub summary: Summary,
    /// Expected-value cumulative regret at `T`.
    pub expected_summary: Summary,
    pub optimal: OfflineSolution,
    pub bounds: BoundReport,
}

impl ExperimentResult {
    /// Mean and spread of cumulative regret at a kept step across runs.
    pub fn summary_at(&self, t: u64) -> Option<Summary> {
        let values: Option<Vec<f64>> = self.runs.iter().map(|r| r.regret_at(t)).collect();
        values.map(|v| Summary::from_values(&v))
    }
}

/// Drives `learner` for `horizon` main-loop steps.
pub fn run_replication<L: Learner>(
    inst: &BanditInstance,
    optimal_value: f64,
    learner: &mut L,
    rng: &mut RngStream,
    horizon: u64,
    log_every: u64,
) -> Result<Vec<RegretRecord>> {
    let mut tracker = RegretTracker::new(optimal_value);
    let mut records = Vec::with_capacity((horizon / log_every.max(1) + 1) as usize);
    for t in 1..=horizon {
        let real = sample_step(inst, rng);
        let list = learner.choose();
        let trace = execute_list(&list, &real)?;
        learner.observe(&trace);
        let rec = tracker.push(&trace, expected_net_reward(inst, &list)?);
        if t % log_every == 0 || t == horizon {
            records.push(rec);
        }
    }
    Ok(records)
}

/// Runs every replication with learners built by `make_learner`. Each run
/// owns `RngStream(base_seed, run)`, so output does not depend on
/// scheduling.
pub fn run_experiment_with<L, F>(cfg: &ExperimentConfig, make_learner: F) -> Result<ExperimentResult>
where
    L: Learner,
    F: Fn(&ExperimentConfig, &mut RngStream) -> Result<L> + Sync,
{
    cfg.validate()?;
    let optimal = ucr_t1(&cfg.instance);
    let bounds = bound_report(&cfg.instance, cfg.alpha)?;
    let runs = (0..cfg.runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = RngStream::new(cfg.base_seed, run);
            let mut learner = make_learner(cfg, &mut rng)?;
            let records = run_replication(
                &cfg.instance,
                optimal.value,
                &mut learner,
                &mut rng,
                cfg.horizon,
                cfg.log_every,
            )?;
            Ok(RunTrace { run, records })
        })
        .collect::<Result<Vec<_>>>()?;
    let finals: Vec<f64> = runs.iter().map(RunTrace::final_regret).collect();
    let expected: Vec<f64> = runs.iter().map(RunTrace::final_expected_regret).collect();
    Ok(ExperimentResult {
        summary: Summary::from_values(&finals),
        expected_summary: Summary::from_values(&expected),
        runs,
        optimal,
        bounds,
    })
}

/// CC-UCB learner after its initialization pass on `rng`.
pub fn cc_ucb_learner(cfg: &ExperimentConfig, rng: &mut RngStream) -> Result<CcUcbState> {
    let inst = &cfg.instance;
    let state = CcUcbState::initialize(inst.k(), cfg.alpha, inst.epsilon, || {
        sample_step(inst, rng)
    })?;
    if cfg.known_cost {
        state.with_known_costs(inst.cost_means())
    } else {
        Ok(state)
    }
}

/// CC-UCB (or its known-cost variant when `cfg.known_cost`) on every run.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment_with(cfg, cc_ucb_learner)
}

/// `run,t,cum_regret`, one row per kept record.
pub fn write_trace_csv(result: &ExperimentResult, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "run,t,cum_regret")?;
    for run in &result.runs {
        for rec in &run.records {
            writeln!(out, "{},{},{}", run.run, rec.t, rec.cum_regret)?;
        }
    }
    Ok(())
}

/// `config,mean_regret_T,std_regret_T,upper_coeff,lower_coeff`.
pub fn write_summary_csv<'a>(
    rows: impl IntoIterator<Item = (&'a str, &'a ExperimentResult)>,
    mut out: impl Write,
) -> std::io::Result<()> {
    writeln!(out, "config,mean_regret_T,std_regret_T,upper_coeff,lower_coeff")?;
    for (label, r) in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            label, r.summary.mean, r.summary.std, r.bounds.upper_coeff, r.bounds.lower_coeff
        )?;
    }
    Ok(())
}
