//! The K x L x gap regret grid: `L` arms with state mean 0.5, `K - L` arms
//! with state mean 0.3, and one shared mean cost `0.3 + gap`.

use rayon::prelude::*;

use crate::error::Result;
use crate::harness::config::ExperimentConfig;
use crate::harness::runner::{run_experiment, ExperimentResult};
use crate::model::{BanditInstance, CostDist};

pub const GOOD_THETA: f64 = 0.5;
pub const BAD_THETA: f64 = 0.3;

/// Cost law used by [`table2_grid`]. Costs stay random in the known-cost
/// runs; only their mean is revealed.
pub const GRID_COST_DIST: CostDist = CostDist::Bernoulli;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub k: usize,
    pub l: usize,
    pub gap: f64,
}

impl GridRow {
    pub fn cost(&self) -> f64 {
        BAD_THETA + self.gap
    }

    pub fn instance(&self, cost_dist: CostDist) -> Result<BanditInstance> {
        let thetas: Vec<f64> = (0..self.k)
            .map(|i| if i < self.l { GOOD_THETA } else { BAD_THETA })
            .collect();
        BanditInstance::uniform_cost(&thetas, self.cost(), cost_dist)
    }

    pub fn label(&self, known_cost: bool) -> String {
        format!(
            "K{}_L{}_gap{}_{}",
            self.k,
            self.l,
            self.gap,
            if known_cost { "known" } else { "unknown" }
        )
    }
}

/// Rows in the published order.
pub const TABLE2_ROWS: [GridRow; 9] = [
    GridRow { k: 6, l: 1, gap: 0.1 },
    GridRow { k: 6, l: 3, gap: 0.1 },
    GridRow { k: 6, l: 5, gap: 0.1 },
    GridRow { k: 12, l: 1, gap: 0.1 },
    GridRow { k: 12, l: 3, gap: 0.1 },
    GridRow { k: 12, l: 5, gap: 0.1 },
    GridRow { k: 6, l: 1, gap: 0.05 },
    GridRow { k: 6, l: 3, gap: 0.05 },
    GridRow { k: 6, l: 5, gap: 0.05 },
];

#[derive(Debug, Clone)]
pub struct GridCell {
    pub row: GridRow,
    pub known_cost: bool,
    pub result: ExperimentResult,
}

impl GridCell {
    pub fn label(&self) -> String {
        self.row.label(self.known_cost)
    }
}

/// Every row with unknown and known costs, all cells sharing `base_seed`.
/// About 1000 records are kept per run.
pub fn table2_grid(base_seed: u64, runs: u64, horizon: u64) -> Result<Vec<GridCell>> {
    table2_grid_with(base_seed, runs, horizon, GRID_COST_DIST)
}

pub fn table2_grid_with(
    base_seed: u64,
    runs: u64,
    horizon: u64,
    cost_dist: CostDist,
) -> Result<Vec<GridCell>> {
    let plan: Vec<(GridRow, bool)> = TABLE2_ROWS
        .iter()
        .flat_map(|&row| [(row, false), (row, true)])
        .collect();
    plan.into_par_iter()
        .map(|(row, known_cost)| {
            let mut cfg = ExperimentConfig::new(row.instance(cost_dist)?, horizon, runs, base_seed);
            cfg.known_cost = known_cost;
            cfg.log_every = (horizon / 1000).max(1);
            Ok(GridCell {
                row,
                known_cost,
                result: run_experiment(&cfg)?,
            })
        })
        .collect()
}
