//! Cost-aware cascading bandits.
//!
//! Each step a learner submits an ordered list of arms. Arms are examined
//! in order until one is found in state 1; every examined arm charges a
//! random cost. The net reward is the binary reward minus the total cost.
//!
//! - [`offline`]: the optimal list when arm statistics are known.
//! - [`ccucb`]: the CC-UCB online learner.
//! - [`regret`]: regret tracking and the log-T bound coefficients.
//! - [`harness`]: replicated experiments, the regret grid, click logs.

pub mod ccucb;
pub mod env;
pub mod error;
pub mod harness;
pub mod model;
pub mod offline;
pub mod regret;

pub use ccucb::{ArmStats, CcUcbState};
pub use env::{execute_list, sample_step, RngStream};
pub use error::{Error, Result};
pub use model::{
    validate_instance, ArmParams, BanditInstance, CostDist, OrderedList, PullTrace,
    StepRealization, DEFAULT_EPSILON,
};
pub use offline::{brute_force_optimal, expected_net_reward, swap_delta, ucr_t1, OfflineSolution};
pub use regret::{bernoulli_kl, bound_report, per_step_regret, BoundReport, RegretRecord};
