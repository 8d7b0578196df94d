//! Stochastic environment: i.i.d. step sampling and cascade execution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{BanditInstance, CostDist, OrderedList, PullTrace, StepRealization};

/// Seeded random stream. One per replication; `(seed, stream_id)` fully
/// determines the sample sequence.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform draw on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

/// Draws every arm's state, then every arm's cost, in arm-index order.
/// Constant costs consume no randomness.
pub fn sample_step(inst: &BanditInstance, rng: &mut RngStream) -> StepRealization {
    let states = inst
        .arms
        .iter()
        .map(|arm| rng.uniform() < arm.theta)
        .collect();
    let costs = inst
        .arms
        .iter()
        .map(|arm| match arm.cost_dist {
            CostDist::Constant => arm.cost_mean,
            CostDist::Bernoulli => {
                if rng.uniform() < arm.cost_mean {
                    1.0
                } else {
                    0.0
                }
            }
            CostDist::Uniform { width } => arm.cost_mean - width + 2.0 * width * rng.uniform(),
        })
        .collect();
    StepRealization { states, costs }
}

/// Examines `list` in order, stopping right after the first arm in state 1.
pub fn execute_list(list: &OrderedList, real: &StepRealization) -> Result<PullTrace> {
    let k = real.k();
    if real.costs.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: real.costs.len(),
        });
    }
    list.check_bounds(k)?;

    let mut pulled = Vec::new();
    let mut observed_states = Vec::new();
    let mut observed_costs = Vec::new();
    let mut reward = 0u8;
    let mut total_cost = 0.0;
    for arm in list.iter() {
        let state = real.states[arm];
        let cost = real.costs[arm];
        pulled.push(arm);
        observed_states.push(state);
        observed_costs.push(cost);
        total_cost += cost;
        if state {
            reward = 1;
            break;
        }
    }
    Ok(PullTrace {
        pulled: OrderedList::from_distinct(pulled),
        observed_states,
        observed_costs,
        reward,
        total_cost,
        net_reward: f64::from(reward) - total_cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ArmParams, DEFAULT_EPSILON};
    use proptest::prelude::*;

    fn real(states: &[u8], costs: &[f64]) -> StepRealization {
        StepRealization::new(states.iter().map(|&s| s == 1).collect(), costs.to_vec()).unwrap()
    }

    fn list(items: &[usize]) -> OrderedList {
        OrderedList::new(items.to_vec()).unwrap()
    }

    #[test]
    fn stops_after_first_success() {
        let trace = execute_list(&list(&[0, 1, 2]), &real(&[0, 1, 1], &[0.5, 0.6, 0.2])).unwrap();
        assert_eq!(trace.pulled.as_slice(), &[0, 1]);
        assert_eq!(trace.reward, 1);
        assert!((trace.total_cost - 1.1).abs() < 1e-12);
        assert!((trace.net_reward + 0.1).abs() < 1e-12);
    }

    #[test]
    fn empty_list_pulls_nothing() {
        let trace = execute_list(&OrderedList::empty(), &real(&[1, 1], &[0.3, 0.3])).unwrap();
        assert!(trace.pulled.is_empty());
        assert_eq!(trace.reward, 0);
        assert_eq!(trace.net_reward, 0.0);
    }

    #[test]
    fn exhausts_list_without_success() {
        let trace = execute_list(&list(&[2, 0]), &real(&[0, 0, 0], &[0.1, 0.1, 0.3])).unwrap();
        assert_eq!(trace.pulled.as_slice(), &[2, 0]);
        assert_eq!(trace.reward, 0);
        assert!((trace.net_reward + 0.4).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = execute_list(&list(&[0, 3]), &real(&[0, 0, 0], &[0.1; 3]));
        assert!(matches!(err, Err(Error::IndexOutOfRange { index: 3, len: 3 })));
    }

    #[test]
    fn certain_state_and_constant_cost() {
        // theta = 1 is outside the valid range; only the sampler is exercised.
        let inst = BanditInstance {
            arms: vec![ArmParams::constant(1.0, 0.55), ArmParams::constant(0.5, 0.55)],
            epsilon: DEFAULT_EPSILON,
        };
        let mut rng = RngStream::new(7, 0);
        for _ in 0..1000 {
            let r = sample_step(&inst, &mut rng);
            assert!(r.states[0]);
            assert_eq!(r.costs, vec![0.55, 0.55]);
        }
    }

    #[test]
    fn bernoulli_state_mean() {
        let inst =
            BanditInstance::new(vec![ArmParams::constant(0.8, 0.5)], DEFAULT_EPSILON).unwrap();
        let mut rng = RngStream::new(11, 3);
        let n = 100_000;
        let hits = (0..n).filter(|_| sample_step(&inst, &mut rng).states[0]).count();
        let mean = hits as f64 / n as f64;
        let tol = 4.0 * (0.8 * 0.2 / n as f64).sqrt();
        assert!((mean - 0.8).abs() <= tol, "mean {mean}, tol {tol}");
    }

    #[test]
    fn cost_laws_have_requested_mean() {
        let inst = BanditInstance::new(
            vec![
                ArmParams::new(0.2, 0.4, CostDist::Bernoulli),
                ArmParams::new(0.2, 0.4, CostDist::Uniform { width: 0.3 }),
            ],
            DEFAULT_EPSILON,
        )
        .unwrap();
        let mut rng = RngStream::new(5, 0);
        let n = 100_000;
        let mut sums = [0.0; 2];
        for _ in 0..n {
            let r = sample_step(&inst, &mut rng);
            assert!(r.costs[0] == 0.0 || r.costs[0] == 1.0);
            assert!((0.1..=0.7).contains(&r.costs[1]));
            sums[0] += r.costs[0];
            sums[1] += r.costs[1];
        }
        let tol_b = 4.0 * (0.4 * 0.6 / n as f64).sqrt();
        let tol_u = 4.0 * (0.6f64.powi(2) / 12.0 / n as f64).sqrt();
        assert!((sums[0] / n as f64 - 0.4).abs() <= tol_b);
        assert!((sums[1] / n as f64 - 0.4).abs() <= tol_u);
    }

    #[test]
    fn same_stream_same_samples() {
        let inst = BanditInstance::uniform_cost(&[0.3, 0.6], 0.4, CostDist::Bernoulli).unwrap();
        let mut a = RngStream::new(42, 9);
        let mut b = RngStream::new(42, 9);
        let mut c = RngStream::new(42, 10);
        let sa: Vec<_> = (0..50).map(|_| sample_step(&inst, &mut a)).collect();
        let sb: Vec<_> = (0..50).map(|_| sample_step(&inst, &mut b)).collect();
        let sc: Vec<_> = (0..50).map(|_| sample_step(&inst, &mut c)).collect();
        assert_eq!(sa, sb);
        assert_ne!(sa, sc);
    }

    proptest! {
        #[test]
        fn cascade_prefix_rule(
            states in proptest::collection::vec(any::<bool>(), 1..8),
            perm_seed in any::<u64>(),
            take in 0usize..8,
        ) {
            let k = states.len();
            let costs: Vec<f64> = (0..k).map(|i| 0.1 * (i as f64 + 1.0) / k as f64).collect();
            let r = StepRealization::new(states.clone(), costs).unwrap();
            let mut items: Vec<usize> = (0..k).collect();
            let mut s = perm_seed;
            for i in (1..k).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                items.swap(i, (s >> 33) as usize % (i + 1));
            }
            items.truncate(take.min(k));
            let submitted = OrderedList::new(items.clone()).unwrap();
            let trace = execute_list(&submitted, &r).unwrap();
            let expected_len = items
                .iter()
                .position(|&i| states[i])
                .map_or(items.len(), |p| p + 1);
            prop_assert_eq!(trace.pulled.as_slice(), &items[..expected_len]);
            prop_assert!(trace.is_consistent_with(&submitted, k));
        }
    }
}
