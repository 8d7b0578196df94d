//! Offline optimum when arm statistics are known.
//!
//! The optimal list ranks arms by `theta / cost_mean` and keeps only those
//! with ratio above one (unit-cost ranking with threshold 1, "UCR-T1").
//! [`brute_force_optimal`] certifies this on small instances.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{BanditInstance, OrderedList};

/// Default arm cap for exhaustive search (109,601 ordered lists at K = 8).
pub const DEFAULT_MAX_K: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct OfflineSolution {
    pub list: OrderedList,
    /// Expected per-step net reward of `list`.
    pub value: f64,
}

impl OfflineSolution {
    /// Number of arms in the optimal list.
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

/// Expected net reward of examining `list` under the cascade stopping rule:
/// the sum over positions of `(theta - c)` times the probability that every
/// earlier arm was in state 0.
pub fn expected_net_reward(inst: &BanditInstance, list: &OrderedList) -> Result<f64> {
    list.check_bounds(inst.k())?;
    let mut value = 0.0;
    let mut survive = 1.0;
    for i in list.iter() {
        let arm = &inst.arms[i];
        value += (arm.theta - arm.cost_mean) * survive;
        survive *= 1.0 - arm.theta;
    }
    Ok(value)
}

/// Descending ratio, ascending index on ties.
pub(crate) fn rank_by_ratio(ratios: &[(usize, f64)]) -> Vec<usize> {
    let mut sorted = ratios.to_vec();
    sorted.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    sorted.into_iter().map(|(i, _)| i).collect()
}

/// UCR-T1 optimal list and its value.
pub fn ucr_t1(inst: &BanditInstance) -> OfflineSolution {
    let candidates: Vec<(usize, f64)> = inst
        .arms
        .iter()
        .enumerate()
        .filter(|(_, a)| a.theta > a.cost_mean)
        .map(|(i, a)| (i, a.ratio()))
        .collect();
    let list = OrderedList::from_distinct(rank_by_ratio(&candidates));
    let value = expected_net_reward(inst, &list).expect("indices come from the instance");
    OfflineSolution { list, value }
}

/// Exhaustive search over every ordering of every subset of arms.
///
/// Lists are visited in lexicographic order and a later list replaces the
/// incumbent only when strictly better, so ties go to the lexicographically
/// smallest sequence.
pub fn brute_force_optimal(inst: &BanditInstance, max_k: usize) -> Result<OfflineSolution> {
    let k = inst.k();
    if k > max_k {
        return Err(Error::TooLarge { k, max_k });
    }
    let mut search = Search {
        inst,
        prefix: Vec::with_capacity(k),
        used: vec![false; k],
        best: Vec::new(),
        best_value: 0.0,
    };
    search.visit();
    let list = OrderedList::from_distinct(search.best);
    let value = expected_net_reward(inst, &list)?;
    Ok(OfflineSolution { list, value })
}

// Slack absorbing rounding differences between value-equivalent orderings.
const TIE_SLACK: f64 = 1e-14;

struct Search<'a> {
    inst: &'a BanditInstance,
    prefix: Vec<usize>,
    used: Vec<bool>,
    best: Vec<usize>,
    best_value: f64,
}

impl Search<'_> {
    fn visit(&mut self) {
        let value = expected_net_reward(self.inst, &OrderedList::from_distinct(self.prefix.clone()))
            .expect("prefix indices are in range");
        if value.partial_cmp(&(self.best_value + TIE_SLACK)) == Some(Ordering::Greater) {
            self.best_value = value;
            self.best = self.prefix.clone();
        }
        for arm in 0..self.used.len() {
            if self.used[arm] {
                continue;
            }
            self.used[arm] = true;
            self.prefix.push(arm);
            self.visit();
            self.prefix.pop();
            self.used[arm] = false;
        }
    }
}

/// Change in expected net reward from swapping positions `pos` and
/// `pos + 1`, in closed form:
/// `prod_{j < pos}(1 - theta_j) * (c_a * theta_b - c_b * theta_a)` where `a`
/// sits at `pos` and `b` at `pos + 1` before the swap.
pub fn swap_delta(inst: &BanditInstance, list: &OrderedList, pos: usize) -> Result<f64> {
    list.check_bounds(inst.k())?;
    let items = list.as_slice();
    if pos + 1 >= items.len() {
        return Err(Error::IndexOutOfRange {
            index: pos + 1,
            len: items.len(),
        });
    }
    let survive: f64 = items[..pos]
        .iter()
        .map(|&i| 1.0 - inst.arms[i].theta)
        .product();
    let a = &inst.arms[items[pos]];
    let b = &inst.arms[items[pos + 1]];
    Ok(survive * (a.cost_mean * b.theta - b.cost_mean * a.theta))
}
