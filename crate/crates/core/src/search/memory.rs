//! Trajectory memory and the reactive prohibition period.

use std::collections::{HashMap, HashSet};

use super::neighborhood::{MoveKey, Neighborhood};
use super::SearchParams;
use crate::problem::Configuration;

/// Move history, visited configurations and the adaptive prohibition period.
#[derive(Debug, Clone)]
pub struct TabuMemory {
    last_use: HashMap<MoveKey, u64>,
    last_visit: HashMap<Configuration, u64>,
    repetitions: HashMap<Configuration, u32>,
    repeated: HashSet<Configuration>,
    mean_repetition_interval: f64,
    period: f64,
    period_changed_at: u64,
}

impl Default for TabuMemory {
    fn default() -> Self {
        Self::new()
    }
}

impl TabuMemory {
    /// Fresh memory: period 1, moving average 1, nothing recorded.
    pub fn new() -> Self {
        Self {
            last_use: HashMap::new(),
            last_visit: HashMap::new(),
            repetitions: HashMap::new(),
            repeated: HashSet::new(),
            mean_repetition_interval: 1.0,
            period: 1.0,
            period_changed_at: 0,
        }
    }

    /// Current prohibition period T.
    pub fn period(&self) -> f64 {
        self.period
    }

    /// Iteration of the last change of T.
    pub fn period_changed_at(&self) -> u64 {
        self.period_changed_at
    }

    /// Moving average of the repetition interval, R_ave.
    pub fn mean_repetition_interval(&self) -> f64 {
        self.mean_repetition_interval
    }

    pub fn last_use(&self, m: MoveKey) -> Option<u64> {
        self.last_use.get(&m).copied()
    }

    pub fn last_visit(&self, v: &Configuration) -> Option<u64> {
        self.last_visit.get(v).copied()
    }

    pub fn repetitions(&self, v: &Configuration) -> u32 {
        self.repetitions.get(v).copied().unwrap_or(0)
    }

    /// The set of often-repeated configurations.
    pub fn repeated(&self) -> &HashSet<Configuration> {
        &self.repeated
    }

    pub fn visited_len(&self) -> usize {
        self.last_visit.len()
    }

    /// Overrides T, clamped to at least 1.
    pub fn set_period(&mut self, period: f64) {
        self.period = period.max(1.0);
    }

    pub fn record_use(&mut self, m: MoveKey, t: u64) {
        self.last_use.insert(m, t);
    }

    /// A move is prohibited at `t` when it was last used at some
    /// `τ ≥ t - ⌈T⌉`, which keeps it out for the next ⌈T⌉ iterations.
    pub fn is_prohibited(&self, m: MoveKey, t: u64) -> bool {
        let tenure = self.period.ceil() as u64;
        self.last_use
            .get(&m)
            .is_some_and(|&used| used.saturating_add(tenure) >= t)
    }

    /// Multiplies T by `factor`, never going below 1.
    pub(crate) fn shrink_period(&mut self, factor: f64, t: u64) {
        self.period = (self.period * factor).max(1.0);
        self.period_changed_at = t;
    }

    /// Lowers T to `max` if it is above it. The change time is kept.
    pub fn cap_period(&mut self, max: f64) {
        self.period = self.period.min(max.max(1.0));
    }

    /// Drops visit times and repetition counts. T and R_ave are kept.
    pub fn forget_visits(&mut self) {
        self.last_visit.clear();
        self.repetitions.clear();
    }
}

/// Splits the neighborhood into admissible and prohibited moves at `t`.
pub fn partition_moves(
    nbhd: &Neighborhood,
    memory: &TabuMemory,
    t: u64,
) -> (Vec<MoveKey>, Vec<MoveKey>) {
    nbhd.moves().partition(|&m| !memory.is_prohibited(m, t))
}

/// Records the visit of `v` at `t` and adapts T. Returns true when enough
/// configurations have repeated often enough that the search should escape.
pub fn memory_based_reaction(
    memory: &mut TabuMemory,
    v: &Configuration,
    t: u64,
    params: &SearchParams,
) -> bool {
    if let Some(previous) = memory.last_visit.insert(v.clone(), t) {
        let interval = t.saturating_sub(previous);
        let count = memory.repetitions.entry(v.clone()).or_insert(0);
        *count += 1;
        if *count > params.rep {
            memory.repeated.insert(v.clone());
            if memory.repeated.len() > params.chaos {
                memory.repeated.clear();
                return true;
            }
        }
        if interval < params.r_max {
            memory.mean_repetition_interval =
                0.1 * interval as f64 + 0.9 * memory.mean_repetition_interval;
            memory.period *= params.increase;
            memory.period_changed_at = t;
        }
    } else {
        memory.repetitions.insert(v.clone(), 1);
    }
    let since_change = t.saturating_sub(memory.period_changed_at) as f64;
    if since_change > memory.mean_repetition_interval {
        memory.shrink_period(params.decrease, t);
    }
    false
}
