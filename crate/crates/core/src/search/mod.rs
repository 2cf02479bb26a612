//! Combinatorial reactive search.
//!
//! Each iteration first lets the memory react to the current configuration.
//! Normally the best admissible move is applied and the inverse of that move
//! becomes prohibited for the current prohibition period. When too many
//! configurations keep recurring, the search instead performs a short random
//! walk with its visit memory wiped.

mod memory;
mod neighborhood;

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::problem::{random_configuration, Configuration, Objective};
use crate::solutions::SolutionSet;

pub use memory::{memory_based_reaction, partition_moves, TabuMemory};
pub use neighborhood::{neighborhood_generation, MoveKey, Neighborhood};

#[derive(Debug, Error)]
#[error("invalid search parameter: {0}")]
pub struct ParamError(String);

#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    /// Visits after which a configuration counts as often repeated.
    pub rep: u32,
    /// Number of often-repeated configurations that triggers an escape.
    pub chaos: usize,
    /// Factor applied to T on a short repetition.
    pub increase: f64,
    /// Factor applied to T when nothing repeats for a while.
    pub decrease: f64,
    /// Upper bound on the number of sampled values per neighborhood.
    pub chi_max: usize,
    /// Repetition intervals at or above this do not raise T.
    pub r_max: u64,
    pub max_iterations: u64,
    /// Stop as soon as this many solutions are known.
    pub target_solutions: Option<usize>,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            rep: 3,
            chaos: 3,
            increase: 1.3,
            decrease: 0.8,
            chi_max: 300,
            r_max: 8000,
            max_iterations: 500,
            target_solutions: None,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.increase > 1.0 && self.increase.is_finite()) {
            return Err(ParamError(format!(
                "increase must be > 1, got {}",
                self.increase
            )));
        }
        if !(self.decrease > 0.0 && self.decrease < 1.0) {
            return Err(ParamError(format!(
                "decrease must lie in (0, 1), got {}",
                self.decrease
            )));
        }
        let counters = [
            ("rep", self.rep as u64),
            ("chaos", self.chaos as u64),
            ("chi-max", self.chi_max as u64),
            ("rmax", self.r_max),
            ("iterations", self.max_iterations),
            (
                "target-solutions",
                self.target_solutions.unwrap_or(1) as u64,
            ),
        ];
        for (name, value) in counters {
            if value == 0 {
                return Err(ParamError(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    pub(crate) fn finished(&self, t: u64, found: usize) -> bool {
        t >= self.max_iterations || self.target_solutions.is_some_and(|goal| found >= goal)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunStats {
    pub iterations: u64,
    pub solutions: usize,
    pub diversifications: usize,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub solutions: SolutionSet,
    pub stats: RunStats,
}

/// Picks uniformly among the moves with the highest score.
fn argmax<R: Rng + ?Sized>(scored: &[(MoveKey, f64)], rng: &mut R) -> Option<MoveKey> {
    let best = scored
        .iter()
        .map(|(_, s)| *s)
        .fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<MoveKey> = scored
        .iter()
        .filter(|(_, s)| *s == best)
        .map(|(m, _)| *m)
        .collect();
    ties.choose(rng).copied()
}

/// Chooses the next move from `nbhd`.
///
/// * No admissible move: the best prohibited move, and T shrinks.
/// * No admissible move reaches a solution: the best admissible move.
/// * Otherwise a random admissible move reaching a solution; every such
///   solution is added to `solutions`.
///
/// Panics if `nbhd` is empty.
#[allow(clippy::too_many_arguments)]
pub fn best_move<O, R>(
    nbhd: &Neighborhood,
    v: &Configuration,
    memory: &mut TabuMemory,
    objective: &O,
    solutions: &mut SolutionSet,
    rng: &mut R,
    t: u64,
    params: &SearchParams,
) -> MoveKey
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    assert!(!nbhd.is_empty(), "best_move needs a non-empty neighborhood");
    let (admissible, prohibited) = partition_moves(nbhd, memory, t);
    let score = |m: &MoveKey| (*m, objective.score(&m.apply_to(v)));

    if admissible.is_empty() {
        let scored: Vec<_> = prohibited.iter().map(score).collect();
        memory.shrink_period(params.decrease, t);
        return argmax(&scored, rng).expect("non-empty");
    }

    let scored: Vec<_> = admissible.iter().map(score).collect();
    let reaching: Vec<MoveKey> = scored
        .iter()
        .filter(|(_, s)| *s == 1.0)
        .map(|(m, _)| *m)
        .collect();
    if reaching.is_empty() {
        return argmax(&scored, rng).expect("non-empty");
    }
    for m in &reaching {
        let (text, syllables) = objective.describe(&m.apply_to(v));
        solutions.insert(text, syllables, t);
    }
    *reaching.choose(rng).expect("non-empty")
}

/// Applies `m` and prohibits restoring the value it replaced.
pub fn apply_move(v: &Configuration, m: MoveKey, memory: &mut TabuMemory, t: u64) -> Configuration {
    let mut next = v.clone();
    let replaced = next.set(m.position, m.value);
    memory.record_use(MoveKey::new(m.position, replaced), t);
    next
}

/// Largest useful T for neighborhoods of `neighborhood_size` moves. Each
/// iteration prohibits one move, so below this bound some move stays
/// admissible and a short cycle cannot lock every exit.
pub fn period_limit(neighborhood_size: usize) -> f64 {
    neighborhood_size.saturating_sub(2).max(1) as f64
}

/// Number of random-walk steps for the current memory state.
pub fn diversification_steps(memory: &TabuMemory, neighborhood_size: usize) -> usize {
    let steps = (1.0 + memory.mean_repetition_interval() / 2.0).min(neighborhood_size as f64);
    (steps.floor() as usize).max(1)
}

/// Clears visit memory and jumps through random configurations, one per
/// iteration, prohibiting a return to each replaced component value.
/// Returns the number of steps taken.
pub fn diversify_search<R: Rng + ?Sized>(
    memory: &mut TabuMemory,
    current: &mut Configuration,
    t: &mut u64,
    cardinality: usize,
    chi_max: usize,
    rng: &mut R,
) -> usize {
    memory.forget_visits();
    let steps = diversification_steps(memory, chi_max.min(cardinality) * current.len());
    for _ in 0..steps {
        let next = random_configuration(rng, current.len(), cardinality);
        for (position, &old) in current.components().iter().enumerate() {
            memory.record_use(MoveKey::new(position, old), *t);
        }
        *current = next;
        *t += 1;
    }
    steps
}

/// What one call to [`ReactiveSearch::step`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Move(MoveKey),
    Diversify { steps: usize },
}

/// Step-by-step driver of the reactive search.
pub struct ReactiveSearch<'a, O: ?Sized, R> {
    objective: &'a O,
    params: SearchParams,
    rng: R,
    memory: TabuMemory,
    current: Configuration,
    t: u64,
    solutions: SolutionSet,
    diversifications: usize,
}

impl<'a, O, R> ReactiveSearch<'a, O, R>
where
    O: Objective + ?Sized,
    R: Rng,
{
    pub fn new(objective: &'a O, params: SearchParams, mut rng: R) -> Self {
        let current =
            random_configuration(&mut rng, objective.dimension(), objective.cardinality());
        Self {
            objective,
            params,
            rng,
            memory: TabuMemory::new(),
            current,
            t: 0,
            solutions: SolutionSet::new(),
            diversifications: 0,
        }
    }

    pub fn current(&self) -> &Configuration {
        &self.current
    }

    pub fn iteration(&self) -> u64 {
        self.t
    }

    pub fn memory(&self) -> &TabuMemory {
        &self.memory
    }

    pub fn solutions(&self) -> &SolutionSet {
        &self.solutions
    }

    pub fn is_finished(&self) -> bool {
        self.params.finished(self.t, self.solutions.len())
    }

    pub fn step(&mut self) -> Step {
        let escape = memory_based_reaction(&mut self.memory, &self.current, self.t, &self.params);
        let size = self.params.chi_max.min(self.objective.cardinality()) * self.current.len();
        self.memory.cap_period(period_limit(size));
        if escape {
            self.diversifications += 1;
            let steps = diversify_search(
                &mut self.memory,
                &mut self.current,
                &mut self.t,
                self.objective.cardinality(),
                self.params.chi_max,
                &mut self.rng,
            );
            return Step::Diversify { steps };
        }
        let nbhd = neighborhood_generation(
            &self.current,
            &mut self.rng,
            self.params.chi_max,
            self.objective.cardinality(),
        );
        let m = best_move(
            &nbhd,
            &self.current,
            &mut self.memory,
            self.objective,
            &mut self.solutions,
            &mut self.rng,
            self.t,
            &self.params,
        );
        self.current = apply_move(&self.current, m, &mut self.memory, self.t);
        self.t += 1;
        Step::Move(m)
    }

    /// Steps until the iteration budget or solution target is reached.
    pub fn run(mut self) -> RunOutcome {
        let start = Instant::now();
        while !self.is_finished() {
            self.step();
        }
        let elapsed_secs = start.elapsed().as_secs_f64();
        RunOutcome {
            stats: RunStats {
                iterations: self.t,
                solutions: self.solutions.len(),
                diversifications: self.diversifications,
                elapsed_secs,
            },
            solutions: self.solutions,
        }
    }
}

/// Runs the reactive search from a random starting configuration.
pub fn run_crs<O, R>(objective: &O, params: &SearchParams, rng: &mut R) -> RunOutcome
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    ReactiveSearch::new(objective, params.clone(), rng).run()
}
