//! Iterated local search with random restarts.
//!
//! Every iteration draws a fresh random configuration, sweeps one randomized
//! neighborhood around it and keeps every neighbor that scores 1. There is
//! no memory between iterations apart from the solution set.

use std::time::Instant;

use rand::Rng;

use crate::problem::{random_configuration, Configuration, Objective};
use crate::search::{neighborhood_generation, RunOutcome, RunStats, SearchParams};
use crate::solutions::SolutionSet;

/// Evaluates one neighborhood of `v` and inserts every solution into
/// `solutions`. Returns how many texts were new.
pub fn local_search<O, R>(
    v: &Configuration,
    objective: &O,
    solutions: &mut SolutionSet,
    rng: &mut R,
    chi_max: usize,
    t: u64,
) -> usize
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let nbhd = neighborhood_generation(v, rng, chi_max, objective.cardinality());
    let mut added = 0;
    for m in nbhd.moves() {
        let next = m.apply_to(v);
        if objective.score(&next) == 1.0 {
            let (text, syllables) = objective.describe(&next);
            if solutions.insert(text, syllables, t) {
                added += 1;
            }
        }
    }
    added
}

pub fn run_cils<O, R>(objective: &O, params: &SearchParams, rng: &mut R) -> RunOutcome
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let start = Instant::now();
    let mut solutions = SolutionSet::new();
    let mut t = 0;
    while !params.finished(t, solutions.len()) {
        let v = random_configuration(rng, objective.dimension(), objective.cardinality());
        local_search(&v, objective, &mut solutions, rng, params.chi_max, t);
        t += 1;
    }
    RunOutcome {
        stats: RunStats {
            iterations: t,
            solutions: solutions.len(),
            diversifications: 0,
            elapsed_secs: start.elapsed().as_secs_f64(),
        },
        solutions,
    }
}
