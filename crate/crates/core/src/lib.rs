//! Pseudoword generation as a combinatorial search over syllable sequences.
//!
//! A lexicon of syllabified words provides the syllable inventory and the
//! corpus statistics. Candidate nonwords are vectors of syllable indices,
//! scored by a relaxed criterion in `[0, 1]`. Two searches collect every
//! candidate that scores exactly 1:
//!
//! * [`search::run_crs`], a reactive tabu search with an adaptive
//!   prohibition period and random-walk diversification;
//! * [`baseline::run_cils`], random restarts with a single neighborhood
//!   sweep each.
//!
//! ```
//! use nonword::{Criterion, FrequencyMode, Lexicon, Problem, SearchParams};
//! use rand::SeedableRng;
//!
//! let lexicon = Lexicon::parse_str("toto\t2\tto-to\ntota\t1\tto-ta\ntato\t1\tta-to\n").unwrap();
//! let criterion = Criterion::Bigram { mode: FrequencyMode::Type, delta: None };
//! let problem = Problem::new(lexicon, criterion, 2).unwrap();
//! let params = SearchParams { max_iterations: 50, ..Default::default() };
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let outcome = nonword::run_crs(&problem, &params, &mut rng);
//! assert_eq!(outcome.solutions.texts().collect::<Vec<_>>(), vec!["tata"]);
//! ```

pub mod baseline;
pub mod cli;
pub mod lexicon;
pub mod problem;
pub mod search;
pub mod solutions;
pub mod stats;

pub use baseline::{local_search, run_cils};
pub use lexicon::{
    build_syllable_inventory, parse_lexicon, Lexicon, LexiconEntry, LexiconError, SyllableInventory,
};
pub use problem::{
    decode, encode, random_configuration, score_bigram, score_neighbors, Configuration, Criterion,
    NeighborRange, Nonword, Objective, Problem, ProblemError, Score,
};
pub use search::{
    apply_move, best_move, diversification_steps, diversify_search, memory_based_reaction,
    neighborhood_generation, partition_moves, period_limit, run_crs, MoveKey, Neighborhood,
    ReactiveSearch, RunOutcome, RunStats, SearchParams, Step, TabuMemory,
};
pub use solutions::{Solution, SolutionSet};
pub use stats::{
    build_bigram_table, count_orthographic_neighbors, psi_b, psi_w, BigramPositionTable,
    FrequencyMode, NeighborIndex,
};
