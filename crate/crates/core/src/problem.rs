//! Candidate encoding and the relaxed criterion functions.
//!
//! A candidate nonword of `d` syllables is a vector of `d` indices into the
//! syllable inventory. Each criterion maps a decoded nonword to a score in
//! `[0, 1]` that equals 1 exactly when the underlying yes/no criterion holds
//! and the string is not a lexicon word.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::lexicon::{build_syllable_inventory, Lexicon, LexiconError, SyllableInventory};
use crate::stats::{
    build_bigram_table, count_orthographic_neighbors, psi_b, psi_w, BigramPositionTable,
    FrequencyMode, NeighborIndex,
};

/// Normalization constant for token bigram frequencies on the LEXESP corpus.
pub const LEXESP_DELTA_B_TOKEN: f64 = 74018.64;
/// Normalization constant for type bigram frequencies on the LEXESP corpus.
pub const LEXESP_DELTA_B_TYPE: f64 = 1399.09;
/// Default neighbor-count normalization.
pub const DEFAULT_DELTA_N: f64 = 100.0;

/// Largest value strictly below 1; penalty scores never reach 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("component {position} has index {value}, inventory holds {cardinality} syllables")]
    Encoding {
        position: usize,
        value: usize,
        cardinality: usize,
    },
    #[error("cannot evaluate `{text}`: {reason}")]
    Evaluation { text: String, reason: &'static str },
    #[error("invalid criterion: {0}")]
    Criterion(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

/// Syllable-index vector. Component `i` selects the `i`-th syllable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<usize>);

impl Configuration {
    pub fn new(components: Vec<usize>) -> Self {
        Self(components)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn set(&mut self, position: usize, value: usize) -> usize {
        std::mem::replace(&mut self.0[position], value)
    }
}

impl From<Vec<usize>> for Configuration {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for Configuration {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Uniform random configuration of `d` components over `[0, cardinality)`.
pub fn random_configuration<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    cardinality: usize,
) -> Configuration {
    Configuration((0..d).map(|_| rng.gen_range(0..cardinality)).collect())
}

/// A decoded candidate: the concatenated text plus its syllable layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nonword {
    text: String,
    syllables: Vec<String>,
    offsets: Vec<usize>,
}

impl Nonword {
    pub fn from_syllables<S: AsRef<str>>(syllables: &[S]) -> Self {
        let mut text = String::new();
        let mut offsets = Vec::with_capacity(syllables.len());
        let mut chars = 0;
        for s in syllables {
            offsets.push(chars);
            chars += s.as_ref().chars().count();
            text.push_str(s.as_ref());
        }
        Self {
            text,
            syllables: syllables.iter().map(|s| s.as_ref().to_owned()).collect(),
            offsets,
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn syllables(&self) -> &[String] {
        &self.syllables
    }

    /// Character index where each syllable starts.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Length in characters.
    pub fn char_len(&self) -> usize {
        self.offsets.last().copied().unwrap_or(0)
            + self.syllables.last().map_or(0, |s| s.chars().count())
    }
}

pub fn decode(v: &Configuration, inventory: &SyllableInventory) -> Result<Nonword, ProblemError> {
    let syllables = v
        .components()
        .iter()
        .enumerate()
        .map(|(position, &value)| {
            inventory.get(value).ok_or(ProblemError::Encoding {
                position,
                value,
                cardinality: inventory.len(),
            })
        })
        .collect::<Result<Vec<&str>, _>>()?;
    Ok(Nonword::from_syllables(&syllables))
}

/// Inverse of [`decode`] for strings drawn from the inventory.
pub fn encode<S: AsRef<str>>(
    syllables: &[S],
    inventory: &SyllableInventory,
) -> Option<Configuration> {
    syllables
        .iter()
        .map(|s| inventory.index_of(s.as_ref()))
        .collect::<Option<Vec<_>>>()
        .map(Configuration)
}

/// A criterion value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Score(f64);

impl Score {
    pub const ZERO: Score = Score(0.0);
    pub const ONE: Score = Score(1.0);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_solution(self) -> bool {
        self.0 == 1.0
    }

    /// `1 - distance / delta`, clamped to `[0, 1)`.
    fn penalty(distance: f64, delta: f64) -> Score {
        Score((1.0 - distance / delta).clamp(0.0, BELOW_ONE))
    }
}

/// Desired orthographic neighbor range `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborRange {
    pub low: u32,
    pub high: u32,
}

impl NeighborRange {
    pub fn new(low: u32, high: u32) -> Result<Self, ProblemError> {
        if low > high {
            return Err(ProblemError::Criterion(format!(
                "neighbor range {low}:{high} is empty"
            )));
        }
        Ok(Self { low, high })
    }

    pub fn contains(&self, n: usize) -> bool {
        (self.low as usize..=self.high as usize).contains(&n)
    }

    pub fn midpoint(&self) -> f64 {
        (f64::from(self.low) + f64::from(self.high)) / 2.0
    }
}

impl std::str::FromStr for NeighborRange {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProblemError::Criterion(format!("expected A:B, got `{s}`"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        NeighborRange::new(a, b)
    }
}

/// Which criterion to search for and its normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum Criterion {
    /// Mean within-syllable positional bigram frequency must not exceed the
    /// mean between-syllable one. `delta: None` uses the table's largest count.
    Bigram {
        mode: FrequencyMode,
        delta: Option<f64>,
    },
    /// Number of orthographic neighbors must fall in `range`.
    Neighbors { range: NeighborRange, delta: f64 },
}

impl Criterion {
    fn validate(&self) -> Result<(), ProblemError> {
        let delta = match self {
            Criterion::Bigram { delta: None, .. } => return Ok(()),
            Criterion::Bigram { delta: Some(d), .. } | Criterion::Neighbors { delta: d, .. } => *d,
        };
        if delta.is_finite() && delta > 0.0 {
            Ok(())
        } else {
            Err(ProblemError::Criterion(format!(
                "normalization must be positive, got {delta}"
            )))
        }
    }
}

/// Bigram criterion score of `w`.
///
/// Requires at least two syllables and at least one syllable with two or
/// more letters, otherwise one of the averages is undefined.
pub fn score_bigram(
    w: &Nonword,
    table: &BigramPositionTable,
    delta: f64,
    lexicon: &Lexicon,
) -> Result<Score, ProblemError> {
    let n = w.syllables().len();
    let len = w.char_len();
    if n < 2 {
        return Err(ProblemError::Evaluation {
            text: w.text().to_owned(),
            reason: "needs at least two syllables",
        });
    }
    if len <= n {
        return Err(ProblemError::Evaluation {
            text: w.text().to_owned(),
            reason: "has no within-syllable bigram",
        });
    }
    if lexicon.is_word(w.text()) {
        return Ok(Score::ZERO);
    }
    let syl = w.syllables();
    let off = w.offsets();
    let within: f64 = syl.iter().zip(off).map(|(s, &o)| psi_w(table, s, o)).sum();
    let between: f64 = (0..n - 1)
        .map(|i| psi_b(table, &syl[i], &syl[i + 1], off[i + 1] - 1))
        .sum();
    let within_pairs = (len - n) as f64;
    let boundaries = (n - 1) as f64;
    // W <= B compared without dividing, exact for integral counts.
    if within * boundaries <= between * within_pairs {
        return Ok(Score::ONE);
    }
    Ok(Score::penalty(
        within / within_pairs - between / boundaries,
        delta,
    ))
}

/// Neighbor-count criterion score of `w`.
pub fn score_neighbors(
    w: &Nonword,
    index: &NeighborIndex,
    range: NeighborRange,
    delta: f64,
    lexicon: &Lexicon,
) -> Score {
    if lexicon.is_word(w.text()) {
        return Score::ZERO;
    }
    let n = count_orthographic_neighbors(index, w.text());
    if range.contains(n) {
        Score::ONE
    } else {
        Score::penalty((range.midpoint() - n as f64).abs(), delta)
    }
}

/// What the search engines see: a fixed-length index space and a score.
pub trait Objective {
    /// Number of components `d`.
    fn dimension(&self) -> usize;
    /// Number of values per component, λ.
    fn cardinality(&self) -> usize;
    fn score(&self, v: &Configuration) -> f64;
    /// Text used to deduplicate solutions, plus its syllables.
    fn describe(&self, v: &Configuration) -> (String, Vec<String>);
}

#[derive(Debug, Clone)]
enum Evaluator {
    Bigram {
        table: BigramPositionTable,
        delta: f64,
    },
    Neighbors {
        index: NeighborIndex,
        range: NeighborRange,
        delta: f64,
    },
}

/// Everything needed to score configurations for one lexicon and criterion.
#[derive(Debug, Clone)]
pub struct Problem {
    lexicon: Lexicon,
    inventory: SyllableInventory,
    syllables: usize,
    criterion: Criterion,
    evaluator: Evaluator,
}

impl Problem {
    pub fn new(
        lexicon: Lexicon,
        criterion: Criterion,
        syllables: usize,
    ) -> Result<Self, ProblemError> {
        criterion.validate()?;
        if syllables == 0 {
            return Err(ProblemError::Usage(
                "syllable count must be at least 1".into(),
            ));
        }
        if matches!(criterion, Criterion::Bigram { .. }) && syllables < 2 {
            return Err(ProblemError::Usage(
                "the bigram criterion needs at least 2 syllables".into(),
            ));
        }
        let inventory = build_syllable_inventory(&lexicon)?;
        let evaluator = match &criterion {
            Criterion::Bigram { mode, delta } => {
                let table = build_bigram_table(&lexicon, *mode);
                let delta = delta.unwrap_or(if table.max_count() > 0.0 {
                    table.max_count()
                } else {
                    1.0
                });
                Evaluator::Bigram { table, delta }
            }
            Criterion::Neighbors { range, delta } => Evaluator::Neighbors {
                index: NeighborIndex::new(&lexicon),
                range: *range,
                delta: *delta,
            },
        };
        Ok(Self {
            lexicon,
            inventory,
            syllables,
            criterion,
            evaluator,
        })
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn inventory(&self) -> &SyllableInventory {
        &self.inventory
    }

    pub fn criterion(&self) -> &Criterion {
        &self.criterion
    }

    pub fn syllables(&self) -> usize {
        self.syllables
    }

    /// Bigram table backing the criterion, if it is the bigram criterion.
    pub fn bigram_table(&self) -> Option<&BigramPositionTable> {
        match &self.evaluator {
            Evaluator::Bigram { table, .. } => Some(table),
            Evaluator::Neighbors { .. } => None,
        }
    }

    /// Effective normalization constant.
    pub fn delta(&self) -> f64 {
        match &self.evaluator {
            Evaluator::Bigram { delta, .. } | Evaluator::Neighbors { delta, .. } => *delta,
        }
    }

    pub fn decode(&self, v: &Configuration) -> Result<Nonword, ProblemError> {
        decode(v, &self.inventory)
    }

    pub fn evaluate(&self, w: &Nonword) -> Result<Score, ProblemError> {
        match &self.evaluator {
            Evaluator::Bigram { table, delta } => score_bigram(w, table, *delta, &self.lexicon),
            Evaluator::Neighbors {
                index,
                range,
                delta,
            } => Ok(score_neighbors(w, index, *range, *delta, &self.lexicon)),
        }
    }

    /// Decode and evaluate.
    pub fn score_configuration(&self, v: &Configuration) -> Result<Score, ProblemError> {
        self.evaluate(&self.decode(v)?)
    }
}

impl Objective for Problem {
    fn dimension(&self) -> usize {
        self.syllables
    }

    fn cardinality(&self) -> usize {
        self.inventory.len()
    }

    /// Configurations the criterion cannot evaluate (all one-letter
    /// syllables under the bigram criterion) score 0.
    fn score(&self, v: &Configuration) -> f64 {
        self.score_configuration(v).map_or(0.0, Score::value)
    }

    fn describe(&self, v: &Configuration) -> (String, Vec<String>) {
        let syllables: Vec<String> = v
            .components()
            .iter()
            .map(|&i| self.inventory.syllables()[i].clone())
            .collect();
        (syllables.concat(), syllables)
    }
}
