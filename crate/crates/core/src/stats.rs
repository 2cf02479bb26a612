//! Positional bigram frequencies and orthographic neighbor counts.
//!
//! A bigram's position is the 0-based index of its first character within
//! the word, so "ic" sits at position 5 in "pacific" and 6 in "specific".

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::lexicon::Lexicon;

/// Which weight a word contributes to the bigram counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrequencyMode {
    /// Every entry weighted by its corpus frequency.
    Token,
    /// One count per distinct word.
    Type,
}

impl FromStr for FrequencyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "token" => Ok(Self::Token),
            "type" => Ok(Self::Type),
            other => Err(format!(
                "unknown frequency mode `{other}` (expected token or type)"
            )),
        }
    }
}

impl std::fmt::Display for FrequencyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Token => "token",
            Self::Type => "type",
        })
    }
}

type BigramKey = (char, char, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct BigramPositionTable {
    counts: HashMap<BigramKey, f64>,
    mode: FrequencyMode,
    max_count: f64,
}

impl BigramPositionTable {
    pub fn mode(&self) -> FrequencyMode {
        self.mode
    }

    /// Largest stored count, 0 for an empty table.
    pub fn max_count(&self) -> f64 {
        self.max_count
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Count of `first second` starting at `position`; 0 when unseen.
    pub fn count(&self, first: char, second: char, position: usize) -> f64 {
        self.counts
            .get(&(first, second, position))
            .copied()
            .unwrap_or(0.0)
    }

    /// Count for a two-character string. Anything else scores 0.
    pub fn get(&self, bigram: &str, position: usize) -> f64 {
        let mut chars = bigram.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(a), Some(b), None) => self.count(a, b, position),
            _ => 0.0,
        }
    }

    /// All stored entries sorted by (bigram, position).
    pub fn sorted_entries(&self) -> Vec<(String, usize, f64)> {
        let sorted: BTreeMap<(char, char, usize), f64> =
            self.counts.iter().map(|(k, v)| (*k, *v)).collect();
        sorted
            .into_iter()
            .map(|((a, b, p), c)| (format!("{a}{b}"), p, c))
            .collect()
    }

    /// Debug dump: `bigram<TAB>position<TAB>count`, sorted by (bigram, position).
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (bigram, position, count) in self.sorted_entries() {
            let _ = writeln!(out, "{bigram}\t{position}\t{count}");
        }
        out
    }

    fn add(&mut self, key: BigramKey, weight: f64) {
        if weight <= 0.0 {
            return;
        }
        let slot = self.counts.entry(key).or_insert(0.0);
        *slot += weight;
        if *slot > self.max_count {
            self.max_count = *slot;
        }
    }
}

pub fn build_bigram_table(lexicon: &Lexicon, mode: FrequencyMode) -> BigramPositionTable {
    let mut table = BigramPositionTable {
        counts: HashMap::new(),
        mode,
        max_count: 0.0,
    };
    let typed;
    let (source, weighted) = match mode {
        FrequencyMode::Token => (lexicon, true),
        FrequencyMode::Type => {
            typed = lexicon.type_view();
            (&typed, false)
        }
    };
    for entry in source.entries() {
        let weight = if weighted { entry.frequency } else { 1.0 };
        let chars: Vec<char> = entry.word.chars().collect();
        for (p, pair) in chars.windows(2).enumerate() {
            table.add((pair[0], pair[1], p), weight);
        }
    }
    table
}

/// Sum of the counts of a syllable's internal bigrams, looked up at their
/// absolute positions in the nonword. `offset` is the character index of the
/// syllable's first letter.
pub fn psi_w(table: &BigramPositionTable, syllable: &str, offset: usize) -> f64 {
    let mut chars = syllable.chars();
    let Some(mut prev) = chars.next() else {
        return 0.0;
    };
    let mut total = 0.0;
    for (i, c) in chars.enumerate() {
        total += table.count(prev, c, offset + i);
        prev = c;
    }
    total
}

/// Count of the bigram spanning a syllable boundary. `boundary` is the
/// character index of the last letter of `left`.
pub fn psi_b(table: &BigramPositionTable, left: &str, right: &str, boundary: usize) -> f64 {
    match (left.chars().last(), right.chars().next()) {
        (Some(a), Some(b)) => table.count(a, b, boundary),
        _ => 0.0,
    }
}

/// Lookup structure for Hamming-distance-1 neighbors among lexicon words.
#[derive(Debug, Clone, Default)]
pub struct NeighborIndex {
    words_by_length: HashMap<usize, Vec<String>>,
    // Every word with one position masked out, keyed by the masked form.
    masked: HashMap<Vec<char>, u32>,
}

const MASK: char = '\0';

impl NeighborIndex {
    pub fn new(lexicon: &Lexicon) -> Self {
        let mut words: Vec<&String> = lexicon.word_set().iter().collect();
        words.sort();
        let mut index = Self::default();
        for word in words {
            let chars: Vec<char> = word.chars().collect();
            index
                .words_by_length
                .entry(chars.len())
                .or_default()
                .push(word.clone());
            for key in masked_forms(&chars) {
                *index.masked.entry(key).or_insert(0) += 1;
            }
        }
        index
    }

    pub fn words_by_length(&self) -> &HashMap<usize, Vec<String>> {
        &self.words_by_length
    }

    fn contains(&self, candidate: &str, len: usize) -> bool {
        self.words_by_length
            .get(&len)
            .is_some_and(|ws| ws.binary_search_by(|w| w.as_str().cmp(candidate)).is_ok())
    }
}

fn masked_forms(chars: &[char]) -> impl Iterator<Item = Vec<char>> + '_ {
    (0..chars.len()).map(move |p| {
        let mut key = chars.to_vec();
        key[p] = MASK;
        key
    })
}

/// Number of lexicon words of the same length that differ from `candidate`
/// in exactly one position.
pub fn count_orthographic_neighbors(index: &NeighborIndex, candidate: &str) -> usize {
    let chars: Vec<char> = candidate.chars().collect();
    let matches: usize = masked_forms(&chars)
        .map(|k| index.masked.get(&k).copied().unwrap_or(0) as usize)
        .sum();
    // A word equal to the candidate matches every masked form.
    if index.contains(candidate, chars.len()) {
        matches - chars.len()
    } else {
        matches
    }
}
