//! Syllabified frequency lexicon.
//!
//! The on-disk format is one entry per line with three TAB-separated
//! fields, `word`, `frequency` and the syllables joined by `-`, as in
//! `toto<TAB>2<TAB>to-to`.
//!
//! Lines starting with `#` and blank lines are skipped. Words and syllables
//! are lowercased on input. Frequencies are non-negative reals and are
//! treated as opaque weights downstream.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use thiserror::Error;

/// Separator between syllables in the third field.
pub const SYLLABLE_SEPARATOR: char = '-';

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: syllables of `{word}` join to `{joined}`")]
    Syllabification {
        line: usize,
        word: String,
        joined: String,
    },
    #[error("line {line}: `{word}` contains a non-letter character")]
    InvalidWord { line: usize, word: String },
    #[error("lexicon has no entries")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub word: String,
    pub frequency: f64,
    pub syllables: Vec<String>,
}

impl LexiconEntry {
    /// Builds a validated entry. `line` is only used for error reporting.
    pub fn new(
        word: &str,
        frequency: f64,
        syllables: &[&str],
        line: usize,
    ) -> Result<Self, LexiconError> {
        let word = word.to_lowercase();
        if word.is_empty() || !word.chars().all(char::is_alphabetic) {
            return Err(LexiconError::InvalidWord { line, word });
        }
        if !frequency.is_finite() || frequency < 0.0 {
            return Err(LexiconError::Parse {
                line,
                message: format!("frequency must be a non-negative number, got {frequency}"),
            });
        }
        let syllables: Vec<String> = syllables.iter().map(|s| s.to_lowercase()).collect();
        let joined = syllables.concat();
        if syllables.is_empty() || syllables.iter().any(String::is_empty) || joined != word {
            return Err(LexiconError::Syllabification { line, word, joined });
        }
        Ok(Self {
            word,
            frequency,
            syllables,
        })
    }

    /// Number of characters (not bytes) in the word.
    pub fn len(&self) -> usize {
        self.word.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// A parsed corpus with its derived word set and alphabet.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    word_set: HashSet<String>,
    alphabet: BTreeSet<char>,
}

impl Lexicon {
    pub fn from_entries(entries: Vec<LexiconEntry>) -> Self {
        let word_set = entries.iter().map(|e| e.word.clone()).collect();
        let alphabet = entries.iter().flat_map(|e| e.word.chars()).collect();
        Self {
            entries,
            word_set,
            alphabet,
        }
    }

    pub fn parse_str(source: &str) -> Result<Self, LexiconError> {
        parse_lexicon(source.as_bytes())
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let file = std::fs::File::open(path)?;
        parse_lexicon(std::io::BufReader::new(file))
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn word_set(&self) -> &HashSet<String> {
        &self.word_set
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True iff `candidate` is one of the lexicon's words.
    pub fn is_word(&self, candidate: &str) -> bool {
        self.word_set.contains(candidate)
    }

    /// One entry per distinct word, each with frequency 1. The first
    /// occurrence of a word decides its syllabification and position.
    pub fn type_view(&self) -> Lexicon {
        let mut seen = HashSet::with_capacity(self.word_set.len());
        let entries = self
            .entries
            .iter()
            .filter(|e| seen.insert(e.word.as_str()))
            .map(|e| LexiconEntry {
                frequency: 1.0,
                ..e.clone()
            })
            .collect();
        Lexicon::from_entries(entries)
    }

    /// Serializes back into the TAB-separated file format.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let syllables = e.syllables.join(&SYLLABLE_SEPARATOR.to_string());
            let _ = writeln!(out, "{}\t{}\t{}", e.word, e.frequency, syllables);
        }
        out
    }
}

/// Reads a lexicon in the TAB-separated format. Entry order is preserved.
pub fn parse_lexicon<R: BufRead>(source: R) -> Result<Lexicon, LexiconError> {
    let mut entries = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(LexiconError::Parse {
                line: line_no,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        let frequency: f64 = fields[1].trim().parse().map_err(|_| LexiconError::Parse {
            line: line_no,
            message: format!("invalid frequency `{}`", fields[1]),
        })?;
        let syllables: Vec<&str> = fields[2].trim().split(SYLLABLE_SEPARATOR).collect();
        entries.push(LexiconEntry::new(
            fields[0].trim(),
            frequency,
            &syllables,
            line_no,
        )?);
    }
    Ok(Lexicon::from_entries(entries))
}

/// The ordered set of distinct syllables a configuration indexes into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyllableInventory {
    syllables: Vec<String>,
}

impl SyllableInventory {
    /// Builds an inventory from arbitrary strings; duplicates are removed and
    /// the result is sorted lexicographically.
    pub fn from_syllables<I, S>(syllables: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = syllables.into_iter().map(Into::into).collect();
        if set.is_empty() {
            return Err(LexiconError::Empty);
        }
        Ok(Self {
            syllables: set.into_iter().collect(),
        })
    }

    pub fn syllables(&self) -> &[String] {
        &self.syllables
    }

    /// The cardinality λ.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&str> {
        self.syllables.get(index).map(String::as_str)
    }

    pub fn index_of(&self, syllable: &str) -> Option<usize> {
        self.syllables
            .binary_search_by(|s| s.as_str().cmp(syllable))
            .ok()
    }
}

/// Distinct syllables of every entry, sorted lexicographically.
pub fn build_syllable_inventory(lexicon: &Lexicon) -> Result<SyllableInventory, LexiconError> {
    if lexicon.is_empty() {
        return Err(LexiconError::Empty);
    }
    SyllableInventory::from_syllables(
        lexicon
            .entries()
            .iter()
            .flat_map(|e| e.syllables.iter().cloned()),
    )
}
