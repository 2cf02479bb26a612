//! Duplicate-free container of accepted nonwords.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    #[serde(rename = "nonword")]
    pub text: String,
    pub syllables: Vec<String>,
    /// Iteration at which the nonword was first found.
    pub iteration: u64,
}

/// Solutions keyed by decoded text, in discovery order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionSet {
    entries: IndexMap<String, Solution>,
}

impl SolutionSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts unless the text is already present. Returns whether it was new.
    pub fn insert(&mut self, text: String, syllables: Vec<String>, iteration: u64) -> bool {
        if self.entries.contains_key(&text) {
            return false;
        }
        self.entries.insert(
            text.clone(),
            Solution {
                text,
                syllables,
                iteration,
            },
        );
        true
    }

    pub fn contains(&self, text: &str) -> bool {
        self.entries.contains_key(text)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Solution> {
        self.entries.values()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

impl<'a> IntoIterator for &'a SolutionSet {
    type Item = &'a Solution;
    type IntoIter = indexmap::map::Values<'a, String, Solution>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.values()
    }
}
