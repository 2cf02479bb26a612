//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the table, index or scoring code of the crate:
//! the oracles rebuild every statistic from the raw entries.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use nonword::{Lexicon, LexiconEntry};
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIX3: &str = "toto\t2\tto-to\ntota\t1\tto-ta\ntato\t1\tta-to\n";

const ONSETS: &[&str] = &[
    "b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "ch", "pr", "tr", "bl",
];
const VOWELS: &[&str] = &["a", "e", "i", "o", "u"];
const CODAS: &[&str] = &["", "", "", "n", "s", "r", "l"];

/// Distinct syllables built from onset, vowel and optional coda.
pub fn syllable_pool<R: Rng>(rng: &mut R, count: usize) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut pool = Vec::with_capacity(count);
    let max = (ONSETS.len() + 1) * VOWELS.len() * CODAS.iter().collect::<HashSet<_>>().len();
    assert!(count <= max, "at most {max} distinct syllables");
    while pool.len() < count {
        let onset = if rng.gen_bool(0.1) {
            ""
        } else {
            ONSETS.choose(rng).unwrap()
        };
        let s = format!(
            "{onset}{}{}",
            VOWELS.choose(rng).unwrap(),
            CODAS.choose(rng).unwrap()
        );
        if seen.insert(s.clone()) {
            pool.push(s);
        }
    }
    pool
}

/// Lexicon over `syllables` distinct syllables with roughly `words` entries.
///
/// Every syllable is used at least once. Words have one to four syllables,
/// syllable choice is skewed towards the front of the pool, frequencies are
/// integral and Zipf-like by entry rank, and a few words are listed twice.
pub fn synthetic_lexicon<R: Rng>(rng: &mut R, syllables: usize, words: usize) -> Lexicon {
    let pool = syllable_pool(rng, syllables);
    let pick = |rng: &mut R| {
        // Squaring a uniform draw favors low indices.
        let u: f64 = rng.gen();
        &pool[((u * u) * pool.len() as f64) as usize]
    };
    let mut parts: Vec<Vec<String>> = Vec::with_capacity(words);
    for s in &pool {
        let mut w = vec![s.clone()];
        if rng.gen_bool(0.7) {
            w.push(pick(rng).clone());
        }
        w.shuffle(rng);
        parts.push(w);
    }
    while parts.len() < words {
        let n = *[1usize, 2, 2, 2, 3, 3, 3, 4].choose(rng).unwrap();
        parts.push((0..n).map(|_| pick(rng).clone()).collect());
    }
    for _ in 0..words / 50 {
        let again = parts.choose(rng).unwrap().clone();
        parts.push(again);
    }
    parts.shuffle(rng);
    let entries = parts
        .iter()
        .enumerate()
        .map(|(rank, syl)| {
            let word = syl.concat();
            let freq = (5000.0 / (rank as f64 + 1.0)).floor().max(1.0);
            let refs: Vec<&str> = syl.iter().map(String::as_str).collect();
            LexiconEntry::new(&word, freq, &refs, rank + 1).unwrap()
        })
        .collect();
    Lexicon::from_entries(entries)
}

pub fn write_lexicon(lexicon: &Lexicon, dir: &std::path::Path, name: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, lexicon.to_tsv()).unwrap();
    path
}

/// Token or type bigram counts by direct scan.
pub fn oracle_bigram_counts(lexicon: &Lexicon, type_mode: bool) -> BTreeMap<(String, usize), f64> {
    let mut counts = BTreeMap::new();
    let mut seen = HashSet::new();
    for e in lexicon.entries() {
        if type_mode && !seen.insert(e.word.clone()) {
            continue;
        }
        let weight = if type_mode { 1.0 } else { e.frequency };
        if weight == 0.0 {
            continue;
        }
        let chars: Vec<char> = e.word.chars().collect();
        for p in 0..chars.len().saturating_sub(1) {
            let key = (format!("{}{}", chars[p], chars[p + 1]), p);
            *counts.entry(key).or_insert(0.0) += weight;
        }
    }
    counts
}

/// Same-length lexicon words at Hamming distance exactly one.
pub fn oracle_neighbors(lexicon: &Lexicon, candidate: &str) -> usize {
    let cand: Vec<char> = candidate.chars().collect();
    let words: HashSet<&str> = lexicon.entries().iter().map(|e| e.word.as_str()).collect();
    words
        .into_iter()
        .filter(|w| {
            let w: Vec<char> = w.chars().collect();
            w.len() == cand.len() && w.iter().zip(&cand).filter(|(a, b)| a != b).count() == 1
        })
        .count()
}

/// The bigram inequality `W <= B` in integer arithmetic, or `None` when an
/// average is undefined. Counts must be integral.
pub fn oracle_bigram_holds(
    counts: &BTreeMap<(String, usize), f64>,
    syllables: &[&str],
) -> Option<bool> {
    let lookup = |a: char, b: char, p: usize| -> u128 {
        counts.get(&(format!("{a}{b}"), p)).map_or(0, |&c| {
            assert_eq!(c.fract(), 0.0);
            c as u128
        })
    };
    let text: Vec<char> = syllables.concat().chars().collect();
    let n = syllables.len();
    let l = text.len();
    if n < 2 || l <= n {
        return None;
    }
    // Mark every character index that ends a syllable.
    let mut ends = HashSet::new();
    let mut pos = 0;
    for s in syllables {
        pos += s.chars().count();
        ends.insert(pos - 1);
    }
    let (mut within, mut between) = (0u128, 0u128);
    for p in 0..l - 1 {
        let c = lookup(text[p], text[p + 1], p);
        if ends.contains(&p) {
            between += c;
        } else {
            within += c;
        }
    }
    Some(within * (n as u128 - 1) <= between * (l - n) as u128)
}
