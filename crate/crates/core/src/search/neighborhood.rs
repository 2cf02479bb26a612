use rand::seq::index;
use rand::Rng;

use crate::problem::Configuration;

/// Elementary move: set component `position` to `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveKey {
    pub position: usize,
    pub value: usize,
}

impl MoveKey {
    pub fn new(position: usize, value: usize) -> Self {
        Self { position, value }
    }

    /// The configuration reached by applying this move to `v`.
    pub fn apply_to(&self, v: &Configuration) -> Configuration {
        let mut next = v.clone();
        next.set(self.position, self.value);
        next
    }

    /// True when the move leaves `v` unchanged.
    pub fn is_null_for(&self, v: &Configuration) -> bool {
        v[self.position] == self.value
    }
}

/// A randomized axis-aligned neighborhood: every component paired with every
/// value of a random duplicate-free sample of the index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    values: Vec<usize>,
    dimension: usize,
}

impl Neighborhood {
    pub fn new(values: Vec<usize>, dimension: usize) -> Self {
        Self { values, dimension }
    }

    /// The sampled values, in draw order.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.values.len() * self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Moves ordered by component, then by sampled value.
    pub fn moves(&self) -> impl Iterator<Item = MoveKey> + '_ {
        (0..self.dimension).flat_map(move |j| self.values.iter().map(move |&x| MoveKey::new(j, x)))
    }
}

/// Draws `min(chi_max, cardinality)` distinct values uniformly from
/// `[0, cardinality)` and pairs each with every component of `v`.
/// Moves that leave `v` unchanged are kept.
pub fn neighborhood_generation<R: Rng + ?Sized>(
    v: &Configuration,
    rng: &mut R,
    chi_max: usize,
    cardinality: usize,
) -> Neighborhood {
    let amount = chi_max.min(cardinality);
    let values = index::sample(rng, cardinality, amount).into_vec();
    Neighborhood::new(values, v.len())
}
