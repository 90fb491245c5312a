//! Finite posets and the integer incidence algebra over them.
//!
//! Elements are dense indices `0..size`. The order relation is stored as one
//! down-set bitset per element; up-sets are derived lazily since large
//! subgroup lattices only ever need one of the two directions.

mod export;
mod incidence;
mod lattice;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use export::{hasse_dot, PosetJson};
pub use incidence::{convolve, delta, invert, mobius, zeta, IncidenceFunction};
pub use lattice::{complements, crapo_sum, modular_crapo_sum, BoundedLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element {index} out of range for poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation is not antisymmetric: {0} <= {1} <= {0}")]
    AntisymmetryViolation(usize, usize),
    #[error("relation is not a partial order: {0}")]
    InvalidRelation(String),
    #[error("incidence functions live on different posets")]
    PosetMismatch,
    #[error("f({0},{0}) = 0, function is not invertible")]
    NotInvertible(usize),
    #[error("f({0},{0}) is not a unit, no exact integer inverse")]
    NonUnitDiagonal(usize),
    #[error("poset has no unique minimum and maximum")]
    NoBounds,
    #[error("elements {0} and {1} have no unique meet or join")]
    NotALattice(usize, usize),
    #[error("complements {0} and {1} are comparable")]
    ComparableComplements(usize, usize),
}

pub type Result<T> = std::result::Result<T, PosetError>;

/// A finite partial order on `0..size`.
#[derive(Debug, Clone)]
pub struct Poset {
    size: usize,
    /// `down[y]` holds every `x` with `x <= y`.
    down: Vec<FixedBitSet>,
    up: OnceLock<Vec<FixedBitSet>>,
    labels: Vec<String>,
    /// A linear extension: `linear[i] < linear[j]` in the order implies `i < j`.
    linear: Vec<usize>,
    position: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.down == other.down
    }
}

impl Eq for Poset {}

/// Builds the reflexive-transitive closure of `pairs` on `size` elements.
///
/// Each pair `(x, y)` asserts `x <= y`. Fails if the closure identifies two
/// distinct elements.
pub fn build_poset(pairs: &[(usize, usize)], size: usize) -> Result<Poset> {
    let mut down: Vec<FixedBitSet> = (0..size)
        .map(|y| {
            let mut row = FixedBitSet::with_capacity(size);
            row.insert(y);
            row
        })
        .collect();
    for &(x, y) in pairs {
        for index in [x, y] {
            if index >= size {
                return Err(PosetError::IndexOutOfRange { index, size });
            }
        }
        down[y].insert(x);
    }

    // Warshall on bitset rows.
    for k in 0..size {
        let row_k = down[k].clone();
        for row in down.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }

    for y in 0..size {
        for x in down[y].ones() {
            if x != y && down[x].contains(y) {
                return Err(PosetError::AntisymmetryViolation(x.min(y), x.max(y)));
            }
        }
    }
    Ok(Poset::from_checked_down_sets(down))
}

impl Poset {
    /// Builds a poset from explicit down-sets, validating that they describe a
    /// partial order (reflexive, antisymmetric, transitive).
    pub fn from_down_sets(down: Vec<FixedBitSet>) -> Result<Poset> {
        let size = down.len();
        for (y, row) in down.iter().enumerate() {
            if row.len() != size {
                return Err(PosetError::InvalidRelation(format!(
                    "row {y} has width {}, expected {size}",
                    row.len()
                )));
            }
            if !row.contains(y) {
                return Err(PosetError::InvalidRelation(format!("{y} <= {y} missing")));
            }
            for x in row.ones() {
                if x == y {
                    continue;
                }
                if down[x].contains(y) {
                    return Err(PosetError::AntisymmetryViolation(x.min(y), x.max(y)));
                }
                if !down[x].is_subset(row) {
                    return Err(PosetError::InvalidRelation(format!(
                        "not transitive below {x} <= {y}"
                    )));
                }
            }
        }
        Ok(Poset::from_checked_down_sets(down))
    }

    fn from_checked_down_sets(down: Vec<FixedBitSet>) -> Poset {
        let size = down.len();
        // Strictly smaller elements have strictly smaller down-sets.
        let mut linear: Vec<usize> = (0..size).collect();
        linear.sort_by_key(|&x| (down[x].count_ones(..), x));
        let mut position = vec![0; size];
        for (i, &x) in linear.iter().enumerate() {
            position[x] = i;
        }
        Poset {
            size,
            down,
            up: OnceLock::new(),
            labels: (0..size).map(|i| i.to_string()).collect(),
            linear,
            position,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Poset {
        assert_eq!(labels.len(), self.size, "one label per element");
        self.labels = labels;
        self
    }

    /// An antichain on `size` elements.
    pub fn antichain(size: usize) -> Poset {
        build_poset(&[], size).expect("empty relation is a partial order")
    }

    /// The chain `0 < 1 < ... < size-1`.
    pub fn chain(size: usize) -> Poset {
        let pairs: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        build_poset(&pairs, size).expect("a chain is a partial order")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{x : x <= y}` as a bitset.
    pub fn down_set(&self, y: usize) -> &FixedBitSet {
        &self.down[y]
    }

    /// `{y : x <= y}` as a bitset.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up_sets()[x]
    }

    fn up_sets(&self) -> &[FixedBitSet] {
        self.up.get_or_init(|| {
            let mut up = vec![FixedBitSet::with_capacity(self.size); self.size];
            for (y, row) in self.down.iter().enumerate() {
                for x in row.ones() {
                    up[x].insert(y);
                }
            }
            up
        })
    }

    /// Elements in an order-compatible sequence.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub(crate) fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(PosetError::IndexOutOfRange { index, size: self.size })
        }
    }

    /// The unique minimum, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        let &candidate = self.linear.first()?;
        self.down.iter().all(|row| row.contains(candidate)).then_some(candidate)
    }

    /// The unique maximum, if there is one.
    pub fn top(&self) -> Option<usize> {
        let &candidate = self.linear.last()?;
        (self.down[candidate].count_ones(..) == self.size).then_some(candidate)
    }

    pub fn bounds(&self) -> Result<(usize, usize)> {
        match (self.bottom(), self.top()) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(PosetError::NoBounds),
        }
    }

    /// Every pair `(x, y)` with `x <= y`, in lexicographic order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let up = self.up_sets();
        (0..self.size)
            .flat_map(|x| up[x].ones().map(move |y| (x, y)))
            .collect()
    }

    /// Cover relation `x < y` with nothing strictly between, lexicographic.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let up = self.up_sets();
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in up[x].ones() {
                if y == x {
                    continue;
                }
                let mut between = self.down[y].clone();
                between.intersect_with(&up[x]);
                if between.count_ones(..) == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Number of pairs `x <= y`.
    pub fn relation_size(&self) -> usize {
        self.down.iter().map(|row| row.count_ones(..)).sum()
    }
}

/// The closed interval `[lo, hi]` as a poset in its own right.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    /// Parent indices of the interval's elements, ascending. Element `i` of
    /// [`Interval::poset`] is `elements[i]` in the parent.
    pub elements: Vec<usize>,
    pub poset: Poset,
}

impl Interval {
    pub fn new(parent: &Poset, lo: usize, hi: usize) -> Result<Interval> {
        parent.check_index(lo)?;
        parent.check_index(hi)?;
        if !parent.leq(lo, hi) {
            return Err(PosetError::InvalidRelation(format!("{lo} is not below {hi}")));
        }
        let mut members = parent.down_set(hi).clone();
        members.intersect_with(parent.up_set(lo));
        let elements: Vec<usize> = members.ones().collect();
        let n = elements.len();
        let down = elements
            .iter()
            .map(|&y| {
                let mut row = FixedBitSet::with_capacity(n);
                for (i, &x) in elements.iter().enumerate() {
                    if parent.leq(x, y) {
                        row.insert(i);
                    }
                }
                row
            })
            .collect();
        let labels = elements.iter().map(|&x| parent.label(x).to_owned()).collect();
        let poset = Poset::from_checked_down_sets(down).with_labels(labels);
        Ok(Interval { lo, hi, elements, poset })
    }

    /// Index of a parent element inside the interval.
    pub fn local(&self, parent_index: usize) -> Option<usize> {
        self.elements.binary_search(&parent_index).ok()
    }
}

/// Divisors of `n` ordered by divisibility; labels are the divisors.
pub fn divisor_lattice(n: u64) -> Poset {
    assert!(n >= 1, "divisor lattice needs n >= 1");
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let size = divisors.len();
    let down = divisors
        .iter()
        .map(|&b| {
            let mut row = FixedBitSet::with_capacity(size);
            for (i, &a) in divisors.iter().enumerate() {
                if b % a == 0 {
                    row.insert(i);
                }
            }
            row
        })
        .collect();
    Poset::from_checked_down_sets(down).with_labels(divisors.iter().map(u64::to_string).collect())
}

/// The number-theoretic Möbius function, by trial division.
pub fn classical_mobius(n: u64) -> i32 {
    assert!(n >= 1, "classical Möbius function needs n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}
