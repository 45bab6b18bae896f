//! Brute-force semantics on finite rings and modules.
//!
//! Everything here works on explicit element tables with its own arithmetic
//! and is used to cross-check the structured algorithms.

mod model;
mod ring;

pub use fixedbitset::FixedBitSet;
pub use model::{FiniteModel, Query, QueryResult};
pub use ring::FiniteRing;

/// Enumeration caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of raw elements (ring or `R^g`) that may be tabulated.
    pub elements: usize,
    /// Largest number of element pairs scanned by primality tests.
    pub pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            elements: 100_000,
            pairs: 1 << 16,
        }
    }
}

impl Budget {
    /// Default caps, with `COMAX_BUDGET` overriding the element cap.
    pub fn from_env() -> Budget {
        let mut b = Budget::default();
        if let Some(v) = std::env::var("COMAX_BUDGET").ok().and_then(|s| s.trim().parse().ok()) {
            b.elements = v;
        }
        b
    }
}

// Extends the additive subgroup `set` by the cyclic group of `y`.
pub(crate) fn extend_span<F>(set: &mut FixedBitSet, y: usize, add: F)
where
    F: Fn(usize, usize) -> usize,
{
    if set.contains(y) {
        return;
    }
    let mut list: Vec<usize> = set.ones().collect();
    let mut i = 0;
    while i < list.len() {
        let z = add(list[i], y);
        if !set.contains(z) {
            set.insert(z);
            list.push(z);
        }
        i += 1;
    }
}

/// A small additive generating set of a subgroup.
pub(crate) fn additive_basis<F>(set: &FixedBitSet, zero: usize, add: F) -> Vec<usize>
where
    F: Fn(usize, usize) -> usize,
{
    let mut cur = FixedBitSet::with_capacity(set.len());
    cur.insert(zero);
    let mut out = Vec::new();
    for x in set.ones() {
        if !cur.contains(x) {
            extend_span(&mut cur, x, &add);
            out.push(x);
        }
    }
    out
}
