//! Multi-indices over `d` operators and their exact combinatorial weights.
//!
//! A level `k` holds all alpha in N^d with |alpha| = k. Levels are
//! enumerated in a fixed deterministic order (first coordinate descending,
//! recursively), the same order every caller sees. Factorials are taken in
//! arbitrary-precision integers and converted to floating point only at
//! the final weight, so multinomials carry at most one rounding.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Hard cap on the number of multi-indices in a single level.
pub const LEVEL_CAP: u64 = 2_000_000;

/// Exponent vector alpha in N^d.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl std::fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "alpha{:?}", self.entries)
    }
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("multi-index needs at least one component"));
        }
        Ok(MultiIndex { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Order |alpha| = sum of components.
    pub fn order(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// Multinomial weight |alpha|! / alpha! as an exact big integer.
    pub fn multinomial_exact(&self) -> BigUint {
        let mut value = BigUint::one();
        let mut seen: u64 = 0;
        // |alpha|!/alpha! = prod over components of C(seen + a_j, a_j)
        for &a in &self.entries {
            value *= binomial_big(seen + a as u64, a as u64);
            seen += a as u64;
        }
        value
    }

    /// Multinomial weight rounded once to f64.
    pub fn multinomial(&self) -> f64 {
        self.multinomial_exact().to_f64().unwrap_or(f64::INFINITY)
    }

    /// Drops component `j` (0-based), pairing with tuples reduced by
    /// [`crate::linalg::OperatorTuple::remove_index`].
    pub fn remove_index(&self, j: usize) -> Result<MultiIndex> {
        if j >= self.entries.len() {
            return Err(Error::invalid(format!(
                "component {} out of range for a multi-index of length {}",
                j,
                self.entries.len()
            )));
        }
        if self.entries.len() == 1 {
            return Err(Error::invalid("cannot remove the only component of a multi-index"));
        }
        let mut entries = self.entries.clone();
        entries.remove(j);
        Ok(MultiIndex { entries })
    }
}

/// Exact binomial coefficient C(n, k).
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut value = BigUint::one();
    for i in 0..k {
        value = value * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    value
}

/// C(n, k) rounded once to f64.
pub fn binomial(n: u64, k: u64) -> f64 {
    binomial_big(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// Number of multi-indices of order `k` over `d` components:
/// C(k + d - 1, d - 1).
pub fn level_count(d: usize, k: u32) -> BigUint {
    binomial_big(k as u64 + d as u64 - 1, d as u64 - 1)
}

/// All alpha with |alpha| = k over `d` components, first coordinate
/// descending. For d = 2, k = 2 this yields (2,0), (1,1), (0,2).
///
/// Fails with a capacity error when the level would exceed [`LEVEL_CAP`].
pub fn enumerate_multi_indices(d: usize, k: u32) -> Result<Vec<MultiIndex>> {
    if d == 0 {
        return Err(Error::invalid("multi-index enumeration needs d >= 1"));
    }
    let count = level_count(d, k);
    match count.to_u64() {
        Some(c) if c <= LEVEL_CAP => {}
        _ => {
            return Err(Error::Capacity {
                requested: count.to_u128().unwrap_or(u128::MAX),
                cap: LEVEL_CAP,
            })
        }
    }
    let mut out = Vec::with_capacity(level_count(d, k).to_usize().unwrap_or(0));
    let mut current = vec![0u32; d];
    fill(&mut out, &mut current, 0, k);
    Ok(out)
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex { entries: current.clone() });
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill(out, current, pos + 1, remaining - a);
    }
}
