//! Integer partitions, the containment order `ν ⊂ λ`, the triangularity order
//! `μ ⪯ λ`, and enumeration of `P_n^(N)` in the canonical label order.
//!
//! Missing parts are read as zero everywhere, so `(2,1)` and `(2,1,0,0)` are
//! the same partition. The number of variables `N` is never stored in a
//! partition; functions that depend on it take it explicitly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{factorial, Integer};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Accepts a weakly decreasing sequence; trailing zeros are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn single_row(n: u32) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The sorting `α⁺` of a composition into a partition.
    pub fn from_composition(alpha: &[u32]) -> Self {
        let mut parts: Vec<u32> = alpha.iter().copied().filter(|&a| a > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (zero-based); zero past the last part.
    pub fn get(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `λ_1 = λ_2`, the labels of the invariant harmonic basis.
    pub fn is_tilde(&self) -> bool {
        self.get(0) == self.get(1)
    }

    /// `(λ_2, λ_3, ...)`.
    pub fn tail(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// `λ + ε_i` for zero-based `i`, when the result is still a partition.
    pub fn add_box(&self, i: usize) -> Option<Partition> {
        if i > self.parts.len() {
            return None;
        }
        if i > 0 && self.get(i - 1) <= self.get(i) {
            return None;
        }
        let mut parts = self.parts.clone();
        if i == parts.len() {
            parts.push(1);
        } else {
            parts[i] += 1;
        }
        Some(Partition { parts })
    }

    /// All `ν ⊃ λ` with `|ν| = |λ| + 1` and at most `max_len` parts.
    pub fn add_box_all(&self, max_len: usize) -> Vec<Partition> {
        (0..=self.parts.len())
            .filter_map(|i| self.add_box(i))
            .filter(|nu| nu.len() <= max_len)
            .collect()
    }

    /// `λ - ε_1`, defined when `λ_1 > λ_2`.
    pub fn remove_first_box(&self) -> Option<Partition> {
        if self.get(0) > self.get(1) {
            let mut parts = self.parts.clone();
            parts[0] -= 1;
            Partition::new(parts).ok()
        } else {
            None
        }
    }

    /// Adds `k` to the first part.
    pub fn extend_first(&self, k: u32) -> Partition {
        let mut parts = self.parts.clone();
        if parts.is_empty() {
            if k > 0 {
                parts.push(k);
            }
        } else {
            parts[0] += k;
        }
        Partition { parts }
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.get(0);
        let parts = (1..=width)
            .map(|col| self.parts.iter().filter(|&&p| p >= col).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `λ! = ∏ λ_i!`.
    pub fn factorial(&self) -> Integer {
        self.parts
            .iter()
            .fold(Integer::one(), |acc, &p| acc * factorial(p))
    }

    /// Multiplicity of each nonzero part value.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts
    }

    /// `ν ⊂ λ` with `self = ν`: every part of `ν` is at most the matching part of `λ`.
    pub fn is_contained_in(&self, lambda: &Partition) -> bool {
        self.parts.len() <= lambda.parts.len()
            && self.parts.iter().zip(&lambda.parts).all(|(a, b)| a <= b)
    }

    /// `μ ⪯ λ` with `self = μ`: equal weight and `λ_i ≤ μ_i` for `i ≥ 2`.
    pub fn preceq(&self, lambda: &Partition) -> bool {
        if self.weight() != lambda.weight() {
            return false;
        }
        let span = self.len().max(lambda.len());
        (1..span).all(|i| lambda.get(i) <= self.get(i))
    }

    pub fn ensure_fits(&self, nvars: usize) -> Result<()> {
        if self.len() > nvars {
            Err(Error::PartitionTooLong {
                partition: self.to_string(),
                length: self.len(),
                nvars,
            })
        } else {
            Ok(())
        }
    }

    /// `m_λ(1^N)`: the number of distinct rearrangements of `λ` padded to length `N`.
    pub fn m_at_ones(&self, nvars: usize) -> Result<Integer> {
        self.ensure_fits(nvars)?;
        let zeros = nvars - self.len();
        let denom = self
            .multiplicities()
            .values()
            .chain(std::iter::once(&zeros))
            .fold(Integer::one(), |acc, &m| acc * factorial(m as u32));
        Ok(factorial(nvars as u32) / denom)
    }

    /// The canonical label order within a fixed weight: decreasing length,
    /// then lexicographically increasing parts.
    pub fn canonical_cmp(&self, other: &Partition) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.canonical_cmp(other))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated weakly decreasing positive integers; `0` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed == "0" || trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<u32>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(Error::InvalidPartition(format!(
                        "{trimmed:?}: part {tok:?} is not a positive integer"
                    ))),
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts).map_err(|_| {
            Error::InvalidPartition(format!("{trimmed:?}: parts must be weakly decreasing"))
        })
    }
}

/// `μ ⪯ λ`.
pub fn preceq(mu: &Partition, lambda: &Partition) -> bool {
    mu.preceq(lambda)
}

/// `ν ⊂ λ`.
pub fn contains(nu: &Partition, lambda: &Partition) -> bool {
    nu.is_contained_in(lambda)
}

/// All partitions of `n` with at most `nvars` parts, in canonical order.
/// With `tilde_only` only those with `λ_1 = λ_2` are kept.
pub fn enumerate(n: u32, nvars: usize, tilde_only: bool) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, nvars, &mut current, &mut out);
    if tilde_only {
        out.retain(Partition::is_tilde);
    }
    out.sort_by(Partition::canonical_cmp);
    out
}

fn fill(remaining: u32, max_part: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, slots - 1, current, out);
        current.pop();
    }
}

fn restricted_count(n: u32, sizes: impl Iterator<Item = u32>) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for size in sizes {
        let size = size as usize;
        for total in size..=n {
            table[total] += table[total - size];
        }
    }
    table[n]
}

/// `#P_n^(N)`: coefficient of `q^n` in `∏_{j=1}^N (1-q^j)^{-1}`.
pub fn count_partitions(n: u32, nvars: usize) -> u64 {
    restricted_count(n, 1..=nvars as u32)
}

/// `d(n, N) = #P̃_n^(N)`: coefficient of `q^n` in `∏_{j=2}^N (1-q^j)^{-1}`.
pub fn count_tilde(n: u32, nvars: usize) -> u64 {
    restricted_count(n, 2..=nvars as u32)
}
