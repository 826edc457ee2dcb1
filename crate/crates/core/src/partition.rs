//! Integer partitions, Young-diagram hooks, conjugation and the structural
//! predicates used by the core families.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// A weakly decreasing sequence of positive parts.
///
/// Equality and ordering are those of the part sequence, so `[]` sorts first
/// and `[1, 1]` sorts before `[2]`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

/// Hook of the box in row `row`, column `col` (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HookLength {
    pub row: u64,
    pub col: u64,
    pub length: u64,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(CoreError::InvalidPartition {
                parts,
                reason: "parts must be positive",
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CoreError::InvalidPartition {
                parts,
                reason: "parts must be weakly decreasing",
            });
        }
        Ok(Self { parts })
    }

    /// Sorts `parts` into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Staircase `(k, k-1, ..., 1)`.
    pub fn staircase(k: u64) -> Self {
        Self {
            parts: (1..=k).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts
            .iter()
            .try_fold(0u64, |acc, &p| acc.checked_add(p))
            .expect("partition weight overflows u64")
    }

    /// Number of boxes in column `col` (1-based).
    fn column_length(&self, col: u64) -> u64 {
        self.parts.iter().take_while(|&&p| p >= col).count() as u64
    }

    pub fn first_column_hooks(&self) -> BTreeSet<u64> {
        let n = self.parts.len() as u64;
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &p)| p + (n - 1 - r as u64))
            .collect()
    }

    /// All hooks of the Young diagram, in row-major order.
    pub fn hook_lengths(&self) -> Vec<HookLength> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.weight() as usize);
        for (r, &p) in self.parts.iter().enumerate() {
            let row = r as u64 + 1;
            for col in 1..=p {
                let arm = p - col;
                let leg = conj.parts[(col - 1) as usize] - row;
                hooks.push(HookLength {
                    row,
                    col,
                    length: arm + leg + 1,
                });
            }
        }
        hooks
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        Self {
            parts: (1..=width).map(|c| self.column_length(c)).collect(),
        }
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn is_two_core(&self) -> bool {
        let k = self.parts.len() as u64;
        self.parts.iter().enumerate().all(|(r, &p)| p == k - r as u64)
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of_weight(n: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill(n, n, &mut current, &mut out);
        out
    }
}

fn fill(remaining: u64, max_part: u64, current: &mut Vec<u64>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = CoreError;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}
