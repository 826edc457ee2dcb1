//! Bead sets and their s-abacus views.
//!
//! A bead set is a finite set of non-negative integers; position `x` holds a
//! bead when `x` is in the set and a spacer otherwise. On `s` runners the
//! value `x` sits at runner `x mod s`, row `x / s`. The bead set is always
//! the stored form; an [`Abacus`] only adds the runner count.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BeadSet(BTreeSet<u64>);

impl BeadSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.contains(&x)
    }

    pub fn insert(&mut self, x: u64) -> bool {
        self.0.insert(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<u64> {
        &self.0
    }

    /// Minimal bead set of `p`: its first-column hook lengths.
    pub fn from_partition(p: &Partition) -> Self {
        Self(p.first_column_hooks())
    }

    /// Each bead contributes a part equal to the number of spacers below it.
    pub fn to_partition(&self) -> Partition {
        let parts = self
            .0
            .iter()
            .enumerate()
            .rev()
            .map(|(beads_below, &b)| b - beads_below as u64)
            .filter(|&part| part > 0)
            .collect();
        Partition::new(parts).expect("spacer counts are weakly increasing in the bead value")
    }

    /// Strips the leading run `0, 1, ..., k-1` and shifts the rest down by `k`.
    pub fn normalize(&self) -> Self {
        let k = self.0.iter().enumerate().take_while(|&(i, &b)| b == i as u64).count() as u64;
        Self(self.0.iter().filter(|&&b| b >= k).map(|&b| b - k).collect())
    }

    pub fn is_minimal(&self) -> bool {
        !self.contains(0)
    }

    /// Adds `k` leading beads, the inverse of [`BeadSet::normalize`] on a minimal set.
    pub fn shifted(&self, k: u64) -> Self {
        Self((0..k).chain(self.0.iter().map(|&b| b + k)).collect())
    }

    /// True when no two beads are adjacent integers.
    pub fn has_no_consecutive(&self) -> bool {
        self.0.iter().zip(self.0.iter().skip(1)).all(|(a, b)| b - a > 1)
    }

    pub fn to_abacus(&self, runners: u64) -> Result<Abacus> {
        Abacus::new(runners, self.clone())
    }

    /// Mirror axis of a self-conjugate partition's bead set.
    ///
    /// With every negative position read as a bead, the partition is
    /// self-conjugate exactly when some half-integer `θ` swaps beads and
    /// spacers: `θ + d` is a bead iff `θ - d` is a spacer.
    pub fn self_conjugate_axis(&self) -> Option<AxisTheta> {
        let max = self.largest().map_or(-1, |m| m as i64);
        // θ ranges over -1/2, 1/2, ..., max + 1/2
        (-1..=2 * max + 1)
            .step_by(2)
            .find(|&twice| self.mirrors_about(twice))
            .map(|twice| AxisTheta { twice })
    }

    fn mirrors_about(&self, twice: i64) -> bool {
        // positions above 2θ mirror onto negative positions, which are beads
        if self.largest().is_some_and(|m| m as i64 > twice) {
            return false;
        }
        (0..=twice).all(|x| self.contains(x as u64) != self.contains((twice - x) as u64))
    }
}

impl FromIterator<u64> for BeadSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[u64; N]> for BeadSet {
    fn from(values: [u64; N]) -> Self {
        values.into_iter().collect()
    }
}

/// A half-integer stored as twice its value, so `twice` is always odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxisTheta {
    twice: i64,
}

impl AxisTheta {
    pub fn from_twice(twice: i64) -> Option<Self> {
        (twice.rem_euclid(2) == 1).then_some(Self { twice })
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

/// A bead set viewed on a fixed number of runners.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Abacus {
    runners: u64,
    beads: BeadSet,
}

impl Abacus {
    pub fn new(runners: u64, beads: BeadSet) -> Result<Self> {
        if runners == 0 {
            return Err(CoreError::ZeroRunners);
        }
        Ok(Self { runners, beads })
    }

    pub fn empty(runners: u64) -> Result<Self> {
        Self::new(runners, BeadSet::new())
    }

    /// Builds an abacus from `(runner, row)` positions.
    pub fn from_positions<I>(runners: u64, positions: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        if runners == 0 {
            return Err(CoreError::ZeroRunners);
        }
        let mut beads = BeadSet::new();
        for (i, j) in positions {
            if i >= runners {
                return Err(CoreError::OutOfRange {
                    name: "runner",
                    value: i,
                    reason: format!("must be below {runners}"),
                });
            }
            beads.insert(i + j * runners);
        }
        Ok(Self { runners, beads })
    }

    pub fn runners(&self) -> u64 {
        self.runners
    }

    pub fn beads(&self) -> &BeadSet {
        &self.beads
    }

    pub fn into_beads(self) -> BeadSet {
        self.beads
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    pub fn position_of(&self, value: u64) -> (u64, u64) {
        (value % self.runners, value / self.runners)
    }

    pub fn value_at(&self, runner: u64, row: u64) -> u64 {
        runner + row * self.runners
    }

    pub fn contains(&self, runner: u64, row: u64) -> bool {
        runner < self.runners && self.beads.contains(self.value_at(runner, row))
    }

    /// Occupied `(runner, row)` positions, sorted.
    pub fn positions(&self) -> BTreeSet<(u64, u64)> {
        self.beads.iter().map(|b| self.position_of(b)).collect()
    }

    /// Highest occupied row, if any bead is present.
    pub fn top_row(&self) -> Option<u64> {
        self.beads.largest().map(|b| b / self.runners)
    }

    pub fn to_partition(&self) -> Partition {
        self.beads.to_partition()
    }

    pub fn is_sub_abacus_of(&self, outer: &Abacus) -> Result<bool> {
        self.check_runners(outer)?;
        Ok(self.beads.as_set().is_subset(outer.beads.as_set()))
    }

    /// No spacer sits directly below a bead on any runner.
    pub fn is_core(&self) -> bool {
        self.beads
            .iter()
            .all(|b| b < self.runners || self.beads.contains(b - self.runners))
    }

    pub fn intersect(&self, other: &Abacus) -> Result<Abacus> {
        self.check_runners(other)?;
        Ok(Abacus {
            runners: self.runners,
            beads: BeadSet(
                self.beads
                    .as_set()
                    .intersection(other.beads.as_set())
                    .copied()
                    .collect(),
            ),
        })
    }

    /// Appends `right` to the right of `self`: runners `0..s` copy `self` and
    /// runners `s..s+t` copy `right`.
    pub fn wedge(&self, right: &Abacus) -> Abacus {
        let runners = self.runners + right.runners;
        let left_part = self.positions().into_iter();
        let right_part = right.positions().into_iter().map(|(i, j)| (i + self.runners, j));
        let beads = left_part.chain(right_part).map(|(i, j)| i + j * runners).collect();
        Abacus { runners, beads }
    }

    pub(crate) fn check_runners(&self, other: &Abacus) -> Result<()> {
        if self.runners != other.runners {
            return Err(CoreError::RunnerMismatch {
                left: self.runners,
                right: other.runners,
            });
        }
        Ok(())
    }

    /// ASCII grid with at least `min_rows` rows, top row first.
    ///
    /// Cells are `[n]` for beads and ` n ` for spacers, right-aligned to the
    /// width of the largest shown value plus two and separated by one space.
    /// Trailing whitespace is trimmed and every line ends in `\n`. When no
    /// row is shown the output is a one-line banner.
    pub fn render_ascii(&self, min_rows: u64) -> String {
        let rows = self.top_row().map_or(0, |r| r + 1).max(min_rows);
        if rows == 0 {
            return format!("(empty {}-abacus)\n", self.runners);
        }
        let largest = rows * self.runners - 1;
        let width = largest.to_string().len() + 2;
        let mut out = String::new();
        for row in (0..rows).rev() {
            let mut line = String::new();
            for runner in 0..self.runners {
                if runner > 0 {
                    line.push(' ');
                }
                let value = self.value_at(runner, row);
                let cell = if self.beads.contains(value) {
                    format!("[{value}]")
                } else {
                    format!(" {value} ")
                };
                let _ = write!(line, "{cell:>width$}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn is_t_core(p: &Partition, t: u64) -> Result<bool> {
    Ok(BeadSet::from_partition(p).to_abacus(t)?.is_core())
}

pub fn is_simultaneous_core(p: &Partition, moduli: &[u64]) -> Result<bool> {
    if moduli.is_empty() {
        return Err(CoreError::OutOfRange {
            name: "moduli",
            value: 0,
            reason: "at least one modulus is required".into(),
        });
    }
    for &t in moduli {
        if !is_t_core(p, t)? {
            return Ok(false);
        }
    }
    Ok(true)
}
