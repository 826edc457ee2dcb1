//! Parameter grids such as `s=1..10,m=1..3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoreError, Result};

/// Named inclusive ranges; a point assigns one value to every name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamGrid {
    ranges: BTreeMap<String, (u64, u64)>,
}

impl ParamGrid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, lo: u64, hi: u64) -> Self {
        self.ranges.insert(name.to_string(), (lo, hi));
        self
    }

    pub fn range(&self, name: &str) -> Option<(u64, u64)> {
        self.ranges.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.ranges.keys().map(String::as_str)
    }

    /// Fills names missing from `self` with the ranges of `defaults`.
    pub fn or_defaults(&self, defaults: &ParamGrid) -> ParamGrid {
        let mut ranges = defaults.ranges.clone();
        ranges.extend(self.ranges.clone());
        ParamGrid { ranges }
    }

    /// Caps every range at `max`, dropping ranges that become empty.
    pub fn clamped(&self, max: &BTreeMap<String, u64>) -> ParamGrid {
        let ranges = self
            .ranges
            .iter()
            .map(|(k, &(lo, hi))| {
                let cap = max.get(k).copied().unwrap_or(hi);
                (k.clone(), (lo.min(cap), hi.min(cap)))
            })
            .collect();
        ParamGrid { ranges }
    }

    /// Every point, in lexicographic order of the names.
    pub fn points(&self) -> Vec<BTreeMap<String, u64>> {
        let mut points = vec![BTreeMap::new()];
        for (name, &(lo, hi)) in &self.ranges {
            points = points
                .into_iter()
                .flat_map(|p| {
                    (lo..=hi).map(move |v| {
                        let mut q = p.clone();
                        q.insert(name.clone(), v);
                        q
                    })
                })
                .collect();
        }
        points
    }
}

impl fmt::Display for ParamGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, (lo, hi))) in self.ranges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if lo == hi {
                write!(f, "{name}={lo}")?;
            } else {
                write!(f, "{name}={lo}..{hi}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ParamGrid {
    type Err = CoreError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || CoreError::BadGrid(text.to_string());
        let mut grid = ParamGrid::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, range) = item.split_once('=').ok_or_else(bad)?;
            let name = name.trim();
            if name.is_empty() || grid.ranges.contains_key(name) {
                return Err(bad());
            }
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => {
                    let hi = hi.strip_prefix('=').unwrap_or(hi);
                    (
                        lo.trim().parse().map_err(|_| bad())?,
                        hi.trim().parse().map_err(|_| bad())?,
                    )
                }
                None => {
                    let v: u64 = range.trim().parse().map_err(|_| bad())?;
                    (v, v)
                }
            };
            if lo > hi {
                return Err(bad());
            }
            grid.ranges.insert(name.to_string(), (lo, hi));
        }
        Ok(grid)
    }
}

impl Serialize for ParamGrid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ParamGrid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
