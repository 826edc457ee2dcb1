//! Exhaustive generation of simultaneous core partitions.
//!
//! The fast path enumerates down-closed subsets of the gap poset of the
//! numerical semigroup `<s, t>`; each subset is the minimal bead set of an
//! `(s, t)`-core. [`oracle_enumerate`] is an independent brute force over all
//! partitions of bounded weight, filtered by hook lengths.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abacus::{is_t_core, BeadSet};
use crate::error::{CoreError, Result};
use crate::partition::Partition;

/// Largest weight the brute-force oracle accepts.
pub const ORACLE_MAX_WEIGHT: u64 = 40;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_pair(s: u64, t: u64) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(CoreError::ZeroModulus);
    }
    if gcd(s, t) != 1 {
        return Err(CoreError::NotCoprime { s, t });
    }
    Ok(())
}

/// Gaps of `<s, t>` ordered by `g -> g - s` and `g -> g - t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPoset {
    s: u64,
    t: u64,
    gaps: Vec<u64>,
    covers: BTreeMap<u64, Vec<u64>>,
}

impl GapPoset {
    pub fn new(s: u64, t: u64) -> Result<Self> {
        check_pair(s, t)?;
        let frobenius = (s * t).checked_sub(s + t);
        let mut representable = vec![false; frobenius.map_or(0, |f| f as usize + 1)];
        for (x, slot) in representable.iter_mut().enumerate() {
            let x = x as u64;
            *slot = (0..=x / t).any(|b| (x - b * t).is_multiple_of(s));
        }
        let gaps: Vec<u64> = representable
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(x, _)| x as u64)
            .collect();
        let gap_set: BTreeSet<u64> = gaps.iter().copied().collect();
        let covers = gaps
            .iter()
            .map(|&g| {
                let lower = [g.checked_sub(s), g.checked_sub(t)]
                    .into_iter()
                    .flatten()
                    .filter(|x| gap_set.contains(x))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                (g, lower)
            })
            .collect();
        Ok(Self { s, t, gaps, covers })
    }

    pub fn moduli(&self) -> (u64, u64) {
        (self.s, self.t)
    }

    /// Gaps in increasing order.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn lower_covers(&self, gap: u64) -> &[u64] {
        self.covers.get(&gap).map_or(&[], Vec::as_slice)
    }

    /// Frobenius number `st - s - t`, absent when every integer is representable.
    pub fn largest_gap(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    fn cover_indices(&self) -> Vec<Vec<usize>> {
        let index: BTreeMap<u64, usize> = self.gaps.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        self.gaps
            .iter()
            .map(|g| self.lower_covers(*g).iter().map(|c| index[c]).collect())
            .collect()
    }

    /// Visits every down-closed subset. With `distinct`, subsets holding two
    /// consecutive integers are skipped.
    fn walk_ideals<F: FnMut(&[bool])>(&self, distinct: bool, mut visit: F) {
        let covers = self.cover_indices();
        let prev: Vec<Option<usize>> = self
            .gaps
            .iter()
            .enumerate()
            .map(|(i, &g)| (i > 0 && self.gaps[i - 1] + 1 == g).then(|| i - 1))
            .collect();
        let mut chosen = vec![false; self.gaps.len()];
        descend(0, &covers, &prev, distinct, &mut chosen, &mut visit);
    }

    pub fn ideals(&self) -> Vec<BeadSet> {
        self.ideals_filtered(false)
    }

    fn ideals_filtered(&self, distinct: bool) -> Vec<BeadSet> {
        let mut out = Vec::new();
        self.walk_ideals(distinct, |chosen| {
            out.push(
                self.gaps
                    .iter()
                    .zip(chosen)
                    .filter(|(_, &c)| c)
                    .map(|(&g, _)| g)
                    .collect(),
            );
        });
        out
    }

    /// Number of down-closed subsets, without materializing them.
    pub fn count_ideals(&self, distinct: bool) -> u64 {
        let mut n = 0;
        self.walk_ideals(distinct, |_| n += 1);
        n
    }
}

fn descend<F: FnMut(&[bool])>(
    idx: usize,
    covers: &[Vec<usize>],
    prev: &[Option<usize>],
    distinct: bool,
    chosen: &mut Vec<bool>,
    visit: &mut F,
) {
    if idx == chosen.len() {
        visit(chosen);
        return;
    }
    descend(idx + 1, covers, prev, distinct, chosen, visit);
    let allowed = covers[idx].iter().all(|&c| chosen[c]) && !(distinct && prev[idx].is_some_and(|p| chosen[p]));
    if allowed {
        chosen[idx] = true;
        descend(idx + 1, covers, prev, distinct, chosen, visit);
        chosen[idx] = false;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filters {
    pub distinct_parts: bool,
    pub self_conjugate: bool,
}

impl Filters {
    pub fn admits(&self, p: &Partition) -> bool {
        (!self.distinct_parts || p.has_distinct_parts()) && (!self.self_conjugate || p.is_self_conjugate())
    }
}

/// Simultaneous cores for a set of moduli, sorted by part sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreFamily {
    moduli: Vec<u64>,
    filters: Filters,
    members: Vec<Partition>,
}

impl CoreFamily {
    fn from_members(moduli: Vec<u64>, filters: Filters, mut members: Vec<Partition>) -> Self {
        members.par_sort_unstable();
        members.dedup();
        Self {
            moduli,
            filters,
            members,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn filters(&self) -> Filters {
        self.filters
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Partition> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.members.binary_search(p).is_ok()
    }

    pub fn filter_distinct(&self) -> CoreFamily {
        self.filtered(Filters {
            distinct_parts: true,
            ..self.filters
        })
    }

    pub fn filter_self_conjugate(&self) -> CoreFamily {
        self.filtered(Filters {
            self_conjugate: true,
            ..self.filters
        })
    }

    pub fn filtered(&self, filters: Filters) -> CoreFamily {
        CoreFamily {
            moduli: self.moduli.clone(),
            filters,
            members: self.members.iter().filter(|p| filters.admits(p)).cloned().collect(),
        }
    }

    /// Members of weight at most `w`.
    pub fn up_to_weight(&self, w: u64) -> Vec<Partition> {
        self.members.iter().filter(|p| p.weight() <= w).cloned().collect()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.members.iter().map(Partition::weight).max()
    }

    /// Every member attaining the maximum weight.
    pub fn maximal_members(&self) -> Vec<Partition> {
        let Some(w) = self.max_weight() else {
            return Vec::new();
        };
        self.members.iter().filter(|p| p.weight() == w).cloned().collect()
    }

    pub fn longest_parts(&self) -> Option<usize> {
        self.members.iter().map(Partition::len).max()
    }

    /// The member with the most parts; a tie is an error listing every tied member.
    pub fn longest_member(&self) -> Result<Partition> {
        let most = self.longest_parts().ok_or(CoreError::EmptyFamily)?;
        let tied: Vec<Partition> = self.members.iter().filter(|p| p.len() == most).cloned().collect();
        match tied.as_slice() {
            [only] => Ok(only.clone()),
            _ => Err(CoreError::AmbiguousLongest(tied.len(), tied)),
        }
    }

    pub fn report(&self) -> FamilyReport {
        FamilyReport {
            moduli: self.moduli.clone(),
            filters: self.filters,
            count: self.members.len(),
            max_weight: self.max_weight(),
            longest_parts: self.longest_parts(),
            members: self.members.clone(),
        }
    }
}

/// JSON shape of an enumeration result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub moduli: Vec<u64>,
    pub filters: Filters,
    pub count: usize,
    pub max_weight: Option<u64>,
    pub longest_parts: Option<usize>,
    pub members: Vec<Partition>,
}

/// All `(s, t)`-cores, from the down-closed subsets of the gap poset.
pub fn enumerate_st_cores(s: u64, t: u64) -> Result<CoreFamily> {
    let poset = GapPoset::new(s, t)?;
    let members = poset.ideals().par_iter().map(BeadSet::to_partition).collect();
    Ok(CoreFamily::from_members(vec![s, t], Filters::default(), members))
}

/// `(s, t)`-cores with distinct parts, pruned during the walk.
pub fn enumerate_st_cores_distinct(s: u64, t: u64) -> Result<CoreFamily> {
    let poset = GapPoset::new(s, t)?;
    let members = poset
        .ideals_filtered(true)
        .par_iter()
        .map(BeadSet::to_partition)
        .collect();
    let filters = Filters {
        distinct_parts: true,
        self_conjugate: false,
    };
    Ok(CoreFamily::from_members(vec![s, t], filters, members))
}

/// Number of `(s, t)`-cores, optionally restricted to distinct parts.
pub fn count_st_cores(s: u64, t: u64, distinct: bool) -> Result<u64> {
    Ok(GapPoset::new(s, t)?.count_ideals(distinct))
}

fn normalize_moduli(moduli: &[u64]) -> Result<Vec<u64>> {
    if moduli.is_empty() {
        return Err(CoreError::NoCoprimePair { moduli: Vec::new() });
    }
    if moduli.contains(&0) {
        return Err(CoreError::ZeroModulus);
    }
    let set: BTreeSet<u64> = moduli.iter().copied().collect();
    Ok(set.into_iter().collect())
}

/// The coprime pair of `moduli` with the smallest gap poset.
pub fn choose_pair(moduli: &[u64]) -> Result<(u64, u64)> {
    let moduli = normalize_moduli(moduli)?;
    let mut best: Option<(u64, u64)> = None;
    for (k, &s) in moduli.iter().enumerate() {
        for &t in &moduli[k + 1..] {
            if gcd(s, t) == 1 && best.is_none_or(|(bs, bt)| (s - 1) * (t - 1) < (bs - 1) * (bt - 1)) {
                best = Some((s, t));
            }
        }
    }
    best.ok_or(CoreError::NoCoprimePair { moduli })
}

/// Cores for every modulus in `moduli`: enumerate one coprime pair, then
/// filter by the rest.
pub fn enumerate_multi_cores(moduli: &[u64]) -> Result<CoreFamily> {
    let sorted = normalize_moduli(moduli)?;
    if sorted.contains(&1) {
        return Ok(CoreFamily::from_members(
            sorted,
            Filters::default(),
            vec![Partition::empty()],
        ));
    }
    let (s, t) = choose_pair(&sorted)?;
    let base = enumerate_st_cores(s, t)?;
    let rest: Vec<u64> = sorted.iter().copied().filter(|&m| m != s && m != t).collect();
    let members = base
        .members
        .into_par_iter()
        .filter(|p| rest.iter().all(|&r| is_t_core(p, r).expect("moduli are positive")))
        .collect();
    Ok(CoreFamily::from_members(sorted, Filters::default(), members))
}

/// Enumerates with `filters` applied; distinct-parts two-moduli queries
/// prune during the walk.
pub fn enumerate(moduli: &[u64], filters: Filters) -> Result<CoreFamily> {
    let sorted = normalize_moduli(moduli)?;
    let family = match sorted.as_slice() {
        [s, t] if filters.distinct_parts && *s > 1 => enumerate_st_cores_distinct(*s, *t)?,
        _ => enumerate_multi_cores(&sorted)?,
    };
    Ok(family.filtered(filters))
}

/// Counts members; two-moduli queries without the self-conjugate filter
/// never materialize partitions.
pub fn count(moduli: &[u64], filters: Filters) -> Result<u64> {
    let sorted = normalize_moduli(moduli)?;
    match sorted.as_slice() {
        [1, _] | [1] => Ok(1),
        [s, t] if !filters.self_conjugate => count_st_cores(*s, *t, filters.distinct_parts),
        _ => Ok(enumerate(&sorted, filters)?.len() as u64),
    }
}

/// True when no hook of `p` has a length in `moduli`, read off the hook multiset.
pub fn hooks_avoid(p: &Partition, moduli: &[u64]) -> bool {
    p.hook_lengths().iter().all(|h| !moduli.contains(&h.length))
}

/// Brute force: every partition of weight at most `max_weight` with no hook
/// length in `moduli`.
pub fn oracle_enumerate(moduli: &[u64], max_weight: u64) -> Result<CoreFamily> {
    if max_weight > ORACLE_MAX_WEIGHT {
        return Err(CoreError::OutOfRange {
            name: "max_weight",
            value: max_weight,
            reason: format!("the brute-force oracle stops at {ORACLE_MAX_WEIGHT}"),
        });
    }
    let moduli = normalize_moduli(moduli)?;
    let members = (0..=max_weight)
        .into_par_iter()
        .flat_map_iter(|n| {
            Partition::all_of_weight(n)
                .into_iter()
                .filter(|p| hooks_avoid(p, &moduli))
        })
        .collect();
    Ok(CoreFamily::from_members(moduli, Filters::default(), members))
}
