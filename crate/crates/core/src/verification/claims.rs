//! The claim-checking harness: each claim compares a closed form, recurrence
//! or structural statement against enumerated ground truth, one cell per
//! parameter point and quantity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::formulas::{
    fib_count, longest_weight_formula, max_weight_formula, middle_identity_check, self_conjugate_counts, straub_minus,
    straub_plus, SelfConjugateKind,
};
use super::grid::ParamGrid;
use crate::abacus::{is_simultaneous_core, BeadSet};
use crate::constructions::{build_e_minus, build_e_plus, build_l, l_by_intersection};
use crate::enumeration::{enumerate_multi_cores, enumerate_st_cores_distinct, gcd, CoreFamily, GapPoset};
use crate::error::{CoreError, Result};
use crate::partition::Partition;

const GUARD_RAILS_TOML: &str = include_str!("../../config/guard_rails.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    Xiong,
    StraubMinus,
    StraubPlus,
    Middle,
    OlssonStanton,
    Sylvester,
    Emax,
    LongestM2,
    RowStructure,
    TwoConj,
    Fstar,
    EMinusStar,
    EPlusStar,
    Berger,
}

impl ClaimId {
    pub const ALL: [ClaimId; 14] = [
        ClaimId::Xiong,
        ClaimId::StraubMinus,
        ClaimId::StraubPlus,
        ClaimId::Middle,
        ClaimId::OlssonStanton,
        ClaimId::Sylvester,
        ClaimId::Emax,
        ClaimId::LongestM2,
        ClaimId::RowStructure,
        ClaimId::TwoConj,
        ClaimId::Fstar,
        ClaimId::EMinusStar,
        ClaimId::EPlusStar,
        ClaimId::Berger,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClaimId::Xiong => "xiong",
            ClaimId::StraubMinus => "straub-minus",
            ClaimId::StraubPlus => "straub-plus",
            ClaimId::Middle => "middle",
            ClaimId::OlssonStanton => "olsson-stanton",
            ClaimId::Sylvester => "sylvester",
            ClaimId::Emax => "emax",
            ClaimId::LongestM2 => "longest-m2",
            ClaimId::RowStructure => "row-structure",
            ClaimId::TwoConj => "two-conj",
            ClaimId::Fstar => "fstar",
            ClaimId::EMinusStar => "e-minus-star",
            ClaimId::EPlusStar => "e-plus-star",
            ClaimId::Berger => "berger",
        }
    }

    /// Grid parameter names the claim reads.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            ClaimId::Xiong | ClaimId::Fstar => &["s"],
            ClaimId::OlssonStanton | ClaimId::Sylvester => &["s", "t"],
            ClaimId::TwoConj => &["n"],
            _ => &["m", "s"],
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClaimId {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| CoreError::UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, Deserialize)]
struct ClaimRails {
    default: ParamGrid,
    max: BTreeMap<String, u64>,
    #[serde(default)]
    brute_max: BTreeMap<String, u64>,
}

/// Per-claim default grids and limits, read from the versioned config file.
#[derive(Debug, Clone, Deserialize)]
pub struct GuardRails {
    pub version: u32,
    claims: BTreeMap<String, ClaimRails>,
}

impl GuardRails {
    pub fn builtin() -> Self {
        Self::from_toml(GUARD_RAILS_TOML).expect("bundled guard rails parse")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let rails: GuardRails =
            toml::from_str(text).map_err(|e| CoreError::Invariant(format!("guard rail config: {e}")))?;
        for claim in ClaimId::ALL {
            if !rails.claims.contains_key(claim.id()) {
                return Err(CoreError::Invariant(format!("guard rail config lacks claim {claim}")));
            }
        }
        Ok(rails)
    }

    fn rails(&self, claim: ClaimId) -> &ClaimRails {
        &self.claims[claim.id()]
    }

    pub fn default_grid(&self, claim: ClaimId) -> &ParamGrid {
        &self.rails(claim).default
    }

    pub fn max(&self, claim: ClaimId) -> &BTreeMap<String, u64> {
        &self.rails(claim).max
    }

    /// Completes `grid` with the claim's defaults and checks it against the limits.
    pub fn resolve(&self, claim: ClaimId, grid: Option<&ParamGrid>) -> Result<ParamGrid> {
        let rails = self.rails(claim);
        let grid = grid.map_or_else(|| rails.default.clone(), |g| g.or_defaults(&rails.default));
        if let Some(extra) = grid.names().find(|n| !claim.params().contains(n)) {
            return Err(CoreError::BadGrid(format!(
                "{claim} takes parameters {:?}, not {extra:?}",
                claim.params()
            )));
        }
        let breaches: Vec<String> = grid
            .names()
            .filter_map(|n| {
                let (_, hi) = grid.range(n)?;
                let cap = *rails.max.get(n)?;
                (hi > cap).then(|| format!("{n}={hi} exceeds {cap}"))
            })
            .collect();
        if !breaches.is_empty() {
            return Err(CoreError::GuardRail {
                claim: claim.id().to_string(),
                detail: breaches.join(", "),
                suggestion: format!("--grid {}", grid.clamped(&rails.max)),
            });
        }
        Ok(grid)
    }
}

/// One compared quantity at one grid point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub params: BTreeMap<String, u64>,
    pub quantity: String,
    pub expected: u64,
    pub observed: u64,
    pub pass: bool,
}

impl Cell {
    fn new(params: &BTreeMap<String, u64>, quantity: &str, expected: u64, observed: u64) -> Self {
        Cell {
            params: params.clone(),
            quantity: quantity.to_string(),
            expected,
            observed,
            pass: expected == observed,
        }
    }

    fn flag(params: &BTreeMap<String, u64>, quantity: &str, holds: bool) -> Self {
        Self::new(params, quantity, 1, holds as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Supported,
    RefutedAt { s: u64, m: u64 },
    Untested,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Supported => f.write_str("SUPPORTED"),
            Verdict::RefutedAt { s, m } => write!(f, "REFUTED-AT({s},{m})"),
            Verdict::Untested => f.write_str("UNTESTED"),
        }
    }
}

impl FromStr for Verdict {
    type Err = CoreError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || CoreError::Invariant(format!("unknown verdict {text:?}"));
        match text {
            "SUPPORTED" => Ok(Verdict::Supported),
            "UNTESTED" => Ok(Verdict::Untested),
            _ => {
                let inner = text
                    .strip_prefix("REFUTED-AT(")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (s, m) = inner.split_once(',').ok_or_else(bad)?;
                Ok(Verdict::RefutedAt {
                    s: s.trim().parse().map_err(|_| bad())?,
                    m: m.trim().parse().map_err(|_| bad())?,
                })
            }
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Outcome of probing the maximal `(s, ms-1, ms+1)`-cores at one `(s, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergerProbe {
    pub s: u64,
    pub m: u64,
    pub verdict: Verdict,
    pub formula_weight: u64,
    pub max_weight: Option<u64>,
    pub longest: Partition,
    pub maximal: Vec<Partition>,
    /// For even `s`: whether `m²` divides the observed maximal weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_squared_divides: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub grid: ParamGrid,
    pub cells: Vec<Cell>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub berger: Option<Vec<BergerProbe>>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

/// Family of simultaneous cores; a zero modulus constrains nothing.
fn family(moduli: &[u64]) -> Result<CoreFamily> {
    let moduli: Vec<u64> = moduli.iter().copied().filter(|&m| m > 0).collect();
    enumerate_multi_cores(&moduli)
}

fn distinct_count(s: u64, t: u64) -> Result<u64> {
    Ok(family(&[s, t])?.filter_distinct().len() as u64)
}

fn self_conjugate_distinct_count(s: u64, t: u64) -> Result<u64> {
    let fam = if s <= 1 || t <= 1 {
        family(&[s, t])?
    } else {
        enumerate_st_cores_distinct(s, t)?
    };
    Ok(fam.filter_distinct().filter_self_conjugate().len() as u64)
}

fn has_hook(p: &Partition, length: u64) -> bool {
    p.hook_lengths().iter().any(|h| h.length == length)
}

pub fn verify_claim(claim: ClaimId, grid: Option<&ParamGrid>) -> Result<VerificationReport> {
    verify_claim_with(&GuardRails::builtin(), claim, grid)
}

pub fn verify_claim_with(rails: &GuardRails, claim: ClaimId, grid: Option<&ParamGrid>) -> Result<VerificationReport> {
    let start = Instant::now();
    let grid = rails.resolve(claim, grid)?;
    let brute_max = &rails.rails(claim).brute_max;
    let points = grid.points();
    let per_point: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|p| cells_at(claim, p, brute_max))
        .collect::<Result<_>>()?;
    let berger = if claim == ClaimId::Berger {
        let probes = points
            .par_iter()
            .map(|p| berger_probe(p["s"], p["m"]))
            .collect::<Result<Vec<_>>>()?;
        Some(probes)
    } else {
        None
    };
    Ok(VerificationReport {
        claim: claim.id().to_string(),
        grid,
        cells: per_point.into_iter().flatten().collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        berger,
    })
}

fn within(point: &BTreeMap<String, u64>, max: &BTreeMap<String, u64>) -> bool {
    max.iter().all(|(k, &cap)| point.get(k).is_none_or(|&v| v <= cap))
}

fn cells_at(claim: ClaimId, p: &BTreeMap<String, u64>, brute_max: &BTreeMap<String, u64>) -> Result<Vec<Cell>> {
    let get = |k: &str| p[k];
    let mut cells = Vec::new();
    match claim {
        ClaimId::Xiong => {
            let s = get("s");
            if s == 0 {
                return Ok(cells);
            }
            cells.push(Cell::new(p, "distinct_count", fib_count(s)?, distinct_count(s, s + 1)?));
        }
        ClaimId::StraubMinus | ClaimId::StraubPlus => {
            let (m, s) = (get("m"), get("s"));
            if m == 0 || s == 0 {
                return Ok(cells);
            }
            let (expected, t) = if claim == ClaimId::StraubMinus {
                (straub_minus(m, s)?, m * s - 1)
            } else {
                (straub_plus(m, s)?, m * s + 1)
            };
            cells.push(Cell::new(p, "distinct_count", expected, distinct_count(s, t)?));
        }
        ClaimId::Middle => {
            let (m, s) = (get("m"), get("s"));
            if m == 0 || s < 3 {
                return Ok(cells);
            }
            let plus = |s: u64| distinct_count(s, m * s + 1);
            let rhs = plus(s - 1)? + (m - 1) * plus(s - 2)?;
            cells.push(Cell::new(p, "identity_enumerated", rhs, distinct_count(s, m * s - 1)?));
            cells.push(Cell::flag(p, "identity_recurrence", middle_identity_check(m, s)?));
        }
        ClaimId::OlssonStanton => {
            let (s, t) = (get("s"), get("t"));
            if s == 0 || s >= t || gcd(s, t) != 1 {
                return Ok(cells);
            }
            let fam = family(&[s, t])?;
            cells.push(Cell::new(
                p,
                "max_weight",
                max_weight_formula(s, t)?,
                fam.max_weight().unwrap_or(0),
            ));
            cells.push(Cell::new(p, "maximal_count", 1, fam.maximal_members().len() as u64));
        }
        ClaimId::Sylvester => {
            let (s, t) = (get("s"), get("t"));
            if s < 2 || s >= t || gcd(s, t) != 1 {
                return Ok(cells);
            }
            let frobenius = s * t - s - t;
            let poset = GapPoset::new(s, t)?;
            let fam = family(&[s, t])?;
            let largest_hook = fam
                .members()
                .iter()
                .filter_map(|q| q.first_column_hooks().last().copied())
                .max()
                .unwrap_or(0);
            let holders = fam.members().iter().filter(|q| has_hook(q, frobenius)).count() as u64;
            let maximal_holds = fam.maximal_members().iter().all(|q| has_hook(q, frobenius));
            cells.push(Cell::new(p, "largest_gap", frobenius, poset.largest_gap().unwrap_or(0)));
            cells.push(Cell::new(
                p,
                "gap_count",
                (s - 1) * (t - 1) / 2,
                poset.gaps().len() as u64,
            ));
            cells.push(Cell::new(p, "largest_first_column_hook", frobenius, largest_hook));
            cells.push(Cell::new(p, "big_hook_holders", 1, holders));
            cells.push(Cell::flag(p, "maximal_holds_big_hook", maximal_holds));
        }
        ClaimId::Emax => {
            let (m, s) = (get("m"), get("s"));
            if m == 0 || s == 0 {
                return Ok(cells);
            }
            for (label, t, abacus) in [
                ("e_minus", m * s - 1, build_e_minus(s, m)?),
                ("e_plus", m * s + 1, build_e_plus(s, m)?),
            ] {
                if t == 0 {
                    continue;
                }
                let lam = abacus.to_partition();
                let fam = family(&[s, t])?;
                cells.push(Cell::flag(p, &format!("{label}_minimal"), abacus.beads().is_minimal()));
                cells.push(Cell::flag(
                    p,
                    &format!("{label}_is_core"),
                    is_simultaneous_core(&lam, &[s, t])?,
                ));
                cells.push(Cell::new(
                    p,
                    &format!("{label}_weight"),
                    max_weight_formula(s, t)?,
                    lam.weight(),
                ));
                cells.push(Cell::flag(
                    p,
                    &format!("{label}_is_enumerated_maximum"),
                    fam.maximal_members() == vec![lam.clone()],
                ));
                if s > 1 && t > 1 {
                    cells.push(Cell::flag(
                        p,
                        &format!("{label}_big_hook"),
                        has_hook(&lam, s * t - s - t),
                    ));
                }
            }
        }
        ClaimId::LongestM2 => {
            let (m, s) = (get("m"), get("s"));
            if m == 0 || s == 0 {
                return Ok(cells);
            }
            let l = build_l(s, m)?;
            let lam = l.to_partition();
            let moduli: Vec<u64> = [s, m * s - 1, m * s + 1].into_iter().filter(|&x| x > 0).collect();
            cells.push(Cell::new(p, "l_weight", longest_weight_formula(s, m)?, lam.weight()));
            cells.push(Cell::flag(p, "l_equals_intersection", l == l_by_intersection(s, m)?));
            cells.push(Cell::flag(p, "l_is_core", is_simultaneous_core(&lam, &moduli)?));
            if within(p, brute_max) {
                let longest = family(&moduli)?.longest_member();
                cells.push(Cell::flag(p, "l_strictly_longest", longest.as_ref() == Ok(&lam)));
            }
        }
        ClaimId::RowStructure => {
            let (m, s) = (get("m"), get("s"));
            if m == 0 || s == 0 {
                return Ok(cells);
            }
            for (label, t, outer) in [
                ("e_minus", m * s - 1, build_e_minus(s, m)?),
                ("e_plus", m * s + 1, build_e_plus(s, m)?),
            ] {
                if t == 0 {
                    continue;
                }
                let mut violations = 0;
                for q in family(&[s, t])?.filter_distinct().members() {
                    let a = BeadSet::from_partition(q).to_abacus(m * s)?;
                    if a.top_row().unwrap_or(0) > 0 || !a.is_sub_abacus_of(&outer)? {
                        violations += 1;
                    }
                }
                cells.push(Cell::new(p, &format!("{label}_violations"), 0, violations));
            }
        }
        ClaimId::TwoConj => {
            let n = get("n");
            let mismatches = Partition::all_of_weight(n)
                .iter()
                .filter(|q| q.is_two_core() != (q.is_self_conjugate() && q.has_distinct_parts()))
                .count() as u64;
            cells.push(Cell::new(p, "mismatches", 0, mismatches));
        }
        ClaimId::Fstar => {
            let s = get("s");
            if s == 0 {
                return Ok(cells);
            }
            cells.push(Cell::new(
                p,
                "self_conjugate_distinct_count",
                self_conjugate_counts(SelfConjugateKind::Plain, 1, s)?,
                self_conjugate_distinct_count(s, s + 1)?,
            ));
        }
        ClaimId::EMinusStar | ClaimId::EPlusStar => {
            let (m, s) = (get("m"), get("s"));
            if m == 0 || s == 0 {
                return Ok(cells);
            }
            let minus = self_conjugate_distinct_count(s, m * s - 1)?;
            let plus = self_conjugate_distinct_count(s, m * s + 1)?;
            let (kind, observed) = if claim == ClaimId::EMinusStar {
                (SelfConjugateKind::Minus, minus)
            } else {
                (SelfConjugateKind::Plus, plus)
            };
            cells.push(Cell::new(
                p,
                "self_conjugate_distinct_count",
                self_conjugate_counts(kind, m, s)?,
                observed,
            ));
            if s % 2 == 1 {
                cells.push(Cell::new(p, "odd_minus_equals_plus", plus, minus));
            }
        }
        ClaimId::Berger => {
            let probe = berger_probe(get("s"), get("m"))?;
            let pair = maximal_pair(&probe.longest);
            cells.push(Cell::new(
                p,
                "max_weight",
                probe.formula_weight,
                probe.max_weight.unwrap_or(0),
            ));
            cells.push(Cell::new(
                p,
                "maximal_count",
                pair.len() as u64,
                probe.maximal.len() as u64,
            ));
            cells.push(Cell::flag(
                p,
                "maximal_are_longest_and_conjugate",
                probe.maximal == pair,
            ));
        }
    }
    Ok(cells)
}

/// `{λ, λ'}` as a sorted list; a single entry when `λ` is self-conjugate.
fn maximal_pair(longest: &Partition) -> Vec<Partition> {
    let mut pair = vec![longest.clone(), longest.conjugate()];
    pair.sort();
    pair.dedup();
    pair
}

/// Brute-forces the maximal `(s, ms-1, ms+1)`-cores and compares them with
/// the longest-core weight formula and with `L_m(s)` and its conjugate.
pub fn berger_probe(s: u64, m: u64) -> Result<BergerProbe> {
    let formula_weight = longest_weight_formula(s, m)?;
    let longest = build_l(s, m)?.to_partition();
    let (max_weight, maximal) = match family(&[s, m * s - 1, m * s + 1]) {
        Ok(fam) => (fam.max_weight(), fam.maximal_members()),
        Err(_) => (None, Vec::new()),
    };
    let verdict = match max_weight {
        None => Verdict::Untested,
        Some(w) if w == formula_weight && maximal == maximal_pair(&longest) => Verdict::Supported,
        Some(_) => Verdict::RefutedAt { s, m },
    };
    let m_squared_divides = s
        .is_multiple_of(2)
        .then(|| max_weight.is_some_and(|w| w % (m * m) == 0));
    Ok(BergerProbe {
        s,
        m,
        verdict,
        formula_weight,
        max_weight,
        longest,
        maximal,
        m_squared_divides,
    })
}

/// Whether `m²` divides the brute-forced maximal `(s, ms-1, ms+1)`-core weight.
pub fn corollary3_check(s: u64, m: u64) -> Result<bool> {
    if s == 0 || s % 2 == 1 {
        return Err(CoreError::OutOfRange {
            name: "s",
            value: s,
            reason: "must be even".into(),
        });
    }
    if m == 0 {
        return Err(CoreError::OutOfRange {
            name: "m",
            value: m,
            reason: "must be at least 1".into(),
        });
    }
    let w = family(&[s, m * s - 1, m * s + 1])?.max_weight().unwrap_or(0);
    Ok(w % (m * m) == 0)
}
