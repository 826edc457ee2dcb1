//! The named abaci built from `(s, s±1)`-cores: `A(s)`, `B_k(s)`, `C_k(s)`,
//! the `ms`-abaci `E±_m(s)` of the maximal `(s, ms±1)`-cores, and `L_m(s)`,
//! the abacus of the longest `(s, ms-1, ms+1)`-core.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abacus::Abacus;
use crate::error::{CoreError, Result};

fn check_s(s: u64) -> Result<()> {
    if s == 0 {
        return Err(CoreError::OutOfRange {
            name: "s",
            value: s,
            reason: "must be at least 1".into(),
        });
    }
    Ok(())
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        return Err(CoreError::OutOfRange {
            name: "m",
            value: m,
            reason: "must be at least 1".into(),
        });
    }
    Ok(())
}

fn check_k(k: u64) -> Result<()> {
    if k > 1 {
        return Err(CoreError::UnsupportedK(k));
    }
    Ok(())
}

/// `A(s)`: beads at `(i, j)` for `0 < i < s` and `j < i`. The minimal
/// `s`-abacus of the maximal `(s, s+1)`-core.
pub fn build_a(s: u64) -> Result<Abacus> {
    check_s(s)?;
    Abacus::from_positions(s, (1..s).flat_map(|i| (0..i).map(move |j| (i, j))))
}

/// `B_k(s)`: beads at `(i, j)` for `0 < i <= s-1-k` and `j <= s-i-1-k`.
///
/// `B_1(s)` is `B_0(s)` without the diagonal `(i, s-1-i)`; it is the minimal
/// `s`-abacus of the maximal `(s-1, s)`-core.
pub fn build_b(s: u64, k: u64) -> Result<Abacus> {
    check_s(s)?;
    check_k(k)?;
    let last = (s - 1).saturating_sub(k);
    Abacus::from_positions(s, (1..=last).flat_map(move |i| (0..s - i - k).map(move |j| (i, j))))
}

/// `C_k(s) = A(s) ∩ B_k(s)`.
pub fn build_c(s: u64, k: u64) -> Result<Abacus> {
    build_a(s)?.intersect(&build_b(s, k)?)
}

/// `a` appended to itself `times` times. `times` must be positive.
pub fn wedge_power(a: &Abacus, times: u64) -> Result<Abacus> {
    check_m(times)?;
    let mut out = a.clone();
    for _ in 1..times {
        out = out.wedge(a);
    }
    Ok(out)
}

/// `m - 1` copies of `block` followed by `last`.
fn wedge_chain(block: &Abacus, m: u64, last: &Abacus) -> Result<Abacus> {
    if m == 1 {
        return Ok(last.clone());
    }
    Ok(wedge_power(block, m - 1)?.wedge(last))
}

/// `E⁻_m(s) = (∧_{m-1} B_0(s)) ∧ B_1(s)`, the minimal `ms`-abacus of the
/// maximal `(s, ms-1)`-core.
pub fn build_e_minus(s: u64, m: u64) -> Result<Abacus> {
    check_m(m)?;
    wedge_chain(&build_b(s, 0)?, m, &build_b(s, 1)?)
}

/// `E⁺_m(s) = ∧_m A(s)`, the minimal `ms`-abacus of the maximal
/// `(s, ms+1)`-core.
pub fn build_e_plus(s: u64, m: u64) -> Result<Abacus> {
    wedge_power(&build_a(s)?, m)
}

/// `E⁻_m(s)` placed bead by bead: blocks `ℓ < m-1` hold `(i + ℓs, j)` with
/// `1 <= i <= s-1`, `j <= s-i-1`; the last block holds `(i + (m-1)s, j)`
/// with `1 <= i <= s-2`, `j <= s-i-2`.
pub fn e_minus_by_coordinates(s: u64, m: u64) -> Result<Abacus> {
    check_s(s)?;
    check_m(m)?;
    let full = (0..m - 1).flat_map(move |l| (1..s).flat_map(move |i| (0..s - i).map(move |j| (i + l * s, j))));
    let last = (1..s.saturating_sub(1)).flat_map(move |i| (0..s - i - 1).map(move |j| (i + (m - 1) * s, j)));
    Abacus::from_positions(m * s, full.chain(last))
}

/// `E⁺_m(s)` placed bead by bead: `(i + ℓs, j)` with `1 <= i <= s-1`,
/// `j <= i-1` and `ℓ < m`.
pub fn e_plus_by_coordinates(s: u64, m: u64) -> Result<Abacus> {
    check_s(s)?;
    check_m(m)?;
    let beads = (0..m).flat_map(move |l| (1..s).flat_map(move |i| (0..i).map(move |j| (i + l * s, j))));
    Abacus::from_positions(m * s, beads)
}

/// `L_m(s) = (∧_{m-1} C_0(s)) ∧ C_1(s)`.
pub fn build_l(s: u64, m: u64) -> Result<Abacus> {
    check_m(m)?;
    wedge_chain(&build_c(s, 0)?, m, &build_c(s, 1)?)
}

/// `L_m(s)` as `E⁻_m(s) ∩ E⁺_m(s)`.
pub fn l_by_intersection(s: u64, m: u64) -> Result<Abacus> {
    build_e_minus(s, m)?.intersect(&build_e_plus(s, m)?)
}

/// Maps runner block `ell` of an abacus back onto `s` runners:
/// `(i + ell*s, j) -> (i, j)`.
pub fn project_block(a: &Abacus, s: u64, ell: u64) -> Result<Abacus> {
    check_s(s)?;
    if !a.runners().is_multiple_of(s) {
        return Err(CoreError::OutOfRange {
            name: "s",
            value: s,
            reason: format!("does not divide the runner count {}", a.runners()),
        });
    }
    let blocks = a.runners() / s;
    if ell >= blocks {
        return Err(CoreError::OutOfRange {
            name: "ell",
            value: ell,
            reason: format!("must be below {blocks}"),
        });
    }
    let lo = ell * s;
    Abacus::from_positions(
        s,
        a.positions()
            .into_iter()
            .filter(|&(i, _)| (lo..lo + s).contains(&i))
            .map(|(i, j)| (i - lo, j)),
    )
}

/// Base `[lo, hi]` of a pyramid abacus; row `j` spans runners `lo+j ..= hi-j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pyramid {
    pub base_lo: u64,
    pub base_hi: u64,
}

impl Pyramid {
    pub fn new(base_lo: u64, base_hi: u64) -> Option<Self> {
        (base_lo <= base_hi).then_some(Self { base_lo, base_hi })
    }

    pub fn row_span(&self, row: u64) -> Option<(u64, u64)> {
        let lo = self.base_lo + row;
        let hi = self.base_hi.checked_sub(row)?;
        (lo <= hi).then_some((lo, hi))
    }

    pub fn height(&self) -> u64 {
        (self.base_hi - self.base_lo) / 2 + 1
    }

    pub fn to_abacus(&self, runners: u64) -> Result<Abacus> {
        let positions: Vec<_> = (0..self.height())
            .filter_map(|row| self.row_span(row).map(|(lo, hi)| (row, lo, hi)))
            .flat_map(|(row, lo, hi)| (lo..=hi).map(move |i| (i, row)))
            .collect();
        Abacus::from_positions(runners, positions)
    }
}

/// Reads the base off row 0 and checks that every other bead follows the
/// inward-shrinking shape. The empty abacus is not a pyramid.
pub fn is_pyramid(a: &Abacus) -> Option<Pyramid> {
    let row0: Vec<u64> = a
        .positions()
        .into_iter()
        .filter(|&(_, j)| j == 0)
        .map(|(i, _)| i)
        .collect();
    let (&lo, &hi) = (row0.first()?, row0.last()?);
    let pyramid = Pyramid::new(lo, hi)?;
    (pyramid.to_abacus(a.runners()).ok()? == *a).then_some(pyramid)
}

/// Constructions addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    A,
    B0,
    B1,
    C0,
    C1,
    EMinus,
    EPlus,
    L,
}

impl Construction {
    pub const ALL: [Construction; 8] = [
        Construction::A,
        Construction::B0,
        Construction::B1,
        Construction::C0,
        Construction::C1,
        Construction::EMinus,
        Construction::EPlus,
        Construction::L,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::A => "A",
            Construction::B0 => "B0",
            Construction::B1 => "B1",
            Construction::C0 => "C0",
            Construction::C1 => "C1",
            Construction::EMinus => "E-",
            Construction::EPlus => "E+",
            Construction::L => "L",
        }
    }

    /// Whether `m` affects the result.
    pub fn uses_m(self) -> bool {
        matches!(self, Construction::EMinus | Construction::EPlus | Construction::L)
    }

    pub fn build(self, s: u64, m: u64) -> Result<Abacus> {
        match self {
            Construction::A => build_a(s),
            Construction::B0 => build_b(s, 0),
            Construction::B1 => build_b(s, 1),
            Construction::C0 => build_c(s, 0),
            Construction::C1 => build_c(s, 1),
            Construction::EMinus => build_e_minus(s, m),
            Construction::EPlus => build_e_plus(s, m),
            Construction::L => build_l(s, m),
        }
    }

    /// Rendered with at least the rows `0..=s-2`, the standard grid for `s`.
    pub fn render(self, s: u64, m: u64) -> Result<String> {
        Ok(self.build(s, m)?.render_ascii(s.saturating_sub(1)))
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CoreError::UnknownConstruction(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::abacus::BeadSet;

    fn values(a: &Abacus) -> Vec<u64> {
        a.beads().iter().collect()
    }

    #[test]
    fn a_examples() {
        let a5 = build_a(5).unwrap();
        assert_eq!(values(&a5), vec![1, 2, 3, 4, 7, 8, 9, 13, 14, 19]);
        assert!(a5.is_core() && a5.beads().is_minimal());
        assert!(build_a(1).unwrap().is_empty());
        let a2 = build_a(2).unwrap();
        assert_eq!(a2.positions(), BTreeSet::from([(1, 0)]));
        assert_eq!(a2.to_partition().parts(), &[1]);
        assert!(build_a(0).is_err());
    }

    #[test]
    fn b_examples() {
        assert_eq!(values(&build_b(5, 0).unwrap()), vec![1, 2, 3, 4, 6, 7, 8, 11, 12, 16]);
        assert_eq!(values(&build_b(5, 1).unwrap()), vec![1, 2, 3, 6, 7, 11]);
        assert!(build_b(1, 0).unwrap().is_empty());
        assert!(build_b(1, 1).unwrap().is_empty());
        assert_eq!(build_b(5, 2), Err(CoreError::UnsupportedK(2)));
    }

    #[test]
    fn b1_is_b0_without_its_diagonal() {
        for s in 1..=9 {
            let b0 = build_b(s, 0).unwrap();
            let diagonal = Abacus::from_positions(s, (1..s).map(|i| (i, s - 1 - i))).unwrap();
            let expected: BeadSet = b0.beads().iter().filter(|&b| !diagonal.beads().contains(b)).collect();
            assert_eq!(build_b(s, 1).unwrap().beads(), &expected, "s = {s}");
            assert!(build_b(s, 1).unwrap().is_sub_abacus_of(&b0).unwrap());
        }
    }

    #[test]
    fn c_examples() {
        let c0 = build_c(5, 0).unwrap();
        assert_eq!(
            c0.positions(),
            BTreeSet::from([(1, 0), (2, 0), (3, 0), (4, 0), (2, 1), (3, 1)])
        );
        let c1 = build_c(5, 1).unwrap();
        assert_eq!(c1.positions(), BTreeSet::from([(1, 0), (2, 0), (3, 0), (2, 1)]));
        assert!(c1.is_sub_abacus_of(&c0).unwrap());
        let a = build_a(5).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn wedge_examples() {
        let a5 = build_a(5).unwrap();
        assert_eq!(a5.wedge(&a5).wedge(&a5), build_e_plus(5, 3).unwrap());

        let b0 = build_b(5, 0).unwrap();
        let b1 = build_b(5, 1).unwrap();
        let w = b0.wedge(&b1);
        assert_eq!(w.runners(), 10);
        // positional check: (i, j) of b0 -> i + 10j, (i, j) of b1 -> i + 5 + 10j
        let mut expected: Vec<u64> = b0.positions().iter().map(|&(i, j)| i + 10 * j).collect();
        expected.extend(b1.positions().iter().map(|&(i, j)| i + 5 + 10 * j));
        expected.sort_unstable();
        assert_eq!(values(&w), expected);
        assert_eq!(
            values(&w),
            vec![1, 2, 3, 4, 6, 7, 8, 11, 12, 13, 16, 17, 21, 22, 26, 31]
        );
    }

    #[test]
    fn e_routes_agree() {
        for s in 1..=8 {
            for m in 1..=4 {
                assert_eq!(
                    build_e_minus(s, m).unwrap(),
                    e_minus_by_coordinates(s, m).unwrap(),
                    "E-({s},{m})"
                );
                assert_eq!(
                    build_e_plus(s, m).unwrap(),
                    e_plus_by_coordinates(s, m).unwrap(),
                    "E+({s},{m})"
                );
            }
        }
    }

    #[test]
    fn e_examples() {
        let em = build_e_minus(5, 3).unwrap();
        assert_eq!(
            values(&em),
            vec![1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 16, 17, 18, 21, 22, 23, 26, 27, 31, 32, 36, 37, 41, 46, 51]
        );
        assert_eq!(em.to_partition().weight(), 195);
        assert!(build_e_minus(1, 4).unwrap().to_partition().is_empty());
        assert_eq!(build_e_minus(2, 3).unwrap().to_partition().weight(), 3);

        let ep = build_e_plus(5, 3).unwrap();
        assert_eq!(ep.to_partition().weight(), 255);
        assert_eq!(ep.beads().largest(), Some(59));
        assert!(build_e_plus(1, 2).unwrap().is_empty());
        let small = build_e_plus(2, 1).unwrap();
        assert_eq!(small.positions(), BTreeSet::from([(1, 0)]));
        assert_eq!(small.to_partition().parts(), &[1]);
    }

    #[test]
    fn l_examples() {
        let l = build_l(5, 3).unwrap();
        assert_eq!(values(&l), vec![1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 17, 18, 22, 23, 27]);
        let lam = l.to_partition();
        assert_eq!((lam.len(), lam.weight()), (16, 63));
        assert!(build_l(1, 2).unwrap().is_empty());
        assert_eq!(build_l(3, 1).unwrap().to_partition().weight(), 1);
        for s in 1..=8 {
            for m in 1..=3 {
                assert_eq!(build_l(s, m).unwrap(), l_by_intersection(s, m).unwrap(), "L({s},{m})");
            }
        }
    }

    #[test]
    fn pyramid_examples() {
        assert_eq!(is_pyramid(&build_c(5, 0).unwrap()), Pyramid::new(1, 4));
        assert_eq!(is_pyramid(&build_c(5, 1).unwrap()), Pyramid::new(1, 3));
        assert_eq!(is_pyramid(&build_a(5).unwrap()), None);
        assert_eq!(is_pyramid(&Abacus::empty(4).unwrap()), None);
        for s in 2..=9 {
            assert_eq!(is_pyramid(&build_c(s, 0).unwrap()), Pyramid::new(1, s - 1), "C0({s})");
        }
        for s in 3..=9 {
            assert_eq!(is_pyramid(&build_c(s, 1).unwrap()), Pyramid::new(1, s - 2), "C1({s})");
        }
    }

    #[test]
    fn pyramid_beads_rest_on_two_neighbours() {
        for lo in 0..6 {
            for hi in lo..10 {
                let a = Pyramid::new(lo, hi).unwrap().to_abacus(12).unwrap();
                for (i, j) in a.positions() {
                    if j > 0 {
                        assert!(a.contains(i + 1, j - 1) && a.contains(i - 1, j - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn projections() {
        let ep = build_e_plus(5, 3).unwrap();
        let a5 = build_a(5).unwrap();
        for ell in 0..3 {
            assert_eq!(project_block(&ep, 5, ell).unwrap(), a5);
        }
        let em = build_e_minus(5, 3).unwrap();
        assert_eq!(project_block(&em, 5, 2).unwrap(), build_b(5, 1).unwrap());
        assert_eq!(project_block(&em, 5, 0).unwrap(), build_b(5, 0).unwrap());
        assert!(project_block(&Abacus::empty(5).unwrap(), 5, 0).unwrap().is_empty());
        assert!(project_block(&ep, 5, 3).is_err());
        assert!(project_block(&ep, 4, 0).is_err());
    }

    #[test]
    fn names_round_trip() {
        for c in Construction::ALL {
            assert_eq!(c.name().parse::<Construction>().unwrap(), c);
        }
        assert!("Q".parse::<Construction>().is_err());
    }
}
