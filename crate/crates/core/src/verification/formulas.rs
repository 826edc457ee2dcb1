//! Closed forms and recurrences for counts and weights of simultaneous cores.
//! Everything is exact integer arithmetic; a formula that fails to divide
//! evenly is reported as an invariant breach.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::enumeration::gcd;
use crate::error::{CoreError, Result};

fn overflow(what: &str) -> CoreError {
    CoreError::Invariant(format!("{what} overflows u64"))
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<u64> {
    if num % den != 0 {
        return Err(CoreError::Invariant(format!("{what}: {num} is not divisible by {den}")));
    }
    u64::try_from(num / den).map_err(|_| CoreError::Invariant(format!("{what}: value {} out of range", num / den)))
}

fn positive(name: &'static str, value: u64) -> Result<()> {
    if value == 0 {
        return Err(CoreError::OutOfRange {
            name,
            value,
            reason: "must be at least 1".into(),
        });
    }
    Ok(())
}

/// Solves `a(n) = a(n-1) + m a(n-2)` from `a(1) = first`, `a(2) = second`.
fn linear_recurrence(m: u64, first: u64, second: u64, n: u64) -> Result<u64> {
    if n == 1 {
        return Ok(first);
    }
    let (mut prev, mut cur) = (first, second);
    for _ in 2..n {
        let next = m
            .checked_mul(prev)
            .and_then(|x| x.checked_add(cur))
            .ok_or_else(|| overflow("recurrence"))?;
        (prev, cur) = (cur, next);
    }
    Ok(cur)
}

/// `F_{s+1}`, the Fibonacci number seeded `F_2 = 1`, `F_3 = 2`.
pub fn fib_count(s: u64) -> Result<u64> {
    positive("s", s)?;
    linear_recurrence(1, 1, 2, s)
}

/// `E⁻_m(s)`: `1, m, ...` under `a(s) = a(s-1) + m a(s-2)`.
pub fn straub_minus(m: u64, s: u64) -> Result<u64> {
    positive("m", m)?;
    positive("s", s)?;
    linear_recurrence(m, 1, m, s)
}

/// `E⁺_m(s)`: `1, m+1, ...` under `a(s) = a(s-1) + m a(s-2)`.
pub fn straub_plus(m: u64, s: u64) -> Result<u64> {
    positive("m", m)?;
    positive("s", s)?;
    linear_recurrence(m, 1, m + 1, s)
}

/// `E⁻_m(s) = E⁺_m(s-1) + (m-1) E⁺_m(s-2)` on the recurrence values.
pub fn middle_identity_check(m: u64, s: u64) -> Result<bool> {
    if s < 3 {
        return Err(CoreError::OutOfRange {
            name: "s",
            value: s,
            reason: "the identity needs s >= 3".into(),
        });
    }
    let rhs = straub_plus(m, s - 1)?
        .checked_add(
            (m - 1)
                .checked_mul(straub_plus(m, s - 2)?)
                .ok_or_else(|| overflow("E+"))?,
        )
        .ok_or_else(|| overflow("E+"))?;
    Ok(straub_minus(m, s)? == rhs)
}

/// Weight of the maximal `(s, t)`-core, `(s²-1)(t²-1)/24`.
pub fn max_weight_formula(s: u64, t: u64) -> Result<u64> {
    positive("s", s)?;
    positive("t", t)?;
    if gcd(s, t) != 1 {
        return Err(CoreError::NotCoprime { s, t });
    }
    let (s, t) = (s as i128, t as i128);
    exact_div((s * s - 1) * (t * t - 1), 24, "(s²-1)(t²-1)/24")
}

/// Weight of the longest `(s, ms-1, ms+1)`-core.
///
/// Odd `s = 2u-1`: `m²u(u-1)(u²-u+1)/6`. Even `s = 2u-2`:
/// `m²(u-1)²(u²-2u+3)/6 - m(u-1)²/2`, evaluated over the common denominator
/// 6 since the two terms need not be integers on their own (`s = 2`).
pub fn longest_weight_formula(s: u64, m: u64) -> Result<u64> {
    positive("s", s)?;
    positive("m", m)?;
    let m = m as i128;
    if s % 2 == 1 {
        let u = (s as i128 + 1) / 2;
        exact_div(m * m * u * (u - 1) * (u * u - u + 1), 6, "odd-s longest weight")
    } else {
        let u = (s as i128 + 2) / 2;
        let sq = (u - 1) * (u - 1);
        exact_div(
            m * m * sq * (u * u - 2 * u + 3) - 3 * m * sq,
            6,
            "even-s longest weight",
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfConjugateKind {
    /// `(s, s+1)`-cores; `m` is ignored.
    Plain,
    /// `(s, ms-1)`-cores.
    Minus,
    /// `(s, ms+1)`-cores.
    Plus,
}

/// Number of self-conjugate cores with distinct parts of the given kind.
pub fn self_conjugate_counts(kind: SelfConjugateKind, m: u64, s: u64) -> Result<u64> {
    positive("s", s)?;
    if kind != SelfConjugateKind::Plain {
        positive("m", m)?;
    }
    let alpha = s / 2;
    let even = s.is_multiple_of(2);
    Ok(match (kind, s) {
        (_, 1) => 1,
        (_, _) if !even => alpha + 1,
        (SelfConjugateKind::Plain, _) => alpha + 1,
        (SelfConjugateKind::Minus, _) => m * alpha,
        (SelfConjugateKind::Plus, _) => m * alpha + 1,
    })
}

/// Tabulated count functions for `1 <= m <= max_m`, `1 <= s <= max_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountFunctions {
    /// `s -> F_{s+1}`
    pub fib: BTreeMap<u64, u64>,
    pub e_minus: BTreeMap<(u64, u64), u64>,
    pub e_plus: BTreeMap<(u64, u64), u64>,
    pub f_star: BTreeMap<u64, u64>,
    pub e_minus_star: BTreeMap<(u64, u64), u64>,
    pub e_plus_star: BTreeMap<(u64, u64), u64>,
}

impl CountFunctions {
    pub fn tabulate(max_m: u64, max_s: u64) -> Result<Self> {
        let mut out = CountFunctions {
            fib: BTreeMap::new(),
            e_minus: BTreeMap::new(),
            e_plus: BTreeMap::new(),
            f_star: BTreeMap::new(),
            e_minus_star: BTreeMap::new(),
            e_plus_star: BTreeMap::new(),
        };
        for s in 1..=max_s {
            out.fib.insert(s, fib_count(s)?);
            out.f_star
                .insert(s, self_conjugate_counts(SelfConjugateKind::Plain, 1, s)?);
            for m in 1..=max_m {
                out.e_minus.insert((m, s), straub_minus(m, s)?);
                out.e_plus.insert((m, s), straub_plus(m, s)?);
                out.e_minus_star
                    .insert((m, s), self_conjugate_counts(SelfConjugateKind::Minus, m, s)?);
                out.e_plus_star
                    .insert((m, s), self_conjugate_counts(SelfConjugateKind::Plus, m, s)?);
            }
        }
        Ok(out)
    }
}
