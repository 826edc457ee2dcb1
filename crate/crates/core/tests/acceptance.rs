//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Expected values are recomputed here from first principles (hook lengths
//! straight from the Young diagram, recurrences iterated by hand, abacus
//! layouts read from checked-in golden files) rather than taken from the
//! library.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coreabacus::constructions::{build_l, l_by_intersection};
use coreabacus::enumeration::{enumerate_multi_cores, enumerate_st_cores, enumerate_st_cores_distinct, gcd};
use coreabacus::verification::{berger_probe, Verdict};
use coreabacus::{is_t_core, Abacus, BeadSet, Construction, Partition};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

const PROPERTY_CASES: u32 = 10_000;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Hook lengths computed box by box from arm and leg.
fn naive_hooks(parts: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = parts[r + 1..].iter().filter(|&&p| p > c).count() as u64;
            out.push(arm + leg + 1);
        }
    }
    out
}

fn weight(parts: &[u64]) -> u64 {
    parts.iter().sum()
}

fn p(parts: &[u64]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn olsson_stanton() -> Outcome {
    let mut pairs = 0;
    for t in 2..=12u64 {
        for s in 1..t {
            if gcd(s, t) != 1 {
                continue;
            }
            let fam = enumerate_st_cores(s, t).map_err(|e| e.to_string())?;
            let best = fam.members().iter().map(|q| weight(q.parts())).max().unwrap_or(0);
            let expected = (s * s - 1) * (t * t - 1) / 24;
            check(best == expected, || {
                format!("({s},{t}): max weight {best}, expected {expected}")
            })?;
            let holders = fam.members().iter().filter(|q| weight(q.parts()) == best).count();
            check(holders == 1, || {
                format!("({s},{t}): {holders} partitions attain {best}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} coprime pairs, unique maximum at the expected weight"))
}

fn xiong() -> Outcome {
    let (mut a, mut b) = (1u64, 2u64);
    for s in 1..=10u64 {
        let fam = enumerate_st_cores(s, s + 1).map_err(|e| e.to_string())?;
        let distinct = fam
            .members()
            .iter()
            .filter(|q| q.parts().windows(2).all(|w| w[0] > w[1]))
            .count() as u64;
        check(distinct == a, || {
            format!("s={s}: {distinct} distinct-parts cores, expected {a}")
        })?;
        (a, b) = (b, a + b);
    }
    Ok("s=1..10 match 1,2,3,5,...,89".into())
}

fn distinct_count(s: u64, t: u64) -> Result<u64, String> {
    let moduli: Vec<u64> = [s, t].into_iter().filter(|&x| x > 0).collect();
    let fam = enumerate_multi_cores(&moduli).map_err(|e| e.to_string())?;
    Ok(fam
        .members()
        .iter()
        .filter(|q| q.parts().windows(2).all(|w| w[0] > w[1]))
        .count() as u64)
}

fn straub() -> Outcome {
    let mut cells = 0;
    for m in 1..=3u64 {
        let recur = |first: u64, second: u64| {
            let mut v = vec![0, first, second];
            for s in 3..=6 {
                v.push(v[s - 1] + m * v[s - 2]);
            }
            v
        };
        let minus = recur(1, m);
        let plus = recur(1, m + 1);
        let mut seen_minus = vec![0];
        let mut seen_plus = vec![0];
        for s in 1..=6u64 {
            let dm = distinct_count(s, m * s - 1)?;
            let dp = distinct_count(s, m * s + 1)?;
            check(dm == minus[s as usize], || {
                format!("(s,ms-1) m={m} s={s}: {dm} vs {}", minus[s as usize])
            })?;
            check(dp == plus[s as usize], || {
                format!("(s,ms+1) m={m} s={s}: {dp} vs {}", plus[s as usize])
            })?;
            seen_minus.push(dm);
            seen_plus.push(dp);
            cells += 2;
        }
        for s in 3..=6usize {
            let rhs = seen_plus[s - 1] + (m - 1) * seen_plus[s - 2];
            check(seen_minus[s] == rhs, || format!("identity fails at m={m} s={s}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells over m<=3, s<=6"))
}

fn golden_beads(text: &str) -> BTreeSet<u64> {
    text.split_whitespace()
        .filter_map(|tok| tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
        .map(|t| t.parse().unwrap())
        .collect()
}

fn golden_grids() -> Outcome {
    let cases = [
        (Construction::A, include_str!("golden/a_5.txt")),
        (Construction::B0, include_str!("golden/b0_5.txt")),
        (Construction::B1, include_str!("golden/b1_5.txt")),
        (Construction::EMinus, include_str!("golden/e_minus_5.txt")),
        (Construction::EPlus, include_str!("golden/e_plus_5.txt")),
        (Construction::C0, include_str!("golden/c0_5.txt")),
        (Construction::C1, include_str!("golden/c1_5.txt")),
        (Construction::L, include_str!("golden/l_5.txt")),
    ];
    for (c, golden) in cases {
        let abacus = c.build(5, 3).map_err(|e| e.to_string())?;
        let beads: BTreeSet<u64> = abacus.beads().iter().collect();
        check(beads == golden_beads(golden), || {
            format!("{c}: bead values differ from the golden grid")
        })?;
        let rendered = c.render(5, 3).map_err(|e| e.to_string())?;
        check(rendered == golden, || format!("{c}: rendering differs\n{rendered}"))?;
    }
    Ok("8 grids byte-exact".into())
}

fn longest_formula(s: u64, m: u64) -> u64 {
    // both parity cases over a common denominator of 6
    let m = m as i128;
    let num = if s % 2 == 1 {
        let u = (s as i128 + 1) / 2;
        m * m * u * (u - 1) * (u * u - u + 1)
    } else {
        let u = (s as i128 + 2) / 2;
        m * m * (u - 1) * (u - 1) * (u * u - 2 * u + 3) - 3 * m * (u - 1) * (u - 1)
    };
    assert_eq!(num % 6, 0, "non-integral longest weight at s={s}");
    (num / 6) as u64
}

fn longest_weight() -> Outcome {
    for s in 1..=8u64 {
        for m in 1..=3u64 {
            let lam = build_l(s, m).map_err(|e| e.to_string())?.to_partition();
            let w = weight(lam.parts());
            let expected = longest_formula(s, m);
            check(w == expected, || format!("L({s},{m}) weight {w}, formula {expected}"))?;
            let cap = l_by_intersection(s, m).map_err(|e| e.to_string())?;
            check(cap.to_partition() == lam, || format!("L({s},{m}) differs from E- ∩ E+"))?;
        }
    }
    let w53 = weight(build_l(5, 3).unwrap().to_partition().parts());
    let w42 = weight(build_l(4, 2).unwrap().to_partition().parts());
    check(w53 == 63 && w42 == 12, || format!("(5,3) -> {w53}, (4,2) -> {w42}"))?;
    Ok("s<=8, m<=3; (5,3)=63, (4,2)=12".into())
}

fn longest_brute_force() -> Outcome {
    for s in 1..=6u64 {
        for m in 1..=3u64 {
            let moduli: Vec<u64> = [s, m * s - 1, m * s + 1].into_iter().filter(|&x| x > 0).collect();
            let fam = enumerate_multi_cores(&moduli).map_err(|e| e.to_string())?;
            let lam = build_l(s, m).map_err(|e| e.to_string())?.to_partition();
            check(fam.contains(&lam), || format!("L({s},{m}) is not an enumerated core"))?;
            let rivals = fam
                .members()
                .iter()
                .filter(|q| *q != &lam && q.len() >= lam.len())
                .count();
            check(rivals == 0, || {
                format!("({s},{m}): {rivals} cores with at least {} parts", lam.len())
            })?;
        }
    }
    Ok("L strictly longest for s<=6, m<=3".into())
}

fn berger() -> Outcome {
    let mut supported = 0;
    let mut refuted = Vec::new();
    let mut untested = 0;
    for m in 1..=3u64 {
        for s in 1..=6u64 {
            let probe = berger_probe(s, m).map_err(|e| e.to_string())?;
            match probe.verdict {
                Verdict::Supported => supported += 1,
                Verdict::RefutedAt { .. } => refuted.push(probe.verdict.to_string()),
                Verdict::Untested => untested += 1,
            }
            if m == 1 {
                check(probe.verdict == Verdict::Supported, || {
                    format!("m=1, s={s}: {}", probe.verdict)
                })?;
            }
        }
    }
    Ok(format!(
        "18 cells: {supported} SUPPORTED, {} REFUTED {refuted:?}, {untested} UNTESTED",
        refuted.len()
    ))
}

fn self_conjugate() -> Outcome {
    let sc = |s: u64, t: u64| -> Result<Vec<Partition>, String> {
        let fam = enumerate_st_cores_distinct(s, t).map_err(|e| e.to_string())?;
        Ok(fam.filter_self_conjugate().into_members())
    };
    let stairs: Vec<Partition> = vec![p(&[]), p(&[1]), p(&[2, 1]), p(&[3, 2, 1]), p(&[4, 3, 2, 1])];
    for s in [8, 9] {
        let got = sc(s, s + 1)?;
        check(got == stairs, || format!("F*({s}) members {got:?}"))?;
    }
    // the listed members {∅, {1}, {1,3}} are bead sets; {1,3} encodes (2,1)
    let listed: [&[u64]; 3] = [&[], &[1], &[1, 3]];
    let expected: Vec<Partition> = listed
        .iter()
        .map(|b| BeadSet::from_iter(b.iter().copied()).to_partition())
        .collect();
    check(expected == vec![p(&[]), p(&[1]), p(&[2, 1])], || {
        format!("decoded {expected:?}")
    })?;
    check(!p(&[3, 1]).is_self_conjugate(), || {
        "(3,1) read as self-conjugate".into()
    })?;
    let minus = sc(5, 14)?;
    let plus = sc(5, 16)?;
    check(minus == expected, || format!("E-3,*(5) members {minus:?}"))?;
    check(plus == expected, || format!("E+3,*(5) members {plus:?}"))?;
    Ok("F*(8)=F*(9)=5 {∅,(1),(2,1),(3,2,1),(4,3,2,1)}; E-3,*(5)=E+3,*(5)=3 {∅,(1),(2,1)}".into())
}

fn partition_strategy(max_weight: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_weight, 0..=16).prop_map(move |mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut total = 0;
        parts.retain(|&x| {
            total += x;
            total <= max_weight
        });
        parts
    })
}

fn sub_abacus(base: &Abacus, mask: u64) -> Abacus {
    let positions: Vec<_> = base.positions().into_iter().collect();
    let kept = positions
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> (k % 64) & 1 == 1)
        .map(|(_, &pos)| pos);
    Abacus::from_positions(base.runners(), kept).unwrap()
}

fn base_abacus(s: u64, which: u8) -> Abacus {
    [Construction::A, Construction::B0, Construction::B1][which as usize % 3]
        .build(s, 1)
        .unwrap()
}

fn fail<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{name}: {e}")
}

fn properties() -> Outcome {
    let runner = || {
        TestRunner::new_with_rng(
            Config {
                cases: PROPERTY_CASES,
                failure_persistence: None,
                ..Config::default()
            },
            TestRng::deterministic_rng(RngAlgorithm::ChaCha),
        )
    };

    runner()
        .run(&partition_strategy(40), |parts| {
            let q = Partition::new(parts.clone()).unwrap();
            let beads = BeadSet::from_partition(&q);
            prop_assert_eq!(beads.to_partition(), q.clone());
            prop_assert!(beads.is_minimal());
            prop_assert_eq!(beads.shifted(3).to_partition(), q.clone());
            prop_assert_eq!(beads.shifted(3).normalize(), beads);
            Ok(())
        })
        .map_err(|e| fail("round trip", e))?;

    runner()
        .run(&partition_strategy(40), |parts| {
            let q = Partition::new(parts).unwrap();
            let c = q.conjugate();
            prop_assert_eq!(c.conjugate(), q.clone());
            prop_assert_eq!(c.weight(), q.weight());
            Ok(())
        })
        .map_err(|e| fail("conjugation", e))?;

    runner()
        .run(&(partition_strategy(30), 1..=12u64), |(parts, t)| {
            let q = Partition::new(parts.clone()).unwrap();
            let oracle = !naive_hooks(&parts).contains(&t);
            prop_assert_eq!(is_t_core(&q, t).unwrap(), oracle);
            Ok(())
        })
        .map_err(|e| fail("t-core vs hooks", e))?;

    runner()
        .run(&partition_strategy(40), |parts| {
            let q = Partition::new(parts.clone()).unwrap();
            let two_core = !naive_hooks(&parts).contains(&2);
            let distinct = parts.windows(2).all(|w| w[0] > w[1]);
            prop_assert_eq!(two_core, q.is_self_conjugate() && distinct);
            prop_assert_eq!(q.is_two_core(), two_core);
            Ok(())
        })
        .map_err(|e| fail("2-cores", e))?;

    let wedge_case = (1..=8u64, 1..=8u64, any::<[u8; 4]>(), any::<[u64; 4]>());
    runner()
        .run(&wedge_case, |(s, t, which, masks)| {
            let a = sub_abacus(&base_abacus(s, which[0]), masks[0]);
            let b = sub_abacus(&base_abacus(s, which[1]), masks[1]);
            let a2 = sub_abacus(&base_abacus(t, which[2]), masks[2]);
            let b2 = sub_abacus(&base_abacus(t, which[3]), masks[3]);
            let lhs = a.wedge(&a2).intersect(&b.wedge(&b2)).unwrap();
            let rhs = a.intersect(&b).unwrap().wedge(&a2.intersect(&b2).unwrap());
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| fail("wedge/intersect", e))?;

    Ok(format!("5 properties x {PROPERTY_CASES} cases, no failures"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("olsson-stanton maximal (s,t)-cores", olsson_stanton, 60),
        ("distinct-parts (s,s+1)-cores", xiong, 30),
        ("distinct-parts (s,ms±1)-cores and the middle identity", straub, 120),
        ("golden abacus renderings", golden_grids, 1),
        ("longest-core weight formula", longest_weight, 10),
        ("longest core by brute force", longest_brute_force, 300),
        ("maximal (s,ms-1,ms+1)-core probe", berger, 300),
        ("self-conjugate distinct-parts cores", self_conjugate, 30),
        ("property suites", properties, 120),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(budget) => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget}s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
