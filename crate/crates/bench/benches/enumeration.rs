use std::hint::black_box;

use coreabacus::enumeration::{count_st_cores, enumerate_multi_cores, enumerate_st_cores, enumerate_st_cores_distinct};
use coreabacus::verification::{verify_claim, ClaimId, ParamGrid};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn st_cores(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_st_cores");
    for (s, t) in [(5, 14), (7, 13), (8, 15)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{s},{t}")),
            &(s, t),
            |b, &(s, t)| b.iter(|| enumerate_st_cores(black_box(s), black_box(t)).unwrap().len()),
        );
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_st_cores");
    for (s, t, distinct) in [(8, 15, false), (11, 12, false), (12, 35, true), (15, 44, true)] {
        let label = format!("{s},{t}{}", if distinct { ",distinct" } else { "" });
        group.bench_function(label, |b| {
            b.iter(|| count_st_cores(black_box(s), black_box(t), distinct).unwrap())
        });
    }
    group.finish();
}

fn distinct_walk(c: &mut Criterion) {
    c.bench_function("enumerate_st_cores_distinct/9,28", |b| {
        b.iter(|| enumerate_st_cores_distinct(black_box(9), black_box(28)).unwrap().len())
    });
}

fn triples(c: &mut Criterion) {
    let mut group = c.benchmark_group("longest_brute_force");
    group.sample_size(20);
    for (s, m) in [(5, 3), (6, 3)] {
        let moduli = [s, m * s - 1, m * s + 1];
        group.bench_function(format!("{s},{m}"), |b| {
            b.iter(|| {
                enumerate_multi_cores(black_box(&moduli))
                    .unwrap()
                    .longest_member()
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn harness(c: &mut Criterion) {
    let grid: ParamGrid = "s=1..10".parse().unwrap();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("xiong", |b| {
        b.iter(|| verify_claim(ClaimId::Xiong, Some(&grid)).unwrap().all_pass())
    });
    group.finish();
}

criterion_group!(benches, st_cores, counting, distinct_walk, triples, harness);
criterion_main!(benches);
