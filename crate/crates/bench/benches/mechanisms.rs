use std::hint::black_box;

use contingent_core::experiments::{sample_profile, Family, SamplerSpec};
use contingent_core::multi::{run_fcfs, run_gcsp, run_vcg};
use contingent_core::profile::Profile;
use contingent_core::single::run_single;
use contingent_core::{Economy, MultiEconomy, SingleMechanism, ValueModel};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const EXP: Family = Family::Exponential { l: 10.0 };

fn single(n: usize, seed: u64) -> Economy {
    match sample_profile(&SamplerSpec::new(EXP, n, 1), seed).unwrap() {
        Profile::Single(e) => e,
        Profile::Multi(_) => unreachable!(),
    }
}

fn multi(n: usize, m: usize, seed: u64) -> MultiEconomy {
    match sample_profile(&SamplerSpec::new(EXP, n, m), seed).unwrap() {
        Profile::Multi(me) => me,
        Profile::Single(_) => unreachable!(),
    }
}

fn model_queries(c: &mut Criterion) {
    let mut g = c.benchmark_group("model");
    let models = [
        ("wp", ValueModel::wp(10.0, 0.3)),
        ("uniform", ValueModel::uniform(5.0, 3.0)),
        ("exponential", ValueModel::exponential(10.0, 0.08)),
        ("discrete", ValueModel::discrete(&[(40.0, 0.4), (-10.0, 0.4)], 0.2)),
    ];
    for (name, m) in &models {
        g.bench_with_input(BenchmarkId::new("zero_crossing", name), m, |b, m| b.iter(|| black_box(m).zero_crossing()));
        g.bench_with_input(BenchmarkId::new("critical_penalty", name), m, |b, m| {
            let target = m.utility(1.0);
            b.iter(|| black_box(m).critical_penalty(black_box(target)))
        });
        g.bench_with_input(BenchmarkId::new("first_best", name), m, |b, m| b.iter(|| black_box(m).first_best()));
    }
    g.finish();
}

fn single_resource(c: &mut Criterion) {
    let mut g = c.benchmark_group("single");
    for n in [2, 10, 50] {
        let e = single(n, 1);
        for mech in [SingleMechanism::Sp, SingleMechanism::Csp, SingleMechanism::GammaCsp { gamma: 0.5 }] {
            g.bench_with_input(BenchmarkId::new(mech.to_string(), n), &e, |b, e| b.iter(|| run_single(mech, e, 0)));
        }
    }
    g.finish();
}

fn multi_resource(c: &mut Criterion) {
    let mut g = c.benchmark_group("multi");
    for (n, m) in [(3, 3), (8, 3), (15, 3), (6, 5)] {
        let me = multi(n, m, 2);
        let id = format!("{n}x{m}");
        g.bench_with_input(BenchmarkId::new("gcsp", &id), &me, |b, me| b.iter(|| run_gcsp(me, 0)));
        g.bench_with_input(BenchmarkId::new("vcg", &id), &me, |b, me| b.iter(|| run_vcg(me, 0.0, 0)));
        g.bench_with_input(BenchmarkId::new("fcfs", &id), &me, |b, me| b.iter(|| run_fcfs(me, 0)));
    }
    g.finish();
}

criterion_group!(benches, model_queries, single_resource, multi_resource);
criterion_main!(benches);
