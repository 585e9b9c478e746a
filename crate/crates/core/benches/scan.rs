use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffhg::field::primes_in;
use ffhg::par::Executor;
use ffhg::verify::{scan, verify_theorem, CsvSink, ScanConfig, TheoremId};
use ffhg::PrimeContext;

const PMAX: u64 = 600;

fn theorem_one(p: &u64) -> usize {
    let ctx = PrimeContext::full(*p).unwrap();
    verify_theorem(&ctx, TheoremId::One).unwrap().verified()
}

fn executor(c: &mut Criterion) {
    let primes: Vec<u64> = primes_in(3, PMAX).filter(|p| p % 4 == 1).collect();
    let cores = Executor::new(0).jobs();
    let mut g = c.benchmark_group("theorem1_map");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        let exec = Executor::sequential();
        b.iter(|| black_box(exec.map(&primes, theorem_one)))
    });
    g.bench_with_input(BenchmarkId::new("parallel", cores), &cores, |b, &n| {
        let exec = Executor::new(n);
        b.iter(|| black_box(exec.map(&primes, theorem_one)))
    });
    g.finish();
}

fn full_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan_all_theorems");
    g.sample_size(10);
    for jobs in [1, 0] {
        let mut cfg = ScanConfig::new(3, PMAX);
        cfg.theorems = TheoremId::ALL.to_vec();
        cfg.jobs = jobs;
        let label = if jobs == 1 { "sequential" } else { "parallel" };
        g.bench_function(label, |b| {
            b.iter(|| {
                let mut sink = CsvSink::new(std::io::sink(), false).unwrap();
                black_box(scan(&cfg, &mut sink).unwrap())
            })
        });
    }
    g.finish();
}

criterion_group!(benches, executor, full_scan);
criterion_main!(benches);
