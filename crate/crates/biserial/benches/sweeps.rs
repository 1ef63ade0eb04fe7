use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use biserial::arquiver::{classify_with, SweepOptions};
use biserial::presentations::{build_a7, build_psl1};
use biserial::wittrings::witt_sweep;

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for (name, p, len) in [("psl1_d3", build_psl1(3).unwrap(), 10), ("a7", build_a7(), 10)] {
        for sequential in [true, false] {
            let mut opts = SweepOptions::new(len);
            opts.sequential = sequential;
            let mode = if sequential { "sequential" } else { "parallel" };
            g.bench_with_input(BenchmarkId::new(mode, name), &opts, |b, o| b.iter(|| black_box(classify_with(&p, o).unwrap())));
        }
    }
    g.finish();
}

fn witt(c: &mut Criterion) {
    let mut g = c.benchmark_group("witt");
    g.sample_size(10);
    let ds: Vec<u32> = (3..=10).collect();
    for sequential in [true, false] {
        let mode = if sequential { "sequential" } else { "parallel" };
        g.bench_function(BenchmarkId::new(mode, "d3-10"), |b| b.iter(|| black_box(witt_sweep(&ds, sequential).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, classify, witt);
criterion_main!(benches);
