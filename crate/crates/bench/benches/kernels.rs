use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use weno_bench::{stencil_windows, windows};
use weno_core::reconstruction::reconstruct_points;
use weno_core::{reconstruct_plus, SchemeId, SchemeSpec};

const WINDOWS: usize = 4096;

fn weights(c: &mut Criterion) {
    let ws = stencil_windows(WINDOWS);
    let mut group = c.benchmark_group("weights");
    group.throughput(Throughput::Elements(WINDOWS as u64));
    for id in SchemeId::ALL {
        let spec = SchemeSpec::new(id);
        group.bench_function(id.name(), |b| {
            b.iter(|| {
                let mut acc = 0.0;
                for w in &ws {
                    acc += spec.weights(black_box(w)).unwrap().omega()[0];
                }
                acc
            })
        });
    }
    group.finish();
}

fn reconstruction(c: &mut Criterion) {
    let raw = windows(WINDOWS);
    let checked = stencil_windows(WINDOWS);
    let mut group = c.benchmark_group("reconstruct");
    group.throughput(Throughput::Elements(WINDOWS as u64));
    for id in [SchemeId::Js3, SchemeId::Z3, SchemeId::Es2, SchemeId::Es3, SchemeId::Js5] {
        let spec = SchemeSpec::new(id);
        group.bench_function(format!("points/{id}"), |b| {
            b.iter(|| raw.iter().map(|w| reconstruct_points(black_box(w), &spec)).sum::<f64>())
        });
        group.bench_function(format!("checked/{id}"), |b| {
            b.iter(|| {
                checked
                    .iter()
                    .map(|w| reconstruct_plus(black_box(w), &spec).unwrap().fhat)
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, weights, reconstruction);
criterion_main!(benches);
