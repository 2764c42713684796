use std::hint::black_box;

use advicepack::harness::{generate, run_with_tape, AlgorithmId, GeneratorKind, GeneratorParams};
use advicepack::tape::{AdviceTape, BitString};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn baselines(c: &mut Criterion) {
    let seq = generate(GeneratorKind::Uniform, &GeneratorParams::new(2000, 7)).unwrap();
    let mut group = c.benchmark_group("baselines/uniform-2000");
    for name in ["nf", "ff", "bf", "harmonic:5"] {
        let id: AlgorithmId = name.parse().unwrap();
        group.bench_function(name, |b| {
            b.iter(|| black_box(run_with_tape(&id, &seq, BitString::new()).unwrap()))
        });
    }
    group.finish();
}

// Oracles run once outside the timed loop; only the online side is measured.
fn advice(c: &mut Criterion) {
    let mut group = c.benchmark_group("advice");
    for (name, kind, n) in [
        ("three-halves", GeneratorKind::Uniform, 2000),
        ("four-thirds:1/12", GeneratorKind::Uniform, 14),
        ("pair", GeneratorKind::Pairs, 14),
        ("full-index", GeneratorKind::Uniform, 12),
        ("distinct", GeneratorKind::Triples, 12),
    ] {
        let id: AlgorithmId = name.parse().unwrap();
        let seq = generate(kind, &GeneratorParams::new(n, 3)).unwrap();
        let tape = id.oracle(&seq, None, 20_000_000).unwrap().unwrap();
        group.bench_with_input(BenchmarkId::new(name, n), &tape, |b, tape| {
            b.iter(|| black_box(run_with_tape(&id, &seq, tape.clone()).unwrap()))
        });
    }
    group.finish();
}

fn codec(c: &mut Criterion) {
    c.bench_function("self_delimited/round_trip_10k", |b| {
        b.iter(|| {
            let mut bits = BitString::new();
            for x in 0..10_000u64 {
                bits.push_self_delimited(x);
            }
            let mut tape = AdviceTape::new(bits);
            let mut sum = 0u64;
            for _ in 0..10_000 {
                sum += tape.read_self_delimited();
            }
            black_box(sum)
        })
    });
}

criterion_group!(benches, baselines, advice, codec);
criterion_main!(benches);
