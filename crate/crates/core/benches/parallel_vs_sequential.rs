use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use spectral_walls::classify::classify_many;
use spectral_walls::exec::Execution;
use spectral_walls::fourier::{ball_points, ft_samples, FtConfig};
use spectral_walls::linalg::{int_vector, zero_vector, Subspace};
use spectral_walls::measure::{Raw, Space, SymbolicMeasure};
use spectral_walls::scalar::FieldSpec;

fn fixture() -> SymbolicMeasure {
    let f = FieldSpec::rationals();
    let line = |v: &[i64]| Raw::boxed(vec![int_vector(&f, v)], zero_vector(&f, 3));
    SymbolicMeasure::new(
        Space::Torus(3),
        &f,
        false,
        vec![line(&[1, 0, 0]), line(&[0, 1, 1]), line(&[1, 2, 3])],
    )
    .unwrap()
}

fn directions() -> Vec<Subspace> {
    let f = FieldSpec::rationals();
    let mut out = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in 1i64..=3 {
                out.push(Subspace::span_ints(&f, &[&[a, b, c]]));
            }
        }
    }
    out
}

fn bench(c: &mut Criterion) {
    let m = fixture();
    let ls = directions();
    let suspended = m.suspend().unwrap();
    let points = ball_points(3, 50.0, 4096, 0);
    let cfg = FtConfig::default();
    let modes = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

    let mut g = c.benchmark_group("classify_many");
    for (name, mode) in modes {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| classify_many(&m, &ls, mode))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("ft_samples");
    g.sample_size(20);
    for (name, mode) in modes {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| ft_samples(&suspended, &points, &cfg, mode).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
