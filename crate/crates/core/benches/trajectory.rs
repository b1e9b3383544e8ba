use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fracdyson::{Execution, FractionalOrder, Preset, TimeGrid, Trajectory};

fn trajectory(c: &mut Criterion) {
    let preset = Preset::by_name("yang_lee_one_site").unwrap();
    let mut group = c.benchmark_group("trajectory");
    group.sample_size(10);
    for &alpha in &[0.25, 0.5, 1.0] {
        let a = FractionalOrder::new(alpha).unwrap();
        let grid = TimeGrid::uniform(20.0, 2000).unwrap();
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, alpha), &grid, |b, grid| {
                b.iter(|| Trajectory::for_preset(a, &preset, grid, 1e-12, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn alpha_sweep(c: &mut Criterion) {
    let preset = Preset::by_name("pt_waveguide").unwrap();
    let grid = TimeGrid::uniform(20.0, 500).unwrap();
    let alphas: Vec<FractionalOrder> = (1..=16)
        .map(|i| FractionalOrder::new(i as f64 / 16.0).unwrap())
        .collect();
    let mut group = c.benchmark_group("alpha_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            alphas
                .iter()
                .map(|&a| Trajectory::for_preset(a, &preset, &grid, 1e-12, Execution::Sequential).unwrap())
                .collect::<Vec<_>>()
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        use rayon::prelude::*;
        b.iter(|| {
            alphas
                .par_iter()
                .map(|&a| Trajectory::for_preset(a, &preset, &grid, 1e-12, Execution::Sequential).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

criterion_group!(benches, trajectory, alpha_sweep);
criterion_main!(benches);
