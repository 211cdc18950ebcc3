use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use milnor_core::invariant::TotalMilnorQuotient;
use milnor_core::testing::{random_ccomplex, random_move_sequence};
use milnor_core::{hnf, snf, total_invariant, IntMatrix, LinkingMatrix, SurfaceSystemData};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

fn systems(n: usize, count: usize) -> Vec<SurfaceSystemData> {
    let mut rng = StdRng::seed_from_u64(n as u64);
    (0..count)
        .map(|_| {
            let s = random_ccomplex(&mut rng, n, 12)
                .to_surface_system()
                .unwrap();
            random_move_sequence(&mut rng, &s, 6).unwrap().0
        })
        .collect()
}

fn normal_forms(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(1);
    let mut group = c.benchmark_group("normal_forms");
    for (rows, cols) in [(4, 6), (5, 7), (10, 20)] {
        let a = random_matrix(&mut rng, rows, cols);
        let id = format!("{rows}x{cols}");
        group.bench_with_input(BenchmarkId::new("hnf", &id), &a, |b, a| {
            b.iter(|| hnf(black_box(a)))
        });
        group.bench_with_input(BenchmarkId::new("snf", &id), &a, |b, a| {
            b.iter(|| snf(black_box(a)))
        });
    }
    group.finish();
}

fn quotients(c: &mut Criterion) {
    let mut group = c.benchmark_group("quotient");
    for n in [4, 6, 9] {
        group.bench_with_input(BenchmarkId::new("all_ones", n), &n, |b, &n| {
            b.iter(|| TotalMilnorQuotient::new(LinkingMatrix::constant(black_box(n), 1)).unwrap())
        });
    }
    group.finish();
}

fn invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariant");
    for n in [3, 4, 5] {
        let data = systems(n, 16);
        group.bench_with_input(BenchmarkId::new("total_invariant", n), &data, |b, data| {
            b.iter(|| {
                for s in data {
                    black_box(total_invariant(s).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("ordered_form", n), &data, |b, data| {
            b.iter(|| {
                for s in data {
                    black_box(s.ordered_form().unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, normal_forms, quotients, invariants);
criterion_main!(benches);
