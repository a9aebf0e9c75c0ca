use artinv_core::algebra::ArtinianAlgebra;
use artinv_core::arith::FieldSpec;
use artinv_core::invariants::{self, Effort, ReesMode};
use artinv_core::par::Parallelism;
use artinv_core::poly::RingContext;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn algebra(p: u64, vars: &[&str], gens: &[&str]) -> ArtinianAlgebra {
    let ctx = RingContext::new(FieldSpec::prime(p).unwrap(), vars.iter().map(|s| s.to_string())).unwrap();
    ArtinianAlgebra::from_strings(&ctx, gens).unwrap()
}

fn inputs() -> Vec<(&'static str, ArtinianAlgebra)> {
    vec![
        ("F2 x^2,y^2,z^2", algebra(2, &["x", "y", "z"], &["x^2", "y^2", "z^2"])),
        ("F3 x^2,y^2,z^2", algebra(3, &["x", "y", "z"], &["x^2", "y^2", "z^2"])),
        ("F2 x^2,y^2,z^3", algebra(2, &["x", "y", "z"], &["x^2", "y^2", "z^3"])),
    ]
}

fn effort(mode: Parallelism) -> Effort {
    Effort {
        parallelism: mode,
        ..Effort::default()
    }
}

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn dilworth(c: &mut Criterion) {
    let mut g = c.benchmark_group("dilworth_oracle");
    g.sample_size(10);
    for (name, a) in inputs() {
        for (label, mode) in MODES {
            let e = effort(mode);
            g.bench_with_input(BenchmarkId::new(label, name), &a, |b, a| {
                b.iter(|| black_box(invariants::dilworth_oracle(a, &e).unwrap().value))
            });
        }
    }
    g.finish();
}

fn rees(c: &mut Criterion) {
    let mut g = c.benchmark_group("rees_exhaustive");
    g.sample_size(10);
    for (name, a) in inputs() {
        for (label, mode) in MODES {
            let e = effort(mode);
            g.bench_with_input(BenchmarkId::new(label, name), &a, |b, a| {
                b.iter(|| black_box(invariants::rees_number(a, ReesMode::ExhaustiveAll, &e).unwrap().value))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, dilworth, rees);
criterion_main!(benches);
