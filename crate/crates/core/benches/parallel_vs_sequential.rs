use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use orthant_walks::asymptotics::{walk_asymptotics, ExpansionOptions};
use orthant_walks::diagonal::{build_rational, diagonal_coeffs, SeriesKind};
use orthant_walks::{count_totals, models, DpOptions, Execution};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn dp(c: &mut Criterion) {
    let mut g = c.benchmark_group("dp_count");
    g.sample_size(10);
    for (model, steps, n) in [
        ("king", models::king(), 300),
        ("octant_twelve", models::octant_twelve(), 60),
    ] {
        for (label, execution) in MODES {
            let opts = DpOptions {
                execution,
                cell_budget: u64::MAX,
            };
            g.bench_with_input(BenchmarkId::new(label, model), &n, |b, &n| {
                b.iter(|| count_totals(black_box(&steps), n, opts).unwrap())
            });
        }
    }
    g.finish();
}

fn diagonal(c: &mut Criterion) {
    let mut g = c.benchmark_group("diagonal_coeffs");
    g.sample_size(10);
    let spec = build_rational(&models::king(), SeriesKind::Walks);
    for (label, execution) in MODES {
        g.bench_function(label, |b| b.iter(|| diagonal_coeffs(black_box(&spec), 24, execution)));
    }
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let mut g = c.benchmark_group("walk_asymptotics");
    g.sample_size(10);
    let steps = models::octant_eight();
    for (label, execution) in MODES {
        let opts = ExpansionOptions {
            execution,
            degree: None,
        };
        g.bench_function(label, |b| b.iter(|| walk_asymptotics(black_box(&steps), 3, opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, dp, diagonal, expansion);
criterion_main!(benches);
