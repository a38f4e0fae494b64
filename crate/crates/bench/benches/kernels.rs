use criterion::{criterion_group, criterion_main, Criterion};

use powerspace_core::classic::hoare;
use powerspace_core::enumerate::antichains;
use powerspace_core::poset::validate_poset;
use powerspace_core::powerspace::{build_powerspace, PsKind};
use powerspace_core::Poset;

/// 2×4 grid: a meaty order for the antichain kernels (8 elements,
/// moderately wide).
fn grid_2x4() -> Poset {
    let chain2 = validate_poset(&["0", "1"], &[("0", "1")]).unwrap();
    let chain4 =
        validate_poset(&["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3")]).unwrap();
    chain2.tensor(&chain4).unwrap()
}

/// 2×3 grid for the convex construction, whose carrier grows fastest.
fn grid_2x3() -> Poset {
    let chain2 = validate_poset(&["0", "1"], &[("0", "1")]).unwrap();
    let chain3 = validate_poset(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
    chain2.tensor(&chain3).unwrap()
}

fn bench_antichains(c: &mut Criterion) {
    let p = grid_2x4();
    c.bench_function("antichains_grid_2x4", |b| {
        b.iter(|| antichains(std::hint::black_box(&p)).unwrap())
    });
}

fn bench_build_powerspace(c: &mut Criterion) {
    let p = grid_2x4();
    let mut group = c.benchmark_group("build_powerspace");
    for kind in [PsKind::Lower, PsKind::Upper] {
        group.bench_function(format!("{kind}_grid_2x4"), |b| {
            b.iter(|| build_powerspace(kind, std::hint::black_box(&p)).unwrap())
        });
    }
    let p = grid_2x3();
    group.bench_function("convex_grid_2x3", |b| {
        b.iter(|| build_powerspace(PsKind::Convex, std::hint::black_box(&p)).unwrap())
    });
    group.finish();
}

fn bench_hoare(c: &mut Criterion) {
    let p = grid_2x4();
    c.bench_function("hoare_grid_2x4", |b| {
        b.iter(|| hoare(std::hint::black_box(&p)).unwrap())
    });
}

criterion_group!(
    kernels,
    bench_antichains,
    bench_build_powerspace,
    bench_hoare
);
criterion_main!(kernels);
