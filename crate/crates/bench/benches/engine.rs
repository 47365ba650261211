use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use omegadr_bench::workload;
use omegadr_core::omega::{oracle_reduce_auto, reduce_mod_dr, OracleTable};
use omegadr_core::{cocycle_gamma, independence_certificate};

const CELLS: [(u32, usize); 3] = [(2, 3), (3, 4), (5, 6)];

fn reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    for (m, d) in CELLS {
        let (curve, ws, _) = workload(m, d, 50);
        group.bench_with_input(BenchmarkId::new("rewriter", format!("m{m}d{d}")), &ws, |b, ws| {
            b.iter(|| ws.iter().map(|w| reduce_mod_dr(black_box(w), &curve)).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (m, d) in CELLS {
        let (curve, ws, _) = workload(m, d, 20);
        group.bench_with_input(BenchmarkId::new("per-call", format!("m{m}d{d}")), &ws, |b, ws| {
            b.iter(|| ws.iter().map(|w| oracle_reduce_auto(black_box(w), &curve).unwrap()).collect::<Vec<_>>())
        });
        group.bench_with_input(BenchmarkId::new("table", format!("m{m}d{d}")), &ws, |b, ws| {
            b.iter(|| {
                let table = OracleTable::for_support(&curve, -6, 6);
                ws.iter().map(|w| table.reduce_auto(black_box(w)).unwrap()).collect::<Vec<_>>()
            })
        });
        group.bench_function(BenchmarkId::new("certificate", format!("m{m}d{d}")), |b| {
            b.iter(|| independence_certificate(black_box(&curve)).pass)
        });
    }
    group.finish();
}

fn cocycle(c: &mut Criterion) {
    let mut group = c.benchmark_group("cocycle");
    for (m, d) in CELLS {
        let (curve, _, fs) = workload(m, d, 40);
        group.bench_with_input(BenchmarkId::new("gamma", format!("m{m}d{d}")), &fs, |b, fs| {
            b.iter(|| fs.windows(2).map(|p| cocycle_gamma(&p[0], &p[1], &curve)).collect::<Vec<_>>())
        });
    }
    group.finish();
}

criterion_group!(benches, reduce, oracle, cocycle);
criterion_main!(benches);
