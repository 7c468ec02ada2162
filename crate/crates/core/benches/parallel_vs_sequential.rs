use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use omnitonal::amoeba::{is_amoeba_at, AmoebaOptions};
use omnitonal::oracle::{brute_force_bal, brute_force_ex, OracleOptions};
use omnitonal::spectra::tonal_report;
use omnitonal::{named_graph, parse_graph6, Family, Jobs};

fn modes() -> [(&'static str, Jobs); 2] {
    [("sequential", Jobs::SEQUENTIAL), ("parallel", Jobs::default())]
}

fn oracle_scan(c: &mut Criterion) {
    let star = named_graph(Family::Star(4)).unwrap();
    let mut group = c.benchmark_group("oracle_bal_star4_n7");
    group.sample_size(10);
    for (name, jobs) in modes() {
        let opts = OracleOptions { jobs, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| brute_force_bal(7, &star, false, &opts).unwrap())
        });
    }
    group.finish();

    let p4 = named_graph(Family::Path(4)).unwrap();
    let mut group = c.benchmark_group("oracle_ex_p4_n8");
    group.sample_size(10);
    for (name, jobs) in modes() {
        let opts = OracleOptions { jobs, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| brute_force_ex(8, &p4, &opts).unwrap())
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let text = include_str!("../tests/data/graphs_le7.g6");
    let graphs: Vec<_> = text.lines().map(|l| parse_graph6(l).unwrap()).collect();
    let mut group = c.benchmark_group("census_le7");
    group.sample_size(10);
    for (name, jobs) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| omnitonal::par::map(&graphs, jobs, tonal_report))
        });
    }
    group.finish();
}

fn amoeba_bfs(c: &mut Criterion) {
    let paw = omnitonal::named::parse_named("paw").unwrap();
    let mut group = c.benchmark_group("amoeba_paw_n8");
    group.sample_size(10);
    for (name, jobs) in modes() {
        let opts = AmoebaOptions { jobs, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| is_amoeba_at(&paw, 8, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle_scan, census, amoeba_bfs);
criterion_main!(benches);
