use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sympshare::access::{access_report_with, strong_security_check_with};
use sympshare::gv::{gv_search_with, GVQuery};
use sympshare::par::Exec;
use sympshare::rs::{build_strong_rs, RsParams};
use sympshare::symplectic::coset_distance_with;
use sympshare::Config;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench(c: &mut Criterion) {
    let rs7 = build_strong_rs(&RsParams::new(7, 4, 1).unwrap()).unwrap();
    let rs5 = build_strong_rs(&RsParams::new(5, 2, 1).unwrap()).unwrap();
    let query = GVQuery {
        q: 3,
        n: 5,
        k: 2,
        s: 1,
        dt: 3,
        dr: 2,
    };

    let mut g = c.benchmark_group("exec");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = Config::default().with_exec(exec);
        g.bench_with_input(BenchmarkId::new("access_report_q7", name), &cfg, |b, cfg| {
            b.iter(|| access_report_with(black_box(&rs7), true, cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("coset_distance_q5", name), &cfg, |b, cfg| {
            b.iter(|| coset_distance_with(black_box(rs5.c_s_dual()), rs5.c_r_dual(), cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("strong_check_q7", name), &cfg, |b, cfg| {
            b.iter(|| strong_security_check_with(black_box(&rs7), cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("gv_search", name), &cfg, |b, cfg| {
            b.iter(|| gv_search_with(black_box(&query), 64, 1, cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
