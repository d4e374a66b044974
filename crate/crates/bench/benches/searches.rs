use criterion::{criterion_group, criterion_main, Criterion};
use qmop_bench::{identity_instance, pattern_instance, planted_instance, small_pcp};
use qmop_core::measurement::{find_empty_ports, sequence_probability, State};
use qmop_core::mortality::{bounded_mortality_search, decide_nonneg_mortality};
use qmop_core::pcp::{check_encoding_correspondence, solve_pcp_bounded};
use qmop_core::reduction::build_kraus_from_mmp;
use qmop_core::{SearchLimits, Word};

fn bench_mortality(c: &mut Criterion) {
    let mut group = c.benchmark_group("mortality");
    let patterns = pattern_instance();
    group.bench_function("nonneg_closure_d3", |b| {
        b.iter(|| decide_nonneg_mortality(&patterns, SearchLimits::default()).unwrap())
    });
    let planted = planted_instance();
    group.bench_function("bounded_planted_depth3", |b| {
        b.iter(|| bounded_mortality_search(&planted, 3, SearchLimits::default()).unwrap())
    });
    group.finish();
}

fn bench_reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduction");
    let planted = planted_instance();
    group.bench_function("build_kraus", |b| b.iter(|| build_kraus_from_mmp(&planted).unwrap()));

    let device = build_kraus_from_mmp(&planted).unwrap().device;
    group.bench_function("empty_ports_depth3", |b| {
        b.iter(|| find_empty_ports(&device, 3, SearchLimits::default()).unwrap())
    });

    let identity = build_kraus_from_mmp(&identity_instance()).unwrap().device;
    let mixed = State::maximally_mixed(identity.dim()).unwrap();
    let word = Word::new(vec![1, 9, 4]);
    group.bench_function("sequence_probability_len3", |b| {
        b.iter(|| sequence_probability(&identity, &word, &mixed).unwrap())
    });
    group.finish();
}

fn bench_pcp(c: &mut Criterion) {
    let inst = small_pcp();
    c.bench_function("pcp_solve_len8", |b| b.iter(|| solve_pcp_bounded(&inst, 8)));
    c.bench_function("pcp_check_len5", |b| b.iter(|| check_encoding_correspondence(&inst, 5).unwrap()));
}

criterion_group!(benches, bench_mortality, bench_reduction, bench_pcp);
criterion_main!(benches);
