use criterion::{black_box, criterion_group, criterion_main, Criterion};
use indexlab_core::graph::invariants::{clique_cover_number, independence_number, mais};
use indexlab_core::indexcode::{exact_ell, verify_code_on};
use indexlab_core::minrank::exact_minrank;
use indexlab_core::ramsey::{build_pq, build_ramsey_graph, inclusion_rank_streaming, RamseyParams};
use indexlab_core::{parse_field_spec, Graph, IndexCode, LinearIndexCode, TournamentComposeCode};

fn ramsey(c: &mut Criterion) {
    let params = RamseyParams::new(3, 2, 1, 1).unwrap();
    c.bench_function("ramsey_graph_r10", |b| {
        b.iter(|| build_ramsey_graph(black_box(&params), Some(10)).unwrap())
    });
    let inst = build_ramsey_graph(&params, Some(10)).unwrap();
    c.bench_function("ramsey_pq_r10", |b| b.iter(|| build_pq(black_box(&inst)).unwrap()));
    let (p, q) = build_pq(&inst).unwrap();
    c.bench_function("rank_gf3_252", |b| b.iter(|| black_box(&p).rank()));
    c.bench_function("rank_gf2_252", |b| b.iter(|| black_box(&q).rank()));
    let f3 = parse_field_spec("3").unwrap();
    c.bench_function("inclusion_rank_r14_s5_d2", |b| {
        b.iter(|| inclusion_rank_streaming(14, 5, 2, black_box(&f3)).unwrap())
    });
}

fn minrank(c: &mut Criterion) {
    let f2 = parse_field_spec("2").unwrap();
    let f4 = parse_field_spec("2^2").unwrap();
    let c5 = Graph::cycle(5);
    let c7 = Graph::cycle(7);
    c.bench_function("minrank_gf2_c7", |b| b.iter(|| exact_minrank(black_box(&c7), &f2, u64::MAX).unwrap()));
    c.bench_function("minrank_gf4_c5", |b| b.iter(|| exact_minrank(black_box(&c5), &f4, u64::MAX).unwrap()));
    let t = Graph::transitive_tournament(6);
    let composed = Graph::compose(&[t.clone(), t.reverse()]).unwrap();
    c.bench_function("invariants_compose_t6", |b| {
        b.iter(|| {
            let g = black_box(&composed);
            (independence_number(g).unwrap(), mais(g).unwrap(), clique_cover_number(g).unwrap())
        })
    });
}

fn codes(c: &mut Criterion) {
    let c5 = Graph::cycle(5);
    c.bench_function("exact_ell_c5", |b| b.iter(|| exact_ell(black_box(&c5)).unwrap()));
    let params = RamseyParams::new(3, 2, 1, 1).unwrap();
    let inst = build_ramsey_graph(&params, Some(10)).unwrap();
    let (p, _) = build_pq(&inst).unwrap();
    let code = LinearIndexCode::new(&inst.graph, &p).unwrap();
    let x: Vec<bool> = (0..inst.n()).map(|i| i % 3 == 0).collect();
    c.bench_function("ramsey_code_round", |b| {
        b.iter(|| verify_code_on(black_box(&code), std::iter::once(x.clone())).unwrap())
    });
    let tc = TournamentComposeCode::new(6).unwrap();
    c.bench_function("tournament_code_encode_n6", |b| b.iter(|| tc.encode(black_box(&[true; 12])).unwrap()));
}

criterion_group!(benches, ramsey, minrank, codes);
criterion_main!(benches);
