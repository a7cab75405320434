//! Rayon data-parallel paths against their sequential baselines: the scenario
//! corpus and the cover search of minimal splitting exponents.

use circulant_core::par;
use circulant_core::poly::{parse_poly_infer, ZPoly};
use circulant_core::scenario::{corpus, run, RunOptions};
use circulant_core::split::{cover_candidates, try_split};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn scenario_corpus(c: &mut Criterion) {
    let scenarios = corpus().expect("corpus loads");
    let opts = RunOptions::default();
    let mut g = c.benchmark_group("scenario_corpus");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| par::map_seq(&scenarios, |s| run(s, opts)))
    });
    g.bench_function("parallel", |b| {
        b.iter(|| par::map(&scenarios, |s| run(s, opts)))
    });
    g.finish();
}

fn cover_search(c: &mut Criterion) {
    let cases = [
        ("two-parameter-quadric", "z^2 - w1*w2*x^2"),
        (
            "two-component-cubic",
            "z^3 - 3*w1*w2*y1*y2*z + w1*w2*y1^3 + w1^2*w2^2*y2^3",
        ),
    ];
    let mut g = c.benchmark_group("cover_search");
    g.sample_size(10);
    for (name, src) in cases {
        let f = ZPoly::from_named(&parse_poly_infer(src).expect("parses"), "z").expect("monic");
        let w = f.vars().indices(&["w1", "w2"]).expect("w variables");
        let candidates = cover_candidates(w.len(), f.degree() as u32);
        g.bench_with_input(BenchmarkId::new("sequential", name), &f, |b, f| {
            b.iter(|| par::map_seq(&candidates, |q| try_split(f, &w, q, 12).is_some()))
        });
        g.bench_with_input(BenchmarkId::new("parallel", name), &f, |b, f| {
            b.iter(|| par::map(&candidates, |q| try_split(f, &w, q, 12).is_some()))
        });
    }
    g.finish();
}

criterion_group!(benches, scenario_corpus, cover_search);
criterion_main!(benches);
