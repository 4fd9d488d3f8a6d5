//! Benchmarks for the hot paths: graph-level simpleness decisions, groupoid
//! and span algebra construction, cylinder arithmetic, and path algebra
//! equality checks.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use steinberg_core::{
    all_hereditary_saturated, graph_groupoid_finite, instantiate_semiring, is_congruence_simple,
    lpa_equals, steinberg_finite, steinberg_simple_decision, Graph, Limits, LpaTerm, SteinbergElt,
};

fn rose(loops: usize) -> Graph {
    let mut text = String::from("vertex v\n");
    for i in 0..loops {
        text.push_str(&format!("edge l{i} v v\n"));
    }
    Graph::parse(&text).expect("rose graph")
}

fn line(vertices: usize) -> Graph {
    let mut text = String::new();
    for i in 0..vertices {
        text.push_str(&format!("vertex v{i}\n"));
    }
    for i in 1..vertices {
        text.push_str(&format!("edge e{i} v{} v{i}\n", i - 1));
    }
    Graph::parse(&text).expect("line graph")
}

fn rose_bundle() -> Arc<Graph> {
    Arc::new(Graph::parse("vertex v\nbundle es v v\n").expect("rose bundle"))
}

fn bench_decision(c: &mut Criterion) {
    let b = instantiate_semiring("B").expect("boolean semiring");
    let two_loops = rose(2);
    let chain = line(10);
    c.bench_function("decision/two_loop_rose", |bench| {
        bench.iter(|| steinberg_simple_decision(black_box(&two_loops), black_box(&b)))
    });
    c.bench_function("decision/ten_vertex_line", |bench| {
        bench.iter(|| steinberg_simple_decision(black_box(&chain), black_box(&b)))
    });
}

fn bench_hs_enumeration(c: &mut Criterion) {
    let chain = line(12);
    let limits = Limits::default();
    c.bench_function("hs/twelve_vertex_line", |bench| {
        bench.iter(|| all_hereditary_saturated(black_box(&chain), black_box(&limits)))
    });
}

fn bench_span_algebra(c: &mut Criterion) {
    let chain = line(3);
    let limits = Limits::default();
    c.bench_function("span/build_line3", |bench| {
        bench.iter(|| {
            let gg = graph_groupoid_finite(black_box(&chain), &limits).expect("groupoid");
            steinberg_finite(gg.groupoid(), &limits).expect("span algebra")
        })
    });
    let gg = graph_groupoid_finite(&chain, &limits).expect("groupoid");
    let alg = steinberg_finite(gg.groupoid(), &limits).expect("span algebra");
    c.bench_function("span/simpleness_line3", |bench| {
        bench.iter(|| is_congruence_simple(black_box(&alg)))
    });
}

fn bench_cylinders(c: &mut Criterion) {
    let g = rose_bundle();
    let punctured = SteinbergElt::parse(&g, "Z(v; v; ~es[0],~es[1])").expect("parse");
    let shifted = SteinbergElt::parse(&g, "Z(es[1]; es[2]) + Z(es[0].es[3]; es[0])").expect("parse");
    c.bench_function("cylinder/mul_canonicalize", |bench| {
        bench.iter(|| black_box(&punctured).mul(black_box(&shifted)))
    });
    c.bench_function("cylinder/add_canonicalize", |bench| {
        bench.iter(|| black_box(&punctured).add(black_box(&shifted)))
    });
    c.bench_function("cylinder/parse", |bench| {
        bench.iter(|| SteinbergElt::parse(black_box(&g), "Z(v; v; ~es[0]) + Z(es[0]; es[0])"))
    });
}

fn bench_path_algebra(c: &mut Criterion) {
    let g = Arc::new(Graph::parse("vertex v\nedge g v v\nedge h v v\n").expect("two loop rose"));
    let lhs = LpaTerm::parse(&g, "v").expect("parse");
    let rhs = LpaTerm::parse(&g, "g.g* + h.h*").expect("parse");
    c.bench_function("lpa/unit_decomposition_equality", |bench| {
        bench.iter(|| lpa_equals(black_box(&g), black_box(&lhs), black_box(&rhs)))
    });
}

criterion_group!(
    benches,
    bench_decision,
    bench_hs_enumeration,
    bench_span_algebra,
    bench_cylinders,
    bench_path_algebra
);
criterion_main!(benches);
