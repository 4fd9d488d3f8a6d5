//! End-to-end verification suites.
//!
//! Each check exercises one advertised property of the library against an
//! independent computation: theorem predictions against exhaustive
//! congruence search, the symbolic cylinder calculus against direct morphism
//! enumeration, frozen counts against fresh enumeration, and algebraic laws
//! against randomized instances. [`run_all`] produces one pass/fail line per
//! check; the random parts are driven by a seeded generator so runs are
//! reproducible.

use crate::algebra::{
    function_algebra, group_semiring, matrix_semiring, span_isomorphic, FiniteAlgebra, GroupTable,
};
use crate::congruence::{ideal_closure, is_congruence_simple};
use crate::cylinder::{normalize_cylinder, to_finite_oracle, Cylinder, SteinbergElt};
use crate::graph::{enumerate_cycles, steinberg_simple_decision, EdgeRef, Graph, Path};
use crate::groupoid::{
    build_groupoid, graph_groupoid_finite, groupoid_isomorphic, is_minimal, steinberg_finite,
    verify_simpleness_theorem, GraphGroupoid, GroupoidSpec,
};
use crate::limits::Limits;
use crate::lpa::{
    eval_cycle_poly, graded_uniqueness_check, lpa_equals, pi_e, GenImages, LaurentPoly, LpaTerm,
    TargetAlgebra, UniquenessVerdict,
};
use crate::semilattice::{semilattice_check_noniso, Semilattice};
use crate::semiring::{check_congruence_axioms, instantiate_semiring, AxiomReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// One verification outcome: a suite name, whether it passed, and a short
/// account of what was computed.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn render(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn line(name: &'static str, outcome: Result<String, String>) -> CheckLine {
    match outcome {
        Ok(detail) => CheckLine {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckLine {
            name,
            passed: false,
            detail,
        },
    }
}

fn fail<T, E: std::fmt::Display>(e: E) -> Result<T, String> {
    Err(e.to_string())
}

/// Every bundle-free graph with up to the given number of vertices and
/// labeled edges and no cycles, in a fixed enumeration order.
pub fn acyclic_family(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for nv in 1..=max_vertices {
        for ne in 0..=max_edges {
            let combos = (nv * nv).pow(ne as u32);
            for code in 0..combos {
                let mut g = Graph::new();
                for v in 0..nv {
                    g.add_vertex(&format!("v{}", v + 1)).unwrap();
                }
                let mut c = code;
                let mut ok = true;
                for e in 0..ne {
                    let pair = c % (nv * nv);
                    c /= nv * nv;
                    let (s, t) = (pair / nv, pair % nv);
                    if g
                        .add_edge(
                            &format!("e{}", e + 1),
                            &format!("v{}", s + 1),
                            &format!("v{}", t + 1),
                        )
                        .is_err()
                    {
                        ok = false;
                        break;
                    }
                }
                if ok && enumerate_cycles(&g).is_empty() {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn parse_arc(text: &str) -> Arc<Graph> {
    Arc::new(Graph::parse(text).expect("built-in graph parses"))
}

fn e2() -> Arc<Graph> {
    parse_arc("vertex v\nvertex w\nedge e v w\n")
}

fn line3() -> Arc<Graph> {
    parse_arc("vertex a\nvertex b\nvertex c\nedge e1 a b\nedge e2 b c\n")
}

fn r1() -> Arc<Graph> {
    parse_arc("vertex v\nedge c v v\n")
}

fn r2() -> Arc<Graph> {
    parse_arc("vertex v\nedge g v v\nedge h v v\n")
}

fn rose_bundle() -> Arc<Graph> {
    parse_arc("vertex v\nbundle es v v\n")
}

fn check_groupoid_theorem(limits: &Limits) -> Result<String, String> {
    let specs: Vec<(GroupoidSpec, Option<bool>)> = vec![
        (GroupoidSpec::Pair(1), Some(true)),
        (GroupoidSpec::Pair(2), Some(true)),
        (GroupoidSpec::Pair(3), Some(true)),
        (GroupoidSpec::Group(GroupTable::cyclic(2)), Some(false)),
        (GroupoidSpec::Group(GroupTable::cyclic(3)), Some(false)),
        (GroupoidSpec::Group(GroupTable::cyclic(4)), Some(false)),
        (
            GroupoidSpec::DisjointUnion(vec![GroupoidSpec::Pair(1), GroupoidSpec::Pair(1)]),
            Some(false),
        ),
        (
            GroupoidSpec::DisjointUnion(vec![
                GroupoidSpec::Pair(2),
                GroupoidSpec::Group(GroupTable::cyclic(2)),
            ]),
            Some(false),
        ),
        (
            GroupoidSpec::DisjointUnion(vec![
                GroupoidSpec::Group(GroupTable::cyclic(2)),
                GroupoidSpec::Group(GroupTable::cyclic(3)),
            ]),
            Some(false),
        ),
        (
            GroupoidSpec::DisjointUnion(vec![GroupoidSpec::Pair(2), GroupoidSpec::Pair(2)]),
            Some(false),
        ),
        (
            GroupoidSpec::DisjointUnion(vec![GroupoidSpec::Pair(3), GroupoidSpec::Pair(1)]),
            Some(false),
        ),
    ];
    let mut n = 0;
    for (spec, expected) in &specs {
        let g = build_groupoid(spec, limits).or_else(fail)?;
        let report = verify_simpleness_theorem(&g, limits).or_else(fail)?;
        if !report.agrees {
            return Err(format!(
                "prediction and congruence search disagree on {}",
                report.groupoid
            ));
        }
        if let Some(want) = expected {
            if report.algebra_simple != *want {
                return Err(format!(
                    "{} expected simple={} but search found {}",
                    report.groupoid, want, report.algebra_simple
                ));
            }
        }
        n += 1;
    }
    Ok(format!(
        "minimal-and-effective matched congruence-simplicity on {n} groupoids up to 10 morphisms"
    ))
}

fn check_identifications(limits: &Limits) -> Result<String, String> {
    let mut done = Vec::new();

    for n in 1..=3usize {
        let pg = build_groupoid(&GroupoidSpec::Pair(n), limits).or_else(fail)?;
        let alg = steinberg_finite(&pg, limits).or_else(fail)?;
        let mn = matrix_semiring(n, limits).or_else(fail)?;
        let atom_map: Vec<usize> = (0..pg.size())
            .map(|m| pg.range(m) * n + pg.source(m))
            .collect();
        if !span_isomorphic(&alg, &mn, &atom_map) {
            return Err(format!(
                "pair({n}) algebra is not the {n}x{n} matrix semiring under the unit-indexed map"
            ));
        }
    }
    done.push("pair(n) algebras to matrix semirings for n up to 3");

    let gg = graph_groupoid_finite(&e2(), limits).or_else(fail)?;
    let pair2 = build_groupoid(&GroupoidSpec::Pair(2), limits).or_else(fail)?;
    let id: Vec<usize> = (0..gg.groupoid().size()).collect();
    if !groupoid_isomorphic(gg.groupoid(), &pair2, &id) {
        return Err("single-edge graph groupoid is not the rank-2 pair groupoid".into());
    }
    done.push("single edge to pair(2)");

    let alg = steinberg_finite(gg.groupoid(), limits).or_else(fail)?;
    let m2 = matrix_semiring(2, limits).or_else(fail)?;
    let atom_map: Vec<usize> = (0..gg.groupoid().size())
        .map(|m| {
            let (p, q) = gg.pair(m);
            p * 2 + q
        })
        .collect();
    if !span_isomorphic(&alg, &m2, &atom_map) {
        return Err("single-edge groupoid algebra is not the 2x2 matrix semiring".into());
    }
    done.push("its algebra to M2(B)");

    let e4 = parse_arc(
        "vertex v1\nvertex v2\nvertex v3\nvertex v4\nedge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v4\n",
    );
    let gg4 = graph_groupoid_finite(&e4, limits).or_else(fail)?;
    let pair4 = build_groupoid(&GroupoidSpec::Pair(4), limits).or_else(fail)?;
    let id4: Vec<usize> = (0..gg4.groupoid().size()).collect();
    if !groupoid_isomorphic(gg4.groupoid(), &pair4, &id4) {
        return Err("four-vertex line groupoid is not the rank-4 pair groupoid".into());
    }
    done.push("four-vertex line to pair(4)");

    let z2 = build_groupoid(&GroupoidSpec::Group(GroupTable::cyclic(2)), limits).or_else(fail)?;
    let za = steinberg_finite(&z2, limits).or_else(fail)?;
    let zs = group_semiring(&GroupTable::cyclic(2), limits).or_else(fail)?;
    if !span_isomorphic(&za, &zs, &[0, 1]) {
        return Err("order-2 group groupoid algebra is not the order-2 group semiring".into());
    }
    done.push("group groupoid to group semiring");

    Ok(format!("verified: {}", done.join(", ")))
}

fn check_decision_vs_bruteforce(limits: &Limits) -> Result<String, String> {
    let boolean = instantiate_semiring("B").or_else(fail)?;
    let capped = Limits {
        max_morphisms: 12,
        ..limits.clone()
    };
    let mut compared = 0usize;
    let mut skipped = 0usize;
    let mut simple_seen = 0usize;
    let mut nonsimple_seen = 0usize;
    for g in acyclic_family(3, 3) {
        let gg = match graph_groupoid_finite(&g, &capped) {
            Ok(gg) => gg,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        let decision = steinberg_simple_decision(&g, &boolean).or_else(fail)?;
        let alg = steinberg_finite(gg.groupoid(), limits).or_else(fail)?;
        let direct = is_congruence_simple(&alg).or_else(fail)?.is_simple();
        if decision.simple != direct {
            return Err(format!(
                "criteria say simple={} but congruence search says {} on:\n{}",
                decision.simple,
                direct,
                g.to_text()
            ));
        }
        if direct {
            simple_seen += 1;
        } else {
            nonsimple_seen += 1;
        }
        compared += 1;
    }
    if compared < 40 || simple_seen < 5 || nonsimple_seen < 5 {
        return Err(format!(
            "comparison corpus too thin: {compared} graphs, {simple_seen} simple, {nonsimple_seen} not"
        ));
    }
    Ok(format!(
        "criteria matched exhaustive congruence search on {compared} acyclic graphs ({simple_seen} simple, {nonsimple_seen} not, {skipped} beyond the morphism cap)"
    ))
}

fn cylinder_generators(graph: &Arc<Graph>, gg: &GraphGroupoid) -> Vec<SteinbergElt> {
    let mut by_end: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
    for p in gg.paths() {
        by_end.entry(p.end).or_default().push(p);
    }
    let mut out = Vec::new();
    for group in by_end.values() {
        for p in group {
            for q in group {
                out.push(
                    SteinbergElt::from_pair(graph, (*p).clone(), (*q).clone())
                        .expect("groupoid paths share an end"),
                );
            }
        }
    }
    out
}

fn compose_sets(
    gg: &GraphGroupoid,
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in b {
            if let Some(z) = gg.groupoid().compose(x, y) {
                out.insert(z);
            }
        }
    }
    out
}

fn oracle_pair_check(
    gg: &GraphGroupoid,
    a: &SteinbergElt,
    b: &SteinbergElt,
) -> Result<(), String> {
    let (oa, ob) = (
        to_finite_oracle(a, gg).or_else(fail)?,
        to_finite_oracle(b, gg).or_else(fail)?,
    );
    let sum = a.add(b).or_else(fail)?;
    let union: BTreeSet<usize> = oa.union(&ob).copied().collect();
    if to_finite_oracle(&sum, gg).or_else(fail)? != union {
        return Err(format!("addition disagrees with union on {a} and {b}"));
    }
    let prod = a.mul(b).or_else(fail)?;
    if to_finite_oracle(&prod, gg).or_else(fail)? != compose_sets(gg, &oa, &ob) {
        return Err(format!(
            "multiplication disagrees with composition on {a} and {b}"
        ));
    }
    let inv: BTreeSet<usize> = oa.iter().map(|&m| gg.groupoid().inverse(m)).collect();
    if to_finite_oracle(&a.star(), gg).or_else(fail)? != inv {
        return Err(format!("star disagrees with inversion on {a}"));
    }
    Ok(())
}

fn check_cylinder_oracle(limits: &Limits, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut graphs_swept = 0usize;
    let mut exhaustive_pairs = 0usize;
    let mut random_pairs = 0usize;
    for g in acyclic_family(3, 3) {
        let graph = Arc::new(g);
        let gg = graph_groupoid_finite(&graph, limits).or_else(fail)?;
        let gens = cylinder_generators(&graph, &gg);
        for a in &gens {
            for b in &gens {
                oracle_pair_check(&gg, a, b)?;
                exhaustive_pairs += 1;
            }
        }
        for _ in 0..200 {
            let mut pick = || -> Result<SteinbergElt, String> {
                let mut e = SteinbergElt::zero(&graph);
                for _ in 0..rng.random_range(0..=3usize) {
                    e = e.add(&gens[rng.random_range(0..gens.len())]).or_else(fail)?;
                }
                Ok(e)
            };
            let (a, b) = (pick()?, pick()?);
            oracle_pair_check(&gg, &a, &b)?;
            random_pairs += 1;
        }
        graphs_swept += 1;
    }
    Ok(format!(
        "symbolic operations matched morphism enumeration on {graphs_swept} acyclic graphs: {exhaustive_pairs} generator pairs and {random_pairs} random pairs"
    ))
}

fn random_walk(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize) -> Path {
    let start = rng.random_range(0..g.vertex_count());
    let mut path = Path::empty(start);
    let target = rng.random_range(0..=max_len);
    for _ in 0..target {
        let decls = g.out_decls(path.end);
        if decls.is_empty() {
            break;
        }
        let d = decls[rng.random_range(0..decls.len())];
        let e = if g.is_bundle(d) {
            EdgeRef::Member(d, rng.random_range(0..4))
        } else {
            EdgeRef::Edge(d)
        };
        path.edges.push(e);
        path.end = g.range_of(&e);
    }
    path
}

fn random_cylinder(g: &Graph, rng: &mut ChaCha8Rng) -> Cylinder {
    let alpha = random_walk(g, rng, 3);
    let mut beta = Path::empty(alpha.end);
    for _ in 0..30 {
        let candidate = random_walk(g, rng, 3);
        if candidate.end == alpha.end {
            beta = candidate;
            break;
        }
    }
    let mut excluded = BTreeSet::new();
    if rng.random_bool(0.4) {
        for &d in g.out_decls(alpha.end) {
            if g.is_bundle(d) {
                if rng.random_bool(0.5) {
                    excluded.insert(EdgeRef::Member(d, rng.random_range(0..4)));
                }
            } else if rng.random_bool(0.4) {
                excluded.insert(EdgeRef::Edge(d));
            }
        }
    }
    Cylinder::with_exclusions(alpha, beta, excluded)
}

fn random_elt(g: &Arc<Graph>, rng: &mut ChaCha8Rng) -> SteinbergElt {
    let k = rng.random_range(0..=3usize);
    let cyls: Vec<Cylinder> = (0..k).map(|_| random_cylinder(g, rng)).collect();
    SteinbergElt::from_cylinders(g, cyls).expect("random cylinders are valid")
}

fn check_semiring_laws(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut triples = 0usize;
    for graph in [e2(), r1(), r2(), rose_bundle()] {
        let zero = SteinbergElt::zero(&graph);
        let one = SteinbergElt::one(&graph);
        for _ in 0..1000 {
            let (a, b, c) = (
                random_elt(&graph, rng),
                random_elt(&graph, rng),
                random_elt(&graph, rng),
            );
            let ok = (|| -> Result<bool, crate::cylinder::CylinderError> {
                Ok(a.add(&b)?.add(&c)?.equals(&a.add(&b.add(&c)?)?)?
                    && a.add(&b)?.equals(&b.add(&a)?)?
                    && a.add(&zero)?.equals(&a)?
                    && a.add(&a)?.equals(&a)?
                    && a.mul(&b)?.mul(&c)?.equals(&a.mul(&b.mul(&c)?)?)?
                    && a.mul(&b.add(&c)?)?.equals(&a.mul(&b)?.add(&a.mul(&c)?)?)?
                    && a.add(&b)?.mul(&c)?.equals(&a.mul(&c)?.add(&b.mul(&c)?)?)?
                    && one.mul(&a)?.equals(&a)?
                    && a.mul(&one)?.equals(&a)?
                    && zero.mul(&a)?.equals(&zero)?
                    && a.star().star().equals(&a)?
                    && a.add(&b)?.star().equals(&a.star().add(&b.star())?)?
                    && a.mul(&b)?.star().equals(&b.star().mul(&a.star())?)?)
            })()
            .or_else(fail)?;
            if !ok {
                return Err(format!(
                    "a semiring or involution law failed with a = {a}, b = {b}, c = {c}"
                ));
            }
            triples += 1;
        }
    }
    Ok(format!(
        "semiring and involution laws held on {triples} random triples, 1000 per graph"
    ))
}

fn check_image_membership(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut row_finite_elements = 0usize;
    for graph in [e2(), r1(), r2()] {
        for _ in 0..167 {
            let e = random_elt(&graph, rng);
            if !e.exclusion_free() {
                return Err(format!(
                    "row-finite element {e} kept an exclusion after normalization"
                ));
            }
            row_finite_elements += 1;
        }
    }

    let rose = rose_bundle();
    if !SteinbergElt::one(&rose).exclusion_free() {
        return Err("the vertex indicator over the bundle graph should be in the image".into());
    }
    let mut witnesses = 0usize;
    for k in 0..3 {
        let punctured =
            SteinbergElt::parse(&rose, &format!("Z(v; v; ~es[{k}])")).or_else(fail)?;
        if punctured.exclusion_free() {
            return Err(format!("{punctured} should stay outside the image"));
        }
        if punctured.star().exclusion_free() {
            return Err("the reversed punctured cylinder should stay outside the image".into());
        }
        let filled = SteinbergElt::parse(
            &rose,
            &format!("Z(v; v; ~es[{k}]) + Z(es[{k}]; es[{k}])"),
        )
        .or_else(fail)?;
        if !filled.exclusion_free() {
            return Err(format!("{filled} should land in the image"));
        }
        let wrong_slot = SteinbergElt::parse(
            &rose,
            &format!("Z(v; v; ~es[{k}]) + Z(es[{}]; es[{}])", k + 1, k + 1),
        )
        .or_else(fail)?;
        if wrong_slot.exclusion_free() {
            return Err("filling a different slot should not complete the cylinder".into());
        }
        witnesses += 3;
    }
    Ok(format!(
        "{row_finite_elements} random row-finite elements were exclusion-free; {witnesses} emitter witnesses separated image from non-image"
    ))
}

fn random_term(g: &Graph, rng: &mut ChaCha8Rng) -> LpaTerm {
    let mut pairs = Vec::new();
    for _ in 0..rng.random_range(0..=2usize) {
        let p = random_walk(g, rng, 3);
        for _ in 0..30 {
            let q = random_walk(g, rng, 3);
            if q.end == p.end {
                pairs.push((p.clone(), q));
                break;
            }
        }
    }
    LpaTerm::from_monomials(g, pairs).expect("random walks form monomials")
}

fn relation_holds(g: &Arc<Graph>, lhs: &LpaTerm, rhs: &LpaTerm) -> Result<(), String> {
    if !lpa_equals(g, lhs, rhs).or_else(fail)? {
        return Err(format!(
            "expected {} = {} in the path algebra",
            lhs.display(g),
            rhs.display(g)
        ));
    }
    Ok(())
}

fn check_generator_relations() -> Result<String, String> {
    let mut relations = 0usize;

    let e2 = e2();
    let v = LpaTerm::vertex(&e2, "v").or_else(fail)?;
    let w = LpaTerm::vertex(&e2, "w").or_else(fail)?;
    let e = LpaTerm::parse(&e2, "e").or_else(fail)?;
    for (lhs, rhs) in [
        (v.mul(&v), v.clone()),
        (w.mul(&w), w.clone()),
        (v.mul(&w), LpaTerm::zero()),
        (v.mul(&e), e.clone()),
        (e.mul(&w), e.clone()),
        (w.mul(&e), LpaTerm::zero()),
        (e.star().mul(&e), w.clone()),
        (e.mul(&e.star()), v.clone()),
    ] {
        relation_holds(&e2, &lhs, &rhs)?;
        relations += 1;
    }

    let r2 = r2();
    let v = LpaTerm::vertex(&r2, "v").or_else(fail)?;
    let g = LpaTerm::parse(&r2, "g").or_else(fail)?;
    let h = LpaTerm::parse(&r2, "h").or_else(fail)?;
    let ck = LpaTerm::parse(&r2, "g.g* + h.h*").or_else(fail)?;
    for (lhs, rhs) in [
        (v.mul(&v), v.clone()),
        (v.mul(&g), g.clone()),
        (g.mul(&v), g.clone()),
        (g.star().mul(&g), v.clone()),
        (h.star().mul(&h), v.clone()),
        (g.star().mul(&h), LpaTerm::zero()),
        (h.star().mul(&g), LpaTerm::zero()),
        (ck, v.clone()),
    ] {
        relation_holds(&r2, &lhs, &rhs)?;
        relations += 1;
    }
    Ok(format!("{relations} generator relations certified"))
}

fn check_path_algebra(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let relations = check_generator_relations()?;
    let mut graded = 0usize;
    for graph in [e2(), line3(), r1(), r2(), rose_bundle()] {
        let verdict =
            graded_uniqueness_check(&graph, &TargetAlgebra::CanonicalSteinberg).or_else(fail)?;
        if !verdict.is_injective() {
            return Err(format!(
                "canonical representation not certified injective: {verdict:?}"
            ));
        }
        graded += 1;
    }

    let r2 = r2();
    let mut hom_pairs = 0usize;
    for _ in 0..50 {
        let (a, b) = (random_term(&r2, rng), random_term(&r2, rng));
        let prod_then_map = pi_e(&r2, &a.mul(&b)).or_else(fail)?;
        let map_then_prod = pi_e(&r2, &a)
            .or_else(fail)?
            .mul(&pi_e(&r2, &b).or_else(fail)?)
            .or_else(fail)?;
        if !prod_then_map.equals(&map_then_prod).or_else(fail)? {
            return Err(format!(
                "representation broke a product: {} times {}",
                a.display(&r2),
                b.display(&r2)
            ));
        }
        let sum_then_map = pi_e(&r2, &a.add(&b)).or_else(fail)?;
        let map_then_sum = pi_e(&r2, &a)
            .or_else(fail)?
            .add(&pi_e(&r2, &b).or_else(fail)?)
            .or_else(fail)?;
        if !sum_then_map.equals(&map_then_sum).or_else(fail)? {
            return Err("representation broke a sum".into());
        }
        hom_pairs += 1;
    }
    Ok(format!(
        "{relations}; grading certified on {graded} graphs; representation respected operations on {hom_pairs} random term pairs"
    ))
}

fn eval_term_finite(alg: &FiniteAlgebra, im: &GenImages, term: &LpaTerm) -> usize {
    let mut acc = alg.zero();
    for (p, q) in term.monomials() {
        let mut val = im.vertices[p.start];
        for e in &p.edges {
            val = alg.mul(val, im.edges[e]);
        }
        for e in q.edges.iter().rev() {
            val = alg.mul(val, im.ghosts[e]);
        }
        acc = alg.add(acc, val);
    }
    acc
}

fn check_loop_collapse(limits: &Limits) -> Result<String, String> {
    let r1 = r1();
    let b = matrix_semiring(1, limits).or_else(fail)?;
    let e = EdgeRef::Edge(0);
    let images = GenImages {
        vertices: vec![1],
        edges: BTreeMap::from([(e, 1)]),
        ghosts: BTreeMap::from([(e, 1)]),
    };
    let verdict = graded_uniqueness_check(
        &r1,
        &TargetAlgebra::Finite {
            algebra: &b,
            images: &images,
        },
    )
    .or_else(fail)?;
    let (left, right) = match verdict {
        UniquenessVerdict::NotInjective { left, right, .. } => (left, right),
        other => return Err(format!("expected a collision witness, got {other:?}")),
    };
    if eval_term_finite(&b, &images, &left) != eval_term_finite(&b, &images, &right) {
        return Err("witness terms do not collide in the target".into());
    }
    if lpa_equals(&r1, &left, &right).or_else(fail)? {
        return Err("witness terms are equal in the path algebra, so they witness nothing".into());
    }
    let (dl, dr) = (left.display(&r1), right.display(&r1));
    if dl != "v" || dr != "c" {
        return Err(format!(
            "expected the least witness pair (v, c), got ({dl}, {dr})"
        ));
    }

    let cycle = &enumerate_cycles(&r1)[0];
    let low = eval_cycle_poly(&r1, cycle, &LaurentPoly::parse("1").or_else(fail)?)
        .or_else(fail)?;
    let high = eval_cycle_poly(&r1, cycle, &LaurentPoly::parse("x").or_else(fail)?)
        .or_else(fail)?;
    if (left.clone(), right.clone()) != (low, high) {
        return Err("witness does not come from evaluating x^0 and x^1 at the loop".into());
    }
    Ok(format!(
        "the exitless loop forces image collisions: {dl} and {dr} map together while staying distinct"
    ))
}

fn check_semilattices(limits: &Limits) -> Result<String, String> {
    let two = semilattice_check_noniso(&Semilattice::chain(2).or_else(fail)?, limits)
        .or_else(fail)?;
    if two.refuted != 24 || two.isomorphic() {
        return Err(format!(
            "two-element chain: expected all 24 bijections refuted, got {} with iso {:?}",
            two.refuted, two.iso
        ));
    }
    let three = semilattice_check_noniso(&Semilattice::chain(3).or_else(fail)?, limits)
        .or_else(fail)?;
    if three.refuted != 40320 || three.isomorphic() {
        return Err(format!(
            "three-element chain: expected all 40320 bijections refuted, got {}",
            three.refuted
        ));
    }
    let one = semilattice_check_noniso(&Semilattice::chain(1).or_else(fail)?, limits)
        .or_else(fail)?;
    if !one.isomorphic() {
        return Err("one-element semilattice: the two algebras should coincide".into());
    }
    Ok(
        "meet and delta subset algebras separated by exhausting 24 and 40320 bijections; singleton case isomorphic"
            .into(),
    )
}

fn check_tropical_congruence() -> Result<String, String> {
    let t = instantiate_semiring("T").or_else(fail)?;
    let samples = t.sample(50);
    let zero = t.zero();
    let related = move |a: &crate::semiring::Value, b: &crate::semiring::Value| {
        a == b || (*a != zero && *b != zero)
    };
    let report = check_congruence_axioms(&t, &related, &samples);
    let pairs = match report {
        AxiomReport::NoViolation { pairs_checked } => pairs_checked,
        AxiomReport::Violation { axiom, witness } => {
            return Err(format!(
                "bottom-isolating relation violated {axiom} at {witness}"
            ))
        }
    };

    let diagonal = |a: &crate::semiring::Value, b: &crate::semiring::Value| a == b;
    if !check_congruence_axioms(&t, &diagonal, &samples).is_clean() {
        return Err("the diagonal relation should satisfy every axiom".into());
    }
    let universal = |_: &crate::semiring::Value, _: &crate::semiring::Value| true;
    if !check_congruence_axioms(&t, &universal, &samples).is_clean() {
        return Err("the universal relation should satisfy every axiom".into());
    }

    let b = instantiate_semiring("B").or_else(fail)?;
    let bz = b.zero();
    let bo = b.one();
    let asym = move |a: &crate::semiring::Value, b2: &crate::semiring::Value| {
        !(*a == bz && *b2 == bo)
    };
    match check_congruence_axioms(&b, &asym, &b.sample(2)) {
        AxiomReport::Violation { axiom, .. } if axiom == "symmetry" => {}
        other => {
            return Err(format!(
                "control relation should violate symmetry, got {other}"
            ))
        }
    }
    Ok(format!(
        "bottom-isolating relation passed every axiom on {pairs} sampled pairs; diagonal and universal relations clean; control violation detected"
    ))
}

fn check_ideals(limits: &Limits) -> Result<String, String> {
    let capped = Limits {
        max_morphisms: 12,
        ..limits.clone()
    };
    let mut minimal_instances = 0usize;
    let mut unit_subsets = 0usize;
    for g in acyclic_family(3, 3) {
        let gg = match graph_groupoid_finite(&g, &capped) {
            Ok(gg) => gg,
            Err(_) => continue,
        };
        if !is_minimal(gg.groupoid()) {
            continue;
        }
        let alg = steinberg_finite(gg.groupoid(), limits).or_else(fail)?;
        let units: Vec<usize> = (0..gg.groupoid().size())
            .filter(|&m| gg.groupoid().source(m) == gg.groupoid().range(m))
            .collect();
        let full: Vec<usize> = (0..alg.size()).collect();
        for mask in 1usize..(1 << units.len()) {
            let generator = units
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0usize, |acc, (_, &m)| acc | 1 << m);
            if ideal_closure(&alg, &[generator]).or_else(fail)? != full {
                return Err(format!(
                    "a unit-space generator leaves a proper ideal in a minimal instance:\n{}",
                    g.to_text()
                ));
            }
            unit_subsets += 1;
        }
        minimal_instances += 1;
    }
    if minimal_instances < 5 {
        return Err(format!(
            "only {minimal_instances} minimal instances found; the sweep looks broken"
        ));
    }

    let b2 = function_algebra(2, limits).or_else(fail)?;
    let proper = ideal_closure(&b2, &[1]).or_else(fail)?;
    if proper != vec![0, 1] {
        return Err(format!(
            "principal ideal of a point function should stay proper, got {proper:?}"
        ));
    }

    let mut full_checks = 0usize;
    for alg in [
        matrix_semiring(1, limits).or_else(fail)?,
        matrix_semiring(2, limits).or_else(fail)?,
    ] {
        let everything: Vec<usize> = (0..alg.size()).collect();
        for gen in 1..alg.size() {
            if ideal_closure(&alg, &[gen]).or_else(fail)? != everything {
                return Err(format!(
                    "nonzero principal ideal of {} is proper at generator {gen}",
                    alg.name()
                ));
            }
            full_checks += 1;
        }
    }

    let bz2 = group_semiring(&GroupTable::cyclic(2), limits).or_else(fail)?;
    let everything: Vec<usize> = (0..bz2.size()).collect();
    for gen in [1usize, 2] {
        if ideal_closure(&bz2, &[gen]).or_else(fail)? != everything {
            return Err(
                "a single group element should generate the whole group semiring".into(),
            );
        }
    }
    let top = ideal_closure(&bz2, &[3]).or_else(fail)?;
    if top != vec![0, 3] {
        return Err(format!(
            "the full-group element should generate only itself and zero, got {top:?}"
        ));
    }
    if is_congruence_simple(&bz2).or_else(fail)?.is_simple() {
        return Err("group semiring should not be congruence-simple".into());
    }
    Ok(format!(
        "{unit_subsets} unit-space generators filled the algebra across {minimal_instances} minimal instances; {full_checks} matrix ideals full; group semiring ideals depend on the generator; point ideal stayed proper"
    ))
}

fn expand_one(g: &Graph, elt: &SteinbergElt) -> Option<Vec<Cylinder>> {
    let c = elt.cylinders().iter().next()?;
    let decls = g.out_decls(c.alpha.end);
    if decls.is_empty() {
        return None;
    }
    let mut out: Vec<Cylinder> = elt.cylinders().iter().filter(|x| *x != c).cloned().collect();
    if g.is_bundle(decls[0]) || !c.excluded.is_empty() {
        let d = decls.iter().copied().find(|&d| g.is_bundle(d))?;
        let mut k = 7;
        while c.excluded.contains(&EdgeRef::Member(d, k)) {
            k += 1;
        }
        let e = EdgeRef::Member(d, k);
        let step = Path {
            start: g.source_of(&e),
            end: g.range_of(&e),
            edges: vec![e],
        };
        let mut excluded = c.excluded.clone();
        excluded.insert(e);
        out.push(Cylinder::with_exclusions(
            c.alpha.clone(),
            c.beta.clone(),
            excluded,
        ));
        out.push(Cylinder::new(c.alpha.join(&step), c.beta.join(&step)));
    } else {
        for &d in decls {
            let e = EdgeRef::Edge(d);
            let step = Path {
                start: g.source_of(&e),
                end: g.range_of(&e),
                edges: vec![e],
            };
            out.push(Cylinder::new(c.alpha.join(&step), c.beta.join(&step)));
        }
    }
    Some(out)
}

fn check_canonical_confluence(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut trials = 0usize;
    let mut roundtrips = 0usize;
    for graph in [r2(), rose_bundle()] {
        for _ in 0..1000 {
            let k = rng.random_range(0..=6usize);
            let mut raw = Vec::new();
            for _ in 0..k {
                for c in
                    normalize_cylinder(&graph, random_cylinder(&graph, rng)).or_else(fail)?
                {
                    raw.push(c);
                }
            }
            let all = SteinbergElt::from_cylinders(&graph, raw.clone()).or_else(fail)?;

            let split = rng.random_range(0..=raw.len());
            let (x, y) = raw.split_at(split);
            let via_split = SteinbergElt::from_cylinders(&graph, x.to_vec())
                .or_else(fail)?
                .add(&SteinbergElt::from_cylinders(&graph, y.to_vec()).or_else(fail)?)
                .or_else(fail)?;
            if !all.equals(&via_split).or_else(fail)? {
                return Err(format!(
                    "canonical form depends on assembly order for {all}"
                ));
            }

            let mut incremental = SteinbergElt::zero(&graph);
            for c in &raw {
                incremental = incremental
                    .add(&SteinbergElt::from_cylinders(&graph, vec![c.clone()]).or_else(fail)?)
                    .or_else(fail)?;
            }
            if !all.equals(&incremental).or_else(fail)? {
                return Err("one-at-a-time assembly changed the canonical form".into());
            }

            if let Some(expanded) = expand_one(&graph, &all) {
                let rebuilt = SteinbergElt::from_cylinders(&graph, expanded).or_else(fail)?;
                if !all.equals(&rebuilt).or_else(fail)? {
                    return Err(format!(
                        "splitting a cylinder and re-normalizing changed {all}"
                    ));
                }
                roundtrips += 1;
            }
            trials += 1;
        }
    }
    Ok(format!(
        "{trials} random unions reached one canonical form under three assembly orders; {roundtrips} split-and-merge round trips returned"
    ))
}

/// Runs every suite with the given limits and seed, returning one line per
/// suite in a fixed order.
pub fn run_all(limits: &Limits, seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        line(
            "groupoid simpleness theorem",
            check_groupoid_theorem(limits),
        ),
        line("algebra identifications", check_identifications(limits)),
        line(
            "graph criteria against brute force",
            check_decision_vs_bruteforce(limits),
        ),
        line(
            "cylinder calculus against enumeration",
            check_cylinder_oracle(limits, &mut rng),
        ),
        line("cylinder semiring laws", check_semiring_laws(&mut rng)),
        line(
            "representation image detection",
            check_image_membership(&mut rng),
        ),
        line(
            "path algebra relations and grading",
            check_path_algebra(&mut rng),
        ),
        line("exitless loop collapse", check_loop_collapse(limits)),
        line("semilattice algebra separation", check_semilattices(limits)),
        line("tropical bottom congruence", check_tropical_congruence()),
        line("ideal closures", check_ideals(limits)),
        line(
            "canonical form confluence",
            check_canonical_confluence(&mut rng),
        ),
    ]
}
