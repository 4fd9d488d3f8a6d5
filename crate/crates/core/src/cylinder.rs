//! Compact open cylinder sets and their union/convolution calculus.
//!
//! Over the Boolean semifield the convolution algebra of a graph groupoid is
//! the algebra of compact open subsets: addition is union and multiplication
//! is elementwise composition. Every compact open set is a finite union of
//! generalized cylinders `Z(alpha, beta, F)`: the morphisms `(alpha x, beta x)`
//! over boundary paths `x` from the common end of `alpha` and `beta`, minus
//! those whose first edge lies in the finite exclusion set `F`.
//!
//! [`SteinbergElt`] keeps such a union in a canonical form, so equality of
//! elements is equality of the stored cylinder sets. Normalization keeps
//! exclusions only at infinite emitters (at a regular vertex a punctured
//! cylinder is a finite union of longer ones), and shortens `Z(alpha e,
//! beta e)` to `Z(alpha, beta)` whenever `e` is the only edge leaving its
//! source. Canonical form then greedily merges: contained cylinders are
//! dropped, same-base cylinders intersect their exclusions, a complete family
//! of one-edge extensions collapses to its parent, and a cylinder filling an
//! excluded slot of another is absorbed into it. The result is the set of
//! maximal cylinders contained in the union, which is independent of how the
//! union was assembled.

use crate::graph::{EdgeRef, Graph, GraphError, Path, VertexClass};
use crate::groupoid::GraphGroupoid;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CylinderError {
    #[error("paths '{alpha}' and '{beta}' end at different vertices")]
    MismatchedEnds { alpha: String, beta: String },
    #[error("excluded edge '{edge}' does not leave vertex '{vertex}'")]
    BadExclusion { edge: String, vertex: String },
    #[error("invalid path: {0}")]
    BadPath(String),
    #[error("operands live over different graphs")]
    MixedGraphs,
    #[error("element syntax: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The generalized cylinder `Z(alpha, beta, F)`. Both paths must end at the
/// same vertex and `F` must consist of edges leaving that vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cylinder {
    pub alpha: Path,
    pub beta: Path,
    pub excluded: BTreeSet<EdgeRef>,
}

impl Cylinder {
    pub fn new(alpha: Path, beta: Path) -> Self {
        Cylinder {
            alpha,
            beta,
            excluded: BTreeSet::new(),
        }
    }

    pub fn with_exclusions(alpha: Path, beta: Path, excluded: BTreeSet<EdgeRef>) -> Self {
        Cylinder {
            alpha,
            beta,
            excluded,
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.excluded.is_empty() {
            format!(
                "Z({}; {})",
                g.format_path(&self.alpha),
                g.format_path(&self.beta)
            )
        } else {
            let ex: Vec<String> = self
                .excluded
                .iter()
                .map(|e| format!("~{}", g.format_edge_ref(e)))
                .collect();
            format!(
                "Z({}; {}; {})",
                g.format_path(&self.alpha),
                g.format_path(&self.beta),
                ex.join(",")
            )
        }
    }
}

pub(crate) fn check_path(g: &Graph, p: &Path) -> Result<(), CylinderError> {
    let bad = |msg: String| Err(CylinderError::BadPath(msg));
    if p.start >= g.vertex_count() || p.end >= g.vertex_count() {
        return bad("vertex index out of range".into());
    }
    let mut at = p.start;
    for e in &p.edges {
        if e.decl_index() >= g.edge_decl_count() {
            return bad("edge index out of range".into());
        }
        let is_member = matches!(e, EdgeRef::Member(_, _));
        if is_member != g.is_bundle(e.decl_index()) {
            return bad(format!(
                "edge reference '{}' does not match its declaration",
                g.format_edge_ref(e)
            ));
        }
        if g.source_of(e) != at {
            return bad(format!(
                "edge '{}' does not continue the path",
                g.format_edge_ref(e)
            ));
        }
        at = g.range_of(e);
    }
    if at != p.end {
        return bad("recorded end vertex is wrong".into());
    }
    Ok(())
}

fn single_step(g: &Graph, e: EdgeRef) -> Path {
    Path {
        start: g.source_of(&e),
        end: g.range_of(&e),
        edges: vec![e],
    }
}

fn merge_up(g: &Graph, c: &mut Cylinder) {
    if !c.excluded.is_empty() {
        return;
    }
    while let (Some(&ea), Some(&eb)) = (c.alpha.edges.last(), c.beta.edges.last()) {
        if ea != eb {
            break;
        }
        let EdgeRef::Edge(d) = ea else { break };
        let v = g.decl_source(d);
        if g.out_decls(v) != [d] {
            break;
        }
        c.alpha.edges.pop();
        c.alpha.end = v;
        c.beta.edges.pop();
        c.beta.end = v;
    }
}

/// Validates a cylinder and rewrites it into normal form: zero, one, or
/// several cylinders whose union is the input. Exclusion sets survive only at
/// infinite emitters; at a regular vertex they are expanded into one-edge
/// extensions, and a full exclusion set empties the cylinder.
pub fn normalize_cylinder(g: &Graph, c: Cylinder) -> Result<Vec<Cylinder>, CylinderError> {
    check_path(g, &c.alpha)?;
    check_path(g, &c.beta)?;
    if c.alpha.end != c.beta.end {
        return Err(CylinderError::MismatchedEnds {
            alpha: g.format_path(&c.alpha),
            beta: g.format_path(&c.beta),
        });
    }
    let v = c.alpha.end;
    for e in &c.excluded {
        if e.decl_index() >= g.edge_decl_count()
            || g.is_bundle(e.decl_index()) != matches!(e, EdgeRef::Member(_, _))
            || g.source_of(e) != v
        {
            return Err(CylinderError::BadExclusion {
                edge: g.format_edge_ref(e),
                vertex: g.vertex_name(v).into(),
            });
        }
    }
    if g.classify(v) == VertexClass::Regular && !c.excluded.is_empty() {
        let mut children = Vec::new();
        for &d in g.out_decls(v) {
            let e = EdgeRef::Edge(d);
            if c.excluded.contains(&e) {
                continue;
            }
            let step = single_step(g, e);
            let mut child = Cylinder::new(c.alpha.join(&step), c.beta.join(&step));
            merge_up(g, &mut child);
            children.push(child);
        }
        return Ok(children);
    }
    let mut c = c;
    merge_up(g, &mut c);
    Ok(vec![c])
}

/// How two normalized cylinders sit inside each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderRelation {
    Disjoint,
    Equal,
    FirstInSecond,
    SecondInFirst,
    /// Same base paths at an infinite emitter with incomparable exclusion
    /// sets; the intersection and union are both proper.
    OverlapAtEmitter,
}

/// Compares normalized cylinders. Two cylinders overlap only when one
/// contains the other or they share base paths: a common morphism forces the
/// longer pair to extend the shorter by one common suffix.
pub fn cylinder_compare(_g: &Graph, a: &Cylinder, b: &Cylinder) -> CylinderRelation {
    if a.alpha == b.alpha && a.beta == b.beta {
        return if a.excluded == b.excluded {
            CylinderRelation::Equal
        } else if a.excluded.is_subset(&b.excluded) {
            CylinderRelation::SecondInFirst
        } else if b.excluded.is_subset(&a.excluded) {
            CylinderRelation::FirstInSecond
        } else {
            CylinderRelation::OverlapAtEmitter
        };
    }
    if b.alpha.len() > a.alpha.len() {
        if let (Some(ea), Some(eb)) = (
            b.alpha.strip_prefix(&a.alpha),
            b.beta.strip_prefix(&a.beta),
        ) {
            if ea == eb {
                return if a.excluded.contains(&ea.edges[0]) {
                    CylinderRelation::Disjoint
                } else {
                    CylinderRelation::SecondInFirst
                };
            }
        }
        return CylinderRelation::Disjoint;
    }
    if a.alpha.len() > b.alpha.len() {
        if let (Some(ea), Some(eb)) = (
            a.alpha.strip_prefix(&b.alpha),
            a.beta.strip_prefix(&b.beta),
        ) {
            if ea == eb {
                return if b.excluded.contains(&ea.edges[0]) {
                    CylinderRelation::Disjoint
                } else {
                    CylinderRelation::FirstInSecond
                };
            }
        }
    }
    CylinderRelation::Disjoint
}

/// Composition of two cylinders as morphism sets, in closed form: nonempty
/// exactly when one middle path extends the other, with the extension pushed
/// to the outer path on the opposite side.
fn cylinder_product(g: &Graph, a: &Cylinder, b: &Cylinder) -> Option<Cylinder> {
    if let Some(eps) = b.alpha.strip_prefix(&a.beta) {
        if eps.is_empty() {
            let excluded: BTreeSet<EdgeRef> = a.excluded.union(&b.excluded).copied().collect();
            let mut c = Cylinder::with_exclusions(a.alpha.clone(), b.beta.clone(), excluded);
            merge_up(g, &mut c);
            return Some(c);
        }
        if a.excluded.contains(&eps.edges[0]) {
            return None;
        }
        let mut c = Cylinder::with_exclusions(
            a.alpha.join(&eps),
            b.beta.clone(),
            b.excluded.clone(),
        );
        merge_up(g, &mut c);
        return Some(c);
    }
    if let Some(eps) = a.beta.strip_prefix(&b.alpha) {
        if b.excluded.contains(&eps.edges[0]) {
            return None;
        }
        let mut c = Cylinder::with_exclusions(
            a.alpha.clone(),
            b.beta.join(&eps),
            a.excluded.clone(),
        );
        merge_up(g, &mut c);
        return Some(c);
    }
    None
}

/// Rewrites a set of normalized cylinders to the canonical form of their
/// union: the maximal cylinders contained in it. Every rewrite strictly
/// shrinks the set, so the sweep terminates.
pub fn canonicalize(g: &Graph, input: Vec<Cylinder>) -> BTreeSet<Cylinder> {
    let mut set: BTreeSet<Cylinder> = input.into_iter().collect();
    'fix: loop {
        let items: Vec<Cylinder> = set.iter().cloned().collect();

        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let (a, b) = (&items[i], &items[j]);
                match cylinder_compare(g, a, b) {
                    CylinderRelation::Disjoint | CylinderRelation::Equal => {}
                    CylinderRelation::FirstInSecond => {
                        set.remove(a);
                        continue 'fix;
                    }
                    CylinderRelation::SecondInFirst => {
                        set.remove(b);
                        continue 'fix;
                    }
                    CylinderRelation::OverlapAtEmitter => {
                        let excluded: BTreeSet<EdgeRef> =
                            a.excluded.intersection(&b.excluded).copied().collect();
                        set.remove(a);
                        set.remove(b);
                        let merged =
                            Cylinder::with_exclusions(a.alpha.clone(), a.beta.clone(), excluded);
                        for c in normalize_cylinder(g, merged)
                            .expect("intersecting valid exclusion sets stays valid")
                        {
                            set.insert(c);
                        }
                        continue 'fix;
                    }
                }
            }
        }

        // A complete family of one-edge extensions of a common base collapses
        // to the base cylinder.
        let mut families: BTreeMap<(Path, Path), Vec<(usize, Cylinder)>> = BTreeMap::new();
        for c in &items {
            if !c.excluded.is_empty() || c.alpha.is_empty() || c.beta.is_empty() {
                continue;
            }
            let (ea, eb) = (
                *c.alpha.edges.last().unwrap(),
                *c.beta.edges.last().unwrap(),
            );
            if ea != eb {
                continue;
            }
            let EdgeRef::Edge(d) = ea else { continue };
            let mut pa = c.alpha.clone();
            pa.edges.pop();
            pa.end = g.decl_source(d);
            let mut pb = c.beta.clone();
            pb.edges.pop();
            pb.end = g.decl_source(d);
            families.entry((pa, pb)).or_default().push((d, c.clone()));
        }
        for ((pa, pb), children) in families {
            let v = pa.end;
            if g.classify(v) != VertexClass::Regular {
                continue;
            }
            let present: BTreeSet<usize> = children.iter().map(|&(d, _)| d).collect();
            let full: BTreeSet<usize> = g.out_decls(v).iter().copied().collect();
            if present == full {
                for (_, child) in &children {
                    set.remove(child);
                }
                let mut parent = Cylinder::new(pa, pb);
                merge_up(g, &mut parent);
                set.insert(parent);
                continue 'fix;
            }
        }

        // A cylinder that exactly fills an excluded slot of another is
        // absorbed by removing the exclusion.
        for parent in &items {
            for &e in &parent.excluded {
                let step = single_step(g, e);
                let child =
                    Cylinder::new(parent.alpha.join(&step), parent.beta.join(&step));
                if set.contains(&child) {
                    set.remove(parent);
                    set.remove(&child);
                    let mut excluded = parent.excluded.clone();
                    excluded.remove(&e);
                    let merged = Cylinder::with_exclusions(
                        parent.alpha.clone(),
                        parent.beta.clone(),
                        excluded,
                    );
                    for c in normalize_cylinder(g, merged)
                        .expect("shrinking a valid exclusion set stays valid")
                    {
                        set.insert(c);
                    }
                    continue 'fix;
                }
            }
        }

        return set;
    }
}

/// An element of the cylinder algebra: a canonical finite union of
/// generalized cylinders over one fixed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergElt {
    graph: Arc<Graph>,
    cylinders: BTreeSet<Cylinder>,
}

impl SteinbergElt {
    pub fn zero(graph: &Arc<Graph>) -> Self {
        SteinbergElt {
            graph: Arc::clone(graph),
            cylinders: BTreeSet::new(),
        }
    }

    /// The multiplicative identity: the union of the unit cylinders of all
    /// vertices.
    pub fn one(graph: &Arc<Graph>) -> Self {
        let cyls: Vec<Cylinder> = (0..graph.vertex_count())
            .map(|v| Cylinder::new(Path::empty(v), Path::empty(v)))
            .collect();
        SteinbergElt {
            graph: Arc::clone(graph),
            cylinders: canonicalize(graph, cyls),
        }
    }

    pub fn from_cylinders(
        graph: &Arc<Graph>,
        cylinders: Vec<Cylinder>,
    ) -> Result<Self, CylinderError> {
        let mut normalized = Vec::new();
        for c in cylinders {
            normalized.extend(normalize_cylinder(graph, c)?);
        }
        Ok(SteinbergElt {
            graph: Arc::clone(graph),
            cylinders: canonicalize(graph, normalized),
        })
    }

    /// The indicator of a single cylinder `Z(alpha, beta)`.
    pub fn from_pair(graph: &Arc<Graph>, alpha: Path, beta: Path) -> Result<Self, CylinderError> {
        Self::from_cylinders(graph, vec![Cylinder::new(alpha, beta)])
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn cylinders(&self) -> &BTreeSet<Cylinder> {
        &self.cylinders
    }

    pub fn is_zero(&self) -> bool {
        self.cylinders.is_empty()
    }

    /// True when no cylinder carries exclusions. In canonical form this is
    /// exactly membership in the image of the path-algebra representation:
    /// a union expressible without exclusions has exclusion-free maximal
    /// cylinders, since finitely many extensions can never exhaust the
    /// infinitely many edges at an emitter.
    pub fn exclusion_free(&self) -> bool {
        self.cylinders.iter().all(|c| c.excluded.is_empty())
    }

    fn same_graph(&self, other: &Self) -> Result<(), CylinderError> {
        if Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph {
            Ok(())
        } else {
            Err(CylinderError::MixedGraphs)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CylinderError> {
        self.same_graph(other)?;
        let mut all: Vec<Cylinder> = self.cylinders.iter().cloned().collect();
        all.extend(other.cylinders.iter().cloned());
        Ok(SteinbergElt {
            graph: Arc::clone(&self.graph),
            cylinders: canonicalize(&self.graph, all),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CylinderError> {
        self.same_graph(other)?;
        let mut products = Vec::new();
        for a in &self.cylinders {
            for b in &other.cylinders {
                if let Some(c) = cylinder_product(&self.graph, a, b) {
                    products.push(c);
                }
            }
        }
        Ok(SteinbergElt {
            graph: Arc::clone(&self.graph),
            cylinders: canonicalize(&self.graph, products),
        })
    }

    /// The involution: reverses every cylinder.
    pub fn star(&self) -> Self {
        let flipped: Vec<Cylinder> = self
            .cylinders
            .iter()
            .map(|c| {
                Cylinder::with_exclusions(c.beta.clone(), c.alpha.clone(), c.excluded.clone())
            })
            .collect();
        SteinbergElt {
            graph: Arc::clone(&self.graph),
            cylinders: canonicalize(&self.graph, flipped),
        }
    }

    pub fn equals(&self, other: &Self) -> Result<bool, CylinderError> {
        self.same_graph(other)?;
        Ok(self.cylinders == other.cylinders)
    }

    /// Parses a sum of cylinder literals: `0`, `1`, or terms
    /// `Z(alpha; beta)` and `Z(alpha; beta; ~e1,~e2)` joined by `+`.
    pub fn parse(graph: &Arc<Graph>, text: &str) -> Result<Self, CylinderError> {
        let mut acc = SteinbergElt::zero(graph);
        for term in split_top_level(text, '+') {
            let term = term.trim();
            let part = if term == "0" {
                SteinbergElt::zero(graph)
            } else if term == "1" {
                SteinbergElt::one(graph)
            } else {
                let c = parse_cylinder(graph, term)?;
                SteinbergElt::from_cylinders(graph, vec![c])?
            };
            acc = acc.add(&part)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for SteinbergElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cylinders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .cylinders
            .iter()
            .map(|c| c.display(&self.graph))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            parts.push(std::mem::take(&mut current));
        } else {
            current.push(ch);
        }
    }
    parts.push(current);
    parts
}

/// Parses one cylinder literal `Z(alpha; beta)` or `Z(alpha; beta; ~e1,~e2)`.
pub fn parse_cylinder(g: &Graph, text: &str) -> Result<Cylinder, CylinderError> {
    let text = text.trim();
    let inner = text
        .strip_prefix("Z(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| CylinderError::Parse(format!("expected Z(...), found '{text}'")))?;
    let parts = split_top_level(inner, ';');
    if parts.len() != 2 && parts.len() != 3 {
        return Err(CylinderError::Parse(format!(
            "Z takes 2 or 3 arguments separated by ';', found {} in '{text}'",
            parts.len()
        )));
    }
    let alpha = g.parse_path(parts[0].trim())?;
    let beta = g.parse_path(parts[1].trim())?;
    let mut excluded = BTreeSet::new();
    if parts.len() == 3 {
        for item in parts[2].split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let item = item.strip_prefix('~').ok_or_else(|| {
                CylinderError::Parse(format!(
                    "excluded edges must be written with a leading '~', found '{item}'"
                ))
            })?;
            excluded.insert(g.parse_edge_ref(item.trim())?);
        }
    }
    Ok(Cylinder::with_exclusions(alpha, beta, excluded))
}

/// Enumerates the morphisms of a finite graph groupoid lying in the union
/// represented by `elt`, directly from the definition of each cylinder. This
/// is the reference semantics the symbolic calculus is checked against.
pub fn to_finite_oracle(
    elt: &SteinbergElt,
    gg: &GraphGroupoid,
) -> Result<BTreeSet<usize>, CylinderError> {
    if **elt.graph() != *gg.graph() {
        return Err(CylinderError::MixedGraphs);
    }
    let mut out = BTreeSet::new();
    for c in elt.cylinders() {
        for (pi, p) in gg.paths().iter().enumerate() {
            let Some(x) = p.strip_prefix(&c.alpha) else {
                continue;
            };
            if let Some(first) = x.edges.first() {
                if c.excluded.contains(first) {
                    continue;
                }
            }
            let q = c.beta.join(&x);
            let qi = gg
                .path_index(&q)
                .expect("completing a boundary path yields a boundary path");
            let m = gg
                .morphism(pi, qi)
                .expect("paths with a common end form a morphism");
            out.insert(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::groupoid::graph_groupoid_finite;
    use crate::limits::Limits;

    fn arc(text: &str) -> Arc<Graph> {
        Arc::new(Graph::parse(text).unwrap())
    }

    fn single_edge() -> Arc<Graph> {
        arc("vertex v\nvertex w\nedge e v w\n")
    }

    fn one_loop() -> Arc<Graph> {
        arc("vertex v\nedge c v v\n")
    }

    fn two_loops() -> Arc<Graph> {
        arc("vertex v\nedge g v v\nedge h v v\n")
    }

    fn bundle_rose() -> Arc<Graph> {
        arc("vertex v\nbundle es v v\n")
    }

    fn cyl(g: &Graph, text: &str) -> Cylinder {
        parse_cylinder(g, text).unwrap()
    }

    fn elt(g: &Arc<Graph>, text: &str) -> SteinbergElt {
        SteinbergElt::parse(g, text).unwrap()
    }

    #[test]
    fn normalization_validates_and_rewrites() {
        let e2 = single_edge();
        let err = normalize_cylinder(&e2, cyl(&e2, "Z(e; v)")).unwrap_err();
        assert!(matches!(err, CylinderError::MismatchedEnds { .. }));

        let err = normalize_cylinder(&e2, cyl(&e2, "Z(w; w; ~e)")).unwrap_err();
        assert!(matches!(err, CylinderError::BadExclusion { .. }));

        // Excluding the only edge at a regular vertex empties the cylinder.
        assert!(normalize_cylinder(&e2, cyl(&e2, "Z(v; v; ~e)"))
            .unwrap()
            .is_empty());

        // A single-exit extension shortens to its base.
        let n = normalize_cylinder(&e2, cyl(&e2, "Z(e; e)")).unwrap();
        assert_eq!(n, vec![cyl(&e2, "Z(v; v)")]);

        let r1 = one_loop();
        let n = normalize_cylinder(&r1, cyl(&r1, "Z(c.c; c)")).unwrap();
        assert_eq!(n, vec![cyl(&r1, "Z(c; v)")]);

        // Exclusions at a regular vertex expand into the other edges.
        let r2 = two_loops();
        let n = normalize_cylinder(&r2, cyl(&r2, "Z(v; v; ~g)")).unwrap();
        assert_eq!(n, vec![cyl(&r2, "Z(h; h)")]);

        // Exclusions at an emitter are kept.
        let rose = bundle_rose();
        let n = normalize_cylinder(&rose, cyl(&rose, "Z(v; v; ~es[0])")).unwrap();
        assert_eq!(n, vec![cyl(&rose, "Z(v; v; ~es[0])")]);
    }

    #[test]
    fn comparison_of_cylinders() {
        let r2 = two_loops();
        let base = cyl(&r2, "Z(v; v)");
        let ext = cyl(&r2, "Z(g; g)");
        let cross = cyl(&r2, "Z(g; h)");
        assert_eq!(cylinder_compare(&r2, &base, &ext), CylinderRelation::SecondInFirst);
        assert_eq!(cylinder_compare(&r2, &ext, &base), CylinderRelation::FirstInSecond);
        assert_eq!(cylinder_compare(&r2, &ext, &cross), CylinderRelation::Disjoint);
        assert_eq!(cylinder_compare(&r2, &base, &cross), CylinderRelation::Disjoint);
        assert_eq!(cylinder_compare(&r2, &base, &base), CylinderRelation::Equal);

        let rose = bundle_rose();
        let a = cyl(&rose, "Z(v; v; ~es[0])");
        let b = cyl(&rose, "Z(v; v; ~es[1])");
        let c = cyl(&rose, "Z(v; v; ~es[0],~es[1])");
        assert_eq!(cylinder_compare(&rose, &a, &b), CylinderRelation::OverlapAtEmitter);
        assert_eq!(cylinder_compare(&rose, &a, &c), CylinderRelation::SecondInFirst);
        let slot = cyl(&rose, "Z(es[0]; es[0])");
        assert_eq!(cylinder_compare(&rose, &a, &slot), CylinderRelation::Disjoint);
        let other = cyl(&rose, "Z(es[1]; es[1])");
        assert_eq!(
            cylinder_compare(&rose, &a, &other),
            CylinderRelation::SecondInFirst
        );
    }

    #[test]
    fn products_follow_the_closed_forms() {
        let r2 = two_loops();
        let g = &r2;
        let prod = |a: &str, b: &str| cylinder_product(g, &cyl(g, a), &cyl(g, b));

        assert_eq!(prod("Z(g; v)", "Z(v; h)"), Some(cyl(g, "Z(g; h)")));
        assert_eq!(prod("Z(v; g)", "Z(g; v)"), Some(cyl(g, "Z(v; v)")));
        assert_eq!(prod("Z(v; g)", "Z(h; v)"), None);
        assert_eq!(prod("Z(v; v)", "Z(g; v)"), Some(cyl(g, "Z(g; v)")));
        // The middle extension must avoid the first factor's exclusions.
        let rose = bundle_rose();
        let a = cyl(&rose, "Z(v; v; ~es[0])");
        assert_eq!(cylinder_product(&rose, &a, &cyl(&rose, "Z(es[0]; es[0])")), None);
        assert_eq!(
            cylinder_product(&rose, &a, &cyl(&rose, "Z(es[1]; v)")),
            Some(cyl(&rose, "Z(es[1]; v)"))
        );

        // Inner products can shorten: Z(e; v) * Z(v; e) = Z(e; e) = Z(v; v).
        let e2 = single_edge();
        assert_eq!(
            cylinder_product(&e2, &cyl(&e2, "Z(e; w)"), &cyl(&e2, "Z(w; e)")),
            Some(cyl(&e2, "Z(v; v)"))
        );
    }

    #[test]
    fn canonical_form_merges_families_and_slots() {
        let r2 = two_loops();
        let canon = canonicalize(
            &r2,
            vec![cyl(&r2, "Z(g; g)"), cyl(&r2, "Z(h; h)")],
        );
        assert_eq!(canon, BTreeSet::from([cyl(&r2, "Z(v; v)")]));

        // Contained cylinders are dropped.
        let canon = canonicalize(&r2, vec![cyl(&r2, "Z(v; v)"), cyl(&r2, "Z(g; g)")]);
        assert_eq!(canon, BTreeSet::from([cyl(&r2, "Z(v; v)")]));

        // Incomplete families stay split.
        let canon = canonicalize(&r2, vec![cyl(&r2, "Z(g; g)"), cyl(&r2, "Z(h; v)")]);
        assert_eq!(canon.len(), 2);

        // An excluded slot absorbs the matching cylinder.
        let rose = bundle_rose();
        let canon = canonicalize(
            &rose,
            vec![cyl(&rose, "Z(v; v; ~es[0])"), cyl(&rose, "Z(es[0]; es[0])")],
        );
        assert_eq!(canon, BTreeSet::from([cyl(&rose, "Z(v; v)")]));

        // Same base, incomparable exclusions: intersect.
        let canon = canonicalize(
            &rose,
            vec![cyl(&rose, "Z(v; v; ~es[0],~es[2])"), cyl(&rose, "Z(v; v; ~es[1],~es[2])")],
        );
        assert_eq!(canon, BTreeSet::from([cyl(&rose, "Z(v; v; ~es[2])")]));

        // A partially filled slot does not merge.
        let canon = canonicalize(
            &rose,
            vec![cyl(&rose, "Z(v; v; ~es[0])"), cyl(&rose, "Z(es[0]; es[0]; ~es[1])")],
        );
        assert_eq!(canon.len(), 2);
    }

    #[test]
    fn element_equality_is_representation_independent() {
        let rose = bundle_rose();
        let split = elt(&rose, "Z(v; v; ~es[0]) + Z(es[0]; es[0])");
        let whole = SteinbergElt::one(&rose);
        assert!(split.equals(&whole).unwrap());

        let r2 = two_loops();
        let split = elt(&r2, "Z(g; g) + Z(h; h)");
        assert!(split.equals(&SteinbergElt::one(&r2)).unwrap());
        assert_eq!(split.to_string(), "Z(v; v)");

        let r1 = one_loop();
        assert!(elt(&r1, "Z(c; c)").equals(&SteinbergElt::one(&r1)).unwrap());
    }

    #[test]
    fn ring_identities_hold_on_spot_checks() {
        let r2 = two_loops();
        let one = SteinbergElt::one(&r2);
        let a = elt(&r2, "Z(g; v) + Z(h; h)");
        let b = elt(&r2, "Z(v; g)");
        let c = elt(&r2, "Z(g.h; v)");

        assert!(a.mul(&one).unwrap().equals(&a).unwrap());
        assert!(one.mul(&a).unwrap().equals(&a).unwrap());
        let left = a.add(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        assert!(left.equals(&right).unwrap());
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert!(assoc_l.equals(&assoc_r).unwrap());

        // Star is an involution and reverses products.
        let ab = a.mul(&b).unwrap();
        assert!(ab.star().equals(&b.star().mul(&a.star()).unwrap()).unwrap());
        assert!(a.star().star().equals(&a).unwrap());
    }

    #[test]
    fn exclusion_freeness_detects_the_representation_image() {
        let rose = bundle_rose();
        let punctured = elt(&rose, "Z(v; v; ~es[0])");
        assert!(!punctured.exclusion_free());
        let filled = elt(&rose, "Z(v; v; ~es[0]) + Z(es[0]; es[0])");
        assert!(filled.exclusion_free());
        assert!(SteinbergElt::one(&rose).exclusion_free());
        assert!(SteinbergElt::zero(&rose).exclusion_free());
    }

    #[test]
    fn mixed_graphs_are_rejected() {
        let a = SteinbergElt::one(&one_loop());
        let b = SteinbergElt::one(&two_loops());
        assert!(matches!(a.add(&b), Err(CylinderError::MixedGraphs)));
        assert!(matches!(a.mul(&b), Err(CylinderError::MixedGraphs)));
        assert!(matches!(a.equals(&b), Err(CylinderError::MixedGraphs)));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let rose = bundle_rose();
        for text in [
            "Z(v; v)",
            "Z(es[0]; v)",
            "Z(es[0].es[1]; es[2])",
            "Z(v; v; ~es[0],~es[3])",
        ] {
            let e = elt(&rose, text);
            assert_eq!(e.to_string(), text);
            assert!(SteinbergElt::parse(&rose, &e.to_string())
                .unwrap()
                .equals(&e)
                .unwrap());
        }
        assert_eq!(SteinbergElt::zero(&rose).to_string(), "0");
        let sum = elt(&rose, "Z(es[1]; es[1]) + Z(es[0]; es[0])");
        assert_eq!(sum.to_string(), "Z(es[0]; es[0]) + Z(es[1]; es[1])");
        assert!(SteinbergElt::parse(&rose, "Z(v)").is_err());
        assert!(SteinbergElt::parse(&rose, "Z(v; v; es[0])").is_err());
        assert!(SteinbergElt::parse(&rose, "Y(v,v)").is_err());
    }

    #[test]
    fn finite_oracle_matches_the_symbolic_calculus() {
        let e2 = single_edge();
        let gg = graph_groupoid_finite(&e2, &Limits::default()).unwrap();
        // Units: path list is [w, e]; morphisms 0=(w|w), 1=(e|e), 2=(w|e), 3=(e|w).
        let one = SteinbergElt::one(&e2);
        assert_eq!(to_finite_oracle(&one, &gg).unwrap(), BTreeSet::from([0, 1]));
        let m = elt(&e2, "Z(w; e)");
        assert_eq!(to_finite_oracle(&m, &gg).unwrap(), BTreeSet::from([2]));

        // Products agree with groupoid composition elementwise.
        let a = elt(&e2, "Z(w; e)");
        let b = elt(&e2, "Z(e; w)");
        let ab = a.mul(&b).unwrap();
        let oa = to_finite_oracle(&a, &gg).unwrap();
        let ob = to_finite_oracle(&b, &gg).unwrap();
        let mut direct = BTreeSet::new();
        for &x in &oa {
            for &y in &ob {
                if let Some(z) = gg.groupoid().compose(x, y) {
                    direct.insert(z);
                }
            }
        }
        assert_eq!(to_finite_oracle(&ab, &gg).unwrap(), direct);
    }
}
