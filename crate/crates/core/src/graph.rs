//! Directed multigraphs with countably-infinite edge bundles.
//!
//! A graph is a list of named vertices, named ordinary edges, and named
//! bundles; a bundle stands for countably many parallel edges between a fixed
//! source and range, addressed as `name[k]`. Vertices classify as sinks (no
//! outgoing edges), infinite emitters (some outgoing bundle), or regular.
//!
//! The text format is line oriented:
//!
//! ```text
//! # rose with one ordinary loop and a sink
//! vertex v
//! vertex w
//! edge c v v
//! edge d v w
//! ```
//!
//! Cycles here are closed paths whose edge sources are pairwise distinct,
//! reported with the least-named source first. A cycle has an exit when some
//! source on it emits an edge other than the one the cycle uses; a bundle at
//! any source always provides one. Hereditary subsets are closed under
//! ranges of outgoing edges, and saturated subsets absorb every regular
//! vertex all of whose edge ranges they contain.

use crate::limits::LimitExceeded;
use crate::semiring::SemiringDescriptor;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("unknown edge '{0}'")]
    UnknownEdge(String),
    #[error("invalid path '{path}': {msg}")]
    BadPath { path: String, msg: String },
    #[error("duplicate name '{0}'")]
    DuplicateName(String),
    #[error("invalid identifier '{0}'")]
    BadIdentifier(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeDecl {
    name: String,
    source: usize,
    range: usize,
    bundle: bool,
}

/// A concrete edge: an ordinary edge declaration, or member `k` of a bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRef {
    Edge(usize),
    Member(usize, u64),
}

impl EdgeRef {
    pub fn decl_index(&self) -> usize {
        match *self {
            EdgeRef::Edge(i) | EdgeRef::Member(i, _) => i,
        }
    }

    fn key(&self) -> (usize, Option<u64>) {
        match *self {
            EdgeRef::Edge(i) => (i, None),
            EdgeRef::Member(i, k) => (i, Some(k)),
        }
    }
}

impl Ord for EdgeRef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for EdgeRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite path: a start vertex and a composable edge sequence. The empty
/// path at a vertex has equal start and end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub edges: Vec<EdgeRef>,
}

impl Path {
    pub fn empty(vertex: usize) -> Self {
        Path {
            start: vertex,
            end: vertex,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Concatenation; the caller must line up `self.end` with `next.start`.
    pub fn join(&self, next: &Path) -> Path {
        debug_assert_eq!(self.end, next.start);
        let mut edges = self.edges.clone();
        edges.extend(next.edges.iter().copied());
        Path {
            start: self.start,
            end: next.end,
            edges,
        }
    }

    /// Strict prefix test; equality does not count.
    pub fn is_proper_prefix_of(&self, other: &Path) -> bool {
        self.len() < other.len()
            && self.start == other.start
            && other.edges[..self.len()] == self.edges[..]
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.len() <= other.len()
            && self.start == other.start
            && other.edges[..self.len()] == self.edges[..]
    }

    /// The remainder after removing a prefix, so `prefix.join(&rest) == self`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        let edges: Vec<EdgeRef> = self.edges[prefix.len()..].to_vec();
        let start = prefix.end;
        Some(Path {
            start,
            end: self.end,
            edges,
        })
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.start, &self.edges, self.end).cmp(&(
            other.len(),
            other.start,
            &other.edges,
            other.end,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    Sink,
    Regular,
    InfiniteEmitter,
}

/// A closed path with pairwise distinct edge sources, based at its
/// least-named source.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    pub path: Path,
}

impl Cycle {
    pub fn base(&self) -> usize {
        self.path.start
    }

    pub fn uses_bundle(&self) -> bool {
        self.path
            .edges
            .iter()
            .any(|e| matches!(e, EdgeRef::Member(_, _)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeDecl>,
    out: Vec<Vec<usize>>,
    vertex_index: BTreeMap<String, usize>,
    edge_index: BTreeMap<String, usize>,
}

fn valid_id(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Graph {
    pub fn new() -> Self {
        Graph {
            vertices: Vec::new(),
            edges: Vec::new(),
            out: Vec::new(),
            vertex_index: BTreeMap::new(),
            edge_index: BTreeMap::new(),
        }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        if !valid_id(name) {
            return Err(GraphError::BadIdentifier(name.into()));
        }
        if self.vertex_index.contains_key(name) || self.edge_index.contains_key(name) {
            return Err(GraphError::DuplicateName(name.into()));
        }
        let idx = self.vertices.len();
        self.vertices.push(name.into());
        self.out.push(Vec::new());
        self.vertex_index.insert(name.into(), idx);
        Ok(idx)
    }

    pub fn add_edge(&mut self, name: &str, source: &str, range: &str) -> Result<usize, GraphError> {
        self.add_decl(name, source, range, false)
    }

    pub fn add_bundle(
        &mut self,
        name: &str,
        source: &str,
        range: &str,
    ) -> Result<usize, GraphError> {
        self.add_decl(name, source, range, true)
    }

    fn add_decl(
        &mut self,
        name: &str,
        source: &str,
        range: &str,
        bundle: bool,
    ) -> Result<usize, GraphError> {
        if !valid_id(name) {
            return Err(GraphError::BadIdentifier(name.into()));
        }
        if self.vertex_index.contains_key(name) || self.edge_index.contains_key(name) {
            return Err(GraphError::DuplicateName(name.into()));
        }
        let source = self.vertex(source)?;
        let range = self.vertex(range)?;
        let idx = self.edges.len();
        self.edges.push(EdgeDecl {
            name: name.into(),
            source,
            range,
            bundle,
        });
        self.out[source].push(idx);
        self.edge_index.insert(name.into(), idx);
        Ok(idx)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_decl_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.into()))
    }

    pub fn edge_name(&self, decl: usize) -> &str {
        &self.edges[decl].name
    }

    pub fn is_bundle(&self, decl: usize) -> bool {
        self.edges[decl].bundle
    }

    pub fn decl_source(&self, decl: usize) -> usize {
        self.edges[decl].source
    }

    pub fn decl_range(&self, decl: usize) -> usize {
        self.edges[decl].range
    }

    pub fn source_of(&self, e: &EdgeRef) -> usize {
        self.edges[e.decl_index()].source
    }

    pub fn range_of(&self, e: &EdgeRef) -> usize {
        self.edges[e.decl_index()].range
    }

    /// Indices of edge declarations leaving `v`, bundles included.
    pub fn out_decls(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn classify(&self, v: usize) -> VertexClass {
        let decls = &self.out[v];
        if decls.iter().any(|&d| self.edges[d].bundle) {
            VertexClass::InfiniteEmitter
        } else if decls.is_empty() {
            VertexClass::Sink
        } else {
            VertexClass::Regular
        }
    }

    pub fn is_row_finite(&self) -> bool {
        self.edges.iter().all(|e| !e.bundle)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.classify(v) == VertexClass::Sink)
            .collect()
    }

    pub fn infinite_emitters(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.classify(v) == VertexClass::InfiniteEmitter)
            .collect()
    }

    pub fn format_edge_ref(&self, e: &EdgeRef) -> String {
        match *e {
            EdgeRef::Edge(i) => self.edges[i].name.clone(),
            EdgeRef::Member(i, k) => format!("{}[{}]", self.edges[i].name, k),
        }
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_empty() {
            return self.vertices[p.start].clone();
        }
        let parts: Vec<String> = p.edges.iter().map(|e| self.format_edge_ref(e)).collect();
        parts.join(".")
    }

    pub fn parse_edge_ref(&self, token: &str) -> Result<EdgeRef, GraphError> {
        let (name, member) = match token.find('[') {
            Some(open) => {
                let close = token
                    .rfind(']')
                    .filter(|&c| c == token.len() - 1)
                    .ok_or_else(|| GraphError::BadPath {
                        path: token.into(),
                        msg: "unterminated member index".into(),
                    })?;
                let idx: u64 =
                    token[open + 1..close]
                        .parse()
                        .map_err(|_| GraphError::BadPath {
                            path: token.into(),
                            msg: "member index is not a number".into(),
                        })?;
                (&token[..open], Some(idx))
            }
            None => (token, None),
        };
        let decl = *self
            .edge_index
            .get(name)
            .ok_or_else(|| GraphError::UnknownEdge(name.into()))?;
        match (self.edges[decl].bundle, member) {
            (true, Some(k)) => Ok(EdgeRef::Member(decl, k)),
            (false, None) => Ok(EdgeRef::Edge(decl)),
            (true, None) => Err(GraphError::BadPath {
                path: token.into(),
                msg: format!("'{}' is a bundle and needs a member index", name),
            }),
            (false, Some(_)) => Err(GraphError::BadPath {
                path: token.into(),
                msg: format!("'{}' is an ordinary edge, not a bundle", name),
            }),
        }
    }

    /// Parses `v` (empty path at a vertex) or a dot-separated edge sequence
    /// such as `e.f` or `es[0].e`.
    pub fn parse_path(&self, text: &str) -> Result<Path, GraphError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(GraphError::BadPath {
                path: text.into(),
                msg: "empty path expression".into(),
            });
        }
        if let Some(&v) = self.vertex_index.get(text) {
            return Ok(Path::empty(v));
        }
        let mut edges = Vec::new();
        for token in text.split('.') {
            edges.push(self.parse_edge_ref(token.trim())?);
        }
        let start = self.source_of(&edges[0]);
        let mut at = start;
        for e in &edges {
            if self.source_of(e) != at {
                return Err(GraphError::BadPath {
                    path: text.into(),
                    msg: format!(
                        "'{}' does not start at vertex '{}'",
                        self.format_edge_ref(e),
                        self.vertices[at]
                    ),
                });
            }
            at = self.range_of(e);
        }
        Ok(Path {
            start,
            end: at,
            edges,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {}\n", v));
        }
        for e in &self.edges {
            let kind = if e.bundle { "bundle" } else { "edge" };
            out.push_str(&format!(
                "{} {} {} {}\n",
                kind, e.name, self.vertices[e.source], self.vertices[e.range]
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let reword = |e: GraphError| GraphError::Parse {
                line,
                msg: e.to_string(),
            };
            match tokens[0] {
                "vertex" => {
                    if tokens.len() != 2 {
                        return Err(GraphError::Parse {
                            line,
                            msg: "expected: vertex <name>".into(),
                        });
                    }
                    g.add_vertex(tokens[1]).map_err(reword)?;
                }
                "edge" | "bundle" => {
                    if tokens.len() != 4 {
                        return Err(GraphError::Parse {
                            line,
                            msg: format!("expected: {} <name> <source> <range>", tokens[0]),
                        });
                    }
                    g.add_decl(tokens[1], tokens[2], tokens[3], tokens[0] == "bundle")
                        .map_err(reword)?;
                }
                other => {
                    return Err(GraphError::Parse {
                        line,
                        msg: format!("unknown directive '{}'", other),
                    });
                }
            }
        }
        Ok(g)
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// All cycles, each based at its least-named source, sorted. Bundles
/// contribute their member 0 as the representative parallel edge.
pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by(|&a, &b| g.vertex_name(a).cmp(g.vertex_name(b)));
    let mut pos = vec![0usize; n];
    for (r, &v) in rank.iter().enumerate() {
        pos[v] = r;
    }

    let mut cycles = Vec::new();
    for &base in &rank {
        let mut visited = BTreeSet::new();
        let mut path = Vec::new();
        dfs(g, base, base, &pos, &mut visited, &mut path, &mut cycles);
    }
    cycles.sort_by(|a, b| a.path.cmp(&b.path));
    return cycles;

    fn dfs(
        g: &Graph,
        base: usize,
        at: usize,
        pos: &[usize],
        visited: &mut BTreeSet<usize>,
        path: &mut Vec<EdgeRef>,
        cycles: &mut Vec<Cycle>,
    ) {
        visited.insert(at);
        for &decl in g.out_decls(at) {
            let edge = if g.is_bundle(decl) {
                EdgeRef::Member(decl, 0)
            } else {
                EdgeRef::Edge(decl)
            };
            let next = g.decl_range(decl);
            path.push(edge);
            if next == base {
                cycles.push(Cycle {
                    path: Path {
                        start: base,
                        end: base,
                        edges: path.clone(),
                    },
                });
            } else if !visited.contains(&next) && pos[next] > pos[base] {
                dfs(g, base, next, pos, visited, path, cycles);
            }
            path.pop();
        }
        visited.remove(&at);
    }
}

/// Whether some source on the cycle emits a concrete edge the cycle does not
/// use. A bundle at a source always does, even when the cycle runs through
/// that bundle, since other members remain.
pub fn cycle_has_exit(g: &Graph, cycle: &Cycle) -> bool {
    for e in &cycle.path.edges {
        let v = g.source_of(e);
        let decls = g.out_decls(v);
        if decls.iter().any(|&d| g.is_bundle(d)) {
            return true;
        }
        if decls.len() >= 2 {
            return true;
        }
    }
    false
}

/// Returns a cycle without an exit if one exists; `None` means every cycle
/// has an exit.
pub fn condition_l(g: &Graph) -> Option<Cycle> {
    enumerate_cycles(g)
        .into_iter()
        .find(|c| !cycle_has_exit(g, c))
}

/// Least superset of `seed` closed hereditarily (ranges of outgoing edges)
/// and under saturation (a regular vertex all of whose edge ranges lie inside
/// joins).
pub fn hs_closure(g: &Graph, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut h = seed.clone();
    loop {
        let mut changed = false;
        for v in h.clone() {
            for &d in g.out_decls(v) {
                if h.insert(g.decl_range(d)) {
                    changed = true;
                }
            }
        }
        for v in 0..g.vertex_count() {
            if h.contains(&v) || g.classify(v) != VertexClass::Regular {
                continue;
            }
            if g.out_decls(v).iter().all(|&d| h.contains(&g.decl_range(d))) {
                h.insert(v);
                changed = true;
            }
        }
        if !changed {
            return h;
        }
    }
}

/// Every hereditary and saturated subset, the empty set and the full vertex
/// set included, in subset-mask order.
pub fn all_hereditary_saturated(
    g: &Graph,
    limits: &crate::limits::Limits,
) -> Result<Vec<BTreeSet<usize>>, GraphError> {
    let n = g.vertex_count();
    limits.check_vertices("hereditary saturated subset enumeration", n)?;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if is_hereditary_saturated(g, &set) {
            out.push(set);
        }
    }
    Ok(out)
}

fn is_hereditary_saturated(g: &Graph, set: &BTreeSet<usize>) -> bool {
    for &v in set {
        for &d in g.out_decls(v) {
            if !set.contains(&g.decl_range(d)) {
                return false;
            }
        }
    }
    for v in 0..g.vertex_count() {
        if set.contains(&v) || g.classify(v) != VertexClass::Regular {
            continue;
        }
        if g.out_decls(v).iter().all(|&d| set.contains(&g.decl_range(d))) {
            return false;
        }
    }
    true
}

/// Returns a nonempty proper hereditary saturated subset if one exists. The
/// search closes each singleton: any nonempty hereditary saturated set
/// contains the closure of each of its points, so all closures being full is
/// equivalent to only the trivial subsets existing.
pub fn only_trivial_hs(g: &Graph) -> Option<BTreeSet<usize>> {
    let n = g.vertex_count();
    for v in 0..n {
        let closure = hs_closure(g, &BTreeSet::from([v]));
        if closure.len() < n {
            return Some(closure);
        }
    }
    None
}

/// The three-part simpleness criterion for the convolution algebra of a graph
/// over a commutative coefficient semiring: coefficients must be a field or
/// the Boolean semifield, the graph must have only trivial hereditary
/// saturated subsets, and every cycle must have an exit.
#[derive(Clone, Debug)]
pub struct DecisionVerdict {
    pub simple: bool,
    pub coefficients_ok: bool,
    pub only_trivial_hs: bool,
    pub condition_l: bool,
    pub hs_witness: Option<BTreeSet<usize>>,
    pub cycle_witness: Option<Cycle>,
}

pub fn steinberg_simple_decision(
    g: &Graph,
    semiring: &SemiringDescriptor,
) -> Result<DecisionVerdict, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Unsupported(
            "the empty graph has no unit space".into(),
        ));
    }
    let coefficients_ok = semiring.is_field || semiring.is_boolean;
    let hs_witness = only_trivial_hs(g);
    let cycle_witness = condition_l(g);
    Ok(DecisionVerdict {
        simple: coefficients_ok && hs_witness.is_none() && cycle_witness.is_none(),
        coefficients_ok,
        only_trivial_hs: hs_witness.is_none(),
        condition_l: cycle_witness.is_none(),
        hs_witness,
        cycle_witness,
    })
}

/// Finite paths whose end is a sink, for acyclic graphs without bundles.
/// These are exactly the unit-space points of the associated groupoid.
/// Results are sorted; enumeration stops with an error beyond `cap` paths.
pub fn boundary_paths_finite(g: &Graph, cap: usize) -> Result<Vec<Path>, GraphError> {
    if !g.is_row_finite() {
        return Err(GraphError::Unsupported(
            "bundles give an infinite unit space".into(),
        ));
    }
    if let Some(cycle) = enumerate_cycles(g).into_iter().next() {
        return Err(GraphError::Unsupported(format!(
            "cycles give an infinite unit space (found {})",
            g.format_path(&cycle.path)
        )));
    }
    let mut out: Vec<Path> = Vec::new();
    for v in 0..g.vertex_count() {
        let mut stack = vec![Path::empty(v)];
        while let Some(p) = stack.pop() {
            if g.classify(p.end) == VertexClass::Sink {
                out.push(p.clone());
                if out.len() > cap {
                    return Err(LimitExceeded {
                        what: "unit-space path enumeration".into(),
                        bound: cap,
                        requested: out.len(),
                    }
                    .into());
                }
            }
            for &d in g.out_decls(p.end) {
                let mut q = p.clone();
                q.edges.push(EdgeRef::Edge(d));
                q.end = g.decl_range(d);
                stack.push(q);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::semiring::instantiate_semiring;

    fn graph(text: &str) -> Graph {
        Graph::parse(text).unwrap()
    }

    fn single_edge() -> Graph {
        graph("vertex v\nvertex w\nedge e v w\n")
    }

    fn one_loop() -> Graph {
        graph("vertex v\nedge c v v\n")
    }

    fn two_loops() -> Graph {
        graph("vertex v\nedge g v v\nedge h v v\n")
    }

    fn bundle_loop() -> Graph {
        graph("vertex v\nbundle es v v\n")
    }

    #[test]
    fn parse_and_serialize_round_trip() {
        let text = "vertex v\nvertex w\nedge e v w\nbundle es w w\n";
        let g = graph(text);
        assert_eq!(g.to_text(), text);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::parse("vertex v\n\n# ok\nedgy e v v\n").unwrap_err();
        assert_eq!(err.to_string(), "line 4: unknown directive 'edgy'");
        let err = Graph::parse("vertex v\nedge e v\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2: expected: edge"));
        let err = Graph::parse("vertex v\nvertex v\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: duplicate name 'v'");
        let err = Graph::parse("vertex v\nedge e v u\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: unknown vertex 'u'");
        let err = Graph::parse("vertex 1v\n").unwrap_err();
        assert_eq!(err.to_string(), "line 1: invalid identifier '1v'");
    }

    #[test]
    fn classification_and_row_finiteness() {
        let g = graph("vertex u\nvertex v\nvertex w\nedge e u v\nbundle es v w\n");
        assert_eq!(g.classify(g.vertex("u").unwrap()), VertexClass::Regular);
        assert_eq!(
            g.classify(g.vertex("v").unwrap()),
            VertexClass::InfiniteEmitter
        );
        assert_eq!(g.classify(g.vertex("w").unwrap()), VertexClass::Sink);
        assert!(!g.is_row_finite());
        assert!(single_edge().is_row_finite());
        assert_eq!(g.sinks(), vec![2]);
        assert_eq!(g.infinite_emitters(), vec![1]);
    }

    #[test]
    fn path_parsing_round_trips() {
        let g = graph("vertex v\nvertex w\nedge e v w\nbundle es w w\n");
        for text in ["v", "w", "e", "e.es[0]", "e.es[3].es[0]"] {
            let p = g.parse_path(text).unwrap();
            assert_eq!(g.format_path(&p), text);
        }
        assert!(matches!(
            g.parse_path("es[0].e"),
            Err(GraphError::BadPath { .. })
        ));
        assert!(matches!(g.parse_path("es"), Err(GraphError::BadPath { .. })));
        assert!(matches!(g.parse_path("e[1]"), Err(GraphError::BadPath { .. })));
        assert!(matches!(g.parse_path("q"), Err(GraphError::UnknownEdge(_))));
        let p = g.parse_path("e.es[2]").unwrap();
        assert_eq!(p.start, g.vertex("v").unwrap());
        assert_eq!(p.end, g.vertex("w").unwrap());
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn path_prefix_algebra() {
        let g = graph("vertex v\nedge g v v\nedge h v v\n");
        let gh = g.parse_path("g.h").unwrap();
        let ghg = g.parse_path("g.h.g").unwrap();
        let v = g.parse_path("v").unwrap();
        assert!(gh.is_proper_prefix_of(&ghg));
        assert!(!ghg.is_proper_prefix_of(&gh));
        assert!(v.is_prefix_of(&gh));
        let rest = ghg.strip_prefix(&gh).unwrap();
        assert_eq!(g.format_path(&rest), "g");
        assert_eq!(gh.join(&rest), ghg);
    }

    #[test]
    fn cycle_enumeration_on_roses_and_polygons() {
        assert!(enumerate_cycles(&single_edge()).is_empty());

        let cycles = enumerate_cycles(&one_loop());
        assert_eq!(cycles.len(), 1);
        assert_eq!(one_loop().format_path(&cycles[0].path), "c");

        let cycles = enumerate_cycles(&two_loops());
        assert_eq!(cycles.len(), 2);

        // A triangle yields one cycle, based at the least-named vertex.
        let tri = graph(
            "vertex a\nvertex b\nvertex c\nedge x a b\nedge y b c\nedge z c a\n",
        );
        let cycles = enumerate_cycles(&tri);
        assert_eq!(cycles.len(), 1);
        assert_eq!(tri.format_path(&cycles[0].path), "x.y.z");
        assert_eq!(cycles[0].base(), tri.vertex("a").unwrap());

        let cycles = enumerate_cycles(&bundle_loop());
        assert_eq!(cycles.len(), 1);
        assert!(cycles[0].uses_bundle());
        assert_eq!(bundle_loop().format_path(&cycles[0].path), "es[0]");
    }

    #[test]
    fn exits_and_the_every_cycle_has_an_exit_condition() {
        let r1 = one_loop();
        let witness = condition_l(&r1).expect("the single loop has no exit");
        assert_eq!(r1.format_path(&witness.path), "c");

        assert!(condition_l(&two_loops()).is_none());
        assert!(condition_l(&bundle_loop()).is_none());
        assert!(condition_l(&single_edge()).is_none());

        // A loop with an extra edge to a sink has an exit.
        let g = graph("vertex v\nvertex w\nedge c v v\nedge d v w\n");
        assert!(condition_l(&g).is_none());
    }

    #[test]
    fn hereditary_saturated_closures() {
        let e2 = single_edge();
        let v = e2.vertex("v").unwrap();
        let w = e2.vertex("w").unwrap();
        // {w} saturates upward through the regular vertex v.
        assert_eq!(
            hs_closure(&e2, &BTreeSet::from([w])),
            BTreeSet::from([v, w])
        );
        assert!(only_trivial_hs(&e2).is_none());

        let line = graph(
            "vertex v1\nvertex v2\nvertex v3\nvertex v4\n\
             edge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v4\n",
        );
        assert_eq!(hs_closure(&line, &BTreeSet::from([3])).len(), 4);
        assert_eq!(hs_closure(&line, &BTreeSet::from([1])).len(), 4);
        assert!(only_trivial_hs(&line).is_none());

        // Two isolated sinks: each singleton is hereditary and saturated.
        let two = graph("vertex u\nvertex v\n");
        let witness = only_trivial_hs(&two).unwrap();
        assert_eq!(witness.len(), 1);
        let all = all_hereditary_saturated(&two, &Limits::default()).unwrap();
        assert_eq!(all.len(), 4);

        // A loop feeding a sink: {sink} is proper hereditary saturated.
        let g = graph("vertex v\nvertex w\nedge c v v\nedge d v w\n");
        let witness = only_trivial_hs(&g).unwrap();
        assert_eq!(witness, BTreeSet::from([g.vertex("w").unwrap()]));
        let all = all_hereditary_saturated(&g, &Limits::default()).unwrap();
        assert_eq!(all.len(), 3);

        // Infinite emitters do not saturate: with a bundle v -> w, the set
        // {w} stays proper.
        let g = graph("vertex v\nvertex w\nbundle es v w\n");
        assert_eq!(
            hs_closure(&g, &BTreeSet::from([g.vertex("w").unwrap()])),
            BTreeSet::from([g.vertex("w").unwrap()])
        );
        assert!(only_trivial_hs(&g).is_some());
    }

    #[test]
    fn simpleness_decision_matrix() {
        let b = instantiate_semiring("B").unwrap();
        let n = instantiate_semiring("N").unwrap();

        let verdict = steinberg_simple_decision(&single_edge(), &b).unwrap();
        assert!(verdict.simple);

        let verdict = steinberg_simple_decision(&single_edge(), &n).unwrap();
        assert!(!verdict.simple && !verdict.coefficients_ok);

        let verdict = steinberg_simple_decision(&one_loop(), &b).unwrap();
        assert!(!verdict.simple && !verdict.condition_l);
        assert!(verdict.cycle_witness.is_some());

        let verdict = steinberg_simple_decision(&two_loops(), &b).unwrap();
        assert!(verdict.simple);

        let verdict = steinberg_simple_decision(&bundle_loop(), &b).unwrap();
        assert!(verdict.simple);

        let two = graph("vertex u\nvertex v\n");
        let verdict = steinberg_simple_decision(&two, &b).unwrap();
        assert!(!verdict.simple && !verdict.only_trivial_hs);
        assert!(verdict.hs_witness.is_some());

        assert!(steinberg_simple_decision(&Graph::new(), &b).is_err());
    }

    #[test]
    fn unit_space_paths_of_acyclic_graphs() {
        let e2 = single_edge();
        let paths = boundary_paths_finite(&e2, 64).unwrap();
        let rendered: Vec<String> = paths.iter().map(|p| e2.format_path(p)).collect();
        assert_eq!(rendered, vec!["w", "e"]);

        let line = graph(
            "vertex v1\nvertex v2\nvertex v3\nvertex v4\n\
             edge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v4\n",
        );
        let paths = boundary_paths_finite(&line, 64).unwrap();
        assert_eq!(paths.len(), 4);

        assert!(boundary_paths_finite(&one_loop(), 64).is_err());
        assert!(boundary_paths_finite(&bundle_loop(), 64).is_err());

        // Parallel edge pairs double the path count; the cap turns the
        // blowup into an error.
        let wide = graph(
            "vertex a\nvertex b\nvertex c\n\
             edge p1 a b\nedge p2 a b\nedge q1 b c\nedge q2 b c\n",
        );
        assert_eq!(boundary_paths_finite(&wide, 64).unwrap().len(), 7);
        assert!(boundary_paths_finite(&wide, 3).is_err());
    }
}
