//! The path algebra of a graph over the Boolean semifield and its canonical
//! representation into the cylinder algebra.
//!
//! An element is a finite union of monomials `p q*` where `p` and `q` are
//! paths with a common end. The defining relations are: vertices are
//! orthogonal idempotents (1); an edge is absorbed by its endpoint
//! idempotents on either side (2), and likewise its ghost edge (3); a ghost
//! edge cancels against an edge, `e* f = 0` for `e != f` and `e* e = r(e)`,
//! and at every regular vertex the outgoing edges resolve the identity,
//! `v = sum of e e*` (4). Multiplication of monomials reduces by these rules
//! to a prefix comparison of the middle paths.
//!
//! The representation `pi_e` sends `p q*` to the cylinder `Z(p, q)`. For
//! row-finite graphs it is injective, which [`lpa_equals`] uses to decide
//! equality of terms; graphs with edge bundles are refused there because the
//! term algebra and the cylinder algebra separate. [`graded_uniqueness_check`]
//! and [`ck_uniqueness_check`] decide injectivity of a generator assignment
//! into a finite algebra or into the cylinder algebra, reporting a
//! certificate, an explicit collision witness, or a violated relation.

use crate::algebra::FiniteAlgebra;
use crate::cylinder::{check_path, Cylinder, CylinderError, SteinbergElt};
use crate::graph::{condition_l, enumerate_cycles, Cycle, EdgeRef, Graph, GraphError, Path};
use crate::semiring::{SemiringDescriptor, SemiringKind};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LpaError {
    #[error("term syntax: {0}")]
    Parse(String),
    #[error("monomial paths '{p}' and '{q}' end at different vertices")]
    Mismatched { p: String, q: String },
    #[error("the graph has an edge bundle; equality in the path algebra is only decided for row-finite graphs")]
    NotRowFinite,
    #[error("generator images: {0}")]
    Images(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cylinder(#[from] CylinderError),
}

/// A finite union of monomials `p q*`, stored as the set of path pairs.
/// Addition is union; multiplication reduces pairwise by the ghost-edge
/// cancellation rules. The representation is not canonical for the algebra
/// itself: the regular-vertex relation identifies different terms, which
/// [`lpa_equals`] detects through the cylinder representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LpaTerm {
    monomials: BTreeSet<(Path, Path)>,
}

impl LpaTerm {
    pub fn zero() -> Self {
        LpaTerm::default()
    }

    pub fn vertex(g: &Graph, name: &str) -> Result<Self, LpaError> {
        let v = g.vertex(name)?;
        Ok(LpaTerm {
            monomials: BTreeSet::from([(Path::empty(v), Path::empty(v))]),
        })
    }

    pub fn from_monomials(g: &Graph, pairs: Vec<(Path, Path)>) -> Result<Self, LpaError> {
        let mut monomials = BTreeSet::new();
        for (p, q) in pairs {
            check_path(g, &p)?;
            check_path(g, &q)?;
            if p.end != q.end {
                return Err(LpaError::Mismatched {
                    p: g.format_path(&p),
                    q: g.format_path(&q),
                });
            }
            monomials.insert((p, q));
        }
        Ok(LpaTerm { monomials })
    }

    pub fn monomials(&self) -> &BTreeSet<(Path, Path)> {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut monomials = self.monomials.clone();
        monomials.extend(other.monomials.iter().cloned());
        LpaTerm { monomials }
    }

    /// `(p q*)(r s*)` survives only when one middle path extends the other;
    /// the extension moves to the outer path of the other factor.
    pub fn mul(&self, other: &Self) -> Self {
        let mut monomials = BTreeSet::new();
        for (p, q) in &self.monomials {
            for (r, s) in &other.monomials {
                if let Some(eps) = r.strip_prefix(q) {
                    monomials.insert((p.join(&eps), s.clone()));
                } else if let Some(eps) = q.strip_prefix(r) {
                    monomials.insert((p.clone(), s.join(&eps)));
                }
            }
        }
        LpaTerm { monomials }
    }

    pub fn star(&self) -> Self {
        LpaTerm {
            monomials: self
                .monomials
                .iter()
                .map(|(p, q)| (q.clone(), p.clone()))
                .collect(),
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.monomials.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|(p, q)| display_monomial(g, p, q))
            .collect();
        parts.join(" + ")
    }

    /// Parses a sum of monomials: `0`, `1`, vertex names, and dotted factor
    /// chains like `g.h*` where starred factors (the ghost part, written
    /// innermost first) must come last.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, LpaError> {
        let mut acc = LpaTerm::zero();
        for part in text.split('+') {
            let part = part.trim();
            if part == "0" {
                continue;
            }
            if part == "1" {
                for v in 0..g.vertex_count() {
                    acc = acc.add(&LpaTerm::vertex(g, g.vertex_name(v))?);
                }
                continue;
            }
            acc = acc.add(&parse_monomial(g, part)?);
        }
        Ok(acc)
    }
}

fn display_monomial(g: &Graph, p: &Path, q: &Path) -> String {
    if p.is_empty() && q.is_empty() {
        return g.vertex_name(p.start).into();
    }
    let mut pieces: Vec<String> = p.edges.iter().map(|e| g.format_edge_ref(e)).collect();
    for e in q.edges.iter().rev() {
        pieces.push(format!("{}*", g.format_edge_ref(e)));
    }
    pieces.join(".")
}

fn parse_monomial(g: &Graph, text: &str) -> Result<LpaTerm, LpaError> {
    if text.is_empty() {
        return Err(LpaError::Parse("empty factor".into()));
    }
    let tokens: Vec<&str> = text.split('.').map(str::trim).collect();
    if tokens.len() == 1 && !tokens[0].ends_with('*') && g.vertex(tokens[0]).is_ok() {
        return LpaTerm::vertex(g, tokens[0]);
    }
    let mut plain = Vec::new();
    let mut starred = Vec::new();
    for tok in &tokens {
        if let Some(base) = tok.strip_suffix('*') {
            starred.push(base);
        } else {
            if !starred.is_empty() {
                return Err(LpaError::Parse(format!(
                    "ghost factors must come last in '{text}'"
                )));
            }
            plain.push(*tok);
        }
    }
    let p = if plain.is_empty() {
        None
    } else {
        Some(g.parse_path(&plain.join("."))?)
    };
    let q = if starred.is_empty() {
        None
    } else {
        starred.reverse();
        Some(g.parse_path(&starred.join("."))?)
    };
    let (p, q) = match (p, q) {
        (Some(p), Some(q)) => (p, q),
        (Some(p), None) => {
            let end = p.end;
            (p, Path::empty(end))
        }
        (None, Some(q)) => (Path::empty(q.end), q),
        (None, None) => unreachable!("nonempty monomial has a factor"),
    };
    LpaTerm::from_monomials(g, vec![(p, q)])
}

/// The canonical representation into the cylinder algebra: each monomial
/// `p q*` becomes the cylinder `Z(p, q)`.
pub fn pi_e(g: &Arc<Graph>, term: &LpaTerm) -> Result<SteinbergElt, LpaError> {
    let cyls: Vec<Cylinder> = term
        .monomials
        .iter()
        .map(|(p, q)| Cylinder::new(p.clone(), q.clone()))
        .collect();
    Ok(SteinbergElt::from_cylinders(g, cyls)?)
}

/// Decides equality of two terms in the path algebra of a row-finite graph
/// through the representation, which is injective there. Graphs with bundles
/// are refused: the representation no longer identifies the two algebras.
pub fn lpa_equals(g: &Arc<Graph>, a: &LpaTerm, b: &LpaTerm) -> Result<bool, LpaError> {
    if !g.is_row_finite() {
        return Err(LpaError::NotRowFinite);
    }
    Ok(pi_e(g, a)?.equals(&pi_e(g, b)?)?)
}

/// A Laurent polynomial over the Boolean semifield: the set of exponents
/// with coefficient one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    pub exponents: BTreeSet<i64>,
}

impl LaurentPoly {
    pub fn parse(text: &str) -> Result<Self, LpaError> {
        let mut exponents = BTreeSet::new();
        for part in text.split('+') {
            let part = part.trim();
            let exp = if part == "1" {
                0
            } else if part == "x" {
                1
            } else if let Some(rest) = part.strip_prefix("x^") {
                rest.parse::<i64>()
                    .map_err(|_| LpaError::Parse(format!("bad exponent '{part}'")))?
            } else {
                return Err(LpaError::Parse(format!("bad polynomial term '{part}'")));
            };
            exponents.insert(exp);
        }
        Ok(LaurentPoly { exponents })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&k| match k {
                0 => "1".into(),
                1 => "x".into(),
                k => format!("x^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Substitutes a cycle for the variable: `x^k` becomes the monomial `c^k`
/// for positive `k`, the ghost power for negative `k`, and the base vertex
/// for `k = 0`.
pub fn eval_cycle_poly(g: &Graph, cycle: &Cycle, poly: &LaurentPoly) -> Result<LpaTerm, LpaError> {
    let base = Path::empty(cycle.path.start);
    let mut pairs = Vec::new();
    for &k in &poly.exponents {
        let mut power = base.clone();
        for _ in 0..k.unsigned_abs() {
            power = power.join(&cycle.path);
        }
        if k >= 0 {
            pairs.push((power, base.clone()));
        } else {
            pairs.push((base.clone(), power));
        }
    }
    LpaTerm::from_monomials(g, pairs)
}

/// A generator assignment into a finite algebra: one carrier index per
/// vertex, and one per edge and ghost edge.
#[derive(Clone, Debug)]
pub struct GenImages {
    pub vertices: Vec<usize>,
    pub edges: BTreeMap<EdgeRef, usize>,
    pub ghosts: BTreeMap<EdgeRef, usize>,
}

/// Where the generators are sent: a finite algebra with explicit images, or
/// the cylinder algebra under the canonical representation.
pub enum TargetAlgebra<'a> {
    Finite {
        algebra: &'a FiniteAlgebra,
        images: &'a GenImages,
    },
    CanonicalSteinberg,
}

#[derive(Clone, Debug)]
pub enum UniquenessVerdict {
    Injective {
        certificate: String,
    },
    NotInjective {
        left: LpaTerm,
        right: LpaTerm,
        detail: String,
    },
    RelationViolation {
        detail: String,
    },
    Undecided {
        reason: String,
    },
}

impl UniquenessVerdict {
    pub fn is_injective(&self) -> bool {
        matches!(self, UniquenessVerdict::Injective { .. })
    }
}

fn ordinary_edges(g: &Graph) -> Vec<EdgeRef> {
    (0..g.edge_decl_count())
        .filter(|&d| !g.is_bundle(d))
        .map(EdgeRef::Edge)
        .collect()
}

/// Bundle members probed when validating relations against the canonical
/// representation; the images of the remaining members follow the same
/// closed form.
const BUNDLE_PROBES: u64 = 3;

fn sampled_edges(g: &Graph) -> Vec<EdgeRef> {
    let mut out = Vec::new();
    for d in 0..g.edge_decl_count() {
        if g.is_bundle(d) {
            for k in 0..BUNDLE_PROBES {
                out.push(EdgeRef::Member(d, k));
            }
        } else {
            out.push(EdgeRef::Edge(d));
        }
    }
    out
}

fn check_relations_finite(
    g: &Graph,
    alg: &FiniteAlgebra,
    im: &GenImages,
) -> Result<Option<String>, LpaError> {
    if im.vertices.len() != g.vertex_count() {
        return Err(LpaError::Images(format!(
            "expected {} vertex images, found {}",
            g.vertex_count(),
            im.vertices.len()
        )));
    }
    let edges = ordinary_edges(g);
    for e in &edges {
        if !im.edges.contains_key(e) || !im.ghosts.contains_key(e) {
            return Err(LpaError::Images(format!(
                "missing image for edge '{}'",
                g.format_edge_ref(e)
            )));
        }
    }
    for &i in im
        .vertices
        .iter()
        .chain(im.edges.values())
        .chain(im.ghosts.values())
    {
        if i >= alg.size() {
            return Err(LpaError::Images(format!(
                "image index {i} outside the carrier of {}",
                alg.name()
            )));
        }
    }
    let zero = alg.zero();
    for v in 0..g.vertex_count() {
        for w in 0..g.vertex_count() {
            let got = alg.mul(im.vertices[v], im.vertices[w]);
            let want = if v == w { im.vertices[v] } else { zero };
            if got != want {
                return Ok(Some(format!(
                    "relation (1) fails: images of '{}' and '{}' are not orthogonal idempotents",
                    g.vertex_name(v),
                    g.vertex_name(w)
                )));
            }
        }
    }
    for e in &edges {
        let (s, r) = (g.source_of(e), g.range_of(e));
        let ie = im.edges[e];
        let ig = im.ghosts[e];
        if alg.mul(im.vertices[s], ie) != ie || alg.mul(ie, im.vertices[r]) != ie {
            return Ok(Some(format!(
                "relation (2) fails at edge '{}'",
                g.format_edge_ref(e)
            )));
        }
        if alg.mul(im.vertices[r], ig) != ig || alg.mul(ig, im.vertices[s]) != ig {
            return Ok(Some(format!(
                "relation (3) fails at ghost edge '{}*'",
                g.format_edge_ref(e)
            )));
        }
    }
    for e in &edges {
        for f in &edges {
            let got = alg.mul(im.ghosts[e], im.edges[f]);
            let want = if e == f {
                im.vertices[g.range_of(e)]
            } else {
                zero
            };
            if got != want {
                return Ok(Some(format!(
                    "relation (4) fails: '{}*'.'{}' is wrong",
                    g.format_edge_ref(e),
                    g.format_edge_ref(f)
                )));
            }
        }
    }
    for v in 0..g.vertex_count() {
        if g.classify(v) != crate::graph::VertexClass::Regular {
            continue;
        }
        let mut sum = zero;
        for &d in g.out_decls(v) {
            let e = EdgeRef::Edge(d);
            sum = alg.add(sum, alg.mul(im.edges[&e], im.ghosts[&e]));
        }
        if sum != im.vertices[v] {
            return Ok(Some(format!(
                "relation (4) fails: the edges leaving '{}' do not resolve its idempotent",
                g.vertex_name(v)
            )));
        }
    }
    Ok(None)
}

fn canonical_images(
    g: &Arc<Graph>,
) -> Result<(Vec<SteinbergElt>, BTreeMap<EdgeRef, SteinbergElt>), LpaError> {
    let mut vertices = Vec::new();
    for v in 0..g.vertex_count() {
        vertices.push(SteinbergElt::from_pair(g, Path::empty(v), Path::empty(v))?);
    }
    let mut edges = BTreeMap::new();
    for e in sampled_edges(g) {
        let p = Path {
            start: g.source_of(&e),
            end: g.range_of(&e),
            edges: vec![e],
        };
        let end = p.end;
        edges.insert(e, SteinbergElt::from_pair(g, p, Path::empty(end))?);
    }
    Ok((vertices, edges))
}

fn check_relations_canonical(g: &Arc<Graph>) -> Result<Option<String>, LpaError> {
    let (vs, es) = canonical_images(g)?;
    let zero = SteinbergElt::zero(g);
    for v in 0..g.vertex_count() {
        for w in 0..g.vertex_count() {
            let got = vs[v].mul(&vs[w])?;
            let want = if v == w { vs[v].clone() } else { zero.clone() };
            if !got.equals(&want)? {
                return Ok(Some(format!(
                    "relation (1) fails at '{}' and '{}'",
                    g.vertex_name(v),
                    g.vertex_name(w)
                )));
            }
        }
    }
    for (e, ie) in &es {
        let (s, r) = (g.source_of(e), g.range_of(e));
        let ig = ie.star();
        if !vs[s].mul(ie)?.equals(ie)? || !ie.mul(&vs[r])?.equals(ie)? {
            return Ok(Some(format!(
                "relation (2) fails at edge '{}'",
                g.format_edge_ref(e)
            )));
        }
        if !vs[r].mul(&ig)?.equals(&ig)? || !ig.mul(&vs[s])?.equals(&ig)? {
            return Ok(Some(format!(
                "relation (3) fails at ghost edge '{}*'",
                g.format_edge_ref(e)
            )));
        }
    }
    for (e, ie) in &es {
        for (f, fe) in &es {
            let got = ie.star().mul(fe)?;
            let want = if e == f { vs[g.range_of(e)].clone() } else { zero.clone() };
            if !got.equals(&want)? {
                return Ok(Some(format!(
                    "relation (4) fails: '{}*'.'{}' is wrong",
                    g.format_edge_ref(e),
                    g.format_edge_ref(f)
                )));
            }
        }
    }
    for v in 0..g.vertex_count() {
        if g.classify(v) != crate::graph::VertexClass::Regular {
            continue;
        }
        let mut sum = zero.clone();
        for &d in g.out_decls(v) {
            let ie = &es[&EdgeRef::Edge(d)];
            sum = sum.add(&ie.mul(&ie.star())?)?;
        }
        if !sum.equals(&vs[v])? {
            return Ok(Some(format!(
                "relation (4) fails: the edges leaving '{}' do not resolve its idempotent",
                g.vertex_name(v)
            )));
        }
    }
    Ok(None)
}

const SPAN_CLOSURE_CAP: usize = 4096;

/// Exhaustively decides injectivity for an acyclic row-finite graph and a
/// finite target by closing the generator pairs (representation image,
/// target image) under addition and multiplication. A target value reached
/// from two different representation values is a collision; if the closure
/// completes without one, the assignment is injective on the whole span.
fn acyclic_span_decision(
    g: &Arc<Graph>,
    alg: &FiniteAlgebra,
    im: &GenImages,
) -> Result<UniquenessVerdict, LpaError> {
    struct Entry {
        rep: SteinbergElt,
        target: usize,
        term: LpaTerm,
    }
    let mut entries: Vec<Entry> = Vec::new();
    let mut by_rep: BTreeMap<BTreeSet<Cylinder>, usize> = BTreeMap::new();
    let mut by_target: BTreeMap<usize, usize> = BTreeMap::new();

    let push = |entries: &mut Vec<Entry>,
                    by_rep: &mut BTreeMap<BTreeSet<Cylinder>, usize>,
                    by_target: &mut BTreeMap<usize, usize>,
                    rep: SteinbergElt,
                    target: usize,
                    term: LpaTerm|
     -> Option<UniquenessVerdict> {
        let key = rep.cylinders().clone();
        if let Some(&idx) = by_rep.get(&key) {
            if entries[idx].target != target {
                return Some(UniquenessVerdict::RelationViolation {
                    detail: format!(
                        "images are inconsistent: '{}' receives two different values",
                        entries[idx].term.display(g)
                    ),
                });
            }
            return None;
        }
        if let Some(&idx) = by_target.get(&target) {
            return Some(UniquenessVerdict::NotInjective {
                left: entries[idx].term.clone(),
                right: term,
                detail: "two different elements share a target image".into(),
            });
        }
        by_rep.insert(key, entries.len());
        by_target.insert(target, entries.len());
        entries.push(Entry { rep, target, term });
        None
    };

    let mut seeds: Vec<(SteinbergElt, usize, LpaTerm)> = Vec::new();
    seeds.push((SteinbergElt::zero(g), alg.zero(), LpaTerm::zero()));
    for v in 0..g.vertex_count() {
        let term = LpaTerm::vertex(g, g.vertex_name(v))?;
        seeds.push((pi_e(g, &term)?, im.vertices[v], term));
    }
    for e in ordinary_edges(g) {
        let p = Path {
            start: g.source_of(&e),
            end: g.range_of(&e),
            edges: vec![e],
        };
        let end = p.end;
        let term = LpaTerm::from_monomials(g, vec![(p.clone(), Path::empty(end))])?;
        seeds.push((pi_e(g, &term)?, im.edges[&e], term.clone()));
        let ghost = term.star();
        seeds.push((pi_e(g, &ghost)?, im.ghosts[&e], ghost));
    }
    for (rep, target, term) in seeds {
        if let Some(v) = push(
            &mut entries,
            &mut by_rep,
            &mut by_target,
            rep,
            target,
            term,
        ) {
            return Ok(v);
        }
    }

    let mut i = 0;
    while i < entries.len() {
        if entries.len() > SPAN_CLOSURE_CAP {
            return Ok(UniquenessVerdict::Undecided {
                reason: format!("span closure exceeded {SPAN_CLOSURE_CAP} elements"),
            });
        }
        for j in 0..=i {
            let mut candidates: Vec<(SteinbergElt, usize, LpaTerm)> = Vec::new();
            {
                let (a, b) = (&entries[i], &entries[j]);
                candidates.push((
                    a.rep.add(&b.rep)?,
                    alg.add(a.target, b.target),
                    a.term.add(&b.term),
                ));
                candidates.push((
                    a.rep.mul(&b.rep)?,
                    alg.mul(a.target, b.target),
                    a.term.mul(&b.term),
                ));
                candidates.push((
                    b.rep.mul(&a.rep)?,
                    alg.mul(b.target, a.target),
                    b.term.mul(&a.term),
                ));
            }
            for (rep, target, term) in candidates {
                if let Some(v) = push(
                    &mut entries,
                    &mut by_rep,
                    &mut by_target,
                    rep,
                    target,
                    term,
                ) {
                    return Ok(v);
                }
            }
        }
        i += 1;
    }
    Ok(UniquenessVerdict::Injective {
        certificate: format!(
            "the span of the generator images has {} elements and the target values are pairwise distinct",
            entries.len()
        ),
    })
}

/// Finds the least pair of exponents where the powers of a cycle's image
/// collide; in a finite algebra one always exists.
fn cycle_power_collision(
    g: &Graph,
    alg: &FiniteAlgebra,
    im: &GenImages,
    cycle: &Cycle,
) -> Result<UniquenessVerdict, LpaError> {
    let base = im.vertices[cycle.path.start];
    let mut image = base;
    for e in &cycle.path.edges {
        image = alg.mul(image, im.edges[e]);
    }
    let mut seen: BTreeMap<usize, i64> = BTreeMap::new();
    let mut power = base;
    for k in 0..=alg.size() as i64 {
        if let Some(&j) = seen.get(&power) {
            let left = eval_cycle_poly(
                g,
                cycle,
                &LaurentPoly {
                    exponents: BTreeSet::from([j]),
                },
            )?;
            let right = eval_cycle_poly(
                g,
                cycle,
                &LaurentPoly {
                    exponents: BTreeSet::from([k]),
                },
            )?;
            return Ok(UniquenessVerdict::NotInjective {
                left,
                right,
                detail: format!(
                    "powers {j} and {k} of the cycle '{}' share an image",
                    g.format_path(&cycle.path)
                ),
            });
        }
        seen.insert(power, k);
        power = alg.mul(power, image);
    }
    unreachable!("a finite carrier repeats within carrier-size steps");
}

/// Decides injectivity of a relation-respecting generator assignment using
/// the degree grading. The canonical representation is graded with nonzero
/// vertex images, hence injective. A finite target cannot be injective once
/// the graph has a cycle (the powers of the cycle collide, and the collision
/// is returned as a witness); for acyclic graphs the span is closed
/// exhaustively.
pub fn graded_uniqueness_check(
    g: &Arc<Graph>,
    target: &TargetAlgebra,
) -> Result<UniquenessVerdict, LpaError> {
    match target {
        TargetAlgebra::CanonicalSteinberg => {
            if let Some(detail) = check_relations_canonical(g)? {
                return Ok(UniquenessVerdict::RelationViolation { detail });
            }
            let (vs, es) = canonical_images(g)?;
            for (v, elt) in vs.iter().enumerate() {
                if elt.is_zero() {
                    return Ok(UniquenessVerdict::Undecided {
                        reason: format!("vertex '{}' has a zero image", g.vertex_name(v)),
                    });
                }
            }
            for (e, elt) in &es {
                let homogeneous = elt
                    .cylinders()
                    .iter()
                    .all(|c| c.alpha.len() as i64 - c.beta.len() as i64 == 1);
                if !homogeneous {
                    return Ok(UniquenessVerdict::Undecided {
                        reason: format!(
                            "image of edge '{}' is not homogeneous of degree one",
                            g.format_edge_ref(e)
                        ),
                    });
                }
            }
            Ok(UniquenessVerdict::Injective {
                certificate: "generator images are homogeneous for the path-length grading and every vertex image is nonzero".into(),
            })
        }
        TargetAlgebra::Finite { algebra, images } => {
            if !g.is_row_finite() {
                return Err(LpaError::Images(
                    "finite targets need a row-finite graph: a bundle has infinitely many edges to assign".into(),
                ));
            }
            if let Some(detail) = check_relations_finite(g, algebra, images)? {
                return Ok(UniquenessVerdict::RelationViolation { detail });
            }
            for (v, &i) in images.vertices.iter().enumerate() {
                if i == algebra.zero() {
                    let left = LpaTerm::vertex(g, g.vertex_name(v))?;
                    return Ok(UniquenessVerdict::NotInjective {
                        left,
                        right: LpaTerm::zero(),
                        detail: format!("vertex '{}' maps to zero", g.vertex_name(v)),
                    });
                }
            }
            let cycles = enumerate_cycles(g);
            if let Some(cycle) = cycles.first() {
                return cycle_power_collision(g, algebra, images, cycle);
            }
            acyclic_span_decision(g, algebra, images)
        }
    }
}

/// Injectivity from the cycle structure alone: when every cycle has an exit
/// and every vertex image is nonzero, a relation-respecting assignment is
/// injective. Without an exit somewhere the criterion does not apply and the
/// verdict is undecided.
pub fn ck_uniqueness_check(
    g: &Arc<Graph>,
    target: &TargetAlgebra,
) -> Result<UniquenessVerdict, LpaError> {
    let violation = match target {
        TargetAlgebra::CanonicalSteinberg => check_relations_canonical(g)?,
        TargetAlgebra::Finite { algebra, images } => {
            if !g.is_row_finite() {
                return Err(LpaError::Images(
                    "finite targets need a row-finite graph: a bundle has infinitely many edges to assign".into(),
                ));
            }
            check_relations_finite(g, algebra, images)?
        }
    };
    if let Some(detail) = violation {
        return Ok(UniquenessVerdict::RelationViolation { detail });
    }
    if let Some(cycle) = condition_l(g) {
        return Ok(UniquenessVerdict::Undecided {
            reason: format!(
                "the cycle '{}' has no exit, so the exit criterion does not apply",
                g.format_path(&cycle.path)
            ),
        });
    }
    match target {
        TargetAlgebra::CanonicalSteinberg => {}
        TargetAlgebra::Finite { algebra, images } => {
            for (v, &i) in images.vertices.iter().enumerate() {
                if i == algebra.zero() {
                    let left = LpaTerm::vertex(g, g.vertex_name(v))?;
                    return Ok(UniquenessVerdict::NotInjective {
                        left,
                        right: LpaTerm::zero(),
                        detail: format!("vertex '{}' maps to zero", g.vertex_name(v)),
                    });
                }
            }
        }
    }
    Ok(UniquenessVerdict::Injective {
        certificate: "every cycle has an exit and every vertex image is nonzero".into(),
    })
}

/// The single-vertex graph with one infinite bundle of loops, worked end to
/// end: the representation is not surjective, yet the cylinder algebra is
/// congruence-simple. Whether the two algebras are abstractly isomorphic is
/// left open.
pub fn rose_omega_demo() -> Result<Vec<String>, LpaError> {
    let g = Arc::new(Graph::parse("vertex v\nbundle es v v\n")?);
    let mut lines = Vec::new();
    lines.push("graph: one vertex v carrying an infinite bundle es of loops".into());

    let witness = SteinbergElt::parse(&g, "Z(v; v; ~es[0])")?;
    lines.push(format!(
        "representation image is proper: {} has no exclusion-free form, so pi_E is not surjective",
        witness
    ));

    let filled = SteinbergElt::parse(&g, "Z(v; v; ~es[0]) + Z(es[0]; es[0])")?;
    lines.push(format!(
        "filling the excluded slot lands back in the image: {} equals 1: {}",
        "Z(v; v; ~es[0]) + Z(es[0]; es[0])",
        filled.equals(&SteinbergElt::one(&g))?
    ));

    let verdict =
        crate::graph::steinberg_simple_decision(&g, &SemiringDescriptor::new(SemiringKind::Boolean))?;
    lines.push(format!(
        "cylinder algebra congruence-simple: {} (coefficients {}, trivial hereditary saturated sets {}, every cycle has an exit {})",
        if verdict.simple { "yes" } else { "no" },
        if verdict.coefficients_ok { "ok" } else { "not ok" },
        if verdict.only_trivial_hs { "yes" } else { "no" },
        if verdict.condition_l { "yes" } else { "no" },
    ));

    lines.push(
        "the path algebra maps into but not onto the cylinder algebra over this graph".into(),
    );
    lines.push(
        "whether some other map identifies the two algebras is not decided here: open".into(),
    );
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_semiring, matrix_unit_index};
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

    fn term(g: &Graph, text: &str) -> LpaTerm {
        LpaTerm::parse(g, text).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let r2 = two_loops();
        for text in ["v", "g", "g.h", "g.h*", "h*", "g.g.h*", "g + h.h*"] {
            let t = term(&r2, text);
            assert_eq!(t.display(&r2), text);
            assert_eq!(term(&r2, &t.display(&r2)), t);
        }
        assert_eq!(term(&r2, "0").display(&r2), "0");
        assert_eq!(term(&r2, "1").display(&r2), "v");

        let e2 = single_edge();
        assert_eq!(term(&e2, "1").display(&e2), "v + w");
        assert_eq!(term(&e2, "e*").display(&e2), "e*");

        assert!(matches!(
            LpaTerm::parse(&r2, "g*.h"),
            Err(LpaError::Parse(_))
        ));
        assert!(LpaTerm::parse(&r2, "v.g").is_err());
        let fork = arc("vertex v\nvertex w1\nvertex w2\nedge a v w1\nedge b v w2\n");
        assert!(matches!(
            LpaTerm::parse(&fork, "a.b*"),
            Err(LpaError::Mismatched { .. })
        ));
    }

    #[test]
    fn products_reduce_by_ghost_cancellation() {
        let r2 = two_loops();
        let d = |t: &LpaTerm| t.display(&r2);
        assert_eq!(d(&term(&r2, "g*").mul(&term(&r2, "g"))), "v");
        assert_eq!(d(&term(&r2, "g*").mul(&term(&r2, "h"))), "0");
        assert_eq!(d(&term(&r2, "g").mul(&term(&r2, "h*"))), "g.h*");
        assert_eq!(d(&term(&r2, "g.h").mul(&term(&r2, "h*"))), "g.h.h*");
        assert_eq!(d(&term(&r2, "g*").mul(&term(&r2, "g.h"))), "h");
        assert_eq!(d(&term(&r2, "v").mul(&term(&r2, "g"))), "g");

        let a = term(&r2, "g + h*");
        assert_eq!(a.star().display(&r2), "g* + h");
        assert_eq!(a.star().star(), a);
        let b = term(&r2, "g.g*");
        assert_eq!(
            a.mul(&b).star().display(&r2),
            b.star().mul(&a.star()).display(&r2)
        );
    }

    #[test]
    fn representation_sends_monomials_to_cylinders() {
        let r2 = two_loops();
        let t = term(&r2, "g.h*");
        let img = pi_e(&r2, &t).unwrap();
        assert_eq!(img.to_string(), "Z(g; h)");

        for (a, b) in [("g", "h*"), ("g + h", "g*"), ("g.g*", "h.h* + v")] {
            let (ta, tb) = (term(&r2, a), term(&r2, b));
            let lhs = pi_e(&r2, &ta.mul(&tb)).unwrap();
            let rhs = pi_e(&r2, &ta).unwrap().mul(&pi_e(&r2, &tb).unwrap()).unwrap();
            assert!(lhs.equals(&rhs).unwrap());
            let lhs = pi_e(&r2, &ta.add(&tb)).unwrap();
            let rhs = pi_e(&r2, &ta).unwrap().add(&pi_e(&r2, &tb).unwrap()).unwrap();
            assert!(lhs.equals(&rhs).unwrap());
        }
    }

    #[test]
    fn equality_is_decided_through_the_representation() {
        let r2 = two_loops();
        assert!(lpa_equals(&r2, &term(&r2, "g.g* + h.h*"), &term(&r2, "v")).unwrap());
        assert!(!lpa_equals(&r2, &term(&r2, "g.g*"), &term(&r2, "v")).unwrap());
        let ghost_then_edge = term(&r2, "g*").mul(&term(&r2, "g"));
        assert!(lpa_equals(&r2, &ghost_then_edge, &term(&r2, "v")).unwrap());

        let rose = arc("vertex v\nbundle es v v\n");
        let t = LpaTerm::parse(&rose, "es[0].es[0]*").unwrap();
        assert!(matches!(
            lpa_equals(&rose, &t, &t),
            Err(LpaError::NotRowFinite)
        ));
    }

    #[test]
    fn laurent_polynomials_round_trip_and_evaluate() {
        for text in ["1", "x", "x^-2", "1 + x", "x^-1 + 1 + x^3"] {
            let p = LaurentPoly::parse(text).unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert!(LaurentPoly::parse("x^").is_err());
        assert!(LaurentPoly::parse("y").is_err());

        let r1 = one_loop();
        let cycle = &enumerate_cycles(&r1)[0];
        let t = eval_cycle_poly(&r1, cycle, &LaurentPoly::parse("1 + x").unwrap()).unwrap();
        assert_eq!(t.display(&r1), "v + c");
        let t = eval_cycle_poly(&r1, cycle, &LaurentPoly::parse("x^-2").unwrap()).unwrap();
        assert_eq!(t.display(&r1), "c*.c*");
        let t = eval_cycle_poly(&r1, cycle, &LaurentPoly::parse("x^2").unwrap()).unwrap();
        assert_eq!(t.display(&r1), "c.c");
    }

    #[test]
    fn canonical_representation_is_graded_injective() {
        for g in [single_edge(), one_loop(), two_loops(), arc("vertex v\nbundle es v v\n")] {
            let verdict = graded_uniqueness_check(&g, &TargetAlgebra::CanonicalSteinberg).unwrap();
            assert!(verdict.is_injective(), "graph {:?}: {verdict:?}", g.to_text());
        }
    }

    #[test]
    fn finite_targets_with_cycles_collide_by_pigeonhole() {
        let r1 = one_loop();
        let b = matrix_semiring(1, &Limits::default()).unwrap();
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
        .unwrap();
        match verdict {
            UniquenessVerdict::NotInjective { left, right, .. } => {
                assert_eq!(left.display(&r1), "v");
                assert_eq!(right.display(&r1), "c");
            }
            other => panic!("expected a collision, got {other:?}"),
        }
    }

    #[test]
    fn acyclic_span_decision_separates_good_and_bad_images() {
        let e2 = single_edge();
        let m2 = matrix_semiring(2, &Limits::default()).unwrap();
        let e = EdgeRef::Edge(0);
        let good = GenImages {
            vertices: vec![matrix_unit_index(2, 0, 0), matrix_unit_index(2, 1, 1)],
            edges: BTreeMap::from([(e, matrix_unit_index(2, 0, 1))]),
            ghosts: BTreeMap::from([(e, matrix_unit_index(2, 1, 0))]),
        };
        let verdict = graded_uniqueness_check(
            &e2,
            &TargetAlgebra::Finite {
                algebra: &m2,
                images: &good,
            },
        )
        .unwrap();
        assert!(verdict.is_injective(), "{verdict:?}");

        // All-zero images satisfy every relation but kill the vertices.
        let zeroed = GenImages {
            vertices: vec![0, 0],
            edges: BTreeMap::from([(e, 0)]),
            ghosts: BTreeMap::from([(e, 0)]),
        };
        let verdict = graded_uniqueness_check(
            &e2,
            &TargetAlgebra::Finite {
                algebra: &m2,
                images: &zeroed,
            },
        )
        .unwrap();
        match verdict {
            UniquenessVerdict::NotInjective { left, right, .. } => {
                assert_eq!(left.display(&e2), "v");
                assert!(right.is_zero());
            }
            other => panic!("expected a collision, got {other:?}"),
        }

        // Non-orthogonal vertex images violate relation (1).
        let b = matrix_semiring(1, &Limits::default()).unwrap();
        let collapsed = GenImages {
            vertices: vec![1, 1],
            edges: BTreeMap::from([(e, 1)]),
            ghosts: BTreeMap::from([(e, 1)]),
        };
        let verdict = graded_uniqueness_check(
            &e2,
            &TargetAlgebra::Finite {
                algebra: &b,
                images: &collapsed,
            },
        )
        .unwrap();
        match verdict {
            UniquenessVerdict::RelationViolation { detail } => {
                assert!(detail.contains("relation (1)"), "{detail}");
            }
            other => panic!("expected a relation violation, got {other:?}"),
        }
    }

    #[test]
    fn exit_criterion_applies_exactly_under_condition_l() {
        let e2 = single_edge();
        let m2 = matrix_semiring(2, &Limits::default()).unwrap();
        let e = EdgeRef::Edge(0);
        let good = GenImages {
            vertices: vec![matrix_unit_index(2, 0, 0), matrix_unit_index(2, 1, 1)],
            edges: BTreeMap::from([(e, matrix_unit_index(2, 0, 1))]),
            ghosts: BTreeMap::from([(e, matrix_unit_index(2, 1, 0))]),
        };
        let verdict = ck_uniqueness_check(
            &e2,
            &TargetAlgebra::Finite {
                algebra: &m2,
                images: &good,
            },
        )
        .unwrap();
        assert!(verdict.is_injective(), "{verdict:?}");

        let r1 = one_loop();
        let verdict = ck_uniqueness_check(&r1, &TargetAlgebra::CanonicalSteinberg).unwrap();
        assert!(
            matches!(verdict, UniquenessVerdict::Undecided { .. }),
            "{verdict:?}"
        );
        // The grading still settles what the exit criterion cannot.
        let verdict = graded_uniqueness_check(&r1, &TargetAlgebra::CanonicalSteinberg).unwrap();
        assert!(verdict.is_injective());

        let r2 = two_loops();
        let verdict = ck_uniqueness_check(&r2, &TargetAlgebra::CanonicalSteinberg).unwrap();
        assert!(verdict.is_injective());
    }

    #[test]
    fn rose_omega_demo_reports_the_worked_example() {
        let lines = rose_omega_demo().unwrap();
        let all = lines.join("\n");
        assert!(all.contains("Z(v; v; ~es[0])"), "{all}");
        assert!(all.contains("not surjective"), "{all}");
        assert!(all.contains("congruence-simple: yes"), "{all}");
        assert!(all.contains("equals 1: true"), "{all}");
        assert!(all.contains("open"), "{all}");
    }
}
