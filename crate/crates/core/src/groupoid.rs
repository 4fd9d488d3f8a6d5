//! Finite discrete groupoids and their Boolean convolution algebras.
//!
//! A finite groupoid is stored as a morphism list with source and range
//! units, inverses, and a partial composition table; units come first, so a
//! unit's morphism index doubles as its unit index. [`build_groupoid`]
//! assembles pair groupoids, group groupoids, and disjoint unions from a
//! [`GroupoidSpec`]; [`graph_groupoid_finite`] builds the groupoid of a
//! finite acyclic graph, whose unit space is the set of sink-bound paths and
//! whose morphisms are pairs of paths sharing an endpoint.
//!
//! [`steinberg_finite`] realises the convolution algebra over the Boolean
//! semifield as the subset algebra of the morphism set: addition is union and
//! the product of two subsets collects all defined compositions. For these
//! finite discrete groupoids congruence-simpleness of that algebra is
//! predicted by exactly two groupoid properties, a single orbit (minimality)
//! and trivial isotropy (effectiveness); [`verify_simpleness_theorem`] checks
//! the prediction against the congruence search on the tables.

use crate::algebra::{boolean_span_algebra, group_name, AlgebraError, FiniteAlgebra, GroupTable};
use crate::congruence::{is_congruence_simple, Congruence};
use crate::graph::{boundary_paths_finite, Graph, GraphError, Path};
use crate::limits::{LimitExceeded, Limits};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupoidError {
    #[error("invalid groupoid: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
}

const UNDEF: u16 = u16::MAX;
const HARD_MORPHISM_CAP: usize = 1024;

/// A finite discrete groupoid. Morphism indices `0..unit_count` are the
/// units; `source` and `range` give unit indices, `compose` is row-major with
/// an undefined sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    name: String,
    labels: Vec<String>,
    source: Vec<u16>,
    range: Vec<u16>,
    inverse: Vec<u16>,
    compose: Vec<u16>,
    unit_count: usize,
}

struct Raw {
    labels: Vec<String>,
    source: Vec<u16>,
    range: Vec<u16>,
    inverse: Vec<u16>,
    compose: Vec<u16>,
    unit_count: usize,
}

impl FiniteGroupoid {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    pub fn is_unit(&self, m: usize) -> bool {
        m < self.unit_count
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn source(&self, m: usize) -> usize {
        self.source[m] as usize
    }

    pub fn range(&self, m: usize) -> usize {
        self.range[m] as usize
    }

    pub fn inverse(&self, m: usize) -> usize {
        self.inverse[m] as usize
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let r = self.compose[a * self.size() + b];
        if r == UNDEF {
            None
        } else {
            Some(r as usize)
        }
    }

    fn from_raw(name: String, raw: Raw, limits: &Limits) -> Result<Self, GroupoidError> {
        let n = raw.labels.len();
        limits.check_morphisms("groupoid morphisms", n)?;
        if n > HARD_MORPHISM_CAP {
            return Err(LimitExceeded {
                what: "groupoid morphism table".into(),
                bound: HARD_MORPHISM_CAP,
                requested: n,
            }
            .into());
        }
        let g = FiniteGroupoid {
            name,
            labels: raw.labels,
            source: raw.source,
            range: raw.range,
            inverse: raw.inverse,
            compose: raw.compose,
            unit_count: raw.unit_count,
        };
        validate_groupoid(&g)?;
        Ok(g)
    }
}

/// Checks the groupoid axioms on the tables: units are two-sided identities,
/// composition is defined exactly on matching source/range pairs and is
/// associative, and inverses compose to the expected units.
pub fn validate_groupoid(g: &FiniteGroupoid) -> Result<(), GroupoidError> {
    let n = g.size();
    let bad = |msg: String| Err(GroupoidError::Invalid(msg));
    if n == 0 || g.unit_count == 0 || g.unit_count > n {
        return bad("there must be at least one unit".into());
    }
    for u in 0..g.unit_count {
        if g.source(u) != u || g.range(u) != u {
            return bad(format!("unit {u} must be its own source and range"));
        }
    }
    for m in 0..n {
        if g.source(m) >= g.unit_count || g.range(m) >= g.unit_count {
            return bad(format!("morphism {m} has a non-unit source or range"));
        }
        if g.compose(g.range(m), m) != Some(m) || g.compose(m, g.source(m)) != Some(m) {
            return bad(format!("units do not act as identities at morphism {m}"));
        }
        let inv = g.inverse(m);
        if inv >= n
            || g.source(inv) != g.range(m)
            || g.range(inv) != g.source(m)
            || g.compose(m, inv) != Some(g.range(m))
            || g.compose(inv, m) != Some(g.source(m))
        {
            return bad(format!("morphism {m} lacks a two-sided inverse"));
        }
    }
    // Composability buckets keep the associativity sweep proportional to the
    // number of defined triples rather than the full cube.
    let mut by_range: Vec<Vec<usize>> = vec![Vec::new(); g.unit_count];
    for m in 0..n {
        by_range[g.range(m)].push(m);
    }
    for a in 0..n {
        for b in 0..n {
            let defined = g.source(a) == g.range(b);
            match g.compose(a, b) {
                Some(ab) => {
                    if !defined {
                        return bad(format!(
                            "composition {a}*{b} is defined despite mismatched units"
                        ));
                    }
                    if g.source(ab) != g.source(b) || g.range(ab) != g.range(a) {
                        return bad(format!("composition {a}*{b} has the wrong endpoints"));
                    }
                }
                None => {
                    if defined {
                        return bad(format!(
                            "composition {a}*{b} is undefined despite matching units"
                        ));
                    }
                }
            }
        }
    }
    for a in 0..n {
        for &b in &by_range[g.source(a)] {
            let ab = g.compose(a, b).unwrap();
            for &c in &by_range[g.source(b)] {
                let bc = g.compose(b, c).unwrap();
                if g.compose(ab, c) != g.compose(a, bc) {
                    return bad(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}

/// Shapes of finite groupoids assembled by [`build_groupoid`].
#[derive(Clone, Debug)]
pub enum GroupoidSpec {
    /// The pair groupoid on `n` points: one morphism for each ordered pair.
    Pair(usize),
    /// A group viewed as a one-unit groupoid.
    Group(GroupTable),
    /// Disjoint union of components; morphisms never cross components.
    DisjointUnion(Vec<GroupoidSpec>),
}

impl GroupoidSpec {
    pub fn display_name(&self) -> String {
        match self {
            GroupoidSpec::Pair(n) => format!("pair({n})"),
            GroupoidSpec::Group(t) => group_name(t),
            GroupoidSpec::DisjointUnion(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.display_name()).collect();
                names.join(" + ")
            }
        }
    }
}

pub fn build_groupoid(spec: &GroupoidSpec, limits: &Limits) -> Result<FiniteGroupoid, GroupoidError> {
    let raw = build_raw(spec)?;
    FiniteGroupoid::from_raw(spec.display_name(), raw, limits)
}

fn build_raw(spec: &GroupoidSpec) -> Result<Raw, GroupoidError> {
    match spec {
        GroupoidSpec::Pair(n) => pair_raw(*n),
        GroupoidSpec::Group(t) => Ok(group_raw(t)),
        GroupoidSpec::DisjointUnion(parts) => {
            let raws: Vec<Raw> = parts.iter().map(build_raw).collect::<Result<_, _>>()?;
            match raws.len() {
                0 => Err(GroupoidError::Invalid(
                    "a disjoint union needs at least one component".into(),
                )),
                1 => Ok(raws.into_iter().next().unwrap()),
                _ => Ok(merge_raws(raws)),
            }
        }
    }
}

fn pair_raw(points: usize) -> Result<Raw, GroupoidError> {
    if points == 0 {
        return Err(GroupoidError::Invalid(
            "a pair groupoid needs at least one point".into(),
        ));
    }
    let n = points * points;
    if n > HARD_MORPHISM_CAP {
        return Err(LimitExceeded {
            what: "pair groupoid morphisms".into(),
            bound: HARD_MORPHISM_CAP,
            requested: n,
        }
        .into());
    }
    let mut idx = vec![0usize; points * points];
    let mut next = points;
    for i in 0..points {
        for j in 0..points {
            if i == j {
                idx[i * points + j] = i;
            } else {
                idx[i * points + j] = next;
                next += 1;
            }
        }
    }
    let mut labels = vec![String::new(); n];
    let mut source = vec![0u16; n];
    let mut range = vec![0u16; n];
    let mut inverse = vec![0u16; n];
    let mut compose = vec![UNDEF; n * n];
    for i in 0..points {
        for j in 0..points {
            let m = idx[i * points + j];
            labels[m] = format!("({},{})", i + 1, j + 1);
            source[m] = j as u16;
            range[m] = i as u16;
            inverse[m] = idx[j * points + i] as u16;
        }
    }
    for i in 0..points {
        for j in 0..points {
            for l in 0..points {
                let a = idx[i * points + j];
                let b = idx[j * points + l];
                compose[a * n + b] = idx[i * points + l] as u16;
            }
        }
    }
    Ok(Raw {
        labels,
        source,
        range,
        inverse,
        compose,
        unit_count: points,
    })
}

fn group_raw(t: &GroupTable) -> Raw {
    let order = t.order();
    let id = t.identity();
    let mut perm = vec![id];
    perm.extend((0..order).filter(|&x| x != id));
    let mut new_of_old = vec![0usize; order];
    for (new, &old) in perm.iter().enumerate() {
        new_of_old[old] = new;
    }
    let labels: Vec<String> = perm.iter().map(|&old| t.elems()[old].clone()).collect();
    let mut inverse = vec![0u16; order];
    let mut compose = vec![UNDEF; order * order];
    for (a_new, &a_old) in perm.iter().enumerate() {
        let inv_old = (0..order).find(|&b| t.mul(a_old, b) == id).unwrap();
        inverse[a_new] = new_of_old[inv_old] as u16;
        for (b_new, &b_old) in perm.iter().enumerate() {
            compose[a_new * order + b_new] = new_of_old[t.mul(a_old, b_old)] as u16;
        }
    }
    Raw {
        labels,
        source: vec![0; order],
        range: vec![0; order],
        inverse,
        compose,
        unit_count: 1,
    }
}

fn merge_raws(raws: Vec<Raw>) -> Raw {
    let total_units: usize = raws.iter().map(|r| r.unit_count).sum();
    let total: usize = raws.iter().map(|r| r.labels.len()).sum();
    let mut maps: Vec<Vec<u16>> = Vec::with_capacity(raws.len());
    let mut unit_at = 0usize;
    let mut non_unit_at = total_units;
    for raw in &raws {
        let len = raw.labels.len();
        let mut map = Vec::with_capacity(len);
        for m in 0..len {
            if m < raw.unit_count {
                map.push((unit_at + m) as u16);
            } else {
                map.push((non_unit_at + m - raw.unit_count) as u16);
            }
        }
        unit_at += raw.unit_count;
        non_unit_at += len - raw.unit_count;
        maps.push(map);
    }

    let mut labels = vec![String::new(); total];
    let mut source = vec![0u16; total];
    let mut range = vec![0u16; total];
    let mut inverse = vec![0u16; total];
    let mut compose = vec![UNDEF; total * total];
    for (c, raw) in raws.iter().enumerate() {
        let map = &maps[c];
        let len = raw.labels.len();
        for m in 0..len {
            let g = map[m] as usize;
            labels[g] = format!("g{c}.{}", raw.labels[m]);
            source[g] = map[raw.source[m] as usize];
            range[g] = map[raw.range[m] as usize];
            inverse[g] = map[raw.inverse[m] as usize];
        }
        for a in 0..len {
            for b in 0..len {
                let r = raw.compose[a * len + b];
                if r != UNDEF {
                    compose[(map[a] as usize) * total + map[b] as usize] = map[r as usize];
                }
            }
        }
    }
    Raw {
        labels,
        source,
        range,
        inverse,
        compose,
        unit_count: total_units,
    }
}

/// Single orbit: the units are all connected through morphisms.
pub fn is_minimal(g: &FiniteGroupoid) -> bool {
    let u = g.unit_count();
    let mut root: Vec<usize> = (0..u).collect();
    fn find(root: &mut Vec<usize>, mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for m in 0..g.size() {
        let a = find(&mut root, g.source(m));
        let b = find(&mut root, g.range(m));
        if a != b {
            root[a] = b;
        }
    }
    let first = find(&mut root, 0);
    (0..u).all(|x| find(&mut root, x) == first)
}

/// Trivial isotropy: no non-unit morphism loops at a single unit.
pub fn is_effective(g: &FiniteGroupoid) -> bool {
    (g.unit_count()..g.size()).all(|m| g.source(m) != g.range(m))
}

/// Whether `map` (morphisms of `a` to morphisms of `b`) is a groupoid
/// isomorphism: a bijection preserving units, endpoints, inverses and all
/// compositions, defined and undefined alike.
pub fn groupoid_isomorphic(a: &FiniteGroupoid, b: &FiniteGroupoid, map: &[usize]) -> bool {
    let n = a.size();
    if b.size() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    for m in 0..n {
        if a.is_unit(m) != b.is_unit(map[m])
            || map[a.source(m)] != b.source(map[m])
            || map[a.range(m)] != b.range(map[m])
            || map[a.inverse(m)] != b.inverse(map[m])
        {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            if a.compose(x, y).map(|r| map[r]) != b.compose(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

/// The convolution algebra of a finite discrete groupoid over the Boolean
/// semifield: subsets of morphisms with union and composition-product. The
/// multiplicative identity is the full unit set; the singleton units are
/// recorded as local units.
pub fn steinberg_finite(
    g: &FiniteGroupoid,
    limits: &Limits,
) -> Result<FiniteAlgebra, GroupoidError> {
    let atoms: Vec<String> = (0..g.size()).map(|m| g.label(m).to_string()).collect();
    let one_mask = (1usize << g.unit_count().min(63)) - 1;
    let mut alg = boolean_span_algebra(
        format!("A_B({})", g.name()),
        &atoms,
        |a, b| g.compose(a, b),
        Some(one_mask),
        limits,
    )?;
    alg.set_local_units((0..g.unit_count()).map(|u| 1usize << u).collect());
    Ok(alg)
}

/// Result of checking the simpleness prediction for one groupoid: the
/// algebra-side congruence search must agree with the minimal-and-effective
/// criterion.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub groupoid: String,
    pub carrier: usize,
    pub minimal: bool,
    pub effective: bool,
    pub predicted_simple: bool,
    pub algebra_simple: bool,
    pub agrees: bool,
    pub witness: Option<Congruence>,
}

pub fn verify_simpleness_theorem(
    g: &FiniteGroupoid,
    limits: &Limits,
) -> Result<TheoremReport, GroupoidError> {
    let algebra = steinberg_finite(g, limits)?;
    let verdict = is_congruence_simple(&algebra)?;
    let minimal = is_minimal(g);
    let effective = is_effective(g);
    let predicted_simple = minimal && effective;
    let (algebra_simple, witness) = match verdict {
        crate::congruence::SimplenessVerdict::Simple => (true, None),
        crate::congruence::SimplenessVerdict::NotSimple(w) => (false, Some(w)),
    };
    Ok(TheoremReport {
        groupoid: g.name().to_string(),
        carrier: algebra.size(),
        minimal,
        effective,
        predicted_simple,
        algebra_simple,
        agrees: predicted_simple == algebra_simple,
        witness,
    })
}

/// The groupoid of a finite acyclic graph without bundles: units are the
/// sink-bound paths and a morphism is an ordered pair of paths with the same
/// endpoint, composing by matching the middle path.
#[derive(Clone, Debug)]
pub struct GraphGroupoid {
    graph: Graph,
    paths: Vec<Path>,
    pairs: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    groupoid: FiniteGroupoid,
}

impl GraphGroupoid {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.paths.binary_search(p).ok()
    }

    /// Range and source path indices of a morphism.
    pub fn pair(&self, m: usize) -> (usize, usize) {
        self.pairs[m]
    }

    pub fn morphism(&self, range_path: usize, source_path: usize) -> Option<usize> {
        self.index.get(&(range_path, source_path)).copied()
    }

    /// Degree of a morphism: length difference of its two paths.
    pub fn shift(&self, m: usize) -> i64 {
        let (p, q) = self.pairs[m];
        self.paths[p].len() as i64 - self.paths[q].len() as i64
    }
}

pub fn graph_groupoid_finite(g: &Graph, limits: &Limits) -> Result<GraphGroupoid, GroupoidError> {
    let paths = boundary_paths_finite(g, limits.max_morphisms)?;
    let by_end: BTreeMap<usize, Vec<usize>> = {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            m.entry(p.end).or_default().push(i);
        }
        m
    };
    let total: usize = by_end.values().map(|v| v.len() * v.len()).sum();
    limits.check_morphisms("graph groupoid morphisms", total)?;

    let mut pairs: Vec<(usize, usize)> = (0..paths.len()).map(|i| (i, i)).collect();
    for group in by_end.values() {
        for &i in group {
            for &j in group {
                if i != j {
                    pairs.push((i, j));
                }
            }
        }
    }
    // Non-units follow the units in lexicographic pair order.
    pairs[paths.len()..].sort_unstable();
    let index: BTreeMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(m, &pq)| (pq, m))
        .collect();

    let n = pairs.len();
    let mut labels = Vec::with_capacity(n);
    let mut source = vec![0u16; n];
    let mut range = vec![0u16; n];
    let mut inverse = vec![0u16; n];
    let mut compose = vec![UNDEF; n * n];
    for (m, &(p, q)) in pairs.iter().enumerate() {
        labels.push(format!(
            "({}|{})",
            g.format_path(&paths[p]),
            g.format_path(&paths[q])
        ));
        source[m] = q as u16;
        range[m] = p as u16;
        inverse[m] = index[&(q, p)] as u16;
    }
    for (a, &(p, q)) in pairs.iter().enumerate() {
        for (b, &(r, z)) in pairs.iter().enumerate() {
            if q == r {
                compose[a * n + b] = index[&(p, z)] as u16;
            }
        }
    }
    let raw = Raw {
        labels,
        source,
        range,
        inverse,
        compose,
        unit_count: paths.len(),
    };
    let groupoid = FiniteGroupoid::from_raw("G_E".into(), raw, limits)?;
    Ok(GraphGroupoid {
        graph: g.clone(),
        paths,
        pairs,
        index,
        groupoid,
    })
}
