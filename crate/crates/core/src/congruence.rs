//! Congruences of finite operation-table algebras.
//!
//! A congruence is an equivalence relation compatible with both operations.
//! [`congruence_closure`] saturates a seed relation to the least congruence
//! containing it; [`is_congruence_simple`] decides whether the only
//! congruences are the diagonal and the universal relation, which for a
//! finite hemiring is equivalent to every principal congruence being
//! universal. [`ideal_closure`] and [`hom_kernel`] provide the ideal-theoretic
//! and homomorphism-kernel views used to cross-check simpleness verdicts.
//!
//! Saturation works on a union-find partition: whenever two classes merge,
//! the pairs obtained from the merge under every one-variable translation
//! `x -> x + c`, `x -> x * c`, `x -> c * x` are enqueued. An equivalence
//! closed under these translations is compatible with both operations, so the
//! fixpoint is exactly the congruence generated by the seeds.

use crate::algebra::{AlgebraError, FiniteAlgebra};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// A partition of the carrier into congruence blocks. Block ids are assigned
/// by least member, so reports and comparisons are deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    block: Vec<u32>,
    nblocks: usize,
}

impl Congruence {
    pub fn diagonal(n: usize) -> Self {
        Congruence {
            block: (0..n as u32).collect(),
            nblocks: n,
        }
    }

    pub fn universal(n: usize) -> Self {
        Congruence {
            block: vec![0; n],
            nblocks: if n == 0 { 0 } else { 1 },
        }
    }

    pub fn carrier_size(&self) -> usize {
        self.block.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x] as usize
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn block_count(&self) -> usize {
        self.nblocks
    }

    pub fn is_diagonal(&self) -> bool {
        self.nblocks == self.block.len()
    }

    pub fn is_universal(&self) -> bool {
        self.nblocks <= 1
    }

    pub fn is_proper(&self) -> bool {
        !self.is_universal()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_diagonal() || self.is_universal()
    }

    /// Blocks as sorted lists, enumerated by least member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nblocks];
        for (i, &b) in self.block.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    /// Renders the partition with carrier labels drawn from `alg`.
    pub fn describe(&self, alg: &FiniteAlgebra) -> String {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|block| {
                let labels: Vec<&str> = block.iter().map(|&x| alg.label(x)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        blocks.join(" ")
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.parent.len();
        let mut block = vec![0u32; n];
        let mut ids: BTreeMap<u32, u32> = BTreeMap::new();
        for i in 0..n {
            let root = uf.find(i as u32);
            let next = ids.len() as u32;
            let id = *ids.entry(root).or_insert(next);
            block[i] = id;
        }
        Congruence {
            block,
            nblocks: ids.len(),
        }
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|block| {
                let items: Vec<String> = block.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Callers pass roots; returns false when already merged.
    fn union_roots(&mut self, a: u32, b: u32) -> bool {
        if a == b {
            return false;
        }
        let (big, small) = if self.size[a as usize] >= self.size[b as usize] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        true
    }
}

/// Multiplication columns of `alg`, plus addition columns when addition is
/// not commutative, so saturation can apply left translations with row reads.
struct ClosureCtx {
    mul_t: Vec<u16>,
    add_t: Option<Vec<u16>>,
}

impl ClosureCtx {
    fn new(alg: &FiniteAlgebra) -> Self {
        let n = alg.size();
        let mut mul_t = vec![0u16; n * n];
        for a in 0..n {
            let row = alg.mul_row(a);
            for b in 0..n {
                mul_t[b * n + a] = row[b];
            }
        }
        let commutative =
            (0..n).all(|a| (0..n).all(|b| alg.add(a, b) == alg.add(b, a)));
        let add_t = if commutative {
            None
        } else {
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                let row = alg.add_row(a);
                for b in 0..n {
                    t[b * n + a] = row[b];
                }
            }
            Some(t)
        };
        ClosureCtx { mul_t, add_t }
    }
}

/// Saturates the seeds and returns the union-find with its class count.
/// With `stop_at_universal`, returns as soon as one class remains.
fn saturate(
    alg: &FiniteAlgebra,
    ctx: &ClosureCtx,
    seeds: &[(u32, u32)],
    stop_at_universal: bool,
) -> (UnionFind, usize) {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let mut classes = n;
    let mut work: Vec<(u32, u32)> = seeds.to_vec();
    while let Some((a, b)) = work.pop() {
        let ra = uf.find(a);
        let rb = uf.find(b);
        if !uf.union_roots(ra, rb) {
            continue;
        }
        classes -= 1;
        if stop_at_universal && classes == 1 {
            break;
        }
        let (x, y) = (ra as usize, rb as usize);
        let add_x = alg.add_row(x);
        let add_y = alg.add_row(y);
        let mul_x = alg.mul_row(x);
        let mul_y = alg.mul_row(y);
        let mul_tx = &ctx.mul_t[x * n..(x + 1) * n];
        let mul_ty = &ctx.mul_t[y * n..(y + 1) * n];
        for c in 0..n {
            let push = |p: u16, q: u16, uf: &mut UnionFind, work: &mut Vec<(u32, u32)>| {
                if p != q && uf.find(p as u32) != uf.find(q as u32) {
                    work.push((p as u32, q as u32));
                }
            };
            push(add_x[c], add_y[c], &mut uf, &mut work);
            push(mul_x[c], mul_y[c], &mut uf, &mut work);
            push(mul_tx[c], mul_ty[c], &mut uf, &mut work);
            if let Some(add_t) = &ctx.add_t {
                push(add_t[x * n + c], add_t[y * n + c], &mut uf, &mut work);
            }
        }
    }
    (uf, classes)
}

/// The least congruence of `alg` containing all seed pairs.
pub fn congruence_closure(
    alg: &FiniteAlgebra,
    seeds: &[(usize, usize)],
) -> Result<Congruence, AlgebraError> {
    let n = alg.size();
    for &(a, b) in seeds {
        if a >= n || b >= n {
            return Err(AlgebraError::IndexOutOfRange { carrier: n });
        }
    }
    let ctx = ClosureCtx::new(alg);
    let seeds: Vec<(u32, u32)> = seeds.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
    let (mut uf, _) = saturate(alg, &ctx, &seeds, false);
    Ok(Congruence::from_union_find(&mut uf))
}

/// Outcome of the simpleness decision: either only trivial congruences exist,
/// or a proper nontrivial congruence is produced as the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplenessVerdict {
    Simple,
    NotSimple(Congruence),
}

impl SimplenessVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimplenessVerdict::Simple)
    }
}

/// Decides congruence-simpleness: the diagonal and universal relation are the
/// only congruences iff the principal congruence of every pair `a != b` is
/// universal. The zero hemiring (carrier of size one) is rejected.
///
/// For additively idempotent algebras the pair set is reduced first: in the
/// natural order `a <= b iff a + b = b`, the principal congruence of any pair
/// contains the principal congruence of a covering pair (translate `(a, b)`
/// by `+ c` and use transitivity), so only covering pairs need checking.
/// Verified-universal pairs further prune the search, since a pair whose
/// translate under some `x -> x + c`, `x -> x * c` or `x -> c * x` is already
/// known universal is itself universal.
pub fn is_congruence_simple(alg: &FiniteAlgebra) -> Result<SimplenessVerdict, AlgebraError> {
    let n = alg.size();
    if n < 2 {
        return Err(AlgebraError::ZeroAlgebra);
    }
    let ctx = ClosureCtx::new(alg);
    let (pairs, scan_order) = if alg.is_additively_idempotent() {
        covering_pairs(alg)
    } else {
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                pairs.push((a, b));
            }
        }
        (pairs, (0..n as u32).collect())
    };

    let scan_cap = scan_order.len().min(256);
    let mut universal: HashSet<(u32, u32)> = HashSet::new();
    for &(a, b) in &pairs {
        if translate_hit(alg, a, b, &scan_order[..scan_cap], &universal) {
            universal.insert(ordered(a, b));
            continue;
        }
        let (mut uf, classes) = saturate(alg, &ctx, &[(a, b)], true);
        if classes == 1 {
            universal.insert(ordered(a, b));
        } else {
            return Ok(SimplenessVerdict::NotSimple(Congruence::from_union_find(
                &mut uf,
            )));
        }
    }
    Ok(SimplenessVerdict::Simple)
}

fn ordered(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn translate_hit(
    alg: &FiniteAlgebra,
    a: u32,
    b: u32,
    scan: &[u32],
    universal: &HashSet<(u32, u32)>,
) -> bool {
    if universal.is_empty() {
        return false;
    }
    let add_a = alg.add_row(a as usize);
    let add_b = alg.add_row(b as usize);
    let mul_a = alg.mul_row(a as usize);
    let mul_b = alg.mul_row(b as usize);
    for &c in scan {
        let c = c as usize;
        let candidates = [
            (add_a[c], add_b[c]),
            (mul_a[c], mul_b[c]),
            (alg.mul(c, a as usize) as u16, alg.mul(c, b as usize) as u16),
        ];
        for (x, y) in candidates {
            if x != y && universal.contains(&ordered(x as u32, y as u32)) {
                return true;
            }
        }
    }
    false
}

/// Covering pairs of the natural order, sorted so pairs near the top of the
/// order come first, together with a carrier scan order (descending elements
/// first) that makes the translate-pruning in `is_congruence_simple` hit early.
fn covering_pairs(alg: &FiniteAlgebra) -> (Vec<(u32, u32)>, Vec<u32>) {
    let n = alg.size();
    let words = n.div_ceil(64);
    let mut above = vec![0u64; n * words];
    let mut below = vec![0u64; n * words];
    for a in 0..n {
        let row = alg.add_row(a);
        for (b, &s) in row.iter().enumerate() {
            if s as usize == b {
                above[a * words + b / 64] |= 1 << (b % 64);
                below[b * words + a / 64] |= 1 << (a % 64);
            }
        }
    }
    let above_count: Vec<u32> = (0..n)
        .map(|a| {
            above[a * words..(a + 1) * words]
                .iter()
                .map(|w| w.count_ones())
                .sum()
        })
        .collect();

    let mut pairs = Vec::new();
    for a in 0..n {
        let row = &above[a * words..(a + 1) * words];
        for (w, &word) in row.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if b == a {
                    continue;
                }
                let between: u32 = row
                    .iter()
                    .zip(&below[b * words..(b + 1) * words])
                    .map(|(x, y)| (x & y).count_ones())
                    .sum();
                if between == 2 {
                    pairs.push((a as u32, b as u32));
                }
            }
        }
    }
    pairs.sort_by_key(|&(a, b)| (above_count[a as usize], above_count[b as usize], a, b));

    let mut scan_order: Vec<u32> = (0..n as u32).collect();
    scan_order.sort_by_key(|&c| (above_count[c as usize], c));
    (pairs, scan_order)
}

/// The least subset containing `gens` and zero that is closed under addition
/// and under multiplication by arbitrary elements on both sides. Returned
/// sorted.
pub fn ideal_closure(alg: &FiniteAlgebra, gens: &[usize]) -> Result<Vec<usize>, AlgebraError> {
    let n = alg.size();
    for &g in gens {
        if g >= n {
            return Err(AlgebraError::IndexOutOfRange { carrier: n });
        }
    }
    let mut member = vec![false; n];
    let mut list: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let push = |x: usize, member: &mut Vec<bool>, list: &mut Vec<usize>, queue: &mut Vec<usize>| {
        if !member[x] {
            member[x] = true;
            list.push(x);
            queue.push(x);
        }
    };
    push(alg.zero(), &mut member, &mut list, &mut queue);
    for &g in gens {
        push(g, &mut member, &mut list, &mut queue);
    }
    while let Some(x) = queue.pop() {
        for c in 0..n {
            push(alg.mul(x, c), &mut member, &mut list, &mut queue);
            push(alg.mul(c, x), &mut member, &mut list, &mut queue);
        }
        let snapshot = list.len();
        for i in 0..snapshot {
            let y = list[i];
            push(alg.add(x, y), &mut member, &mut list, &mut queue);
        }
    }
    list.sort_unstable();
    Ok(list)
}

/// A homomorphism of finite algebras given by its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    map: Vec<usize>,
}

impl AlgebraHom {
    /// Validates that `map` preserves zero and both operations exhaustively.
    pub fn new(
        source: &FiniteAlgebra,
        target: &FiniteAlgebra,
        map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let n = source.size();
        if map.len() != n {
            return Err(AlgebraError::InvalidHom(format!(
                "value table has {} entries for a carrier of {}",
                map.len(),
                n
            )));
        }
        if map.iter().any(|&x| x >= target.size()) {
            return Err(AlgebraError::InvalidHom(
                "value out of range for the target carrier".into(),
            ));
        }
        if map[source.zero()] != target.zero() {
            return Err(AlgebraError::InvalidHom("zero is not preserved".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(AlgebraError::InvalidHom(format!(
                        "addition not preserved at ({}, {})",
                        source.label(a),
                        source.label(b)
                    )));
                }
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(AlgebraError::InvalidHom(format!(
                        "multiplication not preserved at ({}, {})",
                        source.label(a),
                        source.label(b)
                    )));
                }
            }
        }
        Ok(AlgebraHom { map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }
}

/// The kernel congruence of a homomorphism together with the two derived
/// classifications used by the simpleness cross-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomKernel {
    pub kernel: Congruence,
    pub is_injective: bool,
    pub is_zero: bool,
}

/// Kernel congruence `{(x, y) : h(x) = h(y)}` of a validated homomorphism.
pub fn hom_kernel(source: &FiniteAlgebra, target: &FiniteAlgebra, hom: &AlgebraHom) -> HomKernel {
    let n = source.size();
    let mut ids: BTreeMap<usize, u32> = BTreeMap::new();
    let mut block = vec![0u32; n];
    for x in 0..n {
        let next = ids.len() as u32;
        let id = *ids.entry(hom.apply(x)).or_insert(next);
        block[x] = id;
    }
    let kernel = Congruence {
        block,
        nblocks: ids.len(),
    };
    let is_injective = kernel.is_diagonal();
    let is_zero = (0..n).all(|x| hom.apply(x) == target.zero());
    HomKernel {
        kernel,
        is_injective,
        is_zero,
    }
}

/// Every congruence of `alg`, computed as the join closure of the principal
/// congruences. Errors when more than `max_count` congruences exist.
pub fn all_congruences(
    alg: &FiniteAlgebra,
    max_count: usize,
) -> Result<Vec<Congruence>, AlgebraError> {
    let n = alg.size();
    let ctx = ClosureCtx::new(alg);
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::diagonal(n));
    let mut frontier: Vec<Congruence> = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            let (mut uf, _) = saturate(alg, &ctx, &[(a, b)], false);
            let cong = Congruence::from_union_find(&mut uf);
            if found.insert(cong.clone()) {
                frontier.push(cong);
            }
        }
    }
    // Join closure: the join of two congruences is the congruence generated
    // by their union, computed by seeding saturation with both partitions.
    while let Some(next) = frontier.pop() {
        if found.len() > max_count {
            return Err(AlgebraError::Limit(crate::limits::LimitExceeded {
                what: "congruence lattice enumeration".into(),
                bound: max_count,
                requested: found.len(),
            }));
        }
        for other in found.clone() {
            let mut seeds: Vec<(u32, u32)> = Vec::new();
            partition_seeds(&next, &mut seeds);
            partition_seeds(&other, &mut seeds);
            let (mut uf, _) = saturate(alg, &ctx, &seeds, false);
            let join = Congruence::from_union_find(&mut uf);
            if found.insert(join.clone()) {
                frontier.push(join);
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn partition_seeds(cong: &Congruence, seeds: &mut Vec<(u32, u32)>) {
    let mut first: BTreeMap<usize, u32> = BTreeMap::new();
    for x in 0..cong.carrier_size() {
        let b = cong.block_of(x);
        match first.get(&b) {
            None => {
                first.insert(b, x as u32);
            }
            Some(&rep) => seeds.push((rep, x as u32)),
        }
    }
}
