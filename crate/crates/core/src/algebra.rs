//! Finite algebras given by explicit operation tables.
//!
//! A [`FiniteAlgebra`] is a hemiring presented concretely: a carrier
//! `0..n`, two `n x n` tables for addition and multiplication, a zero, and
//! optionally a one and a recorded family of local units. All congruence
//! machinery ([`crate::congruence`]) works on this representation.
//!
//! The shipped constructors are all "Boolean span" algebras: carriers are
//! subsets of a finite atom set, addition is union, and multiplication is
//! induced by a (possibly partial) product on atoms. Boolean matrix semirings,
//! Boolean group semirings and pointwise function algebras arise this way, and
//! so do the subset algebras of finite groupoids built in [`crate::groupoid`].

use crate::limits::{LimitExceeded, Limits};
use std::fmt::Write as _;
use thiserror::Error;

/// A finite hemiring with explicit operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    labels: Vec<String>,
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    zero: usize,
    one: Option<usize>,
    local_units: Option<Vec<usize>>,
}

impl FiniteAlgebra {
    /// Builds an algebra from raw tables, checking only shape (indices in
    /// range, zero valid). Algebraic laws are checked by [`Self::check_axioms`].
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: usize,
        one: Option<usize>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(AlgebraError::BadShape {
                expected: n * n,
                add: add.len(),
                mul: mul.len(),
            });
        }
        if add.iter().chain(mul.iter()).any(|&x| x as usize >= n) {
            return Err(AlgebraError::IndexOutOfRange { carrier: n });
        }
        if zero >= n || one.is_some_and(|o| o >= n) {
            return Err(AlgebraError::IndexOutOfRange { carrier: n });
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            labels,
            n,
            add,
            mul,
            zero,
            one,
            local_units: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    /// Elements `u` recorded by the constructor with `u * a = a * u = a` for
    /// every `a` supported on `u`, such as the indicator functions of unit
    /// subsets in a groupoid subset algebra.
    pub fn local_units(&self) -> Option<&[usize]> {
        self.local_units.as_deref()
    }

    pub(crate) fn set_local_units(&mut self, units: Vec<usize>) {
        self.local_units = Some(units);
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub(crate) fn add_row(&self, a: usize) -> &[u16] {
        &self.add[a * self.n..(a + 1) * self.n]
    }

    #[inline]
    pub(crate) fn mul_row(&self, a: usize) -> &[u16] {
        &self.mul[a * self.n..(a + 1) * self.n]
    }

    pub fn is_additively_idempotent(&self) -> bool {
        (0..self.n).all(|a| self.add(a, a) == a)
    }

    /// Exhaustively verifies every hemiring axiom on every triple. Returns the
    /// first failure as a human-readable description.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.n;
        let z = self.zero;
        for a in 0..n {
            if self.add(a, z) != a || self.add(z, a) != a {
                return Err(format!("additive unit fails at {}", self.label(a)));
            }
            if self.mul(a, z) != z || self.mul(z, a) != z {
                return Err(format!("zero absorption fails at {}", self.label(a)));
            }
            if let Some(o) = self.one {
                if self.mul(a, o) != a || self.mul(o, a) != a {
                    return Err(format!("multiplicative unit fails at {}", self.label(a)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!(
                        "additive commutativity fails at ({}, {})",
                        self.label(a),
                        self.label(b)
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.add(a, b);
                let mab = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return Err(format!(
                            "additive associativity fails at ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        ));
                    }
                    if self.mul(mab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!(
                            "multiplicative associativity fails at ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        ));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!(
                            "left distributivity fails at ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        ));
                    }
                    if self.mul(ab, c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(format!(
                            "right distributivity fails at ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Serialises to the line-oriented text format. The result parses back
    /// bit-exactly via [`FiniteAlgebra::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra {} size={}", self.name, self.n);
        out.push_str("add\n");
        for a in 0..self.n {
            let row: Vec<String> = self.add_row(a).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out.push_str("mul\n");
        for a in 0..self.n {
            let row: Vec<String> = self.mul_row(a).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        let _ = writeln!(out, "zero={}", self.zero);
        if let Some(o) = self.one {
            let _ = writeln!(out, "one={o}");
        }
        out
    }

    /// Parses the text format produced by [`Self::to_text`]. Labels are the
    /// carrier indices as strings; they are not part of the format.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| AlgebraError::Parse {
                    line: 0,
                    msg: format!("unexpected end of input, expected {what}"),
                })
        };

        let (lineno, header) = next("header")?;
        let mut parts = header.split_whitespace();
        let (kw, name, size) = (parts.next(), parts.next(), parts.next());
        if kw != Some("algebra") || name.is_none() || size.is_none() || parts.next().is_some() {
            return Err(AlgebraError::Parse {
                line: lineno,
                msg: "expected `algebra <name> size=<n>`".into(),
            });
        }
        let size = size.unwrap();
        let n: usize = size
            .strip_prefix("size=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| AlgebraError::Parse {
                line: lineno,
                msg: format!("bad size field {size:?}"),
            })?;
        if n == 0 || n > (1 << 16) {
            return Err(AlgebraError::Parse {
                line: lineno,
                msg: format!("carrier size {n} out of range"),
            });
        }

        let mut read_table = |keyword: &str| -> Result<Vec<u16>, AlgebraError> {
            let (lineno, kw) = next(keyword)?;
            if kw != keyword {
                return Err(AlgebraError::Parse {
                    line: lineno,
                    msg: format!("expected {keyword:?}, found {kw:?}"),
                });
            }
            let mut table = Vec::with_capacity(n * n);
            for _ in 0..n {
                let (lineno, row) = next("table row")?;
                let mut count = 0usize;
                for tok in row.split_whitespace() {
                    let x: usize = tok.parse().map_err(|_| AlgebraError::Parse {
                        line: lineno,
                        msg: format!("bad table entry {tok:?}"),
                    })?;
                    if x >= n {
                        return Err(AlgebraError::Parse {
                            line: lineno,
                            msg: format!("table entry {x} out of range for carrier {n}"),
                        });
                    }
                    table.push(x as u16);
                    count += 1;
                }
                if count != n {
                    return Err(AlgebraError::Parse {
                        line: lineno,
                        msg: format!("expected {n} entries in row, found {count}"),
                    });
                }
            }
            Ok(table)
        };

        let add = read_table("add")?;
        let mul = read_table("mul")?;

        let (lineno, zero_line) = next("zero")?;
        let zero: usize = zero_line
            .strip_prefix("zero=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| AlgebraError::Parse {
                line: lineno,
                msg: "expected `zero=<i>`".into(),
            })?;
        let mut one = None;
        if let Some((lineno, one_line)) = lines.next() {
            one = Some(
                one_line
                    .strip_prefix("one=")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| AlgebraError::Parse {
                        line: lineno,
                        msg: "expected `one=<i>`".into(),
                    })?,
            );
        }
        if let Some((lineno, extra)) = lines.next() {
            return Err(AlgebraError::Parse {
                line: lineno,
                msg: format!("trailing content {extra:?}"),
            });
        }

        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteAlgebra::from_tables(name.unwrap(), labels, add, mul, zero, one)
    }
}

/// Builds the subset algebra over `atoms.len()` atoms: carrier indices are
/// bitmasks, addition is union, and multiplication is the additive extension
/// of `product` (where `None` means the atom product is zero).
///
/// This is the common core behind the matrix, group, function and groupoid
/// subset algebras, so their tables agree with each other by construction
/// whenever their atoms multiply the same way.
pub(crate) fn boolean_span_algebra(
    name: impl Into<String>,
    atoms: &[String],
    product: impl Fn(usize, usize) -> Option<usize>,
    one_mask: Option<usize>,
    limits: &Limits,
) -> Result<FiniteAlgebra, AlgebraError> {
    let k = atoms.len();
    let name = name.into();
    if k > 16 {
        return Err(AlgebraError::Limit(LimitExceeded {
            what: name,
            bound: 16,
            requested: k,
        }));
    }
    let n = 1usize << k;
    limits.check_carrier(&name, n)?;

    // Atom products as masks (zero product = empty mask).
    let mut atom_prod = vec![0usize; k * k];
    for a in 0..k {
        for b in 0..k {
            if let Some(c) = product(a, b) {
                debug_assert!(c < k);
                atom_prod[a * k + b] = 1 << c;
            }
        }
    }

    // single[a][y] = union of a*b over atoms b in the mask y.
    let mut single = vec![0usize; k * n];
    for a in 0..k {
        for y in 1..n {
            let low = y.trailing_zeros() as usize;
            single[a * n + y] = single[a * n + (y & (y - 1))] | atom_prod[a * k + low];
        }
    }

    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            add[x * n + y] = (x | y) as u16;
        }
        if x > 0 {
            let low = x.trailing_zeros() as usize;
            let rest = x & (x - 1);
            for y in 0..n {
                mul[x * n + y] = mul[rest * n + y] | (single[low * n + y] as u16);
            }
        }
    }

    let labels = (0..n)
        .map(|mask: usize| {
            if mask == 0 {
                "0".to_string()
            } else if mask.count_ones() == 1 {
                atoms[mask.trailing_zeros() as usize].clone()
            } else {
                let parts: Vec<&str> = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| atoms[b].as_str())
                    .collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();

    FiniteAlgebra::from_tables(name, labels, add, mul, 0, one_mask)
}

/// Checks whether two Boolean span algebras are isomorphic via the carrier map
/// induced by the atom bijection `atom_map` (atom `i` of `a` goes to atom
/// `atom_map[i]` of `b`). Comparison is exhaustive over all pairs.
pub fn span_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra, atom_map: &[usize]) -> bool {
    let k = atom_map.len();
    if a.size() != 1 << k || b.size() != 1 << k {
        return false;
    }
    let phi: Vec<usize> = (0..a.size())
        .map(|mask| {
            (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .fold(0usize, |acc, i| acc | 1 << atom_map[i])
        })
        .collect();
    if phi[a.zero()] != b.zero() || a.one().map(|o| phi[o]) != b.one() {
        return false;
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            if phi[a.add(x, y)] != b.add(phi[x], phi[y]) || phi[a.mul(x, y)] != b.mul(phi[x], phi[y])
            {
                return false;
            }
        }
    }
    true
}

/// The semiring of `n x n` Boolean matrices. Carrier indices are bitmasks of
/// matrix entries in row-major order; [`matrix_unit_index`] names the atoms.
pub fn matrix_semiring(n: usize, limits: &Limits) -> Result<FiniteAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::EmptyCarrier);
    }
    if n * n > 16 {
        // 2^(n*n) overflows the carrier bound long before this, but give the
        // caller the bound-style error rather than a shift panic.
        return Err(AlgebraError::Limit(LimitExceeded {
            what: format!("M{n}(B)"),
            bound: 16,
            requested: n * n,
        }));
    }
    let atoms: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    let one = (0..n).fold(0usize, |acc, i| acc | 1 << (i * n + i));
    boolean_span_algebra(
        format!("M{n}(B)"),
        &atoms,
        |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            (j == k).then_some(i * n + l)
        },
        Some(one),
        limits,
    )
}

/// Carrier index of the matrix unit with a single 1 in row `i`, column `j`
/// (0-based) inside [`matrix_semiring`]`(n)`.
pub fn matrix_unit_index(n: usize, i: usize, j: usize) -> usize {
    1 << (i * n + j)
}

/// The pointwise algebra of functions from an `n`-point set to the Booleans:
/// addition is union, multiplication intersection.
pub fn function_algebra(n: usize, limits: &Limits) -> Result<FiniteAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::EmptyCarrier);
    }
    let atoms: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let one = (1usize << n) - 1;
    boolean_span_algebra(
        format!("B^{n}"),
        &atoms,
        |a, b| (a == b).then_some(a),
        Some(one),
        limits,
    )
}

/// A finite group presented by its multiplication table.
#[derive(Clone, Debug)]
pub struct GroupTable {
    elems: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Validates the table as a group: well-formed indices, a two-sided
    /// identity, associativity, and an inverse for every element. The error
    /// names the first failed axiom.
    pub fn new(elems: Vec<String>, table: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = elems.len();
        if n == 0 {
            return Err(AlgebraError::InvalidGroup("empty element list".into()));
        }
        if table.len() != n * n {
            return Err(AlgebraError::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(AlgebraError::InvalidGroup("table entry out of range".into()));
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| AlgebraError::InvalidGroup("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(AlgebraError::InvalidGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            elems[a], elems[b], elems[c]
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| mul(a, b) == identity && mul(b, a) == identity) {
                return Err(AlgebraError::InvalidGroup(format!(
                    "no inverse for {}",
                    elems[a]
                )));
            }
        }
        Ok(GroupTable {
            elems,
            table,
            identity,
        })
    }

    /// The cyclic group of order `n`, elements `e, g, g2, ...` with `e` first.
    pub fn cyclic(n: usize) -> Self {
        let elems: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                i => format!("g{i}"),
            })
            .collect();
        let table: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        GroupTable::new(elems, table).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elems(&self) -> &[String] {
        &self.elems
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }
}

/// The Boolean group semiring: subsets of the group with union and setwise
/// product. The one is the singleton of the identity.
pub fn group_semiring(group: &GroupTable, limits: &Limits) -> Result<FiniteAlgebra, AlgebraError> {
    let name = format!("B[{}]", group_name(group));
    boolean_span_algebra(
        name,
        group.elems(),
        |a, b| Some(group.mul(a, b)),
        Some(1 << group.identity()),
        limits,
    )
}

pub(crate) fn group_name(group: &GroupTable) -> String {
    // Cyclic tables get the conventional short name; anything else is sized.
    let n = group.order();
    let cyclic = GroupTable::cyclic(n);
    if cyclic.elems() == group.elems() && (0..n * n).all(|i| group.table[i] == cyclic.table[i]) {
        format!("Z{n}")
    } else {
        format!("G{n}")
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier must be nonempty")]
    EmptyCarrier,
    #[error("table shape mismatch: expected {expected} entries, add has {add}, mul has {mul}")]
    BadShape {
        expected: usize,
        add: usize,
        mul: usize,
    },
    #[error("table entry out of range for carrier size {carrier}")]
    IndexOutOfRange { carrier: usize },
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error("not a group: {0}")]
    InvalidGroup(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("simpleness is undefined for the zero hemiring")]
    ZeroAlgebra,
    #[error("not a homomorphism: {0}")]
    InvalidHom(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn matrix_one_is_boolean_semifield() {
        let m1 = matrix_semiring(1, &limits()).unwrap();
        assert_eq!(m1.size(), 2);
        assert_eq!(m1.zero(), 0);
        assert_eq!(m1.one(), Some(1));
        assert_eq!(m1.add(1, 1), 1);
        assert_eq!(m1.mul(1, 1), 1);
        m1.check_axioms().unwrap();
    }

    #[test]
    fn matrix_two_units_multiply_like_matrix_units() {
        let m2 = matrix_semiring(2, &limits()).unwrap();
        assert_eq!(m2.size(), 16);
        let e11 = matrix_unit_index(2, 0, 0);
        let e12 = matrix_unit_index(2, 0, 1);
        let e21 = matrix_unit_index(2, 1, 0);
        let e22 = matrix_unit_index(2, 1, 1);
        // E12 * E12 = 0 and E12 * E21 = E11: the 2x2 Boolean product of
        // [[0,1],[0,0]] with itself is the zero matrix.
        assert_eq!(m2.mul(e12, e12), 0);
        assert_eq!(m2.mul(e12, e21), e11);
        assert_eq!(m2.mul(e21, e12), e22);
        assert_eq!(m2.one(), Some(e11 | e22));
        m2.check_axioms().unwrap();
    }

    #[test]
    fn matrix_three_has_512_elements_and_passes_axioms() {
        let m3 = matrix_semiring(3, &limits()).unwrap();
        assert_eq!(m3.size(), 512);
        m3.check_axioms().unwrap();
    }

    #[test]
    fn matrix_four_exceeds_default_bound() {
        let err = matrix_semiring(4, &limits()).unwrap_err();
        match err {
            AlgebraError::Limit(l) => {
                assert_eq!(l.requested, 65536);
                assert_eq!(l.bound, 4096);
            }
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn function_algebra_is_pointwise() {
        let b2 = function_algebra(2, &limits()).unwrap();
        assert_eq!(b2.size(), 4);
        // masks: 0 = (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1)
        assert_eq!(b2.add(1, 2), 3);
        assert_eq!(b2.mul(1, 2), 0);
        assert_eq!(b2.mul(3, 1), 1);
        assert_eq!(b2.one(), Some(3));
        b2.check_axioms().unwrap();
        function_algebra(3, &limits()).unwrap().check_axioms().unwrap();
    }

    #[test]
    fn cyclic_groups_validate_and_bad_tables_do_not() {
        let z2 = GroupTable::cyclic(2);
        assert_eq!(z2.identity(), 0);
        assert_eq!(z2.mul(1, 1), 0);

        // A left-zero band: associative, but no identity.
        let err = GroupTable::new(
            vec!["a".into(), "b".into()],
            vec![0, 0, 1, 1],
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidGroup(msg) if msg.contains("identity")));

        // Broken associativity.
        let err = GroupTable::new(
            vec!["e".into(), "a".into(), "b".into()],
            vec![0, 1, 2, 1, 2, 2, 2, 0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidGroup(msg) if msg.contains("associativity")
            || msg.contains("inverse")));
    }

    #[test]
    fn group_semiring_of_z2() {
        let alg = group_semiring(&GroupTable::cyclic(2), &limits()).unwrap();
        assert_eq!(alg.name(), "B[Z2]");
        assert_eq!(alg.size(), 4);
        // {g} * {g} = {e}, and {e,g} is multiplicatively idempotent.
        assert_eq!(alg.mul(0b10, 0b10), 0b01);
        assert_eq!(alg.mul(0b11, 0b11), 0b11);
        assert_eq!(alg.one(), Some(0b01));
        alg.check_axioms().unwrap();
    }

    #[test]
    fn span_isomorphism_detects_identity_and_refutes_twists() {
        let b2 = function_algebra(2, &limits()).unwrap();
        assert!(span_isomorphic(&b2, &b2, &[0, 1]));
        assert!(span_isomorphic(&b2, &b2, &[1, 0])); // coordinate swap is an automorphism
        let z2 = group_semiring(&GroupTable::cyclic(2), &limits()).unwrap();
        // B^2 and B[Z2] share a carrier size but are not isomorphic this way:
        // x1 * x1 = x1 in B^2 while g * g = e in B[Z2].
        assert!(!span_isomorphic(&b2, &z2, &[0, 1]));
        assert!(!span_isomorphic(&b2, &z2, &[1, 0]));
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        for alg in [
            function_algebra(2, &limits()).unwrap(),
            matrix_semiring(2, &limits()).unwrap(),
            group_semiring(&GroupTable::cyclic(3), &limits()).unwrap(),
        ] {
            let text = alg.to_text();
            let parsed = FiniteAlgebra::parse(&text).unwrap();
            assert_eq!(parsed.to_text(), text);
            assert_eq!(parsed.size(), alg.size());
            assert_eq!(parsed.zero(), alg.zero());
            assert_eq!(parsed.one(), alg.one());
            for a in 0..alg.size() {
                for b in 0..alg.size() {
                    assert_eq!(parsed.add(a, b), alg.add(a, b));
                    assert_eq!(parsed.mul(a, b), alg.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = FiniteAlgebra::parse("algebra X size=2\nadd\n0 1\n1 5\nmul\n0 0\n0 0\nzero=0\n")
            .unwrap_err();
        match err {
            AlgebraError::Parse { line, msg } => {
                assert_eq!(line, 4);
                assert!(msg.contains("out of range"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(FiniteAlgebra::parse("algebra X\nadd\n").is_err());
    }
}
