//! Finite meet-semilattices and the comparison of their two subset algebras.
//!
//! A semilattice `e` spans two natural algebras over the Boolean semifield
//! with union as addition: one multiplies singletons through the meet table,
//! the other through the Kronecker delta (pointwise function product). For a
//! one-element semilattice the two coincide; already for the two-element
//! chain no bijection of the carriers respects both operations, which
//! [`semilattice_check_noniso`] certifies by exhausting every bijection.

use crate::algebra::{boolean_span_algebra, function_algebra, AlgebraError};
use crate::limits::{LimitExceeded, Limits};
use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SemilatticeError {
    #[error("meet table must have {expected} entries, found {found}")]
    TableShape { expected: usize, found: usize },
    #[error("meet table entry out of range")]
    EntryRange,
    #[error("meet is not idempotent at '{0}'")]
    NotIdempotent(String),
    #[error("meet is not commutative at '{0}', '{1}'")]
    NotCommutative(String, String),
    #[error("meet is not associative at '{0}', '{1}', '{2}'")]
    NotAssociative(String, String, String),
    #[error("element names must be nonempty and distinct")]
    BadNames,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
}

/// A finite meet-semilattice given by its element names and meet table.
#[derive(Clone, Debug)]
pub struct Semilattice {
    names: Vec<String>,
    meet: Vec<usize>,
}

impl Semilattice {
    pub fn new(names: Vec<String>, meet: Vec<usize>) -> Result<Self, SemilatticeError> {
        let k = names.len();
        if k == 0
            || names.iter().any(|n| n.is_empty())
            || (1..k).any(|i| names[..i].contains(&names[i]))
        {
            return Err(SemilatticeError::BadNames);
        }
        if meet.len() != k * k {
            return Err(SemilatticeError::TableShape {
                expected: k * k,
                found: meet.len(),
            });
        }
        if meet.iter().any(|&m| m >= k) {
            return Err(SemilatticeError::EntryRange);
        }
        let at = |a: usize, b: usize| meet[a * k + b];
        for a in 0..k {
            if at(a, a) != a {
                return Err(SemilatticeError::NotIdempotent(names[a].clone()));
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                if at(a, b) != at(b, a) {
                    return Err(SemilatticeError::NotCommutative(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(SemilatticeError::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(Semilattice { names, meet })
    }

    /// The total order `c0 < c1 < ... < c{k-1}` with meet given by minimum.
    pub fn chain(k: usize) -> Result<Self, SemilatticeError> {
        let names = (0..k).map(|i| format!("c{i}")).collect();
        let mut meet = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                meet.push(a.min(b));
            }
        }
        Semilattice::new(names, meet)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    /// The greatest element, when one exists.
    pub fn top(&self) -> Option<usize> {
        (0..self.size()).find(|&t| (0..self.size()).all(|x| self.meet(t, x) == x))
    }
}

/// Outcome of exhausting every carrier bijection between the meet-product
/// subset algebra and the delta-product subset algebra of one semilattice.
#[derive(Clone, Debug)]
pub struct NonIsoReport {
    pub elements: usize,
    pub carrier: usize,
    pub bijections_checked: usize,
    pub refuted: usize,
    pub iso: Option<Vec<usize>>,
}

impl NonIsoReport {
    pub fn isomorphic(&self) -> bool {
        self.iso.is_some()
    }
}

/// Builds both subset algebras of the semilattice and tries every bijection
/// of their common carrier as a semiring isomorphism, recording how many are
/// refuted and the first one that works, if any.
pub fn semilattice_check_noniso(
    lat: &Semilattice,
    limits: &Limits,
) -> Result<NonIsoReport, SemilatticeError> {
    let k = lat.size();
    limits.check_semilattice("semilattice algebra comparison", k)?;
    let atoms: Vec<String> = (0..k).map(|i| lat.name(i).to_string()).collect();
    let span = boolean_span_algebra(
        format!("B[{}]", atoms.join(",")),
        &atoms,
        |a, b| Some(lat.meet(a, b)),
        lat.top().map(|t| 1 << t),
        limits,
    )?;
    let delta = function_algebra(k, limits)?;

    let n = 1usize << k;
    let mut checked = 0usize;
    let mut refuted = 0usize;
    let mut iso = None;
    for perm in (0..n).permutations(n) {
        checked += 1;
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                perm[span.add(a, b)] == delta.add(perm[a], perm[b])
                    && perm[span.mul(a, b)] == delta.mul(perm[a], perm[b])
            })
        });
        if ok {
            if iso.is_none() {
                iso = Some(perm);
            }
        } else {
            refuted += 1;
        }
    }
    Ok(NonIsoReport {
        elements: k,
        carrier: n,
        bijections_checked: checked,
        refuted,
        iso,
    })
}
