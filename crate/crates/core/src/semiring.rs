//! Coefficient semirings.
//!
//! Four commutative semirings are available by name: the Boolean semifield
//! `B`, the naturals `N`, the tropical semifield `T` (rationals with a
//! distinguished bottom element, max as addition and rational addition as
//! multiplication) and the ring of integers `Z`. Elements are exact
//! ([`num::BigUint`], [`num::BigInt`], [`num::BigRational`]); floats never
//! appear, so the tropical congruence checks below are decisions rather than
//! approximations.
//!
//! The descriptors drive two things: the coefficient condition in
//! [`crate::steinberg_simple_decision`], via the `is_field` and
//! `additively_idempotent` flags, and sampled law checks such as
//! [`check_congruence_axioms`].

use num::{BigInt, BigRational, BigUint, Zero};
use std::fmt;
use thiserror::Error;

/// Which of the shipped coefficient semirings a descriptor denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiringKind {
    Boolean,
    Natural,
    TropicalRational,
    IntegerRing,
}

/// An element of one of the shipped semirings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Bool(bool),
    Nat(BigUint),
    Int(BigInt),
    /// `None` is the tropical bottom (the additive zero), `Some(q)` a rational.
    Trop(Option<BigRational>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{}", if *b { 1 } else { 0 }),
            Value::Nat(n) => write!(f, "{n}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Trop(None) => write!(f, "-inf"),
            Value::Trop(Some(q)) => write!(f, "{q}"),
        }
    }
}

/// A named commutative semiring with exact operations and classification flags.
#[derive(Clone, Debug)]
pub struct SemiringDescriptor {
    kind: SemiringKind,
    name: &'static str,
    pub additively_idempotent: bool,
    pub is_field: bool,
    pub is_boolean: bool,
}

/// Looks a semiring up by its one-letter name.
pub fn instantiate_semiring(name: &str) -> Result<SemiringDescriptor, SemiringError> {
    let kind = match name {
        "B" => SemiringKind::Boolean,
        "N" => SemiringKind::Natural,
        "T" => SemiringKind::TropicalRational,
        "Z" => SemiringKind::IntegerRing,
        other => return Err(SemiringError::Unsupported(other.to_string())),
    };
    Ok(SemiringDescriptor::new(kind))
}

impl SemiringDescriptor {
    pub fn new(kind: SemiringKind) -> Self {
        match kind {
            SemiringKind::Boolean => SemiringDescriptor {
                kind,
                name: "B",
                additively_idempotent: true,
                is_field: false,
                is_boolean: true,
            },
            SemiringKind::Natural => SemiringDescriptor {
                kind,
                name: "N",
                additively_idempotent: false,
                is_field: false,
                is_boolean: false,
            },
            SemiringKind::TropicalRational => SemiringDescriptor {
                kind,
                name: "T",
                additively_idempotent: true,
                is_field: false,
                is_boolean: false,
            },
            SemiringKind::IntegerRing => SemiringDescriptor {
                kind,
                name: "Z",
                additively_idempotent: false,
                is_field: false,
                is_boolean: false,
            },
        }
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn zero(&self) -> Value {
        match self.kind {
            SemiringKind::Boolean => Value::Bool(false),
            SemiringKind::Natural => Value::Nat(BigUint::zero()),
            SemiringKind::IntegerRing => Value::Int(BigInt::zero()),
            SemiringKind::TropicalRational => Value::Trop(None),
        }
    }

    pub fn one(&self) -> Value {
        match self.kind {
            SemiringKind::Boolean => Value::Bool(true),
            SemiringKind::Natural => Value::Nat(BigUint::from(1u8)),
            SemiringKind::IntegerRing => Value::Int(BigInt::from(1)),
            SemiringKind::TropicalRational => Value::Trop(Some(BigRational::zero())),
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self.kind, a, b) {
            (SemiringKind::Boolean, Value::Bool(x), Value::Bool(y)) => Value::Bool(*x || *y),
            (SemiringKind::Natural, Value::Nat(x), Value::Nat(y)) => Value::Nat(x + y),
            (SemiringKind::IntegerRing, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (SemiringKind::TropicalRational, Value::Trop(x), Value::Trop(y)) => {
                // Tropical addition is max; the bottom element is neutral.
                Value::Trop(match (x, y) {
                    (None, y) => y.clone(),
                    (x, None) => x.clone(),
                    (Some(p), Some(q)) => Some(p.clone().max(q.clone())),
                })
            }
            _ => panic!("value does not belong to semiring {}", self.name),
        }
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self.kind, a, b) {
            (SemiringKind::Boolean, Value::Bool(x), Value::Bool(y)) => Value::Bool(*x && *y),
            (SemiringKind::Natural, Value::Nat(x), Value::Nat(y)) => Value::Nat(x * y),
            (SemiringKind::IntegerRing, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (SemiringKind::TropicalRational, Value::Trop(x), Value::Trop(y)) => {
                // Tropical multiplication is rational addition, absorbed by bottom.
                Value::Trop(match (x, y) {
                    (Some(p), Some(q)) => Some(p + q),
                    _ => None,
                })
            }
            _ => panic!("value does not belong to semiring {}", self.name),
        }
    }

    /// A deterministic sample of elements used by the law checks: small
    /// "integers" of the semiring plus, where it exists, the extra structure
    /// (rationals with various denominators, the tropical bottom).
    pub fn sample(&self, n: usize) -> Vec<Value> {
        match self.kind {
            SemiringKind::Boolean => vec![Value::Bool(false), Value::Bool(true)]
                .into_iter()
                .take(n.max(2))
                .collect(),
            SemiringKind::Natural => (0..n as u64).map(|k| Value::Nat(BigUint::from(k))).collect(),
            SemiringKind::IntegerRing => (0..n as i64)
                .map(|k| {
                    let signed = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
                    Value::Int(BigInt::from(signed))
                })
                .collect(),
            SemiringKind::TropicalRational => {
                let mut out = vec![Value::Trop(None)];
                'fill: for den in 1..=(n as i64 + 1) {
                    for num in -6 * den..=6 * den {
                        if num::integer::gcd(num, den) != 1 {
                            continue; // already produced in lowest terms
                        }
                        out.push(Value::Trop(Some(BigRational::new(
                            BigInt::from(num),
                            BigInt::from(den),
                        ))));
                        if out.len() >= n {
                            break 'fill;
                        }
                    }
                }
                out
            }
        }
    }
}

/// Outcome of a sampled relation check: either no violation was found on the
/// sample, or the first violated axiom with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomReport {
    NoViolation { pairs_checked: usize },
    Violation { axiom: &'static str, witness: String },
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        matches!(self, AxiomReport::NoViolation { .. })
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomReport::NoViolation { pairs_checked } => {
                write!(f, "no violation found ({pairs_checked} pairs checked)")
            }
            AxiomReport::Violation { axiom, witness } => {
                write!(f, "violated {axiom} at {witness}")
            }
        }
    }
}

/// Checks, over the given sample, that `related` is an equivalence compatible
/// with both operations: reflexive, symmetric, transitive, and closed under
/// the translations `x -> x + c`, `x -> x * c`, `x -> c * x`.
///
/// The check is exact on the sample and reports the first violation found, in
/// a fixed scan order, so reports are deterministic.
pub fn check_congruence_axioms(
    semiring: &SemiringDescriptor,
    related: &dyn Fn(&Value, &Value) -> bool,
    samples: &[Value],
) -> AxiomReport {
    let mut pairs_checked = 0usize;
    for a in samples {
        if !related(a, a) {
            return AxiomReport::Violation {
                axiom: "reflexivity",
                witness: format!("{a}"),
            };
        }
    }
    for a in samples {
        for b in samples {
            pairs_checked += 1;
            if related(a, b) != related(b, a) {
                return AxiomReport::Violation {
                    axiom: "symmetry",
                    witness: format!("({a}, {b})"),
                };
            }
            if !related(a, b) {
                continue;
            }
            for c in samples {
                if related(b, c) && !related(a, c) {
                    return AxiomReport::Violation {
                        axiom: "transitivity",
                        witness: format!("({a}, {b}, {c})"),
                    };
                }
                let translations: [(&'static str, Value, Value); 3] = [
                    ("additive translation", semiring.add(a, c), semiring.add(b, c)),
                    ("right multiplication", semiring.mul(a, c), semiring.mul(b, c)),
                    ("left multiplication", semiring.mul(c, a), semiring.mul(c, b)),
                ];
                for (axiom, ta, tb) in translations {
                    if !related(&ta, &tb) {
                        return AxiomReport::Violation {
                            axiom,
                            witness: format!("({a}, {b}) translated by {c}"),
                        };
                    }
                }
            }
        }
    }
    AxiomReport::NoViolation { pairs_checked }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SemiringError {
    #[error("unsupported semiring {0:?}; available: B, N, T, Z")]
    Unsupported(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trop(n: i64, d: i64) -> Value {
        Value::Trop(Some(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    #[test]
    fn lookup_by_name() {
        for name in ["B", "N", "T", "Z"] {
            assert_eq!(instantiate_semiring(name).unwrap().name(), name);
        }
        assert!(matches!(
            instantiate_semiring("Q"),
            Err(SemiringError::Unsupported(_))
        ));
    }

    #[test]
    fn flags_match_the_shipped_semirings() {
        let b = instantiate_semiring("B").unwrap();
        assert!(b.is_boolean && b.additively_idempotent && !b.is_field);
        let t = instantiate_semiring("T").unwrap();
        assert!(t.additively_idempotent && !t.is_boolean && !t.is_field);
        let n = instantiate_semiring("N").unwrap();
        assert!(!n.additively_idempotent && !n.is_boolean && !n.is_field);
        let z = instantiate_semiring("Z").unwrap();
        assert!(!z.additively_idempotent && !z.is_field);
    }

    #[test]
    fn tropical_operations_are_exact() {
        let t = instantiate_semiring("T").unwrap();
        // max(1/2, 1/3) = 1/2 and 1/2 "times" 1/3 = 5/6, both exact.
        assert_eq!(t.add(&trop(1, 2), &trop(1, 3)), trop(1, 2));
        assert_eq!(t.mul(&trop(1, 2), &trop(1, 3)), trop(5, 6));
        assert_eq!(t.add(&t.zero(), &trop(-7, 3)), trop(-7, 3));
        assert_eq!(t.mul(&t.zero(), &trop(-7, 3)), t.zero());
        assert_eq!(t.mul(&t.one(), &trop(-7, 3)), trop(-7, 3));
    }

    #[test]
    fn semiring_laws_hold_on_samples() {
        for name in ["B", "N", "T", "Z"] {
            let s = instantiate_semiring(name).unwrap();
            let sample = s.sample(8);
            for a in &sample {
                assert_eq!(s.add(a, &s.zero()), a.clone(), "{name}: additive unit");
                assert_eq!(s.mul(a, &s.one()), a.clone(), "{name}: multiplicative unit");
                assert_eq!(s.mul(a, &s.zero()), s.zero(), "{name}: zero absorbs");
                for b in &sample {
                    assert_eq!(s.add(a, b), s.add(b, a), "{name}: commutative addition");
                    assert_eq!(s.mul(a, b), s.mul(b, a), "{name}: commutative multiplication");
                    for c in &sample {
                        assert_eq!(
                            s.add(&s.add(a, b), c),
                            s.add(a, &s.add(b, c)),
                            "{name}: associative addition"
                        );
                        assert_eq!(
                            s.mul(&s.mul(a, b), c),
                            s.mul(a, &s.mul(b, c)),
                            "{name}: associative multiplication"
                        );
                        assert_eq!(
                            s.mul(a, &s.add(b, c)),
                            s.add(&s.mul(a, b), &s.mul(a, c)),
                            "{name}: distributivity"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn idempotency_flag_is_honest() {
        for name in ["B", "N", "T", "Z"] {
            let s = instantiate_semiring(name).unwrap();
            let idem = s.sample(8).iter().all(|a| s.add(a, a) == *a);
            assert_eq!(idem, s.additively_idempotent, "{name}");
        }
    }

    #[test]
    fn diagonal_and_universal_are_congruences() {
        let t = instantiate_semiring("T").unwrap();
        let samples = t.sample(10);
        let diag = |a: &Value, b: &Value| a == b;
        let all = |_: &Value, _: &Value| true;
        assert!(check_congruence_axioms(&t, &diag, &samples).is_clean());
        assert!(check_congruence_axioms(&t, &all, &samples).is_clean());
    }

    #[test]
    fn tropical_bottom_isolating_relation_is_a_congruence() {
        // Relates x and y when x = y or neither is bottom; this has the two
        // blocks {bottom} and everything else, so it is proper.
        let t = instantiate_semiring("T").unwrap();
        let samples = t.sample(12);
        let rel = |a: &Value, b: &Value| a == b || (*a != t.zero() && *b != t.zero());
        assert!(check_congruence_axioms(&t, &rel, &samples).is_clean());
        assert!(rel(&trop(1, 2), &trop(-3, 1)));
        assert!(!rel(&t.zero(), &trop(1, 2)));
    }

    #[test]
    fn a_non_congruence_is_caught() {
        // "Same sign" fails translation by a negative rational.
        let t = instantiate_semiring("T").unwrap();
        let samples = t.sample(12);
        let rel = |a: &Value, b: &Value| match (a, b) {
            (Value::Trop(Some(p)), Value::Trop(Some(q))) => {
                p == q || (p >= &BigRational::zero()) == (q >= &BigRational::zero())
            }
            (x, y) => x == y,
        };
        let report = check_congruence_axioms(&t, &rel, &samples);
        assert!(!report.is_clean());
    }

    #[test]
    fn samples_are_deterministic_and_contain_bottom() {
        let t = instantiate_semiring("T").unwrap();
        let s1 = t.sample(50);
        let s2 = t.sample(50);
        assert_eq!(s1, s2);
        assert!(s1.contains(&Value::Trop(None)));
        assert_eq!(s1.len(), 50);
        // All entries distinct: the point of an exact representation.
        let set: std::collections::BTreeSet<_> = s1.iter().cloned().collect();
        assert_eq!(set.len(), 50);
    }
}
