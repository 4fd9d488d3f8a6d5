//! Size bounds for the exhaustive searches.
//!
//! Every operation that enumerates carriers, subsets or bijections takes a
//! [`Limits`] value and refuses inputs beyond it with a typed error instead of
//! silently running forever. The defaults are desk scale: a 512-element
//! algebra of 3x3 Boolean matrices must work, a 65536-element one is opt-in.

use thiserror::Error;

/// Bounds consulted by the bounded constructors and searches.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest carrier admitted for an explicit operation-table algebra.
    pub max_carrier: usize,
    /// Largest vertex count for hereditary-saturated subset enumeration.
    pub max_vertices: usize,
    /// Largest morphism count for [`crate::build_groupoid`].
    pub max_morphisms: usize,
    /// Largest semilattice size for the exhaustive bijection search.
    pub max_semilattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_carrier: 4096,
            max_vertices: 16,
            max_morphisms: 64,
            max_semilattice: 3,
        }
    }
}

impl Limits {
    /// Defaults overridden by `STEINBERG_MAX_CARRIER` and
    /// `STEINBERG_MAX_VERTICES` when those are set to valid numbers.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = read_env("STEINBERG_MAX_CARRIER") {
            limits.max_carrier = n;
        }
        if let Some(n) = read_env("STEINBERG_MAX_VERTICES") {
            limits.max_vertices = n;
        }
        limits
    }

    /// Errors when `requested` exceeds the carrier bound. Explicit tables are
    /// additionally capped at 2^16 entries per side so indices fit in `u16`.
    pub fn check_carrier(&self, what: &str, requested: usize) -> Result<(), LimitExceeded> {
        let hard = 1usize << 16;
        let bound = self.max_carrier.min(hard);
        if requested > bound {
            return Err(LimitExceeded {
                what: what.to_string(),
                bound,
                requested,
            });
        }
        Ok(())
    }

    pub fn check_vertices(&self, what: &str, requested: usize) -> Result<(), LimitExceeded> {
        check(what, self.max_vertices, requested)
    }

    pub fn check_morphisms(&self, what: &str, requested: usize) -> Result<(), LimitExceeded> {
        check(what, self.max_morphisms, requested)
    }

    pub fn check_semilattice(&self, what: &str, requested: usize) -> Result<(), LimitExceeded> {
        check(what, self.max_semilattice, requested)
    }
}

fn check(what: &str, bound: usize, requested: usize) -> Result<(), LimitExceeded> {
    if requested > bound {
        return Err(LimitExceeded {
            what: what.to_string(),
            bound,
            requested,
        });
    }
    Ok(())
}

fn read_env(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.trim().parse().ok()
}

/// A bounded operation was asked to exceed its configured bound.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{what}: requested size {requested} exceeds the configured bound {bound}")]
pub struct LimitExceeded {
    pub what: String,
    pub bound: usize,
    pub requested: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_desk_scale() {
        let limits = Limits::default();
        assert_eq!(limits.max_carrier, 4096);
        assert_eq!(limits.max_vertices, 16);
        assert!(limits.check_carrier("matrix semiring", 512).is_ok());
        let err = limits.check_carrier("matrix semiring", 65536).unwrap_err();
        assert_eq!(err.bound, 4096);
        assert_eq!(err.requested, 65536);
    }

    #[test]
    fn env_overrides_parse() {
        // from_env falls back to defaults when the variables are unset; the
        // CLI integration tests exercise the override path in a subprocess.
        let limits = Limits::from_env();
        assert!(limits.max_carrier >= 1);
    }
}
