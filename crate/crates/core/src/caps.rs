use crate::error::{Error, Result};

/// Enumeration guard rails. Every exhaustive construction consults one of
/// these limits and fails with [`Error::CapExceeded`] instead of running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of candidate maps `|Y|^|X|` examined by map enumeration.
    pub maps: usize,
    /// Maximum carrier size for full-powerset constructions (`2^n` subsets).
    pub powerset_carrier: usize,
    /// Maximum number of increasing subsets materialised for one object.
    pub increasing: usize,
    /// Maximum number of elements in any materialised functor value.
    pub object: usize,
    /// Maximum quantale size for the totally-below search (`2^n` subsets).
    pub totally_below: usize,
    /// Iteration bound for fixpoint loops.
    pub iterations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            maps: 20_000,
            powerset_carrier: 12,
            increasing: 1 << 16,
            object: 1 << 12,
            totally_below: 16,
            iterations: 100_000,
        }
    }
}

impl Caps {
    /// `base^exp`, failing as soon as the running product passes `limit`.
    pub(crate) fn check_power(
        what: &'static str,
        base: usize,
        exp: usize,
        limit: usize,
    ) -> Result<usize> {
        let mut acc: usize = 1;
        for _ in 0..exp {
            acc = match acc.checked_mul(base) {
                Some(v) if v <= limit => v,
                _ => return Err(Error::cap(what, limit, usize::MAX.min(acc.saturating_mul(base)))),
            };
        }
        Ok(acc)
    }
}
