use serde::{Deserialize, Serialize};

/// Environment variable overriding [`Budget::tuples`].
pub const TUPLE_BUDGET_ENV: &str = "TENSORSYM_TUPLE_BUDGET";
/// Environment variable overriding [`Budget::group`].
pub const GROUP_CAP_ENV: &str = "TENSORSYM_GROUP_CAP";

/// Enumeration limits shared by the exhaustive algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of index tuples (`n^k`) or dense tensor entries.
    pub tuples: u128,
    /// Maximum group order materialized by closure.
    pub group: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            tuples: 10_000_000,
            group: 100_000,
        }
    }
}

impl Budget {
    /// Defaults, overridden by `TENSORSYM_TUPLE_BUDGET` / `TENSORSYM_GROUP_CAP` when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var(TUPLE_BUDGET_ENV).ok().and_then(|s| s.parse().ok()) {
            b.tuples = v;
        }
        if let Some(v) = std::env::var(GROUP_CAP_ENV).ok().and_then(|s| s.parse().ok()) {
            b.group = v;
        }
        b
    }
}

/// `n^k` without overflow, saturating at `u128::MAX`.
pub fn tuple_count(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(n as u128);
    }
    acc
}
