//! Size guards for the exhaustive algorithms.

use serde::{Deserialize, Serialize};

/// Environment variable that overrides [`Limits::transform_max`].
pub const SIZE_CAP_VAR: &str = "BENT_SIZE_CAP";

/// Upper bounds on problem sizes. Exceeding one yields a size-guard error
/// rather than an unbounded computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest domain order p^n for which a Walsh transform is computed.
    pub transform_max: u64,
    /// Largest set handled by the pairwise difference count.
    pub brute_force_max: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { transform_max: 531_441, brute_force_max: 65_536 }
    }
}

impl Limits {
    /// Defaults, with the transform cap replaced by `BENT_SIZE_CAP` when that
    /// variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(SIZE_CAP_VAR).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            if cap > 0 {
                limits.transform_max = cap;
            }
        }
        limits
    }

    pub fn unbounded() -> Self {
        Limits { transform_max: u64::MAX, brute_force_max: u64::MAX }
    }
}
