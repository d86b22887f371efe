//! Size caps and search budgets.
//!
//! Every cap has a documented default; the command-line front end exposes
//! each of them as a flag.

use std::time::Duration;

/// Hard ceiling on explicit multiplication tables (elements are stored as `u16`).
pub const MAX_TABLE_ORDER: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Limits {
    /// Largest group any constructor will build.
    pub max_group_order: usize,
    /// Largest group whose subgroup lattice is enumerated.
    pub max_lattice_order: usize,
    /// Largest wreath product `|C|^k * k!` accepted before the table cap applies.
    pub max_wreath_order: usize,
    /// Largest configuration space `q^|G|` scanned by orbit enumeration.
    pub max_states: u64,
    /// Largest group or monoid handed to the exact rank search.
    pub max_oracle_order: usize,
    /// Wall-clock budget for a single rank search.
    pub rank_timeout: Duration,
    /// Largest `q^|G|` for brute-force enumeration of invertible automata.
    pub max_ica_points: u64,
    /// Largest `q^|G|` for brute-force enumeration of all automata.
    pub max_ca_points: u64,
    /// Largest number of local rules `q^(q^|G|)` realized one by one.
    pub max_ca_rules: u64,
    /// Largest number of invertible automata materialized as explicit permutations.
    pub max_listed_maps: u64,
    /// Exact orders are produced only up to this many decimal digits.
    pub max_exact_digits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: MAX_TABLE_ORDER,
            max_lattice_order: 256,
            max_wreath_order: 100_000,
            max_states: 1 << 24,
            max_oracle_order: 5000,
            rank_timeout: Duration::from_secs(60),
            max_ica_points: 64,
            max_ca_points: 16,
            max_ca_rules: 1 << 24,
            max_listed_maps: 100_000,
            max_exact_digits: 1_000_000,
        }
    }
}
