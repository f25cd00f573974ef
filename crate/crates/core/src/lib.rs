//! Erections of simple matroids.
//!
//! The central object is the free erection: the erection with the most new
//! copoints, obtained by expanding every copoint by one element and merging
//! sets whose intersection escapes all old copoints. Around it sit checkers
//! for log-concavity of Whitney numbers, an upper bound on the free
//! erection's size minimized over relabelings, and the rank-3 view as a
//! point-line incidence graph.

pub mod bounds;
pub mod erection;
pub mod error;
pub mod format;
pub mod matroid;
pub mod plp;
pub mod set;

#[cfg(test)]
mod testdata;

pub use bounds::{
    a_counts, bound_sum, check_free_lc, check_log_concavity, min_coline, minimize_bound,
    BoundReport, ConcavityReport, ConcavityVariant, FreeLcReport, SearchMode, SearchOptions,
};
pub use erection::{
    erect_with, expand, free_erection, free_erection_via_pair, in_strict_filter, pair_family,
    random_erection, random_matroid, random_matroid_with_max_rank, refine, refine_random_order,
    ErectionResult,
};
pub use error::{Error, Result};
pub use matroid::{
    validate_copoint_family, CopointDefect, ErectionDefect, Matroid, DEFAULT_BASES_CAP,
};
pub use plp::{
    plp_bound, BetaCheck, BetaOptions, BetaViolation, BipartiteIncidence, PlpReport,
    DEFAULT_SUBSET_CAP,
};
pub use set::{ElementSet, Permutation, SetFamily, MAX_GROUND};
