//! Covering codes for insertion and deletion channels over q-ary alphabets.
//!
//! A code `C ⊆ Σ_q^n` is an `R`-insertion-covering code when every word of
//! length `n + R` is a supersequence of some codeword, and an
//! `R`-deletion-covering code when every word of length `n - R` is a
//! subsequence of some codeword. The crate provides exact ball enumeration,
//! lower bounds in exact rational arithmetic, explicit and randomized
//! constructions, and exhaustive verification and search.

pub mod balls;
mod bitmap;
pub mod bounds;
pub mod code;
pub mod constructions;
pub mod error;
pub mod limits;
pub mod math;
pub mod par;
pub mod search;
pub mod space;
pub mod verify;
pub mod word;

pub use balls::{
    deletion_ball, deletion_ball_size, deletion_ball_size_lower, deletion_ball_size_upper,
    insertion_ball, insertion_ball_size, BallSpec, Direction,
};
pub use bounds::{
    asymptotic_deletion_lower, asymptotic_insertion_lower, deletion_lower_bound_general,
    deletion_lower_bound_r1_closed, deletion_lower_bound_runs_sum, density, density_deletion, density_insertion,
    format_rational, generalized_weighted_bound_exact, insertion_lower_bound, BoundKind, BoundReport, DensityReport,
};
pub use code::Code;
pub use constructions::{
    build_deletion_cover_r, build_insertion_cover_r, build_single_insertion_cover, compose_deletion_r,
    compose_insertion_r, compose_single_insertion, greedy_cover, nbvt_code, nbvt_covering_witness,
    sample_almost_cover_deletion_r, sample_almost_cover_insertion_r, sample_almost_cover_single_insertion, vt_code,
    vt_covering_witness, AlmostCover, BuilderParams, NbvtWitness, SeedStream,
};
pub use error::{Error, Result};
pub use search::{min_cover_exact, OptimumCertificate, SearchInterval, SearchOutcome};
pub use space::{count_words_with_runs, enumerate_words, WordSpace};
pub use verify::{covering_radius, ensure_covering, is_covering, is_covering_via, uncovered_set, CoverReport, Route};
pub use word::{Alphabet, Word};
