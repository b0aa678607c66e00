//! Code constructions: explicit residue-class codes, greedy covers, sampled
//! almost-covers, tensor compositions and the recursive randomized builders.
//! Every public builder verifies its output before returning it.

mod builders;
mod greedy;
mod sampling;
mod tensor;
mod vt;

pub use builders::{build_deletion_cover_r, build_insertion_cover_r, build_single_insertion_cover, BuilderParams};
pub use greedy::greedy_cover;
pub use sampling::{
    sample_almost_cover_deletion_r, sample_almost_cover_insertion_r, sample_almost_cover_single_insertion,
    AlmostCover, SeedStream,
};
pub use tensor::{compose_deletion_r, compose_insertion_r, compose_single_insertion};
pub use vt::{nbvt_code, nbvt_covering_witness, vt_code, vt_covering_witness, NbvtWitness};
