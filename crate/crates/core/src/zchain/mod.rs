//! Exact integer chain-level algebra: generators, formal sums, lazily
//! evaluated graded maps, chain complexes and Smith-normal-form homology.

mod complex;
mod gen;
mod homology;
mod map;
pub mod snf;
mod sum;

pub use complex::{augmentation, simplicial_boundary, Basis, ChainComplex, ComplexKey};
pub use gen::Gen;
pub use homology::{homology, HomologyBasis, HomologyGroup};
pub(crate) use map::fresh_id;
pub use map::{associate_left, tensor_maps, tensor_sums, GradedMap, Rule};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use sum::FormalSum;
