//! Simplicial sets and groups in canonical degeneracy form, products,
//! normalized chains and the built-in spaces.

mod builtin;
mod chains;
mod finite;
mod group;
mod kz1;
mod kzm0;
mod product;
mod set;
mod simplex;

pub use builtin::{builtin, Builtin};
pub use chains::{chains_key, diagonal_chain, normalized_chains, simplex_chain};
pub use finite::FiniteSimplicialSet;
pub use group::{
    check_action, check_group_axioms, CellPermutationAction, FiniteGroup, GroupAction,
    RightMultiplication, SimplicialGroup, TableAction, TrivialAction,
};
pub use kz1::{kz1_simplex, kz1_tuple, Kz1, SAMPLE_ENTRY_BOUND};
pub use kzm0::Kzm0;
pub use product::{make_pair, split_pair, Product, ZeroFaceTwist};
pub use set::{all_cells, all_simplices, check_simplicial_identities, face, SimplicialSet};
pub use simplex::{canonical_degeneracy, index_subsets, Simplex};
