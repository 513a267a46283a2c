//! Effective homology of twisted cartesian products: chain-level algebra,
//! reductions and perturbation lemmas, simplicial sets, the Eilenberg–Zilber
//! reduction, twisting cochains, discrete vector fields and the pipelines
//! that combine them.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod ez;
pub mod morse;
pub mod pipeline;
pub mod reductions;
pub mod simplicial;
pub mod twisted;
pub mod zchain;

pub use error::{Error, Result};
