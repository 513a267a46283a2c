//! Discrete vector fields on simplicial sets and the reductions they induce
//! onto critical cells.

mod field;
mod reduction;

pub use field::{
    check_field, check_star_condition, classify, CellClass, DiscreteVectorField, EmlField,
    FiniteField,
};
pub use reduction::{
    check_admissible, hd0_witness, morse_reduction, zero_face_map, MorseReduction,
};
