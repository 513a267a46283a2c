//! Reductions, strong equivalences, tensor products of reductions and the
//! basic and easy perturbation lemmas.

mod equivalence;
mod perturbation;
mod reduction;

pub use equivalence::{Direction, Leg, StrongEquivalence};
pub use perturbation::{
    basic_perturbation_lemma, bpl_onto, easy_perturbation_lemma, epl_onto, Guard, Perturbed,
    SeriesStats,
};
pub use reduction::{
    check_reduction, check_reduction_on, elementary_expansion, require_reduction, tensor_reduction,
    IdentityFailure, Reduction, ReductionReport, TensorVariant, IDENTITY_FG, IDENTITY_FH,
    IDENTITY_F_CHAIN, IDENTITY_G_CHAIN, IDENTITY_HG, IDENTITY_HH, IDENTITY_HOMOTOPY,
};
