use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{make_pair, Simplex, SimplicialSet};
use crate::zchain::{simplicial_boundary, ChainComplex, ComplexKey, FormalSum, GradedMap};

/// Key under which the chains of `x` are registered; equal for clones of the
/// same `Arc`.
pub fn chains_key(x: &Arc<dyn SimplicialSet>) -> ComplexKey {
    ComplexKey::Chains(Arc::as_ptr(x) as *const () as usize)
}

/// A simplex as a chain: its core if nondegenerate, zero otherwise.
pub fn simplex_chain(s: &Simplex) -> FormalSum {
    if s.is_degenerate() {
        FormalSum::zero()
    } else {
        FormalSum::from_gen(s.core().clone())
    }
}

/// Normalized chains: generated by nondegenerate simplices, degenerate faces
/// count as zero.
pub fn normalized_chains(x: &Arc<dyn SimplicialSet>) -> ChainComplex {
    let faces_of = x.clone();
    let diff = simplicial_boundary(format!("∂{}", x.name()), move |g| {
        let s = Simplex::nondegenerate(g.clone());
        (0..=g.degree())
            .map(|i| Ok(simplex_chain(&faces_of.face(i, &s)?)))
            .collect::<crate::error::Result<Vec<_>>>()
    });
    let basis_of = x.clone();
    ChainComplex::with_key(
        chains_key(x),
        format!("C({})", x.name()),
        move |n| basis_of.cells(n),
        diff,
        x.dim_cap(),
    )
}

/// `C(Δ)`: `x ↦ (x, x)`.
pub fn diagonal_chain() -> GradedMap {
    GradedMap::unmemoized("C(Δ)", 0, |g| {
        let s = Simplex::nondegenerate(g.clone());
        Ok(simplex_chain(&make_pair(s.clone(), s)))
    })
}
