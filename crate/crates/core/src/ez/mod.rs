//! The Eilenberg–Zilber reduction `C(F × B) ⇒ C(F) ⊗ C(B)`: Alexander–Whitney
//! (f), the Eilenberg–MacLane shuffle map (g) and the Shih homotopy (h).

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::reductions::Reduction;
use crate::simplicial::{
    canonical_degeneracy, index_subsets, make_pair, normalized_chains, simplex_chain, split_pair,
    Product, Simplex, SimplicialSet,
};
use crate::zchain::{ChainComplex, FormalSum, Gen, GradedMap};

/// `(μ, ν)` with `μ` of size `p` and `ν` its complement in `0..p+q`, both
/// ascending, and the sign of the shuffle permutation.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<u32>, Vec<u32>, i32)> {
    index_subsets(p + q, p)
        .into_iter()
        .map(|mut mu| {
            mu.reverse();
            let nu: Vec<u32> = (0..(p + q) as u32).filter(|i| !mu.contains(i)).collect();
            let inversions: usize = mu.iter().enumerate().map(|(i, &m)| m as usize - i).sum();
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            (mu, nu, sign)
        })
        .collect()
}

fn descending(v: &[u32], offset: u32) -> Vec<u32> {
    v.iter().rev().map(|&i| i + offset).collect()
}

fn pair_components(g: &Gen) -> Result<(Simplex, Simplex)> {
    split_pair(&Simplex::nondegenerate(g.clone()))
}

fn tensor_components(g: &Gen) -> Result<(&Gen, &Gen)> {
    g.as_tensor()
        .ok_or_else(|| Error::Invalid(format!("{g} is not a tensor generator")))
}

/// `AW(x, y) = Σ_i d̃^{n-i} x ⊗ d_0^i y`, degenerate factors dropped.
pub fn alexander_whitney(fiber: Arc<dyn SimplicialSet>, base: Arc<dyn SimplicialSet>) -> GradedMap {
    GradedMap::new("AW", 0, move |g| {
        let (x, y) = pair_components(g)?;
        let n = x.dim();
        let mut out = FormalSum::zero();
        for i in 0..=n {
            let front = fiber.tilde_d(&x, n - i)?;
            if front.is_degenerate() {
                continue;
            }
            let back = base.back_face(&y, i)?;
            if back.is_degenerate() {
                continue;
            }
            out.add_term(
                Gen::tensor(front.into_core(), back.into_core()),
                BigInt::from(1),
            );
        }
        Ok(out)
    })
}

/// The shuffle map `x ⊗ y ↦ Σ sign(μ,ν) (s_ν x, s_μ y)`.
pub fn eml_shuffle() -> GradedMap {
    GradedMap::new("EML", 0, |g| {
        let (x, y) = tensor_components(g)?;
        let (p, q) = (x.degree(), y.degree());
        let mut out = FormalSum::zero();
        for (mu, nu, sign) in shuffles(p, q) {
            let sx = Simplex::from_canonical(descending(&nu, 0), x.clone());
            let sy = Simplex::from_canonical(descending(&mu, 0), y.clone());
            out.add_scaled(&simplex_chain(&make_pair(sx, sy)), &BigInt::from(sign));
        }
        Ok(out)
    })
}

/// The Shih homotopy on a pair `(a, b)` of dimension m:
///
/// `Σ (-1)^{m̄ + 1 + ε(α,β)} (s_{β+m̄} s_{m̄-1} d_{m-q+1} ⋯ d_m a, s_{α+m̄} d_{m̄} ⋯ d_{m-q-1} b)`
///
/// over `0 ≤ q ≤ m-1`, `0 ≤ p ≤ m-q-1`, `(α, β)` a `(p+1, q)`-shuffle and
/// `m̄ = m - p - q`. Vanishes in dimension 0.
pub fn ez_homotopy(fiber: Arc<dyn SimplicialSet>, base: Arc<dyn SimplicialSet>) -> GradedMap {
    GradedMap::new("SH", 1, move |g| {
        let (a, b) = pair_components(g)?;
        let m = a.dim();
        let mut out = FormalSum::zero();
        for q in 0..m {
            let front = fiber.tilde_d(&a, q)?;
            for p in 0..m - q {
                let mbar = m - p - q;
                // d_{m̄} ⋯ d_{m-q-1} b: remove the p vertices m̄ … m-q-1
                let mut back = b.clone();
                for i in (mbar..m - q).rev() {
                    back = base.face(i, &back)?;
                }
                let a_part = front.degenerate(mbar as u32 - 1);
                for (alpha, beta, eps) in shuffles(p + 1, q) {
                    let x = canonical_degeneracy(&descending(&beta, mbar as u32), a_part.clone());
                    let y = canonical_degeneracy(&descending(&alpha, mbar as u32), back.clone());
                    let sign = if mbar % 2 == 1 { eps } else { -eps };
                    out.add_scaled(&simplex_chain(&make_pair(x, y)), &BigInt::from(sign));
                }
            }
        }
        Ok(out)
    })
}

/// The Eilenberg–Zilber reduction together with the product it lives on.
#[derive(Clone, Debug)]
pub struct EzReduction {
    pub reduction: Reduction,
    pub product: Arc<dyn SimplicialSet>,
    pub fiber_chains: ChainComplex,
    pub base_chains: ChainComplex,
}

/// `(AW, EML, SH): C(F × B) ⇒ C(F) ⊗ C(B)`.
pub fn ez_reduction(fiber: &Arc<dyn SimplicialSet>, base: &Arc<dyn SimplicialSet>) -> EzReduction {
    let product: Arc<dyn SimplicialSet> = Arc::new(Product::new(fiber.clone(), base.clone()));
    ez_reduction_on(fiber, base, product)
}

/// As [`ez_reduction`] with the (untwisted) product supplied, so that its
/// chains can be shared.
pub fn ez_reduction_on(
    fiber: &Arc<dyn SimplicialSet>,
    base: &Arc<dyn SimplicialSet>,
    product: Arc<dyn SimplicialSet>,
) -> EzReduction {
    let fiber_chains = normalized_chains(fiber);
    let base_chains = normalized_chains(base);
    let top = normalized_chains(&product);
    let bottom = ChainComplex::tensor(&fiber_chains, &base_chains);
    let reduction = Reduction::new(
        top,
        bottom,
        alexander_whitney(fiber.clone(), base.clone()),
        eml_shuffle(),
        ez_homotopy(fiber.clone(), base.clone()),
    );
    EzReduction {
        reduction,
        product,
        fiber_chains,
        base_chains,
    }
}

#[cfg(test)]
mod tests;
