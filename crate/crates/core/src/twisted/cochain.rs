use alloc::format;
use alloc::sync::Arc;

use num_bigint::BigInt;

use super::{twisted_ez, Tcp, TwistedEz};
use crate::error::{Error, Result};
use crate::ez::{alexander_whitney, eml_shuffle};
use crate::reductions::Guard;
use crate::simplicial::{
    diagonal_chain, simplex_chain, split_pair, GroupAction, Simplex, SimplicialSet,
};
use crate::zchain::{associate_left, tensor_maps, tensor_sums, FormalSum, Gen, GradedMap};

/// Shih's twisting cochain `t: C_n(B) → C_{n-1}(G)`, read off the perturbed
/// differential of the principal product `G ×_τ B`:
/// `t(b) = p λ_0 (∂_t - ∂_⊗)(e_0 ⊗ b)`.
#[derive(Clone, Debug)]
pub struct TwistingCochain {
    pub map: GradedMap,
    pub principal: TwistedEz,
}

impl TwistingCochain {
    pub fn apply(&self, b: &FormalSum) -> Result<FormalSum> {
        self.map.apply(b)
    }
}

/// Builds `t` from the principal product over `tcp`'s base with `tcp`'s τ.
pub fn twisting_cochain(tcp: &Tcp, guard: Guard) -> TwistingCochain {
    let principal = twisted_ez(&Tcp::principal(tcp.tau.clone()), guard);
    let delta = principal.delta().clone();
    let unit = tcp.group.unit(0).into_core();
    let map = GradedMap::new("t", -1, move |b| {
        if b.degree() == 0 {
            return Ok(FormalSum::zero());
        }
        let image = delta.apply_gen(&Gen::tensor(unit.clone(), b.clone()))?;
        let mut out = FormalSum::zero();
        for (g, k) in image.iter() {
            let (x, c) = g
                .as_tensor()
                .ok_or_else(|| Error::Invalid(format!("{g} is not a tensor generator")))?;
            // λ_0 keeps base degree 0; p multiplies by the augmentation of c
            if c.degree() == 0 {
                out.add_term(x.clone(), k.clone());
            }
        }
        Ok(out)
    });
    TwistingCochain { map, principal }
}

/// `σ = C(·) ∘ EML: C(F) ⊗ C(G) → C(F)`.
pub fn sigma_action(action: Arc<dyn GroupAction>) -> GradedMap {
    let eml = eml_shuffle();
    GradedMap::new("σ", 0, move |g| {
        let mut out = FormalSum::zero();
        for (pair, k) in eml.apply_gen(g)?.iter() {
            let (y, h) = split_pair(&Simplex::nondegenerate(pair.clone()))?;
            out.add_scaled(&simplex_chain(&action.act(&y, &h)?), k);
        }
        Ok(out)
    })
}

/// How [`cap_product`] evaluates `t∩`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CapMode {
    /// `Σ_{i=1}^{n} (-1)^k σ(y ⊗ t(d̃^{n-i} b)) ⊗ d_0^i b` for `y ∈ C_k(F)`.
    Formula,
    /// `(σ ⊗ 1)(1 ⊗ t ⊗ 1)(1 ⊗ D)` with `D = AW ∘ C(Δ)`.
    Composite,
}

/// `t∩: C(F) ⊗ C(B) → C(F) ⊗ C(B)` of degree -1.
pub fn cap_product(
    t: &TwistingCochain,
    action: Arc<dyn GroupAction>,
    base: Arc<dyn SimplicialSet>,
    mode: CapMode,
) -> GradedMap {
    let sigma = sigma_action(action);
    match mode {
        CapMode::Formula => {
            let t = t.map.clone();
            GradedMap::new("t∩", -1, move |g| {
                let (y, b) = g
                    .as_tensor()
                    .ok_or_else(|| Error::Invalid(format!("{g} is not a tensor generator")))?;
                let n = b.degree();
                let b = Simplex::nondegenerate(b.clone());
                let sign = BigInt::from(if y.degree() % 2 == 0 { 1 } else { -1 });
                let mut out = FormalSum::zero();
                for i in 1..=n {
                    let back = base.back_face(&b, i)?;
                    if back.is_degenerate() {
                        continue;
                    }
                    let front = simplex_chain(&base.tilde_d(&b, n - i)?);
                    let tb = t.apply(&front)?;
                    if tb.is_zero() {
                        continue;
                    }
                    let s = sigma.apply(&tensor_sums(&FormalSum::from_gen(y.clone()), &tb))?;
                    let term = tensor_sums(&s, &FormalSum::from_gen(back.into_core()));
                    out.add_scaled(&term, &sign);
                }
                Ok(out)
            })
        }
        CapMode::Composite => {
            let id = GradedMap::identity();
            let d = alexander_whitney(base.clone(), base).compose(&diagonal_chain());
            tensor_maps(&sigma, &id)
                .compose(&associate_left())
                .compose(&tensor_maps(&id, &tensor_maps(&t.map, &id)))
                .compose(&tensor_maps(&id, &d))
                .relabel("t∩")
        }
    }
}

/// Whether `t` vanishes on every given base generator of degree 1.
pub fn vanishes_on(t: &TwistingCochain, gens: &[Gen]) -> Result<bool> {
    for b in gens {
        if !t.map.apply_gen(b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `τ(b) - e_0` as a chain of `G` (a degenerate τ(b) counts as zero).
pub fn tau_minus_unit(tcp: &Tcp, b: &Gen) -> Result<FormalSum> {
    let tau = tcp.tau.apply(&Simplex::nondegenerate(b.clone()))?;
    Ok(simplex_chain(&tau) - simplex_chain(&tcp.group.unit(tau.dim())))
}
