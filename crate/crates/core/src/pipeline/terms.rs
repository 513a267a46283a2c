use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::morse::zero_face_map;
use crate::reductions::Reduction;
use crate::simplicial::{simplex_chain, Simplex};
use crate::twisted::{sigma_action, Tcp, TwistingCochain};
use crate::zchain::{tensor_sums, FormalSum, Gen};

/// The recurrence `y_{i+1} ⊗ b_{i+1} = g_F f_F σ(y_i ⊗ t(d̃^{n-1} b_i)) ⊗ h_B d_0 b_i`
/// started at `y ⊗ b`, applied term by term. Entry `i` is the part of
/// `(h_{F⊗B} ∘ t∩)^i (y ⊗ b)` whose base factor keeps the degree of `b`; the
/// list stops before the first zero entry.
pub fn transfer_terms(
    tcp: &Tcp,
    t: &TwistingCochain,
    rho_f: &Reduction,
    rho_b: &Reduction,
    y: &Gen,
    b: &Gen,
    guard: usize,
) -> Result<Vec<FormalSum>> {
    let sigma = sigma_action(tcp.action.clone());
    let d0 = zero_face_map(tcp.base().clone());
    let base = tcp.base();
    let mut current = FormalSum::from_gen(Gen::tensor(y.clone(), b.clone()));
    let mut out = vec![current.clone()];
    loop {
        let mut next = FormalSum::zero();
        for (g, k) in current.iter() {
            let (y, b) = g
                .as_tensor()
                .ok_or_else(|| Error::Invalid(alloc::format!("{g} is not a tensor generator")))?;
            let n = b.degree();
            if n == 0 {
                continue;
            }
            let front = simplex_chain(&base.tilde_d(&Simplex::nondegenerate(b.clone()), n - 1)?);
            let tb = t.apply(&front)?;
            if tb.is_zero() {
                continue;
            }
            let bb = rho_b.h.apply(&d0.apply_gen(b)?)?;
            if bb.is_zero() {
                continue;
            }
            let s = sigma.apply(&tensor_sums(&FormalSum::from_gen(y.clone()), &tb))?;
            let yy = rho_f.g.apply(&rho_f.f.apply(&s)?)?;
            next.add_scaled(&tensor_sums(&yy, &bb), k);
        }
        if next.is_zero() {
            return Ok(out);
        }
        if out.len() >= guard {
            return Err(Error::NilpotencyGuardExceeded {
                generator: Gen::tensor(y.clone(), b.clone()),
                terms: guard,
            });
        }
        out.push(next.clone());
        current = next;
    }
}
