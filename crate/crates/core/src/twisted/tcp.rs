use alloc::format;
use alloc::sync::Arc;

use super::TwistingOperator;
use crate::error::Result;
use crate::ez::{ez_reduction_on, EzReduction};
use crate::reductions::{basic_perturbation_lemma, Guard, Perturbed};
use crate::simplicial::{
    simplex_chain, GroupAction, Product, RightMultiplication, Simplex, SimplicialGroup,
    SimplicialSet, ZeroFaceTwist,
};
use crate::zchain::GradedMap;

struct TauTwist {
    action: Arc<dyn GroupAction>,
    tau: TwistingOperator,
}

impl ZeroFaceTwist for TauTwist {
    fn twist(&self, d0y: Simplex, b: &Simplex) -> Result<Simplex> {
        self.action.act(&d0y, &self.tau.apply(b)?)
    }
}

/// Twisted cartesian product `F ×_τ B`: `d_0 (y, b) = (d_0 y · τ(b), d_0 b)`,
/// all other faces and degeneracies componentwise.
#[derive(Clone)]
pub struct Tcp {
    pub fiber: Arc<dyn SimplicialSet>,
    pub group: Arc<dyn SimplicialGroup>,
    pub action: Arc<dyn GroupAction>,
    pub tau: TwistingOperator,
    /// The twisted product itself.
    pub space: Arc<dyn SimplicialSet>,
    /// `F × B` with the same simplices and untwisted faces.
    pub untwisted: Arc<dyn SimplicialSet>,
}

impl Tcp {
    pub fn new(
        fiber: Arc<dyn SimplicialSet>,
        action: Arc<dyn GroupAction>,
        tau: TwistingOperator,
    ) -> Self {
        let base = tau.base().clone();
        let group = tau.group().clone();
        let twist = Arc::new(TauTwist {
            action: action.clone(),
            tau: tau.clone(),
        });
        let space: Arc<dyn SimplicialSet> =
            Arc::new(Product::twisted(fiber.clone(), base.clone(), twist));
        let untwisted: Arc<dyn SimplicialSet> = Arc::new(Product::new(fiber.clone(), base));
        Tcp {
            fiber,
            group,
            action,
            tau,
            space,
            untwisted,
        }
    }

    /// `G ×_τ B` with `G` acting on itself from the right.
    pub fn principal(tau: TwistingOperator) -> Self {
        let g = tau.group().clone();
        let fiber: Arc<dyn SimplicialSet> = g.clone();
        Self::new(fiber, Arc::new(RightMultiplication(g)), tau)
    }

    pub fn base(&self) -> &Arc<dyn SimplicialSet> {
        self.tau.base()
    }
}

impl core::fmt::Debug for Tcp {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Tcp({})", self.space.name())
    }
}

/// `δ_τ (y, b) = (d_0 y · τ(b), d_0 b) - (d_0 y, d_0 b)` on the chains of the
/// untwisted product; zero in degree 0.
pub fn twisted_perturbation(tcp: &Tcp) -> GradedMap {
    if tcp.tau.is_trivial() {
        return GradedMap::zero(-1);
    }
    let (twisted, plain) = (tcp.space.clone(), tcp.untwisted.clone());
    GradedMap::new(format!("δτ({})", tcp.space.name()), -1, move |g| {
        if g.degree() == 0 {
            return Ok(crate::zchain::FormalSum::zero());
        }
        let s = Simplex::nondegenerate(g.clone());
        Ok(simplex_chain(&twisted.face(0, &s)?) - simplex_chain(&plain.face(0, &s)?))
    })
}

/// The Eilenberg–Zilber reduction of `F × B` and its perturbation by `δ_τ`.
#[derive(Clone, Debug)]
pub struct TwistedEz {
    pub ez: EzReduction,
    pub perturbed: Perturbed,
}

impl TwistedEz {
    /// `(C(E), ∂_τ) ⇒ (C(F) ⊗ C(B), ∂_t)`.
    pub fn reduction(&self) -> &crate::reductions::Reduction {
        &self.perturbed.reduction
    }

    /// `∂_t - ∂_⊗`.
    pub fn delta(&self) -> &GradedMap {
        &self.perturbed.delta_bottom
    }
}

pub fn twisted_ez(tcp: &Tcp, guard: Guard) -> TwistedEz {
    let ez = ez_reduction_on(&tcp.fiber, tcp.base(), tcp.untwisted.clone());
    let perturbed = basic_perturbation_lemma(&ez.reduction, &twisted_perturbation(tcp), guard);
    TwistedEz { ez, perturbed }
}
