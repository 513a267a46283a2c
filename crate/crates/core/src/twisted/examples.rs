use alloc::format;
use alloc::sync::Arc;

use super::{Tcp, TwistingOperator};
use crate::error::{Error, Result};
use crate::simplicial::{
    CellPermutationAction, FiniteSimplicialSet, Kz1, Kzm0, RightMultiplication, Simplex,
    SimplicialGroup, SimplicialSet,
};
use crate::zchain::Gen;

fn circle_with_flip(twisted: bool) -> Tcp {
    let fiber: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::circle2());
    let base: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::sphere(1));
    let z2 = Arc::new(Kzm0::new(2));
    let group: Arc<dyn SimplicialGroup> = z2.clone();
    let tau = if twisted {
        TwistingOperator::new(base, group, move |_| Ok(z2.element(1, 0)))
    } else {
        TwistingOperator::trivial(base, group)
    };
    Tcp::new(fiber, Arc::new(CellPermutationAction::flip()), tau)
}

/// The Klein bottle: circle2 twisted over the minimal circle by the flip.
pub fn klein() -> Tcp {
    circle_with_flip(true)
}

/// circle2 × minimal circle with the trivial twist.
pub fn torus() -> Tcp {
    circle_with_flip(false)
}

/// K(Z,1) ×_τ S² with τ(σ2) = [1], a model of S³. K(Z,1) is cut off above
/// `max_dim`.
pub fn hopf(max_dim: usize) -> Tcp {
    let k: Arc<dyn SimplicialGroup> = Arc::new(Kz1::with_cap(max_dim));
    let base: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::sphere(2));
    let tau = TwistingOperator::new(base, k.clone(), |b| match b {
        Gen::Cell { dim: 2, .. } => Ok(Simplex::nondegenerate(Gen::bar(&[1]))),
        _ => Err(Error::Invalid(format!("τ is not defined on {b}"))),
    });
    let fiber: Arc<dyn SimplicialSet> = k.clone();
    Tcp::new(fiber, Arc::new(RightMultiplication(k)), tau)
}

/// K(Z/2,0) ×_τ K(Z,1) with τ[a1|…|an] = a1 mod 2: the connected double
/// cover of the circle. K(Z,1) is cut off above `max_dim`.
pub fn double_cover(max_dim: usize) -> Tcp {
    let z2 = Arc::new(Kzm0::new(2));
    let group: Arc<dyn SimplicialGroup> = z2.clone();
    let base: Arc<dyn SimplicialSet> = Arc::new(Kz1::with_cap(max_dim));
    let tau = TwistingOperator::new(base, group.clone(), move |b| match b {
        Gen::Bar(a) if !a.is_empty() => Ok(z2.element(a[0], a.len() - 1)),
        _ => Err(Error::Invalid(format!("τ is not defined on {b}"))),
    });
    let fiber: Arc<dyn SimplicialSet> = group.clone();
    Tcp::new(fiber, Arc::new(RightMultiplication(group)), tau)
}

/// `klein`, `torus`, `hopf` or `double-cover`.
pub fn builtin_tcp(name: &str, max_dim: usize) -> Result<Tcp> {
    match name {
        "klein" => Ok(klein()),
        "torus" => Ok(torus()),
        "hopf" => Ok(hopf(max_dim)),
        "double-cover" => Ok(double_cover(max_dim)),
        _ => Err(Error::UnknownBuiltin(name.into())),
    }
}
