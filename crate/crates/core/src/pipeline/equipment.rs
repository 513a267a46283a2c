use alloc::sync::Arc;

use crate::error::{Error, Result};
use crate::morse::{morse_reduction, DiscreteVectorField, EmlField, MorseReduction};
use crate::reductions::{Leg, Reduction, StrongEquivalence};
use crate::simplicial::{normalized_chains, SimplicialSet};
use crate::twisted::Tcp;
use crate::zchain::ChainComplex;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Trivial,
    Morse,
    Supplied,
}

#[derive(Clone, Debug)]
pub enum SideMap {
    Reduction(Reduction),
    /// `C(X) ⇐ D ⇒ EC(X)`, or a single downward reduction.
    Equivalence(StrongEquivalence),
}

/// How one factor of a TCP is made effective.
#[derive(Clone, Debug)]
pub struct Side {
    pub map: SideMap,
    pub provenance: Provenance,
    /// Set when the reduction comes from a vector field.
    pub morse: Option<MorseReduction>,
}

impl Side {
    pub fn trivial(x: &Arc<dyn SimplicialSet>) -> Side {
        Side {
            map: SideMap::Reduction(Reduction::trivial(&normalized_chains(x))),
            provenance: Provenance::Trivial,
            morse: None,
        }
    }

    pub fn morse(
        x: &Arc<dyn SimplicialSet>,
        field: Arc<dyn DiscreteVectorField>,
        guard: Option<usize>,
    ) -> Side {
        let m = morse_reduction(x.clone(), field, guard);
        Side {
            map: SideMap::Reduction(m.reduction.clone()),
            provenance: Provenance::Morse,
            morse: Some(m),
        }
    }

    pub fn reduction(r: Reduction) -> Side {
        Side {
            map: SideMap::Reduction(r),
            provenance: Provenance::Supplied,
            morse: None,
        }
    }

    /// `eq` must be `[Up(a), Down(b)]` or `[Down(b)]`.
    pub fn equivalence(eq: StrongEquivalence) -> Result<Side> {
        match eq.legs() {
            [Leg::Up(_), Leg::Down(_)] | [Leg::Down(_)] => Ok(Side {
                map: SideMap::Equivalence(eq),
                provenance: Provenance::Supplied,
                morse: None,
            }),
            _ => Err(Error::Invalid(
                "a side equivalence must be C ⇐ D ⇒ EC or a single reduction".into(),
            )),
        }
    }

    /// The reduction `C(X) ⇒ EC(X)`, if the side is reduction-shaped.
    pub fn as_reduction(&self) -> Option<&Reduction> {
        match &self.map {
            SideMap::Reduction(r) => Some(r),
            SideMap::Equivalence(e) => e.as_reduction(),
        }
    }

    /// `(ρ_1, ρ_2)` with `ρ_1: D ⇒ C(X)` and `ρ_2: D ⇒ EC(X)`.
    pub fn legs(&self) -> (Reduction, Reduction) {
        match &self.map {
            SideMap::Reduction(r) => (Reduction::trivial(&r.top), r.clone()),
            SideMap::Equivalence(e) => match e.legs() {
                [Leg::Up(a), Leg::Down(b)] => (a.clone(), b.clone()),
                [Leg::Down(b)] => (Reduction::trivial(&b.top), b.clone()),
                _ => unreachable!("checked in Side::equivalence"),
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        match &self.map {
            SideMap::Reduction(r) => r.is_trivial(),
            SideMap::Equivalence(e) => e.is_trivial(),
        }
    }

    /// The complex `C(X)` this side starts from.
    pub fn chains(&self) -> &ChainComplex {
        match &self.map {
            SideMap::Reduction(r) => &r.top,
            SideMap::Equivalence(e) => e.start(),
        }
    }
}

/// Effective data for the fiber and the base of a TCP.
#[derive(Clone, Debug)]
pub struct Equipment {
    pub fiber: Side,
    pub base: Side,
}

impl Equipment {
    pub fn trivial(tcp: &Tcp) -> Equipment {
        Equipment {
            fiber: Side::trivial(&tcp.fiber),
            base: Side::trivial(tcp.base()),
        }
    }

    /// Equipment for the builtin TCPs: the EML field on each K(Z,1) factor,
    /// trivial elsewhere.
    pub fn for_builtin(name: &str, tcp: &Tcp) -> Result<Equipment> {
        let eml = |x: &Arc<dyn SimplicialSet>| Side::morse(x, Arc::new(EmlField), None);
        match name {
            "klein" | "torus" => Ok(Equipment::trivial(tcp)),
            "hopf" => Ok(Equipment {
                fiber: eml(&tcp.fiber),
                base: Side::trivial(tcp.base()),
            }),
            "double-cover" => Ok(Equipment {
                fiber: Side::trivial(&tcp.fiber),
                base: eml(tcp.base()),
            }),
            _ => Err(Error::UnknownBuiltin(name.into())),
        }
    }
}
