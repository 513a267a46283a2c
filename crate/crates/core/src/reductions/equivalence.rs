use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Reduction;
use crate::error::{Error, Result};
use crate::zchain::{ChainComplex, FormalSum};

/// One step of a zig-zag, read from left to right.
#[derive(Clone, Debug)]
pub enum Leg {
    /// From `r.top` down to `r.bottom`.
    Down(Reduction),
    /// From `r.bottom` up to `r.top`.
    Up(Reduction),
}

impl Leg {
    fn source(&self) -> &ChainComplex {
        match self {
            Leg::Down(r) => &r.top,
            Leg::Up(r) => &r.bottom,
        }
    }

    fn target(&self) -> &ChainComplex {
        match self {
            Leg::Down(r) => &r.bottom,
            Leg::Up(r) => &r.top,
        }
    }

    pub fn reduction(&self) -> &Reduction {
        match self {
            Leg::Down(r) | Leg::Up(r) => r,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// From the first complex of the zig-zag to the last.
    Forward,
    Backward,
}

/// A zig-zag of reductions with matching endpoints.
#[derive(Clone, Debug)]
pub struct StrongEquivalence {
    legs: Vec<Leg>,
}

impl StrongEquivalence {
    pub fn new(legs: Vec<Leg>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::Invalid(
                "a strong equivalence needs at least one reduction".into(),
            ));
        }
        for w in legs.windows(2) {
            if !w[0].target().same_as(w[1].source()) {
                return Err(Error::EndpointMismatch {
                    left: String::from(w[0].target().name()),
                    right: String::from(w[1].source().name()),
                });
            }
        }
        Ok(StrongEquivalence { legs })
    }

    /// The equivalence given by a single reduction.
    pub fn from_reduction(r: Reduction) -> Self {
        StrongEquivalence {
            legs: alloc::vec![Leg::Down(r)],
        }
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn start(&self) -> &ChainComplex {
        self.legs[0].source()
    }

    pub fn end(&self) -> &ChainComplex {
        self.legs[self.legs.len() - 1].target()
    }

    /// Every leg is a trivial reduction.
    pub fn is_trivial(&self) -> bool {
        self.legs.iter().all(|l| l.reduction().is_trivial())
    }

    /// A single downward reduction, if that is what this is.
    pub fn as_reduction(&self) -> Option<&Reduction> {
        match self.legs.as_slice() {
            [Leg::Down(r)] => Some(r),
            _ => None,
        }
    }

    /// Concatenation; the end of `self` must be the start of `other`.
    pub fn then(&self, other: &StrongEquivalence) -> Result<StrongEquivalence> {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        StrongEquivalence::new(legs)
    }

    /// Carries a cycle along the zig-zag: `f` down a reduction, `g` up.
    pub fn transport(&self, z: &FormalSum, direction: Direction) -> Result<FormalSum> {
        let source = match direction {
            Direction::Forward => self.start(),
            Direction::Backward => self.end(),
        };
        let dz = source.boundary(z)?;
        if !dz.is_zero() {
            return Err(Error::NotACycle {
                boundary: format!("{dz}"),
            });
        }
        let mut out = z.clone();
        let mut step = |leg: &Leg, forward: bool| -> Result<()> {
            let map = match (leg, forward) {
                (Leg::Down(r), true) | (Leg::Up(r), false) => &r.f,
                (Leg::Up(r), true) | (Leg::Down(r), false) => &r.g,
            };
            out = map.apply(&out)?;
            Ok(())
        };
        match direction {
            Direction::Forward => self.legs.iter().try_for_each(|l| step(l, true))?,
            Direction::Backward => self.legs.iter().rev().try_for_each(|l| step(l, false))?,
        }
        Ok(out)
    }
}
