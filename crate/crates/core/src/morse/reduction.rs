use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;

use num_bigint::BigInt;
use spin::Mutex;

use super::{classify, CellClass, DiscreteVectorField};
use crate::error::{Error, Result};
use crate::reductions::Reduction;
use crate::simplicial::{normalized_chains, simplex_chain, Simplex, SimplicialSet};
use crate::zchain::{fresh_id, ChainComplex, ComplexKey, FormalSum, Gen, GradedMap};

/// Default V-path guard when the space has no dimension cap.
const UNCAPPED_DIM: usize = 6;

/// Solves `π_S ∂ u = σ` for `u ∈ Z·T`, one source at a time, memoized.
struct TargetInverse {
    field: Arc<dyn DiscreteVectorField>,
    chains: ChainComplex,
    guard: usize,
    memo: Mutex<BTreeMap<Gen, FormalSum>>,
}

impl TargetInverse {
    fn source_part(&self, c: &FormalSum) -> FormalSum {
        c.iter()
            .filter(|(g, _)| classify(self.field.as_ref(), g) == CellClass::Source)
            .map(|(g, k)| (g.clone(), k.clone()))
            .collect()
    }

    fn of_source(&self, sigma: &Gen, depth: usize) -> Result<FormalSum> {
        if let Some(u) = self.memo.lock().get(sigma) {
            return Ok(u.clone());
        }
        if depth > self.guard {
            return Err(Error::AdmissibilityGuardExceeded {
                generator: sigma.clone(),
                guard: self.guard,
            });
        }
        let (tau, i) = self
            .field
            .target_of(sigma)
            .ok_or_else(|| Error::Invalid(format!("{sigma} is not a source")))?;
        let eps = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        // π_S ∂(ε τ) = σ + ε π_S(∂τ - ε σ)
        let mut rest = self.chains.boundary(&FormalSum::from_gen(tau.clone()))?;
        rest.add_term(sigma.clone(), -eps.clone());
        let rest = self.source_part(&rest);
        let mut u = FormalSum::term(tau, eps.clone());
        for (s, k) in rest.iter() {
            u.add_scaled(&self.of_source(s, depth + 1)?, &(-(&eps * k)));
        }
        self.memo.lock().insert(sigma.clone(), u.clone());
        Ok(u)
    }

    fn apply(&self, c: &FormalSum) -> Result<FormalSum> {
        let mut out = FormalSum::zero();
        for (s, k) in self.source_part(c).iter() {
            out.add_scaled(&self.of_source(s, 0)?, k);
        }
        Ok(out)
    }
}

/// The reduction `C(X) ⇒ D(X)` onto the critical cells of a field, together
/// with its inputs.
#[derive(Clone)]
pub struct MorseReduction {
    pub reduction: Reduction,
    pub space: Arc<dyn SimplicialSet>,
    pub field: Arc<dyn DiscreteVectorField>,
}

impl core::fmt::Debug for MorseReduction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "MorseReduction({}, {})",
            self.space.name(),
            self.field.name()
        )
    }
}

/// `h = -(π_S ∂|_T)^{-1} π_S`, `f = π_C (1 + ∂h)`, `g = (1 + h∂) ι_C`,
/// `∂_D = π_C ∂ g`. A V-path longer than `guard` (default ten times the
/// dimension cap) raises `AdmissibilityGuardExceeded`. An empty field gives
/// the trivial reduction.
pub fn morse_reduction(
    space: Arc<dyn SimplicialSet>,
    field: Arc<dyn DiscreteVectorField>,
    guard: Option<usize>,
) -> MorseReduction {
    let top = normalized_chains(&space);
    if field.is_empty() {
        return MorseReduction {
            reduction: Reduction::trivial(&top),
            space,
            field,
        };
    }
    let guard = guard.unwrap_or(10 * space.dim_cap().unwrap_or(UNCAPPED_DIM));
    let inverse = Arc::new(TargetInverse {
        field: field.clone(),
        chains: top.clone(),
        guard,
        memo: Mutex::new(BTreeMap::new()),
    });
    let inv = inverse;
    let h = GradedMap::new(format!("h_{}", field.name()), 1, move |g| {
        Ok(-inv.apply(&FormalSum::from_gen(g.clone()))?)
    });
    let critical = {
        let field = field.clone();
        move |c: &FormalSum| -> FormalSum {
            c.iter()
                .filter(|(g, _)| classify(field.as_ref(), g) == CellClass::Critical)
                .map(|(g, k)| (g.clone(), k.clone()))
                .collect()
        }
    };
    let f = {
        let (h, top, critical) = (h.clone(), top.clone(), critical.clone());
        GradedMap::new(format!("f_{}", field.name()), 0, move |g| {
            let x = FormalSum::from_gen(g.clone());
            Ok(critical(&(top.boundary(&h.apply(&x)?)? + x)))
        })
    };
    let g = {
        let (h, top) = (h.clone(), top.clone());
        GradedMap::new(format!("g_{}", field.name()), 0, move |c| {
            let x = FormalSum::from_gen(c.clone());
            Ok(h.apply(&top.boundary(&x)?)? + x)
        })
    };
    let diff = {
        let (g, top, critical) = (g.clone(), top.clone(), critical.clone());
        GradedMap::new(format!("∂D({})", space.name()), -1, move |c| {
            Ok(critical(&top.boundary(&g.apply_gen(c)?)?))
        })
    };
    let basis_space = space.clone();
    let basis_field = field.clone();
    let bottom = ChainComplex::with_key(
        ComplexKey::Unique(fresh_id()),
        format!("D({})", space.name()),
        move |n| basis_field.critical_cells(basis_space.as_ref(), n),
        diff,
        space.dim_cap(),
    );
    MorseReduction {
        reduction: Reduction::new(top, bottom, f, g, h),
        space,
        field,
    }
}

/// `d_0` on normalized chains; zero on vertices.
pub fn zero_face_map(space: Arc<dyn SimplicialSet>) -> GradedMap {
    GradedMap::new(format!("d0({})", space.name()), -1, move |g| {
        if g.degree() == 0 {
            return Ok(FormalSum::zero());
        }
        Ok(simplex_chain(
            &space.face(0, &Simplex::nondegenerate(g.clone()))?,
        ))
    })
}

/// The least `i ≥ 1` with `(h d_0)^i b = 0`, or `NilpotencyGuardExceeded`
/// past `guard`.
pub fn hd0_witness(m: &MorseReduction, b: &Gen, guard: usize) -> Result<usize> {
    let d0 = zero_face_map(m.space.clone());
    let mut c = FormalSum::from_gen(b.clone());
    for i in 1..=guard {
        c = m.reduction.h.apply(&d0.apply(&c)?)?;
        if c.is_zero() {
            return Ok(i);
        }
    }
    Err(Error::NilpotencyGuardExceeded {
        generator: b.clone(),
        terms: guard,
    })
}

/// Evaluates `h` on every given source, so that a V-path longer than the
/// guard surfaces as `AdmissibilityGuardExceeded`.
pub fn check_admissible(m: &MorseReduction, simplices: &[Gen]) -> Result<()> {
    for g in simplices {
        if classify(m.field.as_ref(), g) == CellClass::Source {
            m.reduction.h.apply_gen(g)?;
        }
    }
    Ok(())
}
