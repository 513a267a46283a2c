use alloc::format;
use alloc::sync::Arc;
use core::sync::atomic::{AtomicUsize, Ordering};

use super::Reduction;
use crate::error::Error;
use crate::zchain::{ChainComplex, FormalSum, Gen, GradedMap};

/// Bound on the number of nonzero terms of a perturbation series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Guard {
    Fixed(usize),
    /// `1 + deg × (top + 1)` with `top` the cap of the perturbed complex,
    /// or 64 terms when the complex has no cap.
    Default,
}

impl Guard {
    fn limit(self, degree: usize, cap: Option<usize>) -> usize {
        match (self, cap) {
            (Guard::Fixed(n), _) => n,
            (Guard::Default, Some(top)) => 1 + degree * (top + 1),
            (Guard::Default, None) => 64,
        }
    }
}

/// Longest series seen and number of series evaluated, shared by all maps
/// produced by one application of the lemma.
#[derive(Clone, Debug, Default)]
pub struct SeriesStats {
    longest: Arc<AtomicUsize>,
    evaluated: Arc<AtomicUsize>,
}

impl SeriesStats {
    pub fn longest(&self) -> usize {
        self.longest.load(Ordering::Relaxed)
    }

    pub fn evaluated(&self) -> usize {
        self.evaluated.load(Ordering::Relaxed)
    }

    fn record(&self, terms: usize) {
        self.longest.fetch_max(terms, Ordering::Relaxed);
        self.evaluated.fetch_add(1, Ordering::Relaxed);
    }
}

/// `Σ_k (step)^k` evaluated per generator, stopping at the first zero term.
fn geometric_series(
    label: &str,
    step: GradedMap,
    guard: Guard,
    cap: Option<usize>,
    stats: SeriesStats,
) -> GradedMap {
    if step.is_zero_map() {
        return GradedMap::identity();
    }
    GradedMap::new(format!("Σ({label})^k"), 0, move |g: &Gen| {
        let limit = guard.limit(g.degree(), cap);
        let mut term = FormalSum::from_gen(g.clone());
        let mut total = FormalSum::zero();
        let mut terms = 0;
        while !term.is_zero() {
            terms += 1;
            if terms > limit {
                return Err(Error::NilpotencyGuardExceeded {
                    generator: g.clone(),
                    terms: limit,
                });
            }
            total += &term;
            term = step.apply(&term)?;
        }
        stats.record(terms);
        Ok(total)
    })
}

/// Output of the basic perturbation lemma.
#[derive(Clone, Debug)]
pub struct Perturbed {
    pub reduction: Reduction,
    /// The induced perturbation `δ'` of the bottom differential.
    pub delta_bottom: GradedMap,
    pub stats: SeriesStats,
}

/// Perturbs the top differential of `r` by `delta` and transfers it:
/// `f' = f Σ(δh)^k`, `g' = Σ(hδ)^k g`, `h' = Σ(hδ)^k h`,
/// `δ' = f δ Σ(hδ)^k g`.
pub fn basic_perturbation_lemma(r: &Reduction, delta: &GradedMap, guard: Guard) -> Perturbed {
    bpl_onto(r, &r.top.perturbed(delta), guard)
}

/// As [`basic_perturbation_lemma`] with the perturbed top complex supplied,
/// so that it can be shared with another reduction.
pub fn bpl_onto(r: &Reduction, perturbed_top: &ChainComplex, guard: Guard) -> Perturbed {
    let (base, delta) = perturbed_top
        .perturbation()
        .expect("bpl_onto needs a perturbed complex");
    assert!(
        base.same_as(&r.top),
        "perturbed complex is not over the top of the reduction"
    );
    let stats = SeriesStats::default();
    if delta.is_zero_map() {
        let bottom = r.bottom.perturbed(&GradedMap::zero(-1));
        return Perturbed {
            reduction: Reduction::new(
                perturbed_top.clone(),
                bottom,
                r.f.clone(),
                r.g.clone(),
                r.h.clone(),
            ),
            delta_bottom: GradedMap::zero(-1),
            stats,
        };
    }
    let cap = r.top.cap();
    let h_delta = r.h.compose(delta);
    let delta_h = delta.compose(&r.h);
    let phi = geometric_series("hδ", h_delta, guard, cap, stats.clone());
    let psi = geometric_series("δh", delta_h, guard, cap, stats.clone());
    let f = r.f.compose(&psi).relabel("f'");
    let g = phi.compose(&r.g).relabel("g'");
    let h = phi.compose(&r.h).relabel("h'");
    let delta_bottom = r.f.compose(delta).compose(&phi).compose(&r.g);
    let delta_bottom = GradedMap::new("δ'", -1, move |x| delta_bottom.apply_gen(x));
    let bottom = r.bottom.perturbed(&delta_bottom);
    Perturbed {
        reduction: Reduction::new(perturbed_top.clone(), bottom, f, g, h),
        delta_bottom,
        stats,
    }
}

/// Pulls a perturbation `δ'` of the bottom back to `gδ'f` on the top; the
/// maps are unchanged.
pub fn easy_perturbation_lemma(r: &Reduction, delta_bottom: &GradedMap) -> Reduction {
    epl_onto(r, &r.bottom.perturbed(delta_bottom))
}

/// As [`easy_perturbation_lemma`] with the perturbed bottom complex supplied.
pub fn epl_onto(r: &Reduction, perturbed_bottom: &ChainComplex) -> Reduction {
    let (base, delta) = perturbed_bottom
        .perturbation()
        .expect("epl_onto needs a perturbed complex");
    assert!(
        base.same_as(&r.bottom),
        "perturbed complex is not over the bottom of the reduction"
    );
    let top_delta = if delta.is_zero_map() {
        GradedMap::zero(-1)
    } else {
        let d = r.g.compose(delta).compose(&r.f);
        GradedMap::new("gδ'f", -1, move |x| d.apply_gen(x))
    };
    Reduction::new(
        r.top.perturbed(&top_delta),
        perturbed_bottom.clone(),
        r.f.clone(),
        r.g.clone(),
        r.h.clone(),
    )
}
