use alloc::vec::Vec;

use crate::error::Result;
use crate::zchain::{FormalSum, Gen, GradedMap};

/// Filtration degree of a generator: the base degree of `y ⊗ b`, or the
/// dimension of the nondegenerate core of the base component of `(y, b)`.
pub fn generator_filtration(g: &Gen) -> Option<usize> {
    match g {
        Gen::Tensor(t) => Some(t.1.degree()),
        Gen::Pair(p) => Some(p.1.core().degree()),
        _ => None,
    }
}

/// Largest filtration degree among the terms of `c`; `None` stands for -∞
/// (the zero chain).
pub fn filtration_degree(c: &FormalSum) -> Option<usize> {
    c.gens().filter_map(generator_filtration).max()
}

/// Result of checking that a map lowers filtration by a required amount.
#[derive(Clone, Debug, Default)]
pub struct FiltrationReport {
    pub checked: usize,
    pub required_drop: usize,
    /// Smallest drop observed over generators with nonzero image.
    pub min_drop: Option<usize>,
    pub violations: Vec<Gen>,
}

impl FiltrationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `filt(map(g)) ≤ filt(g) - required_drop` on every sample.
pub fn filtration_drop_report(
    map: &GradedMap,
    samples: &[Gen],
    required_drop: usize,
) -> Result<FiltrationReport> {
    let mut report = FiltrationReport {
        checked: samples.len(),
        required_drop,
        ..FiltrationReport::default()
    };
    for g in samples {
        let image = map.apply_gen(g)?;
        let Some(after) = filtration_degree(&image) else {
            continue;
        };
        let before = generator_filtration(g).unwrap_or(0);
        let drop = before.saturating_sub(after);
        if after + required_drop > before {
            report.violations.push(g.clone());
        }
        report.min_drop = Some(report.min_drop.map_or(drop, |m: usize| m.min(drop)));
    }
    Ok(report)
}
