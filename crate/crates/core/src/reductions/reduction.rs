use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::zchain::{tensor_maps, Basis, ChainComplex, FormalSum, Gen, GradedMap};

/// `(f, g, h)` from `top` onto `bottom`: `fg = id`, `gf - id = ∂h + h∂`,
/// `fh = 0`, `hg = 0`, `hh = 0`, with `f`, `g` chain maps.
#[derive(Clone)]
pub struct Reduction {
    pub top: ChainComplex,
    pub bottom: ChainComplex,
    pub f: GradedMap,
    pub g: GradedMap,
    pub h: GradedMap,
    trivial: bool,
}

impl Reduction {
    pub fn new(
        top: ChainComplex,
        bottom: ChainComplex,
        f: GradedMap,
        g: GradedMap,
        h: GradedMap,
    ) -> Self {
        assert_eq!(f.shift(), 0, "f must have degree 0");
        assert_eq!(g.shift(), 0, "g must have degree 0");
        assert_eq!(h.shift(), 1, "h must have degree +1");
        Reduction {
            top,
            bottom,
            f,
            g,
            h,
            trivial: false,
        }
    }

    /// `f = g = id`, `h = 0` on `c`.
    pub fn trivial(c: &ChainComplex) -> Self {
        Reduction {
            top: c.clone(),
            bottom: c.clone(),
            f: GradedMap::identity(),
            g: GradedMap::identity(),
            h: GradedMap::zero(1),
            trivial: true,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// `self` followed by `next`: `f = f₂f₁`, `g = g₁g₂`, `h = h₁ + g₁h₂f₁`.
    pub fn compose(&self, next: &Reduction) -> Result<Reduction> {
        if !self.bottom.same_as(&next.top) {
            return Err(Error::EndpointMismatch {
                left: String::from(self.bottom.name()),
                right: String::from(next.top.name()),
            });
        }
        if next.trivial {
            return Ok(Reduction {
                top: self.top.clone(),
                bottom: next.bottom.clone(),
                ..self.clone()
            });
        }
        if self.trivial {
            return Ok(Reduction {
                top: self.top.clone(),
                ..next.clone()
            });
        }
        Ok(Reduction::new(
            self.top.clone(),
            next.bottom.clone(),
            next.f.compose(&self.f),
            self.g.compose(&next.g),
            self.h.add(&self.g.compose(&next.h).compose(&self.f)),
        ))
    }
}

impl fmt::Debug for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Reduction({} ⇒ {})", self.top.name(), self.bottom.name())
    }
}

/// Which homotopy to use for the tensor product of two reductions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TensorVariant {
    /// `h = h_C ⊗ id + g_C f_C ⊗ h_D`
    Left,
    /// `h = h_C ⊗ g_D f_D + id ⊗ h_D`
    Right,
}

pub fn tensor_reduction(rc: &Reduction, rd: &Reduction, variant: TensorVariant) -> Reduction {
    let top = ChainComplex::tensor(&rc.top, &rd.top);
    let bottom = ChainComplex::tensor(&rc.bottom, &rd.bottom);
    if rc.trivial && rd.trivial {
        return Reduction {
            bottom: top.clone(),
            ..Reduction::trivial(&top)
        };
    }
    let id = GradedMap::identity();
    let h = match variant {
        TensorVariant::Left => {
            tensor_maps(&rc.h, &id).add(&tensor_maps(&rc.g.compose(&rc.f), &rd.h))
        }
        TensorVariant::Right => {
            tensor_maps(&rc.h, &rd.g.compose(&rd.f)).add(&tensor_maps(&id, &rd.h))
        }
    };
    Reduction::new(
        top,
        bottom,
        tensor_maps(&rc.f, &rd.f),
        tensor_maps(&rc.g, &rd.g),
        h,
    )
}

/// A violated reduction identity with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub generator: Gen,
    pub lhs: FormalSum,
    pub rhs: FormalSum,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on {}: {} vs {}",
            self.identity, self.generator, self.lhs, self.rhs
        )
    }
}

/// Outcome of [`check_reduction`]: the first counterexample to each identity
/// that fails, in the order the identities are listed.
#[derive(Clone, Debug, Default)]
pub struct ReductionReport {
    pub top_checked: usize,
    pub bottom_checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl ReductionReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&IdentityFailure> {
        self.failures.first()
    }

    pub fn fails(&self, identity: &str) -> bool {
        self.failures.iter().any(|f| f.identity == identity)
    }
}

pub const IDENTITY_FG: &str = "fg = id";
pub const IDENTITY_HOMOTOPY: &str = "gf - id = ∂h + h∂";
pub const IDENTITY_FH: &str = "fh = 0";
pub const IDENTITY_HG: &str = "hg = 0";
pub const IDENTITY_HH: &str = "hh = 0";
pub const IDENTITY_F_CHAIN: &str = "∂f = f∂";
pub const IDENTITY_G_CHAIN: &str = "∂g = g∂";

/// Checks every identity on all basis elements of the finite degrees in
/// `degrees`; open degrees are skipped (use [`check_reduction_on`] with
/// sampled generators for those).
pub fn check_reduction(r: &Reduction, degrees: RangeInclusive<usize>) -> Result<ReductionReport> {
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for n in degrees {
        if let Basis::Finite(v) = r.top.basis(n) {
            top.extend(v.iter().cloned());
        }
        if let Basis::Finite(v) = r.bottom.basis(n) {
            bottom.extend(v.iter().cloned());
        }
    }
    check_reduction_on(r, &top, &bottom)
}

pub fn check_reduction_on(
    r: &Reduction,
    top_gens: &[Gen],
    bottom_gens: &[Gen],
) -> Result<ReductionReport> {
    let mut report = ReductionReport {
        top_checked: top_gens.len(),
        bottom_checked: bottom_gens.len(),
        failures: Vec::new(),
    };
    let mut record = |identity: &'static str, g: &Gen, lhs: FormalSum, rhs: FormalSum| {
        if lhs != rhs && !report.failures.iter().any(|f| f.identity == identity) {
            report.failures.push(IdentityFailure {
                identity,
                generator: g.clone(),
                lhs,
                rhs,
            });
        }
    };
    let (dt, db) = (r.top.differential(), r.bottom.differential());
    for d in bottom_gens {
        let gd = r.g.apply_gen(d)?;
        record(
            IDENTITY_FG,
            d,
            r.f.apply(&gd)?,
            FormalSum::from_gen(d.clone()),
        );
        record(IDENTITY_HG, d, r.h.apply(&gd)?, FormalSum::zero());
        record(
            IDENTITY_G_CHAIN,
            d,
            dt.apply(&gd)?,
            r.g.apply(&db.apply_gen(d)?)?,
        );
    }
    for c in top_gens {
        let fc = r.f.apply_gen(c)?;
        let hc = r.h.apply_gen(c)?;
        let lhs = r.g.apply(&fc)? - FormalSum::from_gen(c.clone());
        let rhs = dt.apply(&hc)? + r.h.apply(&dt.apply_gen(c)?)?;
        record(IDENTITY_HOMOTOPY, c, lhs, rhs);
        record(IDENTITY_FH, c, r.f.apply(&hc)?, FormalSum::zero());
        record(IDENTITY_HH, c, r.h.apply(&hc)?, FormalSum::zero());
        record(
            IDENTITY_F_CHAIN,
            c,
            db.apply(&fc)?,
            r.f.apply(&dt.apply_gen(c)?)?,
        );
    }
    Ok(report)
}

/// Builds an error describing the first failure, if any.
pub fn require_reduction(report: &ReductionReport, what: &str) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(f) => Err(Error::Invalid(format!("{what}: {f}"))),
    }
}

/// `C ⊕ {a, b}` with `∂b = a`, `|a| = n`, reduced back onto `C`. The new
/// generators are cells named `a` and `b`.
pub fn elementary_expansion(c: &ChainComplex, n: usize, a: &str, b: &str) -> Reduction {
    let (ga, gb) = (Gen::cell(n, a), Gen::cell(n + 1, b));
    let basis_src = c.clone();
    let (ba, bb) = (ga.clone(), gb.clone());
    let basis = move |k: usize| match basis_src.basis(k) {
        Basis::Finite(v) if k == n || k == n + 1 => {
            let mut v = v.as_ref().clone();
            v.push(if k == n { ba.clone() } else { bb.clone() });
            Basis::finite(v)
        }
        other => other,
    };
    let inner = c.differential().clone();
    let (da, db) = (ga.clone(), gb.clone());
    let diff = GradedMap::new(format!("∂{}⊕", c.name()), -1, move |g| {
        if *g == db {
            Ok(FormalSum::from_gen(da.clone()))
        } else if *g == da {
            Ok(FormalSum::zero())
        } else {
            inner.apply_gen(g)
        }
    });
    let top = ChainComplex::new(format!("{}⊕⟨{a},{b}⟩", c.name()), basis, diff);
    let (fa, fb) = (ga.clone(), gb.clone());
    let f = GradedMap::new("proj", 0, move |g| {
        Ok(if *g == fa || *g == fb {
            FormalSum::zero()
        } else {
            FormalSum::from_gen(g.clone())
        })
    });
    let h = GradedMap::new("h", 1, move |g| {
        Ok(if *g == ga {
            FormalSum::term(gb.clone(), -1)
        } else {
            FormalSum::zero()
        })
    });
    Reduction::new(top, c.clone(), f, GradedMap::identity(), h)
}
