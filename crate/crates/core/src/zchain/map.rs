use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use spin::Mutex;

use super::{FormalSum, Gen};
use crate::error::{Error, Result};

pub type Rule = dyn Fn(&Gen) -> Result<FormalSum> + Send + Sync;

static NEXT_MAP_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_MAP_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    General,
    Zero,
    Identity,
}

struct Inner {
    id: u64,
    shift: isize,
    label: String,
    kind: Kind,
    rule: Box<Rule>,
    memo: Option<Mutex<BTreeMap<Gen, FormalSum>>>,
}

/// A homomorphism of graded groups given by its value on generators.
///
/// Values are computed on demand and, unless built with
/// [`GradedMap::unmemoized`], cached per generator. Cloning is cheap and
/// shares the cache.
#[derive(Clone)]
pub struct GradedMap {
    inner: Arc<Inner>,
}

impl GradedMap {
    pub fn new<F>(label: impl Into<String>, shift: isize, rule: F) -> Self
    where
        F: Fn(&Gen) -> Result<FormalSum> + Send + Sync + 'static,
    {
        Self::build(label.into(), shift, Kind::General, Box::new(rule), true)
    }

    pub fn unmemoized<F>(label: impl Into<String>, shift: isize, rule: F) -> Self
    where
        F: Fn(&Gen) -> Result<FormalSum> + Send + Sync + 'static,
    {
        Self::build(label.into(), shift, Kind::General, Box::new(rule), false)
    }

    pub fn zero(shift: isize) -> Self {
        Self::build(
            "0".to_owned(),
            shift,
            Kind::Zero,
            Box::new(|_| Ok(FormalSum::zero())),
            false,
        )
    }

    pub fn identity() -> Self {
        Self::build(
            "id".to_owned(),
            0,
            Kind::Identity,
            Box::new(|g| Ok(FormalSum::from_gen(g.clone()))),
            false,
        )
    }

    fn build(label: String, shift: isize, kind: Kind, rule: Box<Rule>, memo: bool) -> Self {
        GradedMap {
            inner: Arc::new(Inner {
                id: fresh_id(),
                shift,
                label,
                kind,
                rule,
                memo: memo.then(|| Mutex::new(BTreeMap::new())),
            }),
        }
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    /// Degree shift: the image of a degree-n generator lies in degree n + shift.
    pub fn shift(&self) -> isize {
        self.inner.shift
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn is_zero_map(&self) -> bool {
        self.inner.kind == Kind::Zero
    }

    pub fn is_identity(&self) -> bool {
        self.inner.kind == Kind::Identity
    }

    pub fn memo_len(&self) -> usize {
        self.inner.memo.as_ref().map_or(0, |m| m.lock().len())
    }

    pub fn apply_gen(&self, g: &Gen) -> Result<FormalSum> {
        match self.inner.kind {
            Kind::Zero => return Ok(FormalSum::zero()),
            Kind::Identity => return Ok(FormalSum::from_gen(g.clone())),
            Kind::General => {}
        }
        if let Some(memo) = &self.inner.memo {
            if let Some(v) = memo.lock().get(g) {
                return Ok(v.clone());
            }
            // evaluated outside the lock: rules may recurse into this map
            let v = (self.inner.rule)(g)?;
            memo.lock().insert(g.clone(), v.clone());
            Ok(v)
        } else {
            (self.inner.rule)(g)
        }
    }

    pub fn apply(&self, c: &FormalSum) -> Result<FormalSum> {
        match self.inner.kind {
            Kind::Zero => return Ok(FormalSum::zero()),
            Kind::Identity => return Ok(c.clone()),
            Kind::General => {}
        }
        let mut out = FormalSum::zero();
        for (g, k) in c.iter() {
            out.add_scaled(&self.apply_gen(g)?, k);
        }
        Ok(out)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GradedMap) -> GradedMap {
        let shift = self.shift() + inner.shift();
        if self.is_zero_map() || inner.is_zero_map() {
            return GradedMap::zero(shift);
        }
        if self.is_identity() {
            return inner.clone();
        }
        if inner.is_identity() {
            return self.clone();
        }
        let (outer, first) = (self.clone(), inner.clone());
        GradedMap::new(
            format!("{}∘{}", self.label(), inner.label()),
            shift,
            move |g| outer.apply(&first.apply_gen(g)?),
        )
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(
            self.shift(),
            other.shift(),
            "adding maps of different degree"
        );
        if self.is_zero_map() {
            return other.clone();
        }
        if other.is_zero_map() {
            return self.clone();
        }
        let (a, b) = (self.clone(), other.clone());
        GradedMap::new(
            format!("({} + {})", self.label(), other.label()),
            self.shift(),
            move |g| Ok(a.apply_gen(g)? + b.apply_gen(g)?),
        )
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(BigInt::from(-1))
    }

    pub fn scale(&self, k: BigInt) -> GradedMap {
        if self.is_zero_map() {
            return self.clone();
        }
        let a = self.clone();
        GradedMap::unmemoized(format!("{k}·{}", self.label()), self.shift(), move |g| {
            Ok(a.apply_gen(g)?.scale(&k))
        })
    }

    /// Same values under a new label.
    pub fn relabel(&self, label: impl Into<String>) -> GradedMap {
        let a = self.clone();
        GradedMap::unmemoized(label, self.shift(), move |g| a.apply_gen(g))
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedMap({}, shift {})", self.label(), self.shift())
    }
}

/// Bilinear extension of `⊗` to chains.
pub fn tensor_sums(a: &FormalSum, b: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            out.add_term(Gen::tensor(x.clone(), y.clone()), c * d);
        }
    }
    out
}

pub(crate) fn koszul_sign(map_shift: isize, degree: usize) -> i32 {
    if map_shift.rem_euclid(2) == 1 && degree % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `a ⊗ b` acting on tensor generators with the Koszul rule
/// `(a ⊗ b)(x ⊗ y) = (-1)^{|b||x|} a(x) ⊗ b(y)`.
pub fn tensor_maps(a: &GradedMap, b: &GradedMap) -> GradedMap {
    let shift = a.shift() + b.shift();
    if a.is_zero_map() || b.is_zero_map() {
        return GradedMap::zero(shift);
    }
    if a.is_identity() && b.is_identity() {
        return GradedMap::identity();
    }
    let (fa, fb) = (a.clone(), b.clone());
    GradedMap::new(format!("{}⊗{}", a.label(), b.label()), shift, move |g| {
        let (x, y) = g
            .as_tensor()
            .ok_or_else(|| Error::Invalid(format!("tensor map applied to non-tensor {g}")))?;
        let ax = fa.apply_gen(x)?;
        if ax.is_zero() {
            return Ok(ax);
        }
        let by = fb.apply_gen(y)?;
        let t = tensor_sums(&ax, &by);
        Ok(if koszul_sign(fb.shift(), x.degree()) < 0 {
            -t
        } else {
            t
        })
    })
}

/// `x ⊗ (y ⊗ z) ↦ (x ⊗ y) ⊗ z`
pub fn associate_left() -> GradedMap {
    GradedMap::unmemoized("assoc", 0, |g| {
        let bad = || Error::Invalid(format!("associator applied to {g}"));
        let (x, yz) = g.as_tensor().ok_or_else(bad)?;
        let (y, z) = yz.as_tensor().ok_or_else(bad)?;
        Ok(FormalSum::from_gen(Gen::tensor(
            Gen::tensor(x.clone(), y.clone()),
            z.clone(),
        )))
    })
}
