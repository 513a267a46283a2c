use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use spin::Mutex;

use super::map::{fresh_id, tensor_sums};
use super::{FormalSum, Gen, GradedMap};
use crate::error::{Error, Result};

/// Basis of one degree of a chain complex.
#[derive(Clone, Debug)]
pub enum Basis {
    Finite(Arc<Vec<Gen>>),
    /// Enumeration unavailable; generators exist only by construction.
    Open,
}

impl Basis {
    pub fn finite(gens: Vec<Gen>) -> Self {
        Basis::Finite(Arc::new(gens))
    }

    pub fn empty() -> Self {
        Basis::finite(Vec::new())
    }

    pub fn as_finite(&self) -> Option<&[Gen]> {
        match self {
            Basis::Finite(v) => Some(v),
            Basis::Open => None,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(self, Basis::Open)
    }
}

/// Structural identity of a complex, used to match endpoints of reductions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ComplexKey {
    Unique(u64),
    /// Normalized chains of the simplicial set at this address.
    Chains(usize),
    Tensor(Box<ComplexKey>, Box<ComplexKey>),
    /// Base complex with the perturbation of the given map id added.
    Perturbed(Box<ComplexKey>, u64),
}

type BasisFn = dyn Fn(usize) -> Basis + Send + Sync;

struct Inner {
    name: String,
    key: ComplexKey,
    basis: Box<BasisFn>,
    basis_cache: Mutex<BTreeMap<usize, Basis>>,
    diff: GradedMap,
    cap: Option<usize>,
    perturbation: Option<(ChainComplex, GradedMap)>,
}

/// Free chain complex over Z, concentrated in degrees ≥ 0.
#[derive(Clone)]
pub struct ChainComplex {
    inner: Arc<Inner>,
}

impl ChainComplex {
    pub fn new<B>(name: impl Into<String>, basis: B, diff: GradedMap) -> Self
    where
        B: Fn(usize) -> Basis + Send + Sync + 'static,
    {
        Self::with_key(ComplexKey::Unique(fresh_id()), name, basis, diff, None)
    }

    pub fn with_key<B>(
        key: ComplexKey,
        name: impl Into<String>,
        basis: B,
        diff: GradedMap,
        cap: Option<usize>,
    ) -> Self
    where
        B: Fn(usize) -> Basis + Send + Sync + 'static,
    {
        assert_eq!(diff.shift(), -1, "differential must have degree -1");
        ChainComplex {
            inner: Arc::new(Inner {
                name: name.into(),
                key,
                basis: Box::new(basis),
                basis_cache: Mutex::new(BTreeMap::new()),
                diff,
                cap,
                perturbation: None,
            }),
        }
    }

    /// Complex with finitely many generators listed per degree.
    pub fn finite(name: impl Into<String>, degrees: Vec<Vec<Gen>>, diff: GradedMap) -> Self {
        let degrees = Arc::new(degrees);
        Self::new(
            name,
            move |n| Basis::finite(degrees.get(n).cloned().unwrap_or_default()),
            diff,
        )
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn key(&self) -> &ComplexKey {
        &self.inner.key
    }

    pub fn same_as(&self, other: &ChainComplex) -> bool {
        self.inner.key == other.inner.key
    }

    pub fn cap(&self) -> Option<usize> {
        self.inner.cap
    }

    pub fn differential(&self) -> &GradedMap {
        &self.inner.diff
    }

    pub fn boundary(&self, c: &FormalSum) -> Result<FormalSum> {
        self.inner.diff.apply(c)
    }

    pub fn basis(&self, n: usize) -> Basis {
        if let Some(b) = self.inner.basis_cache.lock().get(&n) {
            return b.clone();
        }
        let b = (self.inner.basis)(n);
        self.inner.basis_cache.lock().insert(n, b.clone());
        b
    }

    pub fn finite_basis(&self, n: usize) -> Result<Arc<Vec<Gen>>> {
        match self.basis(n) {
            Basis::Finite(v) => Ok(v),
            Basis::Open => Err(Error::NotEffective {
                complex: self.inner.name.clone(),
                degree: n,
            }),
        }
    }

    /// The unperturbed complex and the perturbation, if this complex was
    /// built by [`ChainComplex::perturbed`].
    pub fn perturbation(&self) -> Option<(&ChainComplex, &GradedMap)> {
        self.inner.perturbation.as_ref().map(|(c, d)| (c, d))
    }

    /// Same generators, differential `∂ + delta`.
    pub fn perturbed(&self, delta: &GradedMap) -> ChainComplex {
        assert_eq!(delta.shift(), -1, "perturbation must have degree -1");
        let base = self.clone();
        let diff = self.differential().add(delta);
        let basis_src = self.clone();
        ChainComplex {
            inner: Arc::new(Inner {
                name: format!("{}+δ", self.name()),
                key: ComplexKey::Perturbed(Box::new(self.key().clone()), delta.id()),
                basis: Box::new(move |n| basis_src.basis(n)),
                basis_cache: Mutex::new(BTreeMap::new()),
                diff,
                cap: self.cap(),
                perturbation: Some((base, delta.clone())),
            }),
        }
    }

    pub fn with_cap(&self, cap: Option<usize>) -> ChainComplex {
        let src = self.clone();
        ChainComplex {
            inner: Arc::new(Inner {
                name: self.inner.name.clone(),
                key: self.inner.key.clone(),
                basis: Box::new(move |n| src.basis(n)),
                basis_cache: Mutex::new(BTreeMap::new()),
                diff: self.inner.diff.clone(),
                cap,
                perturbation: self.inner.perturbation.clone(),
            }),
        }
    }

    /// Tensor product with the Koszul differential
    /// `∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y`.
    pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
        let (da, db) = (a.differential().clone(), b.differential().clone());
        let diff = GradedMap::new(format!("∂({}⊗{})", a.name(), b.name()), -1, move |g| {
            let (x, y) = g
                .as_tensor()
                .ok_or_else(|| Error::Invalid(format!("tensor differential applied to {g}")))?;
            let mut out = tensor_sums(&da.apply_gen(x)?, &FormalSum::from_gen(y.clone()));
            let right = tensor_sums(&FormalSum::from_gen(x.clone()), &db.apply_gen(y)?);
            if x.degree() % 2 == 1 {
                out -= &right;
            } else {
                out += &right;
            }
            Ok(out)
        });
        let (ba, bb) = (a.clone(), b.clone());
        let cap = match (a.cap(), b.cap()) {
            (Some(p), Some(q)) => Some(p + q),
            _ => None,
        };
        ChainComplex::with_key(
            ComplexKey::Tensor(Box::new(a.key().clone()), Box::new(b.key().clone())),
            format!("{}⊗{}", a.name(), b.name()),
            move |n| tensor_basis(&ba, &bb, n),
            diff,
            cap,
        )
    }

    /// Returns the first generator on which `∂∂ ≠ 0`, checking every finite
    /// degree in `degrees` (open degrees are skipped).
    pub fn find_square_nonzero(&self, degrees: RangeInclusive<usize>) -> Result<Option<Gen>> {
        for n in degrees {
            if let Basis::Finite(gens) = self.basis(n) {
                if let Some(g) = self.find_square_nonzero_on(gens.iter())? {
                    return Ok(Some(g));
                }
            }
        }
        Ok(None)
    }

    pub fn find_square_nonzero_on<'a>(
        &self,
        gens: impl IntoIterator<Item = &'a Gen>,
    ) -> Result<Option<Gen>> {
        for g in gens {
            let dd = self.boundary(&self.differential().apply_gen(g)?)?;
            if !dd.is_zero() {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }
}

fn tensor_basis(a: &ChainComplex, b: &ChainComplex, n: usize) -> Basis {
    let mut out = Vec::new();
    for p in 0..=n {
        let q = n - p;
        let left = a.basis(p);
        if matches!(&left, Basis::Finite(v) if v.is_empty()) {
            continue;
        }
        let right = b.basis(q);
        match (&left, &right) {
            (_, Basis::Finite(r)) if r.is_empty() => continue,
            (Basis::Finite(l), Basis::Finite(r)) => {
                for x in l.iter() {
                    for y in r.iter() {
                        out.push(Gen::tensor(x.clone(), y.clone()));
                    }
                }
            }
            _ => return Basis::Open,
        }
    }
    Basis::finite(out)
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex({})", self.name())
    }
}

/// Differential `∂σ = Σ (-1)^i d_i σ` from per-generator face lists.
///
/// `faces` returns `d_0 σ, …, d_n σ` as chains (a degenerate face is the zero
/// chain); degree-0 generators have zero boundary.
pub fn simplicial_boundary<F>(label: impl Into<String>, faces: F) -> GradedMap
where
    F: Fn(&Gen) -> Result<Vec<FormalSum>> + Send + Sync + 'static,
{
    GradedMap::new(label, -1, move |g| {
        let n = g.degree();
        if n == 0 {
            return Ok(FormalSum::zero());
        }
        let fs = faces(g)?;
        if fs.len() < n + 1 {
            return Err(Error::MissingFace {
                generator: g.clone(),
                index: fs.len(),
            });
        }
        let mut out = FormalSum::zero();
        for (i, face) in fs.iter().take(n + 1).enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.add_scaled(face, &BigInt::from(sign));
        }
        Ok(out)
    })
}

/// `ε(c)`: the coefficient sum of a degree-0 chain.
pub fn augmentation(c: &FormalSum) -> Result<BigInt> {
    if let Some(g) = c.gens().find(|g| g.degree() != 0) {
        return Err(Error::NotDegreeZero {
            generator: g.clone(),
            degree: g.degree(),
        });
    }
    Ok(c.coefficient_sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v() -> Gen {
        Gen::cell(0, "v")
    }
    fn w() -> Gen {
        Gen::cell(0, "w")
    }
    fn e() -> Gen {
        Gen::cell(1, "e")
    }

    fn circle() -> GradedMap {
        simplicial_boundary("∂", |g| {
            if *g == e() {
                Ok(vec![FormalSum::from_gen(w()), FormalSum::from_gen(v())])
            } else {
                Ok(vec![])
            }
        })
    }

    #[test]
    fn two_vertex_edge_boundary() {
        let d = circle();
        assert_eq!(
            d.apply_gen(&e()).unwrap(),
            FormalSum::from_terms([(w(), 1), (v(), -1)])
        );
        assert!(d.apply_gen(&v()).unwrap().is_zero());
    }

    #[test]
    fn missing_face_is_an_error() {
        let d = simplicial_boundary("∂", |_| Ok(vec![FormalSum::from_gen(Gen::cell(0, "v"))]));
        assert!(matches!(
            d.apply_gen(&e()),
            Err(Error::MissingFace { index: 1, .. })
        ));
    }

    #[test]
    fn augmentation_examples() {
        let c = FormalSum::from_terms([(v(), 3), (w(), -1)]);
        assert_eq!(augmentation(&c).unwrap(), BigInt::from(2));
        assert_eq!(augmentation(&FormalSum::zero()).unwrap(), BigInt::from(0));
        assert_eq!(
            augmentation(&FormalSum::from_gen(v())).unwrap(),
            BigInt::from(1)
        );
        assert!(augmentation(&FormalSum::from_gen(e())).is_err());
    }

    #[test]
    fn augmentation_kills_boundaries() {
        let d = circle();
        assert_eq!(
            augmentation(&d.apply_gen(&e()).unwrap()).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn tensor_differential_squares_to_zero() {
        let c = ChainComplex::finite("S1", vec![vec![v(), w()], vec![e()]], circle());
        let t = ChainComplex::tensor(&c, &c);
        assert!(t.find_square_nonzero(0..=3).unwrap().is_none());
        assert_eq!(t.finite_basis(1).unwrap().len(), 4);
        assert_eq!(t.finite_basis(2).unwrap().len(), 1);
        assert!(ChainComplex::tensor(&c, &c).same_as(&t));
    }
}
