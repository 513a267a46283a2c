use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::simplicial::{Simplex, SimplicialSet};
use crate::zchain::{Basis, Gen};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CellClass {
    Source,
    Target,
    Critical,
}

/// A discrete vector field: disjoint pairs `(σ, τ)` of nondegenerate simplices
/// with `σ = d_i τ` for exactly one `i`.
pub trait DiscreteVectorField: Send + Sync {
    fn name(&self) -> String;

    /// `(τ, i)` with `σ = d_i τ` when `σ` is a source.
    fn target_of(&self, sigma: &Gen) -> Option<(Gen, usize)>;

    /// `(σ, i)` with `σ = d_i τ` when `τ` is a target.
    fn source_of(&self, tau: &Gen) -> Option<(Gen, usize)>;

    /// Critical cells of `x` in one degree. The default filters the cells of
    /// `x`, which must then be finite.
    fn critical_cells(&self, x: &dyn SimplicialSet, dim: usize) -> Basis {
        match x.cells(dim) {
            Basis::Finite(v) => Basis::finite(
                v.iter()
                    .filter(|g| classify(self, g) == CellClass::Critical)
                    .cloned()
                    .collect(),
            ),
            Basis::Open => Basis::Open,
        }
    }

    /// True when no simplex is paired.
    fn is_empty(&self) -> bool {
        false
    }
}

pub fn classify<V: DiscreteVectorField + ?Sized>(v: &V, sigma: &Gen) -> CellClass {
    if v.target_of(sigma).is_some() {
        CellClass::Source
    } else if v.source_of(sigma).is_some() {
        CellClass::Target
    } else {
        CellClass::Critical
    }
}

/// The Eilenberg–MacLane field on the bar model of K(Z,1):
/// `[…|a_n] ↦ […|a_n - 1|1]` for `a_n > 1` and `[…|a_n] ↦ […|a_n|1]` for
/// `a_n < 0`. Critical cells are `[]` and `[1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct EmlField;

impl DiscreteVectorField for EmlField {
    fn name(&self) -> String {
        "V_EML".into()
    }

    fn target_of(&self, sigma: &Gen) -> Option<(Gen, usize)> {
        let Gen::Bar(a) = sigma else { return None };
        let n = a.len();
        let last = *a.last()?;
        let mut t: Vec<i64> = a.to_vec();
        if last > 1 {
            t[n - 1] = last - 1;
            t.push(1);
            Some((Gen::bar(&t), n))
        } else if last < 0 {
            t.push(1);
            Some((Gen::bar(&t), n + 1))
        } else {
            None
        }
    }

    fn source_of(&self, tau: &Gen) -> Option<(Gen, usize)> {
        let Gen::Bar(a) = tau else { return None };
        let n = a.len();
        if n < 2 || a[n - 1] != 1 {
            return None;
        }
        let prev = a[n - 2];
        let mut s: Vec<i64> = a[..n - 1].to_vec();
        if prev < 0 {
            Some((Gen::bar(&s), n))
        } else {
            s[n - 2] = prev + 1;
            Some((Gen::bar(&s), n - 1))
        }
    }

    fn critical_cells(&self, x: &dyn SimplicialSet, dim: usize) -> Basis {
        if x.dim_cap().is_some_and(|c| dim > c) {
            return Basis::empty();
        }
        match dim {
            0 => Basis::finite(alloc::vec![Gen::bar(&[])]),
            1 => Basis::finite(alloc::vec![Gen::bar(&[1])]),
            _ => Basis::empty(),
        }
    }
}

/// A field given by an explicit list of pairs on a simplicial set.
#[derive(Clone, Debug, Default)]
pub struct FiniteField {
    up: BTreeMap<Gen, (Gen, usize)>,
    down: BTreeMap<Gen, (Gen, usize)>,
}

impl FiniteField {
    /// Validates each pair: `σ` must be `d_i τ` for exactly one `i`, and no
    /// simplex may be used twice.
    pub fn new(x: &dyn SimplicialSet, pairs: &[(Gen, Gen)]) -> Result<Self> {
        let mut field = FiniteField::default();
        for (sigma, tau) in pairs {
            let t = Simplex::nondegenerate(tau.clone());
            let mut hits = Vec::new();
            for i in 0..=tau.degree() {
                let f = x.face(i, &t)?;
                if !f.is_degenerate() && f.core() == sigma {
                    hits.push(i);
                }
            }
            if hits.len() != 1 {
                return Err(Error::Invalid(format!(
                    "{sigma} is a face of {tau} for {} indices, expected one",
                    hits.len()
                )));
            }
            for g in [sigma, tau] {
                if field.up.contains_key(g) || field.down.contains_key(g) {
                    return Err(Error::Invalid(format!("{g} occurs in two pairs")));
                }
            }
            field.up.insert(sigma.clone(), (tau.clone(), hits[0]));
            field.down.insert(tau.clone(), (sigma.clone(), hits[0]));
        }
        Ok(field)
    }

    /// The field with no pairs: every simplex is critical.
    pub fn empty() -> Self {
        FiniteField::default()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Gen, &Gen)> {
        self.up.iter().map(|(s, (t, _))| (s, t))
    }
}

impl DiscreteVectorField for FiniteField {
    fn name(&self) -> String {
        format!("V({} pairs)", self.up.len())
    }
    fn target_of(&self, sigma: &Gen) -> Option<(Gen, usize)> {
        self.up.get(sigma).cloned()
    }
    fn source_of(&self, tau: &Gen) -> Option<(Gen, usize)> {
        self.down.get(tau).cloned()
    }
    fn is_empty(&self) -> bool {
        self.up.is_empty()
    }
}

/// Checks the pairing on the given simplices: dimension goes up by one,
/// `σ = d_i τ` for exactly the recorded `i`, the two directions agree and no
/// simplex has two roles.
pub fn check_field(
    x: &dyn SimplicialSet,
    v: &dyn DiscreteVectorField,
    simplices: &[Gen],
) -> Result<Option<String>> {
    for g in simplices {
        let up = v.target_of(g);
        let down = v.source_of(g);
        if up.is_some() && down.is_some() {
            return Ok(Some(format!("{g} is both a source and a target")));
        }
        if let Some((tau, i)) = up {
            if tau.degree() != g.degree() + 1 {
                return Ok(Some(format!(
                    "{g} is paired with {tau} of the wrong dimension"
                )));
            }
            let t = Simplex::nondegenerate(tau.clone());
            let hits: Vec<usize> = (0..=tau.degree())
                .filter(|&j| {
                    x.face(j, &t)
                        .map(|f| !f.is_degenerate() && f.core() == g)
                        .unwrap_or(false)
                })
                .collect();
            if hits != [i] {
                return Ok(Some(format!(
                    "{g} = d_j {tau} for j in {hits:?}, recorded {i}"
                )));
            }
            if v.source_of(&tau) != Some((g.clone(), i)) {
                return Ok(Some(format!("{tau} does not point back to {g}")));
            }
            if v.target_of(&tau).is_some() {
                return Ok(Some(format!("{tau} is both a target and a source")));
            }
        }
        if let Some((sigma, i)) = down {
            if v.target_of(&sigma) != Some((g.clone(), i)) {
                return Ok(Some(format!("{sigma} does not point to {g}")));
            }
        }
    }
    Ok(None)
}

/// Condition (*): `d_0 σ` a source implies `σ` a source. Returns the first
/// offending simplex.
pub fn check_star_condition(
    x: &dyn SimplicialSet,
    v: &dyn DiscreteVectorField,
    simplices: &[Gen],
) -> Result<Option<Gen>> {
    for g in simplices {
        if g.degree() == 0 {
            continue;
        }
        let d0 = x.face(0, &Simplex::nondegenerate(g.clone()))?;
        if d0.is_degenerate() {
            continue;
        }
        if classify(v, d0.core()) == CellClass::Source && classify(v, g) != CellClass::Source {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}
