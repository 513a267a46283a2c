use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{Simplex, SimplicialGroup, SimplicialSet};
use crate::zchain::Gen;

type TwistRule = dyn Fn(&Gen) -> Result<Simplex> + Send + Sync;

/// `τ: B_n → G_{n-1}` given on nondegenerate simplices of dimension ≥ 1 and
/// extended to degenerate ones by `τ(s_0 b) = e` and `τ(s_{i+1} b) = s_i τ(b)`.
#[derive(Clone)]
pub struct TwistingOperator {
    base: Arc<dyn SimplicialSet>,
    group: Arc<dyn SimplicialGroup>,
    rule: Arc<TwistRule>,
    trivial: bool,
}

impl TwistingOperator {
    pub fn new<F>(base: Arc<dyn SimplicialSet>, group: Arc<dyn SimplicialGroup>, rule: F) -> Self
    where
        F: Fn(&Gen) -> Result<Simplex> + Send + Sync + 'static,
    {
        TwistingOperator {
            base,
            group,
            rule: Arc::new(rule),
            trivial: false,
        }
    }

    /// The constant operator `τ(b) = e`.
    pub fn trivial(base: Arc<dyn SimplicialSet>, group: Arc<dyn SimplicialGroup>) -> Self {
        let g = group.clone();
        TwistingOperator {
            base,
            group,
            rule: Arc::new(move |b| Ok(g.unit(b.degree() - 1))),
            trivial: true,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn base(&self) -> &Arc<dyn SimplicialSet> {
        &self.base
    }

    pub fn group(&self) -> &Arc<dyn SimplicialGroup> {
        &self.group
    }

    /// `τ(b)` for any simplex of dimension ≥ 1.
    pub fn apply(&self, b: &Simplex) -> Result<Simplex> {
        let n = b.dim();
        if n == 0 {
            return Err(Error::Invalid(format!(
                "τ is not defined on the vertex {b}"
            )));
        }
        if b.has_degeneracy(0) {
            return Ok(self.group.unit(n - 1));
        }
        let t = (self.rule)(b.core())?;
        if t.dim() + 1 != b.core().degree() {
            return Err(Error::Invalid(format!(
                "τ({}) = {t} has dimension {}, expected {}",
                b.core(),
                t.dim(),
                b.core().degree() - 1
            )));
        }
        // s_{j_r} … s_{j_1} with every j ≥ 1 becomes s_{j_r - 1} … s_{j_1 - 1}
        Ok(b.degeneracies()
            .iter()
            .rev()
            .fold(t, |acc, &j| acc.degenerate(j - 1)))
    }
}

/// Checks the four twisting-operator axioms on the given base simplices:
/// `d_0 τ(b) = τ(d_1 b) τ(d_0 b)^{-1}`, `d_i τ(b) = τ(d_{i+1} b)` for i > 0,
/// `s_i τ(b) = τ(s_{i+1} b)` and `τ(s_0 b) = e`.
pub fn check_twisting(tau: &TwistingOperator, simplices: &[Simplex]) -> Result<Option<String>> {
    let (base, group) = (&tau.base, &tau.group);
    for b in simplices {
        let n = b.dim();
        if tau.apply(&b.degenerate(0))? != group.unit(n) {
            return Ok(Some(format!("τ(s0 {b}) is not the unit")));
        }
        if n == 0 {
            continue;
        }
        let t = tau.apply(b)?;
        if n >= 2 {
            let lhs = group.face(0, &t)?;
            let rhs = group.mul(
                &tau.apply(&base.face(1, b)?)?,
                &group.inv(&tau.apply(&base.face(0, b)?)?)?,
            )?;
            if lhs != rhs {
                return Ok(Some(format!(
                    "d0 τ({b}) = {lhs} but τ(d1 b) τ(d0 b)⁻¹ = {rhs}"
                )));
            }
            for i in 1..n {
                let lhs = group.face(i, &t)?;
                let rhs = tau.apply(&base.face(i + 1, b)?)?;
                if lhs != rhs {
                    return Ok(Some(format!(
                        "d{i} τ({b}) = {lhs} but τ(d{} b) = {rhs}",
                        i + 1
                    )));
                }
            }
        }
        for i in 0..n {
            let lhs = t.degenerate(i as u32);
            let rhs = tau.apply(&b.degenerate(i as u32 + 1))?;
            if lhs != rhs {
                return Ok(Some(format!(
                    "s{i} τ({b}) = {lhs} but τ(s{} b) = {rhs}",
                    i + 1
                )));
            }
        }
    }
    Ok(None)
}
