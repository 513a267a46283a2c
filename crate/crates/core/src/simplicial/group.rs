use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{FiniteSimplicialSet, Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::zchain::{Basis, Gen};

/// A simplicial set with a group structure in every degree for which faces
/// and degeneracies are homomorphisms.
pub trait SimplicialGroup: SimplicialSet {
    fn unit(&self, n: usize) -> Simplex;
    fn mul(&self, a: &Simplex, b: &Simplex) -> Result<Simplex>;
    fn inv(&self, a: &Simplex) -> Result<Simplex>;

    /// One 0-simplex only.
    fn is_zero_reduced(&self) -> bool {
        matches!(self.cells(0), Basis::Finite(v) if v.len() == 1)
    }
}

/// A right action `F × G → F`, degreewise.
pub trait GroupAction: Send + Sync {
    fn act(&self, y: &Simplex, g: &Simplex) -> Result<Simplex>;
}

/// `G` acting on itself by right multiplication.
pub struct RightMultiplication(pub Arc<dyn SimplicialGroup>);

impl GroupAction for RightMultiplication {
    fn act(&self, y: &Simplex, g: &Simplex) -> Result<Simplex> {
        self.0.mul(y, g)
    }
}

pub struct TrivialAction;

impl GroupAction for TrivialAction {
    fn act(&self, y: &Simplex, _g: &Simplex) -> Result<Simplex> {
        Ok(y.clone())
    }
}

/// Action of a discrete group (all simplices degenerate vertices) by
/// permuting the cells of the fiber: `s_J y · s_J g = s_J π_g(y)`.
#[derive(Clone, Debug)]
pub struct CellPermutationAction {
    perms: BTreeMap<Gen, BTreeMap<Gen, Gen>>,
}

impl CellPermutationAction {
    /// `perms` maps each group vertex to a cell permutation; cells missing
    /// from a permutation are fixed.
    pub fn new(perms: BTreeMap<Gen, BTreeMap<Gen, Gen>>) -> Self {
        CellPermutationAction { perms }
    }

    /// Z/2 acting on [`FiniteSimplicialSet::circle2`] by swapping its two
    /// parallel edges, a reflection.
    pub fn flip() -> Self {
        let swap = |a: Gen, b: Gen| [(a.clone(), b.clone()), (b, a)];
        let mut flip = BTreeMap::new();
        flip.extend(swap(Gen::cell(1, "e0"), Gen::cell(1, "e1")));
        let perms = BTreeMap::from([(Gen::Residue(0), BTreeMap::new()), (Gen::Residue(1), flip)]);
        Self::new(perms)
    }
}

impl GroupAction for CellPermutationAction {
    fn act(&self, y: &Simplex, g: &Simplex) -> Result<Simplex> {
        if g.core().degree() != 0 {
            return Err(Error::Invalid(format!("{g} is not a degenerate vertex")));
        }
        let perm = self
            .perms
            .get(g.core())
            .ok_or_else(|| Error::Invalid(format!("no permutation for group element {g}")))?;
        let core = perm.get(y.core()).unwrap_or(y.core()).clone();
        Ok(Simplex::from_canonical(y.degeneracies().to_vec(), core))
    }
}

/// A simplicial group given by explicit tables on its simplices, including
/// degenerate ones, in each tabulated degree.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    set: FiniteSimplicialSet,
    units: Vec<Simplex>,
    mul: BTreeMap<(Simplex, Simplex), Simplex>,
    inv: BTreeMap<Simplex, Simplex>,
}

impl FiniteGroup {
    pub fn new(
        set: FiniteSimplicialSet,
        units: Vec<Simplex>,
        mul: BTreeMap<(Simplex, Simplex), Simplex>,
        inv: BTreeMap<Simplex, Simplex>,
    ) -> Result<Self> {
        for (n, u) in units.iter().enumerate() {
            if u.dim() != n {
                return Err(Error::Invalid(format!("unit {u} listed for degree {n}")));
            }
        }
        Ok(FiniteGroup {
            set,
            units,
            mul,
            inv,
        })
    }
}

impl SimplicialSet for FiniteGroup {
    fn name(&self) -> String {
        self.set.name()
    }
    fn cells(&self, dim: usize) -> Basis {
        self.set.cells(dim)
    }
    fn cell_face(&self, i: usize, cell: &Gen) -> Result<Simplex> {
        self.set.cell_face(i, cell)
    }
    fn dim_cap(&self) -> Option<usize> {
        self.set.dim_cap()
    }
}

impl SimplicialGroup for FiniteGroup {
    fn unit(&self, n: usize) -> Simplex {
        match self.units.get(n) {
            Some(u) => u.clone(),
            // above the tables the unit is the degenerated top-listed unit
            None => {
                let top = self.units.len() - 1;
                (top..n).fold(self.units[top].clone(), |u, k| u.degenerate(k as u32))
            }
        }
    }

    fn mul(&self, a: &Simplex, b: &Simplex) -> Result<Simplex> {
        self.mul
            .get(&(a.clone(), b.clone()))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("product {a}·{b} not in the group table")))
    }

    fn inv(&self, a: &Simplex) -> Result<Simplex> {
        self.inv
            .get(a)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("inverse of {a} not in the group table")))
    }
}

/// A right action given by an explicit table `(y, g) ↦ y·g`.
#[derive(Clone, Debug)]
pub struct TableAction {
    table: BTreeMap<(Simplex, Simplex), Simplex>,
}

impl TableAction {
    pub fn new(table: BTreeMap<(Simplex, Simplex), Simplex>) -> Self {
        TableAction { table }
    }
}

impl GroupAction for TableAction {
    fn act(&self, y: &Simplex, g: &Simplex) -> Result<Simplex> {
        self.table
            .get(&(y.clone(), g.clone()))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("action {y}·{g} not in the table")))
    }
}

/// Group axioms and the homomorphism property of faces and degeneracies on
/// all pairs from `elements` (grouped by dimension). Returns the first
/// violation.
pub fn check_group_axioms(g: &dyn SimplicialGroup, elements: &[Simplex]) -> Result<Option<String>> {
    for a in elements {
        let n = a.dim();
        let e = g.unit(n);
        if g.mul(a, &e)? != *a || g.mul(&e, a)? != *a {
            return Ok(Some(format!("unit law fails at {a}")));
        }
        if g.mul(a, &g.inv(a)?)? != e {
            return Ok(Some(format!("inverse law fails at {a}")));
        }
        for b in elements.iter().filter(|b| b.dim() == n) {
            let ab = g.mul(a, b)?;
            for c in elements.iter().filter(|c| c.dim() == n) {
                if g.mul(&ab, c)? != g.mul(a, &g.mul(b, c)?)? {
                    return Ok(Some(format!("associativity fails at {a}, {b}, {c}")));
                }
            }
            for i in 0..=n {
                if n > 0 && g.face(i, &ab)? != g.mul(&g.face(i, a)?, &g.face(i, b)?)? {
                    return Ok(Some(format!("d{i} is not a homomorphism at {a}, {b}")));
                }
                let si = i as u32;
                if ab.degenerate(si) != g.mul(&a.degenerate(si), &b.degenerate(si))? {
                    return Ok(Some(format!("s{i} is not a homomorphism at {a}, {b}")));
                }
            }
        }
    }
    Ok(None)
}

/// Right-action laws and compatibility with faces and degeneracies on all
/// same-dimensional pairs from `fiber × group`.
pub fn check_action(
    action: &dyn GroupAction,
    fiber: &dyn SimplicialSet,
    group: &dyn SimplicialGroup,
    ys: &[Simplex],
    gs: &[Simplex],
) -> Result<Option<String>> {
    for y in ys {
        let n = y.dim();
        if action.act(y, &group.unit(n))? != *y {
            return Ok(Some(format!("{y}·e ≠ {y}")));
        }
        for g in gs.iter().filter(|g| g.dim() == n) {
            let yg = action.act(y, g)?;
            for h in gs.iter().filter(|h| h.dim() == n) {
                if action.act(&yg, h)? != action.act(y, &group.mul(g, h)?)? {
                    return Ok(Some(format!("({y}·{g})·{h} ≠ {y}·({g}{h})")));
                }
            }
            for i in 0..=n {
                if n > 0
                    && fiber.face(i, &yg)? != action.act(&fiber.face(i, y)?, &group.face(i, g)?)?
                {
                    return Ok(Some(format!(
                        "d{i} does not commute with the action at {y}, {g}"
                    )));
                }
                let si = i as u32;
                if yg.degenerate(si) != action.act(&y.degenerate(si), &g.degenerate(si))? {
                    return Ok(Some(format!(
                        "s{i} does not commute with the action at {y}, {g}"
                    )));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{all_simplices, Kzm0};

    #[test]
    fn flip_action_on_circle2() {
        let f = FiniteSimplicialSet::circle2();
        let g = Kzm0::new(2);
        let act = CellPermutationAction::flip();
        let mut ys = all_simplices(&f, 1).unwrap();
        ys.extend(all_simplices(&f, 2).unwrap());
        ys.extend(all_simplices(&f, 0).unwrap());
        let mut gs = Vec::new();
        for n in 0..=2 {
            gs.extend(all_simplices(&g, n).unwrap());
        }
        assert_eq!(check_action(&act, &f, &g, &ys, &gs).unwrap(), None);
        let e0 = Simplex::nondegenerate(Gen::cell(1, "e0"));
        let one = Simplex::degenerate_vertex(Gen::Residue(1), 1);
        assert_eq!(act.act(&e0, &one).unwrap().core(), &Gen::cell(1, "e1"));
    }

    #[test]
    fn a_bad_permutation_is_detected() {
        let f = FiniteSimplicialSet::circle2();
        let g = Kzm0::new(2);
        // swaps the vertices but not the edges
        let bad = BTreeMap::from([
            (Gen::Residue(0), BTreeMap::new()),
            (
                Gen::Residue(1),
                BTreeMap::from([
                    (Gen::cell(0, "v0"), Gen::cell(0, "v1")),
                    (Gen::cell(0, "v1"), Gen::cell(0, "v0")),
                ]),
            ),
        ]);
        let act = CellPermutationAction::new(bad);
        let ys = all_simplices(&f, 1).unwrap();
        let gs = all_simplices(&g, 1).unwrap();
        assert!(check_action(&act, &f, &g, &ys, &gs).unwrap().is_some());
    }
}
