use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::set::check_simplicial_identities;
use super::{Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::zchain::{Basis, Gen};

/// Simplicial set with finitely many nondegenerate simplices, each with an
/// explicit face list.
#[derive(Clone, Debug)]
pub struct FiniteSimplicialSet {
    name: String,
    cells: Vec<Vec<Gen>>,
    faces: BTreeMap<Gen, Vec<Simplex>>,
}

impl FiniteSimplicialSet {
    /// Validates dimensions, face counts, that every face core is a listed
    /// cell, and the face identities `d_i d_j = d_{j-1} d_i`.
    pub fn new(
        name: impl Into<String>,
        cells: Vec<Vec<Gen>>,
        faces: BTreeMap<Gen, Vec<Simplex>>,
    ) -> Result<Self> {
        let set = FiniteSimplicialSet {
            name: name.into(),
            cells,
            faces,
        };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::Invalid(m));
        let mut known = BTreeMap::new();
        for (n, cells) in self.cells.iter().enumerate() {
            for c in cells {
                if c.degree() != n {
                    return invalid(format!(
                        "{c} listed in dimension {n} has degree {}",
                        c.degree()
                    ));
                }
                if known.insert(c.clone(), ()).is_some() {
                    return invalid(format!("{c} listed twice"));
                }
            }
        }
        for (n, cells) in self.cells.iter().enumerate().skip(1) {
            for c in cells {
                let Some(fs) = self.faces.get(c) else {
                    return invalid(format!("no faces given for {c}"));
                };
                if fs.len() != n + 1 {
                    return invalid(format!("{c} needs {} faces, got {}", n + 1, fs.len()));
                }
                for f in fs {
                    if f.dim() != n - 1 {
                        return invalid(format!("face {f} of {c} has dimension {}", f.dim()));
                    }
                    if !known.contains_key(f.core()) {
                        return invalid(format!("face {f} of {c} uses unknown simplex"));
                    }
                }
            }
        }
        for c in self.faces.keys() {
            if !known.contains_key(c) {
                return invalid(format!("faces given for unknown simplex {c}"));
            }
        }
        let all: Vec<Simplex> = self
            .cells
            .iter()
            .flatten()
            .map(|c| Simplex::nondegenerate(c.clone()))
            .collect();
        if let Some(msg) = check_simplicial_identities(self, &all)? {
            return invalid(format!("simplicial identity fails: {msg}"));
        }
        Ok(())
    }

    pub fn top_dim(&self) -> usize {
        self.cells.iter().rposition(|c| !c.is_empty()).unwrap_or(0)
    }

    pub fn cell_by_name(&self, name: &str) -> Option<&Gen> {
        self.cells.iter().flatten().find(|g| match g {
            Gen::Cell { name: n, .. } => &**n == name,
            _ => false,
        })
    }

    /// One vertex and one nondegenerate n-simplex all of whose faces are the
    /// degenerate base point.
    pub fn sphere(n: usize) -> Self {
        assert!(n >= 1);
        let base = Gen::cell(0, "*");
        let top = Gen::cell(n, &format!("σ{n}"));
        let mut cells = vec![Vec::new(); n + 1];
        cells[0].push(base.clone());
        cells[n].push(top.clone());
        let face = Simplex::degenerate_vertex(base, n - 1);
        let faces = BTreeMap::from([(top, vec![face; n + 1])]);
        Self::new(format!("S^{n}"), cells, faces).expect("minimal sphere is valid")
    }

    /// The circle with vertices v0, v1 and two parallel edges e0, e1 from v0 to v1.
    pub fn circle2() -> Self {
        let (v0, v1) = (Gen::cell(0, "v0"), Gen::cell(0, "v1"));
        let (e0, e1) = (Gen::cell(1, "e0"), Gen::cell(1, "e1"));
        let nd = |g: &Gen| Simplex::nondegenerate(g.clone());
        let faces = BTreeMap::from([
            (e0.clone(), vec![nd(&v1), nd(&v0)]),
            (e1.clone(), vec![nd(&v1), nd(&v0)]),
        ]);
        Self::new("circle2", vec![vec![v0, v1], vec![e0, e1]], faces).expect("circle2 is valid")
    }

    pub fn point() -> Self {
        Self::new("point", vec![vec![Gen::cell(0, "*")]], BTreeMap::new()).expect("point is valid")
    }

    /// The standard n-simplex; cells are named by their vertex lists, e.g. `012`.
    pub fn standard_simplex(n: usize) -> Self {
        assert!(n <= 9, "vertex names are single digits");
        let mut cells = vec![Vec::new(); n + 1];
        let mut faces = BTreeMap::new();
        let name = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<String>();
        for mask in 1u32..(1 << (n + 1)) {
            let vs: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) != 0).collect();
            let d = vs.len() - 1;
            let g = Gen::cell(d, &name(&vs));
            if d > 0 {
                let fs = (0..vs.len())
                    .map(|i| {
                        let mut w = vs.clone();
                        w.remove(i);
                        Simplex::nondegenerate(Gen::cell(d - 1, &name(&w)))
                    })
                    .collect();
                faces.insert(g.clone(), fs);
            }
            cells[d].push(g);
        }
        for c in &mut cells {
            c.sort();
        }
        Self::new(format!("Δ^{n}"), cells, faces).expect("standard simplex is valid")
    }
}

impl SimplicialSet for FiniteSimplicialSet {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn cells(&self, dim: usize) -> Basis {
        Basis::finite(self.cells.get(dim).cloned().unwrap_or_default())
    }

    fn cell_face(&self, i: usize, cell: &Gen) -> Result<Simplex> {
        let fs = self
            .faces
            .get(cell)
            .ok_or_else(|| Error::Invalid(format!("{cell} is not a simplex of {}", self.name)))?;
        fs.get(i).cloned().ok_or(Error::FaceIndex {
            index: i,
            dim: cell.degree(),
        })
    }

    fn dim_cap(&self) -> Option<usize> {
        Some(self.top_dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_two_has_two_cells() {
        let s = FiniteSimplicialSet::sphere(2);
        let total: usize = (0..=4).map(|n| s.cells(n).as_finite().unwrap().len()).sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn faces_of_sphere_top_cell_are_degenerate() {
        let s = FiniteSimplicialSet::sphere(2);
        let top = Simplex::nondegenerate(s.cell_by_name("σ2").unwrap().clone());
        for i in 0..=2 {
            assert!(s.face(i, &top).unwrap().is_degenerate());
        }
    }

    #[test]
    fn rejects_bad_identities() {
        // d0 d1 t = a but d0 d0 t = b
        let (a, b) = (Gen::cell(0, "a"), Gen::cell(0, "b"));
        let (e, f) = (Gen::cell(1, "e"), Gen::cell(1, "f"));
        let t = Gen::cell(2, "t");
        let nd = |g: &Gen| Simplex::nondegenerate(g.clone());
        let faces = BTreeMap::from([
            (e.clone(), vec![nd(&b), nd(&a)]),
            (f.clone(), vec![nd(&a), nd(&a)]),
            (t.clone(), vec![nd(&e), nd(&f), nd(&f)]),
        ]);
        let r = FiniteSimplicialSet::new("bad", vec![vec![a, b], vec![e, f], vec![t]], faces);
        assert!(r.is_err());
    }

    #[test]
    fn standard_two_simplex() {
        let d = FiniteSimplicialSet::standard_simplex(2);
        assert_eq!(d.cells(0).as_finite().unwrap().len(), 3);
        assert_eq!(d.cells(1).as_finite().unwrap().len(), 3);
        assert_eq!(d.cells(2).as_finite().unwrap().len(), 1);
    }
}
