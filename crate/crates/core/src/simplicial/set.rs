use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::RngCore;

use super::simplex::{canonical_degeneracy, index_subsets, push_face, Pushed};
use super::Simplex;
use crate::error::{Error, Result};
use crate::zchain::{Basis, Gen};

/// A simplicial set presented by its nondegenerate simplices and the faces
/// of those; degenerate simplices are handled in canonical form.
pub trait SimplicialSet: Send + Sync {
    fn name(&self) -> String;

    /// Nondegenerate simplices of dimension `dim`.
    fn cells(&self, dim: usize) -> Basis;

    /// `d_i` of a nondegenerate simplex of dimension ≥ 1.
    fn cell_face(&self, i: usize, cell: &Gen) -> Result<Simplex>;

    fn dim_cap(&self) -> Option<usize> {
        None
    }

    /// Draws a nondegenerate simplex of the given dimension, for spaces whose
    /// cells cannot be enumerated. Finite spaces pick from their cell list.
    fn sample_cell(&self, dim: usize, rng: &mut dyn RngCore) -> Option<Gen> {
        match self.cells(dim) {
            Basis::Finite(v) if !v.is_empty() => {
                Some(v[(rng.next_u64() % v.len() as u64) as usize].clone())
            }
            _ => None,
        }
    }

    /// `d_i s` for any simplex, pushing the face through degeneracies.
    fn face(&self, i: usize, s: &Simplex) -> Result<Simplex> {
        let n = s.dim();
        if n == 0 || i > n {
            return Err(Error::FaceIndex { index: i, dim: n });
        }
        match push_face(s.degeneracies(), i) {
            Pushed::Cancelled(degen) => Ok(Simplex::from_canonical(degen, s.core().clone())),
            Pushed::Reached { outer, index } => {
                let f = self.cell_face(index, s.core())?;
                Ok(canonical_degeneracy(&outer, f))
            }
        }
    }

    /// `d̃^k s = d_{n-k+1} ⋯ d_n s`, the front face of dimension `n - k`.
    fn tilde_d(&self, s: &Simplex, k: usize) -> Result<Simplex> {
        let n = s.dim();
        if k > n {
            return Err(Error::FaceIndex { index: k, dim: n });
        }
        let mut out = s.clone();
        for _ in 0..k {
            out = self.face(out.dim(), &out)?;
        }
        Ok(out)
    }

    /// `d_0^k s`, the back face of dimension `n - k`.
    fn back_face(&self, s: &Simplex, k: usize) -> Result<Simplex> {
        if k > s.dim() {
            return Err(Error::FaceIndex {
                index: k,
                dim: s.dim(),
            });
        }
        let mut out = s.clone();
        for _ in 0..k {
            out = self.face(0, &out)?;
        }
        Ok(out)
    }

    fn is_finite_through(&self, dim: usize) -> bool {
        (0..=dim).all(|n| !self.cells(n).is_open())
    }
}

impl core::fmt::Debug for dyn SimplicialSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.name())
    }
}

/// Face `d_i` of a simplex, as a free function.
pub fn face(x: &dyn SimplicialSet, i: usize, s: &Simplex) -> Result<Simplex> {
    x.face(i, s)
}

/// Checks `d_i d_j = d_{j-1} d_i` (i < j) and the `d_i s_j` relations on
/// the given simplices. Returns a description of the first violation.
pub fn check_simplicial_identities(
    x: &dyn SimplicialSet,
    simplices: &[Simplex],
) -> Result<Option<String>> {
    for s in simplices {
        let n = s.dim();
        if n >= 2 {
            for j in 1..=n {
                let dj = x.face(j, s)?;
                for i in 0..j {
                    let lhs = x.face(i, &dj)?;
                    let rhs = x.face(j - 1, &x.face(i, s)?)?;
                    if lhs != rhs {
                        return Ok(Some(format!(
                            "d{i} d{j} {s} = {lhs} but d{} d{i} {s} = {rhs}",
                            j - 1
                        )));
                    }
                }
            }
        }
        for j in 0..=n {
            let t = s.degenerate(j as u32);
            for i in 0..=n + 1 {
                let lhs = x.face(i, &t)?;
                let rhs = if i < j {
                    x.face(i, s)?.degenerate(j as u32 - 1)
                } else if i == j || i == j + 1 {
                    s.clone()
                } else {
                    x.face(i - 1, s)?.degenerate(j as u32)
                };
                if lhs != rhs {
                    return Ok(Some(format!("d{i} s{j} {s} = {lhs}, expected {rhs}")));
                }
            }
        }
    }
    Ok(None)
}

/// Every nondegenerate simplex of dimension ≤ `max_dim`, or an error naming
/// the first open dimension.
pub fn all_cells(x: &dyn SimplicialSet, max_dim: usize) -> Result<Vec<Gen>> {
    let mut out = Vec::new();
    for n in 0..=max_dim {
        match x.cells(n) {
            Basis::Finite(v) => out.extend(v.iter().cloned()),
            Basis::Open => {
                return Err(Error::NotEffective {
                    complex: x.name(),
                    degree: n,
                })
            }
        }
    }
    Ok(out)
}

/// Every simplex of dimension `n`, degenerate ones included, of a space that
/// is finite through `n`.
pub fn all_simplices(x: &dyn SimplicialSet, n: usize) -> Result<Vec<Simplex>> {
    let mut out = Vec::new();
    for p in 0..=n {
        let cells = match x.cells(p) {
            Basis::Finite(v) => v,
            Basis::Open => {
                return Err(Error::NotEffective {
                    complex: x.name(),
                    degree: p,
                })
            }
        };
        for degen in index_subsets(n, n - p) {
            for c in cells.iter() {
                out.push(Simplex::from_canonical(degen.clone(), c.clone()));
            }
        }
    }
    Ok(out)
}
