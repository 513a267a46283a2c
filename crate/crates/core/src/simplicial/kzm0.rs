use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Simplex, SimplicialGroup, SimplicialSet};
use crate::error::{Error, Result};
use crate::zchain::{Basis, Gen};

/// K(Z/m,0): the constant simplicial group on Z/m. The only nondegenerate
/// simplices are the m vertices.
#[derive(Clone, Debug)]
pub struct Kzm0 {
    m: u64,
}

impl Kzm0 {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "K(Z/m,0) needs m ≥ 1");
        Kzm0 { m }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// The residue `r mod m` degenerated to dimension n.
    pub fn element(&self, r: i64, n: usize) -> Simplex {
        let r = r.rem_euclid(self.m as i64) as u64;
        Simplex::degenerate_vertex(Gen::Residue(r), n)
    }

    fn residue(&self, s: &Simplex) -> Result<u64> {
        match s.core() {
            Gen::Residue(r) if *r < self.m => Ok(*r),
            _ => Err(Error::Invalid(format!(
                "{s} is not a simplex of K(Z/{},0)",
                self.m
            ))),
        }
    }
}

impl SimplicialSet for Kzm0 {
    fn name(&self) -> String {
        format!("K(Z/{},0)", self.m)
    }

    fn cells(&self, dim: usize) -> Basis {
        if dim == 0 {
            Basis::finite((0..self.m).map(Gen::Residue).collect::<Vec<_>>())
        } else {
            Basis::empty()
        }
    }

    fn cell_face(&self, i: usize, cell: &Gen) -> Result<Simplex> {
        Err(Error::FaceIndex {
            index: i,
            dim: cell.degree(),
        })
    }

    fn dim_cap(&self) -> Option<usize> {
        Some(0)
    }
}

impl SimplicialGroup for Kzm0 {
    fn unit(&self, n: usize) -> Simplex {
        self.element(0, n)
    }

    fn mul(&self, a: &Simplex, b: &Simplex) -> Result<Simplex> {
        if a.dim() != b.dim() {
            return Err(Error::Invalid(format!(
                "multiplying {a} and {b} of different dimensions"
            )));
        }
        let r = (self.residue(a)? + self.residue(b)?) % self.m;
        Ok(self.element(r as i64, a.dim()))
    }

    fn inv(&self, a: &Simplex) -> Result<Simplex> {
        Ok(self.element(-(self.residue(a)? as i64), a.dim()))
    }
}
