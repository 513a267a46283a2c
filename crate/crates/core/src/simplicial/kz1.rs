use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::RngCore;

use super::{Simplex, SimplicialGroup, SimplicialSet};
use crate::error::{Error, Result};
use crate::zchain::{Basis, Gen};

/// Largest absolute entry drawn by [`Kz1::sample_cell`].
pub const SAMPLE_ENTRY_BOUND: i64 = 9;

/// The bar model of K(Z,1): n-simplices are tuples `[a1|…|an]` of integers,
/// `d_0` drops `a1`, `d_n` drops `an`, inner faces add neighbours, and `s_i`
/// inserts a zero at position i. Nondegenerate simplices have no zero entry.
#[derive(Clone, Debug, Default)]
pub struct Kz1 {
    cap: Option<usize>,
}

impl Kz1 {
    pub fn new() -> Self {
        Kz1 { cap: None }
    }

    pub fn with_cap(cap: usize) -> Self {
        Kz1 { cap: Some(cap) }
    }
}

/// Entries of a simplex, zeros included.
pub fn kz1_tuple(s: &Simplex) -> Result<Vec<i64>> {
    let Gen::Bar(core) = s.core() else {
        return Err(Error::Invalid(format!("{s} is not a simplex of K(Z,1)")));
    };
    let mut out: Vec<i64> = core.to_vec();
    // innermost degeneracy first: each inserts a zero at its index
    for &j in s.degeneracies().iter().rev() {
        out.insert(j as usize, 0);
    }
    Ok(out)
}

/// The canonical simplex with the given entries.
pub fn kz1_simplex(entries: &[i64]) -> Simplex {
    let core: Vec<i64> = entries.iter().copied().filter(|&a| a != 0).collect();
    let degen: Vec<u32> = entries
        .iter()
        .enumerate()
        .filter(|(_, &a)| a == 0)
        .map(|(i, _)| i as u32)
        .rev()
        .collect();
    Simplex::from_canonical(degen, Gen::bar(&core))
}

fn tuple_face(a: &[i64], i: usize) -> Vec<i64> {
    let n = a.len();
    if i == 0 {
        a[1..].to_vec()
    } else if i == n {
        a[..n - 1].to_vec()
    } else {
        let mut out = a[..i - 1].to_vec();
        out.push(a[i - 1] + a[i]);
        out.extend_from_slice(&a[i + 1..]);
        out
    }
}

impl SimplicialSet for Kz1 {
    fn name(&self) -> String {
        "K(Z,1)".into()
    }

    fn cells(&self, dim: usize) -> Basis {
        if dim == 0 {
            Basis::finite(alloc::vec![Gen::bar(&[])])
        } else {
            Basis::Open
        }
    }

    fn cell_face(&self, i: usize, cell: &Gen) -> Result<Simplex> {
        let Gen::Bar(a) = cell else {
            return Err(Error::Invalid(format!("{cell} is not a simplex of K(Z,1)")));
        };
        let n = a.len();
        if n == 0 || i > n {
            return Err(Error::FaceIndex { index: i, dim: n });
        }
        Ok(kz1_simplex(&tuple_face(a, i)))
    }

    fn dim_cap(&self) -> Option<usize> {
        self.cap
    }

    fn sample_cell(&self, dim: usize, rng: &mut dyn RngCore) -> Option<Gen> {
        let width = 2 * SAMPLE_ENTRY_BOUND as u64;
        let entries: Vec<i64> = (0..dim)
            .map(|_| {
                let k = (rng.next_u64() % width) as i64 - SAMPLE_ENTRY_BOUND;
                if k >= 0 {
                    k + 1
                } else {
                    k
                }
            })
            .collect();
        Some(Gen::bar(&entries))
    }
}

impl SimplicialGroup for Kz1 {
    fn unit(&self, n: usize) -> Simplex {
        Simplex::degenerate_vertex(Gen::bar(&[]), n)
    }

    fn mul(&self, a: &Simplex, b: &Simplex) -> Result<Simplex> {
        let (x, y) = (kz1_tuple(a)?, kz1_tuple(b)?);
        if x.len() != y.len() {
            return Err(Error::Invalid(format!(
                "multiplying {a} and {b} of different dimensions"
            )));
        }
        let sum: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        Ok(kz1_simplex(&sum))
    }

    fn inv(&self, a: &Simplex) -> Result<Simplex> {
        let x: Vec<i64> = kz1_tuple(a)?.iter().map(|p| -p).collect();
        Ok(kz1_simplex(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn nd(a: &[i64]) -> Simplex {
        Simplex::nondegenerate(Gen::bar(a))
    }

    #[test]
    fn face_examples() {
        let k = Kz1::new();
        assert_eq!(k.face(1, &nd(&[3, 4])).unwrap(), nd(&[7]));
        assert_eq!(k.face(0, &nd(&[3, 4])).unwrap(), nd(&[4]));
        assert_eq!(k.face(2, &nd(&[2, 5])).unwrap(), nd(&[2]));
        assert_eq!(k.tilde_d(&nd(&[2, 5]), 1).unwrap(), nd(&[2]));
    }

    #[test]
    fn cancelling_merge_is_degenerate() {
        let k = Kz1::new();
        let f = k.face(1, &nd(&[2, -2, 5])).unwrap();
        assert_eq!(kz1_tuple(&f).unwrap(), alloc::vec![0, 5]);
        assert_eq!(f.degeneracies(), &[0]);
    }

    #[test]
    fn tuple_round_trip_matches_degeneracies() {
        let x = nd(&[3, 4]);
        assert_eq!(kz1_tuple(&x.degenerate(0)).unwrap(), alloc::vec![0, 3, 4]);
        assert_eq!(kz1_tuple(&x.degenerate(1)).unwrap(), alloc::vec![3, 0, 4]);
        assert_eq!(kz1_tuple(&x.degenerate(2)).unwrap(), alloc::vec![3, 4, 0]);
        let s = kz1_simplex(&[0, 3, 0, 0, 4]);
        assert_eq!(s.degeneracies(), &[3, 2, 0]);
        assert_eq!(kz1_tuple(&s).unwrap(), alloc::vec![0, 3, 0, 0, 4]);
    }

    #[test]
    fn identities_on_samples() {
        let k = Kz1::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut sample = Vec::new();
        for n in 0..6 {
            for _ in 0..20 {
                sample.push(Simplex::nondegenerate(k.sample_cell(n, &mut rng).unwrap()));
            }
        }
        assert_eq!(
            super::super::check_simplicial_identities(&k, &sample).unwrap(),
            None
        );
    }

    #[test]
    fn group_law() {
        let k = Kz1::new();
        let a = nd(&[2, 5]);
        let b = nd(&[-2, 1]);
        assert_eq!(
            kz1_tuple(&k.mul(&a, &b).unwrap()).unwrap(),
            alloc::vec![0, 6]
        );
        assert_eq!(k.mul(&a, &k.inv(&a).unwrap()).unwrap(), k.unit(2));
    }
}
