use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::RngCore;

use super::simplex::index_subsets;
use super::{Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::zchain::{Basis, Gen};

/// Deformation of the zero face of a product: given `d_0 y` and the base
/// simplex `b`, returns the fiber part of `d_0 (y, b)`.
pub trait ZeroFaceTwist: Send + Sync {
    fn twist(&self, d0y: Simplex, b: &Simplex) -> Result<Simplex>;
}

/// The simplex `(x, y)` in canonical form: common degeneracies are factored
/// out and the remaining pair becomes the core.
pub fn make_pair(x: Simplex, y: Simplex) -> Simplex {
    assert_eq!(
        x.dim(),
        y.dim(),
        "pair of simplices of different dimensions"
    );
    let common: Vec<u32> = x
        .degeneracies()
        .iter()
        .copied()
        .filter(|j| y.has_degeneracy(*j))
        .collect();
    let (mut a, mut b) = (x, y);
    for &j in &common {
        a = a.remove_degeneracy(j).expect("common degeneracy");
        b = b.remove_degeneracy(j).expect("common degeneracy");
    }
    Simplex::from_canonical(common, Gen::pair(a, b))
}

/// Fiber and base components of a (possibly degenerate) product simplex.
pub fn split_pair(s: &Simplex) -> Result<(Simplex, Simplex)> {
    let (x, y) = s
        .core()
        .as_pair()
        .ok_or_else(|| Error::Invalid(format!("{s} is not a product simplex")))?;
    let lift = |t: &Simplex| {
        s.degeneracies()
            .iter()
            .rev()
            .fold(t.clone(), |acc, &j| acc.degenerate(j))
    };
    Ok((lift(x), lift(y)))
}

/// Cartesian product `X × Y`, optionally with a twisted zero face.
#[derive(Clone)]
pub struct Product {
    fiber: Arc<dyn SimplicialSet>,
    base: Arc<dyn SimplicialSet>,
    twist: Option<Arc<dyn ZeroFaceTwist>>,
    name: String,
}

impl Product {
    pub fn new(fiber: Arc<dyn SimplicialSet>, base: Arc<dyn SimplicialSet>) -> Self {
        let name = format!("{}×{}", fiber.name(), base.name());
        Product {
            fiber,
            base,
            twist: None,
            name,
        }
    }

    pub fn twisted(
        fiber: Arc<dyn SimplicialSet>,
        base: Arc<dyn SimplicialSet>,
        twist: Arc<dyn ZeroFaceTwist>,
    ) -> Self {
        let name = format!("{}×τ{}", fiber.name(), base.name());
        Product {
            fiber,
            base,
            twist: Some(twist),
            name,
        }
    }

    pub fn fiber(&self) -> &Arc<dyn SimplicialSet> {
        &self.fiber
    }

    pub fn base(&self) -> &Arc<dyn SimplicialSet> {
        &self.base
    }

    /// `d_0 (x, y)` without the twist.
    pub fn untwisted_zero_face(&self, cell: &Gen) -> Result<Simplex> {
        let (x, y) = self.components(cell)?;
        Ok(make_pair(self.fiber.face(0, x)?, self.base.face(0, y)?))
    }

    fn components<'a>(&self, cell: &'a Gen) -> Result<(&'a Simplex, &'a Simplex)> {
        cell.as_pair()
            .ok_or_else(|| Error::Invalid(format!("{cell} is not a simplex of {}", self.name)))
    }
}

impl SimplicialSet for Product {
    fn name(&self) -> String {
        self.name.clone()
    }

    /// Nondegenerate pairs `(s_J x, s_K y)` with `J ∩ K = ∅`.
    fn cells(&self, n: usize) -> Basis {
        let mut out = Vec::new();
        for p in 0..=n {
            let xs = match self.fiber.cells(p) {
                Basis::Finite(v) if v.is_empty() => continue,
                Basis::Finite(v) => v,
                Basis::Open => return Basis::Open,
            };
            for q in 0..=n {
                if (n - p) + (n - q) > n {
                    continue;
                }
                let ys = match self.base.cells(q) {
                    Basis::Finite(v) if v.is_empty() => continue,
                    Basis::Finite(v) => v,
                    Basis::Open => return Basis::Open,
                };
                for j in index_subsets(n, n - p) {
                    for k in index_subsets(n, n - q) {
                        if j.iter().any(|a| k.contains(a)) {
                            continue;
                        }
                        for x in xs.iter() {
                            for y in ys.iter() {
                                out.push(Gen::pair(
                                    Simplex::from_canonical(j.clone(), x.clone()),
                                    Simplex::from_canonical(k.clone(), y.clone()),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Basis::finite(out)
    }

    fn cell_face(&self, i: usize, cell: &Gen) -> Result<Simplex> {
        let (x, y) = self.components(cell)?;
        let fy = self.base.face(i, y)?;
        let mut fx = self.fiber.face(i, x)?;
        if i == 0 {
            if let Some(t) = &self.twist {
                fx = t.twist(fx, y)?;
            }
        }
        Ok(make_pair(fx, fy))
    }

    fn dim_cap(&self) -> Option<usize> {
        Some(self.fiber.dim_cap()? + self.base.dim_cap()?)
    }

    fn sample_cell(&self, n: usize, rng: &mut dyn RngCore) -> Option<Gen> {
        for _ in 0..64 {
            let p = (rng.next_u64() % (n as u64 + 1)) as usize;
            let q = (rng.next_u64() % (n as u64 + 1)) as usize;
            if (n - p) + (n - q) > n {
                continue;
            }
            let (Some(x), Some(y)) = (
                self.fiber.sample_cell(p, rng),
                self.base.sample_cell(q, rng),
            ) else {
                continue;
            };
            // random disjoint degeneracy patterns
            let mut slots: Vec<u32> = (0..n as u32).collect();
            for i in (1..slots.len()).rev() {
                let k = (rng.next_u64() % (i as u64 + 1)) as usize;
                slots.swap(i, k);
            }
            let mut j: Vec<u32> = slots[..n - p].to_vec();
            let mut k: Vec<u32> = slots[n - p..(n - p) + (n - q)].to_vec();
            j.sort_unstable_by(|a, b| b.cmp(a));
            k.sort_unstable_by(|a, b| b.cmp(a));
            return Some(Gen::pair(
                Simplex::from_canonical(j, x),
                Simplex::from_canonical(k, y),
            ));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{check_simplicial_identities, FiniteSimplicialSet, Kz1};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn circle() -> Arc<dyn SimplicialSet> {
        Arc::new(FiniteSimplicialSet::sphere(1))
    }

    fn count(x: &dyn SimplicialSet, n: usize) -> usize {
        x.cells(n).as_finite().unwrap().len()
    }

    #[test]
    fn torus_cell_counts() {
        let t = Product::new(circle(), circle());
        assert_eq!(
            (0..=3).map(|n| count(&t, n)).collect::<Vec<_>>(),
            [1, 3, 2, 0]
        );
        // a pair is nondegenerate iff its factors share no degeneracy
        let c = circle();
        for n in 0..=3 {
            let all = crate::simplicial::all_simplices(c.as_ref(), n).unwrap();
            let brute = all
                .iter()
                .flat_map(|x| all.iter().map(move |y| (x, y)))
                .filter(|(x, y)| !x.degeneracies().iter().any(|j| y.has_degeneracy(*j)))
                .count();
            assert_eq!(count(&t, n), brute, "dimension {n}");
        }
    }

    #[test]
    fn product_with_point() {
        let s2: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::sphere(2));
        let p = Product::new(s2.clone(), Arc::new(FiniteSimplicialSet::point()));
        for n in 0..=3 {
            assert_eq!(count(&p, n), count(&*s2, n));
        }
    }

    #[test]
    fn finite_times_open_is_open() {
        let p = Product::new(circle(), Arc::new(Kz1::new()));
        assert!(p.cells(1).is_open());
    }

    #[test]
    fn pair_normal_form() {
        let v = Simplex::nondegenerate(Gen::cell(0, "v"));
        let s = make_pair(v.degenerate(0), v.degenerate(0));
        assert_eq!(s.degeneracies(), &[0]);
        let (x, y) = split_pair(&s).unwrap();
        assert_eq!((x, y), (v.degenerate(0), v.degenerate(0)));
    }

    #[test]
    fn identities_on_torus_and_samples() {
        let t = Product::new(circle(), Arc::new(FiniteSimplicialSet::circle2()));
        let mut all = Vec::new();
        for n in 0..=3 {
            all.extend(
                t.cells(n)
                    .as_finite()
                    .unwrap()
                    .iter()
                    .cloned()
                    .map(Simplex::nondegenerate),
            );
        }
        assert_eq!(check_simplicial_identities(&t, &all).unwrap(), None);

        let open = Product::new(Arc::new(Kz1::new()), circle());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sample: Vec<Simplex> = (0..200)
            .filter_map(|i| open.sample_cell(1 + i % 4, &mut rng))
            .map(Simplex::nondegenerate)
            .collect();
        assert!(sample.len() > 100);
        assert_eq!(check_simplicial_identities(&open, &sample).unwrap(), None);
    }
}
