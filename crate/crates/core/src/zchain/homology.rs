use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::snf::{smith_normal_form, IntMatrix};
use super::{ChainComplex, FormalSum, Gen};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^rank ⊕ Z/d1 ⊕ … ⊕ Z/dk`, `d1 | … | dk`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn with_torsion(rank: usize, torsion: &[u64]) -> Self {
        HomologyGroup {
            rank,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// `Z^r` first, then torsion summands in divisibility order, `0` if trivial.
impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// `ker ∂_n / im ∂_{n+1}`; needs finite bases in degrees n-1, n, n+1.
pub fn homology(c: &ChainComplex, n: usize) -> Result<HomologyGroup> {
    Ok(HomologyBasis::compute(c, n)?.group)
}

/// Matrix of `∂: C_n → C_{n-1}` in the given bases.
fn boundary_matrix(c: &ChainComplex, source: &[Gen], target: &[Gen]) -> Result<IntMatrix> {
    let index: BTreeMap<&Gen, usize> = target.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut m = IntMatrix::zeros(target.len(), source.len());
    for (j, g) in source.iter().enumerate() {
        for (t, k) in c.differential().apply_gen(g)?.iter() {
            let i = *index.get(t).ok_or_else(|| {
                Error::Invalid(format!("boundary of {g} contains {t}, not a basis element"))
            })?;
            m.set(i, j, k.clone());
        }
    }
    Ok(m)
}

fn coordinates(basis: &[Gen], z: &FormalSum) -> Result<Vec<BigInt>> {
    let index: BTreeMap<&Gen, usize> = basis.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut v = alloc::vec![BigInt::zero(); basis.len()];
    for (g, k) in z.iter() {
        let i = *index
            .get(g)
            .ok_or_else(|| Error::Invalid(format!("{g} is not a basis element")))?;
        v[i] = k.clone();
    }
    Ok(v)
}

/// Homology in one degree together with representatives and a way to read
/// off the class of a cycle.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    pub group: HomologyGroup,
    basis: Vec<Gen>,
    /// rows: class coordinates as a function of chain coordinates (cycles only)
    class_map: IntMatrix,
    /// order of each class coordinate (`0` = free)
    orders: Vec<BigInt>,
    /// rows r_n.. of V_n^{-1}: rejects non-cycles
    cycle_test: IntMatrix,
    /// one representative per coordinate
    pub representatives: Vec<FormalSum>,
}

impl HomologyBasis {
    pub fn compute(c: &ChainComplex, n: usize) -> Result<Self> {
        let basis = c.finite_basis(n)?;
        let below = if n == 0 {
            Vec::new()
        } else {
            c.finite_basis(n - 1)?.as_ref().clone()
        };
        let above = c.finite_basis(n + 1)?;
        let dn = boundary_matrix(c, &basis, &below)?;
        let dn1 = boundary_matrix(c, &above, &basis)?;

        let sn = smith_normal_form(&dn);
        let r = sn.rank();
        let k = basis.len() - r;
        // cycles have coordinates V_n^{-1} z vanishing in the first r slots
        let mut cycle_test = IntMatrix::zeros(r, basis.len());
        let mut to_kernel = IntMatrix::zeros(k, basis.len());
        for j in 0..basis.len() {
            for i in 0..r {
                cycle_test.set(i, j, sn.v_inv.get(i, j).clone());
            }
            for i in 0..k {
                to_kernel.set(i, j, sn.v_inv.get(r + i, j).clone());
            }
        }
        let a = to_kernel.mul(&dn1);
        let sa = smith_normal_form(&a);
        let class_full = sa.u.mul(&to_kernel);

        let mut rows = Vec::new();
        let mut orders = Vec::new();
        let mut representatives = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..k {
            let d = sa.invariants.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            if !d.is_zero() {
                torsion.push(d.clone());
            }
            rows.push(i);
            orders.push(d);
            // representative: kernel basis (columns r.. of V_n) times column i of U_A^{-1}
            let mut rep = FormalSum::zero();
            for (bi, g) in basis.iter().enumerate() {
                let mut coeff = BigInt::zero();
                for j in 0..k {
                    coeff += sn.v.get(bi, r + j) * sa.u_inv.get(j, i);
                }
                rep.add_term(g.clone(), coeff);
            }
            representatives.push(rep);
        }
        let mut class_map = IntMatrix::zeros(rows.len(), basis.len());
        for (ri, &i) in rows.iter().enumerate() {
            for j in 0..basis.len() {
                class_map.set(ri, j, class_full.get(i, j).clone());
            }
        }
        let rank = orders.iter().filter(|d| d.is_zero()).count();
        Ok(HomologyBasis {
            degree: n,
            group: HomologyGroup { rank, torsion },
            basis: basis.as_ref().clone(),
            class_map,
            orders,
            cycle_test,
            representatives,
        })
    }

    /// Orders of the class coordinates (`0` for a free summand).
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Class of a cycle: free coordinates exact, torsion coordinates reduced.
    pub fn class_of(&self, z: &FormalSum) -> Result<Vec<BigInt>> {
        let v = coordinates(&self.basis, z)?;
        if self.cycle_test.mul_vec(&v).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle {
                boundary: format!("{z} is not a cycle"),
            });
        }
        Ok(self
            .class_map
            .mul_vec(&v)
            .into_iter()
            .zip(&self.orders)
            .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) })
            .collect())
    }

    pub fn is_boundary(&self, z: &FormalSum) -> Result<bool> {
        Ok(self.class_of(z)?.iter().all(Zero::is_zero))
    }
}
