use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::zchain::Gen;

/// A simplex `s_{j_r} … s_{j_1} x` in canonical form: `j_r > … > j_1 ≥ 0`
/// and `x` nondegenerate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    degen: Vec<u32>,
    core: Gen,
}

impl Simplex {
    pub fn nondegenerate(core: Gen) -> Self {
        Simplex {
            degen: Vec::new(),
            core,
        }
    }

    /// Builds `s_{degen[0]} ∘ … ∘ s_{degen[last]} core` from an already
    /// canonical (strictly decreasing, in range) index list.
    ///
    /// Panics if the list is not canonical; use [`canonical_degeneracy`] for
    /// arbitrary words.
    pub fn from_canonical(degen: Vec<u32>, core: Gen) -> Self {
        assert!(
            is_canonical(&degen, core.degree()),
            "degeneracy list {degen:?} is not canonical over a {}-simplex",
            core.degree()
        );
        Simplex { degen, core }
    }

    /// As [`Simplex::from_canonical`], rejecting a non-canonical list.
    pub fn try_from_canonical(degen: Vec<u32>, core: Gen) -> Result<Self> {
        if !is_canonical(&degen, core.degree()) {
            return Err(Error::Invalid(format!(
                "degeneracy list {degen:?} is not canonical over {core}"
            )));
        }
        Ok(Simplex { degen, core })
    }

    /// `s_{n-1} ∘ … ∘ s_0 v` for a vertex `v`.
    pub fn degenerate_vertex(vertex: Gen, n: usize) -> Self {
        debug_assert_eq!(vertex.degree(), 0);
        Simplex {
            degen: (0..n as u32).rev().collect(),
            core: vertex,
        }
    }

    pub fn dim(&self) -> usize {
        self.core.degree() + self.degen.len()
    }

    pub fn core(&self) -> &Gen {
        &self.core
    }

    pub fn into_core(self) -> Gen {
        self.core
    }

    /// Canonical degeneracy indices, outermost first.
    pub fn degeneracies(&self) -> &[u32] {
        &self.degen
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degen.is_empty()
    }

    /// Whether this simplex lies in the image of `s_j`.
    pub fn has_degeneracy(&self, j: u32) -> bool {
        self.degen.contains(&j)
    }

    /// `s_i` applied to this simplex, rewritten with `s_i s_j = s_{j+1} s_i`
    /// for `i ≤ j`.
    pub fn degenerate(&self, i: u32) -> Simplex {
        assert!(
            (i as usize) <= self.dim(),
            "s_{i} out of range on a {}-simplex",
            self.dim()
        );
        let mut degen: Vec<u32> = self
            .degen
            .iter()
            .map(|&j| if j >= i { j + 1 } else { j })
            .collect();
        let pos = degen.iter().take_while(|&&j| j > i).count();
        degen.insert(pos, i);
        Simplex {
            degen,
            core: self.core.clone(),
        }
    }

    /// `d_j` of a simplex known to be `s_j` of something: drops `j` and
    /// renumbers the outer indices.
    pub fn remove_degeneracy(&self, j: u32) -> Option<Simplex> {
        if !self.has_degeneracy(j) {
            return None;
        }
        let degen = self
            .degen
            .iter()
            .filter(|&&k| k != j)
            .map(|&k| if k > j { k - 1 } else { k })
            .collect();
        Some(Simplex {
            degen,
            core: self.core.clone(),
        })
    }
}

fn is_canonical(degen: &[u32], core_dim: usize) -> bool {
    degen.windows(2).all(|w| w[0] > w[1])
        && degen
            .iter()
            .rev()
            .enumerate()
            .all(|(t, &j)| (j as usize) <= core_dim + t)
}

/// Rewrites a word of degeneracy operators (outermost first) applied to `s`
/// into canonical form.
pub fn canonical_degeneracy(ops: &[u32], s: Simplex) -> Simplex {
    ops.iter().rev().fold(s, |acc, &i| acc.degenerate(i))
}

/// All strictly decreasing index lists of length `k` drawn from `0..n`.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.iter().rev().copied().collect());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i as u32);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Outcome of pushing `d_i` through the degeneracies of a simplex.
pub(crate) enum Pushed {
    /// `d_i` cancelled against some `s_j`; the result is `s_{degen} core`.
    Cancelled(Vec<u32>),
    /// `d_i` reached the core as `d_index`, under the canonical `outer` list.
    Reached { outer: Vec<u32>, index: usize },
}

/// Uses `d_i s_j = s_{j-1} d_i` (i < j), `d_i s_j = id` (i = j, j+1) and
/// `d_i s_j = s_j d_{i-1}` (i > j+1).
pub(crate) fn push_face(degen: &[u32], i: usize) -> Pushed {
    let mut i = i as u32;
    let mut outer = Vec::with_capacity(degen.len());
    for (pos, &j) in degen.iter().enumerate() {
        if i < j {
            outer.push(j - 1);
        } else if i == j || i == j + 1 {
            outer.extend_from_slice(&degen[pos + 1..]);
            return Pushed::Cancelled(outer);
        } else {
            outer.push(j);
            i -= 1;
        }
    }
    Pushed::Reached {
        outer,
        index: i as usize,
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.degen {
            write!(f, "s{j}")?;
        }
        if !self.degen.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "{}", self.core)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
