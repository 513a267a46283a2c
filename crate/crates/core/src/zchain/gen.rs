use alloc::sync::Arc;
use core::fmt;

use crate::simplicial::Simplex;

/// A basis element of some chain group.
///
/// Generators are structured terms so that products, tensor products and
/// infinite models such as the bar construction can share one sum type. Every
/// generator knows its own degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// Named nondegenerate cell of a finite simplicial set (or an auxiliary
    /// generator of a hand-built complex).
    Cell { dim: u32, name: Arc<str> },
    /// `[a1|...|an]` in the bar model of K(Z,1); entries are nonzero.
    Bar(Arc<[i64]>),
    /// Residue class of Z/m, a vertex of the discrete group K(Z/m,0).
    Residue(u64),
    /// Nondegenerate simplex `(x, y)` of a (possibly twisted) product.
    Pair(Arc<(Simplex, Simplex)>),
    /// `x ⊗ y`.
    Tensor(Arc<(Gen, Gen)>),
}

impl Gen {
    pub fn cell(dim: usize, name: &str) -> Gen {
        Gen::Cell {
            dim: dim as u32,
            name: Arc::from(name),
        }
    }

    pub fn bar(entries: &[i64]) -> Gen {
        debug_assert!(entries.iter().all(|&a| a != 0));
        Gen::Bar(Arc::from(entries))
    }

    pub fn pair(x: Simplex, y: Simplex) -> Gen {
        debug_assert_eq!(x.dim(), y.dim());
        Gen::Pair(Arc::new((x, y)))
    }

    pub fn tensor(x: Gen, y: Gen) -> Gen {
        Gen::Tensor(Arc::new((x, y)))
    }

    pub fn degree(&self) -> usize {
        match self {
            Gen::Cell { dim, .. } => *dim as usize,
            Gen::Bar(a) => a.len(),
            Gen::Residue(_) => 0,
            Gen::Pair(p) => p.0.dim(),
            Gen::Tensor(t) => t.0.degree() + t.1.degree(),
        }
    }

    pub fn as_tensor(&self) -> Option<(&Gen, &Gen)> {
        match self {
            Gen::Tensor(t) => Some((&t.0, &t.1)),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Simplex, &Simplex)> {
        match self {
            Gen::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Cell { name, .. } => f.write_str(name),
            Gen::Bar(a) => {
                f.write_str("[")?;
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Gen::Residue(r) => write!(f, "{r}"),
            Gen::Pair(p) => write!(f, "({}, {})", p.0, p.1),
            Gen::Tensor(t) => write!(f, "{}⊗{}", t.0, t.1),
        }
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
