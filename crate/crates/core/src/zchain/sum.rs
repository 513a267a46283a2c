use alloc::collections::btree_map::{self, BTreeMap};
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Gen;

/// Finite integer linear combination of generators.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// chains.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Gen, BigInt>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_gen(g: Gen) -> Self {
        Self::term(g, BigInt::one())
    }

    pub fn term(g: Gen, coeff: impl Into<BigInt>) -> Self {
        let mut s = Self::zero();
        s.add_term(g, coeff.into());
        s
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Gen, C)>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero();
        for (g, c) in terms {
            s.add_term(g, c.into());
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &Gen) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Gen, BigInt> {
        self.terms.iter()
    }

    pub fn gens(&self) -> impl Iterator<Item = &Gen> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, g: Gen, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += k · other`
    pub fn add_scaled(&mut self, other: &FormalSum, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (g, c) in other.iter() {
            self.add_term(g.clone(), c * k);
        }
    }

    pub fn scale(&self, k: &BigInt) -> FormalSum {
        if k.is_zero() {
            return FormalSum::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * k)).collect(),
        }
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Gen) -> bool) -> FormalSum {
        FormalSum {
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Largest generator degree present, `None` for the zero chain.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Gen::degree).max()
    }
}

impl From<Gen> for FormalSum {
    fn from(g: Gen) -> Self {
        FormalSum::from_gen(g)
    }
}

impl AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, rhs: &FormalSum) {
        for (g, c) in rhs.iter() {
            self.add_term(g.clone(), c.clone());
        }
    }
}

impl SubAssign<&FormalSum> for FormalSum {
    fn sub_assign(&mut self, rhs: &FormalSum) {
        for (g, c) in rhs.iter() {
            self.add_term(g.clone(), -c);
        }
    }
}

impl Add<&FormalSum> for &FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&FormalSum> for &FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for FormalSum {
    type Output = FormalSum;
    fn add(mut self, rhs: FormalSum) -> FormalSum {
        self += &rhs;
        self
    }
}

impl Sub for FormalSum {
    type Output = FormalSum;
    fn sub(mut self, rhs: FormalSum) -> FormalSum {
        self -= &rhs;
        self
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        FormalSum {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

impl Neg for FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        -&self
    }
}

impl FromIterator<(Gen, BigInt)> for FormalSum {
    fn from_iter<T: IntoIterator<Item = (Gen, BigInt)>>(iter: T) -> Self {
        let mut s = FormalSum::zero();
        for (g, c) in iter {
            s.add_term(g, c);
        }
        s
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Gen {
        Gen::cell(0, "x")
    }
    fn y() -> Gen {
        Gen::cell(0, "y")
    }

    #[test]
    fn cancellation_leaves_canonical_form() {
        let a = FormalSum::from_terms([(x(), 2), (y(), 1)]);
        let b = FormalSum::term(x(), -2);
        let s = &a + &b;
        assert_eq!(s, FormalSum::from_gen(y()));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn zero_scaling_is_empty() {
        let a = FormalSum::from_terms([(x(), 1), (y(), 3)]);
        assert!(a.scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn self_subtraction_is_zero() {
        let a = FormalSum::from_terms([(x(), 1), (y(), -1)]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn no_overflow_on_huge_coefficients() {
        let big = BigInt::from(i64::MAX);
        let mut a = FormalSum::term(x(), big.clone());
        a.add_term(x(), big.clone());
        assert_eq!(a.coefficient(&x()), big * 2);
    }

    #[test]
    fn display() {
        let a = FormalSum::from_terms([(x(), 3), (y(), -1)]);
        assert_eq!(alloc::format!("{a}"), "3·x - y");
    }
}
