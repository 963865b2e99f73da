//! A minimal field interface shared by the rational and cyclotomic scalars,
//! so that nested-sum evaluators can run over formal rational weights and
//! over actual values in Q(w) alike.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn try_inv(&self) -> Option<Self>;

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|r| self.mul_ref(&r))
    }

    /// Integer power; `None` only for a negative power of zero.
    fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Some(acc)
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_powi() {
        let x = BigRational::new(2.into(), 3.into());
        assert_eq!(x.powi(3).unwrap(), BigRational::new(8.into(), 27.into()));
        assert_eq!(x.powi(-2).unwrap(), BigRational::new(9.into(), 4.into()));
        assert!(BigRational::zero().powi(-1).is_none());
        assert!(BigRational::zero().powi(0).unwrap().is_one());
    }
}
