//! Coefficient traits shared by the rewriting engine, the commutative
//! polynomial type and the linear algebra helpers.
//!
//! Everything downstream is written against [`Ring`] / [`Field`] so the same
//! engine runs over plain rationals in tests and over [`crate::Scalar`] in
//! production.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + Debug + Display + Zero + One + Send + Sync {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    fn pow_u32(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// True when the printed form needs no parentheses as a factor.
    fn is_atomic(&self) -> bool {
        false
    }

    /// True when the printed form starts with a minus sign that can be pulled
    /// out of a sum.
    fn is_negative_like(&self) -> bool {
        false
    }
}

/// A field: every nonzero element has an inverse.
pub trait Field: Ring {
    /// `None` exactly when `self` is zero.
    fn try_inv(&self) -> Option<Self>;

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.try_inv().map(|inv| self.mul_ref(&inv))
    }
}

impl Ring for BigRational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_atomic(&self) -> bool {
        self.is_integer() && !self.is_negative()
    }
    fn is_negative_like(&self) -> bool {
        self.is_negative()
    }
}

impl Field for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Rational number from a numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
