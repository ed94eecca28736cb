use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{Field, Ring};

/// An element of Q(i): `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Gauss::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Gauss::new(BigRational::new(BigInt::from(n), BigInt::from(d)), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        Gauss::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Gauss::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

}

impl Zero for Gauss {
    fn zero() -> Self {
        Gauss::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gauss {
    fn one() -> Self {
        Gauss::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        self.add_ref(&o)
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        self.sub_ref(&o)
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        self.mul_ref(&o)
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re, -self.im)
    }
}

impl Ring for Gauss {
    fn add_ref(&self, o: &Self) -> Self {
        Gauss::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Gauss::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(&self.re * &o.re);
        }
        Gauss::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg_ref(&self) -> Self {
        Gauss::new(-&self.re, -&self.im)
    }
    fn from_i64(n: i64) -> Self {
        Gauss::from_int(n)
    }
    fn is_negative_like(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative()
        }
    }
    fn is_atomic(&self) -> bool {
        self.is_real() && self.re.is_integer() && !self.re.is_negative()
    }
}

impl Field for Gauss {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Gauss::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Gauss::new(&self.re / &n, -&self.im / &n))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Gauss {
    /// Prints in the scalar grammar: `3`, `-1/2`, `i`, `-i/2`, `(1 + 2*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let imag = |r: &BigRational| -> String {
            let a = r.abs();
            let sign = if r.is_negative() { "-" } else { "" };
            match (a.numer().is_one(), a.denom().is_one()) {
                (true, true) => format!("{sign}i"),
                (true, false) => format!("{sign}i/{}", a.denom()),
                (false, true) => format!("{sign}{}*i", a.numer()),
                (false, false) => format!("{sign}{}*i/{}", a.numer(), a.denom()),
            }
        };
        if self.re.is_zero() {
            return write!(f, "{}", imag(&self.im));
        }
        let op = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "({} {} {})", fmt_rational(&self.re), op, imag(&self.im.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Gauss::i();
        assert_eq!(i.mul_ref(&i), Gauss::from_int(-1));
    }

    #[test]
    fn inverse_of_complex() {
        let z = Gauss::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let w = z.try_inv().unwrap();
        assert_eq!(z.mul_ref(&w), Gauss::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gauss::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Gauss::i().neg_ref().to_string(), "-i");
        let z = Gauss::new(BigRational::from_integer(1.into()), -BigRational::new(3.into(), 2.into()));
        assert_eq!(z.to_string(), "(1 - 3*i/2)");
    }
}
