//! Exact coefficients: rational functions in the formal parameters q and ℏ
//! over the Gaussian rationals.
//!
//! A [`Scalar`] is stored as `num / den` with `gcd(num, den) = 1` and the
//! leading coefficient of `den` (degree-lex, ℏ ahead of q) equal to one, so two
//! equal scalars are structurally identical.

mod gauss;
mod poly;
pub(crate) mod render;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use gauss::Gauss;
pub use poly::{Mono, Poly, Var};

use crate::ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("pole: denominator {denominator} vanishes at {var} = {at} (factor {factor})")]
    Pole { var: Var, at: String, denominator: String, factor: String },
    #[error("malformed scalar: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    /// Builds `num / den` in canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDivisor);
        }
        Ok(Scalar::normalize(num, den))
    }

    pub fn from_poly(num: Poly) -> Scalar {
        Scalar { num, den: Poly::one() }
    }

    fn normalize(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = if den.is_monomial() {
            let m = den.monomial_content();
            let nm = num.monomial_content();
            let common = Mono::new(m.h.min(nm.h), m.q.min(nm.q));
            (num.div_mono(common), den.div_mono(common))
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            return Scalar { num, den };
        }
        let inv = lc.try_inv().expect("nonzero");
        Scalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_poly(Poly::constant(Gauss::from_int(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_poly(Poly::constant(Gauss::from_ratio(n, d)))
    }

    pub fn gauss(g: Gauss) -> Scalar {
        Scalar::from_poly(Poly::constant(g))
    }

    pub fn rational(r: BigRational) -> Scalar {
        Scalar::gauss(Gauss::real(r))
    }

    pub fn i() -> Scalar {
        Scalar::gauss(Gauss::i())
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn q() -> Scalar {
        Scalar::var(Var::Q)
    }

    pub fn hbar() -> Scalar {
        Scalar::var(Var::Hbar)
    }

    /// `v^e` for any integer `e`.
    pub fn var_pow(v: Var, e: i32) -> Scalar {
        let p = Poly::var(v).pow(e.unsigned_abs());
        if e >= 0 {
            Scalar::from_poly(p)
        } else {
            Scalar { num: Poly::one(), den: p }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value when no formal parameter occurs.
    pub fn as_gauss(&self) -> Option<Gauss> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    /// Raises to an integer power; negative exponents need a nonzero base.
    pub fn powi(&self, e: i32) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.try_inv().ok_or(ScalarError::ZeroDivisor)? } else { self.clone() };
        Ok(base.pow_u32(e.unsigned_abs()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_div(o).ok_or(ScalarError::ZeroDivisor)
    }

    fn eval_poly(p: &Poly, v: Var, value: &Scalar) -> Scalar {
        let other = match v {
            Var::Q => Var::Hbar,
            Var::Hbar => Var::Q,
        };
        let mut acc = Scalar::zero();
        let mut powers: Vec<Scalar> = vec![Scalar::one()];
        for (m, c) in p.terms() {
            let k = m.exp(v) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul_ref(value);
                powers.push(next);
            }
            let rest = Scalar::from_poly(Poly::monomial(c.clone(), Mono::ONE)).mul_ref(&Scalar::var_pow(other, m.exp(other) as i32));
            acc = acc.add_ref(&rest.mul_ref(&powers[k]));
        }
        acc
    }

    /// Exact evaluation at `v = value`.
    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<Scalar, ScalarError> {
        if !self.uses(v) {
            return Ok(self.clone());
        }
        let d = Scalar::eval_poly(&self.den, v, value);
        if d.is_zero() {
            return Err(self.pole_error(v, value));
        }
        let n = Scalar::eval_poly(&self.num, v, value);
        Ok(n.try_div(&d).expect("nonzero"))
    }

    fn pole_error(&self, v: Var, value: &Scalar) -> ScalarError {
        let factor = match value.as_gauss() {
            Some(c) => {
                let lin = Poly::var(v).sub(&Poly::constant(c));
                let mut mult = 0;
                let mut rest = self.den.clone();
                while let Some(next) = rest.div_exact(&lin) {
                    rest = next;
                    mult += 1;
                }
                let base = render::render_poly(&lin);
                let base = if lin.len() > 1 { format!("({base})") } else { base };
                if mult > 1 {
                    format!("{base}^{mult}")
                } else {
                    base
                }
            }
            None => render::render_poly(&self.den),
        };
        ScalarError::Pole {
            var: v,
            at: value.to_string(),
            denominator: render::render_poly(&self.den),
            factor,
        }
    }

    pub fn derivative(&self, v: Var) -> Scalar {
        let n1 = self.num.derivative(v).mul(&self.den);
        let n2 = self.num.mul(&self.den.derivative(v));
        Scalar::normalize(n1.sub(&n2), self.den.mul(&self.den))
    }

    /// Coefficient of `(v - center)^order` in the Taylor expansion.
    pub fn series_coefficient(&self, v: Var, center: &Scalar, order: u32) -> Result<Scalar, ScalarError> {
        if Scalar::eval_poly(&self.den, v, center).is_zero() {
            return Err(self.pole_error(v, center));
        }
        let mut f = self.clone();
        let mut fact = Scalar::one();
        for k in 1..=order {
            f = f.derivative(v);
            fact = fact.mul_ref(&Scalar::int(k as i64));
        }
        let at = f.substitute(v, center)?;
        Ok(at.try_div(&fact).expect("nonzero factorial"))
    }

    pub fn conj_i(&self) -> Scalar {
        let conj = |p: &Poly| {
            let mut out = Poly::zero();
            for (m, c) in p.terms() {
                out = out.add(&Poly::monomial(c.conj(), *m));
            }
            out
        };
        Scalar::normalize(conj(&self.num), conj(&self.den))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Ring for Scalar {
    fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::normalize(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            let a = self.den.monomial_content();
            let b = o.den.monomial_content();
            let l = Mono::new(a.h.max(b.h), a.q.max(b.q));
            let n1 = self.num.mul_mono(Mono::new(l.h - a.h, l.q - a.q));
            let n2 = o.num.mul_mono(Mono::new(l.h - b.h, l.q - b.q));
            return Scalar::normalize(n1.add(&n2), Poly::monomial(Gauss::one(), l));
        }
        Scalar::normalize(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        Scalar::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    fn neg_ref(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }

    fn is_negative_like(&self) -> bool {
        self.num.len() == 1 && self.num.leading().is_some_and(|(_, c)| c.is_negative_like())
    }

    fn is_atomic(&self) -> bool {
        self.den.is_one()
            && self.num.len() == 1
            && self.num.leading().is_some_and(|(_, c)| {
                c.is_real() && c.re.is_integer() && c.re > BigRational::zero()
            })
    }
}

impl Field for Scalar {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::normalize(self.den.clone(), self.num.clone()))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$call(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                self.$call(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for Scalar {
    type Output = Scalar;
    /// Panics on a zero divisor; use [`Scalar::checked_div`] for fallible division.
    fn div(self, o: Scalar) -> Scalar {
        self.checked_div(&o).expect("zero divisor")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_scalar(self))
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::expr::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }
    fn h() -> Scalar {
        Scalar::hbar()
    }

    #[test]
    fn q_times_q_inverse_is_one() {
        let qi = q().try_inv().unwrap();
        assert!((q() * qi).is_one());
    }

    #[test]
    fn i_times_i() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::int(-1));
    }

    #[test]
    fn exact_polynomial_division() {
        let num = q() * q() - Scalar::one();
        let den = q() - Scalar::one();
        assert_eq!(num.checked_div(&den).unwrap(), q() + Scalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q().checked_div(&Scalar::zero()), Err(ScalarError::ZeroDivisor));
        let e = ScalarError::ZeroDivisor;
        assert_eq!(e.to_string(), "zero divisor");
    }

    #[test]
    fn substitutions_at_q_equal_one() {
        let one = Scalar::one();
        let qq = q() - q().try_inv().unwrap();
        assert!(qq.substitute(Var::Q, &one).unwrap().is_zero());
        let s = one.clone() - Scalar::var_pow(Var::Q, -2);
        assert!(s.substitute(Var::Q, &one).unwrap().is_zero());
        let t = Scalar::var_pow(Var::Q, -3) * h();
        assert_eq!(t.substitute(Var::Q, &one).unwrap(), h());
    }

    #[test]
    fn pole_reports_vanishing_factor() {
        let s = Scalar::one().checked_div(&(q() * q() - Scalar::one())).unwrap();
        let s = s.clone() * s;
        match s.substitute(Var::Q, &Scalar::one()) {
            Err(ScalarError::Pole { factor, .. }) => assert_eq!(factor, "(q - 1)^2"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn series_coefficients() {
        let one = Scalar::one();
        let qq = q() - q().try_inv().unwrap();
        assert_eq!(qq.series_coefficient(Var::Q, &one, 1).unwrap(), Scalar::int(2));
        let s = h() * h() * Scalar::ratio(1, 2);
        assert_eq!(s.series_coefficient(Var::Hbar, &Scalar::zero(), 2).unwrap(), Scalar::ratio(1, 2));
        let c = Scalar::var_pow(Var::Q, -3);
        assert_eq!(c.series_coefficient(Var::Q, &one, 0).unwrap(), one);
    }

    #[test]
    fn series_at_pole_fails() {
        let s = Scalar::var_pow(Var::Hbar, -1);
        assert!(matches!(
            s.series_coefficient(Var::Hbar, &Scalar::zero(), 0),
            Err(ScalarError::Pole { .. })
        ));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let s = Scalar::one().checked_div(&(Scalar::int(2) * q() + Scalar::int(4))).unwrap();
        let (_, lc) = s.denominator().leading().unwrap();
        assert!(lc.is_one());
        assert_eq!(s.numerator().as_constant(), Some(Gauss::from_ratio(1, 2)));
    }
}
