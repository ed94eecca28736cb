use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Finite linear combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Ring> Element<C> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Element::scalar(C::one())
    }

    pub fn scalar(c: C) -> Self {
        Element::term(Word::empty(), c)
    }

    pub fn letter(l: Letter) -> Self {
        Element::term(Word::new(vec![l]), C::one())
    }

    pub fn word(w: Word) -> Self {
        Element::term(w, C::one())
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// The coefficient of the empty word.
    pub fn constant_term(&self) -> C {
        self.coeff(&Word::empty())
    }

    /// `Some(c)` when the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_sorted)
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        if let Some(old) = self.terms.get_mut(&w) {
            let s = old.add_ref(&c);
            if s.is_zero() {
                self.terms.remove(&w);
            } else {
                *old = s;
            }
        } else {
            self.terms.insert(w, c);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, k: &C) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.mul_ref(k));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.neg_ref());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Element::zero();
        }
        self.map_coeffs(|c| c.mul_ref(k))
    }

    /// Concatenation product in the free algebra (no reduction).
    pub fn mul_free(&self, o: &Self) -> Self {
        let mut r = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.concat(w2), c1.mul_ref(c2));
            }
        }
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = Element::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }

    /// Carries the element into another coefficient ring.
    pub fn map_ring<D: Ring>(&self, f: impl Fn(&C) -> D) -> Element<D> {
        let mut r = Element::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&C) -> Result<C, E>) -> Result<Self, E> {
        let mut r = Element::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c)?);
        }
        Ok(r)
    }

    /// Replaces each letter by an element (a free algebra homomorphism).
    pub fn substitute(&self, images: &[Element<C>]) -> Self {
        let mut r = Element::zero();
        for (w, c) in &self.terms {
            let mut acc = Element::scalar(c.clone());
            for &l in w.letters() {
                acc = acc.mul_free(&images[l as usize]);
            }
            r = r.add(&acc);
        }
        r
    }

    /// Keeps the terms whose word satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        Element { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Renames letters through `map` (letters mapped to `None` make the term vanish).
    pub fn relabel(&self, map: impl Fn(Letter) -> Option<Letter>) -> Self {
        let mut r = Element::zero();
        'terms: for (w, c) in &self.terms {
            let mut v = Vec::with_capacity(w.len());
            for &l in w.letters() {
                match map(l) {
                    Some(m) => v.push(m),
                    None => continue 'terms,
                }
            }
            r.add_term(Word::new(v), c.clone());
        }
        r
    }

    pub fn render(&self, alpha: &Alphabet) -> String {
        self.render_with(&|l| alpha.name(l).to_string())
    }

    fn render_with(&self, name: &dyn Fn(Letter) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let mono = if w.is_empty() { String::new() } else { super::render_word_with(w, name) };
            crate::render::push_term(&mut out, k == 0, c, &mono);
        }
        out
    }
}

impl Element<Scalar> {
    /// Parses an expression over `alpha`; products are kept free (unreduced).
    pub fn parse(src: &str, alpha: &Alphabet) -> Result<Self> {
        let names = alpha.names();
        let e = expr::parse(src, &names)?;
        Element::from_expr(&e, alpha)
    }

    pub fn from_expr(e: &Expr, alpha: &Alphabet) -> Result<Self> {
        Element::from_expr_with(e, alpha, &[])
    }

    /// As [`Element::parse`], also accepting the given names as shorthands.
    pub fn parse_with(src: &str, alpha: &Alphabet, aliases: &[(&str, Element<Scalar>)]) -> Result<Self> {
        let mut names = alpha.names();
        names.extend(aliases.iter().map(|(n, _)| *n));
        let e = expr::parse(src, &names)?;
        Element::from_expr_with(&e, alpha, aliases)
    }

    pub fn from_expr_with(e: &Expr, alpha: &Alphabet, aliases: &[(&str, Element<Scalar>)]) -> Result<Self> {
        let leaf = |name: &str| -> Result<Self> {
            if let Some((_, v)) = aliases.iter().find(|(n, _)| *n == name) {
                return Ok(v.clone());
            }
            match alpha.letter(name) {
                Ok(l) => Ok(Element::letter(l)),
                Err(_) => Ok(Element::scalar(Expr::Sym(name.to_string()).eval_scalar()?)),
            }
        };
        let from_int = |n: &num_bigint::BigUint| {
            Element::scalar(Scalar::rational(num_rational::BigRational::from_integer(n.clone().into())))
        };
        let div = |a: &Self, b: &Self| -> Result<Self> {
            let d = b.as_scalar().ok_or_else(|| Error::Expression("division by a non-scalar".into()))?;
            let inv = Scalar::one().checked_div(&d)?;
            Ok(a.scale(&inv))
        };
        let powi = |a: &Self, e: i32| -> Result<Self> {
            if e >= 0 {
                return Ok(a.pow_u32(e as u32));
            }
            let s = a.as_scalar().ok_or_else(|| Error::Expression("negative power of a non-scalar".into()))?;
            Ok(Element::scalar(s.powi(e)?))
        };
        e.eval_with(&leaf, &from_int, &div, &powi)
    }
}

impl<C: Ring> Zero for Element<C> {
    fn zero() -> Self {
        Element::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for Element<C> {
    fn one() -> Self {
        Element::one()
    }
}

impl<C: Ring> std::ops::Add for Element<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Element::add(&self, &o)
    }
}

impl<C: Ring> std::ops::Mul for Element<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_free(&o)
    }
}

impl<C: Ring> fmt::Display for Element<C> {
    /// Letters print by rank (`g0`, `g1`, ...); use [`Element::render`] for names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&|l| format!("g{l}")))
    }
}

/// The free associative algebra, used for matrix products with element entries.
impl<C: Ring> Ring for Element<C> {
    fn add_ref(&self, o: &Self) -> Self {
        Element::add(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Element::sub(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul_free(o)
    }
    fn neg_ref(&self) -> Self {
        Element::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        Element::scalar(C::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_keeps_free_products() {
        let a = Alphabet::from_names(&["x", "y"], &[]).unwrap();
        let e = Element::parse("x^3*y", &a).unwrap();
        assert_eq!(e, Element::word(Word::new(vec![0, 0, 0, 1])));
        let f = Element::parse("(q - q^-1)*x*y", &a).unwrap();
        assert_eq!(f.len(), 1);
        assert!(Element::parse("x/y", &a).is_err());
        assert!(Element::parse("w", &a).is_err());
    }

    #[test]
    fn render_pulls_out_signs() {
        let a = Alphabet::from_names(&["x"], &["dx", "dtt"]).unwrap();
        let e = Element::parse("x*dx + (h/2)*dtt", &a).unwrap();
        assert_eq!(e.render(&a), "x*dx + (h/2)*dtt");
        let f = Element::parse("3*x^2 - h^2/4", &a).unwrap();
        assert_eq!(f.render(&a), "3*x^2 - h^2/4");
        assert_eq!(Element::parse("-x", &a).unwrap().render(&a), "-x");
    }
}
