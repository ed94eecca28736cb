//! Commutative multivariate polynomials over a [`Ring`], in a fixed number of
//! anonymous variables. Names are supplied only when printing.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::ring::Ring;

/// Polynomial in `N` commuting variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommPoly<C, const N: usize> {
    terms: BTreeMap<[u32; N], C>,
}

impl<C: Ring, const N: usize> CommPoly<C, N> {
    pub fn zero() -> Self {
        CommPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        CommPoly::monomial([0; N], c)
    }

    pub fn one() -> Self {
        CommPoly::constant(C::one())
    }

    pub fn var(k: usize) -> Self {
        let mut e = [0; N];
        e[k] = 1;
        CommPoly::monomial(e, C::one())
    }

    pub fn monomial(exps: [u32; N], c: C) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(exps, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32; N], &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: [u32; N], c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = old.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.mul_ref(k))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = CommPoly::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, f(c));
        }
        r
    }

    /// Applies a fallible coefficient map, keeping the exponents.
    pub fn try_map_coeffs<E>(&self, f: impl Fn(&C) -> Result<C, E>) -> Result<Self, E> {
        let mut r = CommPoly::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, f(c)?);
        }
        Ok(r)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = CommPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for (a, b) in e.iter_mut().zip(e2) {
                    *a += b;
                }
                r.add_term(e, c1.mul_ref(c2));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = CommPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, k: usize) -> Self {
        let mut r = CommPoly::zero();
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[k] -= 1;
            r.add_term(e2, c.mul_ref(&C::from_i64(e[k] as i64)));
        }
        r
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Drops the terms of total degree above `max`.
    pub fn truncate(&self, max: u32) -> Self {
        CommPoly { terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() <= max).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Substitutes a polynomial in `M` variables for every variable.
    pub fn compose<const M: usize>(&self, images: &[CommPoly<C, M>; N]) -> CommPoly<C, M> {
        let mut cache: Vec<Vec<CommPoly<C, M>>> = images.iter().map(|p| vec![CommPoly::one(), p.clone()]).collect();
        let mut r = CommPoly::zero();
        for (e, c) in &self.terms {
            let mut t = CommPoly::constant(c.clone());
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                while cache[k].len() <= ek as usize {
                    let next = cache[k].last().unwrap().mul(&images[k]);
                    cache[k].push(next);
                }
                t = t.mul(&cache[k][ek as usize]);
            }
            r = r.add(&t);
        }
        r
    }

    /// Replaces variable `k` by `value`, keeping the variable count.
    pub fn substitute(&self, k: usize, value: &CommPoly<C, N>) -> CommPoly<C, N> {
        let images: [CommPoly<C, N>; N] =
            std::array::from_fn(|j| if j == k { value.clone() } else { CommPoly::var(j) });
        self.compose(&images)
    }

    /// Collects by powers of variable `k`: index `j` holds the coefficient of `v_k^j`.
    pub fn coefficients_in(&self, k: usize) -> Vec<CommPoly<C, N>> {
        let mut out = vec![CommPoly::zero(); self.degree_in(k) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let j = e2[k] as usize;
            e2[k] = 0;
            out[j].add_term(e2, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Printed with the given variable names, highest total degree first.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (k, (e, c)) in items.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| if x == 1 { names[j].to_string() } else { format!("{}^{x}", names[j]) })
                .collect();
            let mono = mono.join("*");
            crate::render::push_term(&mut out, k == 0, c, &mono);
        }
        out
    }
}

impl<C: Ring, const N: usize> CommPoly<C, N> {
    /// Evaluates every coefficient through `f` and sums, for ring-valued images.
    pub fn eval<T: Ring>(&self, coeff: impl Fn(&C) -> T, vars: &[T]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = coeff(c);
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t = t.mul_ref(&vars[k].pow_u32(ek));
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }
}

impl<C: Ring, const N: usize> Zero for CommPoly<C, N> {
    fn zero() -> Self {
        CommPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring, const N: usize> One for CommPoly<C, N> {
    fn one() -> Self {
        CommPoly::one()
    }
}

impl<C: Ring, const N: usize> std::ops::Add for CommPoly<C, N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CommPoly::add(&self, &o)
    }
}

impl<C: Ring, const N: usize> std::ops::Mul for CommPoly<C, N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        CommPoly::mul(&self, &o)
    }
}

impl<C: Ring, const N: usize> fmt::Display for CommPoly<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..N).map(|k| format!("v{k}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&names))
    }
}

impl<C: Ring, const N: usize> Ring for CommPoly<C, N> {
    fn add_ref(&self, o: &Self) -> Self {
        CommPoly::add(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        CommPoly::sub(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        CommPoly::mul(self, o)
    }
    fn neg_ref(&self) -> Self {
        CommPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        CommPoly::constant(C::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use num_rational::BigRational;

    type P = CommPoly<BigRational, 2>;

    #[test]
    fn product_and_derivative() {
        let x = P::var(0);
        let y = P::var(1);
        let p = x.add(&y).pow(3);
        assert_eq!(p.coeff(&[2, 1]), rat(3, 1));
        let d = p.derivative(0);
        assert_eq!(d, x.add(&y).pow(2).scale(&rat(3, 1)));
    }

    #[test]
    fn substitution() {
        let x = P::var(0);
        let y = P::var(1);
        let p = x.mul(&x).sub(&y);
        let r = p.substitute(0, &y.add(&P::one()));
        assert_eq!(r, y.mul(&y).add(&y).add(&P::one()));
    }

    #[test]
    fn render_orders_by_degree() {
        let x = P::var(0);
        let y = P::var(1);
        let p = y.sub(&x.mul(&y).scale(&rat(1, 2))).add(&P::one());
        assert_eq!(p.render(&["x", "y"]), "-(1/2)*x*y + y + 1");
    }
}
