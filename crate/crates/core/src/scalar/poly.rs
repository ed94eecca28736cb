//! Polynomials in the two formal parameters ℏ and q with Gaussian-rational
//! coefficients. These are the numerators and denominators of [`super::Scalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gauss::Gauss;
use crate::ring::{Field, Ring};

/// One of the two formal parameters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Var {
    Q,
    Hbar,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Hbar => "h",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `h^h · q^q`. Ordered degree-lexicographically with ℏ ahead of q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pub h: u32,
    pub q: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { h: 0, q: 0 };

    pub fn new(h: u32, q: u32) -> Self {
        Mono { h, q }
    }

    pub fn degree(self) -> u32 {
        self.h + self.q
    }

    pub fn exp(self, v: Var) -> u32 {
        match v {
            Var::Q => self.q,
            Var::Hbar => self.h,
        }
    }

    fn with_exp(self, v: Var, e: u32) -> Mono {
        match v {
            Var::Q => Mono { q: e, ..self },
            Var::Hbar => Mono { h: e, ..self },
        }
    }

    pub fn mul(self, o: Mono) -> Mono {
        Mono::new(self.h + o.h, self.q + o.q)
    }

    pub fn divides(self, o: Mono) -> bool {
        self.h <= o.h && self.q <= o.q
    }

    /// `o / self`, assuming divisibility.
    fn quotient_of(self, o: Mono) -> Mono {
        Mono::new(o.h - self.h, o.q - self.q)
    }

    fn min(self, o: Mono) -> Mono {
        Mono::new(self.h.min(o.h), self.q.min(o.q))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.h, self.q).cmp(&(other.degree(), other.h, other.q))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in ℏ and q over Q(i).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Gauss>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gauss::one())
    }

    pub fn constant(c: Gauss) -> Self {
        Poly::monomial(c, Mono::ONE)
    }

    pub fn monomial(c: Gauss, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Gauss::one(), Mono::ONE.with_exp(v, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(Gauss::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Gauss)> {
        self.terms.iter()
    }

    /// Leading term under the degree-lex order (ℏ ahead of q).
    pub fn leading(&self) -> Option<(Mono, &Gauss)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Mono::ONE,
        };
        it.fold(first, |acc, m| acc.min(*m))
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    fn insert_add(terms: &mut BTreeMap<Mono, Gauss>, m: Mono, c: Gauss) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&m) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    terms.remove(&m);
                }
            }
            None => {
                terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            Poly::insert_add(&mut terms, *m, c.clone());
        }
        Poly { terms }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            Poly::insert_add(&mut terms, *m, c.neg_ref());
        }
        Poly { terms }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                Poly::insert_add(&mut terms, m1.mul(*m2), c1.mul_ref(c2));
            }
        }
        Poly { terms }
    }

    pub fn scale(&self, c: &Gauss) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v.mul_ref(c))).collect() }
    }

    pub fn mul_mono(&self, mono: Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    /// Divides every exponent by `mono`; the caller guarantees divisibility.
    pub fn div_mono(&self, mono: Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (mono.quotient_of(*m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficient of `v^k`, as a polynomial in the other variable.
    pub fn coeff_in(&self, v: Var, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                Poly::insert_add(&mut terms, m.with_exp(v, e - 1), c.mul_ref(&Gauss::from_int(e as i64)));
            }
        }
        Poly { terms }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) => {
                let inv = lc.try_inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dinv = dc.try_inv()?;
        if d.is_monomial() {
            if !self.terms.keys().all(|m| dm.divides(*m)) {
                return None;
            }
            return Some(self.div_mono(dm).scale(&dinv));
        }
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient_of(rm);
            let qc = rc.mul_ref(&dinv);
            rem = rem.sub(&d.mul_mono(qm).scale(&qc));
            quot.insert(qm, qc);
        }
        Some(Poly { terms: quot })
    }

    fn univariate_dense(&self, v: Var) -> Vec<Gauss> {
        let mut out = vec![Gauss::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize] = c.clone();
        }
        out
    }

    fn from_dense(v: Var, coeffs: &[Gauss]) -> Poly {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Mono::ONE.with_exp(v, k as u32), c.clone());
            }
        }
        Poly { terms }
    }

    /// Monic gcd of two polynomials in the single variable `v`.
    fn gcd_univariate(a: &Poly, b: &Poly, v: Var) -> Poly {
        let mut x = trim(a.univariate_dense(v));
        let mut y = trim(b.univariate_dense(v));
        while !y.is_empty() {
            let r = dense_rem(&x, &y);
            x = y;
            y = r;
        }
        Poly::from_dense(v, &x).monic()
    }

    /// Gcd of all q-coefficients, a monic polynomial in ℏ alone.
    fn content_q(&self) -> Poly {
        let dq = self.degree_in(Var::Q);
        let mut g = Poly::zero();
        for k in (0..=dq).rev() {
            let c = self.coeff_in(Var::Q, k);
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.monic() } else { Poly::gcd_univariate(&g, &c, Var::Hbar) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_q(&self) -> Poly {
        let c = self.content_q();
        if c.is_one() {
            return self.clone();
        }
        self.div_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder with respect to q.
    fn prem_q(a: &Poly, b: &Poly) -> Poly {
        let db = b.degree_in(Var::Q);
        let lb = b.coeff_in(Var::Q, db);
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(Var::Q) >= db {
            let dr = r.degree_in(Var::Q);
            let lr = r.coeff_in(Var::Q, dr);
            let shift = Mono::new(0, dr - db);
            r = lb.mul(&r).sub(&lr.mul(&b.mul_mono(shift)));
        }
        r
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let ma = a.monomial_content();
        let mb = b.monomial_content();
        let m = ma.min(mb);
        let m_poly = Poly::monomial(Gauss::one(), m);
        if a.is_monomial() || b.is_monomial() {
            return m_poly;
        }
        let a1 = a.div_mono(ma);
        let b1 = b.div_mono(mb);
        if a1.as_constant().is_some() || b1.as_constant().is_some() {
            return m_poly;
        }
        let uses_q = a1.uses(Var::Q) || b1.uses(Var::Q);
        let uses_h = a1.uses(Var::Hbar) || b1.uses(Var::Hbar);
        if !uses_q {
            return m_poly.mul(&Poly::gcd_univariate(&a1, &b1, Var::Hbar));
        }
        if !uses_h {
            return m_poly.mul(&Poly::gcd_univariate(&a1, &b1, Var::Q));
        }
        let ca = a1.content_q();
        let cb = b1.content_q();
        let content = Poly::gcd_univariate(&ca, &cb, Var::Hbar);
        let mut x = a1.div_exact(&ca).expect("content divides");
        let mut y = b1.div_exact(&cb).expect("content divides");
        if x.degree_in(Var::Q) < y.degree_in(Var::Q) {
            std::mem::swap(&mut x, &mut y);
        }
        let g = loop {
            if y.degree_in(Var::Q) == 0 {
                break Poly::one();
            }
            let r = Poly::prem_q(&x, &y);
            if r.is_zero() {
                break y.primitive_q();
            }
            x = y;
            y = r.primitive_q();
        };
        m_poly.mul(&content).mul(&g).monic()
    }
}

fn trim(mut v: Vec<Gauss>) -> Vec<Gauss> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn dense_rem(a: &[Gauss], b: &[Gauss]) -> Vec<Gauss> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].try_inv().expect("trimmed divisor");
    while r.len() > db {
        let lr = r.last().cloned().unwrap();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let f = lr.mul_ref(&inv);
        let shift = r.len() - 1 - db;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = r[shift + k].sub_ref(&f.mul_ref(c));
        }
        r.pop();
    }
    trim(r)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::var(Var::Q)
    }
    fn h() -> Poly {
        Poly::var(Var::Hbar)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(Gauss::from_int(n))
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let common = q().add(&h()).add(&c(1)); // q + h + 1
        let a = common.mul(&q().sub(&c(2)));
        let b = common.mul(&h().mul(&q()).add(&c(3)));
        assert_eq!(Poly::gcd(&a, &b), common.monic());
    }

    #[test]
    fn gcd_univariate_q() {
        let a = q().mul(&q()).sub(&c(1));
        let b = q().sub(&c(1));
        assert_eq!(Poly::gcd(&a, &b), b);
    }

    #[test]
    fn gcd_with_monomial_factor() {
        let a = q().mul(&q()).mul(&h());
        let b = q().mul(&h().add(&c(1)));
        assert_eq!(Poly::gcd(&a, &b), q());
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = q().mul(&q()).sub(&c(1));
        assert_eq!(a.div_exact(&q().sub(&c(1))), Some(q().add(&c(1))));
        assert_eq!(a.div_exact(&q().sub(&c(2))), None);
    }

    #[test]
    fn leading_term_prefers_hbar_at_equal_degree() {
        let p = q().mul(&q()).add(&h().mul(&q()));
        assert_eq!(p.leading().unwrap().0, Mono::new(1, 1));
    }
}
