//! The center of `U(u(2)_h)`, quantum eigenvalue coordinates, and the radial
//! part of the Laplacian as a difference operator.

mod pi;
mod stencil;

use std::fmt;

use num_traits::{One, Zero};

pub use pi::{
    delta3_on_cas_power, delta_on_cas_power, delta_on_cas_power_engine, matrix_function_ls, matrix_function_ls_at,
    pi_certify, pi_eigenvalues, pi_matrix, pi_power_delta, Delta3Reading,
};
pub use stencil::{classical_radial_limit, radial_apply, ClassicalLimitRow};

use crate::calculus::WeylAlgebra;
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::Element;

type P2 = CommPoly<Scalar, 2>;

fn half(c: i64) -> Scalar {
    Scalar::ratio(c, 2)
}

/// Exact quotient of `p` by a polynomial `d(s)` in the second variable alone.
pub(crate) fn div_exact_in_second(p: &P2, d: &[Scalar]) -> Option<P2> {
    let m = d.iter().rposition(|c| !c.is_zero())?;
    let lead_inv = Scalar::one().checked_div(&d[m]).ok()?;
    let mut rest = p.clone();
    let mut quot = P2::zero();
    while !rest.is_zero() {
        let top = rest.degree_in(1);
        if top < m as u32 {
            return None;
        }
        let mut step = P2::zero();
        for (e, c) in rest.terms() {
            if e[1] == top {
                step.add_term([e[0], top - m as u32], c.mul_ref(&lead_inv));
            }
        }
        let mut dp = P2::zero();
        for (k, c) in d.iter().enumerate() {
            dp.add_term([0, k as u32], c.clone());
        }
        rest = rest.sub(&step.mul(&dp));
        quot = quot.add(&step);
    }
    Some(quot)
}

macro_rules! poly_newtype_ring {
    ($t:ident) => {
        impl Zero for $t {
            fn zero() -> Self {
                $t(P2::zero())
            }
            fn is_zero(&self) -> bool {
                self.0.is_zero()
            }
        }

        impl One for $t {
            fn one() -> Self {
                $t(P2::one())
            }
        }

        impl std::ops::Add for $t {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                $t(CommPoly::add(&self.0, &o.0))
            }
        }

        impl std::ops::Mul for $t {
            type Output = Self;
            fn mul(self, o: Self) -> Self {
                $t(CommPoly::mul(&self.0, &o.0))
            }
        }

        impl Ring for $t {
            fn add_ref(&self, o: &Self) -> Self {
                $t(CommPoly::add(&self.0, &o.0))
            }
            fn sub_ref(&self, o: &Self) -> Self {
                $t(CommPoly::sub(&self.0, &o.0))
            }
            fn mul_ref(&self, o: &Self) -> Self {
                $t(CommPoly::mul(&self.0, &o.0))
            }
            fn neg_ref(&self) -> Self {
                $t(self.0.neg())
            }
            fn from_i64(n: i64) -> Self {
                $t(P2::constant(Scalar::from(n)))
            }
        }

        impl From<Scalar> for $t {
            fn from(c: Scalar) -> Self {
                $t(P2::constant(c))
            }
        }
    };
}

/// A polynomial in the central elements `t` and `Cas = x² + y² + z²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CenterElement(pub CommPoly<Scalar, 2>);

poly_newtype_ring!(CenterElement);

impl CenterElement {
    pub fn t() -> Self {
        CenterElement(P2::var(0))
    }

    pub fn cas() -> Self {
        CenterElement(P2::var(1))
    }

    /// `t^a Cas^b`.
    pub fn monomial(a: u32, b: u32) -> Self {
        CenterElement(P2::monomial([a, b], Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CenterElement(self.0.scale(c))
    }

    /// The element of `U(u(2)_h)` it stands for, normal-ordered.
    pub fn to_element(&self, w: &WeylAlgebra) -> Result<Element> {
        let c = w.compact()?;
        let cas = w.parse("x^2 + y^2 + z^2")?;
        let t = Element::letter(c.coords[0]);
        let mut cas_pows = vec![Element::one()];
        let mut out = Element::zero();
        for (e, coeff) in self.0.terms() {
            while cas_pows.len() <= e[1] as usize {
                let next = w.multiply(cas_pows.last().unwrap(), &cas)?;
                cas_pows.push(next);
            }
            let term = w.multiply(&t.pow_u32(e[0]), &cas_pows[e[1] as usize])?;
            out.add_scaled(&term, coeff);
        }
        Ok(out)
    }

    /// Writes a central element of `U(u(2)_h)` as a polynomial in `t` and
    /// `Cas`, peeling off the top degree each round.
    pub fn from_element(w: &WeylAlgebra, e: &Element) -> Result<Self> {
        let c = w.compact()?;
        if !w.is_function(e) {
            return Err(Error::NotInCenter("derivative letters present".into()));
        }
        let pos = |l| c.coords.iter().position(|&m| m == l).expect("coordinate");
        let cas4 = {
            let mut p = CommPoly::<Scalar, 4>::zero();
            for k in 1..4 {
                let mut e = [0; 4];
                e[k] = 2;
                p.add_term(e, Scalar::one());
            }
            p
        };
        let mut rest = w.normal_form(e)?;
        let mut out = CenterElement::zero();
        while !rest.is_zero() {
            let d = rest.degree();
            let mut top = CommPoly::<Scalar, 4>::zero();
            for (word, coeff) in rest.terms().filter(|(word, _)| word.len() == d) {
                let mut ex = [0; 4];
                for &l in word.letters() {
                    ex[pos(l)] += 1;
                }
                top.add_term(ex, coeff.clone());
            }
            let mut round = CenterElement::zero();
            for (a, part) in top.coefficients_in(0).into_iter().enumerate() {
                if part.is_zero() {
                    continue;
                }
                let a = a as u32;
                let rem = d as u32 - a;
                let witness = || Error::NotInCenter(w.render(&rest));
                if rem % 2 == 1 {
                    return Err(witness());
                }
                let b = rem / 2;
                let lead = part.coeff(&[0, 2 * b, 0, 0]);
                if part != cas4.pow(b).scale(&lead) {
                    return Err(witness());
                }
                round = round.add_ref(&CenterElement::monomial(a, b).scale(&lead));
            }
            rest = rest.sub(&round.to_element(w)?);
            out = out.add_ref(&round);
        }
        Ok(out)
    }
}

impl fmt::Display for CenterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(&["t", "Cas"]))
    }
}

/// A symmetric function of the quantum eigenvalues `μ1, μ2`, stored as a
/// polynomial in `λ = μ1 + μ2` and `s = μ1 − μ2`. Even powers of `s` are
/// powers of `μ = s²`; the odd part is the `√μ` part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricMuElement(pub CommPoly<Scalar, 2>);

poly_newtype_ring!(SymmetricMuElement);

impl SymmetricMuElement {
    pub fn lambda() -> Self {
        SymmetricMuElement(P2::var(0))
    }

    pub fn mu() -> Self {
        SymmetricMuElement(P2::monomial([0, 2], Scalar::one()))
    }

    /// `√μ = μ1 − μ2`.
    pub fn sqrt_mu() -> Self {
        SymmetricMuElement(P2::var(1))
    }

    /// From a polynomial in `λ` and `μ`.
    pub fn from_lambda_mu(p: &CommPoly<Scalar, 2>) -> Self {
        SymmetricMuElement(p.compose(&[P2::var(0), P2::monomial([0, 2], Scalar::one())]))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SymmetricMuElement(self.0.scale(c))
    }

    fn split(&self, odd: bool) -> CommPoly<Scalar, 2> {
        let mut out = P2::zero();
        for (e, c) in self.0.terms() {
            if (e[1] % 2 == 1) == odd {
                out.add_term([e[0], e[1] / 2], c.clone());
            }
        }
        out
    }

    /// The part polynomial in `λ` and `μ`.
    pub fn even(&self) -> CommPoly<Scalar, 2> {
        self.split(false)
    }

    /// The coefficient of `√μ`, as a polynomial in `λ` and `μ`.
    pub fn odd(&self) -> CommPoly<Scalar, 2> {
        self.split(true)
    }

    pub fn is_even(&self) -> bool {
        self.odd().is_zero()
    }

    /// Exact division by `μ1 − μ2`.
    pub fn div_sqrt_mu(&self) -> Option<Self> {
        div_exact_in_second(&self.0, &[Scalar::zero(), Scalar::one()]).map(SymmetricMuElement)
    }

    /// Coefficient-wise map, e.g. `h = 0`.
    pub fn try_map_coeffs(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        self.0.try_map_coeffs(f).map(SymmetricMuElement)
    }
}

impl fmt::Display for SymmetricMuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let even = self.even();
        let odd = self.odd();
        let names = ["lambda", "mu"];
        match (even.is_zero(), odd.is_zero()) {
            (_, true) => f.write_str(&even.render(&names)),
            (true, false) => write!(f, "sqrt(mu)*({})", odd.render(&names)),
            (false, false) => write!(f, "{} + sqrt(mu)*({})", even.render(&names), odd.render(&names)),
        }
    }
}

/// `t = (λ − ℏ)/2`, `Cas = (ℏ² − μ)/4`.
pub fn mu_coordinates(c: &CenterElement) -> SymmetricMuElement {
    let h = Scalar::hbar();
    let t = P2::var(0).sub(&P2::constant(h.clone())).scale(&half(1));
    let cas = P2::constant(h.mul_ref(&h)).sub(&P2::monomial([0, 2], Scalar::one())).scale(&Scalar::ratio(1, 4));
    SymmetricMuElement(c.0.compose(&[t, cas]))
}

/// Inverse of [`mu_coordinates`]: `λ = 2t + ℏ`, `μ = ℏ² − 4 Cas`.
pub fn center_from_mu(m: &SymmetricMuElement) -> Result<CenterElement> {
    let odd = m.odd();
    if !odd.is_zero() {
        return Err(Error::NotInCenter(format!("sqrt(mu)*({})", odd.render(&["lambda", "mu"]))));
    }
    let h = Scalar::hbar();
    let lambda = P2::var(0).scale(&Scalar::from(2)).add(&P2::constant(h.clone()));
    let mu = P2::constant(h.mul_ref(&h)).sub(&P2::var(1).scale(&Scalar::from(4)));
    Ok(CenterElement(m.even().compose(&[lambda, mu])))
}

/// The roots `μ1 = (λ + s)/2`, `μ2 = (λ − s)/2`.
fn roots() -> (P2, P2) {
    let l = P2::var(0);
    let s = P2::var(1);
    (l.add(&s).scale(&half(1)), l.sub(&s).scale(&half(1)))
}

/// `Tr N^k` through the quantum eigenvalues,
/// `((s − ℏ)μ1^k + (s + ℏ)μ2^k)/s`.
pub fn trace_power(k: u32) -> Result<SymmetricMuElement> {
    let (m1, m2) = roots();
    let h = P2::constant(Scalar::hbar());
    let s = P2::var(1);
    let num = s.sub(&h).mul(&m1.pow(k)).add(&s.add(&h).mul(&m2.pow(k)));
    SymmetricMuElement(num)
        .div_sqrt_mu()
        .ok_or_else(|| Error::Internal(format!("trace of N^{k} leaves a remainder")))
}

/// The generating matrix `N` of `U(u(2)_h)` in compact coordinates.
pub fn matrix_n(w: &WeylAlgebra) -> Result<Matrix<Element>> {
    let e = |s: &str| w.parse(s);
    Ok(Matrix::from_rows(vec![
        vec![e("t - i*z")?, e("-i*x - y")?],
        vec![e("-i*x + y")?, e("t + i*z")?],
    ]))
}

/// `N² − b·N + c·I`, normal-ordered entrywise.
pub fn ch_residual_with(w: &WeylAlgebra, b: &Element, c: &Element) -> Result<Matrix<Element>> {
    let n = matrix_n(w)?;
    let raw = n.mul(&n).sub(&n.map(|e| b.mul_free(e))).add(&Matrix::identity(2).map(|e| c.mul_free(e)));
    raw.try_map(|e| w.normal_form(e))
}

/// The Cayley–Hamilton residual `N² − (2t + ℏ)N + (t² + x² + y² + z² + ℏt)I`.
pub fn ch_residual(w: &WeylAlgebra) -> Result<Matrix<Element>> {
    ch_residual_with(w, &w.parse("2*t + h")?, &w.parse("t^2 + x^2 + y^2 + z^2 + h*t")?)
}

/// `Tr N^k` computed in the algebra and written through `t` and `Cas`.
pub fn trace_power_engine(w: &WeylAlgebra, k: u32) -> Result<CenterElement> {
    let n = matrix_n(w)?;
    let p = n.pow(k);
    let tr = w.normal_form(&p[(0, 0)].add(&p[(1, 1)]))?;
    CenterElement::from_element(w, &tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::s;

    fn lm(src: &[((u32, u32), &str)]) -> SymmetricMuElement {
        let mut p = P2::zero();
        for &((a, b), c) in src {
            p.add_term([a, b], s(c));
        }
        SymmetricMuElement::from_lambda_mu(&p)
    }

    #[test]
    fn mu_coordinates_of_generators() {
        assert_eq!(mu_coordinates(&CenterElement::t()), lm(&[((1, 0), "1/2"), ((0, 0), "-h/2")]));
        assert_eq!(mu_coordinates(&CenterElement::cas()), lm(&[((0, 1), "-1/4"), ((0, 0), "h^2/4")]));
        let c = CenterElement::monomial(2, 1);
        assert_eq!(center_from_mu(&mu_coordinates(&c)).unwrap(), c);
        assert!(matches!(center_from_mu(&SymmetricMuElement::sqrt_mu()), Err(Error::NotInCenter(_))));
    }

    #[test]
    fn low_traces() {
        assert_eq!(trace_power(0).unwrap(), SymmetricMuElement::from(Scalar::from(2)));
        assert_eq!(trace_power(1).unwrap(), lm(&[((1, 0), "1"), ((0, 0), "-h")]));
        let two_t = mu_coordinates(&CenterElement::t().scale(&Scalar::from(2)));
        assert_eq!(trace_power(1).unwrap(), two_t);
        let t2_minus_cas = CenterElement::monomial(2, 0).sub_ref(&CenterElement::cas()).scale(&Scalar::from(2));
        assert_eq!(trace_power(2).unwrap(), mu_coordinates(&t2_minus_cas));
    }

    #[test]
    fn cayley_hamilton() {
        let w = WeylAlgebra::u2h();
        assert!(ch_residual(&w).unwrap().is_zero());
        let bad = ch_residual_with(&w, &w.parse("2*t").unwrap(), &w.parse("t^2 + x^2 + y^2 + z^2 + h*t").unwrap()).unwrap();
        assert!(!bad.is_zero());
    }

    #[test]
    fn center_round_trip_through_algebra() {
        let w = WeylAlgebra::u2h();
        let c = CenterElement::monomial(1, 2).add_ref(&CenterElement::cas().scale(&s("h")));
        let e = c.to_element(&w).unwrap();
        assert_eq!(CenterElement::from_element(&w, &e).unwrap(), c);
        assert!(CenterElement::from_element(&w, &w.parse("x").unwrap()).is_err());
        for k in 0..4 {
            let engine = trace_power_engine(&w, k).unwrap();
            assert_eq!(mu_coordinates(&engine), trace_power(k).unwrap(), "k = {k}");
        }
    }
}
