use num_traits::{One, Zero};

use super::{center_from_mu, div_exact_in_second, mu_coordinates, CenterElement, SymmetricMuElement, P2};
use crate::calculus::{OperatorKind, UniPoly, WeylAlgebra};
use crate::error::{Error, Result};
use crate::expr::s;
use crate::linalg::Matrix;
use crate::ring::{Field, Ring};
use crate::scalar::{Scalar, Var};
use crate::Element;

fn entry(cas: &str, constant: &str) -> CenterElement {
    CenterElement::cas().scale(&s(cas)).add_ref(&CenterElement::from(s(constant)))
}

/// `Δ_i · Cas = Σ_j Π_ij Δ_j` on `W(U(u(2)_h))`.
pub fn pi_matrix() -> Matrix<CenterElement> {
    Matrix::from_rows(vec![
        vec![entry("1", "-3*h^2/2"), entry("0", "h^2/2"), entry("0", "-2*h"), entry("0", "0")],
        vec![entry("0", "3*h^2/2"), entry("1", "-h^2/2"), entry("0", "2*h"), entry("0", "0")],
        vec![entry("h", "0"), entry("0", "0"), entry("1", "-h^2/2"), entry("0", "-h")],
        vec![entry("h^2", "0"), entry("-h^2/2", "0"), entry("2*h", "h^3/4"), entry("1", "h^2/2")],
    ])
}

/// Normal-orders `Δ_i · Cas − Σ_j Π_ij Δ_j` for every row and fails on the
/// first nonzero one.
pub fn pi_certify(w: &WeylAlgebra, pi: &Matrix<CenterElement>) -> Result<()> {
    let deltas = (0..4).map(|i| w.build_operator(OperatorKind::delta(i))).collect::<Result<Vec<_>>>()?;
    let cas = CenterElement::cas().to_element(w)?;
    for (i, di) in deltas.iter().enumerate() {
        let mut residual = w.multiply(di, &cas)?;
        for (j, dj) in deltas.iter().enumerate() {
            let coeff = pi[(i, j)].to_element(w)?;
            residual = residual.sub(&w.multiply(&coeff, dj)?);
        }
        if !residual.is_zero() {
            return Err(Error::Certification(format!("row {i}: residual {}", w.render(&residual))));
        }
    }
    Ok(())
}

fn sq(p: &P2) -> P2 {
    p.mul(p)
}

/// `(λ0, λ+, λ−)` with `λ0 = (ℏ² − s²)/4`, `λ± = (ℏ² − (s ± 2ℏ)²)/4`, `s = μ1 − μ2`.
pub fn pi_eigenvalues() -> [SymmetricMuElement; 3] {
    let h = P2::constant(Scalar::hbar());
    let sv = P2::var(1);
    let two_h = h.scale(&Scalar::from(2));
    let quarter = Scalar::ratio(1, 4);
    let ev = |x: &P2| SymmetricMuElement(sq(&h).sub(&sq(x)).scale(&quarter));
    [ev(&sv), ev(&sv.add(&two_h)), ev(&sv.sub(&two_h))]
}

fn eval_uni<T: Ring>(f: &UniPoly, x: &T, embed: impl Fn(&Scalar) -> T) -> T {
    f.eval(embed, std::slice::from_ref(x))
}

fn s_only(p: &P2) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); p.degree_in(1) as usize + 1];
    for (e, c) in p.terms() {
        if e[0] != 0 {
            return Err(Error::Internal("eigenvalue gap depends on lambda".into()));
        }
        out[e[1] as usize] = c.clone();
    }
    Ok(out)
}

/// `f(Π)` by the Lagrange–Sylvester formula over the three distinct
/// eigenvalues, with all divisions exact.
pub fn matrix_function_ls(f: &UniPoly) -> Result<Matrix<CenterElement>> {
    let pi = pi_matrix().map(mu_coordinates);
    let ev = pi_eigenvalues();
    let id = Matrix::<SymmetricMuElement>::identity(4);
    let gap = |a: usize, b: usize| ev[a].0.sub(&ev[b].0);
    let denom: Vec<P2> = (0..3).map(|a| (0..3).filter(|&b| b != a).fold(P2::one(), |acc, b| acc.mul(&gap(a, b)))).collect();
    let common = gap(0, 1).mul(&gap(0, 2)).mul(&gap(1, 2));
    let common_s = s_only(&common)?;
    let mut num = Matrix::<SymmetricMuElement>::zeros(4, 4);
    for a in 0..3 {
        let cofactor = div_exact_in_second(&common, &s_only(&denom[a])?)
            .ok_or_else(|| Error::Internal("eigenvalue gaps do not divide their product".into()))?;
        let mut prod = id.clone();
        for b in (0..3).filter(|&b| b != a) {
            prod = prod.mul(&pi.sub(&id.scale(&ev[b])));
        }
        let fa = eval_uni(f, &ev[a], |c| SymmetricMuElement::from(c.clone()));
        num = num.add(&prod.scale(&fa.mul_ref(&SymmetricMuElement(cofactor))));
    }
    num.try_map(|e| {
        let q = div_exact_in_second(&e.0, &common_s)
            .ok_or_else(|| Error::Internal("Lagrange-Sylvester sum is not polynomial".into()))?;
        center_from_mu(&SymmetricMuElement(q))
    })
}

/// `f(Π)` at a specialization `μ1 − μ2 = s`. Fails when two of the
/// eigenvalues coincide there.
pub fn matrix_function_ls_at(f: &UniPoly, s_value: &Scalar) -> Result<Matrix<Scalar>> {
    let h = Scalar::hbar();
    let cas = h.mul_ref(&h).sub_ref(&s_value.mul_ref(s_value)).mul_ref(&Scalar::ratio(1, 4));
    let at = |p: &CenterElement| -> Scalar { p.0.eval(|c| c.clone(), &[Scalar::zero(), cas.clone()]) };
    let pi = pi_matrix().map(at);
    let ev: Vec<Scalar> = pi_eigenvalues().iter().map(|e| e.0.eval(|c| c.clone(), &[Scalar::zero(), s_value.clone()])).collect();
    let id = Matrix::<Scalar>::identity(4);
    let mut out = Matrix::<Scalar>::zeros(4, 4);
    for a in 0..3 {
        let mut term = id.scale(&eval_uni(f, &ev[a], |c| c.clone()));
        for b in (0..3).filter(|&b| b != a) {
            let gap = ev[a].sub_ref(&ev[b]);
            let inv = gap.try_inv().ok_or_else(|| {
                Error::ConfluentSpectrum(format!("eigenvalues {} and {} coincide at mu1 - mu2 = {s_value}", ev[a], ev[b]))
            })?;
            term = term.mul(&pi.sub(&id.scale(&ev[b]))).scale(&inv);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `4ℏ⁻² (Π^p)_{i0}` in eigenvalue coordinates.
pub fn pi_power_delta(i: usize, p: u32) -> Result<SymmetricMuElement> {
    let pp = pi_matrix().pow(p);
    let four_over_h2 = Scalar::from(4).checked_div(&Scalar::hbar().pow_u32(2))?;
    Ok(mu_coordinates(&pp[(i, 0)]).scale(&four_over_h2))
}

/// How to read the `λ0^p` coefficient of the printed `Δ3(Cas^p)` formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Delta3Reading {
    /// `(2ℏ² − s²) λ0^p`, as printed.
    Literal,
    /// `2(2ℏ² − s²) λ0^p`, the coefficient that Lagrange–Sylvester produces.
    Doubled,
}

fn closed(i: usize, p: u32, reading: Delta3Reading) -> Result<SymmetricMuElement> {
    let [l0, lp, lm] = pi_eigenvalues().map(|e| e.0.pow(p));
    let h = P2::constant(Scalar::hbar());
    let sv = P2::var(1);
    let k = |n: i64| Scalar::from(n);
    let h2 = sq(&h);
    let plus = sq(&sv).add(&h.mul(&sv)).sub(&h2.scale(&k(2)));
    let minus = sq(&sv).sub(&h.mul(&sv)).sub(&h2.scale(&k(2)));
    let (num, over_s, scale) = match i {
        0 => (sv.scale(&k(2)).mul(&l0).add(&sv.add(&h.scale(&k(2))).mul(&lp)).add(&sv.sub(&h.scale(&k(2))).mul(&lm)), true, 1),
        1 => (sv.scale(&k(2)).mul(&l0).sub(&sv.add(&h.scale(&k(2))).mul(&lp)).sub(&sv.sub(&h.scale(&k(2))).mul(&lm)), true, 1),
        2 => (h.mul(&sv).scale(&k(-2)).mul(&l0).add(&plus.mul(&lp)).sub(&minus.mul(&lm)), true, 2),
        3 => {
            let c = if reading == Delta3Reading::Doubled { 2 } else { 1 };
            (h2.scale(&k(2)).sub(&sq(&sv)).scale(&k(c)).mul(&l0).add(&plus.mul(&lp)).add(&minus.mul(&lm)), false, 4)
        }
        _ => return Err(Error::Expression(format!("no operator Delta{i}"))),
    };
    let mut m = SymmetricMuElement(num);
    if over_s {
        m = m.div_sqrt_mu().ok_or_else(|| Error::Internal(format!("Delta{i}(Cas^{p}): mu1 - mu2 does not divide")))?;
    }
    let inv = Scalar::one().checked_div(&Scalar::from(scale).mul_ref(&Scalar::hbar().pow_u32(2)))?;
    Ok(m.scale(&inv))
}

/// `Δ_i(Cas^p)` from the closed eigenvalue formulas.
pub fn delta_on_cas_power(i: usize, p: u32) -> Result<SymmetricMuElement> {
    closed(i, p, Delta3Reading::Doubled)
}

pub fn delta3_on_cas_power(reading: Delta3Reading, p: u32) -> Result<SymmetricMuElement> {
    closed(3, p, reading)
}

/// `Δ_i(Cas^p)` by normal ordering, in eigenvalue coordinates.
pub fn delta_on_cas_power_engine(w: &WeylAlgebra, i: usize, p: u32) -> Result<SymmetricMuElement> {
    let op = w.build_operator(OperatorKind::delta(i))?;
    let f = CenterElement::monomial(0, p).to_element(w)?;
    let value: Element = w.apply_operator(&op, &f)?;
    Ok(mu_coordinates(&CenterElement::from_element(w, &value)?))
}

/// `ℏ = 0` coefficient-wise.
pub(crate) fn at_hbar0(m: &SymmetricMuElement) -> Result<SymmetricMuElement> {
    m.try_map_coeffs(|c| Ok(c.substitute(Var::Hbar, &Scalar::zero())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::uni_power;

    #[test]
    fn printed_entries() {
        let pi = pi_matrix();
        assert_eq!(pi[(1, 0)], CenterElement::from(s("3*h^2/2")));
        assert_eq!(pi[(3, 3)], CenterElement::cas().add_ref(&CenterElement::from(s("h^2/2"))));
    }

    #[test]
    fn eigenvalues_annihilate_characteristic_polynomial() {
        let pi = pi_matrix().map(mu_coordinates);
        for l in pi_eigenvalues() {
            let shifted = pi.sub(&Matrix::identity(4).scale(&l));
            assert!(shifted.det().is_zero(), "{l}");
        }
        let [l0, lp, _] = pi_eigenvalues();
        assert_eq!(center_from_mu(&l0).unwrap(), CenterElement::cas());
        assert_eq!(at_hbar0(&lp).unwrap(), at_hbar0(&mu_coordinates(&CenterElement::cas())).unwrap());
    }

    #[test]
    fn lagrange_sylvester_small_powers() {
        let pi = pi_matrix();
        assert_eq!(matrix_function_ls(&uni_power(0)).unwrap(), Matrix::identity(4));
        assert_eq!(matrix_function_ls(&uni_power(1)).unwrap(), pi);
        assert_eq!(matrix_function_ls(&uni_power(2)).unwrap(), pi.mul(&pi));
    }

    #[test]
    fn confluent_point_is_rejected() {
        let err = matrix_function_ls_at(&uni_power(2), &Scalar::zero()).unwrap_err();
        assert!(matches!(err, Error::ConfluentSpectrum(_)), "{err}");
        let generic = matrix_function_ls_at(&uni_power(2), &s("3")).unwrap();
        let h = Scalar::hbar();
        let cas = h.mul_ref(&h).sub_ref(&s("9")).mul_ref(&s("1/4"));
        let direct = pi_matrix().map(|p| p.0.eval(|c| c.clone(), &[Scalar::zero(), cas.clone()]));
        assert_eq!(generic, direct.mul(&direct));
    }

    #[test]
    fn closed_forms_at_low_powers() {
        assert_eq!(delta_on_cas_power(0, 0).unwrap(), SymmetricMuElement::from(s("4/h^2")));
        for i in 1..4 {
            assert!(delta_on_cas_power(i, 0).unwrap().is_zero(), "Delta{i}");
        }
        assert_eq!(delta_on_cas_power(1, 1).unwrap(), SymmetricMuElement::from(s("6")));
        assert!(!delta3_on_cas_power(Delta3Reading::Literal, 0).unwrap().is_zero());
        for i in 0..4 {
            for p in 0..4 {
                assert_eq!(delta_on_cas_power(i, p).unwrap(), pi_power_delta(i, p).unwrap(), "Delta{i}, p = {p}");
            }
        }
    }
}
