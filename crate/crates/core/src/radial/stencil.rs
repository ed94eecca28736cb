use num_traits::Zero;

use super::pi::at_hbar0;
use super::{SymmetricMuElement, P2};
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// `Δ_rad f(λ, μ)` as a difference operator:
///
/// `ℏ⁻²(2f(λ+2ℏ, μ) − f(λ+2ℏ, (√μ+2ℏ)²) − f(λ+2ℏ, (√μ−2ℏ)²))
///   + 2ℏ⁻¹μ^{-1/2}(f(λ+2ℏ, (√μ−2ℏ)²) − f(λ+2ℏ, (√μ+2ℏ)²))`.
///
/// `f` is a polynomial in `λ` and `μ`. The `√μ` parts must cancel.
pub fn radial_apply(f: &CommPoly<Scalar, 2>) -> Result<SymmetricMuElement> {
    let h = Scalar::hbar();
    let two_h = P2::constant(h.mul_ref(&Scalar::from(2)));
    let lam = P2::var(0).add(&two_h);
    let r = P2::var(1);
    let at = |root: P2| SymmetricMuElement(f.compose(&[lam.clone(), root.mul(&root)]));
    let centre = at(r.clone());
    let up = at(r.add(&two_h));
    let down = at(r.sub(&two_h));
    let inv_h2 = Scalar::from(1).checked_div(&h.mul_ref(&h))?;
    let second = centre.scale(&Scalar::from(2)).sub_ref(&up).sub_ref(&down).scale(&inv_h2);
    let first = down
        .sub_ref(&up)
        .div_sqrt_mu()
        .ok_or_else(|| Error::Internal("first difference is not divisible by sqrt(mu)".into()))?
        .scale(&Scalar::from(2).checked_div(&h)?);
    let out = second.add_ref(&first);
    if !out.is_even() {
        return Err(Error::NotInCenter(format!("sqrt(mu)*({})", out.odd().render(&["lambda", "mu"]))));
    }
    Ok(out)
}

/// One line of the classical-limit comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalLimitRow {
    pub p: u32,
    /// `ℏ = 0` value of `Δ_rad(μ^p)`, as a polynomial in `μ`.
    pub limit: CommPoly<Scalar, 1>,
    /// `(−16 μ ∂²_μ − 24 ∂_μ) μ^p`.
    pub expected: CommPoly<Scalar, 1>,
    /// Whether `μ = −4r²` turns the limit into `(∂²_r + (2/r)∂_r) r^{2p}` up to the factor `(−4)^p`.
    pub radial_r_agrees: bool,
}

impl ClassicalLimitRow {
    pub fn holds(&self) -> bool {
        self.limit == self.expected && self.radial_r_agrees
    }
}

fn mu_only(m: &SymmetricMuElement) -> Result<CommPoly<Scalar, 1>> {
    let mut out = CommPoly::zero();
    for (e, c) in m.even().terms() {
        if e[0] != 0 {
            return Err(Error::Internal("classical limit depends on lambda".into()));
        }
        out.add_term([e[1]], c.clone());
    }
    Ok(out)
}

/// Compares the `ℏ → 0` limit of `Δ_rad` with the classical radial
/// Laplacian on `μ^p` for `p = 0..=p_max`.
pub fn classical_radial_limit(p_max: u32) -> Result<Vec<ClassicalLimitRow>> {
    let mut rows = Vec::new();
    for p in 0..=p_max {
        let value = radial_apply(&P2::monomial([0, p], Scalar::from(1)))?;
        let limit = mu_only(&at_hbar0(&value)?)?;
        let mu_p = CommPoly::<Scalar, 1>::monomial([p], Scalar::from(1));
        let mu = CommPoly::<Scalar, 1>::var(0);
        let expected = mu.mul(&mu_p.derivative(0).derivative(0)).scale(&Scalar::from(-16)).sub(&mu_p.derivative(0).scale(&Scalar::from(24)));
        // μ = −4r²
        let to_r = |g: &CommPoly<Scalar, 1>| g.compose(&[CommPoly::<Scalar, 1>::monomial([2], Scalar::from(-4))]);
        let g = to_r(&mu_p);
        let dg = g.derivative(0);
        let mut two_dg_over_r = CommPoly::zero();
        for (e, c) in dg.terms() {
            if e[0] == 0 {
                if !c.is_zero() {
                    return Err(Error::Internal("odd radial derivative".into()));
                }
                continue;
            }
            two_dg_over_r.add_term([e[0] - 1], c.mul_ref(&Scalar::from(2)));
        }
        let classical_r = dg.derivative(0).add(&two_dg_over_r);
        rows.push(ClassicalLimitRow { p, radial_r_agrees: to_r(&limit) == classical_r, limit, expected });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::s;

    fn mono(a: u32, b: u32) -> P2 {
        P2::monomial([a, b], Scalar::from(1))
    }

    #[test]
    fn stencil_values() {
        assert!(radial_apply(&mono(0, 0)).unwrap().is_zero());
        assert_eq!(radial_apply(&mono(0, 1)).unwrap(), SymmetricMuElement::from(s("-24")));
        assert!(radial_apply(&mono(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn classical_rows() {
        let rows = classical_radial_limit(3).unwrap();
        assert!(rows.iter().all(ClassicalLimitRow::holds));
        assert_eq!(rows[2].limit, CommPoly::monomial([1], s("-80")));
        assert!(rows[0].limit.is_zero());
    }
}
