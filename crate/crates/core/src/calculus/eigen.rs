use super::WeylAlgebra;
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::pbw::{Element as GenericElement, Rewriter, Word};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Polynomials in the formal exponents `α0..α3`.
pub type AlphaPoly = CommPoly<Scalar, 4>;

/// Outcome of an eigenfunction check.
#[derive(Clone, Debug)]
pub struct EigenReport {
    pub holds: bool,
    /// `∂(f_Λ) − E(Λ)·f_Λ` up to the truncation degree.
    pub residual: GenericElement<AlphaPoly>,
}

fn factorial(n: u32) -> Scalar {
    Scalar::from((1..=n as i64).product::<i64>())
}

/// `Σ_{n ≤ max, n ≡ parity (mod 2)} sign(n) u^n / n!`.
fn series(u: &AlphaPoly, max: u32, keep: impl Fn(u32) -> Option<i64>) -> AlphaPoly {
    let mut out = AlphaPoly::zero();
    let mut pow = AlphaPoly::one();
    for n in 0..=max {
        if let Some(sign) = keep(n) {
            let c = Scalar::from(sign).checked_div(&factorial(n)).expect("nonzero factorial");
            out = out.add(&pow.scale(&c));
        }
        pow = pow.mul(u).truncate(max);
    }
    out
}

fn exp(u: &AlphaPoly, max: u32) -> AlphaPoly {
    series(u, max, |_| Some(1))
}

fn sin(u: &AlphaPoly, max: u32) -> AlphaPoly {
    series(u, max, |n| (n % 2 == 1).then_some(if n % 4 == 1 { 1 } else { -1 }))
}

fn cos(u: &AlphaPoly, max: u32) -> AlphaPoly {
    series(u, max, |n| (n % 2 == 0).then_some(if n % 4 == 0 { 1 } else { -1 }))
}

fn is_linear_form(p: &AlphaPoly) -> bool {
    p.terms().all(|(e, _)| e.iter().sum::<u32>() == 1)
}

impl WeylAlgebra {
    /// Checks that the ordered exponential `exp(Λ0 t) exp(Λ1 x) exp(Λ2 y) exp(Λ3 z)`
    /// is an eigenfunction of `d`, comparing all terms of degree at most
    /// `degree` in the formal exponents. Each `Λk` must be zero or a linear
    /// form in `α0..α3`, so that this degree equals the degree in coordinates.
    pub fn eigen_check(&self, d: crate::pbw::Letter, lambda: &[AlphaPoly; 4], degree: u32) -> Result<EigenReport> {
        let c = self.compact()?;
        let di = c
            .derivs
            .iter()
            .position(|&l| l == d)
            .ok_or_else(|| Error::Expression("expected one of dtt dx dy dz".into()))?;
        if !lambda.iter().all(is_linear_form) {
            return Err(Error::Expression("exponents must be linear in the formal parameters".into()));
        }
        let half_h = Scalar::hbar().mul_ref(&Scalar::ratio(1, 2));
        let u: Vec<AlphaPoly> = lambda.iter().map(|l| l.scale(&half_h)).collect();
        let (s, co): (Vec<_>, Vec<_>) = u[1..].iter().map(|v| (sin(v, degree), cos(v, degree))).unzip();
        let p3 = |a: &AlphaPoly, b: &AlphaPoly, e: &AlphaPoly| a.mul(b).truncate(degree).mul(e).truncate(degree);
        let body = match di {
            0 => p3(&co[0], &co[1], &co[2]).sub(&p3(&s[0], &s[1], &s[2])),
            1 => p3(&s[0], &co[1], &co[2]).add(&p3(&co[0], &s[1], &s[2])),
            2 => p3(&co[0], &s[1], &co[2]).sub(&p3(&s[0], &co[1], &s[2])),
            _ => p3(&co[0], &co[1], &s[2]).add(&p3(&s[0], &s[1], &co[2])),
        };
        let two_over_h = Scalar::from(2).checked_div(&Scalar::hbar())?;
        let eigenvalue = exp(&u[0], degree).mul(&body).truncate(degree).scale(&two_over_h);

        // f_Λ, truncated
        let mut f = GenericElement::<AlphaPoly>::zero();
        for a in 0..=degree {
            for b in 0..=degree - a {
                for cc in 0..=degree - a - b {
                    for dd in 0..=degree - a - b - cc {
                        let exps = [a, b, cc, dd];
                        let mut coeff = AlphaPoly::one();
                        let mut letters = Vec::new();
                        for k in 0..4 {
                            let inv = Scalar::from(1).checked_div(&factorial(exps[k]))?;
                            coeff = coeff.mul(&lambda[k].pow(exps[k]).scale(&inv));
                            letters.extend(std::iter::repeat(c.coords[k]).take(exps[k] as usize));
                        }
                        f.add_term(Word::new(letters), coeff);
                    }
                }
            }
        }
        let rw = Rewriter::new(self.table().map_ring(|s| AlphaPoly::constant(s.clone())));
        let lhs = rw.apply(&GenericElement::letter(d), &f)?;
        let rhs = f.scale(&eigenvalue).map_ring(|p| p.truncate(degree));
        let residual = lhs.sub(&rhs).map_ring(|p| p.truncate(degree));
        Ok(EigenReport { holds: residual.is_zero(), residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_series() {
        let u = AlphaPoly::var(0);
        let s = sin(&u, 5);
        assert_eq!(s.coeff(&[3, 0, 0, 0]), Scalar::ratio(-1, 6));
        assert_eq!(s.coeff(&[5, 0, 0, 0]), Scalar::ratio(1, 120));
        assert_eq!(cos(&u, 4).coeff(&[2, 0, 0, 0]), Scalar::ratio(-1, 2));
        assert_eq!(exp(&u, 3).len(), 4);
    }

    #[test]
    fn trivial_exponent() {
        let w = WeylAlgebra::u2h();
        let zero = [AlphaPoly::zero(), AlphaPoly::zero(), AlphaPoly::zero(), AlphaPoly::zero()];
        let r = w.eigen_check(w.letter("dtt").unwrap(), &zero, 2).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn single_direction() {
        let w = WeylAlgebra::u2h();
        let lam = [AlphaPoly::zero(), AlphaPoly::var(1), AlphaPoly::zero(), AlphaPoly::zero()];
        assert!(w.eigen_check(w.letter("dx").unwrap(), &lam, 4).unwrap().holds);
    }
}
