use super::{Compact, WeylAlgebra};
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::pbw::{Letter, Word};
use crate::ring::Ring;
use crate::scalar::{Gauss, Scalar};
use crate::Element;

/// A polynomial in one commuting variable.
pub type UniPoly = CommPoly<Scalar, 1>;

type Poly4 = CommPoly<Scalar, 4>;

pub fn uni_power(k: u32) -> UniPoly {
    CommPoly::monomial([k], Scalar::from(1))
}

fn shifted(f: &UniPoly, by: Scalar) -> UniPoly {
    f.compose(&[CommPoly::var(0).add(&CommPoly::constant(by))])
}

/// `A(f) = (f(v − iℏ/2) + f(v + iℏ/2))/2` and `B(f) = i(f(v − iℏ/2) − f(v + iℏ/2))/2`.
pub fn closed_form_univariate(f: &UniPoly) -> (UniPoly, UniPoly) {
    let i = Scalar::gauss(Gauss::i());
    let ih2 = i.mul_ref(&Scalar::hbar()).mul_ref(&Scalar::ratio(1, 2));
    let minus = shifted(f, ih2.neg_ref());
    let plus = shifted(f, ih2);
    let half = Scalar::ratio(1, 2);
    (minus.add(&plus).scale(&half), minus.sub(&plus).scale(&i.mul_ref(&half)))
}

fn on_letter(p: &UniPoly, l: Letter) -> Element {
    let mut e = Element::zero();
    for (exp, c) in p.terms() {
        e.add_term(Word::new(vec![l; exp[0] as usize]), c.clone());
    }
    e
}

fn embed(p: &UniPoly, k: usize) -> Poly4 {
    p.compose(&[CommPoly::var(k)])
}

fn on_coords(p: &Poly4, c: &Compact) -> Element {
    let mut e = Element::zero();
    for (exp, coeff) in p.terms() {
        let mut w = Vec::new();
        for (k, &n) in exp.iter().enumerate() {
            w.extend(std::iter::repeat(c.coords[k]).take(n as usize));
        }
        e.add_term(Word::new(w), coeff.clone());
    }
    e
}

/// For `∂_d` moving past a function of coordinate `v ≠ t`: the other
/// derivative that appears and its sign. Indices are into `(∂̃_t, ∂_x, ∂_y, ∂_z)`
/// and `(t, x, y, z)`.
fn partner(d: usize, v: usize) -> (usize, i64) {
    const TABLE: [[(usize, i64); 3]; 4] = [
        [(1, -1), (2, -1), (3, -1)],
        [(0, 1), (3, 1), (2, -1)],
        [(3, -1), (0, 1), (1, 1)],
        [(2, 1), (1, -1), (0, 1)],
    ];
    TABLE[d][v - 1]
}

impl WeylAlgebra {
    fn index(&self, c: &Compact, d: Letter, v: Letter) -> Result<(usize, usize)> {
        let di = c.derivs.iter().position(|&l| l == d);
        let vi = c.coords.iter().position(|&l| l == v);
        match (di, vi) {
            (Some(di), Some(vi)) => Ok((di, vi)),
            _ => Err(Error::Expression("expected a derivative and a coordinate".into())),
        }
    }

    /// `∂_d · f(v)` reordered with the derivative on the right, from the
    /// difference-operator closed form.
    pub fn permute_through(&self, d: Letter, v: Letter, f: &UniPoly) -> Result<Element> {
        let c = self.compact()?;
        let (di, vi) = self.index(&c, d, v)?;
        let dl = Element::letter(d);
        if vi == 0 {
            let g = shifted(f, Scalar::hbar().mul_ref(&Scalar::ratio(1, 2)));
            return Ok(on_letter(&g, v).mul_free(&dl));
        }
        let (a, b) = closed_form_univariate(f);
        let (other, sign) = partner(di, vi);
        let second = on_letter(&b, v).mul_free(&Element::letter(c.derivs[other])).scale(&Scalar::from(sign));
        Ok(on_letter(&a, v).mul_free(&dl).add(&second))
    }

    pub fn permute_through_power(&self, d: Letter, v: Letter, k: u32) -> Result<Element> {
        self.permute_through(d, v, &uni_power(k))
    }

    /// `∂_d(f0(t) f1(x) f2(y) f3(z))` from the closed formulas.
    pub fn apply_decomposable(&self, d: Letter, f: [&UniPoly; 4]) -> Result<Element> {
        let c = self.compact()?;
        let di = c
            .derivs
            .iter()
            .position(|&l| l == d)
            .ok_or_else(|| Error::Expression("expected one of dtt dx dy dz".into()))?;
        let head = embed(&shifted(f[0], Scalar::hbar().mul_ref(&Scalar::ratio(1, 2))), 0);
        let mut a = Vec::new();
        let mut b = Vec::new();
        for k in 1..4 {
            let (ak, bk) = closed_form_univariate(f[k]);
            a.push(embed(&ak, k));
            b.push(embed(&bk, k));
        }
        let prod = |p: &Poly4, q: &Poly4, r: &Poly4| p.mul(q).mul(r);
        let body = match di {
            0 => prod(&a[0], &a[1], &a[2]).sub(&prod(&b[0], &b[1], &b[2])),
            1 => prod(&b[0], &a[1], &a[2]).add(&prod(&a[0], &b[1], &b[2])),
            2 => prod(&a[0], &b[1], &a[2]).sub(&prod(&b[0], &a[1], &b[2])),
            _ => prod(&a[0], &a[1], &b[2]).add(&prod(&b[0], &b[1], &a[2])),
        };
        let two_over_h = Scalar::from(2).checked_div(&Scalar::hbar())?;
        Ok(on_coords(&head.mul(&body).scale(&two_over_h), &c))
    }

    /// The product `f0(t) f1(x) f2(y) f3(z)` as an element.
    pub fn decomposable(&self, f: [&UniPoly; 4]) -> Result<Element> {
        let c = self.compact()?;
        let p = (0..4).fold(Poly4::one(), |acc, k| acc.mul(&embed(f[k], k)));
        Ok(on_coords(&p, &c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::s;

    fn poly(cs: &[&str]) -> UniPoly {
        let mut p = UniPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            p.add_term([k as u32], s(c));
        }
        p
    }

    #[test]
    fn low_degree_closed_forms() {
        assert_eq!(closed_form_univariate(&uni_power(0)), (poly(&["1"]), UniPoly::zero()));
        assert_eq!(closed_form_univariate(&uni_power(1)), (poly(&["0", "1"]), poly(&["h/2"])));
        assert_eq!(closed_form_univariate(&uni_power(2)), (poly(&["-h^2/4", "0", "1"]), poly(&["0", "h"])));
    }

    #[test]
    fn binomial_oracle() {
        // A_k = Σ_{j even} C(k,j) v^{k-j} (iℏ/2)^j (±), B_k from the odd part
        for k in 0..9u32 {
            let (a, b) = closed_form_univariate(&uni_power(k));
            let mut ea = UniPoly::zero();
            let mut eb = UniPoly::zero();
            let mut binom = 1i64;
            for j in 0..=k {
                let hj = Scalar::hbar().pow_u32(j).mul_ref(&Scalar::ratio(1, 1 << j));
                let c = hj.mul_ref(&Scalar::from(binom));
                if j % 2 == 0 {
                    let sign = if j % 4 == 0 { 1 } else { -1 };
                    ea.add_term([k - j], c.mul_ref(&Scalar::from(sign)));
                } else {
                    let sign = if j % 4 == 1 { 1 } else { -1 };
                    eb.add_term([k - j], c.mul_ref(&Scalar::from(sign)));
                }
                binom = binom * (k - j) as i64 / (j + 1) as i64;
            }
            assert_eq!(a, ea, "A_{k}");
            assert_eq!(b, eb, "B_{k}");
        }
    }

    #[test]
    fn first_row_matches_table() {
        let w = WeylAlgebra::u2h();
        let (dx, x, dtt, t) = (w.letter("dx").unwrap(), w.letter("x").unwrap(), w.letter("dtt").unwrap(), w.letter("t").unwrap());
        assert_eq!(w.render(&w.permute_through_power(dx, x, 1).unwrap()), "x*dx + (h/2)*dtt");
        assert_eq!(w.render(&w.permute_through_power(dtt, t, 2).unwrap()), "t^2*dtt + h*t*dtt + (h^2/4)*dtt");
        assert_eq!(w.permute_through_power(dx, t, 0).unwrap(), Element::letter(dx));
    }

    #[test]
    fn decomposable_constant_is_killed() {
        let w = WeylAlgebra::u2h();
        let one = uni_power(0);
        for d in ["dx", "dy", "dz"] {
            let r = w.apply_decomposable(w.letter(d).unwrap(), [&one; 4]).unwrap();
            assert!(r.is_zero(), "{d}");
        }
    }
}
