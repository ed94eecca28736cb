use std::collections::BTreeMap;

use super::WeylAlgebra;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::Element;

const SYMBOLS: [&str; 4] = ["Dt", "Dx", "Dy", "Dz"];

/// A differential form `Σ ω_S f_S` with `ω_S` a wedge of the constant forms
/// `Dt, Dx, Dy, Dz` (bit `k` of `S` selects the `k`-th) and `f_S` a function.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormElement {
    parts: BTreeMap<u8, Element>,
}

impl FormElement {
    pub fn zero() -> Self {
        FormElement::default()
    }

    /// The 0-form `f`.
    pub fn function(f: Element) -> Self {
        FormElement::term(0, f)
    }

    /// `ω_mask · f`.
    pub fn term(mask: u8, f: Element) -> Self {
        let mut parts = BTreeMap::new();
        if !f.is_zero() {
            parts.insert(mask & 0xf, f);
        }
        FormElement { parts }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (u8, &Element)> {
        self.parts.iter().map(|(&m, f)| (m, f))
    }

    pub fn coefficient(&self, mask: u8) -> Element {
        self.parts.get(&mask).cloned().unwrap_or_else(Element::zero)
    }

    pub fn add(&self, o: &FormElement) -> FormElement {
        let mut parts = self.parts.clone();
        for (&m, f) in &o.parts {
            let sum = parts.get(&m).map_or_else(|| f.clone(), |g| g.add(f));
            if sum.is_zero() {
                parts.remove(&m);
            } else {
                parts.insert(m, sum);
            }
        }
        FormElement { parts }
    }

    /// Largest exterior degree present.
    pub fn degree(&self) -> u32 {
        self.parts.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    pub fn render(&self, w: &WeylAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(&m, f)| {
                let omega: Vec<&str> = (0..4).filter(|k| m & (1 << k) != 0).map(|k| SYMBOLS[k]).collect();
                let f = w.render(f);
                match (omega.is_empty(), f.as_str()) {
                    (true, _) => f,
                    (false, "1") => omega.join("^"),
                    (false, _) => format!("{}*({f})", omega.join("^")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `ω ∧ D_k`: the new mask and the sign of moving `D_k` into place, or
/// `None` when `D_k` already occurs.
fn wedge(mask: u8, k: u32) -> Option<(u8, i64)> {
    if mask & (1 << k) != 0 {
        return None;
    }
    let after = (mask >> (k + 1)).count_ones();
    Some((mask | (1 << k), if after % 2 == 0 { 1 } else { -1 }))
}

impl WeylAlgebra {
    /// `d(ω f) = ω ∧ (Dt ∂_t f + Dx ∂_x f + Dy ∂_y f + Dz ∂_z f)`, with the
    /// unshifted `∂_t`.
    pub fn de_rham_d(&self, form: &FormElement) -> Result<FormElement> {
        self.compact()?;
        let ops = ["dt", "dx", "dy", "dz"].into_iter().map(|n| self.generator(n)).collect::<Result<Vec<_>>>()?;
        let mut out = FormElement::zero();
        for (mask, f) in form.parts() {
            for (k, op) in ops.iter().enumerate() {
                let Some((m, sign)) = wedge(mask, k as u32) else { continue };
                let df = self.apply_operator(op, f)?;
                out = out.add(&FormElement::term(m, df.scale(&Scalar::from(sign))));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_derivative_basics() {
        let w = WeylAlgebra::u2h();
        let x = FormElement::function(w.parse("x").unwrap());
        assert_eq!(w.de_rham_d(&x).unwrap().render(&w), "Dx");
        assert!(w.de_rham_d(&FormElement::function(Element::one())).unwrap().is_zero());
        let xyz = FormElement::function(w.parse("x*y*z").unwrap());
        let d1 = w.de_rham_d(&xyz).unwrap();
        assert_eq!(d1.degree(), 1);
        assert!(w.de_rham_d(&d1).unwrap().is_zero());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(0b0010, 0), Some((0b0011, -1)));
        assert_eq!(wedge(0b0001, 1), Some((0b0011, 1)));
        assert_eq!(wedge(0b0001, 0), None);
    }
}
