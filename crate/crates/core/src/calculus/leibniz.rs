use super::WeylAlgebra;
use crate::error::{Error, Result};
use crate::pbw::{Letter, Sort};
use crate::scalar::Scalar;
use crate::Element;

impl WeylAlgebra {
    /// Matrix size `n` and the derivative letter at `(i, j)` of `D`, where
    /// `D[i][j]` differentiates along the coordinate in row `j`, column `i`.
    fn derivative_matrix(&self) -> Result<(usize, impl Fn(usize, usize) -> Letter + '_)> {
        let alpha = self.alphabet();
        let coords = alpha.letters_of(Sort::Coordinate);
        let derivs = alpha.letters_of(Sort::Derivative);
        let n = (1..=coords.len()).find(|n| n * n >= coords.len()).unwrap_or(0);
        if n == 0 || n * n != coords.len() || derivs.len() != coords.len() {
            return Err(Error::WrongAlphabet("expected the entries of a square matrix and their derivatives".into()));
        }
        Ok((n, move |i: usize, j: usize| derivs[j * n + i]))
    }

    /// `∂(f·g)` through the coproduct `Δ(∂_i^j) = ∂_i^j ⊗ 1 + 1 ⊗ ∂_i^j + ℏ ∂_k^j ⊗ ∂_i^k`.
    pub fn leibniz_apply(&self, d: Letter, f: &Element, g: &Element) -> Result<Element> {
        let (n, entry) = self.derivative_matrix()?;
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| entry(i, j) == d)
            .ok_or_else(|| Error::Expression(format!("'{}' is not a derivative", self.alphabet().name(d))))?;
        let act = |l: Letter, e: &Element| self.apply_operator(&Element::letter(l), e);
        let mut out = self.multiply(&act(d, f)?, g)?.add(&self.multiply(f, &act(d, g)?)?);
        for k in 0..n {
            let cross = self.multiply(&act(entry(k, j), f)?, &act(entry(i, k), g)?)?;
            out = out.add(&cross.scale(&Scalar::hbar()));
        }
        Ok(out)
    }
}
