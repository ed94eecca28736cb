//! Braidings, relation generation from matrix equations, and table
//! transformations (basis changes, shifts, parameter limits).

mod basis;
mod generate;

use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub use basis::{change_basis_compact, change_basis_compact_with, limit_hbar0, limit_q1, shift_k_to_l, shift_to_re, AffineChange};
pub use generate::{generate_relations, generate_weyl_m, orient_relations, RelationKind};

/// `R` on `V ⊗ V` as an `n² × n²` matrix, rows and columns indexed by `(i, j) ↦ i·n + j`.
#[derive(Clone, Debug)]
pub struct BraidMatrix {
    dim: usize,
    entries: Matrix<Scalar>,
    q: Scalar,
    checks: OnceLock<(bool, bool)>,
}

impl PartialEq for BraidMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.entries == o.entries && self.q == o.q
    }
}

#[derive(Serialize, Deserialize)]
struct BraidJson {
    dim: usize,
    entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<String>,
}

impl BraidMatrix {
    /// Hecke parameter defaults to the formal `q`.
    pub fn new(dim: usize, entries: Matrix<Scalar>) -> Result<Self> {
        let n2 = dim * dim;
        if entries.rows() != n2 || entries.cols() != n2 {
            return Err(Error::Braiding(format!("expected a {n2}x{n2} matrix")));
        }
        if entries.det().is_zero() {
            return Err(Error::Braiding("matrix is not invertible".into()));
        }
        Ok(BraidMatrix { dim, entries, q: Scalar::q(), checks: OnceLock::new() })
    }

    pub fn with_hecke_parameter(mut self, q: Scalar) -> Self {
        self.q = q;
        self.checks = OnceLock::new();
        self
    }

    /// The standard `U_q(sl(2))` braiding.
    pub fn standard() -> Self {
        BraidMatrix::from_json(include_str!("../../data/standard_r.json")).expect("bundled matrix")
    }

    /// The flip `x ⊗ y ↦ y ⊗ x`, with Hecke parameter 1.
    pub fn flip(dim: usize) -> Self {
        let n2 = dim * dim;
        let p = Matrix::from_fn(n2, n2, |r, c| {
            let (i, j, k, l) = (r / dim, r % dim, c / dim, c % dim);
            if i == l && j == k {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        BraidMatrix::new(dim, p).expect("flip is invertible").with_hecke_parameter(Scalar::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &Matrix<Scalar> {
        &self.entries
    }

    pub fn hecke_parameter(&self) -> &Scalar {
        &self.q
    }

    pub fn inverse(&self) -> Matrix<Scalar> {
        self.entries.inverse().expect("checked invertible")
    }

    fn checks(&self) -> (bool, bool) {
        *self.checks.get_or_init(|| (self.qybe(), self.hecke()))
    }

    fn qybe(&self) -> bool {
        let id = Matrix::identity(self.dim);
        let r12 = self.entries.kron(&id);
        let r23 = id.kron(&self.entries);
        r12.mul(&r23).mul(&r12) == r23.mul(&r12).mul(&r23)
    }

    fn hecke(&self) -> bool {
        let n2 = self.dim * self.dim;
        let id = Matrix::identity(n2);
        let Ok(qinv) = Scalar::one().checked_div(&self.q) else {
            return false;
        };
        self.entries.sub(&id.scale(&self.q)).mul(&self.entries.add(&id.scale(&qinv))).is_zero()
    }

    /// `R₁₂R₂₃R₁₂ = R₂₃R₁₂R₂₃`. Cached.
    pub fn check_qybe(&self) -> bool {
        self.checks().0
    }

    /// `(R − q)(R + q⁻¹) = 0`. Cached.
    pub fn check_hecke(&self) -> bool {
        self.checks().1
    }

    pub fn to_json(&self) -> String {
        let entries = self.entries.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        let q = (self.q != Scalar::q()).then(|| self.q.to_string());
        let mut s = serde_json::to_string_pretty(&BraidJson { dim: self.dim, entries, q }).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let bj: BraidJson = serde_json::from_str(src).map_err(|e| Error::Braiding(e.to_string()))?;
        let rows = bj
            .entries
            .iter()
            .map(|r| r.iter().map(|c| c.parse::<Scalar>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Braiding("entries must form a square matrix".into()));
        }
        let m = BraidMatrix::new(bj.dim, Matrix::from_rows(rows))?;
        Ok(match bj.q {
            Some(q) => m.with_hecke_parameter(q.parse()?),
            None => m,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::s;

    #[test]
    fn standard_is_hecke() {
        let r = BraidMatrix::standard();
        assert!(r.check_qybe());
        assert!(r.check_hecke());
    }

    #[test]
    fn flip_and_identity() {
        let p = BraidMatrix::flip(2);
        assert!(p.check_qybe() && p.check_hecke());
        assert!(!p.clone().with_hecke_parameter(Scalar::q()).check_hecke());
        let id = BraidMatrix::new(2, Matrix::identity(4)).unwrap();
        assert!(!id.check_hecke());
    }

    #[test]
    fn perturbed_entry_breaks_qybe() {
        let r = BraidMatrix::standard();
        let mut m = r.entries().clone();
        m[(1, 1)] = s("q + 1");
        assert!(!BraidMatrix::new(2, m).unwrap().check_qybe());
    }

    #[test]
    fn json_round_trip() {
        let r = BraidMatrix::standard();
        let j = r.to_json();
        assert_eq!(BraidMatrix::from_json(&j).unwrap(), r);
        assert_eq!(j, include_str!("../../data/standard_r.json"));
    }
}
