//! Derivatives acting on the coordinate algebra: the engine route through
//! normal ordering and counit, closed forms, the Leibniz coproduct,
//! eigenfunctions and differential forms.

mod closed;
mod eigen;
mod forms;
mod leibniz;

use std::fmt;
use std::str::FromStr;

pub use closed::{closed_form_univariate, uni_power, UniPoly};
pub use eigen::{AlphaPoly, EigenReport};
pub use forms::FormElement;

use crate::error::{Error, Result};
use crate::pbw::{Letter, Sort};
use crate::scalar::Scalar;
use crate::{bundled, Element, RelationTable, Rewriter};

/// A presented Weyl algebra with its normal-ordering engine.
///
/// On tables carrying the shifted time derivative `dtt`, the unshifted `dt`
/// is accepted in parsed input as `dtt - 2/h`.
pub struct WeylAlgebra {
    rw: Rewriter,
    aliases: Vec<(&'static str, Element)>,
}

/// Letters of the compact alphabet `t x y z dtt dx dy dz`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Compact {
    pub coords: [Letter; 4],
    pub derivs: [Letter; 4],
}

impl WeylAlgebra {
    pub fn new(table: RelationTable) -> Self {
        let alpha = table.alphabet();
        let mut aliases = Vec::new();
        if let (Ok(dtt), Err(_)) = (alpha.letter("dtt"), alpha.letter("dt")) {
            let two_over_h = Scalar::from(2).checked_div(&Scalar::hbar()).expect("h is invertible");
            aliases.push(("dt", Element::letter(dtt).sub(&Element::scalar(two_over_h))));
        }
        WeylAlgebra { rw: Rewriter::new(table), aliases }
    }

    /// One of the tables shipped with the crate, by id.
    pub fn bundled(id: &str) -> Result<Self> {
        Ok(WeylAlgebra::new(bundled::table(id)?))
    }

    /// `W(U(u(2)_h))` in the compact generators.
    pub fn u2h() -> Self {
        WeylAlgebra::bundled("u2h").expect("bundled table")
    }

    /// The `q = 1` braided Weyl algebra over `U(gl(2)_h)`.
    pub fn gl2h() -> Self {
        WeylAlgebra::bundled("gl2h").expect("bundled table")
    }

    pub fn rewriter(&self) -> &Rewriter {
        &self.rw
    }

    pub fn table(&self) -> &RelationTable {
        self.rw.table()
    }

    pub fn alphabet(&self) -> &crate::pbw::Alphabet {
        self.rw.table().alphabet()
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.alphabet().letter(name)
    }

    /// A generator, or an alias such as `dt`, as an element.
    pub fn generator(&self, name: &str) -> Result<Element> {
        if let Some((_, e)) = self.aliases.iter().find(|(n, _)| *n == name) {
            return Ok(e.clone());
        }
        Ok(Element::letter(self.letter(name)?))
    }

    /// Parses without reducing.
    pub fn parse(&self, src: &str) -> Result<Element> {
        Element::parse_with(src, self.alphabet(), &self.aliases)
    }

    pub fn render(&self, e: &Element) -> String {
        e.render(self.alphabet())
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        self.rw.normal_form(e)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.rw.multiply(a, b)
    }

    /// Whether `e` involves coordinates only.
    pub fn is_function(&self, e: &Element) -> bool {
        let alpha = self.alphabet();
        e.terms().all(|(w, _)| w.letters().iter().all(|&l| alpha.sort(l) == Sort::Coordinate))
    }

    /// `w(f)` for an operator `w` and a coordinate polynomial `f`.
    pub fn apply_operator(&self, w: &Element, f: &Element) -> Result<Element> {
        if !self.is_function(f) {
            return Err(Error::Expression("the operand of an operator must be built from coordinates".into()));
        }
        self.rw.apply(w, f)
    }

    pub(crate) fn compact(&self) -> Result<Compact> {
        let names = self.alphabet().names();
        let want = ["t", "x", "y", "z", "dtt", "dx", "dy", "dz"];
        let l = |n: &str| self.letter(n);
        if names.len() != want.len() || want.iter().any(|n| !names.contains(n)) {
            return Err(Error::WrongAlphabet(format!("expected {}, found {}", want.join(" "), names.join(" "))));
        }
        Ok(Compact { coords: [l("t")?, l("x")?, l("y")?, l("z")?], derivs: [l("dtt")?, l("dx")?, l("dy")?, l("dz")?] })
    }

    /// One of the standard second-order (or first-order) operators, normal-ordered.
    pub fn build_operator(&self, kind: OperatorKind) -> Result<Element> {
        let c = self.compact()?;
        let [dtt, dx, dy, dz] = c.derivs.map(Element::letter);
        let [_, x, y, z] = c.coords.map(Element::letter);
        let sq = |e: &Element| self.multiply(e, e);
        let laplacian = || -> Result<Element> { Ok(sq(&dx)?.add(&sq(&dy)?).add(&sq(&dz)?)) };
        let q = || self.normal_form(&x.mul_free(&dx).add(&y.mul_free(&dy)).add(&z.mul_free(&dz)));
        match kind {
            OperatorKind::Laplacian | OperatorKind::Delta1 => laplacian(),
            OperatorKind::Dalembertian => Ok(sq(&self.generator("dt")?)?.sub(&laplacian()?)),
            OperatorKind::Q => q(),
            OperatorKind::Delta0 => sq(&dtt),
            OperatorKind::Delta2 => self.multiply(&q()?, &dtt),
            OperatorKind::Delta3 => sq(&q()?),
        }
    }
}

/// Named operators on `W(U(u(2)_h))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Laplacian,
    Dalembertian,
    Q,
    Delta0,
    Delta1,
    Delta2,
    Delta3,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 7] = [
        OperatorKind::Laplacian,
        OperatorKind::Dalembertian,
        OperatorKind::Q,
        OperatorKind::Delta0,
        OperatorKind::Delta1,
        OperatorKind::Delta2,
        OperatorKind::Delta3,
    ];

    /// `Δ_i` for `i` in `0..4`.
    pub fn delta(i: usize) -> OperatorKind {
        [OperatorKind::Delta0, OperatorKind::Delta1, OperatorKind::Delta2, OperatorKind::Delta3][i]
    }

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Laplacian => "laplacian",
            OperatorKind::Dalembertian => "dalembertian",
            OperatorKind::Q => "Q",
            OperatorKind::Delta0 => "Delta0",
            OperatorKind::Delta1 => "Delta1",
            OperatorKind::Delta2 => "Delta2",
            OperatorKind::Delta3 => "Delta3",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Expression(format!("unknown operator '{s}'")))
    }
}
