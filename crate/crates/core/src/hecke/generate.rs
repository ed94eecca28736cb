use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::BraidMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pbw::{check_orientation, find_weights, Alphabet, Generator, Letter, Rule, Sort, Word};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::{Element, RelationTable};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RelationKind {
    /// `R L₁ R L₁ = L₁ R L₁ R`.
    Re,
    /// `R K₁ R K₁ − K₁ R K₁ R = ℏ(R K₁ − K₁ R)`.
    Mrea,
    /// Two RE algebras with `R L₁ R M₁ = M₁ R L₁ R⁻¹`.
    DoubleLm,
    /// RE and modified RE algebras with `R K₁ R M₁ = M₁ R K₁ R⁻¹ + ℏ R M₁`.
    DoubleKm,
    /// Braided Weyl algebra over the RE algebra.
    WeylM,
    /// Braided Weyl algebra over the modified RE algebra.
    WeylN,
}

impl RelationKind {
    pub const ALL: [RelationKind; 6] = [
        RelationKind::Re,
        RelationKind::Mrea,
        RelationKind::DoubleLm,
        RelationKind::DoubleKm,
        RelationKind::WeylM,
        RelationKind::WeylN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Re => "RE",
            RelationKind::Mrea => "mREA",
            RelationKind::DoubleLm => "double-LM",
            RelationKind::DoubleKm => "double-KM",
            RelationKind::WeylM => "weyl-M",
            RelationKind::WeylN => "weyl-N",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Table(format!("unknown relation kind '{s}'")))
    }
}

type EMat = Matrix<Element>;

/// Entry names in row-major order: `a b c d` (with a prefix) for n = 2,
/// `{prefix}{i}{j}` otherwise.
fn entry_names(n: usize, prefix: &str) -> Vec<String> {
    if n == 2 {
        ["a", "b", "c", "d"].iter().map(|s| format!("{prefix}{s}")).collect()
    } else {
        let p = if prefix.is_empty() { "m" } else { prefix };
        (0..n * n).map(|k| format!("{p}{}{}", k / n + 1, k % n + 1)).collect()
    }
}

/// Matrix whose `(i, j)` entry is letter `first + i·n + j`, transposed when asked.
fn letters(n: usize, first: usize, transpose: bool) -> EMat {
    Matrix::from_fn(n, n, |i, j| {
        let k = if transpose { j * n + i } else { i * n + j };
        Element::letter((first + k) as Letter)
    })
}

fn lift(m: &Matrix<Scalar>) -> EMat {
    m.map(|c| Element::scalar(c.clone()))
}

struct Setup {
    n: usize,
    r: EMat,
    rinv: EMat,
    hbar: EMat,
}

impl Setup {
    fn new(braid: &BraidMatrix) -> Self {
        let n = braid.dim();
        let id = Matrix::<Scalar>::identity(n * n);
        Setup { n, r: lift(braid.entries()), rinv: lift(&braid.inverse()), hbar: lift(&id.scale(&Scalar::hbar())) }
    }

    /// `X₁ = X ⊗ I`.
    fn one(&self, x: &EMat) -> EMat {
        x.kron(&Matrix::identity(self.n))
    }

    fn re(&self, l1: &EMat) -> EMat {
        let r = &self.r;
        r.mul(l1).mul(r).mul(l1).sub(&l1.mul(r).mul(l1).mul(r))
    }

    fn mrea(&self, k1: &EMat) -> EMat {
        let r = &self.r;
        self.re(k1).sub(&self.hbar.mul(&r.mul(k1).sub(&k1.mul(r))))
    }

    fn dd(&self, d1: &EMat) -> EMat {
        let ri = &self.rinv;
        ri.mul(d1).mul(ri).mul(d1).sub(&d1.mul(ri).mul(d1).mul(ri))
    }
}

fn entries(m: &EMat, out: &mut Vec<Element>) {
    for row in m.to_rows() {
        out.extend(row.into_iter().filter(|e| !e.is_zero()));
    }
}

fn alphabet(coords: &[String], derivs: &[String]) -> Result<Alphabet> {
    let mut gens: Vec<Generator> = coords.iter().map(|n| Generator { name: n.clone(), sort: Sort::Coordinate }).collect();
    gens.extend(derivs.iter().map(|n| Generator { name: n.clone(), sort: Sort::Derivative }));
    Alphabet::new(gens)
}

/// Presentation of the algebra of the given kind. Requires `R` to pass both
/// the braid and the Hecke checks.
pub fn generate_relations(braid: &BraidMatrix, kind: RelationKind) -> Result<RelationTable> {
    if kind == RelationKind::WeylM {
        return generate_weyl_m(braid, &Scalar::one());
    }
    require_hecke(braid)?;
    let s = Setup::new(braid);
    let n = s.n;
    let nn = n * n;
    let coords = entry_names(n, "");
    let mut rels = Vec::new();
    let mut counit = BTreeMap::new();
    let alpha = match kind {
        RelationKind::Re => {
            entries(&s.re(&s.one(&letters(n, 0, false))), &mut rels);
            alphabet(&coords, &[])?
        }
        RelationKind::Mrea => {
            entries(&s.mrea(&s.one(&letters(n, 0, false))), &mut rels);
            alphabet(&coords, &[])?
        }
        RelationKind::DoubleLm => {
            let m1 = s.one(&letters(n, 0, false));
            let l1 = s.one(&letters(n, nn, false));
            entries(&s.re(&m1), &mut rels);
            entries(&s.re(&l1), &mut rels);
            let r = &s.r;
            entries(&r.mul(&l1).mul(r).mul(&m1).sub(&m1.mul(r).mul(&l1).mul(&s.rinv)), &mut rels);
            for i in 0..n {
                counit.insert((nn + i * n + i) as Letter, Scalar::one());
            }
            alphabet(&coords, &entry_names(n, "l"))?
        }
        RelationKind::DoubleKm => {
            let m1 = s.one(&letters(n, 0, false));
            let k1 = s.one(&letters(n, nn, false));
            entries(&s.re(&m1), &mut rels);
            entries(&s.mrea(&k1), &mut rels);
            let r = &s.r;
            let cross = r.mul(&k1).mul(r).mul(&m1).sub(&m1.mul(r).mul(&k1).mul(&s.rinv));
            entries(&cross.sub(&s.hbar.mul(r).mul(&m1)), &mut rels);
            alphabet(&coords, &entry_names(n, "k"))?
        }
        RelationKind::WeylN => {
            let n1 = s.one(&letters(n, 0, false));
            let d1 = s.one(&letters(n, nn, true));
            entries(&s.mrea(&n1), &mut rels);
            entries(&s.dd(&d1), &mut rels);
            let r = &s.r;
            let cross = d1.mul(r).mul(&n1).mul(r).sub(&r.mul(&n1).mul(&s.rinv).mul(&d1));
            entries(&cross.sub(r).sub(&s.hbar.mul(&d1).mul(r)), &mut rels);
            alphabet(&coords, &entry_names(n, "d"))?
        }
        RelationKind::WeylM => unreachable!(),
    };
    orient_relations(alpha, rels, counit)
}

/// Braided Weyl algebra over the RE algebra with inhomogeneous term
/// `factor·R`: 1 gives the standard algebra, 0 its homogeneous version, and
/// `−(q − q⁻¹)` the normalization matching the shift to the modified algebra.
pub fn generate_weyl_m(braid: &BraidMatrix, factor: &Scalar) -> Result<RelationTable> {
    require_hecke(braid)?;
    let s = Setup::new(braid);
    let n = s.n;
    let m1 = s.one(&letters(n, 0, false));
    let d1 = s.one(&letters(n, n * n, true));
    let mut rels = Vec::new();
    entries(&s.re(&m1), &mut rels);
    entries(&s.dd(&d1), &mut rels);
    let r = &s.r;
    let cross = d1.mul(r).mul(&m1).mul(r).sub(&r.mul(&m1).mul(&s.rinv).mul(&d1));
    entries(&cross.sub(&r.map(|e| e.scale(factor))), &mut rels);
    orient_relations(alphabet(&entry_names(n, ""), &entry_names(n, "d"))?, rels, BTreeMap::new())
}

fn require_hecke(braid: &BraidMatrix) -> Result<()> {
    if !braid.check_qybe() {
        return Err(Error::Braiding("R does not satisfy the braid relation".into()));
    }
    if !braid.check_hecke() {
        return Err(Error::Braiding(format!("R does not satisfy the Hecke condition at q = {}", braid.hecke_parameter())));
    }
    Ok(())
}

/// Solves a list of quadratic-linear relations for the inversion pairs and
/// returns the resulting table, with letter weights chosen so that every rule
/// decreases the termination order.
pub fn orient_relations(alpha: Alphabet, relations: Vec<Element>, counit: BTreeMap<Letter, Scalar>) -> Result<RelationTable> {
    let mut cols: Vec<Word> = relations.iter().flat_map(|e| e.terms().map(|(w, _)| w.clone())).collect();
    cols.sort_by(|a, b| a.is_sorted().cmp(&b.is_sorted()).then(a.cmp(b)));
    cols.dedup();
    let index: BTreeMap<&Word, usize> = cols.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut m = Matrix::zeros(relations.len(), cols.len());
    for (i, e) in relations.iter().enumerate() {
        for (w, c) in e.terms() {
            m[(i, index[w])] = c.clone();
        }
    }
    let pivots = m.rref();
    let mut rules = Vec::new();
    for (row, &pc) in pivots.iter().enumerate() {
        let lead = &cols[pc];
        if lead.len() != 2 || lead.is_sorted() {
            let rel: Vec<String> = (0..cols.len())
                .filter(|&c| !m[(row, c)].is_zero())
                .map(|c| format!("({})*{}", m[(row, c)], alpha.render_word(&cols[c])))
                .collect();
            return Err(Error::Table(format!("relations constrain normal words: {} = 0", rel.join(" + "))));
        }
        let mut rhs = Element::zero();
        for (c, w) in cols.iter().enumerate() {
            if c != pc && !m[(row, c)].is_zero() {
                rhs.add_term(w.clone(), m[(row, c)].neg_ref());
            }
        }
        let l = lead.letters();
        rules.push(Rule { lhs: (l[0], l[1]), rhs });
    }
    let table = RelationTable::new(alpha, rules, counit)?;
    let weights = find_weights(&table)?;
    let table = table.with_weights(weights)?;
    check_orientation(&table)?;
    Ok(table)
}
