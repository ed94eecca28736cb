use std::collections::BTreeMap;

use num_traits::Zero;

use super::generate::orient_relations;
use crate::error::{Error, Result};
use crate::pbw::{Alphabet, Generator, Letter, Sort};
use crate::ring::Ring;
use crate::scalar::{Scalar, Var};
use crate::{Element, RelationTable};

/// An invertible affine change of generators.
#[derive(Clone, Debug)]
pub struct AffineChange {
    pub target: Alphabet,
    /// Each source letter written over `target`.
    pub images: Vec<Element>,
    /// Each target derivative letter written over the source alphabet; used
    /// to carry the counit across.
    pub preimages: BTreeMap<Letter, Element>,
}

impl AffineChange {
    /// Rewrites every relation of `table` in the new generators and solves
    /// again for the inversion pairs.
    pub fn apply(&self, table: &RelationTable) -> Result<RelationTable> {
        if self.images.len() != table.alphabet().len() {
            return Err(Error::WrongAlphabet("one image per source generator required".into()));
        }
        let rels: Vec<Element> = table
            .rules()
            .filter_map(|r| table.relation(r.lhs.0, r.lhs.1))
            .map(|rel| rel.substitute(&self.images))
            .filter(|e| !e.is_zero())
            .collect();
        let mut counit = BTreeMap::new();
        for (&l, pre) in &self.preimages {
            let mut v = Scalar::zero();
            for (w, c) in pre.terms() {
                let mut t = c.clone();
                for &m in w.letters() {
                    t = t.mul_ref(&table.counit(m));
                }
                v = v.add_ref(&t);
            }
            counit.insert(l, v);
        }
        orient_relations(self.target.clone(), rels, counit)
    }
}

fn parse_all(srcs: &[&str], alpha: &Alphabet) -> Vec<Element> {
    srcs.iter().map(|s| Element::parse(s, alpha).expect("built-in substitution")).collect()
}

const GL2: [&str; 4] = ["a", "b", "c", "d"];
const GL2_D: [&str; 4] = ["da", "db", "dc", "dd"];
const U2: [&str; 4] = ["t", "x", "y", "z"];

/// Passes from `a, b, c, d` to `t, x, y, z` with `N = [[t − iz, −ix − y], [−ix + y, t + iz]]`,
/// and on derivatives to the shifted `dtt = ∂_t + 2/ℏ`, `dx`, `dy`, `dz`.
pub fn change_basis_compact(table: &RelationTable) -> Result<RelationTable> {
    change_basis_compact_with(table, true)
}

/// As [`change_basis_compact`]; with `shifted = false` the time derivative is the plain `dt`.
pub fn change_basis_compact_with(table: &RelationTable, shifted: bool) -> Result<RelationTable> {
    let names = table.alphabet().names();
    let compact_d = [if shifted { "dtt" } else { "dt" }, "dx", "dy", "dz"];
    let compact = names.len() == 8 && names[..4] == U2 && ["dtt", "dt"].contains(&names[4]) && names[5..] == compact_d[1..];
    if names == U2 || compact {
        return Ok(table.clone());
    }
    let with_derivs = if names == GL2 {
        false
    } else if names.len() == 8 && names[..4] == GL2 && names[4..] == GL2_D {
        true
    } else {
        return Err(Error::WrongAlphabet(format!("expected a b c d [da db dc dd], found {}", names.join(" "))));
    };
    let target = if with_derivs {
        Alphabet::from_names(&U2, &compact_d)?
    } else {
        Alphabet::from_names(&U2, &[])?
    };
    let mut images = parse_all(&["t - i*z", "-i*x - y", "-i*x + y", "t + i*z"], &target);
    let mut preimages = BTreeMap::new();
    if with_derivs {
        let d0 = compact_d[0];
        let shift = if shifted { " - 1/h" } else { "" };
        images.extend(parse_all(
            &[
                &format!("({d0} + i*dz)/2{shift}"),
                "(i*dx - dy)/2",
                "(i*dx + dy)/2",
                &format!("({d0} - i*dz)/2{shift}"),
            ],
            &target,
        ));
        let source = table.alphabet();
        let pre = parse_all(
            &[if shifted { "da + dd + 2/h" } else { "da + dd" }, "-i*(db + dc)", "dc - db", "-i*(da - dd)"],
            source,
        );
        for (k, p) in pre.into_iter().enumerate() {
            preimages.insert((4 + k) as Letter, p);
        }
    }
    AffineChange { target, images, preimages }.apply(table)
}

/// Inverts `X = ℏ·I − (q − q⁻¹)·Y` on the letters of `sort`, where those
/// letters are the entries of a square matrix in row-major order.
fn shift(table: &RelationTable, sort: Sort, rename: impl Fn(&str) -> String) -> Result<RelationTable> {
    let alpha = table.alphabet();
    let block = alpha.letters_of(sort);
    let n = (1..=block.len()).find(|n| n * n >= block.len()).unwrap_or(0);
    if block.is_empty() || n * n != block.len() {
        return Err(Error::WrongAlphabet("shift needs the entries of a square matrix".into()));
    }
    let gens: Vec<Generator> = alpha
        .gens()
        .iter()
        .map(|g| Generator { name: if g.sort == sort { rename(&g.name) } else { g.name.clone() }, sort: g.sort })
        .collect();
    let target = Alphabet::new(gens)?;
    let qq = Scalar::q().sub_ref(&Scalar::var_pow(Var::Q, -1));
    let inv = Scalar::from(1).checked_div(&qq)?;
    let mut images = Vec::new();
    let mut preimages = BTreeMap::new();
    for l in alpha.letters() {
        let me = Element::letter(l);
        match block.iter().position(|&b| b == l) {
            Some(k) => {
                let diag = if k / n == k % n { Element::scalar(Scalar::hbar()) } else { Element::zero() };
                images.push(diag.sub(&me).scale(&inv));
                if sort == Sort::Derivative {
                    let d = if k / n == k % n { Element::scalar(Scalar::hbar()) } else { Element::zero() };
                    preimages.insert(l, d.sub(&me.scale(&qq)));
                }
            }
            None => {
                images.push(me.clone());
                if alpha.sort(l) == Sort::Derivative {
                    preimages.insert(l, me);
                }
            }
        }
    }
    AffineChange { target, images, preimages }.apply(table)
}

/// From the modified RE generators `N` to `M = ℏ·I − (q − q⁻¹)·N` (names kept).
pub fn shift_to_re(table: &RelationTable) -> Result<RelationTable> {
    shift(table, Sort::Coordinate, str::to_string)
}

/// From `K` to `L = ℏ·I − (q − q⁻¹)·K` on the derivative letters, renaming `k…` to `l…`.
pub fn shift_k_to_l(table: &RelationTable) -> Result<RelationTable> {
    shift(table, Sort::Derivative, |s| match s.strip_prefix('k') {
        Some(rest) => format!("l{rest}"),
        None => s.to_string(),
    })
}

/// Coefficient-wise `q = 1`.
pub fn limit_q1(table: &RelationTable) -> Result<RelationTable> {
    table.try_map_coeffs(|c| Ok(c.substitute(Var::Q, &Scalar::from(1))?))
}

/// Coefficient-wise `ℏ = 0`.
pub fn limit_hbar0(table: &RelationTable) -> Result<RelationTable> {
    table.try_map_coeffs(|c| Ok(c.substitute(Var::Hbar, &Scalar::zero())?))
}
