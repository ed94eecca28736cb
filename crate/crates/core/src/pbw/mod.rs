//! Words over an ordered alphabet, their linear combinations, and
//! table-driven normal ordering.
//!
//! A word is in normal form when its letters are sorted by rank. Relation
//! tables hold one rule per inversion pair `(u, v)`, `u > v`, rewriting `u·v`
//! into a combination of sorted words of length at most two.

mod element;
mod order;
mod rewrite;
mod table;

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use element::Element;
pub use order::{check_orientation, find_weights, rule_decreases};
pub use rewrite::{check_local_confluence, OverlapReport, Rewriter, DEFAULT_BUDGET};
pub use table::{RelationTable, Rule};

pub type Letter = u8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Coordinate,
    Derivative,
    Form,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub sort: Sort,
}

/// Generators in rank order. Coordinates precede derivatives, which precede forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    gens: Vec<Generator>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        if gens.len() > Letter::MAX as usize {
            return Err(Error::Table("alphabet too large".into()));
        }
        let mut index = HashMap::new();
        for (k, g) in gens.iter().enumerate() {
            if crate::expr::RESERVED.contains(&g.name.as_str()) {
                return Err(Error::Table(format!("generator name '{}' is reserved", g.name)));
            }
            if index.insert(g.name.clone(), k as Letter).is_some() {
                return Err(Error::Table(format!("duplicate generator '{}'", g.name)));
            }
        }
        if gens.windows(2).any(|w| w[0].sort > w[1].sort) {
            return Err(Error::Table("sorts must appear as coordinates, derivatives, forms".into()));
        }
        Ok(Alphabet { gens, index })
    }

    /// Shorthand: names of coordinates then names of derivatives.
    pub fn from_names(coords: &[&str], derivs: &[&str]) -> Result<Self> {
        let mut gens: Vec<Generator> =
            coords.iter().map(|n| Generator { name: n.to_string(), sort: Sort::Coordinate }).collect();
        gens.extend(derivs.iter().map(|n| Generator { name: n.to_string(), sort: Sort::Derivative }));
        Alphabet::new(gens)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.gens[l as usize].name
    }

    pub fn sort(&self, l: Letter) -> Sort {
        self.gens[l as usize].sort
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.gens.len() as Letter
    }

    pub fn names(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn letters_of(&self, sort: Sort) -> Vec<Letter> {
        self.letters().filter(|&l| self.sort(l) == sort).collect()
    }

    /// `x^2*y` style rendering; the empty word prints as `1`.
    pub fn render_word(&self, w: &Word) -> String {
        render_word_with(w, &|l| self.name(l).to_string())
    }
}

fn render_word_with(w: &Word, name: &dyn Fn(Letter) -> String) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut k = 0;
    while k < letters.len() {
        let mut j = k;
        while j < letters.len() && letters[j] == letters[k] {
            j += 1;
        }
        let n = name(letters[k]);
        parts.push(if j - k == 1 { n } else { format!("{n}^{}", j - k) });
        k = j;
    }
    parts.join("*")
}

/// A finite sequence of letters. Ordered longest first, then lexicographically
/// by rank, which is also the printing order of element terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_bad_order() {
        let gens = vec![
            Generator { name: "dx".into(), sort: Sort::Derivative },
            Generator { name: "x".into(), sort: Sort::Coordinate },
        ];
        assert!(Alphabet::new(gens).is_err());
        assert!(Alphabet::from_names(&["x", "x"], &[]).is_err());
        assert!(Alphabet::from_names(&["q"], &[]).is_err());
    }

    #[test]
    fn word_rendering_groups_powers() {
        let a = Alphabet::from_names(&["x", "y"], &["dx"]).unwrap();
        assert_eq!(a.render_word(&Word::new(vec![0, 0, 0, 1, 2])), "x^3*y*dx");
        assert_eq!(a.render_word(&Word::empty()), "1");
    }

    #[test]
    fn word_order_is_longest_first() {
        assert!(Word::new(vec![0, 2]) < Word::new(vec![1]));
        assert!(Word::new(vec![0, 1]) < Word::new(vec![0, 2]));
    }
}
