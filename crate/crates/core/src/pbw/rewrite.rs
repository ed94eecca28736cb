use std::cell::Cell;
use std::collections::{HashMap, HashSet};
use std::sync::RwLock;

use rayon::prelude::*;

use super::{Element, Letter, RelationTable, Sort, Word};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{Field, Ring};

/// Rule applications allowed per call before giving up.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Normal ordering against one table. Reductions of `S·ℓ` with `S` sorted are
/// memoized, so repeated calls get cheaper; the cache is shared across threads.
pub struct Rewriter<C> {
    table: RelationTable<C>,
    budget: usize,
    cache: RwLock<HashMap<(Word, Letter), Element<C>>>,
}

struct Ctx {
    steps: Cell<usize>,
    budget: usize,
    open: std::cell::RefCell<HashSet<(Word, Letter)>>,
}

impl<C: Ring> Rewriter<C> {
    pub fn new(table: RelationTable<C>) -> Self {
        Rewriter { table, budget: DEFAULT_BUDGET, cache: RwLock::new(HashMap::new()) }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn table(&self) -> &RelationTable<C> {
        &self.table
    }

    pub fn normal_form(&self, e: &Element<C>) -> Result<Element<C>> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.normal_word(w)?, c);
        }
        Ok(out)
    }

    pub fn normal_word(&self, w: &Word) -> Result<Element<C>> {
        let ctx = Ctx { steps: Cell::new(0), budget: self.budget, open: Default::default() };
        self.reduce(Element::one(), w.letters(), &ctx)
            .map_err(|e| match e {
                Error::RewriteBudget(_) => Error::RewriteBudget(self.table.alphabet().render_word(w)),
                e => e,
            })
    }

    /// Product in the presented algebra.
    pub fn multiply(&self, a: &Element<C>, b: &Element<C>) -> Result<Element<C>> {
        self.normal_form(&a.mul_free(b))
    }

    fn reduce(&self, start: Element<C>, letters: &[Letter], ctx: &Ctx) -> Result<Element<C>> {
        let mut acc = start;
        for &l in letters {
            let mut next = Element::zero();
            for (s, c) in acc.terms() {
                next.add_scaled(&self.insert(s, l, ctx)?, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of `s·l` for a sorted word `s`.
    fn insert(&self, s: &Word, l: Letter, ctx: &Ctx) -> Result<Element<C>> {
        let letters = s.letters();
        match letters.last() {
            Some(&u) if u > l => {}
            _ => {
                let mut w = s.clone();
                w.push(l);
                return Ok(Element::word(w));
            }
        }
        let key = (s.clone(), l);
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let steps = ctx.steps.get() + 1;
        ctx.steps.set(steps);
        if steps > ctx.budget || !ctx.open.borrow_mut().insert(key.clone()) {
            return Err(Error::RewriteBudget(String::new()));
        }
        let u = letters[letters.len() - 1];
        let prefix = Word::new(letters[..letters.len() - 1].to_vec());
        let rhs = self.table.rule(u, l).ok_or_else(|| {
            Error::Internal(format!("no rule for {}", self.table.rule_name(u, l)))
        })?;
        let mut out = Element::zero();
        for (w, c) in rhs.terms() {
            let part = self.reduce(Element::word(prefix.clone()), w.letters(), ctx)?;
            out.add_scaled(&part, c);
        }
        ctx.open.borrow_mut().remove(&key);
        self.cache.write().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `w(f)`: normal-orders `w·f` and evaluates the trailing derivatives on
    /// the unit through the table's counit.
    pub fn apply(&self, w: &Element<C>, f: &Element<C>) -> Result<Element<C>> {
        let alpha = self.table.alphabet();
        let nf = self.multiply(w, f)?;
        let mut out = Element::zero();
        for (word, c) in nf.terms() {
            let split = word.letters().iter().position(|&l| alpha.sort(l) != Sort::Coordinate);
            let Some(k) = split else {
                out.add_term(word.clone(), c.clone());
                continue;
            };
            let mut value = c.clone();
            for &l in &word.letters()[k..] {
                if alpha.sort(l) != Sort::Derivative {
                    return Err(Error::WrongAlphabet(format!("'{}' cannot act on the unit", alpha.name(l))));
                }
                value = value.mul_ref(&self.table.counit(l));
                if value.is_zero() {
                    break;
                }
            }
            out.add_term(Word::new(word.letters()[..k].to_vec()), value);
        }
        Ok(out)
    }
}

impl<C: Ring + Send + Sync> Rewriter<C> {
    /// As [`Rewriter::normal_form`], reducing terms in parallel. The result
    /// does not depend on scheduling.
    pub fn normal_form_par(&self, e: &Element<C>) -> Result<Element<C>> {
        let terms: Vec<(&Word, &C)> = e.terms().collect();
        let parts = terms
            .par_iter()
            .map(|(w, c)| self.normal_word(w).map(|nf| nf.scale(c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.iter().fold(Element::zero(), |acc, p| acc.add(p)))
    }
}

impl<C: Field> Rewriter<C> {
    /// Dimension of the span of the top-degree parts of normal forms of all
    /// length-`d` words over `letters`.
    pub fn graded_dimension(&self, letters: &[Letter], d: usize) -> Result<usize> {
        let mut rows = Vec::new();
        let mut cols: HashMap<Word, usize> = HashMap::new();
        for w in words_of_length(letters, d) {
            let nf = self.normal_word(&w)?;
            let top: Vec<(usize, C)> = nf
                .terms()
                .filter(|(v, _)| v.len() == d)
                .map(|(v, c)| {
                    let n = cols.len();
                    (*cols.entry(v.clone()).or_insert(n), c.clone())
                })
                .collect();
            rows.push(top);
        }
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, row) in rows.into_iter().enumerate() {
            for (j, c) in row {
                m[(i, j)] = c;
            }
        }
        Ok(m.rank())
    }
}

fn words_of_length(letters: &[Letter], d: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}

/// A word whose reductions disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapReport<C> {
    pub word: Word,
    /// Index of the rewritten inversion.
    pub position: usize,
    /// Normal form reached after rewriting at `position` first.
    pub via_position: Element<C>,
    /// Normal form reached by left-to-right insertion.
    pub normal_form: Element<C>,
    /// Set when a reduction failed outright.
    pub error: Option<String>,
}

impl<C: Ring> OverlapReport<C> {
    pub fn render(&self, table: &RelationTable<C>) -> String {
        let alpha = table.alphabet();
        let w = alpha.render_word(&self.word);
        match &self.error {
            Some(e) => format!("{w}: {e}"),
            None => format!(
                "{w} at position {}: {} vs {}",
                self.position,
                self.via_position.render(alpha),
                self.normal_form.render(alpha)
            ),
        }
    }
}

/// Reduces every word of length `2..=max_degree` in every possible first
/// step and compares the outcomes with the normal form.
pub fn check_local_confluence<C: Ring + Send + Sync>(table: &RelationTable<C>, max_degree: usize) -> Vec<OverlapReport<C>> {
    let rw = Rewriter::new(table.clone());
    let letters: Vec<Letter> = table.alphabet().letters().collect();
    let words: Vec<Word> = (2..=max_degree).flat_map(|d| words_of_length(&letters, d)).collect();
    let mut reports: Vec<OverlapReport<C>> = words
        .par_iter()
        .flat_map_iter(|w| overlaps_of(&rw, w))
        .collect();
    reports.sort_by(|a, b| a.word.cmp(&b.word).then(a.position.cmp(&b.position)));
    reports
}

fn overlaps_of<C: Ring>(rw: &Rewriter<C>, w: &Word) -> Vec<OverlapReport<C>> {
    let report = |position, via: Element<C>, nf: Element<C>, error| OverlapReport {
        word: w.clone(),
        position,
        via_position: via,
        normal_form: nf,
        error,
    };
    let nf = match rw.normal_word(w) {
        Ok(nf) => nf,
        Err(e) => return vec![report(0, Element::zero(), Element::zero(), Some(e.to_string()))],
    };
    let l = w.letters();
    let mut out = Vec::new();
    for p in 0..l.len() - 1 {
        if l[p] <= l[p + 1] {
            continue;
        }
        let Some(rhs) = rw.table().rule(l[p], l[p + 1]) else { continue };
        let left = Element::word(Word::new(l[..p].to_vec()));
        let right = Element::word(Word::new(l[p + 2..].to_vec()));
        let step = left.mul_free(rhs).mul_free(&right);
        match rw.normal_form(&step) {
            Ok(via) if via == nf => {}
            Ok(via) => out.push(report(p, via, nf.clone(), None)),
            Err(e) => out.push(report(p, Element::zero(), nf.clone(), Some(e.to_string()))),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::pbw::{Alphabet, Rule};
    use crate::scalar::Scalar;

    fn weyl1() -> RelationTable<Scalar> {
        let a = Alphabet::from_names(&["x"], &["dx"]).unwrap();
        let rhs = Element::parse("x*dx + 1", &a).unwrap();
        RelationTable::new(a, vec![Rule { lhs: (1, 0), rhs }], BTreeMap::new()).unwrap()
    }

    #[test]
    fn classical_weyl_action() {
        let t = weyl1();
        let rw = Rewriter::new(t.clone());
        let a = t.alphabet();
        let x3 = Element::parse("x^3", a).unwrap();
        let dx = Element::parse("dx", a).unwrap();
        assert_eq!(rw.apply(&dx, &x3).unwrap(), Element::parse("3*x^2", a).unwrap());
        let nf = rw.normal_form(&Element::parse("dx^2*x^2", a).unwrap()).unwrap();
        assert_eq!(nf.render(a), "x^2*dx^2 + 4*x*dx + 2");
    }

    #[test]
    fn cyclic_table_hits_budget() {
        let a = Alphabet::from_names(&["x", "y"], &[]).unwrap();
        let rhs = Element::parse("y*x", &a).unwrap();
        let t = RelationTable::new(a, vec![Rule { lhs: (1, 0), rhs }], BTreeMap::new()).unwrap();
        let rw = Rewriter::new(t).with_budget(100);
        let err = rw.normal_word(&Word::new(vec![1, 0])).unwrap_err();
        assert!(err.to_string().starts_with("rewrite budget exceeded"), "{err}");
    }

    #[test]
    fn one_letter_alphabet_is_confluent() {
        let a = Alphabet::from_names(&["x"], &[]).unwrap();
        let t: RelationTable<Scalar> = RelationTable::new(a, vec![], BTreeMap::new()).unwrap();
        assert!(check_local_confluence(&t, 3).is_empty());
        assert!(check_local_confluence(&weyl1(), 4).is_empty());
    }
}
