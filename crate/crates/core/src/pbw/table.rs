use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Element, Generator, Letter, Sort, Word};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::{Scalar, Var};

/// `lhs.0 · lhs.1 → rhs`, where `lhs.0` ranks above `lhs.1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule<C> {
    pub lhs: (Letter, Letter),
    pub rhs: Element<C>,
}

/// An oriented presentation: one rule per inversion pair of the alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationTable<C> {
    alphabet: Alphabet,
    rules: BTreeMap<(Letter, Letter), Element<C>>,
    counit: BTreeMap<Letter, C>,
    weights: Vec<u32>,
}

impl<C: Ring> RelationTable<C> {
    /// Validates and builds a table. `counit` lists the derivative letters
    /// whose value on the unit is nonzero.
    pub fn new(alphabet: Alphabet, rules: Vec<Rule<C>>, counit: BTreeMap<Letter, C>) -> Result<Self> {
        let n = alphabet.len();
        let mut map = BTreeMap::new();
        for r in rules {
            let (a, b) = r.lhs;
            if a as usize >= n || b as usize >= n {
                return Err(Error::Table("rule letter outside the alphabet".into()));
            }
            let name = format!("{}*{}", alphabet.name(a), alphabet.name(b));
            if a <= b {
                return Err(Error::Table(format!("rule {name}: left side is not an inversion pair")));
            }
            if r.rhs.terms().any(|(w, _)| w.letters().iter().any(|&l| l as usize >= n)) {
                return Err(Error::Table(format!("rule {name}: right side uses a letter outside the alphabet")));
            }
            if map.insert((a, b), r.rhs).is_some() {
                return Err(Error::Table(format!("duplicate rule for {name}")));
            }
        }
        for a in alphabet.letters() {
            for b in alphabet.letters().filter(|&b| b < a) {
                if !map.contains_key(&(a, b)) {
                    return Err(Error::Table(format!(
                        "incomplete table: no rule for {}*{}",
                        alphabet.name(a),
                        alphabet.name(b)
                    )));
                }
            }
        }
        for (&l, _) in &counit {
            if l as usize >= n || alphabet.sort(l) != Sort::Derivative {
                return Err(Error::Table("counit values are allowed on derivative letters only".into()));
            }
        }
        let counit = counit.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(RelationTable { weights: vec![1; n], alphabet, rules: map, counit })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule<C>> + '_ {
        self.rules.iter().map(|(&lhs, rhs)| Rule { lhs, rhs: rhs.clone() })
    }

    pub fn rule(&self, a: Letter, b: Letter) -> Option<&Element<C>> {
        self.rules.get(&(a, b))
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn rule_name(&self, a: Letter, b: Letter) -> String {
        format!("{}*{}", self.alphabet.name(a), self.alphabet.name(b))
    }

    /// `"dx*x -> x*dx + (h/2)*dtt"`.
    pub fn render_rule(&self, a: Letter, b: Letter) -> String {
        let rhs = self.rules.get(&(a, b)).map_or_else(|| "?".to_string(), |e| e.render(&self.alphabet));
        format!("{} -> {rhs}", self.rule_name(a, b))
    }

    /// The relation `a·b − rhs` as a free element.
    pub fn relation(&self, a: Letter, b: Letter) -> Option<Element<C>> {
        self.rules.get(&(a, b)).map(|rhs| Element::word(Word::new(vec![a, b])).sub(rhs))
    }

    pub fn counit(&self, l: Letter) -> C {
        self.counit.get(&l).cloned().unwrap_or_else(C::zero)
    }

    pub fn counits(&self) -> &BTreeMap<Letter, C> {
        &self.counit
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.alphabet.len() {
            return Err(Error::Table("one weight per generator required".into()));
        }
        self.weights = weights;
        Ok(self)
    }

    /// Applies a coefficient map to every rule and counit value.
    pub fn try_map_coeffs(&self, f: impl Fn(&C) -> Result<C>) -> Result<Self> {
        let mut rules = BTreeMap::new();
        for (&k, rhs) in &self.rules {
            let mapped = rhs.try_map_coeffs(&f).map_err(|e| match e {
                Error::Scalar(source) => Error::RulePole { rule: self.render_rule(k.0, k.1), source },
                other => other,
            })?;
            rules.insert(k, mapped);
        }
        let mut counit = BTreeMap::new();
        for (&l, c) in &self.counit {
            let v = f(c)?;
            if !v.is_zero() {
                counit.insert(l, v);
            }
        }
        Ok(RelationTable { alphabet: self.alphabet.clone(), rules, counit, weights: self.weights.clone() })
    }

    /// The same table over another coefficient ring.
    pub fn map_ring<D: Ring>(&self, f: impl Fn(&C) -> D) -> RelationTable<D> {
        RelationTable {
            alphabet: self.alphabet.clone(),
            rules: self.rules.iter().map(|(&k, rhs)| (k, rhs.map_ring(&f))).collect(),
            counit: self.counit.iter().map(|(&l, c)| (l, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Replaces one rule right side, keeping everything else. For building
    /// perturbed tables in tests and reports.
    pub fn with_rule(&self, a: Letter, b: Letter, rhs: Element<C>) -> Result<Self> {
        if !self.rules.contains_key(&(a, b)) {
            return Err(Error::Table(format!("no rule {}", self.rule_name(a, b))));
        }
        let mut t = self.clone();
        t.rules.insert((a, b), rhs);
        Ok(t)
    }
}

#[derive(Serialize, Deserialize)]
struct GenJson {
    name: String,
    sort: Sort,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<String>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RuleJson {
    lhs: Vec<String>,
    rhs: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    alphabet: Vec<GenJson>,
    rules: Vec<RuleJson>,
}

impl RelationTable<Scalar> {
    /// Formal parameters occurring in some rule or counit value.
    pub fn parameters(&self) -> Vec<Var> {
        let uses = |v: Var| {
            self.rules.values().any(|e| e.terms().any(|(_, c)| c.uses(v))) || self.counit.values().any(|c| c.uses(v))
        };
        [Var::Q, Var::Hbar].into_iter().filter(|&v| uses(v)).collect()
    }

    pub fn to_json(&self) -> String {
        let alphabet = self
            .alphabet
            .gens()
            .iter()
            .enumerate()
            .map(|(k, g)| GenJson {
                name: g.name.clone(),
                sort: g.sort,
                counit: self.counit.get(&(k as Letter)).map(|c| c.to_string()),
                weight: (self.weights[k] != 1).then_some(self.weights[k]),
            })
            .collect();
        let word = |w: &Word| w.letters().iter().map(|&l| self.alphabet.name(l).to_string()).collect();
        let rules = self
            .rules
            .iter()
            .map(|(&(a, b), rhs)| RuleJson {
                lhs: vec![self.alphabet.name(a).to_string(), self.alphabet.name(b).to_string()],
                rhs: rhs.terms().map(|(w, c)| TermJson { word: word(w), coeff: c.to_string() }).collect(),
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&TableJson { alphabet, rules }).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let tj: TableJson = serde_json::from_str(src).map_err(|e| Error::Table(e.to_string()))?;
        let gens = tj.alphabet.iter().map(|g| Generator { name: g.name.clone(), sort: g.sort }).collect();
        let alphabet = Alphabet::new(gens)?;
        let mut counit = BTreeMap::new();
        let mut weights = Vec::new();
        for (k, g) in tj.alphabet.iter().enumerate() {
            if let Some(c) = &g.counit {
                counit.insert(k as Letter, c.parse::<Scalar>()?);
            }
            weights.push(g.weight.unwrap_or(1));
        }
        let mut rules = Vec::new();
        for r in &tj.rules {
            let [a, b] = r.lhs.as_slice() else {
                return Err(Error::Table("rule left side must have two letters".into()));
            };
            let lhs = (alphabet.letter(a)?, alphabet.letter(b)?);
            let mut rhs = Element::zero();
            for t in &r.rhs {
                let w = t.word.iter().map(|n| alphabet.letter(n)).collect::<Result<Vec<_>>>()?;
                rhs.add_term(Word::new(w), t.coeff.parse::<Scalar>()?);
            }
            rules.push(Rule { lhs, rhs });
        }
        RelationTable::new(alphabet, rules, counit)?.with_weights(weights)
    }
}
