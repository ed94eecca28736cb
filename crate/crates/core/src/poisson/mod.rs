//! Semiclassical brackets read off from relation tables, and Poisson
//! certification (Jacobi identity, compatibility).


use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;


use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::Rewriter;
use crate::scalar::{Scalar, Var};
use crate::Element;

mod pencil;

pub use pencil::{
    bracket_one, bracket_one_printed, bracket_two, bracket_two_printed, canonical_second, compare_tables, darboux,
    second_bracket_report, second_to_compact, ConstantTerms, ConventionReport, EntryComparison, MomentumNormalization,
    SecondConvention, FIRST_NAMES, SECOND_NAMES,
};

/// Which deformation parameter the bracket is the first-order part in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Coefficient of `ℏ`.
    HbarLinear,
    /// Coefficient of `q − 1`.
    QLinear,
}

/// `e` with its letters read as commuting variables.
pub fn commutative_image<const N: usize>(e: &Element) -> CommPoly<Scalar, N> {
    let mut p = CommPoly::zero();
    for (w, c) in e.terms() {
        let mut exps = [0; N];
        for &l in w.letters() {
            exps[l as usize] += 1;
        }
        p.add_term(exps, c.clone());
    }
    p
}

/// First-order part of `[u, v]` in the commutative image.
pub fn extract_bracket<const N: usize>(rw: &Rewriter, scheme: Scheme, u: &Element, v: &Element) -> Result<CommPoly<Scalar, N>> {
    if rw.table().alphabet().len() != N {
        return Err(Error::WrongAlphabet(format!("expected {N} generators, found {}", rw.table().alphabet().len())));
    }
    let comm = rw.normal_form(&u.mul_free(v).sub(&v.mul_free(u)))?;
    let image = commutative_image::<N>(&comm);
    let (var, at) = match scheme {
        Scheme::HbarLinear => (Var::Hbar, Scalar::zero()),
        Scheme::QLinear => (Var::Q, Scalar::one()),
    };
    Ok(image.try_map_coeffs(|c| c.series_coefficient(var, &at, 1))?)
}

/// A polynomial Poisson bracket on `N` commuting generators, given on pairs
/// of generators and extended as a biderivation.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonTable<const N: usize> {
    names: Vec<String>,
    brackets: BTreeMap<(usize, usize), CommPoly<Scalar, N>>,
}

/// A triple whose cyclic sum does not vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiWitness<const N: usize> {
    pub triple: (usize, usize, usize),
    pub residual: CommPoly<Scalar, N>,
}

impl<const N: usize> PoissonTable<N> {
    pub fn new(names: &[&str]) -> Result<Self> {
        if names.len() != N {
            return Err(Error::Expression(format!("expected {N} generator names")));
        }
        Ok(PoissonTable { names: names.iter().map(|s| s.to_string()).collect(), brackets: BTreeMap::new() })
    }

    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Sets `{g_i, g_j} = p` (and `{g_j, g_i} = −p`).
    pub fn set(&mut self, i: usize, j: usize, p: CommPoly<Scalar, N>) {
        let (key, val) = if i < j { ((i, j), p) } else { ((j, i), p.neg()) };
        if i == j || val.is_zero() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, val);
        }
    }

    /// `{g_i, g_j}`.
    pub fn get(&self, i: usize, j: usize) -> CommPoly<Scalar, N> {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_else(CommPoly::zero)
        } else {
            self.get(j, i).neg()
        }
    }

    /// `{f, g} = Σ ∂_i f ∂_j g {g_i, g_j}`.
    pub fn bracket(&self, f: &CommPoly<Scalar, N>, g: &CommPoly<Scalar, N>) -> CommPoly<Scalar, N> {
        let df: Vec<_> = (0..N).map(|i| f.derivative(i)).collect();
        let dg: Vec<_> = (0..N).map(|j| g.derivative(j)).collect();
        let mut out = CommPoly::zero();
        for (&(i, j), b) in &self.brackets {
            let cross = df[i].mul(&dg[j]).sub(&df[j].mul(&dg[i]));
            if !cross.is_zero() {
                out = out.add(&cross.mul(b));
            }
        }
        out
    }

    /// Cyclic sums `{u,{v,w}} + {v,{w,u}} + {w,{u,v}}` over all generator
    /// triples; empty when the bracket is Poisson.
    pub fn jacobi_residuals(&self) -> Vec<JacobiWitness<N>> {
        let triples: Vec<(usize, usize, usize)> =
            (0..N).flat_map(|i| (i + 1..N).flat_map(move |j| (j + 1..N).map(move |k| (i, j, k)))).collect();
        let var = |k| CommPoly::<Scalar, N>::var(k);
        let mut out: Vec<JacobiWitness<N>> = triples
            .par_iter()
            .filter_map(|&(i, j, k)| {
                let r = self
                    .bracket(&var(i), &self.get(j, k))
                    .add(&self.bracket(&var(j), &self.get(k, i)))
                    .add(&self.bracket(&var(k), &self.get(i, j)));
                (!r.is_zero()).then_some(JacobiWitness { triple: (i, j, k), residual: r })
            })
            .collect();
        out.sort_by_key(|w| w.triple);
        out
    }

    /// Entrywise sum; generator names must agree.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.names != o.names {
            return Err(Error::Expression("brackets on different generators".into()));
        }
        let mut out = self.clone();
        for (&(i, j), p) in &o.brackets {
            let sum = out.get(i, j).add(p);
            out.set(i, j, sum);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for p in out.brackets.values_mut() {
            *p = p.scale(c);
        }
        out.brackets.retain(|_, p| !p.is_zero());
        out
    }

    /// Nonzero entries `(i, j, {g_i, g_j})` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CommPoly<Scalar, N>)> {
        self.brackets.iter().map(|(&(i, j), p)| (i, j, p))
    }

    pub fn render_poly(&self, p: &CommPoly<Scalar, N>) -> String {
        p.render(&self.names())
    }

    /// The same bracket in new generators. `old` writes each current
    /// generator in the new ones, `new` each new generator in the current ones.
    pub fn linear_change(&self, names: &[&str], old: &[CommPoly<Scalar, N>; N], new: &[CommPoly<Scalar, N>; N]) -> Self {
        let mut out = PoissonTable::new(names).expect("N names");
        for i in 0..N {
            for j in i + 1..N {
                out.set(i, j, self.bracket(&new[i], &new[j]).compose(old));
            }
        }
        out
    }

    /// Reads off the bracket of a table on the generators `gens` (elements of
    /// the algebra), rewriting results through `old_to_new`, which expresses
    /// each letter of the table as a polynomial in the new generators.
    pub fn from_table(
        rw: &Rewriter,
        scheme: Scheme,
        names: &[&str],
        gens: &[Element],
        old_to_new: &[CommPoly<Scalar, N>; N],
    ) -> Result<Self> {
        let mut t = PoissonTable::new(names)?;
        if gens.len() != N {
            return Err(Error::Expression(format!("expected {N} generators")));
        }
        let pairs: Vec<(usize, usize)> = (0..N).flat_map(|i| (i + 1..N).map(move |j| (i, j))).collect();
        let values = pairs
            .par_iter()
            .map(|&(i, j)| extract_bracket::<N>(rw, scheme, &gens[i], &gens[j]).map(|p| p.compose(old_to_new)))
            .collect::<Result<Vec<_>>>()?;
        for ((i, j), p) in pairs.into_iter().zip(values) {
            t.set(i, j, p);
        }
        Ok(t)
    }
}

impl<const N: usize> fmt::Display for PoissonTable<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, p) in self.entries() {
            writeln!(f, "{{{}, {}}} = {}", self.names[i], self.names[j], self.render_poly(p))?;
        }
        Ok(())
    }
}

/// Whether `p1 + p2` is again Poisson.
pub fn compatibility_check<const N: usize>(p1: &PoissonTable<N>, p2: &PoissonTable<N>) -> Result<bool> {
    Ok(p1.add(p2)?.jacobi_residuals().is_empty())
}

/// Parses a polynomial in the table's generator names.
pub fn parse_poly<const N: usize>(src: &str, names: &[&str]) -> Result<CommPoly<Scalar, N>> {
    let e = crate::expr::parse(src, names)?;
    let leaf = |name: &str| -> Result<CommPoly<Scalar, N>> {
        match names.iter().position(|n| *n == name) {
            Some(k) => Ok(CommPoly::var(k)),
            None => Ok(CommPoly::constant(crate::expr::Expr::Sym(name.to_string()).eval_scalar()?)),
        }
    };
    let from_int = |n: &num_bigint::BigUint| {
        CommPoly::constant(Scalar::rational(num_rational::BigRational::from_integer(n.clone().into())))
    };
    let div = |a: &CommPoly<Scalar, N>, b: &CommPoly<Scalar, N>| -> Result<CommPoly<Scalar, N>> {
        let d = b.as_constant().ok_or_else(|| Error::Expression("division by a non-constant".into()))?;
        let inv = Scalar::one().checked_div(&d)?;
        Ok(a.scale(&inv))
    };
    let powi = |a: &CommPoly<Scalar, N>, k: i32| -> Result<CommPoly<Scalar, N>> {
        if k < 0 {
            return Err(Error::Expression("negative power".into()));
        }
        Ok(a.pow(k as u32))
    };
    e.eval_with(&leaf, &from_int, &div, &powi)
}
