//! The verification suites: every published identity the kernel reproduces,
//! checked against the engine, with a witness for each failure.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{closed_form_univariate, uni_power, AlphaPoly, FormElement, OperatorKind, UniPoly, WeylAlgebra};
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::hecke::limit_q1;
use crate::linalg::Matrix;
use crate::pbw::{check_local_confluence, Alphabet, Letter, Sort, Word};
use crate::poisson::{self, SecondConvention};
use crate::radial::{self, CenterElement, Delta3Reading, SymmetricMuElement};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::{bundled, Element, RelationTable, Rewriter};

pub mod printed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Prop6,
    Eigen,
    Derham,
    Ch,
    Pi,
    Radial,
    Poisson,
    Confluence,
}

impl Suite {
    pub const ALL: [Suite; 9] =
        [Suite::Tables, Suite::Prop6, Suite::Eigen, Suite::Derham, Suite::Ch, Suite::Pi, Suite::Radial, Suite::Poisson, Suite::Confluence];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Prop6 => "prop6",
            Suite::Eigen => "eigen",
            Suite::Derham => "derham",
            Suite::Ch => "ch",
            Suite::Pi => "pi",
            Suite::Radial => "radial",
            Suite::Poisson => "poisson",
            Suite::Confluence => "confluence",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Expression(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The engine disagrees with a printed value in a known, exactly described way.
    Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(suite: Suite, name: &str, status: Status, witness: Option<String>) -> Self {
        Check { suite, check: name.to_string(), status, witness }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Discrepancy => "discrepancy",
        };
        write!(f, "{status:<11} {}/{}", self.suite, self.check)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// Relation tables the suites run against.
pub struct Context {
    tables: BTreeMap<String, RelationTable>,
}

impl Context {
    pub fn bundled() -> Result<Self> {
        let tables = bundled::TABLE_IDS.iter().map(|id| Ok((id.to_string(), bundled::table(id)?))).collect::<Result<_>>()?;
        Ok(Context { tables })
    }

    /// The bundled tables, with any `<id>.json` found in `dir` taking precedence.
    pub fn with_overrides(dir: &Path) -> Result<Self> {
        let mut ctx = Context::bundled()?;
        for id in bundled::TABLE_IDS {
            let path = dir.join(format!("{id}.json"));
            if path.exists() {
                let src = std::fs::read_to_string(&path).map_err(|e| Error::Table(format!("{}: {e}", path.display())))?;
                ctx.tables.insert(id.to_string(), RelationTable::from_json(&src)?);
            }
        }
        Ok(ctx)
    }

    pub fn table(&self, id: &str) -> Result<&RelationTable> {
        self.tables.get(id).ok_or_else(|| Error::Table(format!("unknown table '{id}'")))
    }

    fn weyl(&self, id: &str) -> Result<WeylAlgebra> {
        Ok(WeylAlgebra::new(self.table(id)?.clone()))
    }
}

type Job<'a> = (Suite, &'static str, Box<dyn Fn() -> Result<Outcome> + Send + Sync + 'a>);

enum Outcome {
    Pass,
    Fail(String),
    Discrepancy(String),
}

fn require(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

/// Runs the given suites (all when empty); the report is in a fixed order.
pub fn run(ctx: &Context, suites: &[Suite]) -> Vec<Check> {
    let wanted = |s: Suite| suites.is_empty() || suites.contains(&s);
    let jobs: Vec<Job> = jobs(ctx).into_iter().filter(|(s, _, _)| wanted(*s)).collect();
    jobs.par_iter()
        .map(|(suite, name, f)| match f() {
            Ok(Outcome::Pass) => Check::new(*suite, name, Status::Pass, None),
            Ok(Outcome::Fail(w)) => Check::new(*suite, name, Status::Fail, Some(w)),
            Ok(Outcome::Discrepancy(w)) => Check::new(*suite, name, Status::Discrepancy, Some(w)),
            Err(e) => Check::new(*suite, name, Status::Fail, Some(e.to_string())),
        })
        .collect()
}

pub fn to_json(checks: &[Check]) -> String {
    serde_json::to_string_pretty(checks).expect("serializable")
}

fn jobs<'a>(ctx: &'a Context) -> Vec<Job<'a>> {
    use Suite::*;
    let mut v: Vec<Job<'a>> = Vec::new();
    let mut add = |s: Suite, name: &'static str, f: Box<dyn Fn() -> Result<Outcome> + Send + Sync + 'a>| v.push((s, name, f));

    add(Tables, "bundled tables equal regenerated ones", Box::new(|| bundled_golden(ctx)));
    add(Tables, "json round trip", Box::new(|| json_round_trip(ctx)));
    add(Tables, "q-case mREA relations", Box::new(|| printed_hold(ctx.table("mrea")?, &printed::QCASE_MREA, false)));
    add(Tables, "q-case RE relations", Box::new(|| printed_hold(ctx.table("re")?, &printed::QCASE_MREA, true)));
    add(Tables, "weyl-N rows as generated", Box::new(|| weyl_n_rows(ctx, false)));
    add(Tables, "weyl-N row da*d as printed", Box::new(|| weyl_n_rows(ctx, true)));
    add(Tables, "weyl-N derivative pairs", Box::new(|| printed_hold(ctx.table("weyl-n")?, &printed::DERIVATIVE_PAIRS, false)));
    add(Tables, "weyl-M derivative pairs", Box::new(|| printed_hold(ctx.table("weyl-m")?, &printed::DERIVATIVE_PAIRS, false)));
    add(Tables, "q = 1 limit of weyl-N", Box::new(|| q1_limit(ctx)));
    add(Tables, "q = 1 derivatives commute", Box::new(|| q1_derivatives_commute(ctx)));
    add(Tables, "u(2)_h relations", Box::new(|| printed_hold(ctx.table("u2h")?, &printed::U2H_COORDS, false)));
    add(Tables, "compact derivative rows", Box::new(|| printed_hold(ctx.table("u2h")?, &printed::U2H_ROWS, false)));

    add(Prop6, "permutation rows, k <= 6", Box::new(|| prop6_rows(ctx, 6)));
    add(Prop6, "dx(x^k) = (2/h) B_k(x), k <= 8", Box::new(|| dx_powers(ctx, 8)));
    add(Prop6, "q-case derivative values", Box::new(|| weyl_n_values(ctx)));
    add(Prop6, "decomposable elements, degree <= 4", Box::new(|| decomposable(ctx, 4)));
    add(Prop6, "leibniz coproduct, degree <= 4", Box::new(|| leibniz(ctx, 4)));

    add(Eigen, "ordered exponentials, degree 4", Box::new(|| eigen(ctx, 4)));

    add(Derham, "d^2 = 0, degree <= 4", Box::new(|| de_rham(ctx, 4)));

    add(Ch, "cayley-hamilton residual", Box::new(|| Ok(require(radial::ch_residual(&ctx.weyl("u2h")?)?.is_zero(), || "nonzero residual".into()))));
    add(Ch, "trace powers, k <= 4", Box::new(|| traces(ctx, 4)));
    add(Ch, "Tr N = 2t, Tr N^2 = 2(t^2 - Cas)", Box::new(low_traces));

    add(Pi, "Delta_i Cas = sum_j Pi_ij Delta_j", Box::new(|| {
        Ok(match radial::pi_certify(&ctx.weyl("u2h")?, &radial::pi_matrix()) {
            Ok(()) => Outcome::Pass,
            Err(e) => Outcome::Fail(e.to_string()),
        })
    }));
    add(Pi, "eigenvalues solve the characteristic polynomial", Box::new(pi_eigenvalues));
    add(Pi, "lagrange-sylvester x^p = Pi^p, p <= 4", Box::new(|| lagrange_sylvester(4)));

    add(Radial, "Delta_i(Cas^p) closed forms, p <= 4", Box::new(|| cas_powers(ctx, 4)));
    add(Radial, "Delta_3(Cas^p) with the single lambda0 coefficient", Box::new(|| delta3_literal(ctx)));
    add(Radial, "Delta(Cas) = 6", Box::new(|| laplacian_cas(ctx)));
    add(Radial, "Delta_rad(mu) = -24", Box::new(radial_mu));
    add(Radial, "classical limit, p <= 5", Box::new(|| classical(5)));

    add(Poisson, "{,}_1 from the compact table", Box::new(bracket_one_matches));
    add(Poisson, "{p_x, t}_1 as listed in the text", Box::new(bracket_one_text));
    add(Poisson, "{,}_2 coordinate sector", Box::new(second_coordinate_sector));
    add(Poisson, "jacobi for {,}_0, {,}_1, {,}_2", Box::new(jacobi_all));
    add(Poisson, "({,}_0, {,}_1) compatible", Box::new(|| {
        Ok(require(poisson::compatibility_check(&poisson::darboux(), &poisson::bracket_one()?)?, || "sum fails jacobi".into()))
    }));
    add(Poisson, "{,}_2 compatible with {,}_0 + {,}_1 over C", Box::new(pencil_complex));
    add(Poisson, "{,}_2 mixed entries against print", Box::new(second_mixed));

    for id in bundled::TABLE_IDS {
        add(Confluence, id, Box::new(move || {
            let reports = check_local_confluence(ctx.table(id)?, 3);
            Ok(require(reports.is_empty(), || reports[0].render(ctx.table(id).expect("present"))))
        }));
    }
    v
}

fn split_relation(src: &str, alpha: &Alphabet) -> Result<(Element, Element)> {
    let (l, r) = src.split_once('=').ok_or_else(|| Error::Expression(format!("no '=' in {src}")))?;
    Ok((Element::parse(l.trim(), alpha)?, Element::parse(r.trim(), alpha)?))
}

fn at_hbar0(e: &Element) -> Result<Element> {
    Ok(e.try_map_coeffs(|c| c.substitute(crate::scalar::Var::Hbar, &Scalar::zero()))?)
}

/// Every printed relation reduces to zero in `table`.
fn printed_hold(table: &RelationTable, rows: &[&str], hbar0: bool) -> Result<Outcome> {
    let rw = Rewriter::new(table.clone());
    let alpha = table.alphabet();
    for row in rows {
        let (l, r) = split_relation(row, alpha)?;
        let mut rel = l.sub(&r);
        if hbar0 {
            rel = at_hbar0(&rel)?;
        }
        let nf = rw.normal_form(&rel)?;
        if !nf.is_zero() {
            return Ok(Outcome::Fail(format!("{row}: leaves {}", nf.render(alpha))));
        }
    }
    Ok(Outcome::Pass)
}

fn diff_tables(a: &RelationTable, b: &RelationTable) -> Option<String> {
    if a.alphabet() != b.alphabet() {
        return Some("alphabets differ".into());
    }
    for r in a.rules() {
        if b.rule(r.lhs.0, r.lhs.1) != Some(&r.rhs) {
            return Some(format!("{} vs {}", a.render_rule(r.lhs.0, r.lhs.1), b.render_rule(r.lhs.0, r.lhs.1)));
        }
    }
    (a.counits() != b.counits()).then(|| "counits differ".into())
}

fn bundled_golden(ctx: &Context) -> Result<Outcome> {
    for id in bundled::TABLE_IDS {
        let fresh = bundled::generate(id)?;
        if let Some(d) = diff_tables(ctx.table(id)?, &fresh) {
            return Ok(Outcome::Fail(format!("{id}: {d}")));
        }
    }
    Ok(Outcome::Pass)
}

fn json_round_trip(ctx: &Context) -> Result<Outcome> {
    for id in bundled::TABLE_IDS {
        let t = ctx.table(id)?;
        let back = RelationTable::from_json(&t.to_json())?;
        if let Some(d) = diff_tables(t, &back) {
            return Ok(Outcome::Fail(format!("{id}: {d}")));
        }
    }
    Ok(Outcome::Pass)
}

/// Printed minus generated for each derivative-coordinate row of `W(N)`.
pub fn weyl_n_row_differences(table: &RelationTable) -> Result<Vec<(String, Element)>> {
    let rw = Rewriter::new(table.clone());
    let alpha = table.alphabet();
    let mut out = Vec::new();
    for row in printed::WEYL_N_ROWS {
        let (l, r) = split_relation(row, alpha)?;
        let d = rw.normal_form(&r)?.sub(&rw.normal_form(&l)?);
        out.push((row.split_once('=').expect("relation").0.trim().to_string(), d));
    }
    Ok(out)
}

fn weyl_n_rows(ctx: &Context, odd_row: bool) -> Result<Outcome> {
    let table = ctx.table("weyl-n")?;
    let alpha = table.alphabet();
    for (name, d) in weyl_n_row_differences(table)? {
        if (name == printed::WEYL_N_ODD_ROW) != odd_row {
            continue;
        }
        if odd_row {
            let extra = Element::parse(printed::WEYL_N_ODD_EXTRA, alpha)?;
            if d == extra {
                let values = printed::WEYL_N_VALUES.map(|(_, g, v)| format!("{g} -> {v}")).join(", ");
                return Ok(Outcome::Discrepancy(format!(
                    "print has the extra terms {} on top of the generated row; they would give da(d) != 0, while the listed values are only {values}",
                    d.render(alpha)
                )));
            }
        }
        if !d.is_zero() {
            return Ok(Outcome::Fail(format!("{name}: printed minus generated = {}", d.render(alpha))));
        }
    }
    Ok(Outcome::Pass)
}

fn q1_limit(ctx: &Context) -> Result<Outcome> {
    let limit = limit_q1(ctx.table("weyl-n")?)?;
    if let Some(d) = diff_tables(&limit, ctx.table("gl2h")?) {
        return Ok(Outcome::Fail(format!("limit vs gl2h: {d}")));
    }
    if let Outcome::Fail(w) = printed_hold(&limit, &printed::GL2H_ROWS, false)? {
        return Ok(Outcome::Fail(w));
    }
    printed_hold(&limit, &printed::GL2H_COORDS, false)
}

fn q1_derivatives_commute(ctx: &Context) -> Result<Outcome> {
    let limit = limit_q1(ctx.table("weyl-n")?)?;
    let alpha = limit.alphabet();
    let derivs = alpha.letters_of(Sort::Derivative);
    for &a in &derivs {
        for &b in derivs.iter().filter(|&&b| b < a) {
            if limit.rule(a, b) != Some(&Element::word(Word::new(vec![b, a]))) {
                return Ok(Outcome::Fail(limit.render_rule(a, b)));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn uni_on(p: &UniPoly, l: Letter) -> Element {
    let mut e = Element::zero();
    for (exps, c) in p.terms() {
        e.add_term(Word::new(vec![l; exps[0] as usize]), c.clone());
    }
    e
}

fn prop6_rows(ctx: &Context, k_max: u32) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    for d in ["dtt", "dx", "dy", "dz"] {
        for v in ["t", "x", "y", "z"] {
            let (dl, vl) = (w.letter(d)?, w.letter(v)?);
            for k in 0..=k_max {
                let closed = w.normal_form(&w.permute_through_power(dl, vl, k)?)?;
                let engine = w.normal_form(&Element::letter(dl).mul_free(&uni_on(&uni_power(k), vl)))?;
                if closed != engine {
                    return Ok(Outcome::Fail(format!("{d}*{v}^{k}: closed form {} vs engine {}", w.render(&closed), w.render(&engine))));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn dx_powers(ctx: &Context, k_max: u32) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    let (dx, x) = (w.letter("dx")?, w.letter("x")?);
    let two_over_h = Scalar::from(2).checked_div(&Scalar::hbar())?;
    for k in 0..=k_max {
        let (_, b) = closed_form_univariate(&uni_power(k));
        let expect = uni_on(&b, x).scale(&two_over_h);
        let got = w.apply_operator(&Element::letter(dx), &uni_on(&uni_power(k), x))?;
        if got != expect {
            return Ok(Outcome::Fail(format!("k = {k}: {} vs {}", w.render(&got), w.render(&expect))));
        }
    }
    Ok(Outcome::Pass)
}

fn weyl_n_values(ctx: &Context) -> Result<Outcome> {
    let w = ctx.weyl("weyl-n")?;
    for (d, g, v) in printed::WEYL_N_VALUES {
        let got = w.apply_operator(&w.parse(d)?, &w.parse(g)?)?;
        let want = w.parse(v)?;
        if got != want {
            return Ok(Outcome::Fail(format!("{d}({g}) = {}, expected {v}", w.render(&got))));
        }
    }
    Ok(Outcome::Pass)
}

fn exponent_vectors(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_degree - used).map(move |e| {
                    let mut v = v.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

fn decomposable(ctx: &Context, max_degree: u32) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    for e in exponent_vectors(4, max_degree) {
        let fs: Vec<UniPoly> = e.iter().map(|&k| uni_power(k)).collect();
        let parts = [&fs[0], &fs[1], &fs[2], &fs[3]];
        let f = w.decomposable(parts)?;
        for d in ["dtt", "dx", "dy", "dz"] {
            let dl = w.letter(d)?;
            let closed = w.apply_decomposable(dl, parts)?;
            let engine = w.apply_operator(&Element::letter(dl), &f)?;
            if closed != engine {
                return Ok(Outcome::Fail(format!("{d}({}): closed {} vs engine {}", w.render(&f), w.render(&closed), w.render(&engine))));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Sorted words over `letters` with length at most `max_degree`.
fn monomials(letters: &[Letter], max_degree: u32) -> Vec<Element> {
    exponent_vectors(letters.len(), max_degree)
        .into_iter()
        .map(|e| {
            let word: Vec<Letter> = e.iter().zip(letters).flat_map(|(&k, &l)| std::iter::repeat(l).take(k as usize)).collect();
            Element::word(Word::new(word))
        })
        .collect()
}

fn leibniz(ctx: &Context, max_degree: u32) -> Result<Outcome> {
    let w = ctx.weyl("gl2h")?;
    let coords = w.alphabet().letters_of(Sort::Coordinate);
    let derivs = w.alphabet().letters_of(Sort::Derivative);
    let monos = monomials(&coords, max_degree);
    let pairs: Vec<(&Element, &Element)> = monos
        .iter()
        .flat_map(|f| monos.iter().map(move |g| (f, g)))
        .filter(|(f, g)| f.degree() + g.degree() <= max_degree as usize)
        .collect();
    let bad = pairs.par_iter().find_map_any(|(f, g)| {
        let fg = match w.multiply(f, g) {
            Ok(fg) => fg,
            Err(e) => return Some(e.to_string()),
        };
        for &d in &derivs {
            let res = w
                .leibniz_apply(d, f, g)
                .and_then(|l| Ok((l, w.apply_operator(&Element::letter(d), &fg)?)));
            match res {
                Ok((l, e)) if l == e => {}
                Ok((l, e)) => {
                    return Some(format!(
                        "{}({} * {}): coproduct {} vs engine {}",
                        w.alphabet().name(d),
                        w.render(f),
                        w.render(g),
                        w.render(&l),
                        w.render(&e)
                    ))
                }
                Err(e) => return Some(e.to_string()),
            }
        }
        None
    });
    Ok(bad.map_or(Outcome::Pass, Outcome::Fail))
}

fn eigen(ctx: &Context, degree: u32) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    let lambda: [AlphaPoly; 4] = std::array::from_fn(AlphaPoly::var);
    for d in ["dtt", "dx", "dy", "dz"] {
        let report = w.eigen_check(w.letter(d)?, &lambda, degree)?;
        if !report.holds {
            let first = report.residual.terms().next().map(|(word, c)| {
                format!("{}: {}", w.alphabet().render_word(word), c.render(&["alpha0", "alpha1", "alpha2", "alpha3"]))
            });
            return Ok(Outcome::Fail(format!("{d}: residual term {}", first.unwrap_or_default())));
        }
    }
    Ok(Outcome::Pass)
}

fn de_rham(ctx: &Context, max_degree: u32) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    let coords = w.alphabet().letters_of(Sort::Coordinate);
    for f in monomials(&coords, max_degree) {
        let form = FormElement::function(f.clone());
        let dd = w.de_rham_d(&w.de_rham_d(&form)?)?;
        if !dd.is_zero() {
            return Ok(Outcome::Fail(format!("d(d({})) = {}", w.render(&f), dd.render(&w))));
        }
    }
    Ok(Outcome::Pass)
}

fn traces(ctx: &Context, k_max: u32) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    for k in 0..=k_max {
        let engine = radial::mu_coordinates(&radial::trace_power_engine(&w, k)?);
        let closed = radial::trace_power(k)?;
        if engine != closed {
            return Ok(Outcome::Fail(format!("k = {k}: formula {closed} vs engine {engine}")));
        }
    }
    Ok(Outcome::Pass)
}

fn low_traces() -> Result<Outcome> {
    let two = Scalar::from(2);
    let tr1 = radial::mu_coordinates(&CenterElement::t().scale(&two));
    let tr2 = radial::mu_coordinates(&CenterElement::monomial(2, 0).sub_ref(&CenterElement::cas()).scale(&two));
    let (a, b) = (radial::trace_power(1)?, radial::trace_power(2)?);
    Ok(require(a == tr1 && b == tr2, || format!("Tr N = {a}, Tr N^2 = {b}")))
}

fn pi_eigenvalues() -> Result<Outcome> {
    let pi = radial::pi_matrix().map(radial::mu_coordinates);
    for l in radial::pi_eigenvalues() {
        let det = pi.sub(&Matrix::identity(4).scale(&l)).det();
        if !det.is_zero() {
            return Ok(Outcome::Fail(format!("det(Pi - {l}) = {det}")));
        }
    }
    Ok(Outcome::Pass)
}

fn lagrange_sylvester(p_max: u32) -> Result<Outcome> {
    let pi = radial::pi_matrix();
    for p in 0..=p_max {
        if radial::matrix_function_ls(&uni_power(p))? != pi.pow(p) {
            return Ok(Outcome::Fail(format!("p = {p}")));
        }
    }
    Ok(Outcome::Pass)
}

fn cas_powers(ctx: &Context, p_max: u32) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    for i in 0..4 {
        for p in 0..=p_max {
            let closed = radial::delta_on_cas_power(i, p)?;
            let engine = radial::delta_on_cas_power_engine(&w, i, p)?;
            if closed != engine {
                return Ok(Outcome::Fail(format!("Delta{i}(Cas^{p}): formula {closed} vs engine {engine}")));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn delta3_literal(ctx: &Context) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    for p in 0..=4 {
        let literal = radial::delta3_on_cas_power(Delta3Reading::Literal, p)?;
        let engine = radial::delta_on_cas_power_engine(&w, 3, p)?;
        if literal != engine {
            let doubled = radial::delta3_on_cas_power(Delta3Reading::Doubled, p)? == engine;
            let w = format!("p = {p}: {literal} vs engine {engine}; with the lambda0 coefficient doubled the formula {}", if doubled { "agrees" } else { "still differs" });
            return Ok(if doubled { Outcome::Discrepancy(w) } else { Outcome::Fail(w) });
        }
    }
    Ok(Outcome::Pass)
}

fn laplacian_cas(ctx: &Context) -> Result<Outcome> {
    let w = ctx.weyl("u2h")?;
    let op = w.build_operator(OperatorKind::Laplacian)?;
    let got = w.apply_operator(&op, &w.parse("x^2 + y^2 + z^2")?)?;
    Ok(require(got == Element::scalar(Scalar::from(6)), || w.render(&got)))
}

fn radial_mu() -> Result<Outcome> {
    let got = radial::radial_apply(&CommPoly::var(1))?;
    Ok(require(got == SymmetricMuElement::from(Scalar::from(-24)), || got.to_string()))
}

fn classical(p_max: u32) -> Result<Outcome> {
    for row in radial::classical_radial_limit(p_max)? {
        if !row.holds() {
            let names = ["mu"];
            return Ok(Outcome::Fail(format!(
                "p = {}: limit {} vs {} (r-form agrees: {})",
                row.p,
                row.limit.render(&names),
                row.expected.render(&names),
                row.radial_r_agrees
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn first_difference(a: &poisson::PoissonTable<8>, b: &poisson::PoissonTable<8>) -> Option<String> {
    poisson::compare_tables(a, b)
        .into_iter()
        .find(|e| !e.agrees)
        .map(|e| format!("{{{}, {}}}: extracted {} vs printed {}", e.pair.0, e.pair.1, e.extracted, e.printed))
}

fn bracket_one_matches() -> Result<Outcome> {
    let b1 = poisson::bracket_one()?;
    Ok(match first_difference(&b1, &poisson::bracket_one_printed()) {
        None => Outcome::Pass,
        Some(w) => Outcome::Fail(w),
    })
}

fn bracket_one_text() -> Result<Outcome> {
    let b1 = poisson::bracket_one()?;
    let idx = |n: &str| b1.index(n);
    let got = b1.get(idx("p_x")?, idx("t")?);
    let listed = CommPoly::var(idx("p_t")?).scale(&Scalar::ratio(1, 2));
    if got == listed {
        return Ok(Outcome::Pass);
    }
    Ok(Outcome::Discrepancy(format!(
        "text lists p_t/2; the compact table (dx*t = t*dx + (h/2)*dx) gives {}",
        b1.render_poly(&got)
    )))
}

fn second_coordinate_sector() -> Result<Outcome> {
    let b2 = poisson::bracket_two(SecondConvention::default())?;
    let printed = poisson::bracket_two_printed();
    let bad = poisson::compare_tables(&b2, &printed)
        .into_iter()
        .find(|e| !e.pair.0.starts_with("p_") && !e.pair.1.starts_with("p_") && !e.agrees);
    Ok(match bad {
        None => Outcome::Pass,
        Some(e) => Outcome::Fail(format!("{{{}, {}}}: {} vs {}", e.pair.0, e.pair.1, e.extracted, e.printed)),
    })
}

fn jacobi_all() -> Result<Outcome> {
    let tables = [
        ("{,}_0", poisson::darboux()),
        ("{,}_1", poisson::bracket_one()?),
        ("{,}_2", poisson::bracket_two(SecondConvention::default())?),
    ];
    for (name, t) in &tables {
        if let Some(w) = t.jacobi_residuals().first() {
            let n = t.names();
            let (i, j, k) = w.triple;
            return Ok(Outcome::Fail(format!("{name} at ({}, {}, {}): {}", n[i], n[j], n[k], t.render_poly(&w.residual))));
        }
    }
    Ok(Outcome::Pass)
}

fn pencil_complex() -> Result<Outcome> {
    let b2 = poisson::second_to_compact(&poisson::bracket_two(SecondConvention::default())?);
    let sum = poisson::darboux().add(&poisson::bracket_one()?)?;
    Ok(require(poisson::compatibility_check(&b2, &sum)?, || "sum fails jacobi".into()))
}

fn second_mixed() -> Result<Outcome> {
    let reports = poisson::second_bracket_report()?;
    let best = reports
        .iter()
        .filter(|r| r.jacobi_failures == 0)
        .max_by_key(|r| r.agreeing())
        .ok_or_else(|| Error::Internal("no convention gives a Poisson bracket".into()))?;
    if !best.coordinate_sector_exact() {
        return Ok(Outcome::Fail(format!("{}: coordinate sector differs", best.convention)));
    }
    let off: Vec<String> = best
        .entries
        .iter()
        .filter(|e| !e.agrees)
        .map(|e| format!("{{{}, {}}} extracted {} printed {}", e.pair.0, e.pair.1, e.extracted, e.printed))
        .collect();
    if off.is_empty() {
        return Ok(Outcome::Pass);
    }
    Ok(Outcome::Discrepancy(format!(
        "best convention ({}) agrees on {}/{} entries and is Poisson; the printed table fails jacobi on {} triples; differing: {}",
        best.convention,
        best.agreeing(),
        best.entries.len(),
        poisson::bracket_two_printed().jacobi_residuals().len(),
        off.join("; ")
    )))
}
