use std::collections::BTreeMap;

use num_traits::Zero;

use braided_weyl::calculus::{AlphaPoly, FormElement, OperatorKind, WeylAlgebra};
use braided_weyl::commpoly::CommPoly;
use braided_weyl::hecke::{change_basis_compact, generate_relations, limit_q1, BraidMatrix, RelationKind};
use braided_weyl::linalg::Matrix;
use braided_weyl::pbw::{check_local_confluence, Sort, Word};
use braided_weyl::poisson::{self, parse_poly, PoissonTable, SecondConvention, FIRST_NAMES};
use braided_weyl::radial::{self, CenterElement, SymmetricMuElement};
use braided_weyl::verify::{printed, weyl_n_row_differences};
use braided_weyl::{bundled, Element, Ring, Rewriter, Scalar, Var};

type Outcome = Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn holds(w: &WeylAlgebra, row: &str, hbar0: bool) -> Result<bool, String> {
    let (l, r) = row.split_once('=').expect("relation");
    let mut rel = ok(w.parse(l.trim()))?.sub(&ok(w.parse(r.trim()))?);
    if hbar0 {
        rel = ok(rel.try_map_coeffs(|c| c.substitute(Var::Hbar, &Scalar::from(0))))?;
    }
    Ok(ok(w.normal_form(&rel))?.is_zero())
}

fn all_hold(w: &WeylAlgebra, rows: &[&str], hbar0: bool) -> Result<(), String> {
    for row in rows {
        if !holds(w, row, hbar0)? {
            return fail(format!("does not hold: {row}"));
        }
    }
    Ok(())
}

/// Derivative rows: 15 printed rows hold exactly; the remaining row differs
/// from print by a fixed constant-plus-linear term.
fn relation_generation() -> Outcome {
    let weyl_n = ok(generate_relations(&BraidMatrix::standard(), RelationKind::WeylN))?;
    let alpha = weyl_n.alphabet().clone();
    let mut odd = None;
    for (name, d) in ok(weyl_n_row_differences(&weyl_n))? {
        if name == printed::WEYL_N_ODD_ROW {
            odd = Some(d);
        } else if !d.is_zero() {
            return fail(format!("{name}: printed minus generated = {}", d.render(&alpha)));
        }
    }
    let mrea = WeylAlgebra::new(ok(generate_relations(&BraidMatrix::standard(), RelationKind::Mrea))?);
    all_hold(&mrea, &printed::QCASE_MREA, false)?;
    let re = WeylAlgebra::new(ok(generate_relations(&BraidMatrix::standard(), RelationKind::Re))?);
    all_hold(&re, &printed::QCASE_MREA, true)?;

    let odd = odd.expect("row present");
    let extra = ok(Element::parse(printed::WEYL_N_ODD_EXTRA, &alpha))?;
    assert_eq!(odd, extra, "the da*d discrepancy changed shape");
    // The generated table is confluent and gives da(d) = 0; the printed row would give da(d) != 0.
    let w = WeylAlgebra::new(weyl_n);
    let da_d = ok(w.apply_operator(&ok(w.parse("da"))?, &ok(w.parse("d"))?))?;
    assert!(da_d.is_zero());
    Err(format!(
        "15/16 derivative rows and all 6 RE/mREA rows match; printed da*d carries the extra {} which makes W(N) inconsistent with its own counit",
        extra.render(&alpha)
    ))
}

fn limits() -> Outcome {
    let weyl_n = ok(generate_relations(&BraidMatrix::standard(), RelationKind::WeylN))?;
    let gl2h = ok(limit_q1(&weyl_n))?;
    let w = WeylAlgebra::new(gl2h.clone());
    all_hold(&w, &printed::GL2H_ROWS, false)?;
    all_hold(&w, &printed::GL2H_COORDS, false)?;
    let derivs = gl2h.alphabet().letters_of(Sort::Derivative);
    for &a in &derivs {
        for &b in derivs.iter().filter(|&&b| b < a) {
            if gl2h.rule(a, b) != Some(&Element::word(Word::new(vec![b, a]))) {
                return fail(format!("derivatives do not commute: {}", gl2h.render_rule(a, b)));
            }
        }
    }
    let compact = WeylAlgebra::new(ok(change_basis_compact(&gl2h))?);
    all_hold(&compact, &printed::U2H_COORDS, false)?;
    all_hold(&compact, &printed::U2H_ROWS, false)?;
    Ok("q -> 1 table, commuting derivatives, u(2)_h and compact derivative rows".into())
}

fn a_str(v: &str, k: u32) -> String {
    format!("((({v} - i*h/2)^{k} + ({v} + i*h/2)^{k})/2)")
}

fn b_str(v: &str, k: u32) -> String {
    format!("(i*(({v} - i*h/2)^{k} - ({v} + i*h/2)^{k})/2)")
}

/// `(sign, partner)` in `d v^k = A_k(v) d + sign B_k(v) partner`.
const PERMUTATION: [(&str, [(&str, &str); 3]); 4] = [
    ("dtt", [("x", "-dx"), ("y", "-dy"), ("z", "-dz")]),
    ("dx", [("x", "+dtt"), ("y", "+dz"), ("z", "-dy")]),
    ("dy", [("x", "-dz"), ("y", "+dtt"), ("z", "+dx")]),
    ("dz", [("x", "+dy"), ("y", "-dx"), ("z", "+dtt")]),
];

fn permutation_rows() -> Outcome {
    let w = WeylAlgebra::u2h();
    for (d, rows) in PERMUTATION {
        for k in 0..=6 {
            let mut cases = vec![("t".to_string(), format!("(t + h/2)^{k}*{d}"))];
            for (v, partner) in rows {
                let (sign, p) = partner.split_at(1);
                cases.push((v.to_string(), format!("{}*{d} {sign} {}*{p}", a_str(v, k), b_str(v, k))));
            }
            for (v, closed) in cases {
                let engine = ok(w.normal_form(&ok(w.parse(&format!("{d}*{v}^{k}")))?))?;
                let closed = ok(w.normal_form(&ok(w.parse(&closed))?))?;
                if engine != closed {
                    return fail(format!("{d}*{v}^{k}: engine {} vs closed {}", w.render(&engine), w.render(&closed)));
                }
            }
        }
    }
    Ok("16 rows, k = 0..6".into())
}

fn derivative_actions() -> Outcome {
    let w = WeylAlgebra::u2h();
    for k in 0..=8 {
        let got = ok(w.apply_operator(&ok(w.parse("dx"))?, &ok(w.parse(&format!("x^{k}")))?))?;
        let want = ok(w.normal_form(&ok(w.parse(&format!("(2/h)*{}", b_str("x", k))))?))?;
        if got != want {
            return fail(format!("dx(x^{k}) = {}", w.render(&got)));
        }
    }
    let n = WeylAlgebra::new(ok(bundled::table("weyl-n"))?);
    for (d, g, v) in printed::WEYL_N_VALUES {
        let got = ok(n.apply_operator(&ok(n.parse(d))?, &ok(n.parse(g))?))?;
        if got != ok(n.parse(v))? {
            return fail(format!("{d}({g}) = {}", n.render(&got)));
        }
    }
    let mut count = 0;
    for a in 0..=4u32 {
        for b in 0..=4 - a {
            for c in 0..=4 - a - b {
                for e in 0..=4 - a - b - c {
                    let f = ok(w.parse(&format!("t^{a}*x^{b}*y^{c}*z^{e}")))?;
                    let s = format!("(2/h)*(t + h/2)^{a}");
                    let (a1, a2, a3) = (a_str("x", b), a_str("y", c), a_str("z", e));
                    let (b1, b2, b3) = (b_str("x", b), b_str("y", c), b_str("z", e));
                    let formulas = [
                        ("dtt", format!("{s}*({a1}*{a2}*{a3} - {b1}*{b2}*{b3})")),
                        ("dx", format!("{s}*({b1}*{a2}*{a3} + {a1}*{b2}*{b3})")),
                        ("dy", format!("{s}*({a1}*{b2}*{a3} - {b1}*{a2}*{b3})")),
                        ("dz", format!("{s}*({a1}*{a2}*{b3} + {b1}*{b2}*{a3})")),
                    ];
                    for (d, formula) in formulas {
                        let engine = ok(w.apply_operator(&ok(w.parse(d))?, &f))?;
                        let closed = ok(w.normal_form(&ok(w.parse(&formula))?))?;
                        if engine != closed {
                            return fail(format!("{d}({}) differs", w.render(&f)));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("dx(x^k) for k <= 8, q-case values, {count} decomposable actions"))
}

fn coordinate_monomials(w: &WeylAlgebra, max: u32) -> Vec<Element> {
    let coords = w.alphabet().letters_of(Sort::Coordinate);
    let mut out = vec![Vec::new()];
    for &l in &coords {
        out = out
            .into_iter()
            .flat_map(|word: Vec<_>| {
                (0..=max as usize - word.len()).map(move |k| {
                    let mut word = word.clone();
                    word.extend(std::iter::repeat(l).take(k));
                    word
                })
            })
            .collect();
    }
    out.into_iter().map(|word| Element::word(Word::new(word))).collect()
}

fn leibniz() -> Outcome {
    let w = WeylAlgebra::gl2h();
    let monos = coordinate_monomials(&w, 4);
    let derivs = w.alphabet().letters_of(Sort::Derivative);
    let mut pairs = 0;
    for f in &monos {
        for g in monos.iter().filter(|g| f.degree() + g.degree() <= 4) {
            let fg = ok(w.multiply(f, g))?;
            for &d in &derivs {
                if ok(w.leibniz_apply(d, f, g))? != ok(w.apply_operator(&Element::letter(d), &fg))? {
                    return fail(format!("{}({} * {})", w.alphabet().name(d), w.render(f), w.render(g)));
                }
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} monomial pairs"))
}

fn eigenfunctions() -> Outcome {
    let w = WeylAlgebra::u2h();
    let lambda: [AlphaPoly; 4] = std::array::from_fn(AlphaPoly::var);
    for d in ["dtt", "dx", "dy", "dz"] {
        if !ok(w.eigen_check(ok(w.letter(d))?, &lambda, 4))?.holds {
            return fail(d);
        }
    }
    Ok("dtt, dx, dy, dz to degree 4".into())
}

fn de_rham() -> Outcome {
    let w = WeylAlgebra::u2h();
    let monos = coordinate_monomials(&w, 4);
    for f in &monos {
        let dd = ok(w.de_rham_d(&ok(w.de_rham_d(&FormElement::function(f.clone())))?))?;
        if !dd.is_zero() {
            return fail(format!("d^2({}) != 0", w.render(f)));
        }
    }
    Ok(format!("{} monomials", monos.len()))
}

fn cayley_hamilton() -> Outcome {
    let w = WeylAlgebra::u2h();
    if !ok(radial::ch_residual(&w))?.is_zero() {
        return fail("nonzero residual");
    }
    for k in 0..=4 {
        let engine = radial::mu_coordinates(&ok(radial::trace_power_engine(&w, k))?);
        if engine != ok(radial::trace_power(k))? {
            return fail(format!("Tr N^{k}"));
        }
    }
    let two = Scalar::from(2);
    let tr1 = radial::mu_coordinates(&CenterElement::t().scale(&two));
    let t2_minus_cas = CenterElement::monomial(2, 0).sub_ref(&CenterElement::cas());
    let tr2 = radial::mu_coordinates(&t2_minus_cas.scale(&two));
    if ok(radial::trace_power(1))? != tr1 || ok(radial::trace_power(2))? != tr2 {
        return fail("low traces");
    }
    Ok("zero residual, traces k <= 4".into())
}

fn pi_matrix() -> Outcome {
    let w = WeylAlgebra::u2h();
    let pi = radial::pi_matrix();
    ok(radial::pi_certify(&w, &pi))?;
    let pi_mu = pi.map(radial::mu_coordinates);
    for l in radial::pi_eigenvalues() {
        if !pi_mu.sub(&Matrix::identity(4).scale(&l)).det().is_zero() {
            return fail(format!("eigenvalue {l}"));
        }
    }
    for p in 0..=4 {
        if ok(radial::matrix_function_ls(&braided_weyl::calculus::uni_power(p)))? != pi.pow(p) {
            return fail(format!("lagrange-sylvester p = {p}"));
        }
    }
    Ok("operator identity, eigenvalues, x^p for p <= 4".into())
}

fn radial_part() -> Outcome {
    let w = WeylAlgebra::u2h();
    for i in 0..4 {
        for p in 0..=4 {
            if ok(radial::delta_on_cas_power(i, p))? != ok(radial::delta_on_cas_power_engine(&w, i, p))? {
                return fail(format!("Delta{i}(Cas^{p})"));
            }
        }
    }
    let lap = ok(w.build_operator(OperatorKind::Laplacian))?;
    if ok(w.apply_operator(&lap, &ok(w.parse("x^2 + y^2 + z^2"))?))? != Element::scalar(Scalar::from(6)) {
        return fail("Delta(Cas) != 6");
    }
    if ok(radial::radial_apply(&CommPoly::var(1)))? != SymmetricMuElement::from(Scalar::from(-24)) {
        return fail("Delta_rad(mu) != -24");
    }
    for row in ok(radial::classical_radial_limit(5))? {
        let p = row.p as i64;
        // -16 mu f'' - 24 f' on mu^p, and d_r^2 + (2/r) d_r on r^(2p) with mu = -4 r^2
        let mut want = CommPoly::<Scalar, 1>::zero();
        if p > 0 {
            want.add_term([row.p - 1], Scalar::from(-16 * p * (p - 1) - 24 * p));
        }
        // both sides as multiples of r^(2p - 2)
        let r_side = Scalar::from(2 * p * (2 * p + 1)) * Scalar::from(-4).powi(p as i32).unwrap();
        let mu_side = want.coeff(&[row.p.saturating_sub(1)]) * Scalar::from(-4).powi(p as i32 - 1).unwrap();
        if row.limit != want || (p > 0 && r_side != mu_side) || !row.radial_r_agrees {
            return fail(format!("classical limit p = {p}"));
        }
    }
    Ok("closed forms p <= 4, Delta(Cas) = 6, Delta_rad(mu) = -24, classical limit p <= 5".into())
}

/// `{A, B}` read off `A*B - B*A = rhs` at h = 1 with derivatives renamed to momenta.
fn bracket_from_rows(rows: &[&str]) -> BTreeMap<(String, String), CommPoly<Scalar, 8>> {
    let rename = |s: &str| s.replace("dtt", "p_t").replace("dx", "p_x").replace("dy", "p_y").replace("dz", "p_z");
    rows.iter()
        .map(|row| {
            let (lhs, rhs) = row.split_once('=').expect("relation");
            let (a, rest) = lhs.trim().split_once('*').expect("product");
            let b = rest.split_whitespace().next().expect("word");
            let rhs = rename(rhs.trim()).replace('h', "1");
            ((rename(a), rename(b)), parse_poly::<8>(&rhs, &FIRST_NAMES).expect("parses"))
        })
        .collect()
}

fn poisson_pencil() -> Outcome {
    let b1 = ok(poisson::bracket_one())?;
    let mut expected = bracket_from_rows(&printed::U2H_ROWS);
    expected.extend(bracket_from_rows(&printed::U2H_COORDS));
    let idx = |n: &str| b1.index(n).expect("name");
    for i in 0..8 {
        for j in i + 1..8 {
            let (a, b) = (FIRST_NAMES[i], FIRST_NAMES[j]);
            let want = expected
                .get(&(a.to_string(), b.to_string()))
                .cloned()
                .or_else(|| expected.get(&(b.to_string(), a.to_string())).map(|p| p.neg()))
                .unwrap_or_else(CommPoly::zero);
            if b1.get(i, j) != want {
                return fail(format!("{{{a}, {b}}}_1 = {}", b1.render_poly(&b1.get(i, j))));
            }
        }
    }
    let half_pt = CommPoly::var(idx("p_t")).scale(&Scalar::ratio(1, 2));
    assert_eq!(b1.get(idx("p_t"), idx("t")), half_pt);
    assert_eq!(b1.get(idx("p_x"), idx("t")), CommPoly::var(idx("p_x")).scale(&Scalar::ratio(1, 2)));

    let b2 = ok(poisson::bracket_two(SecondConvention::default()))?;
    let v = |n: &str| CommPoly::<Scalar, 8>::var(b2.index(n).expect("name"));
    let (l, h, b, c) = (v("l"), v("h"), v("b"), v("c"));
    let hl = h.add(&l);
    let sector: [(&str, &str, CommPoly<Scalar, 8>); 6] = [
        ("h", "b", b.mul(&hl).scale(&Scalar::from(-2))),
        ("h", "c", c.mul(&hl).scale(&Scalar::from(2))),
        ("b", "c", h.mul(&hl).neg()),
        ("l", "h", CommPoly::zero()),
        ("l", "b", CommPoly::zero()),
        ("l", "c", CommPoly::zero()),
    ];
    for (x, y, want) in sector {
        if b2.get(b2.index(x).unwrap(), b2.index(y).unwrap()) != want {
            return fail(format!("{{{x}, {y}}}_2"));
        }
    }
    let zero: PoissonTable<8> = poisson::darboux();
    for (name, t) in [("{,}_0", &zero), ("{,}_1", &b1), ("{,}_2", &b2)] {
        if !t.jacobi_residuals().is_empty() {
            return fail(format!("{name} fails jacobi"));
        }
    }
    if !ok(poisson::compatibility_check(&zero, &b1))? {
        return fail("{,}_0 and {,}_1 not compatible");
    }
    let reports = ok(poisson::second_bracket_report())?;
    let best = reports
        .iter()
        .filter(|r| r.jacobi_failures == 0)
        .max_by_key(|r| r.agreeing())
        .ok_or("no Poisson convention")?;
    if !best.coordinate_sector_exact() {
        return fail("coordinate sector of the best convention");
    }
    Ok(format!(
        "{{,}}_1 exact ({{p_x, t}}_1 = p_x/2 as the compact table implies), coordinate sector exact, jacobi and compatibility hold; \
         convention report over {} conventions, best ({}) agrees on {}/{} entries",
        reports.len(),
        best.convention,
        best.agreeing(),
        best.entries.len()
    ))
}

fn confluence() -> Outcome {
    for id in bundled::TABLE_IDS {
        let t = ok(bundled::table(id))?;
        let reports = check_local_confluence(&t, 3);
        if let Some(r) = reports.first() {
            return fail(format!("{id}: {}", r.render(&t)));
        }
        // resolving an overlap both ways agrees on every degree 3 word
        let rw = Rewriter::new(t.clone());
        let letters: Vec<_> = t.alphabet().letters().collect();
        for &a in &letters {
            for &b in &letters {
                for &c in &letters {
                    let (x, y, z) = (Element::letter(a), Element::letter(b), Element::letter(c));
                    let left = ok(rw.multiply(&ok(rw.multiply(&x, &y))?, &z))?;
                    let right = ok(rw.multiply(&x, &ok(rw.multiply(&y, &z))?))?;
                    if left != right {
                        return fail(format!("{id}: associativity"));
                    }
                }
            }
        }
    }
    Ok(format!("{} bundled tables at degree 3", bundled::TABLE_IDS.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("relation generation", relation_generation),
        ("limits", limits),
        ("permutation rows", permutation_rows),
        ("derivative actions", derivative_actions),
        ("leibniz coproduct", leibniz),
        ("eigenfunctions", eigenfunctions),
        ("de rham", de_rham),
        ("cayley-hamilton", cayley_hamilton),
        ("pi matrix", pi_matrix),
        ("radial part", radial_part),
        ("poisson", poisson_pencil),
        ("confluence", confluence),
    ];
    // Criterion 1 cannot pass: one printed row contradicts the rest of the table.
    let documented = [1];
    let mut unexpected = Vec::new();
    for (n, (name, f)) in criteria.iter().enumerate() {
        let n = n + 1;
        match f() {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail})"),
            Err(why) if documented.contains(&n) => println!("criterion {n:>2} {name}: FAIL (documented: {why})"),
            Err(why) => {
                println!("criterion {n:>2} {name}: FAIL ({why})");
                unexpected.push(n);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("failing criteria: {unexpected:?}");
        std::process::exit(1);
    }
}
