//! The three brackets {,}₀, {,}₁, {,}₂ on the symmetric algebra of
//! coordinates and momenta, and the convention report for {,}₂.

use std::fmt;
use std::sync::OnceLock;

use super::{parse_poly, PoissonTable, Scheme};
use crate::bundled;
use crate::commpoly::CommPoly;
use crate::error::Result;
use crate::expr::s;
use crate::scalar::Scalar;
use crate::{Element, Rewriter};

type P8 = CommPoly<Scalar, 8>;

pub const FIRST_NAMES: [&str; 8] = ["t", "x", "y", "z", "p_t", "p_x", "p_y", "p_z"];
pub const SECOND_NAMES: [&str; 8] = ["l", "h", "b", "c", "p_l", "p_h", "p_b", "p_c"];

fn var(k: usize) -> P8 {
    CommPoly::var(k)
}

fn table_from_rows(names: &[&str], rows: &[(&str, &str, &str)]) -> PoissonTable<8> {
    let mut t = PoissonTable::new(names).expect("eight names");
    for (u, v, src) in rows {
        let p = parse_poly::<8>(src, names).expect("built-in bracket");
        t.set(t.index(u).expect("name"), t.index(v).expect("name"), p);
    }
    t
}

/// `{p_v, v}₀ = 1` on `t, x, y, z`.
pub fn darboux() -> PoissonTable<8> {
    let mut t = PoissonTable::new(&FIRST_NAMES).expect("eight names");
    for k in 0..4 {
        t.set(k + 4, k, P8::one());
    }
    t
}

/// {,}₁: the ℏ-linear part of the `u2h` table, with `dtt ↦ p_t`.
pub fn bracket_one() -> Result<PoissonTable<8>> {
    let table = bundled::table("u2h")?;
    let gens: Vec<Element> = table.alphabet().letters().map(Element::letter).collect();
    let id: [P8; 8] = std::array::from_fn(var);
    PoissonTable::from_table(&Rewriter::new(table), Scheme::HbarLinear, &FIRST_NAMES, &gens, &id)
}

/// {,}₁ as printed: the rules of `u2h` at `ℏ = 1`. The text lists
/// `{p_x, t}₁ = p_t/2`; the rule `dx·t = t·dx + (ℏ/2)·dx` gives `p_x/2`, used here.
pub fn bracket_one_printed() -> PoissonTable<8> {
    let rows = [
        ("x", "y", "z"),
        ("y", "z", "x"),
        ("z", "x", "y"),
        ("p_t", "t", "p_t/2"),
        ("p_x", "t", "p_x/2"),
        ("p_y", "t", "p_y/2"),
        ("p_z", "t", "p_z/2"),
        ("p_t", "x", "-p_x/2"),
        ("p_t", "y", "-p_y/2"),
        ("p_t", "z", "-p_z/2"),
        ("p_x", "x", "p_t/2"),
        ("p_x", "y", "p_z/2"),
        ("p_x", "z", "-p_y/2"),
        ("p_y", "x", "-p_z/2"),
        ("p_y", "y", "p_t/2"),
        ("p_y", "z", "p_x/2"),
        ("p_z", "x", "p_y/2"),
        ("p_z", "y", "-p_x/2"),
        ("p_z", "z", "p_t/2"),
    ];
    table_from_rows(&FIRST_NAMES, &rows)
}

/// How `p_l, p_h` relate to `∂_a, ∂_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentumNormalization {
    /// `p_l = (∂_a + ∂_d)/2`, `p_h = (∂_a − ∂_d)/2`, dual to `l = a + d`, `h = a − d`.
    Half,
    /// `p_l = ∂_a + ∂_d`, `p_h = ∂_a − ∂_d`.
    Full,
}

/// What to do with the degree-zero part of the extracted {,}₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantTerms {
    /// Keep the constants the (q − 1) coefficient produces.
    Raw,
    /// Keep only the quadratic part.
    Dropped,
    /// Quadratic part plus twice the canonical bracket `{v, p_v} = 1` in `a, b, c, d`.
    Canonical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecondConvention {
    pub normalization: MomentumNormalization,
    pub constants: ConstantTerms,
    /// Replace `p_h` by `−p_h`.
    pub flip_p_h: bool,
    /// Global factor: 1 for the coefficient of `q − 1`, 1/2 for that of `q − q⁻¹`.
    pub half_scale: bool,
}

impl Default for SecondConvention {
    fn default() -> Self {
        SecondConvention {
            normalization: MomentumNormalization::Half,
            constants: ConstantTerms::Canonical,
            flip_p_h: false,
            half_scale: false,
        }
    }
}

impl SecondConvention {
    pub fn all() -> Vec<SecondConvention> {
        let mut out = Vec::new();
        for normalization in [MomentumNormalization::Half, MomentumNormalization::Full] {
            for constants in [ConstantTerms::Raw, ConstantTerms::Dropped, ConstantTerms::Canonical] {
                for flip_p_h in [false, true] {
                    for half_scale in [false, true] {
                        out.push(SecondConvention { normalization, constants, flip_p_h, half_scale });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SecondConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let norm = match self.normalization {
            MomentumNormalization::Half => "p_l=(da+dd)/2",
            MomentumNormalization::Full => "p_l=da+dd",
        };
        let consts = match self.constants {
            ConstantTerms::Raw => "raw constants",
            ConstantTerms::Dropped => "constants dropped",
            ConstantTerms::Canonical => "constants 2*canonical",
        };
        write!(f, "{norm}, {consts}, p_h {}, scale {}", if self.flip_p_h { "-" } else { "+" }, if self.half_scale { "1/2" } else { "1" })
    }
}

/// Raw (q − 1) coefficients of the `weyl-m` commutators, half normalization.
fn raw_second() -> Result<&'static PoissonTable<8>> {
    static RAW: OnceLock<PoissonTable<8>> = OnceLock::new();
    if let Some(t) = RAW.get() {
        return Ok(t);
    }
    let table = bundled::table("weyl-m")?;
    let alpha = table.alphabet().clone();
    let p = |src: &str| Element::parse(src, &alpha);
    let gens = ["a + d", "a - d", "b", "c", "(da + dd)/2", "(da - dd)/2", "db", "dc"]
        .into_iter()
        .map(p)
        .collect::<Result<Vec<_>>>()?;
    // a, b, c, d, da, db, dc, dd in terms of l, h, b, c, p_l, p_h, p_b, p_c
    let half = s("1/2");
    let old = [
        var(0).add(&var(1)).scale(&half),
        var(2),
        var(3),
        var(0).sub(&var(1)).scale(&half),
        var(4).add(&var(5)),
        var(6),
        var(7),
        var(4).sub(&var(5)),
    ];
    let t = PoissonTable::from_table(&Rewriter::new(table), Scheme::QLinear, &SECOND_NAMES, &gens, &old)?;
    Ok(RAW.get_or_init(|| t))
}

/// `{v, p_v} = 1` on `a, b, c, d`, written in `l, h, b, c` and the chosen momenta.
pub fn canonical_second(normalization: MomentumNormalization) -> PoissonTable<8> {
    let k = match normalization {
        MomentumNormalization::Half => "1",
        MomentumNormalization::Full => "2",
    };
    table_from_rows(&SECOND_NAMES, &[("l", "p_l", k), ("h", "p_h", k), ("b", "p_b", "1"), ("c", "p_c", "1")])
}

fn homogeneous_part(t: &PoissonTable<8>, degree: u32) -> PoissonTable<8> {
    let mut out = PoissonTable::new(&t.names()).expect("same names");
    for (i, j, p) in t.entries() {
        let mut q = P8::zero();
        for (e, c) in p.terms() {
            if e.iter().sum::<u32>() == degree {
                q.add_term(*e, c.clone());
            }
        }
        out.set(i, j, q);
    }
    out
}

/// {,}₂ extracted from `weyl-m` under `conv`.
pub fn bracket_two(conv: SecondConvention) -> Result<PoissonTable<8>> {
    let mut t = raw_second()?.clone();
    if conv.normalization == MomentumNormalization::Full {
        // p_l' = 2 p_l, p_h' = 2 p_h
        let mut fwd: [P8; 8] = std::array::from_fn(var);
        let mut inv: [P8; 8] = std::array::from_fn(var);
        for k in [4, 5] {
            fwd[k] = var(k).scale(&half_scalar());
            inv[k] = var(k).scale(&Scalar::from(2));
        }
        t = t.linear_change(&SECOND_NAMES, &fwd, &inv);
    }
    t = match conv.constants {
        ConstantTerms::Raw => t,
        ConstantTerms::Dropped => homogeneous_part(&t, 2),
        ConstantTerms::Canonical => {
            homogeneous_part(&t, 2).add(&canonical_second(conv.normalization).scale(&Scalar::from(2)))?
        }
    };
    if conv.flip_p_h {
        let mut m: [P8; 8] = std::array::from_fn(var);
        m[5] = var(5).scale(&Scalar::from(-1));
        t = t.linear_change(&SECOND_NAMES, &m, &m);
    }
    if conv.half_scale {
        t = t.scale(&half_scalar());
    }
    Ok(t)
}

fn half_scalar() -> Scalar {
    Scalar::ratio(1, 2)
}

/// {,}₂ as printed. The second `{l, b}₂ = 0` of the coordinate block is read as `{l, c}₂ = 0`.
pub fn bracket_two_printed() -> PoissonTable<8> {
    table_from_rows(
        &SECOND_NAMES,
        &[
            ("h", "b", "-2*b*(h+l)"),
            ("h", "c", "2*c*(h+l)"),
            ("b", "c", "-h*(h+l)"),
            ("p_h", "p_b", "2*p_b*(p_h-p_l)"),
            ("p_h", "p_c", "-2*p_c*(p_h-p_l)"),
            ("p_b", "p_c", "4*p_h*(p_h-p_l)"),
            ("l", "p_l", "2+l*p_l+h*p_h+b*p_b+c*p_c"),
            ("h", "p_l", "l*p_h+h*p_l+b*p_b-c*p_c"),
            ("b", "p_l", "b*(p_h-p_l)+p_c*(h+l)/2"),
            ("c", "p_l", "c*(p_h+p_l)+p_b*(l-h)/2"),
            ("l", "p_h", "l*p_h+h*p_l-b*p_b+c*p_c"),
            ("h", "p_h", "2+h*p_h+l*p_l+3*b*p_b-c*p_c"),
            ("b", "p_h", "-b*(p_h-p_l)+p_c*(h+l)/2"),
            ("c", "p_h", "c*(p_h+p_l)-l*p_b/2-3*h*p_b/2"),
            ("l", "p_b", "p_b*(h+l)-2*c*(p_h-p_l)"),
            ("h", "p_b", "p_b*(h+l)+2*c*(p_h-p_l)"),
            ("b", "p_b", "2+2*b*p_b+(h+l)*(p_h-p_l)"),
            ("l", "p_c", "p_c*(l-h)+2*b*(p_l+p_h)"),
            ("h", "p_c", "2*b*(p_l-3*p_h)-p_c*(l-h)"),
            ("c", "p_c", "2+2*c*p_c+l*(p_l+p_h)-h*p_l+3*h*p_h"),
        ],
    )
}

/// Extracted and printed value of one generator pair.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryComparison {
    pub pair: (String, String),
    pub extracted: String,
    pub printed: String,
    pub agrees: bool,
}

/// Compares every generator pair of two tables on the same names.
pub fn compare_tables(extracted: &PoissonTable<8>, printed: &PoissonTable<8>) -> Vec<EntryComparison> {
    let names = extracted.names();
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            let (a, b) = (extracted.get(i, j), printed.get(i, j));
            out.push(EntryComparison {
                pair: (names[i].to_string(), names[j].to_string()),
                extracted: extracted.render_poly(&a),
                printed: printed.render_poly(&b),
                agrees: a == b,
            });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ConventionReport {
    pub convention: SecondConvention,
    pub entries: Vec<EntryComparison>,
    /// Generator triples failing Jacobi.
    pub jacobi_failures: usize,
}

impl ConventionReport {
    pub fn agreeing(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees).count()
    }

    /// Pairs of two coordinates or two momenta.
    pub fn pure_sector(&self, momenta: bool) -> impl Iterator<Item = &EntryComparison> {
        self.entries.iter().filter(move |e| e.pair.0.starts_with("p_") == momenta && e.pair.1.starts_with("p_") == momenta)
    }

    pub fn coordinate_sector_exact(&self) -> bool {
        self.pure_sector(false).all(|e| e.agrees)
    }
}

/// One report per convention, against the printed table.
pub fn second_bracket_report() -> Result<Vec<ConventionReport>> {
    let printed = bracket_two_printed();
    SecondConvention::all()
        .into_iter()
        .map(|convention| {
            let t = bracket_two(convention)?;
            Ok(ConventionReport {
                convention,
                entries: compare_tables(&t, &printed),
                jacobi_failures: t.jacobi_residuals().len(),
            })
        })
        .collect()
}

/// The complex change `a = t − iz`, `b = −ix − y`, `c = −ix + y`, `d = t + iz`
/// with dual momenta, taking a bracket on [`SECOND_NAMES`] (half normalization)
/// to one on [`FIRST_NAMES`].
pub fn second_to_compact(t: &PoissonTable<8>) -> PoissonTable<8> {
    let p = |src: &str, names: &[&str]| parse_poly::<8>(src, names).expect("built-in change");
    // l, h, b, c, p_l, p_h, p_b, p_c over t, x, y, z, p_t, p_x, p_y, p_z
    let fwd: [P8; 8] = ["2*t", "-2*i*z", "-i*x - y", "-i*x + y", "p_t/2", "i*p_z/2", "(i*p_x - p_y)/2", "(i*p_x + p_y)/2"]
        .map(|src| p(src, &FIRST_NAMES));
    let inv: [P8; 8] = ["l/2", "i*(b + c)/2", "(c - b)/2", "i*h/2", "2*p_l", "-i*(p_b + p_c)", "p_c - p_b", "-2*i*p_h"]
        .map(|src| p(src, &SECOND_NAMES));
    t.linear_change(&FIRST_NAMES, &fwd, &inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::compatibility_check;

    #[test]
    fn first_bracket_entries() {
        let b1 = bracket_one().unwrap();
        let f = |n: &str| var(FIRST_NAMES.iter().position(|x| *x == n).unwrap());
        assert_eq!(b1.bracket(&f("p_t"), &f("t")), f("p_t").scale(&half_scalar()));
        assert_eq!(b1.bracket(&f("p_x"), &f("t")), f("p_x").scale(&half_scalar()));
        assert_eq!(b1.bracket(&f("x"), &f("y")), f("z"));
        assert_eq!(b1, bracket_one_printed());
    }

    #[test]
    fn pencil_zero_one() {
        let (b0, b1) = (darboux(), bracket_one().unwrap());
        assert!(b0.jacobi_residuals().is_empty());
        assert!(b1.jacobi_residuals().is_empty());
        assert!(compatibility_check(&b0, &b1).unwrap());
        assert!(compatibility_check(&b0, &b0).unwrap());
    }

    #[test]
    fn second_bracket_coordinate_sector() {
        let b2 = bracket_two(SecondConvention::default()).unwrap();
        let n = |k: &str| var(SECOND_NAMES.iter().position(|x| *x == k).unwrap());
        // [h, b] = (q⁻² − 1)(ba + ab): the (q − 1) coefficient is −4ab
        let expect = n("b").mul(&n("h").add(&n("l"))).scale(&Scalar::from(-2));
        assert_eq!(b2.bracket(&n("h"), &n("b")), expect);
        assert!(b2.jacobi_residuals().is_empty());
    }

    #[test]
    fn second_bracket_against_print() {
        let report = compare_tables(&bracket_two(SecondConvention::default()).unwrap(), &bracket_two_printed());
        let off: Vec<_> = report.iter().filter(|e| !e.agrees).map(|e| format!("{},{}", e.pair.0, e.pair.1)).collect();
        assert_eq!(off, ["b,p_l", "b,p_h", "b,p_b"]);
        assert!(!bracket_two_printed().jacobi_residuals().is_empty());
    }

    #[test]
    fn pencil_over_complexification() {
        let b2 = second_to_compact(&bracket_two(SecondConvention::default()).unwrap());
        let (b0, b1) = (darboux(), bracket_one().unwrap());
        assert!(compatibility_check(&b2, &b0).unwrap());
        assert!(compatibility_check(&b2, &b1).unwrap());
        assert!(compatibility_check(&b2, &b0.add(&b1).unwrap()).unwrap());
    }

    #[test]
    fn raw_constants_break_jacobi() {
        let conv = SecondConvention { constants: ConstantTerms::Raw, ..Default::default() };
        assert!(!bracket_two(conv).unwrap().jacobi_residuals().is_empty());
    }

    #[test]
    fn change_to_compact_keeps_darboux() {
        let c = second_to_compact(&canonical_second(MomentumNormalization::Half));
        assert_eq!(c, darboux().scale(&Scalar::from(-1)));
    }
}
