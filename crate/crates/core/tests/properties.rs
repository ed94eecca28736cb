use braided_weyl::calculus::WeylAlgebra;
use braided_weyl::commpoly::CommPoly;
use braided_weyl::pbw::{Letter, Word};
use braided_weyl::poisson::{self, PoissonTable};
use braided_weyl::{bundled, Element, Field, Ring, Rewriter, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

/// `(a + b q + c h + d i) / (1 + e q^2)`, with `e >= 0` so the denominator never vanishes.
fn scalar() -> impl Strategy<Value = Scalar> {
    (small(), small(), small(), small(), 0i64..=2).prop_map(|(a, b, c, d, e)| {
        let num = Scalar::from(a)
            .add_ref(&Scalar::from(b).mul_ref(&Scalar::q()))
            .add_ref(&Scalar::from(c).mul_ref(&Scalar::hbar()))
            .add_ref(&Scalar::from(d).mul_ref(&Scalar::i()));
        let den = Scalar::one().add_ref(&Scalar::from(e).mul_ref(&Scalar::q().pow_u32(2)));
        num.try_div(&den).expect("nonzero denominator")
    })
}

fn element(n_letters: usize, max_len: usize) -> impl Strategy<Value = Element> {
    let term = (prop::collection::vec(0..n_letters as Letter, 0..=max_len), small());
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(Word::new(w), Scalar::from(c));
        }
        e
    })
}

fn table_id() -> impl Strategy<Value = &'static str> {
    prop::sample::select(bundled::TABLE_IDS.to_vec())
}

fn letters(id: &str) -> usize {
    bundled::table(id).expect("bundled").alphabet().len()
}

/// A table together with elements over its alphabet.
fn table_with<const K: usize>(max_len: usize) -> impl Strategy<Value = (&'static str, [Element; K])> {
    table_id().prop_flat_map(move |id| (Just(id), prop::array::uniform::<_, K>(element(letters(id), max_len))))
}

fn rewriter(id: &str) -> Rewriter {
    Rewriter::new(bundled::table(id).expect("bundled"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.try_inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_render_parse(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn normal_form_idempotent_and_linear((id, [a, b]) in table_with::<2>(3), k in small()) {
        let rw = rewriter(id);
        let na = rw.normal_form(&a).unwrap();
        prop_assert!(na.is_normal());
        prop_assert_eq!(&rw.normal_form(&na).unwrap(), &na);
        let nb = rw.normal_form(&b).unwrap();
        let k = Scalar::from(k);
        let combo = rw.normal_form(&a.scale(&k).add(&b)).unwrap();
        prop_assert_eq!(combo, na.scale(&k).add(&nb));
    }

    #[test]
    fn multiply_associative((id, [a, b, c]) in table_with::<3>(2)) {
        let rw = rewriter(id);
        let left = rw.multiply(&rw.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = rw.multiply(&a, &rw.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn element_render_parse((id, [a]) in table_with::<1>(3)) {
        let w = WeylAlgebra::new(bundled::table(id).unwrap());
        let na = w.normal_form(&a).unwrap();
        let back = w.parse(&w.render(&na)).unwrap();
        prop_assert_eq!(w.normal_form(&back).unwrap(), na);
    }

    #[test]
    fn poisson_antisymmetry_and_leibniz(f in poly8(), g in poly8(), h in poly8()) {
        for t in [poisson::darboux(), poisson::bracket_one().unwrap()] {
            check_bracket(&t, &f, &g, &h)?;
        }
    }
}

fn poly8() -> impl Strategy<Value = CommPoly<Scalar, 8>> {
    let term = (prop::array::uniform8(0u32..=1), small());
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut p = CommPoly::zero();
        for (e, c) in terms {
            p.add_term(e, Scalar::from(c));
        }
        p
    })
}

fn check_bracket(
    t: &PoissonTable<8>,
    f: &CommPoly<Scalar, 8>,
    g: &CommPoly<Scalar, 8>,
    h: &CommPoly<Scalar, 8>,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(t.bracket(f, g), t.bracket(g, f).neg());
    let lhs = t.bracket(f, &g.mul(h));
    let rhs = t.bracket(f, g).mul(h).add(&g.mul(&t.bracket(f, h)));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn graded_dimensions_are_classical() {
    for id in bundled::TABLE_IDS {
        let rw = rewriter(id);
        let alpha = rw.table().alphabet().clone();
        for sort in [braided_weyl::pbw::Sort::Coordinate, braided_weyl::pbw::Sort::Derivative] {
            let letters = alpha.letters_of(sort);
            if letters.is_empty() {
                continue;
            }
            for d in 0..=4 {
                let want = binomial(d + letters.len() - 1, letters.len() - 1);
                assert_eq!(rw.graded_dimension(&letters, d).unwrap(), want, "{id} {sort:?} degree {d}");
            }
        }
    }
}
