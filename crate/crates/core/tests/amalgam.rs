use ga2::algebra::{FieldCtx, Scalar, UniPoly};
use ga2::amalgam::{
    cyclically_reduce, decompose, normalize, parse_normal_form, parse_word, CRStatus, NfLetter, NormalForm, PolyDegree,
    Word,
};
use ga2::generators::{
    compose, jacobian_det, AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap, Letter, Matrix2, PolyMap,
};
use ga2::parse::parse_map_expr;
use ga2::{random, Error};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn q() -> FieldCtx {
    FieldCtx::rationals()
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(q(), n)
}

fn map(t: &str) -> PolyMap {
    parse_map_expr(t, q()).unwrap()
}

fn rep_e(coeffs: &[i64]) -> CosetRepE {
    CosetRepE::new(UniPoly::from_ints(q(), coeffs)).unwrap()
}

#[test]
fn henon_decomposes_into_three_letters() {
    let f = map("(y, -x + y^2 + 1)");
    let w = decompose(&f).unwrap();
    assert_eq!(w.len(), 3);
    assert_eq!(w.to_polymap(), f);
    let expected_b = BasicMap::from_ints(q(), 1, -1, 0, 0, 1).unwrap();
    assert_eq!(w.letters()[0], Letter::Basic(expected_b));
    assert_eq!(w.letters()[1], Letter::from(CosetRepA::new(s(0))));
    assert_eq!(w.letters()[2].to_polymap(), map("(x - y^2, y)"));

    let nf = normalize(&w);
    assert_eq!(nf.length(), 2);
    assert_eq!(nf.poly_degree().unwrap(), PolyDegree(vec![2]));
    assert_eq!(nf.degree(), 2);
    assert_eq!(nf.to_string(), "B 1 -1 0 0 1\nA 0\nE -1");
    assert_eq!(jacobian_det(&f).as_constant(), Some(s(1)));
}

#[test]
fn identity_decomposes_to_empty_word() {
    assert!(decompose(&PolyMap::identity(q())).unwrap().is_empty());
}

#[test]
fn non_automorphisms_rejected() {
    for t in ["(x^3, x + y)", "(x*y, y)", "(x + y^2, y + x^2)", "(x^2 + y, y^3 + x)", "(2*x, 0)"] {
        let err = decompose(&map(t)).unwrap_err();
        assert_eq!(err.kind(), "NotAnAutomorphism", "{t}");
    }
}

#[test]
fn constant_jacobian_is_not_enough_in_positive_characteristic() {
    let f3 = FieldCtx::prime(3).unwrap();
    let f = parse_map_expr("(x + x^3, y)", f3).unwrap();
    assert_eq!(jacobian_det(&f).as_constant(), Some(Scalar::one(f3)));
    assert_eq!(decompose(&f).unwrap_err().kind(), "NotAnAutomorphism");
}

#[test]
fn single_affine_representative() {
    let a = AffineMap::linear(Matrix2::from_ints(q(), [[0, 1], [1, 5]])).unwrap();
    let nf = normalize(&Word::single(a));
    assert!(nf.b().is_identity());
    assert_eq!(nf.letters(), &[NfLetter::A(CosetRepA::new(s(5)))]);
}

#[test]
fn elementary_split() {
    let e = ElementaryMap::new(s(2), s(1), s(0), UniPoly::from_ints(q(), &[1, 1, 0, 1])).unwrap();
    let nf = normalize(&Word::single(e.clone()));
    assert_eq!(*nf.b(), BasicMap::from_ints(q(), 2, 1, 1, 1, 0).unwrap());
    let half = Scalar::from_fraction(q(), &1.into(), &2.into()).unwrap();
    let expected = CosetRepE::new(UniPoly::from_coeffs(q(), vec![s(0), half]).unwrap()).unwrap();
    assert_eq!(nf.letters(), &[NfLetter::E(expected)]);
    assert_eq!(nf.to_polymap(), e.to_polymap());
}

#[test]
fn poly_degree_orders_and_products() {
    let nf = NormalForm::from_parts(
        BasicMap::identity(q()),
        vec![
            NfLetter::E(rep_e(&[1])),
            NfLetter::A(CosetRepA::new(s(0))),
            NfLetter::E(rep_e(&[0, 1])),
            NfLetter::A(CosetRepA::new(s(1))),
            NfLetter::E(rep_e(&[0, 0, 1])),
        ],
    )
    .unwrap();
    assert_eq!(nf.poly_degree().unwrap(), PolyDegree(vec![2, 3, 4]));
    assert_eq!(nf.degree(), 24);
    assert_eq!(nf.to_polymap().degree(), 24);
    assert_eq!(nf.inverse().poly_degree().unwrap(), PolyDegree(vec![4, 3, 2]));
    let basic = NormalForm::from_basic(BasicMap::from_ints(q(), 2, 3, 1, 0, 0).unwrap());
    assert_eq!(basic.length(), 0);
    assert_eq!(basic.degree(), 1);
    assert_eq!(basic.poly_degree(), Err(Error::NoElementaryPart));
    let single = normalize(&Word::single(rep_e(&[0, 1])));
    assert_eq!(single.poly_degree().unwrap(), PolyDegree(vec![3]));
}

#[test]
fn inverse_and_round_trips() {
    let f = map("(y, -x + y^2 + 1)");
    let nf = normalize(&decompose(&f).unwrap());
    let inv = nf.inverse();
    assert_eq!(inv.poly_degree().unwrap(), PolyDegree(vec![2]));
    assert!(compose(&nf.to_polymap(), &inv.to_polymap()).unwrap().is_identity());
    let b = BasicMap::from_ints(q(), 2, -1, 3, 1, 1).unwrap();
    let bn = NormalForm::from_basic(b.clone());
    assert_eq!(*bn.inverse().b(), b.inverse());
    assert!(bn.inverse().is_basic());
    assert!(Word::empty(q()).to_polymap().is_identity());
    let e = Letter::from(rep_e(&[3, 1]));
    let w = Word::new(q(), vec![e.clone(), e.inverse()]).unwrap();
    assert!(w.to_polymap().is_identity());
}

#[test]
fn serialization_round_trip() {
    let mut rng = StdRng::seed_from_u64(7);
    for ctx in [q(), FieldCtx::prime(7).unwrap()] {
        for _ in 0..50 {
            let nf = random::crnf(&mut rng, ctx, 2, 4, 5);
            let text = nf.serialize();
            assert_eq!(parse_normal_form(&text, ctx).unwrap(), nf);
            let w = random::word(&mut rng, ctx, 4, 3, 5);
            let back = parse_word(&w.to_string(), ctx).unwrap();
            assert_eq!(back, w);
        }
    }
    assert!(parse_normal_form("A 1\nA 2", q()).is_err());
    assert!(parse_normal_form("A 1\nB 1 1 0 0 0", q()).is_err());
}

#[test]
fn normalization_is_unique_on_random_words() {
    let mut rng = StdRng::seed_from_u64(11);
    for ctx in [q(), FieldCtx::prime(5).unwrap()] {
        for _ in 0..60 {
            let w = random::word(&mut rng, ctx, 5, 3, 4);
            let f = w.to_polymap();
            let nf = normalize(&w);
            assert_eq!(nf.to_polymap(), f);
            let again = normalize(&decompose(&f).unwrap());
            assert_eq!(again, nf);
            assert_eq!(nf.degree(), f.degree() as u64);
        }
    }
}

#[test]
fn cyclic_reduction_of_conjugated_crnf() {
    // g = e⁻¹ a⁻¹ (a' e') a e with a' e' of length 2
    let a = Letter::Affine(AffineMap::new(Matrix2::from_ints(q(), [[1, 2], [1, 1]]), [s(1), s(0)]).unwrap());
    let e = Letter::Elementary(ElementaryMap::new(s(1), s(2), s(1), UniPoly::from_ints(q(), &[0, 0, 1, 1])).unwrap());
    let a2 = Letter::from(CosetRepA::new(s(3)));
    let e2 = Letter::from(rep_e(&[0, 2]));
    let w = Word::new(q(), vec![e.inverse(), a.inverse(), a2.clone(), e2.clone(), a.clone(), e.clone()]).unwrap();
    let nf = normalize(&w);
    match cyclically_reduce(&nf) {
        CRStatus::CR { conjugator, crnf } => {
            assert_eq!(crnf.length(), 2);
            let back = conjugator.concat(&crnf.to_word()).concat(&conjugator.inverse());
            assert_eq!(back.to_polymap(), nf.to_polymap());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cyclic_reduction_of_basic_and_factor_conjugates() {
    let b = NormalForm::from_basic(BasicMap::from_ints(q(), 1, 2, 3, 4, 5).unwrap());
    assert_eq!(cyclically_reduce(&b), CRStatus::Basic);

    let h = Word::new(q(), vec![Letter::from(CosetRepA::new(s(1))), Letter::from(rep_e(&[1, 1]))]).unwrap();
    let e = Letter::Elementary(ElementaryMap::new(s(-1), s(1), s(0), UniPoly::from_ints(q(), &[0, 0, 0, 2])).unwrap());
    let w = h.concat(&Word::single(e)).concat(&h.inverse());
    let nf = normalize(&w);
    assert_eq!(nf.length() % 2, 1);
    match cyclically_reduce(&nf) {
        CRStatus::InFactorConjugate { conjugator, letter } => {
            let back = conjugator.concat(&Word::single(letter)).concat(&conjugator.inverse());
            assert_eq!(back.to_polymap(), nf.to_polymap());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn power_length_law_on_random_crnfs() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..20 {
        let g = random::crnf(&mut rng, q(), 1, 3, 3);
        for n in -3i64..=3 {
            assert_eq!(g.power(n).length(), n.unsigned_abs() as usize * g.length(), "n={n}");
        }
    }
}
