use ga2::algebra::{FieldCtx, Scalar, UniPoly};
use ga2::amalgam::{decompose, normalize, NfLetter, NormalForm, Word};
use ga2::conjugacy::{linearize_involution, LinearInvolution};
use ga2::generators::{AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap, Matrix2, PolyMap};
use ga2::parse::{parse_map_expr, parse_scalar};
use ga2::symmetry::{
    build_reversible_involutory, build_reversible_order4, classify_reversing_group, fixed_point_spectrum_check,
    involutory_symmetry_of_crnf, is_reversor, is_symmetry, parse_certificate, reversibility_necessary, reversor_order,
    symmetry_nf_check, Certificate, Certificates, GroupStructureTag, InvolutoryForm, InvolutoryParams, Order4Params,
    ReversorWitness, SymWitness,
};
use ga2::{random, Error};
use rand::rngs::StdRng;
use rand::SeedableRng;

mod common;

use common::{cat, commutes_as_maps, reverses_as_maps, same_map, word_det};

fn q() -> FieldCtx {
    FieldCtx::rationals()
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(q(), n)
}

fn map(text: &str) -> PolyMap {
    parse_map_expr(text, q()).unwrap()
}

fn map_in(text: &str, ctx: FieldCtx) -> PolyMap {
    parse_map_expr(text, ctx).unwrap()
}

/// `maps[0] ∘ maps[1] ∘ …` by dense composition.
fn chain(maps: &[&PolyMap]) -> PolyMap {
    let mut acc = PolyMap::identity(maps[0].ctx());
    for m in maps {
        acc = acc.compose(m).unwrap();
    }
    acc
}

fn nf(f: &PolyMap) -> NormalForm {
    normalize(&decompose(f).unwrap())
}

fn odd_crnf(polys: &[&[i64]], b: BasicMap) -> NormalForm {
    let mut letters = Vec::new();
    for (i, c) in polys.iter().enumerate() {
        letters.push(NfLetter::A(CosetRepA::new(s(i as i64 + 1))));
        letters.push(NfLetter::E(CosetRepE::new(UniPoly::from_ints(q(), c)).unwrap()));
    }
    NormalForm::from_parts(b, letters).unwrap()
}

fn crnf_with_pd(degs: &[usize]) -> NormalForm {
    let mut letters = Vec::new();
    for (i, &d) in degs.iter().enumerate() {
        letters.push(NfLetter::A(CosetRepA::new(s(i as i64))));
        let mut coeffs = vec![0; d - 1];
        coeffs[d - 2] = 1;
        letters.push(NfLetter::E(CosetRepE::new(UniPoly::from_ints(q(), &coeffs)).unwrap()));
    }
    NormalForm::from_parts(BasicMap::identity(q()), letters).unwrap()
}

fn swap_reversible(e: &str) -> (PolyMap, PolyMap) {
    let e = map(e);
    let t = map("(y, x)");
    let e_inv = decompose(&e).unwrap().inverse().to_polymap();
    (chain(&[&e, &t, &e_inv, &t]), t)
}

#[test]
fn is_symmetry_examples() {
    let i = map("(-x, -y)");
    assert!(is_symmetry(&map("(y, x + y^3)"), &i).unwrap());
    assert!(!is_symmetry(&map("(y, x + y^2)"), &i).unwrap());
    let f = map("(y, -x + y^2 + 1)");
    assert!(is_symmetry(&f, &f).unwrap());
    assert!(matches!(is_symmetry(&f, &map("(x^3, x + y)")), Err(Error::NotAnAutomorphism(_))));
}

#[test]
fn is_reversor_examples() {
    let (f, t) = swap_reversible("(x + y^3, y)");
    assert!(is_reversor(&f, &t).unwrap());
    let r0 = map("(-y, x)");
    let e = map("(x + y^3, y)");
    let e_inv = map("(x - y^3, y)");
    let g = chain(&[&r0, &e, &r0, &e_inv]);
    assert!(is_reversor(&g, &r0).unwrap());
    assert!(!is_reversor(&map("(y, x + y^3)"), &PolyMap::identity(q())).unwrap());
}

#[test]
fn involutory_symmetry_examples() {
    let g = nf(&map("(y, x + y^3)"));
    assert_eq!(involutory_symmetry_of_crnf(&g).unwrap(), Some(SymWitness { u: s(0), v: s(0) }));
    assert_eq!(involutory_symmetry_of_crnf(&nf(&map("(y, x + y^2)"))).unwrap(), None);

    let t = map("(x + 1, y + 2)");
    let t_inv = map("(x - 1, y - 2)");
    let moved = nf(&chain(&[&t, &map("(y, x + y^3 - y)"), &t_inv]));
    let w = involutory_symmetry_of_crnf(&moved).unwrap().unwrap();
    assert_eq!(w, SymWitness { u: s(2), v: s(4) });
    assert!(commutes_as_maps(&moved.to_word(), &w.to_word()));
}

#[test]
fn involutory_symmetry_errors() {
    let single = normalize(&Word::single(CosetRepA::new(s(1))));
    assert_eq!(involutory_symmetry_of_crnf(&single), Err(Error::NotCyclicallyReduced));
    let f2 = FieldCtx::prime(2).unwrap();
    let g = nf(&map_in("(y, x + y^3)", f2));
    assert_eq!(involutory_symmetry_of_crnf(&g), Err(Error::CharacteristicTwo));
}

#[test]
fn translated_symmetric_forms_recover_the_moved_centre() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let letters = random::order4_params(&mut rng, q(), 2, 5, 3).letters;
        let mut full = letters.clone();
        full.push(NfLetter::A(random::rep_a(&mut rng, q(), 3)));
        let alpha = random::nonzero_scalar(&mut rng, q(), 3);
        let beta = random::nonzero_scalar(&mut rng, q(), 3);
        let gamma = random::scalar(&mut rng, q(), 3);
        let b = BasicMap::new(alpha, beta, gamma, s(0), s(0)).unwrap();
        let g = NormalForm::from_parts(b, full).unwrap();
        assert!(symmetry_nf_check(&g).unwrap());
        assert_eq!(involutory_symmetry_of_crnf(&g).unwrap(), Some(SymWitness { u: s(0), v: s(0) }));

        let [a, c] = random::point(&mut rng, q(), 4);
        let t = Word::single(AffineMap::translation(a.clone(), c.clone()).unwrap());
        let moved = normalize(&t.concat(&g.to_word()).concat(&t.inverse()));
        let w = involutory_symmetry_of_crnf(&moved).unwrap().expect("moved witness");
        assert_eq!(w, SymWitness { u: &a + &a, v: &c + &c });
        assert!(commutes_as_maps(&moved.to_word(), &w.to_word()));
    }
}

#[test]
fn generic_forms_have_no_point_reflection() {
    let mut rng = StdRng::seed_from_u64(6);
    for ctx in [q(), FieldCtx::prime(7).unwrap()] {
        for _ in 0..30 {
            let g = random::crnf(&mut rng, ctx, 2, 4, 3);
            if let Some(w) = involutory_symmetry_of_crnf(&g).unwrap() {
                assert!(commutes_as_maps(&g.to_word(), &w.to_word()));
            }
        }
    }
    let mut letters = vec![NfLetter::E(CosetRepE::new(UniPoly::from_ints(q(), &[0, 1])).unwrap())];
    letters.push(NfLetter::A(CosetRepA::new(s(0))));
    letters.push(NfLetter::E(CosetRepE::new(UniPoly::from_ints(q(), &[1])).unwrap()));
    letters.push(NfLetter::A(CosetRepA::new(s(1))));
    let g = NormalForm::from_parts(BasicMap::identity(q()), letters).unwrap();
    assert_eq!(involutory_symmetry_of_crnf(&g).unwrap(), None);
}

#[test]
fn symmetry_nf_check_examples() {
    let lin = BasicMap::from_ints(q(), 2, -1, 3, 0, 0).unwrap();
    assert!(symmetry_nf_check(&odd_crnf(&[&[0, 1], &[0, 0, 0, 1]], lin)).unwrap());
    assert!(!symmetry_nf_check(&nf(&map("(y, -x + y^2 + 1)"))).unwrap());
    let moved = BasicMap::from_ints(q(), 1, 1, 0, 1, 0).unwrap();
    assert!(!symmetry_nf_check(&odd_crnf(&[&[0, 1]], moved)).unwrap());
    let even_term = odd_crnf(&[&[1, 1]], BasicMap::identity(q()));
    assert!(!symmetry_nf_check(&even_term).unwrap());
}

#[test]
fn reversibility_necessary_examples() {
    let g234 = crnf_with_pd(&[2, 3, 4]);
    assert!(!reversibility_necessary(&g234).unwrap());
    assert_eq!(g234.degree(), 24);
    assert!(reversibility_necessary(&crnf_with_pd(&[2, 3, 2, 3])).unwrap());
    assert!(reversibility_necessary(&nf(&map("(y, -x + y^2 + 1)"))).unwrap());
    let scaled = nf(&map("(y, 2*x + y^2)"));
    assert!(!reversibility_necessary(&scaled).unwrap());
}

fn e_letter(c: &[i64]) -> NfLetter {
    NfLetter::E(CosetRepE::new(UniPoly::from_ints(q(), c)).unwrap())
}

#[test]
fn swap_form_single_letter() {
    let params = InvolutoryParams {
        form: InvolutoryForm::Swap,
        b: BasicMap::identity(q()),
        letters: vec![e_letter(&[0, 1])],
        centre: None,
        outer: None,
    };
    let (f, rev) = build_reversible_involutory(&params).unwrap();
    let (expected, t) = swap_reversible("(x + y^3, y)");
    assert_eq!(f.to_polymap(), expected);
    assert_eq!(rev.order, 2);
    assert_eq!(rev.r.to_polymap(), t);
    assert!(is_reversor(&expected, &t).unwrap());
    assert_eq!(reversor_order(&expected, &t, 16).unwrap(), 2);
}

#[test]
fn two_elementary_reflections_give_determinant_one() {
    let ie = |c: &[i64]| ElementaryMap::new(s(-1), s(-1), s(0), UniPoly::from_ints(q(), c)).unwrap();
    let params = InvolutoryParams {
        form: InvolutoryForm::ElementaryBoth,
        b: BasicMap::identity(q()),
        letters: vec![NfLetter::A(CosetRepA::new(s(1))), e_letter(&[1]), NfLetter::A(CosetRepA::new(s(0)))],
        centre: Some(ie(&[0, 0, 1])),
        outer: Some(ie(&[1, 0, 2])),
    };
    let (f, rev) = build_reversible_involutory(&params).unwrap();
    assert_eq!(f.to_polymap().jacobian_det().as_constant(), Some(s(1)));
    assert!(reverses_as_maps(&f.to_word(), &rev.r.to_word()));
    assert_eq!(f.poly_degree().unwrap().0, vec![2, 2, 2, 2]);
}

#[test]
fn builder_rejects_bad_letters() {
    let base = InvolutoryParams {
        form: InvolutoryForm::ElementaryCentre,
        b: BasicMap::identity(q()),
        letters: vec![e_letter(&[0, 1]), NfLetter::A(CosetRepA::new(s(2)))],
        centre: Some(ElementaryMap::new(s(1), s(1), s(0), UniPoly::from_ints(q(), &[0, 0, 1])).unwrap()),
        outer: None,
    };
    assert!(matches!(build_reversible_involutory(&base), Err(Error::InvalidLetters(_))));
    let mut wrong_end = base.clone();
    wrong_end.centre = Some(ElementaryMap::new(s(-1), s(1), s(0), UniPoly::from_ints(q(), &[0, 0, 1])).unwrap());
    assert!(build_reversible_involutory(&wrong_end).is_ok());
    wrong_end.letters.pop();
    assert!(matches!(build_reversible_involutory(&wrong_end), Err(Error::InvalidLetters(_))));
    let mut basic_centre = base.clone();
    basic_centre.centre = Some(ElementaryMap::new(s(-1), s(1), s(0), UniPoly::from_ints(q(), &[0, 1])).unwrap());
    assert!(matches!(build_reversible_involutory(&basic_centre), Err(Error::InvalidLetters(_))));
    let mut not_alternating = base;
    not_alternating.letters.insert(0, e_letter(&[1]));
    assert!(matches!(build_reversible_involutory(&not_alternating), Err(Error::InvalidLetters(_))));
}

#[test]
fn order4_example_matches_rotation_form() {
    let params = Order4Params { letters: vec![e_letter(&[0, 1])], alpha: s(0), gamma: s(1) };
    let (f, rev) = build_reversible_order4(&params).unwrap();
    let r0 = map("(-y, x)");
    let e = map("(x + y^3, y)");
    let e_inv = map("(x - y^3, y)");
    assert_eq!(f.to_polymap(), chain(&[&e, &r0, &e_inv, &r0]));
    assert_eq!(rev.order, 4);
    assert_eq!(rev.r.to_polymap(), map("(y, -x)"));
    assert_eq!(reversor_order(&f.to_polymap(), &rev.r.to_polymap(), 16).unwrap(), 4);
    assert!(reverses_as_maps(&f.to_word(), &rev.r.to_word()));
}

#[test]
fn order4_palindrome_of_odd_degrees() {
    let letters = vec![e_letter(&[0, 0, 0, 1]), NfLetter::A(CosetRepA::new(s(1))), e_letter(&[0, 1])];
    let (f, _) = build_reversible_order4(&Order4Params { letters, alpha: s(1), gamma: s(3) }).unwrap();
    assert_eq!(f.poly_degree().unwrap().0, vec![5, 3, 3, 5]);
    assert_eq!(word_det(&f.to_word()), s(1));
}

#[test]
fn order4_errors() {
    let ok = Order4Params { letters: vec![e_letter(&[0, 1])], alpha: s(0), gamma: s(1) };
    let f5 = FieldCtx::prime(5).unwrap();
    let in_f5 = Order4Params {
        letters: vec![NfLetter::E(CosetRepE::new(UniPoly::from_ints(f5, &[0, 1])).unwrap())],
        alpha: Scalar::zero(f5),
        gamma: Scalar::one(f5),
    };
    assert_eq!(build_reversible_order4(&in_f5), Err(Error::FourthRootPresent));
    let f7 = FieldCtx::prime(7).unwrap();
    let in_f7 = Order4Params {
        letters: vec![NfLetter::E(CosetRepE::new(UniPoly::from_ints(f7, &[0, 1])).unwrap())],
        alpha: Scalar::zero(f7),
        gamma: Scalar::one(f7),
    };
    assert!(build_reversible_order4(&in_f7).is_ok());
    let even = Order4Params { letters: vec![e_letter(&[1])], ..ok.clone() };
    assert!(matches!(build_reversible_order4(&even), Err(Error::EvenPolynomial(_))));
    let flat = Order4Params { gamma: s(0), ..ok };
    assert_eq!(build_reversible_order4(&flat), Err(Error::ZeroGamma));
}

fn check_involutory_output(f: &NormalForm, rev: &ReversorWitness) {
    let fw = f.to_word();
    let w = rev.r.to_word();
    assert!(reverses_as_maps(&fw, &w));
    assert!(reversibility_necessary(f).unwrap());
    // f = V ∘ W⁻¹ with V = f ∘ W, and V² = W²
    let v = normalize(&fw.concat(&w));
    assert_eq!(v.compose(&v).unwrap(), rev.r.compose(&rev.r).unwrap());
    assert!(reverses_as_maps(&fw, &v.to_word()));
    // two reversors compose to a symmetry
    assert!(commutes_as_maps(&fw, &v.to_word().concat(&w)));
    assert!(reverses_as_maps(&f.inverse().to_word(), &w));
    assert!(reverses_as_maps(&fw, &w.inverse()));
}

#[test]
fn random_involutory_constructions() {
    let mut rng = StdRng::seed_from_u64(8);
    // over F_7 the oracle expands the maps, so the instances stay small
    for (ctx, pairs, max_deg, count) in [(q(), 1, 3, 25), (FieldCtx::prime(7).unwrap(), 0, 2, 10)] {
        for _ in 0..count {
            let params = random::involutory_params(&mut rng, ctx, pairs, max_deg, 2);
            let (f, rev) = build_reversible_involutory(&params).unwrap();
            assert_eq!(rev.order, 2);
            check_involutory_output(&f, &rev);
            let pd = f.poly_degree().unwrap();
            assert!(pd.reversed().is_cyclic_shift_of(&pd));
        }
    }
}

#[test]
fn random_order4_constructions() {
    let mut rng = StdRng::seed_from_u64(9);
    for (ctx, pairs, deg) in [(q(), 1, 5), (FieldCtx::prime(11).unwrap(), 0, 3)] {
        for _ in 0..20 {
            let params = random::order4_params(&mut rng, ctx, pairs, deg, 2);
            let (f, rev) = build_reversible_order4(&params).unwrap();
            let fw = f.to_word();
            let w = rev.r.to_word();
            assert!(reverses_as_maps(&fw, &w));
            assert!(word_det(&fw).is_one());
            let pd = f.poly_degree().unwrap().0;
            assert!(pd.iter().all(|n| n % 2 == 1 && *n >= 3));
            let mut rev_pd = pd.clone();
            rev_pd.reverse();
            assert_eq!(pd, rev_pd);
            // V = f ∘ W has V² = W², and both squares are I-class involutions
            let v = normalize(&fw.concat(&w));
            let v2 = v.compose(&v).unwrap();
            assert_eq!(v2, rev.r.compose(&rev.r).unwrap());
            let (h, class) = linearize_involution(&v2.to_polymap()).unwrap();
            assert_eq!(class, LinearInvolution::I);
            let i_word = decompose(&LinearInvolution::I.to_polymap(ctx)).unwrap();
            assert!(same_map(&cat(&[&h, &v2.to_word(), &h.inverse()]), &i_word));
            assert!(commutes_as_maps(&fw, &v2.to_word()));
            assert!(reversibility_necessary(&f).unwrap());
        }
    }
}

#[test]
fn reversor_order_rejects_non_reversors() {
    let f = map("(y, x + y^3 + y^2)");
    let i = map("(-x, -y)");
    assert_eq!(reversor_order(&f, &i, 16), Err(Error::ReversorCheckFailed));
    let (g, t) = swap_reversible("(x + y^3, y)");
    assert_eq!(reversor_order(&g, &t, 1), Err(Error::CapExceeded(1)));
}

#[test]
fn fixed_point_spectrum_examples() {
    let (f, t) = swap_reversible("(x + y^3, y)");
    let origin = (s(0), s(0));
    assert!(fixed_point_spectrum_check(&f, &t, &origin).unwrap());
    assert_eq!(fixed_point_spectrum_check(&f, &f, &origin), Err(Error::ReversorCheckFailed));
    assert_eq!(fixed_point_spectrum_check(&f, &t, &(s(1), s(0))), Err(Error::NotFixedPoint));

    let half = parse_scalar("1/2", q()).unwrap();
    let m = AffineMap::linear(Matrix2::new(s(2), s(0), s(0), half).unwrap()).unwrap().to_polymap();
    assert!(fixed_point_spectrum_check(&m, &map("(y, x)"), &origin).unwrap());
}

#[test]
fn spectrum_holds_at_fixed_points_of_constructions() {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..10 {
        let params = random::order4_params(&mut rng, q(), 0, 3, 2);
        let (f, rev) = build_reversible_order4(&params).unwrap();
        // h fixes the origin and commutes with −1, so the origin is fixed
        let fm = f.to_polymap();
        let origin = (s(0), s(0));
        if fm.apply(&origin).unwrap() == origin {
            assert!(fixed_point_spectrum_check(&fm, &rev.r.to_polymap(), &origin).unwrap());
        }
    }
}

#[test]
fn classify_examples() {
    let (f, rev) =
        build_reversible_order4(&Order4Params { letters: vec![e_letter(&[0, 1])], alpha: s(0), gamma: s(1) }).unwrap();
    let only4 = Certificates { sym: None, revs: vec![rev.clone()] };
    assert_eq!(classify_reversing_group(&f, &only4).unwrap(), GroupStructureTag::CinfRtimesC4);

    let (g, t) = swap_reversible("(x + y^2, y)");
    let g = nf(&g);
    assert_eq!(involutory_symmetry_of_crnf(&g).unwrap(), None);
    let t_rev = ReversorWitness { r: nf(&t), order: 2 };
    let dinf = Certificates { sym: None, revs: vec![t_rev.clone()] };
    assert_eq!(classify_reversing_group(&g, &dinf).unwrap(), GroupStructureTag::Dinf);

    assert_eq!(
        classify_reversing_group(&g, &Certificates::default()).unwrap(),
        GroupStructureTag::UnknownOrIrreversible
    );
    let g234 = crnf_with_pd(&[2, 3, 4]);
    assert_eq!(classify_reversing_group(&g234, &Certificates::default()).unwrap(), GroupStructureTag::Cinf);

    let odd = nf(&map("(y, x + y^3)"));
    let sym = Certificates { sym: Some(SymWitness { u: s(0), v: s(0) }), revs: vec![] };
    assert_eq!(classify_reversing_group(&odd, &sym).unwrap(), GroupStructureTag::C2xCinf);

    let (h, t) = swap_reversible("(x + y^3, y)");
    let h = nf(&h);
    let both = Certificates {
        sym: Some(SymWitness { u: s(0), v: s(0) }),
        revs: vec![ReversorWitness { r: nf(&t), order: 2 }],
    };
    assert_eq!(classify_reversing_group(&h, &both).unwrap(), GroupStructureTag::CinfxC2RtimesC2);
}

#[test]
fn classify_rejects_bad_certificates() {
    let (g, t) = swap_reversible("(x + y^2, y)");
    let g = nf(&g);
    let wrong_order = Certificates { sym: None, revs: vec![ReversorWitness { r: nf(&t), order: 4 }] };
    assert!(matches!(classify_reversing_group(&g, &wrong_order), Err(Error::InconsistentCertificates(_))));
    let bad_sym = Certificates { sym: Some(SymWitness { u: s(0), v: s(0) }), revs: vec![] };
    assert!(matches!(classify_reversing_group(&g, &bad_sym), Err(Error::InconsistentCertificates(_))));
    let not_rev = Certificates { sym: None, revs: vec![ReversorWitness { r: nf(&map("(-x, -y)")), order: 2 }] };
    assert!(matches!(classify_reversing_group(&g, &not_rev), Err(Error::InconsistentCertificates(_))));
    let f7 = FieldCtx::prime(7).unwrap();
    let g7 = nf(&map_in("(y, x + y^3)", f7));
    assert_eq!(classify_reversing_group(&g7, &Certificates::default()), Err(Error::RationalsRequired));
}

#[test]
fn certificates_round_trip() {
    let (_, rev) =
        build_reversible_order4(&Order4Params { letters: vec![e_letter(&[0, 1])], alpha: s(2), gamma: s(3) }).unwrap();
    let certs = [
        Certificate::Sym(SymWitness { u: parse_scalar("-3/2", q()).unwrap(), v: s(4) }),
        Certificate::Rev(rev),
        Certificate::Group(GroupStructureTag::CinfxC2RtimesC2),
    ];
    for c in certs {
        let text = c.to_string();
        assert_eq!(parse_certificate(&text, q()).unwrap(), c, "{text}");
    }
    assert_eq!(Certificate::Group(GroupStructureTag::Dinf).to_string(), "GROUP tag=Dinf");
    assert!(SymWitness { u: s(1), v: s(2) }.to_string().starts_with("SYM u=1 v=2"));
}
