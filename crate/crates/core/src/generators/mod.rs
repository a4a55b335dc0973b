//! Polynomial maps and the generator letters of the plane automorphism group.

mod letters;
mod matrix;
mod polymap;

pub use letters::{
    classify_letter, invert_letter, AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap, Letter, LetterClass,
};
pub use matrix::Matrix2;
pub use polymap::{apply, compose, jacobian_det, PolyMap};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BiPoly, FieldCtx, Scalar, UniPoly};
    use crate::parse::parse_map_expr;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(q(), n)
    }

    fn map(t: &str) -> PolyMap {
        parse_map_expr(t, q()).unwrap()
    }

    #[test]
    fn composition_order() {
        let id = PolyMap::identity(q());
        let f = map("(y, -x + y^2 + 1)");
        assert_eq!(compose(&id, &f).unwrap(), f);
        let t = map("(y, x)");
        assert!(compose(&t, &t).unwrap().is_identity());
        let e = map("(x + y^3, y)");
        assert_eq!(compose(&t, &e).unwrap(), map("(y, x + y^3)"));
        // apply e first, then t: the reverse order gives a different map
        assert_eq!(compose(&e, &t).unwrap(), map("(y + x^3, x)"));
    }

    #[test]
    fn evaluation() {
        let f = map("(y, -x + y^2 + 1)");
        assert_eq!(apply(&f, &(s(0), s(0))).unwrap(), (s(0), s(1)));
        assert_eq!(apply(&f, &(s(1), s(2))).unwrap(), (s(2), s(4)));
        assert_eq!(apply(&PolyMap::identity(q()), &(s(3), s(4))).unwrap(), (s(3), s(4)));
    }

    #[test]
    fn letter_inverses() {
        let a = AffineMap::translation(s(1), s(2)).unwrap();
        assert_eq!(a.inverse(), AffineMap::translation(s(-1), s(-2)).unwrap());
        let e = ElementaryMap::shear(UniPoly::from_ints(q(), &[0, 0, 0, 1]));
        assert_eq!(e.inverse().to_polymap(), map("(x - y^3, y)"));
        let b = BasicMap::from_ints(q(), 2, 1, 0, 3, 0).unwrap();
        let half = Scalar::from_fraction(q(), &1.into(), &2.into()).unwrap();
        let bi = b.inverse();
        assert_eq!(bi.alpha, half);
        assert_eq!(bi.u, Scalar::from_fraction(q(), &(-3).into(), &2.into()).unwrap());
        assert!(b.compose(&bi).is_identity());
    }

    #[test]
    fn jacobians() {
        let f = map("(y, -3*x + y^2 + 5)");
        assert_eq!(jacobian_det(&f).as_constant(), Some(s(3)));
        let g = map("(x^3, x + y)");
        assert_eq!(jacobian_det(&g), BiPoly::x(q()).pow(2).scale(&s(3)));
        assert_eq!(jacobian_det(&PolyMap::identity(q())).as_constant(), Some(s(1)));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_letter(&map("(y, x)")), LetterClass::InI(CosetRepA::new(s(0))));
        let j = CosetRepE::new(UniPoly::from_ints(q(), &[0, 1])).unwrap();
        assert_eq!(classify_letter(&map("(x + y^3, y)")), LetterClass::InJ(j));
        assert_eq!(classify_letter(&map("(y, -x + y^2 + 1)")), LetterClass::None);
        assert!(matches!(classify_letter(&map("(2*x + y + 1, 3*y)")), LetterClass::Basic(_)));
        assert!(matches!(classify_letter(&map("(x + y, x)")), LetterClass::Affine(_)));
        assert!(matches!(classify_letter(&map("(2*x + y^2, y + 1)")), LetterClass::Elementary(_)));
        assert_eq!(classify_letter(&map("(x, y + x^2)")), LetterClass::None);
        assert_eq!(classify_letter(&map("(x + y, x + y)")), LetterClass::None);
        assert_eq!(classify_letter(&map("(x*y, y)")), LetterClass::None);
    }

    #[test]
    fn coset_representatives_fix_origin_with_unit_jacobian() {
        let o = (s(0), s(0));
        for beta in -3..4 {
            let a = CosetRepA::new(s(beta)).to_polymap();
            assert_eq!(jacobian_det(&a).as_constant(), Some(s(-1)));
            assert_eq!(apply(&a, &o).unwrap(), o);
        }
        for c in [vec![1], vec![0, 2], vec![1, -1, 3]] {
            let e = CosetRepE::new(UniPoly::from_ints(q(), &c)).unwrap().to_polymap();
            assert_eq!(jacobian_det(&e).as_constant(), Some(s(1)));
            assert_eq!(apply(&e, &o).unwrap(), o);
        }
    }
}
