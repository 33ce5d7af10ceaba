use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ncgauge::dga::{differential_d, star, AElement, Deformation};
use ncgauge::ring::rational::int;
use ncgauge::ring::{MultiIndex, PPolynomial, Rational, SymbolTable, ThetaScalar, XPolynomial};
use ncgauge::symbol::SlotSymbol;

const N: usize = 2;

fn coefficient(c: i64, symbolic: bool) -> ThetaScalar {
    let k = ThetaScalar::constant(int(c));
    if symbolic {
        ThetaScalar::symbol(0).scale(&int(c))
    } else {
        k
    }
}

fn terms(max_exp: u32) -> impl Strategy<Value = Vec<(u32, u32, i64, bool)>> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, -4i64..=4, any::<bool>()), 0..5)
}

fn x_poly(max_exp: u32) -> impl Strategy<Value = XPolynomial> {
    terms(max_exp).prop_map(|ts| {
        XPolynomial::from_terms(
            N,
            ts.into_iter()
                .map(|(a, b, c, s)| (MultiIndex::from_slice(&[a, b]), coefficient(c, s))),
        )
    })
}

fn p_poly(max_exp: u32) -> impl Strategy<Value = PPolynomial> {
    terms(max_exp).prop_map(|ts| {
        PPolynomial::from_terms(
            N,
            ts.into_iter()
                .map(|(a, b, c, s)| (MultiIndex::from_slice(&[a, b]), coefficient(c, s))),
        )
    })
}

fn element(max_exp: u32) -> impl Strategy<Value = AElement> {
    (x_poly(max_exp), prop::collection::vec(x_poly(max_exp), N))
        .prop_map(|(a0, xi)| AElement { a0, xi })
}

fn homogeneous(max_exp: u32) -> impl Strategy<Value = AElement> {
    prop_oneof![
        x_poly(max_exp).prop_map(AElement::scalar),
        prop::collection::vec(x_poly(max_exp), N).prop_map(AElement::one_form),
    ]
}

fn theta() -> Deformation {
    let mut table = SymbolTable::new();
    Deformation::symbolic(N, "t", &mut table)
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_agree_with_big_rationals(a in any::<i64>(), b in 1i64.., c in any::<i64>(), d in 1i64..) {
        let x = Rational::new(BigInt::from(a), BigInt::from(b));
        let y = Rational::new(BigInt::from(c), BigInt::from(d));
        let (bx, by) = (big(&x), big(&y));
        prop_assert_eq!(big(&(&x + &y)), &bx + &by);
        prop_assert_eq!(big(&(&x - &y)), &bx - &by);
        prop_assert_eq!(big(&(&x * &y)), &bx * &by);
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        prop_assert_eq!(&(&(&x * &y) * &y.recip()), &x);
        prop_assert_eq!(&(&(&x + &y) - &y), &x);
    }

    #[test]
    fn polynomial_ring_axioms(a in x_poly(3), b in x_poly(3), c in x_poly(3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn dilation_integral_inverts_euler_sum(f in p_poly(4)) {
        let mut sum = PPolynomial::zero(N);
        for i in 0..N {
            sum.add_assign(&PPolynomial::var(N, i).mul(&f.partial(i).unwrap().dilation_integral()));
        }
        let f0 = PPolynomial::constant(N, f.constant_term());
        prop_assert_eq!(f.sub(&f0), sum);
    }

    #[test]
    fn star_is_associative(a in element(2), b in element(2), c in element(2)) {
        let th = theta();
        let left = star(&star(&a, &b, &th).unwrap(), &c, &th).unwrap();
        let right = star(&a, &star(&b, &c, &th).unwrap(), &th).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn d_is_a_derivation(a in homogeneous(3), b in element(3)) {
        let th = theta();
        prop_assert!(differential_d(&differential_d(&b)).is_zero());
        let lhs = differential_d(&star(&a, &b, &th).unwrap());
        let first = star(&differential_d(&a), &b, &th).unwrap();
        let second = star(&a, &differential_d(&b), &th).unwrap();
        let rhs = if a.is_degree_zero() { first.add(&second) } else { first.sub(&second) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn slot_homotopy_identities(phi0 in p_poly(3), phi in prop::collection::vec(p_poly(3), N)) {
        let s = SlotSymbol::new(phi0, phi, 7).unwrap();
        let (d, h, pi) = (SlotSymbol::dual_differential, SlotSymbol::homotopy, SlotSymbol::projector);
        prop_assert_eq!(d(&h(&s)).add(&h(&d(&s))), s.sub(&pi(&s)));
        prop_assert!(h(&h(&s)).is_zero());
        prop_assert!(pi(&h(&s)).is_zero());
        prop_assert!(h(&pi(&s)).is_zero());
        prop_assert_eq!(pi(&pi(&s)), pi(&s));
        prop_assert!(pi(&s).in_z());
    }
}
