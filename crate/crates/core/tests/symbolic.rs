use std::collections::BTreeMap;

use chord_core::enumerate::Enumeration;
use chord_core::symbolic::{
    g_series, gamma_series, FMonomial, FPolynomial, GreenFunction, XSeries,
};
use chord_core::Error;
use num::{BigInt, BigRational, One, Zero};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

#[test]
fn monomial_basics() {
    let m = FMonomial::from_pairs([(0, 2), (1, 1), (3, 0), (1, 1)]);
    assert_eq!(m.exponent(0), 2);
    assert_eq!(m.exponent(1), 2);
    assert_eq!(m.exponent(3), 0);
    assert_eq!(m.degree(), 4);
    assert_eq!(m.to_string(), "f0^2*f1^2");
    assert_eq!(FMonomial::one().to_string(), "1");
    assert_eq!(FMonomial::f(2).mul(&FMonomial::f(2)), FMonomial::from_pairs([(2, 2)]));
}

#[test]
fn monomial_order_is_graded() {
    // Lower total degree sorts first; ties broken lexicographically with
    // smaller symbol indices dominating.
    let one = FMonomial::one();
    let f0 = FMonomial::f(0);
    let f1 = FMonomial::f(1);
    let f0f0 = f0.mul(&f0);
    let f0f1 = f0.mul(&f1);
    assert!(one < f0);
    assert!(f0 < f1);
    assert!(f1 < f0f0);
    assert!(f0f0 < f0f1);
}

#[test]
fn polynomial_arithmetic_and_cancellation() {
    let mut p = FPolynomial::zero();
    p.add_term(FMonomial::f(0), int(2));
    p.add_term(FMonomial::f(1), int(1));
    p.add_term(FMonomial::f(0), int(-2));
    assert_eq!(p.num_terms(), 1);
    assert_eq!(p, FPolynomial::f(1));

    let q = FPolynomial::f(0).add(&FPolynomial::f(1));
    let prod = q.mul(&q);
    // (f0 + f1)^2 = f0^2 + 2 f0 f1 + f1^2
    let mut expected = FPolynomial::zero();
    expected.add_term(FMonomial::from_pairs([(0, 2)]), int(1));
    expected.add_term(FMonomial::from_pairs([(0, 1), (1, 1)]), int(2));
    expected.add_term(FMonomial::from_pairs([(1, 2)]), int(1));
    assert_eq!(prod, expected);
    assert!(q.sub(&q).is_zero());
    assert_eq!(q.neg().add(&q), FPolynomial::zero());
    assert_eq!(prod.scale(&rat(1, 2)).to_string(), "1/2*f0^2 + f0*f1 + 1/2*f1^2");
}

#[test]
fn polynomial_evaluation() {
    let p = FPolynomial::f(0).mul(&FPolynomial::f(1)).add(&FPolynomial::one());
    let vals: BTreeMap<usize, BigRational> = [(0, int(2)), (1, rat(1, 2))].into();
    assert_eq!(p.eval(&vals).unwrap(), int(2));
    let missing: BTreeMap<usize, BigRational> = [(0, int(2))].into();
    assert!(matches!(p.eval(&missing), Err(Error::MissingSymbol(1))));
}

#[test]
fn series_arithmetic() {
    let x = XSeries::x(4);
    let x2 = x.mul(&x);
    assert_eq!(*x2.coeff(2), FPolynomial::one());
    assert!(x2.coeff(1).is_zero());
    assert_eq!(x.mul_by_x(), x2);
    // theta multiplies [x^n] by (2n − 1).
    let s = XSeries::constant(FPolynomial::one(), 3)
        .add(&XSeries::x(3))
        .add(&XSeries::x(3).mul(&XSeries::x(3)));
    let t = s.theta();
    assert_eq!(*t.coeff(0), FPolynomial::constant(int(-1)));
    assert_eq!(*t.coeff(1), FPolynomial::one());
    assert_eq!(*t.coeff(2), FPolynomial::constant(int(3)));
    // Truncation: multiplying two order-4 series stays order 4.
    assert_eq!(x2.mul(&x2).order(), 4);
    assert_eq!(*x2.mul(&x2).coeff(4), FPolynomial::one());
}

#[test]
fn g_one_matches_hand_computation() {
    let e = Enumeration::up_to(3).unwrap();
    let g1 = g_series(1, 3, &e).unwrap();
    assert!(g1.coeff(0).is_zero());
    assert_eq!(*g1.coeff(1), FPolynomial::f(0));
    assert_eq!(
        *g1.coeff(2),
        FPolynomial::from_monomial(FMonomial::from_pairs([(0, 1), (1, 1)]))
    );
    // Of the four 3-chord diagrams, three have b = 3 and monomial f0^2;
    // the ladder has b = 2 and monomial f0 f1.
    let mut expected = FPolynomial::zero();
    expected.add_term(FMonomial::from_pairs([(0, 2), (2, 1)]), int(3));
    expected.add_term(FMonomial::from_pairs([(0, 1), (1, 2)]), int(1));
    assert_eq!(*g1.coeff(3), expected);
}

#[test]
fn g_two_counts_only_large_b() {
    let e = Enumeration::up_to(3).unwrap();
    let g2 = g_series(2, 3, &e).unwrap();
    // n = 1: the single chord has b = 1 < 2.
    assert!(g2.coeff(1).is_zero());
    // n = 2: f_C f_{b−2} = f0 · f0.
    assert_eq!(
        *g2.coeff(2),
        FPolynomial::from_monomial(FMonomial::from_pairs([(0, 2)]))
    );
    assert!(g_series(0, 3, &e).is_err());
    assert!(matches!(g_series(1, 4, &e), Err(Error::SizeLimit { .. })));
}

#[test]
fn gamma_carries_sign_and_factorial() {
    let e = Enumeration::up_to(3).unwrap();
    let g1 = g_series(1, 3, &e).unwrap();
    let gamma1 = gamma_series(1, 3, &e).unwrap();
    assert_eq!(gamma1, g1.scale(&int(-1)));
    let g2 = g_series(2, 3, &e).unwrap();
    let gamma2 = gamma_series(2, 3, &e).unwrap();
    assert_eq!(gamma2, g2.scale(&rat(1, 2)));
}

#[test]
fn green_function_evaluation() {
    let e = Enumeration::up_to(3).unwrap();
    let green = GreenFunction::from_enumeration(3, &e).unwrap();
    assert_eq!(green.order(), 3);
    // With every f_j = 0 each gamma_k vanishes, so G = 1.
    let zeros: BTreeMap<usize, BigRational> = (0..=4).map(|j| (j, int(0))).collect();
    let v = green.evaluate(&zeros, &int(1), &int(1)).unwrap();
    assert_eq!(v, int(1));
    // With f_j = 1, x = 0: only the constant term remains.
    let ones: BTreeMap<usize, BigRational> = (0..=4).map(|j| (j, int(1))).collect();
    let v = green.evaluate(&ones, &int(0), &int(5)).unwrap();
    assert_eq!(v, int(1));
}

#[test]
fn series_serde_shape() {
    let e = Enumeration::up_to(1).unwrap();
    let g1 = g_series(1, 1, &e).unwrap();
    let json = serde_json::to_value(&g1).unwrap();
    assert_eq!(
        json,
        serde_json::json!({
            "order": 1,
            "coeffs": {"1": [{"m": {"0": 1}, "c": "1"}]}
        })
    );
    let back: XSeries = serde_json::from_value(json).unwrap();
    assert_eq!(back, g1);
}

#[test]
fn polynomial_serde_round_trip() {
    let p = FPolynomial::f(0).mul(&FPolynomial::f(1)).scale(&rat(-3, 7));
    let json = serde_json::to_string(&p).unwrap();
    let back: FPolynomial = serde_json::from_str(&json).unwrap();
    assert_eq!(back, p);
}
