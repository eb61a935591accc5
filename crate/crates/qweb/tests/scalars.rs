use proptest::prelude::*;
use qweb::scalars::*;

fn gr(a: i64, b: i64) -> GaussianRational {
    GaussianRational::from_ratio(a, b)
}

#[test]
fn quantum_integers() {
    let q = ScalarQ::q_pow;
    assert_eq!(qint(2, 1), q(1) + q(-1));
    assert_eq!(qint(3, 1), q(2) + ScalarQ::one() + q(-2));
    assert_eq!(qint(2, 2), q(2) + q(-2));
    assert!(qint(0, 3).is_zero());
    assert_eq!(qint(-4, 1), -qint(4, 1));
    let direct = (q(10) - q(-10)) / (q(2) - q(-2));
    assert_eq!(qint(5, 2), direct);
}

#[test]
fn factorials_and_binomials() {
    assert_eq!(qfact(0), ScalarQ::one());
    assert_eq!(qfact(2), qint(2, 1));
    assert_eq!(qbinom(2, 1), qint(2, 1));
    assert_eq!(qbinom(3, 1), qint(3, 1));
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            assert_eq!(qbinom(a + b, b) * qfact(a) * qfact(b), qfact(a + b), "a={} b={}", a, b);
        }
    }
}

#[test]
fn specialization() {
    assert_eq!(specialize(&qint(2, 1), &gr(2, 1)).unwrap(), gr(5, 2));
    assert!(specialize(&ScalarQ::qtilde(), &gr(1, 1)).unwrap().is_zero());
    let e = specialize(&ScalarQ::qtilde().inv().unwrap(), &gr(1, 1)).unwrap_err();
    assert_eq!(e.to_string(), "pole at q0");
    for a in -10..=10i64 {
        assert_eq!(specialize(&qint(a, 1), &gr(1, 1)).unwrap(), GaussianRational::from_int(a));
    }
}

#[test]
fn canonical_form_and_text() {
    let x = (ScalarQ::q_pow(2) - ScalarQ::one()) / (ScalarQ::q_pow(1) - ScalarQ::one());
    assert!(x.is_laurent());
    assert_eq!(x, ScalarQ::q_pow(1) + ScalarQ::one());
    let t = qint(3, 1) - ScalarQ::from_int(2);
    assert_eq!(t.to_string(), "q^2 - 1 + q^-2");
    let s = ScalarQ::i() / ScalarQ::qtilde();
    let back = ScalarQ::from_structured(&s.to_structured()).unwrap();
    assert_eq!(back, s);
    assert!(qint(2, 1).to_text().contains("(1,0)*q^1"));
}

fn arb_laurent() -> impl Strategy<Value = ScalarQ> {
    (proptest::collection::vec((-3i64..=3, -1i64..=1), 1..4), -2i32..=2).prop_map(|(cs, low)| {
        let terms = cs.into_iter().enumerate().map(|(k, (re, im))| {
            (low + k as i32, GaussianRational::new(num_rational::BigRational::from_integer(re.into()), num_rational::BigRational::from_integer(im.into())))
        });
        ScalarQ::from_laurent(Laurent::from_terms(terms))
    })
}

fn arb_scalar() -> impl Strategy<Value = ScalarQ> {
    (arb_laurent(), arb_laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { &a / &b })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn specialize_is_a_homomorphism(a in arb_scalar(), b in arb_scalar()) {
        let q0 = gr(7, 5);
        if let (Ok(x), Ok(y)) = (specialize(&a, &q0), specialize(&b, &q0)) {
            prop_assert_eq!(specialize(&(&a + &b), &q0).unwrap(), &x + &y);
            prop_assert_eq!(specialize(&(&a * &b), &q0).unwrap(), &x * &y);
        }
    }
}
