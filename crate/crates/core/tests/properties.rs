use proptest::prelude::*;
use psi_pascal::calculus::{check_sheffer_basic, psi_plus_power, psi_shift};
use psi_pascal::matrix::{check_product_identity, ProductVariant};
use psi_pascal::scalar::{rational, scalar_parse};
use psi_pascal::{
    qhat_gaussian_power, qhat_mutator, AdmissibleSequence, Domain, GeneralizedPascal,
    LowerTriMatrix, Polynomial, QPoly, RationalFunction, Scalar,
};

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Scalar::Rat(rational(n, d)))
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    small_rational().prop_filter("nonzero", |s| !s.is_zero())
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(|cs| QPoly::from_i64s(&cs))
}

fn ratfunc() -> impl Strategy<Value = Scalar> {
    (qpoly(), qpoly().prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(|(n, d)| Scalar::Fun(RationalFunction::new(n, d).unwrap()))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![small_rational(), ratfunc()]
}

/// Custom sequences: positive ψ-integers starting at 1.
fn custom_sequence() -> impl Strategy<Value = AdmissibleSequence> {
    prop::collection::vec((1i64..=9, 1i64..=4), 6..12).prop_map(|entries| {
        let mut values = vec![Scalar::from(1)];
        values.extend(entries.into_iter().map(|(n, d)| Scalar::Rat(rational(n, d))));
        AdmissibleSequence::custom(values).unwrap()
    })
}

fn same_domain(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    let d = a.domain().join(b.domain());
    (d.lift(a).unwrap(), d.lift(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        let d = a.domain().join(b.domain()).join(c.domain());
        let (a, b, c) = (d.lift(&a).unwrap(), d.lift(&b).unwrap(), d.lift(&c).unwrap());
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn normalization_is_idempotent(n in qpoly(), d in qpoly().prop_filter("nz", |p| !p.is_zero())) {
        let f = RationalFunction::new(n, d).unwrap();
        prop_assert_eq!(f.renormalize(), f.clone());
        let den = f.denom();
        prop_assert_eq!(den.leading().cloned(), Some(rational(1, 1)));
        prop_assert!(f.numer().gcd(den).is_constant());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), at in -5i64..=5) {
        let at = rational(at, 1);
        let (ea, eb) = (a.eval_at(&at), b.eval_at(&at));
        if let (Ok(ea), Ok(eb)) = (ea, eb) {
            prop_assert_eq!((&a + &b).eval_at(&at).unwrap(), &ea + &eb);
            if let Ok(prod) = (&a * &b).eval_at(&at) {
                prop_assert_eq!(prod, &ea * &eb);
            }
        }
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(scalar_parse(&text, a.domain()).unwrap(), a);
    }

    #[test]
    fn polynomial_round_trip(cs in prop::collection::vec(small_rational(), 0..6), lift in any::<bool>()) {
        let domain = if lift { Domain::RationalFunction } else { Domain::Rational };
        let p = Polynomial::from_coeffs(domain, cs).unwrap();
        prop_assert_eq!(Polynomial::parse(&p.to_string(), domain).unwrap(), p);
    }

    #[test]
    fn binomials_are_symmetric_factorial_ratios(seq in custom_sequence()) {
        let top = seq.max_index().unwrap();
        for n in 0..=top {
            for k in 0..=n {
                let b = seq.binomial(n, k as i64).unwrap();
                prop_assert_eq!(&b, &seq.binomial(n, (n - k) as i64).unwrap());
                let rebuilt = &(&b * &seq.factorial(k).unwrap()) * &seq.factorial(n - k).unwrap();
                prop_assert_eq!(rebuilt, seq.factorial(n).unwrap());
            }
        }
    }

    #[test]
    fn shift_matches_plus_power(seq in custom_sequence(), x in small_rational(), y in small_rational()) {
        let top = seq.max_index().unwrap();
        for n in 0..=top {
            let shifted = psi_shift(&seq, &Polynomial::monomial(Domain::Rational.one(), n), &y).unwrap();
            prop_assert_eq!(shifted.eval(&x), psi_plus_power(&seq, &x, &y, n).unwrap());
            prop_assert!(check_sheffer_basic(&seq, n, &x, &y).unwrap().passed());
        }
    }

    #[test]
    fn product_identities_hold_for_any_sequence(seq in custom_sequence()) {
        let n = seq.max_index().unwrap() + 1;
        prop_assert!(check_product_identity(&seq, n, ProductVariant::Sum).unwrap().passed());
        prop_assert!(check_product_identity(&seq, n, ProductVariant::Difference).unwrap().passed());
    }

    #[test]
    fn moment_matrices_form_a_group(seq in custom_sequence(), a in small_rational(), b in small_rational()) {
        let n = seq.max_index().unwrap() + 1;
        let pa = GeneralizedPascal::powers(&seq, &a, n).unwrap();
        let pb = GeneralizedPascal::powers(&seq, &b, n).unwrap();
        let product = pa.product(&pb).unwrap();
        prop_assert_eq!(product.to_matrix().unwrap(), pa.to_matrix().unwrap().matmul(&pb.to_matrix().unwrap()).unwrap());
        let back = product.product(&pb.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.moments(), pa.moments());
        let id = pa.product(&pa.inverse().unwrap()).unwrap().to_matrix().unwrap();
        prop_assert_eq!(id, LowerTriMatrix::identity(n, Domain::Rational));
    }

    #[test]
    fn operator_binomials_are_factorial_ratios(q0 in nonzero_rational(), m in 0usize..6) {
        for op in [qhat_gaussian_power(q0.clone()), qhat_mutator(&AdmissibleSequence::fibonomial())] {
            for n in 0..=10 {
                let full = op.factorial_eigen(n, m).unwrap();
                for k in 0..=n {
                    let parts = &op.factorial_eigen(k, m).unwrap() * &op.factorial_eigen(n - k, m).unwrap();
                    if !parts.is_zero() {
                        prop_assert_eq!(&op.binomial_eigen(n, k as i64, m).unwrap() * &parts, full.clone());
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_domains_join(a in small_rational(), b in ratfunc()) {
        let (x, y) = same_domain(&a, &b);
        prop_assert_eq!(x.domain(), Domain::RationalFunction);
        prop_assert_eq!(&x + &y, &y + &x);
    }
}

#[test]
fn symbolic_and_numeric_q_agree_after_evaluation() {
    let symbolic = AdmissibleSequence::q_symbolic();
    let numeric = AdmissibleSequence::from_selector("q=3/2").unwrap();
    let at = rational(3, 2);
    for n in 0..=10 {
        for k in 0..=n {
            let s = symbolic.binomial(n, k as i64).unwrap().eval_at(&at).unwrap();
            assert_eq!(Scalar::Rat(s), numeric.binomial(n, k as i64).unwrap());
        }
    }
}
