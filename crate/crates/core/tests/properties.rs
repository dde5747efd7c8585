use num_rational::BigRational;
use proptest::prelude::*;
use std::f64::consts::PI;

use oscint::closedform::{i1_closed_fresnel, i1_closed_r, i_k, i_k_from_plz, plz, ray_orders};
use oscint::specfun::{
    bell_complete, bell_partial, fresnel, pcf, pcf_modified_contour_orders,
    pcf_modified_series_orders, pcf_via_integral, SeriesTruncation,
};
use oscint::symbolic::{
    parse_structured, printed::printed_coefficients, printed::sorted, render, sym_expression,
    sym_expression_with, Conventions, Format, GaussianRational, Monomial, Symbol, SymbolicConstant,
};
use oscint::{lz_arg, Complex64};

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        Just(Symbol::Pi),
        Just(Symbol::Gamma),
        Just(Symbol::Ln2),
        Just(Symbol::Zeta(3)),
        Just(Symbol::Zeta(5)),
    ]
}

fn constant() -> impl Strategy<Value = SymbolicConstant> {
    let term = (symbol(), 0u32..3, -6i64..6, -6i64..6, 1i64..5).prop_map(|(s, p, re, im, d)| {
        let c = GaussianRational::new(
            BigRational::new(re.into(), d.into()),
            BigRational::new(im.into(), d.into()),
        );
        SymbolicConstant::term(Monomial::of(s, p), c)
    });
    prop::collection::vec(term, 0..4).prop_map(|ts| {
        ts.into_iter()
            .fold(SymbolicConstant::zero(), |a, t| &a + &t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in constant(), b in constant(), c in constant()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &SymbolicConstant::zero());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn ring_matches_floating_point(a in constant(), b in constant()) {
        let exact = (&a * &b).to_complex();
        let approx = a.to_complex() * b.to_complex();
        prop_assert!((exact - approx).norm() <= 1e-12 * (1.0 + approx.norm()));
    }

    #[test]
    fn series_and_contour_agree(tau in -2.5f64..2.5, nu_im in -0.5f64..0.5) {
        let nu = Complex64::new(-1.0, nu_im);
        let z = lz_arg(tau);
        let s = pcf_modified_series_orders(3, nu, z, SeriesTruncation::default()).unwrap();
        let c = pcf_modified_contour_orders(3, nu, z, 1e-13).unwrap();
        for k in 0..=3 {
            let scale = 1.0 + s.values[k].norm();
            prop_assert!((s.values[k] - c[k]).norm() <= 1e-10 * scale, "k={} τ={}", k, tau);
        }
    }

    #[test]
    fn pcf_matches_real_axis_integral(tau in -3.0f64..3.0, nu in 0.0f64..2.0) {
        let index = Complex64::new(-1.0, -nu);
        let z = lz_arg(tau);
        let a = pcf(index, z).unwrap();
        let b = pcf_via_integral(index, z).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn fresnel_is_odd(x in -30.0f64..30.0) {
        let (c, s) = fresnel(x);
        let (cm, sm) = fresnel(-x);
        prop_assert_eq!((c, s), (-cm, -sm));
    }

    #[test]
    fn first_level_forms_agree(tau in -20.0f64..20.0) {
        let a = i_k(1, tau).unwrap().value;
        prop_assert!((a - i1_closed_fresnel(tau)).abs() <= 1e-10);
        prop_assert!((a - i1_closed_r(tau).unwrap()).abs() <= 1e-10);
        let d = ray_orders(0, tau).unwrap()[0].norm_sqr();
        prop_assert!((d - 4.0 * a).abs() <= 1e-9);
    }

    #[test]
    fn probability_bridge(k in 1usize..6, tau in -6.0f64..10.0) {
        // i_k_from_plz checks itself against i_k and errors on disagreement
        prop_assert!(i_k_from_plz(k, tau).is_ok());
    }

    #[test]
    fn probability_in_unit_interval(tau in -10.0f64..10.0, nu in 0.0f64..3.0) {
        let p = plz(tau, nu).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&p));
    }

    #[test]
    fn bell_complete_is_sum_of_partials(x in prop::collection::vec(-2.0f64..2.0, 1..7)) {
        let n = x.len();
        let sum: f64 = (1..=n).map(|j| bell_partial(n, j, &x[..n - j + 1]).unwrap()).sum();
        let complete = bell_complete(n, &x).unwrap();
        prop_assert!((sum - complete).abs() <= 1e-10 * (1.0 + complete.abs()));
    }

    #[test]
    fn structured_round_trip(k in 1usize..9) {
        let expr = sym_expression(k).unwrap();
        let json = render(&expr, Format::Structured).unwrap();
        prop_assert_eq!(parse_structured(&json).unwrap(), expr);
    }

    #[test]
    fn symbolic_evaluation_matches_closed_form(k in 1usize..7, tau in -5.0f64..8.0) {
        let expr = sym_expression(k).unwrap();
        let a = expr.evaluate(tau).unwrap();
        let b = i_k(k, tau).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
    }
}

#[test]
fn crossing_value_of_second_level() {
    let v = i_k(2, 0.0).unwrap().value;
    assert!((v - PI * PI / 128.0).abs() < 1e-14);
}

#[test]
fn low_orders_match_printed_coefficients() {
    for k in 1..=3 {
        let generated = sym_expression(k)
            .unwrap()
            .rational_pi_coefficients()
            .map(sorted);
        assert_eq!(generated, printed_coefficients(k).map(sorted), "k={k}");
    }
}

/// φ^{(r)} with (−i)^r instead of −(i^r) gives a visibly wrong I_3.
#[test]
fn rejected_phi_sign_convention() {
    let conv = Conventions {
        phi_minus_i_power: false,
        ..Conventions::default()
    };
    let wrong = sym_expression_with(3, conv).unwrap().evaluate(1.7).unwrap();
    let right = i_k(3, 1.7).unwrap().value;
    assert!((wrong - right).abs() > 0.05, "{wrong} vs {right}");
}

/// binom(n, k) in place of the Leibniz binom(n, j) does not even give a
/// Hermitian bilinear form.
#[test]
fn rejected_binomial_convention() {
    let conv = Conventions {
        leibniz_binomial: false,
        ..Conventions::default()
    };
    assert!(sym_expression_with(3, conv).is_err());
}
