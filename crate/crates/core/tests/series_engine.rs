mod common;

use hornsing::arith::{frac, rat, vars, RatFun, Rational};
use hornsing::expr::files::parse_spec;
use hornsing::expr::parse_ratfun;
use hornsing::registry;
use hornsing::series::{
    check_compatibility, compose_rational, expand_from_ratios, hadamard, hyp2f1, index_vars, restrict,
    HyperSpec, UniSeries,
};
use hornsing::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn t(text: &str) -> RatFun {
    parse_ratfun(text, &vars(&["t"])).unwrap()
}

fn fact(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |a, k| a * rat(k as i64))
}

fn poch(a: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a + rat(i as i64)))
}

#[test]
fn ratio_and_formula_forms_agree_through_twelve() {
    for s in registry::SPECS.iter().filter(|s| s.formula.is_some()) {
        let text = format!("[spec]\nname = f\nkind = formula\ncoeff = {}\n", s.formula.unwrap());
        let f = parse_spec(&text).unwrap().expand(12).unwrap();
        assert_eq!(registry::spec(s.name).unwrap().expand(12).unwrap(), f, "{}", s.name);
    }
}

#[test]
fn symmetric_specs_are_symmetric() {
    for s in registry::SPECS.iter().filter(|s| s.symmetric) {
        let b = registry::spec(s.name).unwrap().expand(12).unwrap();
        assert_eq!(b.transpose(), b, "{}", s.name);
    }
}

#[test]
fn asym_coefficients_match_finite_sum() {
    let b = registry::spec("asym").unwrap().expand(8).unwrap();
    assert_eq!(*b.get(1, 1), rat(72));
    let half = frac(1, 2);
    for n in 0..=8 {
        for m in 0..=8 - n {
            let mut inner = Rational::zero();
            for k in 0..=m {
                let pm = poch(&rat(-(m as i64)), k);
                inner += &pm * &pm * poch(&half, k) * num_traits::pow(rat(4), k) / num_traits::pow(fact(k), 3);
            }
            let lead = fact(2 * n + 2 * m) / num_traits::pow(fact(n) * fact(m), 2);
            assert_eq!(*b.get(n, m), lead * inner, "({n},{m})");
        }
    }
}

#[test]
fn displayed_coefficients() {
    let h2 = registry::spec("h2").unwrap().expand(2).unwrap();
    assert_eq!((h2.get(1, 0), h2.get(0, 1), h2.get(2, 0), h2.get(1, 1)), (&rat(6), &rat(6), &rat(90), &rat(720)));
    let b16 = registry::spec("bat16").unwrap().expand(4).unwrap();
    assert_eq!((b16.get(1, 1), b16.get(2, 1), b16.get(2, 2)), (&rat(96), &rat(2160), &rat(90720)));
    assert_eq!(*registry::spec("bat18").unwrap().expand(2).unwrap().get(1, 1), rat(96));
    assert_eq!(*registry::spec("poch").unwrap().expand(1).unwrap().get(0, 1), rat(4));
}

#[test]
fn diagonal_restrictions() {
    let n = registry::SOL_BAT1.len() - 1;
    let h2 = registry::spec("h2").unwrap().restrict(&t("t"), &t("t"), n).unwrap();
    assert_eq!(h2, UniSeries::from_ints(registry::SOL_BAT1));
    let n = registry::DIAG_BAT16.len() - 1;
    for name in ["bat16", "poch"] {
        let s = registry::spec(name).unwrap().restrict(&t("t"), &t("t"), n).unwrap();
        assert_eq!(s, UniSeries::from_ints(registry::DIAG_BAT16), "{name}");
    }
}

#[test]
fn restriction_along_a_slope() {
    let s = registry::spec("h2").unwrap().restrict(&t("t"), &t("2*t"), 3).unwrap();
    assert_eq!(*s.get(1), rat(18));
    // 90 (1 + 4) + 720 * 2
    assert_eq!(*s.get(2), rat(1890));
}

#[test]
fn diagonal_sum_identity() {
    for name in ["h2", "bat16", "asym", "bat19"] {
        let b = registry::spec(name).unwrap().expand(10).unwrap();
        let d = restrict(&b, &t("t"), &t("t"), 10).unwrap();
        for k in 0..=10 {
            let mut sum = Rational::zero();
            for n in 0..=k {
                sum += b.get(n, k - n);
            }
            assert_eq!(*d.get(k), sum, "{name} {k}");
        }
        assert_eq!(b.diagonal(), d);
    }
}

#[test]
fn scaled_m4_restriction_has_integer_coefficients() {
    let text = "[spec]
name = kdf4_scaled
kind = formula
coeff = 64^(n+m)*poch(1/2, n)^4*poch(1/2, m)^4*poch(1/2, n+m)/(poch(1, n+m)^4*fact(n)*fact(m))
";
    let s = parse_spec(text).unwrap().restrict(&t("8*t"), &t("-8*t/(1-8*t)"), 12).unwrap();
    for k in 0..=12 {
        assert!(s.get(k).is_integer(), "t^{k}: {}", s.get(k));
    }
    assert_eq!(*s.get(2), rat(3712));
}

#[test]
fn restriction_errors() {
    let b = registry::spec("h2").unwrap().expand(4).unwrap();
    assert_eq!(restrict(&b, &t("1+t"), &t("t"), 3).unwrap_err(), Error::NonzeroAtOrigin);
    assert!(matches!(restrict(&b, &t("t"), &t("t"), 9).unwrap_err(), Error::InsufficientOrder { .. }));
    // valuation two in both maps halves the needed order
    assert!(restrict(&b, &t("t^2"), &t("t^2/(1-t)"), 8).is_ok());
}

#[test]
fn hadamard_of_hypergeometric_pieces_gives_h2_diagonal() {
    let n = registry::SOL_BAT1.len() - 1;
    let f = hyp2f1(&frac(1, 3), &frac(2, 3), &rat(1), n);
    let a = compose_rational(&f, &t("-27*t"), n).unwrap();
    let inner = compose_rational(&f, &t("-27*t/(1-4*t)^3"), n).unwrap();
    let b = UniSeries::from_ratfun(&t("1/(1-4*t)"), n).unwrap().mul(&inner);
    assert_eq!(hadamard(&a, &b).unwrap(), UniSeries::from_ints(registry::SOL_BAT1));
}

#[test]
fn composition_examples() {
    let g = compose_rational(&UniSeries::var(6), &t("-27*t/(1-4*t)^3"), 6).unwrap();
    // -27 t (1-4t)^-3 = -27 sum binom(k+2, 2) 4^k t^(k+1)
    for k in 1..=6i64 {
        let want = rat(-27) * rat((k + 1) * k / 2) * num_traits::pow(rat(4), (k - 1) as usize);
        assert_eq!(*g.get(k as usize), want);
    }
    let geo = UniSeries::geometric(8);
    assert_eq!(compose_rational(&geo, &t("t^2"), 8).unwrap(), UniSeries::from_fn(8, |k| rat((k % 2 == 0) as i64)));
    assert_eq!(compose_rational(&geo, &t("1+t"), 8).unwrap_err(), Error::NonzeroAtOrigin);
}

#[test]
fn incompatible_and_pole() {
    let iv = index_vars();
    let bad = HyperSpec { alpha1: parse_ratfun("(n+m+1)/(n+1)", &iv).unwrap(), alpha2: parse_ratfun("1", &iv).unwrap() };
    assert!(!check_compatibility(&bad));
    assert_eq!(expand_from_ratios(&bad, 3).unwrap_err(), Error::IncompatibleSpec);
    let pole = HyperSpec { alpha1: parse_ratfun("1/(n-2)", &iv).unwrap(), alpha2: parse_ratfun("1", &iv).unwrap() };
    assert!(matches!(expand_from_ratios(&pole, 4).unwrap_err(), Error::RatioPole { n: 2, m: 0 }));
}

#[test]
fn prop_expansion_matches_double_recursion() {
    common::props::expansion_path_independence(31).unwrap();
}

#[test]
fn prop_hadamard_laws() {
    let s = || prop::collection::vec((-20i64..=20, 1i64..=5), 9).prop_map(|v| {
        UniSeries::new(v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect())
    });
    common::runner(32)
        .run(&(s(), s(), s()), |(a, b, c)| {
            prop_assert_eq!(hadamard(&a, &b).unwrap(), hadamard(&b, &a).unwrap());
            let l = hadamard(&hadamard(&a, &b).unwrap(), &c).unwrap();
            let r = hadamard(&a, &hadamard(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(hadamard(&a, &UniSeries::geometric(8)).unwrap(), a.clone());
            prop_assert_eq!(hadamard(&a, &UniSeries::geometric(5)).unwrap_err(), Error::OrderMismatch(8, 5));
            Ok(())
        })
        .unwrap();
}
