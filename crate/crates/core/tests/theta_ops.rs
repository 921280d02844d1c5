mod common;

use hornsing::arith::{rat, vars, MPoly, Rational};
use hornsing::expr::parse_ratfun;
use hornsing::registry;
use hornsing::series::{BiSeries, UniSeries};
use hornsing::theta::{annihilates, annihilates_uni, log_basis, ThetaOp};
use hornsing::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn diagonal(name: &str, order: usize) -> UniSeries {
    let t = parse_ratfun("t", &vars(&["t"])).unwrap();
    registry::spec(name).unwrap().restrict(&t, &t, order).unwrap()
}

#[test]
fn systems_annihilate_their_series() {
    for (sys, spec, order) in [("picard", "h2", 14), ("pde13", "bat16", 14), ("asym_sys", "asym", 16)] {
        let s = registry::spec(spec).unwrap().expand(order).unwrap();
        assert!(annihilates(&registry::system(sys).unwrap(), &s).unwrap(), "{sys}");
        // and not a neighbour's series
        let other = registry::spec(if spec == "h2" { "bat16" } else { "h2" }).unwrap().expand(order).unwrap();
        assert!(!annihilates(&registry::system(sys).unwrap(), &other).unwrap(), "{sys}");
    }
}

#[test]
fn univariate_operators_annihilate_diagonals() {
    for (op, spec) in [("batyrev1", "h2"), ("defbatyrev2", "bat16"), ("batyrev5", "bat18"), ("batyrev6", "bat19")] {
        let op = &registry::system(op).unwrap()[0];
        assert!(annihilates_uni(op, &diagonal(spec, 20)).unwrap(), "{spec}");
    }
    let list = UniSeries::from_ints(registry::DIAG_BAT16);
    let op = &registry::system("defbatyrev2").unwrap()[0];
    assert!(matches!(annihilates_uni(op, &list), Err(Error::InsufficientOrder { .. })));
}

#[test]
fn annihilation_needs_margin() {
    let s = registry::spec("h2").unwrap().expand(10).unwrap();
    assert!(matches!(annihilates(&registry::system("picard").unwrap(), &s), Err(Error::InsufficientOrder { .. })));
}

#[test]
fn picard_recurrence() {
    let rec = registry::system("picard").unwrap()[0].to_recurrence();
    let iv = hornsing::series::index_vars();
    let p = |s: &str| hornsing::expr::parse_poly(s, &iv).unwrap();
    assert_eq!(rec.len(), 2);
    assert!(rec.contains(&(vec![0, 0], p("n^3"))));
    assert!(rec.contains(&(vec![1, 0], p("-(3*n+3*m-2)*(3*n+3*m-1)*(3*n+3*m)"))));
}

#[test]
fn pde13_recurrence_gives_coefficient_ratio() {
    let rec = registry::system("pde13").unwrap()[1].to_recurrence();
    let at = |shift: [u32; 2], n: i64, m: i64| {
        rec.iter().find(|(s, _)| *s == shift).map(|(_, q)| q.eval(&[rat(n), rat(m)])).unwrap_or_else(Rational::zero)
    };
    // binom(2n+2m, n+m) binom(n+m, n)^2 binom(2n, n) binom(2m, m)
    let binom = |a: i64, b: i64| (0..b).fold(rat(1), |acc, i| acc * rat(a - i) / rat(i + 1));
    let c = |n: i64, m: i64| binom(2 * n + 2 * m, n + m) * binom(n + m, n).pow(2) * binom(2 * n, n) * binom(2 * m, m);
    for (n, m) in [(0, 0), (3, 1), (1, 5), (7, 2), (4, 4), (0, 9), (6, 0), (2, 3), (5, 7), (9, 1)] {
        let lhs = at([0, 0], n, m + 1) * c(n, m + 1) + at([0, 1], n, m + 1) * c(n, m);
        assert!(lhs.is_zero(), "({n},{m})");
    }
}

#[test]
fn picard_formal_solutions() {
    let picard = registry::system("picard").unwrap();
    let mut dims = Vec::new();
    for n in [8, 11, 14] {
        dims.push(log_basis(&picard, n, 2).unwrap().0);
    }
    assert_eq!(dims, vec![9, 9, 9]);

    let (_, basis) = log_basis(&picard, 8, 2).unwrap();
    let h0 = registry::spec("h2").unwrap().expand(8).unwrap();
    let s1 = basis.iter().find(|b| b.leading_log() == Some((1, 0))).unwrap();
    // the ln(x) coefficient is H0 up to scale; the free part is H1 up to H0
    let lead = s1.part(1, 0).unwrap();
    let scale = lead.get(0, 0).clone();
    assert_eq!(lead.scale(&(rat(1) / &scale)), h0);
    let free = s1.part(0, 0).unwrap().scale(&(rat(1) / &scale));
    let h1 = free.add(&h0.scale(&-free.get(0, 0)));
    assert_eq!((h1.get(1, 0), h1.get(0, 1)), (&rat(15), &rat(33)));
    assert_eq!((h1.get(2, 0), h1.get(1, 1), h1.get(0, 2)), (&Rational::new(513.into(), 2.into()), &rat(3132), &Rational::new(1323.into(), 2.into())));
}

fn random_op() -> impl Strategy<Value = ThetaOp> {
    let v = vars(&["x", "y"]);
    let tv = ThetaOp::theta_vars(&v);
    let q = prop::collection::vec((0u32..=2, 0u32..=2, -5i64..=5), 1..=4);
    prop::collection::vec(((0u32..=2, 0u32..=2), q), 1..=3).prop_filter_map("zero operator", move |terms| {
        let terms: Vec<(Vec<u32>, MPoly)> = terms
            .into_iter()
            .map(|((a, b), q)| (vec![a, b], MPoly::from_terms(&tv, q.into_iter().map(|(i, j, c)| (vec![i, j], rat(c))))))
            .collect();
        ThetaOp::from_terms(&v, terms).ok()
    })
}

fn random_series() -> impl Strategy<Value = BiSeries> {
    prop::collection::vec(-9i64..=9, 45).prop_map(|c| {
        let mut it = c.into_iter();
        BiSeries::from_fn(8, |_, _| rat(it.next().unwrap()))
    })
}

#[test]
fn prop_recurrence_agrees_with_apply() {
    common::runner(41)
        .run(&(random_op(), random_series()), |(op, s)| {
            let r = op.apply(&s).unwrap();
            let rec = op.to_recurrence();
            for n in 0..=r.order() {
                for m in 0..=r.order() - n {
                    let mut acc = Rational::zero();
                    for (shift, q) in &rec {
                        let (a, b) = (shift[0] as usize, shift[1] as usize);
                        if n >= a && m >= b {
                            acc += q.eval(&[rat(n as i64), rat(m as i64)]) * s.get(n - a, m - b);
                        }
                    }
                    prop_assert_eq!(r.get(n, m), &acc, "({},{})", n, m);
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn prop_apply_is_linear() {
    common::runner(42)
        .run(&(random_op(), random_series(), random_series(), -7i64..=7), |(op, s, t, a)| {
            let a = rat(a);
            let lhs = op.apply(&s.scale(&a).add(&t)).unwrap();
            let rhs = op.apply(&s).unwrap().scale(&a).add(&op.apply(&t).unwrap());
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();
}

#[test]
fn d_form_round_trip() {
    for name in ["c4", "c3", "l2_appD"] {
        let ode = registry::ode(name).unwrap();
        let th = ThetaOp::from_ode(&ode);
        assert_eq!(th.to_ode().unwrap().normalized(), ode.normalized(), "{name}");
    }
    for name in ["batyrev1", "secorderbis"] {
        let th = registry::system(name).unwrap().remove(0);
        assert_eq!(ThetaOp::from_ode(&th.to_ode().unwrap()).normalized(), th.normalized(), "{name}");
    }
}
