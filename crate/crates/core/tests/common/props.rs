//! Property suites shared by the module tests and the acceptance run.

use hornsing::arith::linalg::{mat_vec, nullspace, rank};
use hornsing::arith::{nullspace_modular, poly_gcd, rat, resultant, vars, MPoly, Rational};
use hornsing::expr::{parse_poly, parse_ratfun, print_canonical};
use hornsing::series::{check_compatibility, expand_from_ratios, index_vars, BiSeries, HyperSpec};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestError;

use super::{poly, poly_in_y, runner};

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn resultant_vs_common_factor(seed: u8) -> Result<(), String> {
    let strat = (poly_in_y(2, 4), poly_in_y(2, 4), poly_in_y(1, 3), any::<bool>());
    report(runner(seed).run(&strat, |(a, b, c, share)| {
        let (a, b) = if share { (&a * &c, &b * &c) } else { (a, b) };
        let (Ok(r), g) = (resultant(&a, &b, "y"), poly_gcd(&a, &b)) else { return Ok(()) };
        prop_assert_eq!(r.is_zero(), g.degree(1) > 0);
        if share && c.degree(1) > 0 {
            prop_assert!(r.is_zero());
        }
        Ok(())
    }))
}

pub fn gcd_divisibility(seed: u8) -> Result<(), String> {
    let strat = (poly(2, 4), poly(2, 4), poly(2, 3));
    report(runner(seed).run(&strat, |(a, b, c)| {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Ok(());
        }
        let (ac, bc) = (&a * &c, &b * &c);
        let g = poly_gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
        Ok(())
    }))
}

pub fn nullspace_exactness(seed: u8) -> Result<(), String> {
    let strat = (1usize..=5, 2usize..=7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r));
    report(runner(seed).run(&strat, |rows| {
        let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        let ns = nullspace(&m);
        prop_assert_eq!(ns.len(), m[0].len() - rank(&m));
        for v in &ns {
            prop_assert!(v.iter().any(|q| !q.is_zero()));
            prop_assert!(mat_vec(&m, v).iter().all(|q| q.is_zero()));
        }
        let nm = nullspace_modular(&m, 30);
        prop_assert_eq!(nm.len(), ns.len());
        for v in &nm {
            prop_assert!(mat_vec(&m, v).iter().all(|q| q.is_zero()));
        }
        Ok(())
    }))
}

fn poch(a: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a + rat(i as i64)))
}

fn fact(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |a, k| a * rat(k as i64))
}

/// Parameters of `A^n B^m (a)_{n+m} (b)_n (c)_m / ((d)_n (e)_m n! m!)`.
fn hyper_params() -> impl Strategy<Value = [Rational; 7]> {
    let q = || (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()));
    let pos = || (1i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()));
    (q(), q(), q(), q(), q(), pos(), pos()).prop_map(|(a1, b1, a, b, c, d, e)| [a1, b1, a, b, c, d, e])
}

pub fn expansion_path_independence(seed: u8) -> Result<(), String> {
    let iv = index_vars();
    report(runner(seed).run(&hyper_params(), |[sa, sb, a, b, c, d, e]| {
        let s = HyperSpec {
            alpha1: parse_ratfun(&format!("({sa})*(n+m+{a})*(n+{b})/((n+{d})*(n+1))"), &iv).unwrap(),
            alpha2: parse_ratfun(&format!("({sb})*(n+m+{a})*(m+{c})/((m+{e})*(m+1))"), &iv).unwrap(),
        };
        prop_assert!(check_compatibility(&s));
        let got = expand_from_ratios(&s, 7).unwrap();
        // walk up each column first, then along the row: the opposite path
        let mut want = BiSeries::zero(7);
        want.set(0, 0, Rational::one());
        for m in 0..=7usize {
            if m > 0 {
                let mq = rat(m as i64 - 1);
                let r = &sb * (&mq + &a) * (&mq + &c) / ((&mq + &e) * (&mq + rat(1)));
                want.set(0, m, want.get(0, m - 1) * r);
            }
            for n in 1..=7 - m {
                let (nq, mq) = (rat(n as i64 - 1), rat(m as i64));
                let r = &sa * (&nq + &mq + &a) * (&nq + &b) / ((&nq + &d) * (&nq + rat(1)));
                want.set(n, m, want.get(n - 1, m) * r);
            }
        }
        prop_assert_eq!(&got, &want);
        // and the closed form
        for n in 0..=3usize {
            for m in 0..=3 - n {
                let closed = num_traits::pow(sa.clone(), n) * num_traits::pow(sb.clone(), m) * poch(&a, n + m)
                    * poch(&b, n) * poch(&c, m) / (poch(&d, n) * poch(&e, m) * fact(n) * fact(m));
                prop_assert_eq!(got.get(n, m), &closed);
            }
        }
        Ok(())
    }))
}

fn poly3() -> impl Strategy<Value = MPoly> {
    let v = vars(&["x", "y", "z"]);
    prop::collection::vec((0u32..=10, 0u32..=10, 0u32..=10, -50i64..=50, 1i64..=9), 0..=8).prop_map(move |ts| {
        MPoly::from_terms(&v, ts.into_iter().map(|(a, b, c, p, q)| (vec![a, b, c], Rational::new(p.into(), q.into()))))
    })
}

pub fn canonical_round_trip(seed: u8) -> Result<(), String> {
    let v = vars(&["x", "y", "z"]);
    report(runner(seed).run(&poly3(), |p| {
        prop_assert_eq!(parse_poly(&p.to_string(), &v).unwrap(), p.clone());
        let c = print_canonical(&p);
        prop_assert_eq!(print_canonical(&parse_poly(&c, &v).unwrap()), c);
        Ok(())
    }))
}
