//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use hornsing::arith::{frac, poly_gcd, rat, vars, MPoly, RatFun, Rational, Vars};
use hornsing::curve::{genus_quadratic_fiber, nickelian_j, verify_parametrization, Curve, JValue, Param};
use hornsing::expr::{parse_poly, parse_ratfun, print_canonical};
use hornsing::horn::horn_curve;
use hornsing::ising::{chi_catalog, chi_gcd, kr_wr_report, nickelian_curve, nonmonomial_part, Coords, NickelMode, NickelianIndex};
use hornsing::ode::{
    annihilates_series, exterior_square_order, guess_ode, has_annihilator, local_basis, symmetric_square_order, UniODE,
};
use hornsing::registry;
use hornsing::series::{compose_rational, hadamard, hyp2f1, UniSeries};
use hornsing::theta::{annihilates, annihilates_uni, log_basis};

/// Collects failed sub-checks of one criterion.
#[derive(Default)]
struct Check {
    failed: Vec<String>,
}

impl Check {
    fn that(&mut self, ok: bool, what: impl Display) {
        if !ok {
            self.failed.push(what.to_string());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: impl Display) {
        if got != want {
            self.failed.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }
}

fn tv() -> Vars {
    vars(&["t"])
}

fn t(text: &str) -> RatFun {
    parse_ratfun(text, &tv()).unwrap()
}

fn restricted(spec: &str, x: &str, y: &str, order: usize) -> UniSeries {
    registry::spec(spec).unwrap().restrict(&t(x), &t(y), order).unwrap()
}

fn curve(name: &str) -> Curve {
    Curve::new(&registry::curve_poly(name).unwrap()).unwrap()
}

/// Coefficient lists of an operator, independent of its variable names.
fn ode_coeffs(ode: &UniODE) -> Vec<Vec<Rational>> {
    ode.normalized().coeffs().iter().map(|p| p.univariate_coeffs(0)).collect()
}

fn horn_reproduction(c: &mut Check) {
    let fixtures: Vec<Vec<String>> = common::table("curves.txt");
    for (spec, name) in [("h2", "cand"), ("bat16", "s2xy"), ("poch", "tilde_s2xy"), ("bat18", "sing_bat5"), ("bat19", "sing_bat6")] {
        let row = fixtures.iter().find(|r| r[0] == name).unwrap();
        let names: Vec<&str> = row[1].split_whitespace().collect();
        let displayed = parse_poly(&row[2], &vars(&names)).unwrap();
        let got = horn_curve(&registry::spec(spec).unwrap().hyper().unwrap()).unwrap().main_curve;
        c.eq(got.to_string(), print_canonical(&displayed), spec);
    }
}

fn parameter_independence(c: &mut Check) {
    for m in 2..=5u32 {
        let curves: Vec<Curve> = common::KDF_PARAMS
            .iter()
            .map(|p| {
                let s = registry::kdf(m, frac(p.0, p.1), frac(p.2, p.3), frac(p.4, p.5), frac(p.6, p.7));
                horn_curve(&s.hyper().unwrap()).unwrap().main_curve
            })
            .collect();
        c.that(curves.windows(2).all(|w| w[0] == w[1]), format!("M={m} depends on the parameters"));
        let want = match m {
            2 => Some("m4_even"),
            3 => Some("sing_kamp"),
            4 => Some("m4_quartic"),
            _ => None,
        };
        if let Some(name) = want {
            c.eq(curves[0].to_string(), curve(name).to_string(), format!("M={m} vs {name}"));
        }
    }
}

fn series_fixtures(c: &mut Check) {
    let xy = common::xy();
    for row in common::table("expansions.txt") {
        let deg: usize = row[1].parse().unwrap();
        let want = parse_poly(&row[2], &xy).unwrap();
        let got = registry::spec(&row[0]).unwrap().expand(deg).unwrap().to_poly(&xy);
        c.eq(got, want, &row[0]);
    }
    for row in common::table("diagonals.txt") {
        let want: Vec<i64> = row[1].split_whitespace().map(|w| w.parse().unwrap()).collect();
        let got = restricted(&row[0], "t", "t", want.len() - 1);
        c.eq(got, UniSeries::from_ints(&want), format!("diagonal of {}", row[0]));
    }
}

/// The M=3 Kampe de Feriet series along the curve parametrization that
/// matches the order-four operator.
fn kdf3_restriction(order: usize, sign: &str) -> UniSeries {
    restricted("kdf_general", "t^2", &format!("(t/(1{sign}t))^2"), order)
}

fn annihilation(c: &mut Check) {
    for (sys, spec) in [("picard", "h2"), ("pde13", "bat16"), ("asym_sys", "asym")] {
        let s = registry::spec(spec).unwrap().expand(24).unwrap();
        c.eq(annihilates(&registry::system(sys).unwrap(), &s), Ok(true), sys);
    }
    for (op, spec) in [("batyrev1", "h2"), ("defbatyrev2", "bat16"), ("batyrev5", "bat18"), ("batyrev6", "bat19")] {
        let op_name = op;
        let op = &registry::system(op).unwrap()[0];
        c.eq(annihilates_uni(op, &restricted(spec, "t", "t", 24)), Ok(true), op_name);
    }
    let c4 = registry::ode("c4").unwrap();
    c.eq(annihilates_series(&c4, &kdf3_restriction(40, "+")), Ok(true), "c4");
    c.eq(annihilates_series(&c4.reflected(), &kdf3_restriction(40, "-")), Ok(true), "c4 reflected");
}

/// Every (order, degree) before `(r, d)` in the search order has no annihilator.
fn minimal(s: &UniSeries, r: usize, d: usize, max_degree: usize) -> bool {
    let below = (1..r).flat_map(|i| (0..=max_degree).map(move |j| (i, j))).chain((0..d).map(|j| (r, j)));
    below.into_iter().all(|(i, j)| !has_annihilator(s, i, j))
}

fn guessing(c: &mut Check) {
    let s = restricted("h2", "t", "t", 50);
    match guess_ode(&s, 4, 2) {
        Ok(g) => {
            c.eq(ode_coeffs(&g.ode), ode_coeffs(&registry::ode("batyrev1").unwrap()), "batyrev1");
            c.that(minimal(&s, g.order, g.degree, 2), "batyrev1 not minimal");
        }
        Err(e) => c.that(false, format!("batyrev1: {e}")),
    }
    let c4 = registry::ode("c4").unwrap();
    for (sign, want) in [("+", c4.clone()), ("-", c4.reflected())] {
        let s = kdf3_restriction(79, sign);
        match guess_ode(&s, 4, 12) {
            Ok(g) => {
                c.eq(ode_coeffs(&g.ode), ode_coeffs(&want), format!("c4 along (t/(1{sign}t))^2"));
                c.that(minimal(&s, g.order, g.degree, 12), format!("c4 along (t/(1{sign}t))^2 not minimal"));
            }
            Err(e) => c.that(false, format!("c4 along (t/(1{sign}t))^2: {e}")),
        }
    }
}

fn log_solutions(c: &mut Check) {
    let picard = registry::system("picard").unwrap();
    for n in 8..=14 {
        c.eq(log_basis(&picard, n, 2).unwrap().0, 9, format!("dimension at N={n}"));
    }
    let (_, basis) = log_basis(&picard, 8, 2).unwrap();
    let Some(s1) = basis.iter().find(|b| b.leading_log() == Some((1, 0))) else {
        return c.that(false, "no ln(x)-leading element");
    };
    let scale = rat(1) / s1.part(1, 0).unwrap().get(0, 0);
    let free = s1.part(0, 0).unwrap().scale(&scale);
    let h0 = registry::spec("h2").unwrap().expand(8).unwrap();
    let h1 = free.add(&h0.scale(&-free.get(0, 0)));
    c.eq((h1.get(1, 0).clone(), h1.get(0, 1).clone()), (rat(15), rat(33)), "analytic part");
}

fn square_orders(c: &mut Check) {
    c.eq(exterior_square_order(&registry::ode("c4").unwrap(), 40), Ok(5), "exterior square of c4");
    let c3 = registry::ode("c3").unwrap();
    c.eq(symmetric_square_order(&c3, 40), Ok(5), "symmetric square of c3");
    let l2 = registry::ode("l2_appD").unwrap();
    let t0 = frac(1, 7);
    let u = local_basis(&l2, &t0, 40).unwrap();
    let shifted = c3.shifted(&t0);
    for (name, p) in [("u1^2", u[0].mul(&u[0])), ("u1 u2", u[0].mul(&u[1])), ("u2^2", u[1].mul(&u[1]))] {
        c.that(shifted.apply(&p).is_zero(), format!("c3 does not kill {name}"));
    }
}

fn hadamard_identity(c: &mut Check) {
    let n = 20;
    let f = hyp2f1(&frac(1, 3), &frac(2, 3), &rat(1), n);
    let a = compose_rational(&f, &t("-27*t"), n).unwrap();
    let inner = compose_rational(&f, &t("-27*t/(1-4*t)^3"), n).unwrap();
    let b = UniSeries::from_ratfun(&t("1/(1-4*t)"), n).unwrap().mul(&inner);
    let h = hadamard(&a, &b).unwrap();
    c.eq(h.truncate(registry::SOL_BAT1.len() - 1), UniSeries::from_ints(registry::SOL_BAT1), "displayed terms");
    c.eq(h, restricted("h2", "t", "t", n), "through order 20");
}

fn slopes(c: &mut Check) {
    let t_var = MPoly::var(&tv(), 0);
    let on_line = |p: &MPoly, k: i64| p.compose(&[t_var.clone(), &t_var * &MPoly::constant(&tv(), rat(k))]);
    let cand = registry::curve_poly("cand").unwrap();
    for k in [2, 3, 5] {
        match guess_ode(&restricted("h2", "t", &format!("{k}*t"), 70), 6, 5) {
            Ok(g) => c.that(g.ode.head().div_exact(&on_line(&cand, k)).is_some(), format!("h2 slope {k}")),
            Err(e) => c.that(false, format!("h2 slope {k}: {e}")),
        }
    }
    let conics = [registry::curve_poly("asym_conic1").unwrap(), registry::curve_poly("asym_conic2").unwrap()];
    for k in [2, 3, 5] {
        match guess_ode(&restricted("asym", "t", &format!("{k}*t"), 90), 6, 8) {
            Ok(g) => {
                for (i, q) in conics.iter().enumerate() {
                    let line = on_line(q, k);
                    c.that(g.ode.head().div_exact(&line).is_some(), format!("asym slope {k}: conic {} does not divide", i + 1));
                    c.that(poly_gcd(g.ode.head(), &line).degree(0) == 2, format!("asym slope {k}: conic {} gcd", i + 1));
                }
            }
            Err(e) => c.that(false, format!("asym slope {k}: {e}")),
        }
    }
}

fn ising(c: &mut Check) {
    let coords = |names: &str| if names.starts_with('k') { Coords::Kr } else { Coords::Wr };
    for row in common::table("chi.txt") {
        let names: Vec<&str> = row[1].split_whitespace().collect();
        let want = parse_poly(&row[2], &vars(&names)).unwrap();
        let n: u32 = row[0].parse().unwrap();
        c.eq(chi_catalog(n, coords(&row[1])).unwrap().product(), want, format!("catalog {n} {}", row[1]));
    }
    for row in common::table("chi_gcd.txt") {
        let names: Vec<&str> = row[0].split_whitespace().collect();
        let want = parse_poly(&row[1], &vars(&names)).unwrap().primitive();
        c.eq(chi_gcd(coords(&row[0])).unwrap(), want, format!("gcd {}", row[0]));
    }
    let kr = vars(&["k", "r"]);
    let nick = nickelian_curve(&NickelianIndex::new(4, 1, 4, 1).unwrap(), NickelMode::Exact).unwrap();
    c.eq(nonmonomial_part(&nick), parse_poly("k*r + 1 + k^2", &kr).unwrap(), "nickelian (4,1,4,+)");

    let report = kr_wr_report(3).unwrap();
    let f1 = report.matched.iter().find(|m| m.wr == 2);
    c.that(f1.is_some_and(|m| m.kr == vec![1, 2]), "factor1 <-> factor2 not matched on the full plane");
    c.that(report.isotropic.iter().any(|m| m.wr == 2 && m.kr == vec![1, 2]), "factor1 <-> factor2 not matched at r = 1");
    c.that(report.unmatched_kr.contains(&0), "k^2 - 1 not flagged");
    c.that(report.unmatched_wr.contains(&0), "w^2 - 1 not flagged");
}

fn curve_certificates(c: &mut Check) {
    let mut count = 0;
    for named in registry::CURVES {
        let cv = curve(named.name);
        for (x, y) in registry::curve_params(named.name).unwrap() {
            c.that(verify_parametrization(&cv, &Param::new(x, y).unwrap()), format!("parametrization of {}", named.name));
            count += 1;
        }
    }
    c.eq(count, 12, "parametrizations checked");

    let kr = vars(&["k", "r"]);
    let fiber = Curve::new(&parse_poly("3*r^2*k - r - k - k^2*r", &kr).unwrap()).unwrap();
    let g = genus_quadratic_fiber(&fiber, "k").unwrap();
    c.eq(g.genus, 1, "fiber genus");
    c.eq(g.discriminant, parse_poly("(3*r-1)*(3*r+1)*(r-1)*(r+1)", &kr).unwrap(), "fiber discriminant");
    for u in [frac(1, 3), frac(2, 5), rat(3), frac(-7, 4)] {
        for sign in [1, -1] {
            let p = registry::genus1_symbolic(sign).eval_var(2, &u).eval_var(3, &u);
            let cv = Curve::new(&p.with_vars(&kr).unwrap()).unwrap();
            c.eq(genus_quadratic_fiber(&cv, "k").unwrap().genus, 0, format!("U=V={u} sign {sign}"));
        }
    }

    c.eq(nickelian_j(&rat(0), &frac(1, 2)), JValue::Value(rat(1728)), "j(0, 1/2)");
    let grid: Vec<Rational> = [(-2, 1), (0, 1), (1, 4), (1, 2), (1, 1), (3, 2), (5, 1)].iter().map(|&(p, q)| frac(p, q)).collect();
    for a in &grid {
        for b in &grid {
            let degenerate = a == b || *a == rat(1) || *b == rat(1);
            c.eq(nickelian_j(a, b) == JValue::Degenerate, degenerate, format!("degeneracy at ({a}, {b})"));
        }
    }
}

fn property_suites(c: &mut Check) {
    use common::props::*;
    for (name, r) in [
        ("resultant vs common factor", resultant_vs_common_factor(11)),
        ("gcd divisibility", gcd_divisibility(12)),
        ("nullspace exactness", nullspace_exactness(13)),
        ("path independence", expansion_path_independence(31)),
        ("canonical round trip", canonical_round_trip(21)),
    ] {
        if let Err(e) = r {
            c.that(false, format!("{name}: {e}"));
        }
    }
}

type Criterion = (&'static str, fn(&mut Check));

fn main() {
    let criteria: [Criterion; 12] = [
        ("horn reproduction", horn_reproduction),
        ("parameter independence", parameter_independence),
        ("series fixtures", series_fixtures),
        ("annihilation", annihilation),
        ("guessing", guessing),
        ("log basis", log_solutions),
        ("square orders", square_orders),
        ("hadamard identity", hadamard_identity),
        ("slope cross-validation", slopes),
        ("ising catalogs", ising),
        ("curve certificates", curve_certificates),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut c = Check::default();
        if let Err(e) = catch_unwind(AssertUnwindSafe(|| run(&mut c))) {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            c.failed.push(format!("panicked: {}", msg.unwrap_or_default()));
        }
        let secs = start.elapsed().as_secs_f64();
        if c.failed.is_empty() {
            println!("PASS {:>2} {name} ({secs:.1}s)", i + 1);
        } else {
            failures += 1;
            println!("FAIL {:>2} {name} ({secs:.1}s)", i + 1);
            for f in &c.failed {
                println!("        {f}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
