mod resolve;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hornsing::arith::{poly_gcd, resultant, vars, MPoly, RatFun};
use hornsing::curve::{
    affine_singular_points, genus_quadratic_fiber, nickelian_j, substitute_compare, verify_parametrization, Curve, JValue,
    MatchReport, Param,
};
use hornsing::expr::files::{write_bi_series, SpecFile, write_ode, write_uni_series};
use hornsing::expr::print_canonical;
use hornsing::horn::{eliminate, horn_limit_maps_along};
use hornsing::ising::{self, Coords, NickelMode, NickelianIndex};
use hornsing::ode::{annihilates_series, guess_ode};
use hornsing::registry;
use hornsing::series::{hadamard, UniSeries};
use hornsing::theta::{annihilates, log_basis};
use hornsing::Error;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = Result<T, Failure>;

#[derive(Parser)]
#[command(name = "hornsing", version, about = "Exact computations with holonomic double series and their singular curves")]
struct Cli {
    /// Print one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SpecArgs {
    /// Registry name or spec file.
    spec: String,
    /// Parameter bindings, e.g. `M=4,alpha=1/3`.
    #[arg(long = "set")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singular curve of a hypergeometric double series by Horn limits.
    Horn {
        #[command(flatten)]
        spec: SpecArgs,
        /// Take the limit along (n, m) = (1, t).
        #[arg(long)]
        swapped: bool,
    },
    /// Double series coefficients through total degree `order`.
    Series {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Restriction to a curve `x=<expr>,y=<expr>` in `t`.
    Restrict {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, alias = "param", default_value = "x=t,y=t")]
        restrict: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Fit a linear ODE to a restricted series.
    GuessOde {
        #[arg(long)]
        spec: String,
        #[arg(long = "set")]
        set: Vec<String>,
        #[arg(long, default_value = "x=t,y=t")]
        restrict: String,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_degree: usize,
        /// Series order to use; defaults to the minimum the bounds need.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Check that an operator or system kills a series.
    Annihilate {
        /// Registry operator or operator file.
        op: String,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 14)]
        order: usize,
        /// Restriction used for univariate operators.
        #[arg(long, default_value = "x=t,y=t")]
        restrict: String,
    },
    /// Formal solutions with logarithms of a theta system.
    Logbasis {
        op: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        max_log: u32,
    },
    /// Termwise product of two univariate series files.
    Hadamard { a: String, b: String },
    Resultant {
        a: String,
        b: String,
        /// Variable to eliminate.
        #[arg(long)]
        var: String,
        #[arg(long, default_value = "x,y,t")]
        vars: String,
    },
    Gcd {
        a: String,
        b: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
    #[command(subcommand)]
    Curve(CurveCmd),
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Nickelian curve for `(n, j, l)`.
    Nickelian {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        l: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    #[command(subcommand)]
    Registry(RegistryCmd),
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Check the registry parametrizations, or `--x`/`--y` in `u`.
    VerifyParam {
        curve: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
        #[arg(long, requires = "y")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
    },
    /// Genus through the discriminant in a variable of degree two.
    Genus {
        curve: String,
        #[arg(long)]
        var: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
    Singular {
        curve: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
    Jinv {
        #[arg(long, allow_hyphen_values = true)]
        u2: String,
        #[arg(long, allow_hyphen_values = true)]
        v2: String,
    },
    /// Pull two curves back to common variables and compare.
    Compare {
        c1: String,
        c2: String,
        #[arg(long)]
        map1: String,
        #[arg(long)]
        map2: String,
        /// Variables of the maps.
        #[arg(long, default_value = "s,r")]
        target: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    Chi3 {
        #[arg(long, value_enum, default_value_t = CoordArg::Kr)]
        coords: CoordArg,
    },
    Chi4 {
        #[arg(long, value_enum, default_value_t = CoordArg::Kr)]
        coords: CoordArg,
    },
    /// Common factors of the two catalogs.
    Gcd {
        #[arg(long, value_enum, default_value_t = CoordArg::Kr)]
        coords: CoordArg,
    },
    /// Genus of every catalog factor that is quadratic in a variable.
    Audit,
    /// Match (k,r) factors against (w,r) factors.
    Report {
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum RegistryCmd {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoordArg {
    Kr,
    Wr,
}

impl From<CoordArg> for Coords {
    fn from(c: CoordArg) -> Coords {
        match c {
            CoordArg::Kr => Coords::Kr,
            CoordArg::Wr => Coords::Wr,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Symbolic,
    Float,
}

/// Text and JSON forms of one command result.
struct Output {
    command: &'static str,
    inputs: Value,
    result: Value,
    tag: Option<&'static str>,
    text: String,
}

fn poly_str(p: &MPoly) -> String {
    print_canonical(p)
}

fn ratfun_str(r: &RatFun) -> String {
    r.to_string()
}

fn series_map(sf: &SpecFile, text: &str) -> Res<Vec<RatFun>> {
    resolve::map(text, &sf.vars, &vars(&["t"]))
}

fn restricted(spec: &SpecArgs, param: &str, order: usize) -> Res<UniSeries> {
    let (sf, _) = resolve::spec(&spec.spec, &spec.set)?;
    let m = series_map(&sf, param)?;
    Ok(sf.restrict(&m[0], &m[1], order)?)
}

fn run(cmd: Cmd) -> Res<Output> {
    Ok(match cmd {
        Cmd::Horn { spec, swapped } => {
            let (sf, tag) = resolve::spec(&spec.spec, &spec.set)?;
            let h = eliminate(&horn_limit_maps_along(&sf.hyper()?, swapped)?)?;
            let curve = h.main_curve.to_string();
            let [a, b] = h.monomial_components;
            let axis = |v: &Option<hornsing::arith::Rational>| v.as_ref().map(|q| q.to_string());
            let (ax, ay) = (axis(&h.axis_values.0), axis(&h.axis_values.1));
            let text = format!(
                "curve: {curve}\nmonomial: x^{a}*y^{b}\nX(inf): {}\nY(0): {}\n",
                ax.as_deref().unwrap_or("inf"),
                ay.as_deref().unwrap_or("inf")
            );
            Output {
                command: "horn",
                inputs: json!({"spec": spec.spec, "set": spec.set, "swapped": swapped}),
                result: json!({"curve": curve, "monomial": [a, b], "axis": {"x_at_infinity": ax, "y_at_zero": ay}}),
                tag,
                text,
            }
        }
        Cmd::Series { spec, order } => {
            let (sf, tag) = resolve::spec(&spec.spec, &spec.set)?;
            let s = sf.expand(order)?;
            let (vx, vy) = (sf.vars[0].as_str(), sf.vars[1].as_str());
            let coeffs: Vec<Value> = s.nonzero().iter().map(|(n, m, c)| json!([n, m, c.to_string()])).collect();
            Output {
                command: "series",
                inputs: json!({"spec": spec.spec, "set": spec.set, "order": order}),
                result: json!({"vars": [vx, vy], "coefficients": coeffs}),
                tag,
                text: write_bi_series(&s, vx, vy),
            }
        }
        Cmd::Restrict { spec, restrict: param, order } => {
            let (sf, tag) = resolve::spec(&spec.spec, &spec.set)?;
            let m = series_map(&sf, &param)?;
            let s = sf.restrict(&m[0], &m[1], order)?;
            Output {
                command: "restrict",
                inputs: json!({"spec": spec.spec, "set": spec.set, "restrict": param, "order": order}),
                result: json!({"coefficients": uni_json(&s)}),
                tag,
                text: write_uni_series(&s, "t"),
            }
        }
        Cmd::GuessOde { spec, set, restrict, max_order, max_degree, terms } => {
            let (sf, tag) = resolve::spec(&spec, &set)?;
            let m = series_map(&sf, &restrict)?;
            let order = terms.unwrap_or((max_order + 1) * (max_degree + 1) + max_order + 10);
            let s = sf.restrict(&m[0], &m[1], order)?;
            let g = guess_ode(&s, max_order, max_degree)?;
            let coeffs: Vec<String> = g.ode.coeffs().iter().map(|p| p.to_string()).collect();
            Output {
                command: "guess-ode",
                inputs: json!({"spec": spec, "set": set, "restrict": restrict, "max_order": max_order,
                    "max_degree": max_degree, "terms": order}),
                result: json!({"order": g.order, "degree": g.degree, "ode": coeffs, "theta": g.theta.to_string(),
                    "checked_margin": g.checked_margin}),
                tag,
                text: format!("order: {}\ndegree: {}\ntheta: {}\n{}", g.order, g.degree, g.theta, write_ode(&g.ode)),
            }
        }
        Cmd::Annihilate { op, spec, order, restrict } => {
            let o = resolve::operator(&op)?;
            let ok = if o.system.iter().all(|t| t.nvars() == 1) {
                let s = restricted(&spec, &restrict, order)?;
                annihilates_series(&o.ode()?, &s)?
            } else {
                let (sf, _) = resolve::spec(&spec.spec, &spec.set)?;
                annihilates(&o.system, &sf.expand(order)?)?
            };
            Output {
                command: "annihilate",
                inputs: json!({"op": op, "spec": spec.spec, "set": spec.set, "order": order}),
                result: json!({"annihilates": ok}),
                tag: o.tag,
                text: format!("annihilates: {ok}\n"),
            }
        }
        Cmd::Logbasis { op, order, max_log } => {
            let o = resolve::operator(&op)?;
            let (dim, basis) = log_basis(&o.system, order, max_log)?;
            let leads: Vec<Value> = basis.iter().map(|b| json!(b.leading_log())).collect();
            let names = o.system[0].vars().clone();
            let mut text = format!("dimension: {dim}\n");
            for b in &basis {
                if let Some((i, j)) = b.leading_log() {
                    let logs = match &names[..] {
                        [x] => format!("ln({x})^{i}"),
                        [x, y, ..] => format!("ln({x})^{i}*ln({y})^{j}"),
                        [] => String::new(),
                    };
                    let _ = writeln!(text, "leading log: {logs}");
                }
            }
            Output {
                command: "logbasis",
                inputs: json!({"op": op, "order": order, "max_log": max_log}),
                result: json!({"dimension": dim, "leading_logs": leads}),
                tag: o.tag,
                text,
            }
        }
        Cmd::Hadamard { a, b } => {
            let s = hadamard(&resolve::uni_series(&a)?, &resolve::uni_series(&b)?)?;
            Output {
                command: "hadamard",
                inputs: json!({"a": a, "b": b}),
                result: json!({"coefficients": uni_json(&s)}),
                tag: None,
                text: write_uni_series(&s, "t"),
            }
        }
        Cmd::Resultant { a, b, var, vars: names } => {
            let vs = resolve::name_list(&names);
            let pa = hornsing::expr::parse_poly(&a, &vs)?;
            let pb = hornsing::expr::parse_poly(&b, &vs)?;
            let r = resultant(&pa, &pb, &var)?.to_string();
            Output {
                command: "resultant",
                inputs: json!({"a": a, "b": b, "var": var, "vars": names}),
                result: json!({"resultant": r}),
                tag: None,
                text: format!("{r}\n"),
            }
        }
        Cmd::Gcd { a, b, vars: names } => {
            let vs = resolve::name_list(&names);
            let pa = hornsing::expr::parse_poly(&a, &vs)?;
            let pb = hornsing::expr::parse_poly(&b, &vs)?;
            let g = poly_str(&poly_gcd(&pa, &pb).primitive());
            Output {
                command: "gcd",
                inputs: json!({"a": a, "b": b, "vars": names}),
                result: json!({"gcd": g}),
                tag: None,
                text: format!("{g}\n"),
            }
        }
        Cmd::Curve(c) => run_curve(c)?,
        Cmd::Catalog(c) => run_catalog(c)?,
        Cmd::Nickelian { n, j, l, sign, mode } => {
            let idx = NickelianIndex::new(n, j, l, sign)?;
            let m = match mode {
                Mode::Exact => NickelMode::Exact,
                Mode::Symbolic => NickelMode::Symbolic,
                Mode::Float => NickelMode::Float,
            };
            let c = ising::nickelian_curve(&idx, m)?;
            let rest = poly_str(&ising::nonmonomial_part(&c));
            Output {
                command: "nickelian",
                inputs: json!({"n": n, "j": j, "l": l, "sign": sign, "mode": mode_name(mode)}),
                result: json!({"curve": c.to_string(), "nonmonomial": rest}),
                tag: Some("Nickelian singular curve"),
                text: format!("curve: {c}\nnonmonomial: {rest}\n"),
            }
        }
        Cmd::Registry(RegistryCmd::List) => {
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut add = |kind: &str, name: &str, tag: &str| {
                let _ = writeln!(text, "{kind:9} {name:12} {tag}");
                rows.push(json!({"kind": kind, "name": name, "tag": tag}));
            };
            for s in registry::SPECS {
                add("spec", s.name, s.tag);
            }
            for o in registry::OPERATORS {
                add("operator", o.name, o.tag);
            }
            add("operator", "w6(c)", "head of the order-six slope operator (head only)");
            for c in registry::CURVES {
                add("curve", c.name, c.tag);
            }
            add("curve", "genus1", "symbolic Nickelian curve in k, r, U, V");
            Output { command: "registry list", inputs: json!({}), result: json!(rows), tag: None, text }
        }
    })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::Symbolic => "symbolic",
        Mode::Float => "float",
    }
}

fn uni_json(s: &UniSeries) -> Vec<String> {
    (0..=s.order()).map(|k| s.get(k).to_string()).collect()
}

fn run_curve(c: CurveCmd) -> Res<Output> {
    Ok(match c {
        CurveCmd::VerifyParam { curve, vars: names, x, y } => {
            let nc = resolve::curve(&curve, &names)?;
            let c = Curve::new(&nc.poly)?;
            let params = match (x, y) {
                (Some(x), Some(y)) => {
                    let u = vars(&["u"]);
                    vec![(hornsing::expr::parse_ratfun(&x, &u)?, hornsing::expr::parse_ratfun(&y, &u)?)]
                }
                _ => nc.params,
            };
            if params.is_empty() {
                return Err(Failure::Usage(format!("`{curve}` has no stored parametrization; give --x and --y")));
            }
            let mut text = String::new();
            let mut res = Vec::new();
            for (xp, yp) in params {
                let ok = verify_parametrization(&c, &Param::new(xp.clone(), yp.clone())?);
                let _ = writeln!(text, "({}, {}): {ok}", ratfun_str(&xp), ratfun_str(&yp));
                res.push(json!({"x": ratfun_str(&xp), "y": ratfun_str(&yp), "on_curve": ok}));
            }
            Output { command: "curve verify-param", inputs: json!({"curve": curve}), result: json!(res), tag: nc.tag, text }
        }
        CurveCmd::Genus { curve, var, vars: names } => {
            let nc = resolve::curve(&curve, &names)?;
            let g = genus_quadratic_fiber(&Curve::new(&nc.poly)?, &var)?;
            let d = g.discriminant.to_string();
            Output {
                command: "curve genus",
                inputs: json!({"curve": curve, "var": var}),
                result: json!({"genus": g.genus, "discriminant": d, "odd_degree": g.odd_degree}),
                tag: nc.tag,
                text: format!("genus: {}\ndiscriminant: {d}\nodd degree: {}\n", g.genus, g.odd_degree),
            }
        }
        CurveCmd::Singular { curve, vars: names } => {
            let nc = resolve::curve(&curve, &names)?;
            let s = affine_singular_points(&Curve::new(&nc.poly)?)?;
            let pts: Vec<Value> = s.points.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect();
            let residual: Vec<String> = s.residual.iter().map(poly_str).collect();
            let mut text = String::new();
            for (a, b) in &s.points {
                let _ = writeln!(text, "({a}, {b})");
            }
            for r in &residual {
                let _ = writeln!(text, "unresolved: {r}");
            }
            Output {
                command: "curve singular",
                inputs: json!({"curve": curve}),
                result: json!({"points": pts, "residual": residual}),
                tag: nc.tag,
                text,
            }
        }
        CurveCmd::Jinv { u2, v2 } => {
            let (a, b) = (resolve::rational(&u2)?, resolve::rational(&v2)?);
            let j = match nickelian_j(&a, &b) {
                JValue::Value(q) => Some(q.to_string()),
                JValue::Degenerate => None,
            };
            Output {
                command: "curve jinv",
                inputs: json!({"u2": u2, "v2": v2}),
                result: json!({"j": j}),
                tag: None,
                text: format!("{}\n", j.as_deref().unwrap_or("degenerate")),
            }
        }
        CurveCmd::Compare { c1, c2, map1, map2, target, vars: names } => {
            let (a, b) = (resolve::curve(&c1, &names)?, resolve::curve(&c2, &names)?);
            let tv = resolve::name_list(&target);
            let m1 = resolve::map(&map1, a.poly.vars(), &tv)?;
            let m2 = resolve::map(&map2, b.poly.vars(), &tv)?;
            let (word, extra) = match substitute_compare(&a.poly, &m1, &b.poly, &m2)? {
                MatchReport::Equal => ("equal", None),
                MatchReport::Proportional(q) => ("proportional", Some(q.to_string())),
                MatchReport::SameZeroSet => ("same-zero-set", None),
                MatchReport::Distinct { gcd } => ("distinct", Some(poly_str(&gcd))),
            };
            let text = match &extra {
                Some(e) => format!("{word} {e}\n"),
                None => format!("{word}\n"),
            };
            Output {
                command: "curve compare",
                inputs: json!({"c1": c1, "c2": c2, "map1": map1, "map2": map2, "target": target}),
                result: json!({"verdict": word, "detail": extra}),
                tag: None,
                text,
            }
        }
    })
}

fn factors_out(factors: &[(MPoly, u32)]) -> (String, Value) {
    let mut text = String::new();
    let mut rows = Vec::new();
    for (p, e) in factors {
        let s = poly_str(p);
        let _ = writeln!(text, "({s})^{e}");
        rows.push(json!({"factor": s, "multiplicity": e}));
    }
    (text, json!(rows))
}

fn run_catalog(c: CatalogCmd) -> Res<Output> {
    Ok(match c {
        CatalogCmd::Chi3 { coords } | CatalogCmd::Chi4 { coords } => {
            let n = if matches!(c, CatalogCmd::Chi3 { .. }) { 3 } else { 4 };
            let cat = ising::chi_catalog(n, coords.into())?;
            let (text, result) = factors_out(&cat.factors);
            let cname = Coords::from(coords).names().join("");
            Output {
                command: if n == 3 { "catalog chi3" } else { "catalog chi4" },
                inputs: json!({"coords": cname}),
                result,
                tag: Some("Ising singular curve catalog"),
                text,
            }
        }
        CatalogCmd::Gcd { coords } => {
            let g = poly_str(&ising::chi_gcd(coords.into())?);
            Output {
                command: "catalog gcd",
                inputs: json!({"coords": Coords::from(coords).names().join("")}),
                result: json!({"gcd": g}),
                tag: Some("common singular factors"),
                text: format!("{g}\n"),
            }
        }
        CatalogCmd::Audit => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for a in ising::elliptic_audit()? {
                let f = poly_str(&a.factor);
                let cname = a.coords.names().join("");
                let _ = writeln!(
                    text,
                    "chi{} {cname} genus {} fiber {} {f}{}",
                    a.n,
                    a.genus,
                    a.fiber_var.as_deref().unwrap_or("-"),
                    match a.parametrization {
                        Some(ok) => format!(" param {ok}"),
                        None => String::new(),
                    }
                );
                rows.push(json!({"n": a.n, "coords": cname, "factor": f, "fiber_var": a.fiber_var,
                    "genus": a.genus, "parametrization": a.parametrization}));
            }
            Output { command: "catalog audit", inputs: json!({}), result: json!(rows), tag: None, text }
        }
        CatalogCmd::Report { n } => {
            let r = ising::kr_wr_report(n)?;
            let kr = ising::chi_catalog(n, Coords::Kr)?.factors;
            let wr = ising::chi_catalog(n, Coords::Wr)?.factors;
            let show = |f: &[(MPoly, u32)], i: usize| poly_str(&f[i].0);
            let mut text = String::new();
            let mut matched = Vec::new();
            for m in &r.matched {
                let ks: Vec<String> = m.kr.iter().map(|&i| show(&kr, i)).collect();
                let _ = writeln!(text, "match {} <-> {} (ratio {})", show(&wr, m.wr), ks.join(" * "), m.ratio);
                matched.push(json!({"wr": show(&wr, m.wr), "kr": ks, "ratio": m.ratio.to_string()}));
            }
            let uk: Vec<String> = r.unmatched_kr.iter().map(|&i| show(&kr, i)).collect();
            let uw: Vec<String> = r.unmatched_wr.iter().map(|&i| show(&wr, i)).collect();
            let ow: Vec<String> = r.origin_wr.iter().map(|&i| show(&wr, i)).collect();
            let mut iso = Vec::new();
            for m in &r.isotropic {
                let ks: Vec<String> = m.kr.iter().map(|&i| show(&kr, i)).collect();
                let _ = writeln!(text, "match at r=1 {} <-> {} (ratio {})", show(&wr, m.wr), ks.join(" * "), m.ratio);
                iso.push(json!({"wr": show(&wr, m.wr), "kr": ks, "ratio": m.ratio.to_string()}));
            }
            for s in &uk {
                let _ = writeln!(text, "unmatched kr {s}");
            }
            for s in &uw {
                let _ = writeln!(text, "unmatched wr {s}");
            }
            for s in &ow {
                let _ = writeln!(text, "origin wr {s}");
            }
            Output {
                command: "catalog report",
                inputs: json!({"n": n}),
                result: json!({"matched": matched, "unmatched_kr": uk, "unmatched_wr": uw, "origin_wr": ow,
                    "isotropic": iso}),
                tag: None,
                text,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            if cli.json {
                let rec = json!({"command": out.command, "inputs": out.inputs, "result": out.result, "tag": out.tag});
                println!("{rec}");
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            if cli.json {
                println!("{}", json!({"error": e.name(), "message": e.to_string()}));
            }
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
