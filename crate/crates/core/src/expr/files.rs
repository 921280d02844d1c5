//! Line-oriented text formats: spec files, series files, operator files and
//! ODE files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{parse_expr, Env, Expr};
use crate::arith::rational::parse_rational;
use crate::arith::{vars, MPoly, RatFun, Rational, Vars};
use crate::error::{Error, Result};
use crate::ode::UniODE;
use crate::series::{index_vars, BiSeries, HyperSpec, UniSeries};
use crate::theta::ThetaOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecKind {
    Ratio { alpha1: Expr, alpha2: Expr },
    Formula { coeff: Expr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub name: String,
    /// Series variables, `x y` unless declared otherwise.
    pub vars: Vec<String>,
    pub kind: SpecKind,
    pub params: BTreeMap<String, Rational>,
}

impl SpecFile {
    pub fn env(&self) -> Env {
        self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    /// The ratio pair, derived symbolically for formula specs.
    pub fn hyper(&self) -> Result<HyperSpec> {
        let iv = index_vars();
        let env = self.env();
        match &self.kind {
            SpecKind::Ratio { alpha1, alpha2 } => Ok(HyperSpec {
                alpha1: alpha1.to_ratfun(&iv, &env)?,
                alpha2: alpha2.to_ratfun(&iv, &env)?,
            }),
            SpecKind::Formula { coeff } => crate::series::ratios_from_formula(coeff, &env),
        }
    }

    pub fn expand(&self, order: usize) -> Result<BiSeries> {
        match &self.kind {
            SpecKind::Ratio { .. } => crate::series::expand_from_ratios(&self.hyper()?, order),
            SpecKind::Formula { coeff } => crate::series::expand_from_formula(coeff, &self.env(), order),
        }
    }

    /// Restriction to `x = xp(t)`, `y = yp(t)` through `t^order`.
    pub fn restrict(&self, xp: &RatFun, yp: &RatFun, order: usize) -> Result<UniSeries> {
        // a zero substitution only ever sees index 0 in its direction
        let val = |r: &RatFun| -> Result<usize> { Ok(UniSeries::from_ratfun(r, order)?.valuation().unwrap_or(order + 1)) };
        let (vx, vy) = (val(xp)?, val(yp)?);
        if vx == 0 || vy == 0 {
            return Err(Error::NonzeroAtOrigin);
        }
        let b = self.expand(crate::series::needed_biorder(order, vx, vy))?;
        crate::series::restrict(&b, xp, yp, order)
    }

    /// Same spec with some parameters rebound.
    pub fn with_params(&self, kv: &[(&str, Rational)]) -> SpecFile {
        let mut s = self.clone();
        for (k, v) in kv {
            s.params.insert(k.to_string(), v.clone());
        }
        s
    }
}

fn invalid(field: &str, msg: impl Into<String>) -> Error {
    Error::ValidationError { field: field.into(), msg: msg.into() }
}

/// Parses the `[spec]` format.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut fields: BTreeMap<String, (String, usize)> = BTreeMap::new();
    let mut params = BTreeMap::new();
    let mut header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "[spec]" {
            header = true;
            continue;
        }
        if !header {
            return Err(Error::SyntaxError { line: i + 1, col: 1, msg: "expected [spec] header".into() });
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::SyntaxError { line: i + 1, col: 1, msg: "expected key = value".into() });
        };
        let (k, v) = (k.trim(), v.trim());
        if let Some(p) = k.strip_prefix("param.") {
            let q = parse_rational(v).ok_or_else(|| invalid(k, format!("not a rational: {v}")))?;
            params.insert(p.to_string(), q);
        } else {
            fields.insert(k.to_string(), (v.to_string(), i + 1));
        }
    }
    if !header {
        return Err(invalid("[spec]", "missing header"));
    }
    let get = |k: &str| fields.get(k).map(|(v, _)| v.as_str()).ok_or_else(|| invalid(k, "missing"));
    let name = get("name")?.to_string();
    let vars: Vec<String> = match fields.get("vars") {
        Some((v, _)) => v.split_whitespace().map(String::from).collect(),
        None => vec!["x".into(), "y".into()],
    };
    if vars.len() != 2 {
        return Err(invalid("vars", "need exactly two series variables"));
    }
    let mut names: Vec<&str> = vec!["n", "m"];
    names.extend(params.keys().map(|s| s.as_str()));
    let expr = |k: &str| -> Result<Expr> {
        let (text, line) = fields.get(k).ok_or_else(|| invalid(k, "missing"))?;
        parse_expr(text, &names).map_err(|e| match e {
            Error::SyntaxError { col, msg, .. } => Error::SyntaxError { line: *line, col, msg },
            Error::UnknownVariable(v) => invalid(k, format!("unknown name {v}")),
            other => other,
        })
    };
    let kind = match get("kind")? {
        "ratio" => {
            if fields.contains_key("coeff") {
                return Err(invalid("coeff", "not allowed for ratio specs"));
            }
            SpecKind::Ratio { alpha1: expr("alpha1")?, alpha2: expr("alpha2")? }
        }
        "formula" => {
            for k in ["alpha1", "alpha2"] {
                if fields.contains_key(k) {
                    return Err(invalid(k, "not allowed for formula specs"));
                }
            }
            SpecKind::Formula { coeff: expr("coeff")? }
        }
        other => return Err(invalid("kind", format!("expected ratio or formula, got {other}"))),
    };
    for k in fields.keys() {
        if !["name", "kind", "vars", "alpha1", "alpha2", "coeff"].contains(&k.as_str()) {
            return Err(invalid(k, "unknown key"));
        }
    }
    Ok(SpecFile { name, vars, kind, params })
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::IoError(e.to_string()))?;
    parse_spec(&text)
}

pub fn write_spec(s: &SpecFile) -> String {
    let mut out = String::from("[spec]\n");
    let _ = writeln!(out, "name = {}", s.name);
    match &s.kind {
        SpecKind::Ratio { alpha1, alpha2 } => {
            let _ = writeln!(out, "kind = ratio\nvars = {}\nalpha1 = {alpha1}\nalpha2 = {alpha2}", s.vars.join(" "));
        }
        SpecKind::Formula { coeff } => {
            let _ = writeln!(out, "kind = formula\nvars = {}\ncoeff = {coeff}", s.vars.join(" "));
        }
    }
    for (k, v) in &s.params {
        let _ = writeln!(out, "param.{k} = {v}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesData {
    Uni(String, UniSeries),
    Bi([String; 2], BiSeries),
}

pub fn write_uni_series(s: &UniSeries, var: &str) -> String {
    let mut out = format!("vars: {var}\n");
    for (k, c) in s.coeffs.iter().enumerate() {
        let _ = writeln!(out, "{k} {c}");
    }
    out
}

/// Only nonzero coefficients are listed; the order is written as a comment.
pub fn write_bi_series(s: &BiSeries, vx: &str, vy: &str) -> String {
    let mut out = format!("vars: {vx} {vy}\n# order {}\n", s.order());
    for (n, m, c) in s.nonzero() {
        let _ = writeln!(out, "{n} {m} {c}");
    }
    out
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::SyntaxError { line, col: 1, msg: msg.into() }
}

/// Reads a series file. Missing bivariate entries are zero; the order is
/// the `# order N` comment when present, else the largest listed degree.
pub fn parse_series(text: &str) -> Result<SeriesData> {
    let mut lines = text.lines().enumerate();
    let (names, order_hint) = loop {
        let Some((i, l)) = lines.next() else { return Err(syntax(1, "missing vars header")) };
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        let Some(rest) = l.strip_prefix("vars:") else { return Err(syntax(i + 1, "expected vars: header")) };
        break (rest.split_whitespace().map(String::from).collect::<Vec<_>>(), None::<usize>);
    };
    let mut order_hint = order_hint;
    let mut entries: Vec<(Vec<usize>, Rational, usize)> = Vec::new();
    for (i, raw) in lines {
        let l = raw.trim();
        if let Some(c) = l.strip_prefix('#') {
            if let Some(n) = c.trim().strip_prefix("order") {
                order_hint = n.trim().parse().ok();
            }
            continue;
        }
        if l.is_empty() {
            continue;
        }
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != names.len() + 1 {
            return Err(syntax(i + 1, "wrong number of fields"));
        }
        let idx = parts[..names.len()]
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| syntax(i + 1, "bad index")))
            .collect::<Result<Vec<_>>>()?;
        let c = parse_rational(parts[names.len()]).ok_or_else(|| syntax(i + 1, "bad coefficient"))?;
        entries.push((idx, c, i + 1));
    }
    match names.len() {
        1 => {
            let n = entries.iter().map(|e| e.0[0]).max().unwrap_or(0);
            let mut s = UniSeries::zero(order_hint.unwrap_or(n).max(n));
            for (idx, c, _) in entries {
                s.coeffs[idx[0]] = c;
            }
            Ok(SeriesData::Uni(names[0].clone(), s))
        }
        2 => {
            let n = entries.iter().map(|e| e.0[0] + e.0[1]).max().unwrap_or(0);
            let order = order_hint.unwrap_or(n);
            let mut s = BiSeries::zero(order);
            for (idx, c, line) in entries {
                if idx[0] + idx[1] > order {
                    return Err(syntax(line, "index beyond declared order"));
                }
                s.set(idx[0], idx[1], c);
            }
            Ok(SeriesData::Bi([names[0].clone(), names[1].clone()], s))
        }
        _ => Err(syntax(1, "series files have one or two variables")),
    }
}

/// `op-vars: x y` then `a b : Q(tx,ty)` per term.
pub fn write_operator(op: &ThetaOp) -> String {
    let mut out = format!("op-vars: {}\n", op.vars().join(" "));
    for (shift, q) in op.terms() {
        let idx: Vec<String> = shift.iter().map(|a| a.to_string()).collect();
        let _ = writeln!(out, "{} : {}", idx.join(" "), q);
    }
    out
}

pub fn parse_operator(text: &str) -> Result<ThetaOp> {
    let mut vs: Option<Vars> = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("op-vars:") {
            let names: Vec<&str> = rest.split_whitespace().collect();
            if names.is_empty() || names.len() > 2 {
                return Err(syntax(i + 1, "one or two operator variables"));
            }
            vs = Some(vars(&names));
            continue;
        }
        let Some(v) = &vs else { return Err(syntax(i + 1, "missing op-vars header")) };
        let Some((idx, q)) = l.split_once(':') else { return Err(syntax(i + 1, "expected `a b : Q`")) };
        let shift = idx
            .split_whitespace()
            .map(|p| p.parse::<u32>().map_err(|_| syntax(i + 1, "bad shift")))
            .collect::<Result<Vec<_>>>()?;
        if shift.len() != v.len() {
            return Err(syntax(i + 1, "shift length differs from op-vars"));
        }
        let tv = ThetaOp::theta_vars(v);
        let q = super::parse_poly(q.trim(), &tv).map_err(|e| match e {
            Error::SyntaxError { col, msg, .. } => Error::SyntaxError { line: i + 1, col, msg },
            other => other,
        })?;
        terms.push((shift, q));
    }
    let v = vs.ok_or_else(|| syntax(1, "missing op-vars header"))?;
    ThetaOp::from_terms(&v, terms)
}

/// `j : p_j(t)` per order; the variable is `t`.
pub fn write_ode(ode: &UniODE) -> String {
    let mut out = String::new();
    for (j, p) in ode.coeffs().iter().enumerate() {
        if !p.is_zero() {
            let _ = writeln!(out, "{j} : {p}");
        }
    }
    out
}

pub fn parse_ode(text: &str) -> Result<UniODE> {
    let tv = vars(&["t"]);
    let mut coeffs: Vec<MPoly> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let Some((j, p)) = l.split_once(':') else { return Err(syntax(i + 1, "expected `j : p(t)`")) };
        let j: usize = j.trim().parse().map_err(|_| syntax(i + 1, "bad order"))?;
        let p = super::parse_poly(p.trim(), &tv)?;
        if coeffs.len() <= j {
            coeffs.resize(j + 1, MPoly::zero(&tv));
        }
        coeffs[j] = &coeffs[j] + &p;
    }
    UniODE::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const H2: &str = "[spec]\n# cubic factorial ratios\nname = h2\nkind = ratio\nalpha1 = (3*n+3*m+1)*(3*n+3*m+2)*(3*n+3*m+3)/(n+1)^3\nalpha2 = (3*n+3*m+1)*(3*n+3*m+2)*(3*n+3*m+3)/(m+1)^3\n";

    #[test]
    fn ratio_spec_parses_and_expands() {
        let s = parse_spec(H2).unwrap();
        assert_eq!(s.name, "h2");
        let b = s.expand(2).unwrap();
        assert_eq!(b.get(1, 1), &rat(720));
        assert_eq!(parse_spec(&write_spec(&s)).unwrap(), s);
    }

    #[test]
    fn missing_alpha2_names_field() {
        let text = H2.lines().filter(|l| !l.starts_with("alpha2")).collect::<Vec<_>>().join("\n");
        match parse_spec(&text).unwrap_err() {
            Error::ValidationError { field, .. } => assert_eq!(field, "alpha2"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn formula_spec_with_params() {
        let text = "[spec]\nname = p\nkind = formula\ncoeff = poch(a, n)*poch(a, m)/(fact(n)*fact(m))\nparam.a = 1/2\n";
        let s = parse_spec(text).unwrap();
        let b = s.expand(3).unwrap();
        assert_eq!(b.get(1, 1), &(crate::arith::frac(1, 4)));
        let bad = "[spec]\nname = p\nkind = formula\ncoeff = poch(b, n)\n";
        assert!(matches!(parse_spec(bad).unwrap_err(), Error::ValidationError { .. }));
    }

    #[test]
    fn series_round_trip() {
        let u = UniSeries::from_ints(&[1, 12, 900, 94080]);
        assert_eq!(parse_series(&write_uni_series(&u, "t")).unwrap(), SeriesData::Uni("t".into(), u));
        let b = BiSeries::from_fn(3, |n, m| rat((n * 10 + m) as i64));
        match parse_series(&write_bi_series(&b, "x", "y")).unwrap() {
            SeriesData::Bi(_, b2) => assert_eq!(b2, b),
            _ => panic!(),
        }
    }

    #[test]
    fn operator_and_ode_round_trip() {
        let op = parse_operator("op-vars: x y\n0 0 : tx^3\n1 0 : -(3*tx+3*ty+1)*(3*tx+3*ty+2)*(3*tx+3*ty+3)\n").unwrap();
        assert_eq!(parse_operator(&write_operator(&op)).unwrap(), op);
        let ode = parse_ode("0 : -1\n1 : 1 - t\n").unwrap();
        assert_eq!(parse_ode(&write_ode(&ode)).unwrap(), ode);
        assert_eq!(ode.order(), 1);
    }
}
