//! Turns command line words into library objects: registry names first,
//! then files, then inline text.

use std::path::Path;

use hornsing::arith::{vars, MPoly, RatFun, Rational, Vars};
use hornsing::expr::files::{load_spec, parse_ode, parse_operator, parse_series, SeriesData, SpecFile};
use hornsing::expr::{parse_expr, parse_poly, parse_ratfun};
use hornsing::ode::UniODE;
use hornsing::registry;
use hornsing::series::UniSeries;
use hornsing::theta::ThetaOp;
use hornsing::Error;

use crate::Failure;

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(Error::IoError(format!("{path}: {e}"))))
}

fn is_file(word: &str) -> bool {
    Path::new(word).is_file()
}

pub fn rational(text: &str) -> Result<Rational, Failure> {
    parse_expr(text, &[])
        .ok()
        .and_then(|e| e.constant_value())
        .ok_or_else(|| Failure::Usage(format!("`{text}` is not a rational number")))
}

pub fn name_list(text: &str) -> Vars {
    let names: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    vars(&names)
}

/// `a=1/2,M=3` style bindings.
pub fn bindings(list: &[String]) -> Result<Vec<(String, Rational)>, Failure> {
    let mut out = Vec::new();
    for item in list.iter().flat_map(|s| s.split(',')) {
        let (k, v) = item.split_once('=').ok_or_else(|| Failure::Usage(format!("expected name=value, got `{item}`")))?;
        out.push((k.trim().to_string(), rational(v.trim())?));
    }
    Ok(out)
}

/// Spec from the registry or a spec file, with parameters rebound.
pub fn spec(word: &str, set: &[String]) -> Result<(SpecFile, Option<&'static str>), Failure> {
    let (s, tag) = if let Ok(named) = registry::named_spec(word) {
        (registry::spec(word)?, Some(named.tag))
    } else if is_file(word) {
        (load_spec(word)?, None)
    } else {
        return Err(Failure::Usage(format!("unknown spec `{word}`")));
    };
    let kv = bindings(set)?;
    if let Some((k, _)) = kv.iter().find(|(k, _)| !s.params.contains_key(k)) {
        let known: Vec<&str> = s.params.keys().map(String::as_str).collect();
        let has = if known.is_empty() { "it has none".to_string() } else { format!("has: {}", known.join(", ")) };
        return Err(Failure::Usage(format!("`{k}` is not a parameter of `{word}` ({has})")));
    }
    let kv: Vec<(&str, Rational)> = kv.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    Ok((s.with_params(&kv), tag))
}

/// Splits on commas outside parentheses.
fn top_level_split(text: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// `x=<expr>,y=<expr>` with the expressions over `target`, ordered as `names`.
pub fn map(text: &str, names: &[String], target: &Vars) -> Result<Vec<RatFun>, Failure> {
    let mut slots: Vec<Option<RatFun>> = vec![None; names.len()];
    for part in top_level_split(text) {
        let (k, v) = part.split_once('=').ok_or_else(|| Failure::Usage(format!("expected name=expr, got `{part}`")))?;
        let i = names
            .iter()
            .position(|n| n == k.trim())
            .ok_or_else(|| Failure::Usage(format!("`{}` is not one of {}", k.trim(), names.join(", "))))?;
        slots[i] = Some(parse_ratfun(v.trim(), target)?);
    }
    slots
        .into_iter()
        .zip(names)
        .map(|(s, n)| s.ok_or_else(|| Failure::Usage(format!("no image given for `{n}`"))))
        .collect()
}

pub struct NamedOp {
    pub system: Vec<ThetaOp>,
    pub tag: Option<&'static str>,
}

impl NamedOp {
    pub fn ode(&self) -> Result<UniODE, Failure> {
        match self.system.as_slice() {
            [op] if op.nvars() == 1 => Ok(op.to_ode()?),
            _ => Err(Failure::Domain(Error::VariableMismatch)),
        }
    }
}

/// Registry operator, or a file holding theta-form operators (blocks
/// separated by `---`) or one D-form operator.
pub fn operator(word: &str) -> Result<NamedOp, Failure> {
    if let Ok(named) = registry::named_operator(word) {
        return Ok(NamedOp { system: registry::system(word)?, tag: Some(named.tag) });
    }
    if !is_file(word) {
        return Err(Failure::Usage(format!("unknown operator `{word}`")));
    }
    let text = read(word)?;
    let system = if text.contains("op-vars:") {
        text.split("\n---").map(parse_operator).collect::<hornsing::Result<Vec<_>>>()?
    } else {
        vec![ThetaOp::from_ode(&parse_ode(&text)?)]
    };
    Ok(NamedOp { system, tag: None })
}

pub struct NamedCurve {
    pub poly: MPoly,
    pub tag: Option<&'static str>,
    pub params: Vec<(RatFun, RatFun)>,
}

/// Registry curve or inline polynomial over `names`.
pub fn curve(word: &str, names: &str) -> Result<NamedCurve, Failure> {
    if let Ok(named) = registry::named_curve(word) {
        return Ok(NamedCurve {
            poly: registry::curve_poly(word)?,
            tag: Some(named.tag),
            params: registry::curve_params(word)?,
        });
    }
    let vs = name_list(names);
    match parse_poly(word, &vs) {
        Ok(poly) => Ok(NamedCurve { poly, tag: None, params: Vec::new() }),
        Err(Error::UnknownVariable(v)) => Err(Failure::Usage(format!("unknown curve `{word}` (no variable `{v}`)"))),
        Err(e) => Err(e.into()),
    }
}

pub fn uni_series(path: &str) -> Result<UniSeries, Failure> {
    match parse_series(&read(path)?)? {
        SeriesData::Uni(_, s) => Ok(s),
        SeriesData::Bi(..) => Err(Failure::Domain(Error::VariableMismatch)),
    }
}
