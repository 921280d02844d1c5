//! Expression language: tokenizer, recursive-descent parser, exact
//! evaluator, and conversion to rational functions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' exponent)?
//! atom   := int | name | '(' expr ')' | call
//! call   := fact(e) | binom(e,e) | poch(e,e) | sum(i, lo, hi, body)
//! ```
//!
//! Exponents are nonnegative integer literals, or a name / parenthesized
//! expression that must evaluate to a nonnegative integer (used for
//! parameters such as `M` and for scalings like `64^(n+m)`).

pub mod files;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::rational::factorial;
use crate::arith::{MPoly, RatFun, Rational, Vars};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Fact(Box<Expr>),
    Binom(Box<Expr>, Box<Expr>),
    Poch(Box<Expr>, Box<Expr>),
    Sum { index: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Int(s.parse().expect("digits")), l0, c0));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Name(s), l0, c0));
        } else if "+-*/^(),".contains(c) {
            toks.push((Tok::Sym(c), l0, c0));
            i += 1;
            col += 1;
        } else {
            return Err(Error::SyntaxError { line, col, msg: format!("unexpected character '{c}'") });
        }
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    lx: Lexer,
    pos: usize,
    scope: Vec<String>,
    known: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.lx.toks[self.pos].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (_, line, col) = &self.lx.toks[self.pos];
        Err(Error::SyntaxError { line: *line, col: *col, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
    }

    /// Right-associative exponent chain.
    fn exponent(&mut self) -> Result<Expr> {
        let e = match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Expr::Int(n)
            }
            Tok::Name(_) => self.atom()?,
            Tok::Sym('(') => {
                let e = self.atom()?;
                if let Some(v) = e.constant_value() {
                    if v.is_negative() {
                        return self.err("negative exponent");
                    }
                    if !v.is_integer() {
                        return self.err("fractional exponent");
                    }
                }
                e
            }
            Tok::Sym('-') => return self.err("negative exponent"),
            _ => return self.err("expected exponent"),
        };
        if self.eat('^') {
            let rest = self.exponent()?;
            return Ok(Expr::Pow(Box::new(e), Box::new(rest)));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Name(name) => {
                self.pos += 1;
                if self.eat('(') {
                    return self.call(&name);
                }
                if self.scope.contains(&name) || self.known.contains(&name.as_str()) {
                    Ok(Expr::Var(name))
                } else {
                    Err(Error::UnknownVariable(name))
                }
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Sym(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    fn call(&mut self, name: &str) -> Result<Expr> {
        let e = match name {
            "fact" => Expr::Fact(Box::new(self.expr()?)),
            "binom" | "poch" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if name == "binom" {
                    Expr::Binom(Box::new(a), Box::new(b))
                } else {
                    Expr::Poch(Box::new(a), Box::new(b))
                }
            }
            "sum" => {
                let index = match self.peek().clone() {
                    Tok::Name(n) => n,
                    _ => return self.err("expected summation index"),
                };
                self.pos += 1;
                self.expect(',')?;
                let lo = self.expr()?;
                self.expect(',')?;
                let hi = self.expr()?;
                self.expect(',')?;
                self.scope.push(index.clone());
                let body = self.expr()?;
                self.scope.pop();
                Expr::Sum { index, lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) }
            }
            _ => return self.err(format!("unknown function '{name}'")),
        };
        self.expect(')')?;
        Ok(e)
    }
}

/// Parses `text`; every free name must appear in `names`.
pub fn parse_expr(text: &str, names: &[&str]) -> Result<Expr> {
    if text.trim().is_empty() {
        return Err(Error::SyntaxError { line: 1, col: 1, msg: "empty expression".into() });
    }
    let mut p = Parser { lx: lex(text)?, pos: 0, scope: Vec::new(), known: names };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Variable bindings used during evaluation.
pub type Env = HashMap<String, Rational>;

fn as_index(q: &Rational, what: &str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::EvaluationError(format!("{what} of non-integer {q}")));
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| Error::EvaluationError(format!("{what} argument too large")))
}

fn as_exponent(q: &Rational) -> Result<u32> {
    let e = as_index(q, "power")?;
    if e < 0 {
        return Err(Error::EvaluationError(format!("negative exponent {e}")));
    }
    u32::try_from(e).map_err(|_| Error::EvaluationError("exponent too large".into()))
}

/// Rising factorial `(a)_k` for a nonnegative integer `k`.
pub fn pochhammer(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// Binomial with rational top and integer bottom; zero for `k < 0` and for
/// integer `0 <= n < k`.
pub fn binom_rat(n: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= n - Rational::from_integer(i.into());
        acc /= Rational::from_integer((i + 1).into());
    }
    acc
}

impl Expr {
    /// Value when the expression contains no names.
    pub fn constant_value(&self) -> Option<Rational> {
        self.eval(&Env::new()).ok()
    }

    pub fn eval(&self, env: &Env) -> Result<Rational> {
        Ok(match self {
            Expr::Int(n) => Rational::from_integer(n.clone()),
            Expr::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| Error::EvaluationError(format!("unbound name {v}")))?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(Error::EvaluationError("division by zero".into()));
                }
                a.eval(env)? / d
            }
            Expr::Pow(a, e) => {
                let k = as_exponent(&e.eval(env)?)?;
                num_traits::pow(a.eval(env)?, k as usize)
            }
            Expr::Fact(a) => {
                let n = as_index(&a.eval(env)?, "factorial")?;
                if n < 0 {
                    return Err(Error::EvaluationError(format!("factorial of negative {n}")));
                }
                Rational::from_integer(factorial(n as u64))
            }
            Expr::Binom(a, b) => binom_rat(&a.eval(env)?, as_index(&b.eval(env)?, "binomial")?),
            Expr::Poch(a, k) => {
                let k = as_index(&k.eval(env)?, "pochhammer")?;
                if k < 0 {
                    return Err(Error::EvaluationError("pochhammer with negative length".into()));
                }
                pochhammer(&a.eval(env)?, k as u64)
            }
            Expr::Sum { index, lo, hi, body } => {
                let lo = as_index(&lo.eval(env)?, "sum bound")?;
                let hi = as_index(&hi.eval(env)?, "sum bound")?;
                let mut inner = env.clone();
                let mut acc = Rational::zero();
                for i in lo..=hi {
                    inner.insert(index.clone(), Rational::from_integer(i.into()));
                    acc += body.eval(&inner)?;
                }
                acc
            }
        })
    }

    /// Converts to a rational function over `vars`; any other name must be
    /// bound to a constant in `params`.
    pub fn to_ratfun(&self, vars: &Vars, params: &Env) -> Result<RatFun> {
        let c = |q: Rational| RatFun::constant(vars, q);
        Ok(match self {
            Expr::Int(n) => c(Rational::from_integer(n.clone())),
            Expr::Var(v) => match vars.iter().position(|x| x == v) {
                Some(i) => RatFun::var(vars, i),
                None => c(params.get(v).cloned().ok_or_else(|| Error::UnknownVariable(v.clone()))?),
            },
            Expr::Add(a, b) => a.to_ratfun(vars, params)?.add(&b.to_ratfun(vars, params)?),
            Expr::Sub(a, b) => a.to_ratfun(vars, params)?.sub(&b.to_ratfun(vars, params)?),
            Expr::Neg(a) => a.to_ratfun(vars, params)?.neg(),
            Expr::Mul(a, b) => a.to_ratfun(vars, params)?.mul(&b.to_ratfun(vars, params)?),
            Expr::Div(a, b) => a.to_ratfun(vars, params)?.div(&b.to_ratfun(vars, params)?)?,
            Expr::Pow(a, e) => {
                let k = as_exponent(&e.eval(params)?)?;
                a.to_ratfun(vars, params)?.pow(k)
            }
            Expr::Poch(a, k) => {
                // (a)_k with constant k expands to a polynomial product
                let k = as_index(&k.eval(params)?, "pochhammer")?;
                if k < 0 {
                    return Err(Error::EvaluationError("pochhammer with negative length".into()));
                }
                let base = a.to_ratfun(vars, params)?;
                let mut acc = c(Rational::one());
                for i in 0..k {
                    acc = acc.mul(&base.add(&c(Rational::from_integer(i.into()))));
                }
                acc
            }
            _ => {
                let mut env = params.clone();
                for v in vars.iter() {
                    if self.mentions(v) {
                        return Err(Error::EvaluationError(
                            "factorials, binomials and sums are evaluated at integers only".into(),
                        ));
                    }
                    env.remove(v);
                }
                c(self.eval(&env)?)
            }
        })
    }

    /// Converts to a polynomial; fails on a nonconstant denominator.
    pub fn to_poly(&self, vars: &Vars, params: &Env) -> Result<MPoly> {
        self.to_ratfun(vars, params)?
            .as_poly()
            .ok_or_else(|| Error::EvaluationError("expression is not a polynomial".into()))
    }

    /// True when the name occurs free.
    pub fn mentions(&self, v: &str) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var(x) => x == v,
            Expr::Neg(a) | Expr::Fact(a) => a.mentions(v),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b)
            | Expr::Binom(a, b)
            | Expr::Poch(a, b) => a.mentions(v) || b.mentions(v),
            Expr::Sum { index, lo, hi, body } => {
                lo.mentions(v) || hi.mentions(v) || (index != v && body.mentions(v))
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^")?;
                match **e {
                    Expr::Int(_) | Expr::Var(_) => write!(f, "{e}"),
                    _ => write!(f, "({e})"),
                }
            }
            Expr::Fact(a) => write!(f, "fact({a})"),
            Expr::Binom(a, b) => write!(f, "binom({a}, {b})"),
            Expr::Poch(a, b) => write!(f, "poch({a}, {b})"),
            Expr::Sum { index, lo, hi, body } => write!(f, "sum({index}, {lo}, {hi}, {body})"),
        }
    }
}

/// Unique text form: integer content removed, positive leading coefficient
/// in graded-lex order.
pub fn print_canonical(p: &MPoly) -> String {
    p.primitive().to_string()
}

/// Parses a polynomial over `vars` (no parameters).
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MPoly> {
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    parse_expr(text, &names)?.to_poly(vars, &Env::new())
}

/// Parses a rational function over `vars` (no parameters).
pub fn parse_ratfun(text: &str, vars: &Vars) -> Result<RatFun> {
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    parse_expr(text, &names)?.to_ratfun(vars, &Env::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat, vars};

    fn env(kv: &[(&str, i64)]) -> Env {
        kv.iter().map(|(k, v)| (k.to_string(), rat(*v))).collect()
    }

    #[test]
    fn ratio_expression_has_division_on_top() {
        let e = parse_expr("(3*n+3*m+1)*(3*n+3*m+2)*(3*n+3*m+3)/(n+1)^3", &["n", "m"]).unwrap();
        assert!(matches!(e, Expr::Div(..)));
        assert_eq!(e.eval(&env(&[("n", 0), ("m", 0)])).unwrap(), rat(6));
    }

    #[test]
    fn factorial_formula() {
        let e = parse_expr("fact(3*n+3*m)/(fact(n)^3*fact(m)^3)", &["n", "m"]).unwrap();
        assert_eq!(e.eval(&env(&[("n", 1), ("m", 1)])).unwrap(), rat(720));
    }

    #[test]
    fn negative_exponent_rejected() {
        let err = parse_expr("x^(-1)", &["x"]).unwrap_err();
        assert_eq!(err.name(), "SyntaxError");
        assert_eq!(parse_expr("x^-1", &["x"]).unwrap_err().name(), "SyntaxError");
    }

    #[test]
    fn unknown_name() {
        assert_eq!(parse_expr("x+z", &["x"]).unwrap_err(), Error::UnknownVariable("z".into()));
    }

    #[test]
    fn syntax_error_position() {
        match parse_expr("x +\n  * y", &["x", "y"]).unwrap_err() {
            Error::SyntaxError { line, col, .. } => assert_eq!((line, col), (2, 3)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn combinatorial_atoms() {
        let e = |s: &str| parse_expr(s, &["a"]).unwrap().eval(&env(&[("a", 5)])).unwrap();
        assert_eq!(e("poch(a, 0)"), rat(1));
        assert_eq!(e("binom(3, a)"), rat(0));
        assert_eq!(e("binom(a, 2)"), rat(10));
        assert_eq!(e("sum(k, 0, a, binom(a, k)^2)"), rat(252));
        assert_eq!(e("poch(1/2, 2)"), frac(3, 4));
        assert_eq!(parse_expr("fact(a-9)", &["a"]).unwrap().eval(&env(&[("a", 5)])).unwrap_err().name(), "EvaluationError");
    }

    #[test]
    fn named_exponent() {
        let e = parse_expr("64^(n+m)*x^M", &["n", "m", "x", "M"]).unwrap();
        let v = e.eval(&env(&[("n", 1), ("m", 0), ("x", 2), ("M", 3)])).unwrap();
        assert_eq!(v, rat(512));
    }

    #[test]
    fn canonical_forms() {
        let vs = vars(&["x", "y"]);
        let s2 = parse_poly("2^8*(x-y)^2 - 2^5*(x+y) + 1", &vs).unwrap();
        assert_eq!(print_canonical(&s2), "256*x^2 - 512*x*y + 256*y^2 - 32*x - 32*y + 1");
        assert_eq!(print_canonical(&MPoly::zero(&vs)), "0");
        assert_eq!(print_canonical(&parse_poly("-2*x+2*y", &vs).unwrap()), "x - y");
    }

    #[test]
    fn printed_expr_reparses() {
        let src = "sum(k, 0, n, binom(n, k)^3)*fact(3*n)/fact(n)^3 - -(2-n)^(n+1)";
        let e = parse_expr(src, &["n"]).unwrap();
        let again = parse_expr(&e.to_string(), &["n"]).unwrap();
        assert_eq!(e, again);
    }
}
