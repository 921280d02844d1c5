//! Rational functions: reduced quotients of `MPoly`s.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::mpoly::{MPoly, Vars};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::EvaluationError("division by zero".into()));
        }
        if num.is_zero() {
            return Ok(RatFun { den: MPoly::one(num.vars()), num });
        }
        let g = poly_gcd(&num, &den);
        let (n, d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = d.leading_coeff().recip();
        Ok(RatFun { num: n.scale(&lc), den: d.scale(&lc) })
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RatFun { num: p, den }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(MPoly::constant(vars, c))
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::from_poly(MPoly::var(vars, i))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<MPoly> {
        self.den.as_constant().map(|c| self.num.scale(&c.recip()))
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone()).expect("nonzero den");
        }
        RatFun::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .expect("nonzero den")
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        RatFun::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        if o.is_zero() {
            return Err(Error::EvaluationError("division by zero".into()));
        }
        RatFun::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::constant(self.vars(), Rational::zero());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Value at a point; `None` at a pole.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Value at an integer point; `None` at a pole.
    pub fn eval_int(&self, point: &[i64]) -> Option<Rational> {
        let d = self.den.eval_int(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_int(point) / d)
    }

    /// Substitutes a constant for variable `i`.
    pub fn eval_var(&self, i: usize, v: &Rational) -> Result<RatFun> {
        RatFun::new(self.num.eval_var(i, v), self.den.eval_var(i, v))
    }

    /// Substitutes `q` for variable `i`.
    pub fn subst(&self, i: usize, q: &RatFun) -> Result<RatFun> {
        let n = subst_ratfun(&self.num, i, q);
        let d = subst_ratfun(&self.den, i, q);
        n.div(&d)
    }

    pub fn with_vars(&self, target: &Vars) -> Result<RatFun> {
        RatFun::new(self.num.with_vars(target)?, self.den.with_vars(target)?)
    }

    pub fn derivative(&self, i: usize) -> RatFun {
        let n = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        RatFun::new(n, &self.den * &self.den).expect("nonzero den")
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
}

fn subst_ratfun(p: &MPoly, i: usize, q: &RatFun) -> RatFun {
    let coeffs = p.to_coeffs(i);
    let mut acc = RatFun::constant(p.vars(), Rational::zero());
    for c in coeffs.iter().rev() {
        acc = acc.mul(q).add(&RatFun::from_poly(c.clone()));
    }
    acc
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.nterms() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let s = self.den.to_string();
        let bare = self.den.nterms() == 1 && s.chars().all(|c| c.is_alphanumeric() || c == '_');
        let den = if bare { s } else { format!("({s})") };
        write!(f, "{num}/{den}")
    }
}

impl From<MPoly> for RatFun {
    fn from(p: MPoly) -> Self {
        RatFun::from_poly(p)
    }
}
