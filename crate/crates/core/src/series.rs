//! Truncated power series in one and two variables, hypergeometric double
//! series from coefficient ratios, and restriction along curves.

use num_traits::{One, Zero};

use crate::arith::{MPoly, RatFun, Rational, Vars};
use crate::error::{Error, Result};
use crate::expr::{Env, Expr};

/// Coefficients `c[n][m]` for `n + m <= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    order: usize,
    c: Vec<Vec<Rational>>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        BiSeries { order, c: (0..=order).map(|n| vec![Rational::zero(); order - n + 1]).collect() }
    }

    /// Builds from a coefficient function.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        BiSeries {
            order,
            c: (0..=order).map(|n| (0..=order - n).map(|m| f(n, m)).collect()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, n: usize, m: usize) -> &Rational {
        &self.c[n][m]
    }

    pub fn set(&mut self, n: usize, m: usize, v: Rational) {
        self.c[n][m] = v;
    }

    /// Nonzero entries in order of total degree, then `n`.
    pub fn nonzero(&self) -> Vec<(usize, usize, &Rational)> {
        let mut out = Vec::new();
        for d in 0..=self.order {
            for n in (0..=d).rev() {
                let v = &self.c[n][d - n];
                if !v.is_zero() {
                    out.push((n, d - n, v));
                }
            }
        }
        out
    }

    pub fn truncate(&self, order: usize) -> BiSeries {
        let order = order.min(self.order);
        BiSeries::from_fn(order, |n, m| self.c[n][m].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }

    pub fn add(&self, o: &BiSeries) -> BiSeries {
        let order = self.order.min(o.order);
        BiSeries::from_fn(order, |n, m| &self.c[n][m] + &o.c[n][m])
    }

    pub fn scale(&self, a: &Rational) -> BiSeries {
        BiSeries::from_fn(self.order, |n, m| a * &self.c[n][m])
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> BiSeries {
        BiSeries::from_fn(self.order, |n, m| self.c[m][n].clone())
    }

    /// Sum along total degree: the restriction to `x = y = t`.
    pub fn diagonal(&self) -> UniSeries {
        UniSeries::from_fn(self.order, |d| (0..=d).map(|n| &self.c[n][d - n]).sum())
    }

    /// Polynomial truncation in the given two variables.
    pub fn to_poly(&self, vars: &Vars) -> MPoly {
        MPoly::from_terms(vars, self.nonzero().into_iter().map(|(n, m, v)| (vec![n as u32, m as u32], v.clone())))
    }
}

/// Coefficients `a_0..a_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    pub coeffs: Vec<Rational>,
}

impl UniSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        UniSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        UniSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        UniSeries::new(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        UniSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The series `t`.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn geometric(order: usize) -> Self {
        UniSeries { coeffs: vec![Rational::one(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> UniSeries {
        UniSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn add(&self, o: &UniSeries) -> UniSeries {
        let n = self.order().min(o.order());
        UniSeries::from_fn(n, |k| &self.coeffs[k] + &o.coeffs[k])
    }

    pub fn sub(&self, o: &UniSeries) -> UniSeries {
        let n = self.order().min(o.order());
        UniSeries::from_fn(n, |k| &self.coeffs[k] - &o.coeffs[k])
    }

    pub fn scale(&self, a: &Rational) -> UniSeries {
        UniSeries { coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }

    pub fn mul(&self, o: &UniSeries) -> UniSeries {
        let n = self.order().min(o.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<UniSeries> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return Err(Error::EvaluationError("series is not invertible".into()));
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-s * &inv0);
        }
        Ok(UniSeries { coeffs: out })
    }

    pub fn derivative(&self) -> UniSeries {
        if self.order() == 0 {
            return UniSeries::zero(0);
        }
        UniSeries::from_fn(self.order() - 1, |k| &self.coeffs[k + 1] * Rational::from_integer((k as i64 + 1).into()))
    }

    /// Multiplication by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> UniSeries {
        UniSeries::from_fn(self.order(), |i| if i >= k { self.coeffs[i - k].clone() } else { Rational::zero() })
    }

    /// Expansion of a univariate rational function with nonvanishing
    /// denominator at 0.
    pub fn from_ratfun(r: &RatFun, order: usize) -> Result<UniSeries> {
        if r.vars().len() != 1 {
            return Err(Error::VariableMismatch);
        }
        let num = poly_series(r.num(), order);
        let den = poly_series(r.den(), order);
        if den.coeffs[0].is_zero() {
            return Err(Error::NonzeroAtOrigin);
        }
        Ok(num.mul(&den.inverse()?))
    }

    pub fn to_poly(&self, vars: &Vars) -> MPoly {
        MPoly::from_terms(
            vars,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }
}

fn poly_series(p: &MPoly, order: usize) -> UniSeries {
    let mut s = UniSeries::zero(order);
    for (m, c) in p.terms() {
        let k = m.0[0] as usize;
        if k <= order {
            s.coeffs[k] += c;
        }
    }
    s
}

/// `c_{n+1,m} / c_{n,m}` and `c_{n,m+1} / c_{n,m}` as rational functions of
/// `(n, m)`, with `c_{0,0} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperSpec {
    pub alpha1: RatFun,
    pub alpha2: RatFun,
}

pub fn index_vars() -> Vars {
    crate::arith::vars(&["n", "m"])
}

fn shift_var(r: &RatFun, i: usize) -> RatFun {
    let vs = r.vars().clone();
    let shifted = RatFun::var(&vs, i).add(&RatFun::constant(&vs, Rational::one()));
    r.subst(i, &shifted).expect("shift keeps denominators nonzero")
}

/// `alpha2(n,m) alpha1(n,m+1) == alpha1(n,m) alpha2(n+1,m)`.
pub fn check_compatibility(s: &HyperSpec) -> bool {
    let lhs = s.alpha2.mul(&shift_var(&s.alpha1, 1));
    let rhs = s.alpha1.mul(&shift_var(&s.alpha2, 0));
    lhs == rhs
}

fn eval_ratio(r: &RatFun, n: usize, m: usize) -> Result<Rational> {
    r.eval_int(&[n as i64, m as i64]).ok_or(Error::RatioPole { n, m })
}

/// Coefficients along `(0,0) -> (n,0) -> (n,m)`.
pub fn expand_from_ratios(s: &HyperSpec, order: usize) -> Result<BiSeries> {
    if !check_compatibility(s) {
        return Err(Error::IncompatibleSpec);
    }
    let mut out = BiSeries::zero(order);
    let mut edge = Rational::one();
    for n in 0..=order {
        if n > 0 {
            edge *= eval_ratio(&s.alpha1, n - 1, 0)?;
        }
        let mut c = edge.clone();
        out.set(n, 0, c.clone());
        for m in 1..=order - n {
            c *= eval_ratio(&s.alpha2, n, m - 1)?;
            out.set(n, m, c.clone());
        }
    }
    Ok(out)
}

/// Direct evaluation of a closed-form coefficient in `n`, `m`.
pub fn expand_from_formula(f: &Expr, params: &Env, order: usize) -> Result<BiSeries> {
    // factors depending on one index only are evaluated once per index value
    let mut factors = Vec::new();
    split_product(f, false, &mut factors);
    let mut env = params.clone();
    let int = |k: usize| Rational::from_integer((k as i64).into());
    let mut cache_n: Vec<Vec<Option<Rational>>> = vec![vec![None; order + 1]; factors.len()];
    let mut cache_m = cache_n.clone();
    let mut out = BiSeries::zero(order);
    for n in 0..=order {
        for m in 0..=order - n {
            env.insert("n".into(), int(n));
            env.insert("m".into(), int(m));
            let mut acc = Rational::one();
            for (i, (e, inv)) in factors.iter().enumerate() {
                let slot = match (e.mentions("n"), e.mentions("m")) {
                    (true, false) => Some(&mut cache_n[i][n]),
                    (false, _) => Some(&mut cache_m[i][m]),
                    _ => None,
                };
                let v = match slot {
                    Some(Some(v)) => v.clone(),
                    Some(slot) => {
                        let v = e.eval(&env)?;
                        *slot = Some(v.clone());
                        v
                    }
                    None => e.eval(&env)?,
                };
                if *inv {
                    if v.is_zero() {
                        return Err(Error::EvaluationError("division by zero".into()));
                    }
                    acc /= v;
                } else {
                    acc *= v;
                }
            }
            out.set(n, m, acc);
        }
    }
    Ok(out)
}

fn split_product<'a>(e: &'a Expr, inv: bool, out: &mut Vec<(&'a Expr, bool)>) {
    match e {
        Expr::Mul(a, b) => {
            split_product(a, inv, out);
            split_product(b, inv, out);
        }
        Expr::Div(a, b) => {
            split_product(a, inv, out);
            split_product(b, !inv, out);
        }
        _ => out.push((e, inv)),
    }
}

/// Same as [`expand_from_formula`] for a univariate closed form in `n`.
pub fn expand_uni_formula(f: &Expr, params: &Env, order: usize) -> Result<UniSeries> {
    let mut env = params.clone();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        env.insert("n".into(), Rational::from_integer((n as i64).into()));
        coeffs.push(f.eval(&env)?);
    }
    Ok(UniSeries::new(coeffs))
}

/// `c(n+1,m)/c(n,m)` and `c(n,m+1)/c(n,m)` of a closed-form coefficient
/// built from products and quotients of factorials, binomials, Pochhammer
/// symbols, powers with affine exponents and rational functions.
pub fn ratios_from_formula(f: &Expr, params: &Env) -> Result<HyperSpec> {
    Ok(HyperSpec { alpha1: shift_ratio(f, 0, params)?, alpha2: shift_ratio(f, 1, params)? })
}

fn mentions_index(e: &Expr) -> bool {
    e.mentions("n") || e.mentions("m")
}

/// Affine form in `(n, m)` and its integer increment along `dir`.
fn affine_step(e: &Expr, dir: usize, params: &Env) -> Result<(RatFun, i64)> {
    let vs = index_vars();
    let p = e
        .to_poly(&vs, params)
        .map_err(|_| Error::EvaluationError(format!("{e} is not affine in the indices")))?;
    if p.total_degree() > 1 {
        return Err(Error::EvaluationError(format!("{e} is not affine in the indices")));
    }
    let mut one = vec![0u32; 2];
    one[dir] = 1;
    let d = p.coeff(&one);
    if !d.is_integer() {
        return Err(Error::EvaluationError(format!("non-integer step in {e}")));
    }
    let step = num_traits::ToPrimitive::to_i64(&d.to_integer())
        .ok_or_else(|| Error::EvaluationError("step too large".into()))?;
    Ok((RatFun::from_poly(p), step))
}

/// `Gamma(z + step) / Gamma(z)`.
fn gamma_shift(z: &RatFun, step: i64) -> RatFun {
    let vs = z.vars().clone();
    let c = |k: i64| RatFun::constant(&vs, Rational::from_integer(k.into()));
    let mut acc = c(1);
    if step >= 0 {
        for i in 0..step {
            acc = acc.mul(&z.add(&c(i)));
        }
        acc
    } else {
        for i in step..0 {
            acc = acc.mul(&z.add(&c(i)));
        }
        c(1).div(&acc).expect("nonzero product")
    }
}

fn shift_ratio(e: &Expr, dir: usize, params: &Env) -> Result<RatFun> {
    let vs = index_vars();
    let one = || RatFun::constant(&vs, Rational::one());
    if !mentions_index(e) {
        return Ok(one());
    }
    let plus = |r: &RatFun, k: i64| r.add(&RatFun::constant(&vs, Rational::from_integer(k.into())));
    Ok(match e {
        Expr::Mul(a, b) => shift_ratio(a, dir, params)?.mul(&shift_ratio(b, dir, params)?),
        Expr::Div(a, b) => shift_ratio(a, dir, params)?.div(&shift_ratio(b, dir, params)?)?,
        Expr::Neg(a) => shift_ratio(a, dir, params)?,
        Expr::Pow(a, k) if !mentions_index(k) => {
            let k = k.eval(params)?;
            let k = u32::try_from(num_traits::ToPrimitive::to_i64(&k.to_integer()).unwrap_or(-1))
                .map_err(|_| Error::EvaluationError("bad exponent".into()))?;
            shift_ratio(a, dir, params)?.pow(k)
        }
        Expr::Pow(a, k) if !mentions_index(a) => {
            let base = a.eval(params)?;
            let (_, step) = affine_step(k, dir, params)?;
            let r = num_traits::pow(base, step.unsigned_abs() as usize);
            RatFun::constant(&vs, if step >= 0 { r } else { r.recip() })
        }
        Expr::Fact(a) => {
            let (z, step) = affine_step(a, dir, params)?;
            gamma_shift(&plus(&z, 1), step)
        }
        Expr::Poch(a, k) => {
            let (za, sa) = affine_step(a, dir, params)?;
            let (zk, sk) = affine_step(k, dir, params)?;
            gamma_shift(&za.add(&zk), sa + sk).div(&gamma_shift(&za, sa))?
        }
        Expr::Binom(a, b) => {
            let (za, sa) = affine_step(a, dir, params)?;
            let (zb, sb) = affine_step(b, dir, params)?;
            let top = gamma_shift(&plus(&za, 1), sa);
            let low = gamma_shift(&plus(&zb, 1), sb).mul(&gamma_shift(&plus(&za.sub(&zb), 1), sa - sb));
            top.div(&low)?
        }
        Expr::Sum { .. } => {
            return Err(Error::EvaluationError("finite sums have no closed ratio".into()));
        }
        _ => {
            let r = e.to_ratfun(&vs, params)?;
            shift_var(&r, dir).div(&r)?
        }
    })
}

/// Smallest bi-order that determines a restriction through `t^order`,
/// given the valuations of the two substituted series.
pub fn needed_biorder(order: usize, vx: usize, vy: usize) -> usize {
    order.div_ceil(vx.min(vy))
}

/// `sum c_{n,m} xp(t)^n yp(t)^m` through `t^order`.
pub fn restrict(b: &BiSeries, xp: &RatFun, yp: &RatFun, order: usize) -> Result<UniSeries> {
    let xs = UniSeries::from_ratfun(xp, order)?;
    let ys = UniSeries::from_ratfun(yp, order)?;
    restrict_series(b, &xs, &ys)
}

/// As [`restrict`] with already expanded substitutions.
pub fn restrict_series(b: &BiSeries, xs: &UniSeries, ys: &UniSeries) -> Result<UniSeries> {
    let order = xs.order().min(ys.order());
    if !xs.coeffs[0].is_zero() || !ys.coeffs[0].is_zero() {
        return Err(Error::NonzeroAtOrigin);
    }
    // a zero substitution contributes only at index 0 in that direction
    let vx = xs.valuation().unwrap_or(order + 1);
    let vy = ys.valuation().unwrap_or(order + 1);
    let needed = needed_biorder(order, vx, vy);
    if b.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: b.order() });
    }
    let nmax = order / vx;
    let mmax = order / vy;
    let mut ypow = Vec::with_capacity(mmax + 1);
    ypow.push(UniSeries::one(order));
    for k in 1..=mmax {
        ypow.push(ypow[k - 1].mul(ys));
    }
    let mut out = UniSeries::zero(order);
    let mut xpow = UniSeries::one(order);
    for n in 0..=nmax {
        // inner sum over m of c_{n,m} y^m, limited by the remaining t-degree
        let budget = order - n * vx;
        let mut inner = UniSeries::zero(order);
        for (m, yp) in ypow.iter().enumerate().take(budget / vy + 1) {
            if n + m > b.order() {
                break;
            }
            let c = b.get(n, m);
            if c.is_zero() {
                continue;
            }
            for (k, v) in yp.coeffs.iter().enumerate().take(budget + 1) {
                if !v.is_zero() {
                    inner.coeffs[k] += c * v;
                }
            }
        }
        out = out.add(&xpow.mul(&inner));
        xpow = xpow.mul(xs);
    }
    Ok(out)
}

pub fn hadamard(a: &UniSeries, b: &UniSeries) -> Result<UniSeries> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    Ok(UniSeries { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x * y).collect() })
}

/// `a(g(t))` through `t^order`.
pub fn compose_rational(a: &UniSeries, g: &RatFun, order: usize) -> Result<UniSeries> {
    let gs = UniSeries::from_ratfun(g, order)?;
    compose_series(a, &gs)
}

pub fn compose_series(a: &UniSeries, gs: &UniSeries) -> Result<UniSeries> {
    if !gs.coeffs[0].is_zero() {
        return Err(Error::NonzeroAtOrigin);
    }
    let order = gs.order();
    let v = gs.valuation().unwrap_or(order + 1);
    let kmax = (order / v).min(a.order());
    if a.order() < kmax {
        return Err(Error::InsufficientOrder { needed: kmax, have: a.order() });
    }
    // Horner from the top coefficient
    let mut acc = UniSeries::zero(order);
    for k in (0..=kmax).rev() {
        acc = acc.mul(gs);
        acc.coeffs[0] += &a.coeffs[k];
    }
    Ok(acc)
}

/// Series of a Gauss hypergeometric function `2F1([a, b], [c]; z)` in `z`.
pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, order: usize) -> UniSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut t = Rational::one();
    for k in 0..=order {
        coeffs.push(t.clone());
        let kk = Rational::from_integer((k as i64).into());
        t = t * (a + &kk) * (b + &kk) / ((c + &kk) * (&kk + Rational::one()));
    }
    UniSeries::new(coeffs)
}
