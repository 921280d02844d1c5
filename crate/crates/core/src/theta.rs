//! Operators in theta normal form `sum x^a y^b Q_ab(theta_x, theta_y)`,
//! their action on series, the equivalent coefficient recurrences, and
//! formal solutions with logarithms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::linalg::{nullspace_modular, rref};
use crate::arith::rational::{denom_lcm, factorial, numer_gcd};
use crate::arith::{vars, MPoly, Rational, Vars};
use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::ode::UniODE;
use crate::series::{BiSeries, UniSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOp {
    vars: Vars,
    thetas: Vars,
    terms: BTreeMap<Vec<u32>, MPoly>,
}

impl ThetaOp {
    /// `x -> tx`, `y -> ty`.
    pub fn theta_vars(v: &Vars) -> Vars {
        let names: Vec<String> = v.iter().map(|s| format!("t{s}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        vars(&refs)
    }

    pub fn from_terms(v: &Vars, terms: Vec<(Vec<u32>, MPoly)>) -> Result<ThetaOp> {
        let thetas = Self::theta_vars(v);
        let mut map: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
        for (shift, q) in terms {
            if shift.len() != v.len() {
                return Err(Error::VariableMismatch);
            }
            let q = q.with_vars(&thetas)?;
            let e = map.entry(shift).or_insert_with(|| MPoly::zero(&thetas));
            *e = &*e + &q;
        }
        map.retain(|_, q| !q.is_zero());
        if map.is_empty() {
            return Err(Error::ZeroInput);
        }
        Ok(ThetaOp { vars: v.clone(), thetas, terms: map })
    }

    /// Reads a normal-form polynomial in the variables and their thetas,
    /// e.g. `tx^3 - x*(3*tx+3*ty+1)*(3*tx+3*ty+2)*(3*tx+3*ty+3)`.
    pub fn parse(text: &str, names: &[&str]) -> Result<ThetaOp> {
        let v = vars(names);
        let all = Self::joint_vars(&v);
        Self::from_poly(&v, &parse_poly(text, &all)?)
    }

    fn joint_vars(v: &Vars) -> Vars {
        let t = Self::theta_vars(v);
        let names: Vec<&str> = v.iter().chain(t.iter()).map(|s| s.as_str()).collect();
        vars(&names)
    }

    /// Splits a polynomial over `vars ++ thetas` into normal-form terms.
    pub fn from_poly(v: &Vars, p: &MPoly) -> Result<ThetaOp> {
        let k = v.len();
        let p = p.with_vars(&Self::joint_vars(v))?;
        let thetas = Self::theta_vars(v);
        let mut groups: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            groups.entry(m.0[..k].to_vec()).or_default().push((m.0[k..].to_vec(), c.clone()));
        }
        let terms = groups.into_iter().map(|(s, ts)| (s, MPoly::from_terms(&thetas, ts))).collect();
        Self::from_terms(v, terms)
    }

    pub fn to_poly(&self) -> MPoly {
        let all = Self::joint_vars(&self.vars);
        let k = self.vars.len();
        let mut out = MPoly::zero(&all);
        for (s, q) in &self.terms {
            for (m, c) in q.terms() {
                let mut e = s.clone();
                e.extend_from_slice(&m.0);
                debug_assert_eq!(e.len(), 2 * k);
                out.add_term(crate::arith::Monomial(e), c.clone());
            }
        }
        out
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &MPoly)> {
        self.terms.iter()
    }

    /// Largest total shift `a + b`.
    pub fn max_shift(&self) -> usize {
        self.terms.keys().map(|s| s.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    /// Highest total theta degree.
    pub fn theta_order(&self) -> u32 {
        self.terms.values().map(|q| q.total_degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> ThetaOp {
        let terms = self.terms.iter().map(|(s, q)| (s.clone(), q.scale(c))).collect();
        ThetaOp { terms, ..self.clone() }
    }

    /// Common variable powers removed, integer content removed, and the
    /// leading theta coefficient of the lowest shift made positive.
    pub fn normalized(&self) -> ThetaOp {
        let k = self.nvars();
        let low: Vec<u32> = (0..k).map(|i| self.terms.keys().map(|s| s[i]).min().unwrap_or(0)).collect();
        let terms: Vec<(Vec<u32>, MPoly)> = self
            .terms
            .iter()
            .map(|(s, q)| (s.iter().zip(&low).map(|(a, b)| a - b).collect(), q.clone()))
            .collect();
        let coeffs: Vec<&Rational> = terms.iter().flat_map(|(_, q)| q.terms().map(|(_, c)| c)).collect();
        let l = denom_lcm(coeffs.iter().copied());
        let g = numer_gcd(coeffs.iter().copied());
        let mut f = Rational::new(l, g);
        // lowest key in BTreeMap order
        if terms[0].1.leading_coeff() < Rational::zero() {
            f = -f;
        }
        ThetaOp::from_terms(&self.vars, terms.into_iter().map(|(s, q)| (s, q.scale(&f))).collect())
            .expect("nonzero operator")
    }

    /// Action on a bivariate series; exact through `order - max_shift`.
    pub fn apply(&self, s: &BiSeries) -> Result<BiSeries> {
        if self.nvars() != 2 {
            return Err(Error::VariableMismatch);
        }
        let order = s.order().saturating_sub(self.max_shift());
        let mut out = BiSeries::zero(order);
        for (shift, q) in &self.terms {
            let (a, b) = (shift[0] as usize, shift[1] as usize);
            for n in a..=order {
                for m in b..=order - n {
                    let c = s.get(n - a, m - b);
                    if c.is_zero() {
                        continue;
                    }
                    let v = q.eval_int(&[(n - a) as i64, (m - b) as i64]) * c;
                    let cur = out.get(n, m) + v;
                    out.set(n, m, cur);
                }
            }
        }
        Ok(out)
    }

    /// Action on a univariate series; exact through `order - max_shift`.
    pub fn apply_uni(&self, s: &UniSeries) -> Result<UniSeries> {
        if self.nvars() != 1 {
            return Err(Error::VariableMismatch);
        }
        let order = s.order().saturating_sub(self.max_shift());
        let mut out = UniSeries::zero(order);
        for (shift, q) in &self.terms {
            let a = shift[0] as usize;
            for n in a..=order {
                let c = s.get(n - a);
                if !c.is_zero() {
                    out.coeffs[n] += q.eval_int(&[(n - a) as i64]) * c;
                }
            }
        }
        Ok(out)
    }

    /// Terms `(shift, R(n, m))` of the relation
    /// `sum R_shift(n, m) c_{(n, m) - shift} = 0`, with
    /// `R_shift(n, m) = Q_shift((n, m) - shift)`.
    pub fn to_recurrence(&self) -> Vec<(Vec<u32>, MPoly)> {
        let iv: Vars = if self.nvars() == 2 { vars(&["n", "m"]) } else { vars(&["n"]) };
        self.terms
            .iter()
            .map(|(s, q)| {
                let images: Vec<MPoly> = s
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| &MPoly::var(&iv, i) - &MPoly::from_int(&iv, a as i64))
                    .collect();
                (s.clone(), q.compose(&images))
            })
            .collect()
    }

    /// Univariate operator in `D = d/dx` form.
    pub fn to_ode(&self) -> Result<UniODE> {
        if self.nvars() != 1 {
            return Err(Error::VariableMismatch);
        }
        let r = self.theta_order() as usize;
        let st = stirling2(r);
        let mut coeffs = vec![MPoly::zero(&self.vars); r + 1];
        for (s, q) in &self.terms {
            for (m, c) in q.terms() {
                let k = m.0[0] as usize;
                for (j, sk) in st[k].iter().enumerate() {
                    if sk.is_zero() {
                        continue;
                    }
                    let t = MPoly::monomial(&self.vars, vec![s[0] + j as u32], c * Rational::from_integer(sk.clone()));
                    coeffs[j] = &coeffs[j] + &t;
                }
            }
        }
        UniODE::new(coeffs)
    }

    /// Theta form of `x^s L` for the least `s` making it polynomial.
    pub fn from_ode(ode: &UniODE) -> ThetaOp {
        let v = ode.vars().clone();
        let th = Self::theta_vars(&v);
        let s = ode
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(j, p)| j as i64 - p.valuation(0) as i64)
            .max()
            .unwrap_or(0)
            .max(0) as u32;
        let mut terms = Vec::new();
        for (j, p) in ode.coeffs().iter().enumerate() {
            let ff = falling(&th, j);
            for (m, c) in p.terms() {
                let e = m.0[0] + s - j as u32;
                terms.push((vec![e], ff.scale(c)));
            }
        }
        Self::from_terms(&v, terms).expect("nonzero operator")
    }
}

/// `theta (theta - 1) ... (theta - j + 1)`.
fn falling(th: &Vars, j: usize) -> MPoly {
    let mut acc = MPoly::one(th);
    for i in 0..j {
        acc = &acc * &(&MPoly::var(th, 0) - &MPoly::from_int(th, i as i64));
    }
    acc
}

/// Stirling numbers of the second kind `S(k, j)` for `k, j <= r`.
fn stirling2(r: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); r + 1]; r + 1];
    s[0][0] = BigInt::one();
    for k in 1..=r {
        for j in 1..=k {
            s[k][j] = BigInt::from(j) * &s[k - 1][j] + &s[k - 1][j - 1];
        }
    }
    s
}

impl fmt::Display for ThetaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// True when every operator maps `s` to zero through its validity order,
/// which must leave at least 10 checked orders.
pub fn annihilates(sys: &[ThetaOp], s: &BiSeries) -> Result<bool> {
    for op in sys {
        let needed = 10 + op.max_shift();
        if s.order() < needed {
            return Err(Error::InsufficientOrder { needed, have: s.order() });
        }
        if !op.apply(s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn annihilates_uni(op: &ThetaOp, s: &UniSeries) -> Result<bool> {
    let needed = 10 + op.max_shift();
    if s.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: s.order() });
    }
    Ok(op.apply_uni(s)?.is_zero())
}

/// `sum H_ij(x, y) ln(x)^i ln(y)^j`; all parts share one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    pub order: usize,
    pub parts: BTreeMap<(u32, u32), BiSeries>,
}

impl LogSeries {
    /// Highest log monomial by total degree, then x-degree.
    pub fn leading_log(&self) -> Option<(u32, u32)> {
        self.parts.keys().copied().max_by_key(|&(i, j)| (i + j, i))
    }

    pub fn part(&self, i: u32, j: u32) -> Option<&BiSeries> {
        self.parts.get(&(i, j))
    }
}

/// Dimension of the space of formal solutions with log powers up to
/// `max_log` in each variable, and an echeloned basis, through total
/// order `order`.
pub fn log_basis(sys: &[ThetaOp], order: usize, max_log: u32) -> Result<(usize, Vec<LogSeries>)> {
    let k = sys.first().ok_or(Error::ZeroInput)?.nvars();
    if sys.iter().any(|o| o.nvars() != k) || k > 2 {
        return Err(Error::VariableMismatch);
    }
    let l = max_log as usize;
    let logs: Vec<(usize, usize)> = if k == 2 {
        (0..=l).flat_map(|i| (0..=l).map(move |j| (i, j))).collect()
    } else {
        (0..=l).map(|i| (i, 0)).collect()
    };
    let log_pos = |i: usize, j: usize| logs.iter().position(|&p| p == (i, j));
    // Taylor data: for each operator term, D^(p,q) Q / (p! q!)
    struct Term {
        shift: (usize, usize),
        taylor: Vec<((usize, usize), MPoly)>,
    }
    let ops: Vec<Vec<Term>> = sys
        .iter()
        .map(|op| {
            op.terms()
                .map(|(s, q)| {
                    let shift = (s[0] as usize, if k == 2 { s[1] as usize } else { 0 });
                    let mut taylor = Vec::new();
                    for p in 0..=l {
                        for qq in 0..=(if k == 2 { l } else { 0 }) {
                            let mut d = q.clone();
                            for _ in 0..p {
                                d = d.derivative(0);
                            }
                            for _ in 0..qq {
                                d = d.derivative(1);
                            }
                            if d.is_zero() {
                                continue;
                            }
                            let f = Rational::from_integer(factorial(p as u64) * factorial(qq as u64));
                            taylor.push(((p, qq), d.scale(&f.recip())));
                        }
                    }
                    Term { shift, taylor }
                })
                .collect()
        })
        .collect();
    let points = |d: usize| -> Vec<(usize, usize)> {
        if k == 2 {
            (0..=d).rev().map(|n| (n, d - n)).collect()
        } else {
            vec![(d, 0)]
        }
    };
    let eval = |q: &MPoly, n: usize, m: usize| -> Rational {
        if k == 2 {
            q.eval_int(&[n as i64, m as i64])
        } else {
            q.eval_int(&[n as i64])
        }
    };
    // expr[(log index, n, m)] = coefficients over the current parameters
    let mut expr: BTreeMap<(usize, usize, usize), Vec<Rational>> = BTreeMap::new();
    let mut nparams = 0usize;
    let mut dims = Vec::new();
    for d in 0..=order {
        let pts = points(d);
        let cur: Vec<(usize, usize, usize)> =
            pts.iter().flat_map(|&(n, m)| (0..logs.len()).map(move |li| (li, n, m))).collect();
        let col = |key: &(usize, usize, usize)| cur.iter().position(|c| c == key);
        let width = cur.len() + nparams;
        let mut rows = Vec::new();
        for op in &ops {
            for &(n, m) in &pts {
                for &(i, j) in &logs {
                    let mut row = vec![Rational::zero(); width];
                    for t in op {
                        let (a, b) = t.shift;
                        if n < a || m < b {
                            continue;
                        }
                        let (n0, m0) = (n - a, m - b);
                        for ((p, q), dq) in &t.taylor {
                            let Some(src) = log_pos(i + p, j + q) else { continue };
                            let v = eval(dq, n0, m0);
                            if v.is_zero() {
                                continue;
                            }
                            let mult = Rational::from_integer(
                                factorial((i + p) as u64) / factorial(i as u64) * factorial((j + q) as u64)
                                    / factorial(j as u64),
                            );
                            let v = v * mult;
                            let key = (src, n0, m0);
                            if (a, b) == (0, 0) {
                                let c = col(&key).expect("current unknown");
                                row[c] += v;
                            } else if let Some(e) = expr.get(&key) {
                                for (x, y) in row[cur.len()..].iter_mut().zip(e) {
                                    if !y.is_zero() {
                                        *x += &v * y;
                                    }
                                }
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..width)
                .map(|c| {
                    let mut v = vec![Rational::zero(); width];
                    v[c] = Rational::one();
                    v
                })
                .collect()
        } else {
            nullspace_modular(&rows, 40)
        };
        // old parameters become combinations of the new ones
        for e in expr.values_mut() {
            *e = basis
                .iter()
                .map(|v| e.iter().zip(&v[cur.len()..]).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
                .collect();
        }
        for (ci, key) in cur.iter().enumerate() {
            expr.insert(*key, basis.iter().map(|v| v[ci].clone()).collect());
        }
        nparams = basis.len();
        dims.push(nparams);
    }
    if order < 2 || dims[order] != dims[order - 1] || dims[order] != dims[order - 2] {
        return Err(Error::InsufficientOrder { needed: order + 1, have: order });
    }
    // echelon by leading log monomial
    let mut keys: Vec<(usize, usize, usize)> = expr.keys().copied().collect();
    keys.sort_by_key(|&(li, n, m)| {
        let (i, j) = logs[li];
        (std::cmp::Reverse((i + j, i)), n + m, std::cmp::Reverse(n))
    });
    let rows: Vec<Vec<Rational>> =
        (0..nparams).map(|p| keys.iter().map(|key| expr[key][p].clone()).collect()).collect();
    let (red, _) = rref(&rows);
    let out = red
        .into_iter()
        .map(|row| {
            let mut parts: BTreeMap<(u32, u32), BiSeries> = BTreeMap::new();
            for (key, v) in keys.iter().zip(row) {
                if v.is_zero() {
                    continue;
                }
                let (li, n, m) = *key;
                let (i, j) = logs[li];
                let part = parts.entry((i as u32, j as u32)).or_insert_with(|| BiSeries::zero(order));
                part.set(n, m, v);
            }
            LogSeries { order, parts }
        })
        .collect();
    Ok((nparams, out))
}
