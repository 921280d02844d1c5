//! Univariate linear ODEs with polynomial coefficients: fitting to series,
//! head factorization, local solutions at ordinary points, and the orders
//! of exterior and symmetric squares.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::factor::{factor_univariate, Factorization};
use crate::arith::linalg::{nullity_mod, nullspace_modular, rank};
use crate::arith::{poly_gcd, vars, MPoly, Rational, Vars};
use crate::error::{Error, Result};
use crate::series::UniSeries;
use crate::theta::ThetaOp;

/// `sum_j p_j(t) D^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniODE {
    coeffs: Vec<MPoly>,
}

impl UniODE {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<MPoly>) -> Result<UniODE> {
        while coeffs.last().is_some_and(|p| p.is_zero()) {
            coeffs.pop();
        }
        let first = coeffs.first().ok_or(Error::ZeroInput)?;
        if first.nvars() != 1 || coeffs.iter().any(|p| p.vars() != first.vars()) {
            return Err(Error::VariableMismatch);
        }
        Ok(UniODE { coeffs })
    }

    /// From integer coefficient lists, lowest power first, in variable `t`.
    pub fn from_ints(cs: &[&[i64]]) -> Result<UniODE> {
        let v = vars(&["t"]);
        UniODE::new(cs.iter().map(|c| MPoly::univariate(&v, 0, c)).collect())
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn vars(&self) -> &Vars {
        self.coeffs[0].vars()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn head(&self) -> &MPoly {
        &self.coeffs[self.order()]
    }

    /// Largest coefficient degree.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|p| p.degree(0) as usize).max().unwrap_or(0)
    }

    /// Common polynomial factor and integer content removed, head with
    /// positive leading coefficient.
    pub fn normalized(&self) -> UniODE {
        let g = self.coeffs.iter().fold(MPoly::zero(self.vars()), |acc, p| poly_gcd(&acc, p));
        let cs: Vec<MPoly> = self.coeffs.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
        let all: Vec<&Rational> = cs.iter().flat_map(|p| p.terms().map(|(_, c)| c)).collect();
        let l = crate::arith::rational::denom_lcm(all.iter().copied());
        let n = crate::arith::rational::numer_gcd(all.iter().copied());
        let mut f = Rational::new(l, n);
        if cs.last().expect("nonempty").leading_coeff() < Rational::zero() {
            f = -f;
        }
        UniODE { coeffs: cs.iter().map(|p| p.scale(&f)).collect() }
    }

    /// `L(s)`, exact through `s.order - order`.
    pub fn apply(&self, s: &UniSeries) -> UniSeries {
        let r = self.order();
        let top = s.order().saturating_sub(r);
        let mut out = UniSeries::zero(top);
        for (j, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p.terms() {
                let i = m.0[0] as usize;
                for k in i..=top {
                    let idx = k - i + j;
                    let a = s.get(idx);
                    if a.is_zero() {
                        continue;
                    }
                    out.coeffs[k] += c * falling(idx, j) * a;
                }
            }
        }
        out
    }

    /// Same operator in the shifted variable `s = t - t0`.
    pub fn shifted(&self, t0: &Rational) -> UniODE {
        let v = self.vars().clone();
        let img = &MPoly::var(&v, 0) + &MPoly::constant(&v, t0.clone());
        UniODE { coeffs: self.coeffs.iter().map(|p| p.subst(0, &img)).collect() }
    }

    /// Operator annihilating `f(-t)` when `self` annihilates `f(t)`.
    pub fn reflected(&self) -> UniODE {
        let v = self.vars().clone();
        let img = MPoly::var(&v, 0).scale(&-Rational::one());
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, p)| {
                let q = p.subst(0, &img);
                if j % 2 == 1 { q.scale(&-Rational::one()) } else { q }
            })
            .collect();
        UniODE { coeffs }
    }
}

/// `idx (idx - 1) ... (idx - j + 1)`.
fn falling(idx: usize, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= Rational::from_integer(((idx - i) as i64).into());
    }
    acc
}

impl fmt::Display for UniODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*D")?,
                _ => write!(f, "({p})*D^{j}")?,
            }
        }
        Ok(())
    }
}

pub fn annihilates_series(ode: &UniODE, s: &UniSeries) -> Result<bool> {
    let needed = ode.order() + ode.degree() + 10;
    if s.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: s.order() });
    }
    Ok(ode.apply(s).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessReport {
    /// Normalized theta form `sum t^k P_k(theta)`.
    pub theta: ThetaOp,
    pub ode: UniODE,
    /// Theta order and t-degree of the fitted operator.
    pub order: usize,
    pub degree: usize,
    /// Trailing series orders not used for the fit and still annihilated.
    pub checked_margin: usize,
}

const MARGIN: usize = 10;

fn guess_rows(s: &UniSeries, r: usize, d: usize, upto: usize) -> Vec<Vec<Rational>> {
    (0..=upto)
        .map(|n| {
            let mut row = Vec::with_capacity((r + 1) * (d + 1));
            for k in 0..=d {
                for i in 0..=r {
                    if n < k {
                        row.push(Rational::zero());
                    } else {
                        let base = Rational::from_integer(((n - k) as i64).into());
                        row.push(num_traits::pow(base, i) * s.get(n - k));
                    }
                }
            }
            row
        })
        .collect()
}

/// True when some nonzero theta-form operator of order `<= r` and t-degree
/// `<= d` annihilates every coefficient of `s`.
pub fn has_annihilator(s: &UniSeries, r: usize, d: usize) -> bool {
    let rows = guess_rows(s, r, d, s.order());
    nullity_mod(&rows) > 0 && !nullspace_modular(&rows, 60).is_empty()
}

fn op_from_vector(v: &[Rational], r: usize, d: usize) -> ThetaOp {
    let tv = vars(&["t"]);
    let th = ThetaOp::theta_vars(&tv);
    let terms = (0..=d)
        .map(|k| {
            let q = MPoly::from_terms(&th, (0..=r).map(|i| (vec![i as u32], v[k * (r + 1) + i].clone())));
            (vec![k as u32], q)
        })
        .collect();
    ThetaOp::from_terms(&tv, terms).expect("nonzero vector")
}

/// Minimal operator (by order, then t-degree of the theta form) fitted to
/// all but the last ten coefficients and checked on those ten.
pub fn guess_ode(s: &UniSeries, max_order: usize, max_degree: usize) -> Result<GuessReport> {
    let needed = (max_order + 1) * (max_degree + 1) + max_order + MARGIN;
    if s.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: s.order() });
    }
    let fit = s.order() - MARGIN;
    for r in 1..=max_order {
        for d in 0..=max_degree {
            let rows = guess_rows(s, r, d, fit);
            if nullity_mod(&rows) == 0 {
                continue;
            }
            let all = guess_rows(s, r, d, s.order());
            let basis = nullspace_modular(&all, 60);
            let Some(v) = basis.first() else {
                if nullspace_modular(&rows, 60).is_empty() {
                    continue;
                }
                return Err(Error::InsufficientOrder { needed: s.order() + MARGIN, have: s.order() });
            };
            let theta = op_from_vector(v, r, d).normalized();
            let ode = theta.to_ode()?.normalized();
            return Ok(GuessReport { theta, ode, order: r, degree: d, checked_margin: MARGIN });
        }
    }
    Err(Error::NotFound)
}

/// Factored head polynomial; the power of `t` is the valuation.
pub fn singular_points(ode: &UniODE) -> Factorization {
    factor_univariate(ode.head(), 0)
}

/// Power-series solutions at an ordinary point `t0` (in `t - t0`) with
/// unit initial segments.
pub fn local_basis(ode: &UniODE, t0: &Rational, order: usize) -> Result<Vec<UniSeries>> {
    let r = ode.order();
    let sh = ode.shifted(t0);
    let lead = sh.head().constant_term();
    if lead.is_zero() {
        return Err(Error::SingularPoint);
    }
    let terms: Vec<(usize, usize, Rational)> = sh
        .coeffs
        .iter()
        .enumerate()
        .flat_map(|(j, p)| p.terms().map(move |(m, c)| (j, m.0[0] as usize, c.clone())))
        .collect();
    let mut out = Vec::with_capacity(r);
    for e in 0..r {
        let mut a = vec![Rational::zero(); order.max(r) + 1];
        a[e] = Rational::one();
        for k in 0..=order.saturating_sub(r) {
            let mut acc = Rational::zero();
            for (j, i, c) in &terms {
                if (*i, *j) == (0, r) || *i > k {
                    continue;
                }
                let idx = k - i + j;
                if !a[idx].is_zero() {
                    acc += c * falling(idx, *j) * &a[idx];
                }
            }
            a[k + r] = -acc / (&lead * falling(k + r, r));
        }
        a.truncate(order + 1);
        out.push(UniSeries::new(a));
    }
    Ok(out)
}

/// First base point `1/q`, `q = 7, 10, 11, ...`, off the head's zeros.
pub fn base_point(ode: &UniODE) -> Rational {
    std::iter::once(7)
        .chain(10..)
        .map(|q| Rational::new(1.into(), q.into()))
        .find(|t| !ode.head().eval(std::slice::from_ref(t)).is_zero())
        .expect("finitely many roots")
}

fn span_rank(fs: &[UniSeries]) -> usize {
    let rows: Vec<Vec<Rational>> = fs.iter().map(|f| f.coeffs.clone()).collect();
    rank(&rows)
}

fn wronskians(basis: &[UniSeries], order: usize) -> Vec<UniSeries> {
    let d: Vec<UniSeries> = basis.iter().map(|y| y.derivative()).collect();
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let w = basis[i].mul(&d[j]).sub(&basis[j].mul(&d[i]));
            out.push(w.truncate(order));
        }
    }
    out
}

fn products(basis: &[UniSeries], order: usize) -> Vec<UniSeries> {
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            out.push(basis[i].mul(&basis[j]).truncate(order));
        }
    }
    out
}

fn square_order(ode: &UniODE, order: usize, f: fn(&[UniSeries], usize) -> Vec<UniSeries>) -> Result<usize> {
    let t0 = base_point(ode);
    let at = |n: usize| -> Result<usize> {
        let basis = local_basis(ode, &t0, n + 1)?;
        Ok(span_rank(&f(&basis, n)))
    };
    let (a, b) = (at(order)?, at(order + 10)?);
    if a != b {
        return Err(Error::Unstable(a, b));
    }
    Ok(a)
}

/// Dimension of the span of all pairwise wronskians of a local basis: the
/// order of the minimal operator annihilating them.
pub fn exterior_square_order(ode: &UniODE, order: usize) -> Result<usize> {
    square_order(ode, order, wronskians)
}

/// Dimension of the span of all pairwise products of a local basis.
pub fn symmetric_square_order(ode: &UniODE, order: usize) -> Result<usize> {
    square_order(ode, order, products)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    #[test]
    fn geometric_series_guess() {
        let s = UniSeries::geometric(30);
        let g = guess_ode(&s, 2, 2).unwrap();
        assert_eq!((g.order, g.degree), (1, 1));
        assert_eq!(g.ode, UniODE::from_ints(&[&[-1], &[1, -1]]).unwrap().normalized());
        assert!(annihilates_series(&g.ode, &s).unwrap());
        let ramp = UniSeries::from_fn(30, |k| rat(k as i64 + 1));
        assert!(!annihilates_series(&g.ode, &ramp).unwrap());
    }

    #[test]
    fn exponential_local_solution() {
        let ode = UniODE::from_ints(&[&[-1], &[1]]).unwrap();
        let b = local_basis(&ode, &rat(0), 6).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].coeffs[3], frac(1, 6));
    }

    #[test]
    fn singular_base_point_rejected() {
        let ode = UniODE::from_ints(&[&[-1], &[0, 1]]).unwrap();
        assert_eq!(local_basis(&ode, &rat(0), 5).unwrap_err(), Error::SingularPoint);
    }

    #[test]
    fn harmonic_oscillator_squares() {
        let ode = UniODE::from_ints(&[&[1], &[0], &[1]]).unwrap();
        let b = local_basis(&ode, &rat(0), 8).unwrap();
        assert_eq!(b[0].coeffs[2], frac(-1, 2));
        assert_eq!(b[1].coeffs[3], frac(-1, 6));
        assert_eq!(exterior_square_order(&ode, 20).unwrap(), 1);
        assert_eq!(symmetric_square_order(&ode, 20).unwrap(), 3);
    }
}
