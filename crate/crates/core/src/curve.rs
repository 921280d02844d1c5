//! Plane algebraic curves: parametrization checks, pull-back comparison,
//! affine singular points, genus of conic bundles and the Nickelian
//! j-invariant.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::factor::factor_univariate;
use crate::arith::gcd::squarefree_decomposition;
use crate::arith::{poly_gcd, resultant, squarefree_primitive, vars, MPoly, RatFun, Rational, Vars};
use crate::error::{Error, Result};
use crate::expr::print_canonical;

/// Zero set of a squarefree, integer-primitive polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    poly: MPoly,
}

impl Curve {
    pub fn new(p: &MPoly) -> Result<Curve> {
        if p.nvars() < 2 {
            return Err(Error::VariableMismatch);
        }
        Ok(Curve { poly: squarefree_primitive(p)? })
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn vars(&self) -> &Vars {
        self.poly.vars()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_canonical(&self.poly))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub xp: RatFun,
    pub yp: RatFun,
}

impl Param {
    pub fn new(xp: RatFun, yp: RatFun) -> Result<Param> {
        if xp.is_constant() && yp.is_constant() {
            return Err(Error::ConstantMap);
        }
        if xp.vars() != yp.vars() {
            return Err(Error::VariableMismatch);
        }
        Ok(Param { xp, yp })
    }
}

/// `p(images)` as a rational function in the variables of the images.
pub fn pull_back(p: &MPoly, images: &[RatFun]) -> RatFun {
    assert_eq!(p.nvars(), images.len());
    let target = images[0].vars().clone();
    let mut out = RatFun::constant(&target, Rational::zero());
    let mut pows: Vec<Vec<RatFun>> = images.iter().map(|r| vec![RatFun::constant(&target, Rational::one()), r.clone()]).collect();
    for (m, c) in p.terms() {
        let mut t = RatFun::constant(&target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            while pows[i].len() <= e as usize {
                let next = pows[i].last().unwrap().mul(&images[i]);
                pows[i].push(next);
            }
            if e > 0 {
                t = t.mul(&pows[i][e as usize]);
            }
        }
        out = out.add(&t);
    }
    out
}

/// True iff `F(xp(u), yp(u))` vanishes identically.
pub fn verify_parametrization(c: &Curve, p: &Param) -> bool {
    pull_back(c.poly(), &[p.xp.clone(), p.yp.clone()]).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchReport {
    Equal,
    /// First pull-back equals the constant times the second.
    Proportional(Rational),
    /// Different multiplicities, same squarefree part.
    SameZeroSet,
    Distinct { gcd: MPoly },
}

/// Pulls both curves back through their maps and compares the cleared
/// numerators.
pub fn substitute_compare(c1: &MPoly, map1: &[RatFun], c2: &MPoly, map2: &[RatFun]) -> Result<MatchReport> {
    let a = pull_back(c1, map1);
    let b = pull_back(c2, map2);
    if a.is_zero() || b.is_zero() {
        return Err(Error::DegenerateMap);
    }
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch);
    }
    let (a, b) = (a.num().clone(), b.num().clone());
    if a == b {
        return Ok(MatchReport::Equal);
    }
    let ratio = a.leading_coeff() / b.leading_coeff();
    if a == b.scale(&ratio) {
        return Ok(MatchReport::Proportional(ratio));
    }
    let (sa, sb) = (squarefree_primitive(&a)?, squarefree_primitive(&b)?);
    if sa == sb {
        return Ok(MatchReport::SameZeroSet);
    }
    Ok(MatchReport::Distinct { gcd: poly_gcd(&sa, &sb).primitive() })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingularPoints {
    pub points: Vec<(Rational, Rational)>,
    /// Irrational parts of the x-eliminant, as polynomials in x.
    pub residual: Vec<MPoly>,
}

/// Common zeros of `F`, `F_x`, `F_y` in the affine plane.
pub fn affine_singular_points(c: &Curve) -> Result<SingularPoints> {
    let f = c.poly();
    if f.nvars() != 2 {
        return Err(Error::VariableMismatch);
    }
    let (x, y) = (0, 1);
    let yname = &f.vars()[y];
    let eqs = [f.clone(), f.derivative(x), f.derivative(y)];
    // eliminate y: gcd of the resultants of F with each partial
    let mut elim = MPoly::zero(f.vars());
    for g in eqs.iter().filter(|g| !g.is_zero()) {
        let r = if f.degree(y) == 0 {
            f.clone()
        } else if g.degree(y) == 0 {
            g.clone()
        } else if g == f {
            continue;
        } else {
            resultant(f, g, yname)?
        };
        elim = poly_gcd(&elim, &r);
    }
    let mut out = SingularPoints::default();
    if elim.is_zero() || elim.is_constant() {
        return Ok(out);
    }
    let fx = factor_univariate(&elim, x);
    let mut roots: Vec<Rational> = fx.rational_roots(x).into_iter().map(|(r, _)| r).collect();
    if fx.valuation > 0 {
        roots.push(Rational::zero());
    }
    for fac in fx.factors.iter().filter(|f| f.poly.degree(x) > 1) {
        out.residual.push(fac.poly.clone());
    }
    roots.sort();
    for x0 in roots {
        let mut g = MPoly::zero(f.vars());
        for e in &eqs {
            g = poly_gcd(&g, &e.eval_var(x, &x0));
        }
        if g.is_zero() {
            continue;
        }
        let fy = factor_univariate(&g, y);
        let mut ys: Vec<Rational> = fy.rational_roots(y).into_iter().map(|(r, _)| r).collect();
        if fy.valuation > 0 {
            ys.push(Rational::zero());
        }
        ys.sort();
        for y0 in ys {
            out.points.push((x0.clone(), y0));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusCertificate {
    /// `b^2 - 4 a d` in the remaining variable.
    pub discriminant: MPoly,
    /// Degree of the product of odd-multiplicity factors of the discriminant.
    pub odd_degree: u32,
    pub genus: u32,
}

/// Genus of a curve quadratic in `var`, through `w^2 = D(s)`.
pub fn genus_quadratic_fiber(c: &Curve, var: &str) -> Result<GenusCertificate> {
    let f = c.poly();
    if f.nvars() != 2 {
        return Err(Error::VariableMismatch);
    }
    let v = f.var_index(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    if f.degree(v) != 2 {
        return Err(Error::NotQuadratic(var.to_string()));
    }
    let cs = f.to_coeffs(v);
    let disc = &(&cs[1] * &cs[1]) - &(&cs[2] * &cs[0]).scale(&Rational::from_integer(4.into()));
    let s = 1 - v;
    let odd_degree = if disc.is_zero() {
        0
    } else {
        squarefree_decomposition(&disc, s).iter().filter(|(_, k)| k % 2 == 1).map(|(p, _)| p.degree(s)).sum()
    };
    let genus = if odd_degree <= 2 { 0 } else { odd_degree.div_ceil(2) - 1 };
    Ok(GenusCertificate { discriminant: disc, odd_degree, genus })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JValue {
    Value(Rational),
    /// Denominator vanishes: the curve has genus zero.
    Degenerate,
}

/// j-invariant of the Nickelian curve with `U^2 = u2`, `V^2 = v2`.
pub fn nickelian_j(u2: &Rational, v2: &Rational) -> JValue {
    let one = Rational::one();
    let den = (v2 - &one) * (v2 - &one) * (u2 - &one) * (u2 - &one) * (u2 - v2) * (u2 - v2);
    if den.is_zero() {
        return JValue::Degenerate;
    }
    let q = u2 * u2 + v2 * v2 - u2 * v2 - u2 - v2 + &one;
    JValue::Value(Rational::from_integer(256.into()) * &q * &q * &q / den)
}

/// Curve in `x, y` from text.
pub fn curve_from_text(text: &str, names: [&str; 2]) -> Result<Curve> {
    Curve::new(&crate::expr::parse_poly(text, &vars(&names))?)
}
