//! Singular curves of hypergeometric double series from the large-index
//! limits of their coefficient ratios.

use num_traits::Zero;

use crate::arith::{resultant, vars, MPoly, RatFun, Rational};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::series::HyperSpec;

/// Limits of `c_{n,m}/c_{n+1,m}` and `c_{n,m}/c_{n,m+1}` along `n = t m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornMaps {
    pub x: RatFun,
    pub y: RatFun,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornResult {
    pub main_curve: Curve,
    /// Exponents `(a, b)` of the monomial `x^a y^b` split off the eliminant.
    pub monomial_components: [u32; 2],
    /// `X` at `t -> infinity` and `Y` at `t = 0`, when finite.
    pub axis_values: (Option<Rational>, Option<Rational>),
}

fn leading_part(p: &MPoly) -> MPoly {
    p.homogeneous_part(p.total_degree())
}

fn limit(alpha: &RatFun, point: &[MPoly]) -> Result<RatFun> {
    // inverse ratio: numerator and denominator swap
    let (num, den) = (leading_part(alpha.den()), leading_part(alpha.num()));
    if num.total_degree() != den.total_degree() {
        return Err(Error::Confluent);
    }
    RatFun::new(num.compose(point), den.compose(point))
}

/// Limit maps with `(n, m) = (t, 1)`.
pub fn horn_limit_maps(s: &HyperSpec) -> Result<HornMaps> {
    horn_limit_maps_along(s, false)
}

/// With `swapped`, uses `(n, m) = (1, t)` instead.
pub fn horn_limit_maps_along(s: &HyperSpec, swapped: bool) -> Result<HornMaps> {
    let tv = vars(&["t"]);
    let t = MPoly::var(&tv, 0);
    let one = MPoly::one(&tv);
    let point = if swapped { [one, t] } else { [t, one] };
    Ok(HornMaps { x: limit(&s.alpha1, &point)?, y: limit(&s.alpha2, &point)? })
}

fn value_at_infinity(r: &RatFun) -> Option<Rational> {
    let (dn, dd) = (r.num().degree(0), r.den().degree(0));
    match dn.cmp(&dd) {
        std::cmp::Ordering::Less => Some(Rational::zero()),
        std::cmp::Ordering::Equal => Some(r.num().coeff(&[dn]) / r.den().coeff(&[dd])),
        std::cmp::Ordering::Greater => None,
    }
}

/// Eliminates `t` between `x = X(t)` and `y = Y(t)`.
pub fn eliminate(h: &HornMaps) -> Result<HornResult> {
    if h.x.is_constant() || h.y.is_constant() {
        return Err(Error::ConstantMap);
    }
    let v = vars(&["x", "y", "t"]);
    let lift = |p: &MPoly| -> MPoly { p.compose(&[MPoly::var(&v, 2)]) };
    let x = MPoly::var(&v, 0);
    let y = MPoly::var(&v, 1);
    let px = &(&x * &lift(h.x.den())) - &lift(h.x.num());
    let py = &(&y * &lift(h.y.den())) - &lift(h.y.num());
    let r = resultant(&px, &py, "t")?;
    if r.is_zero() {
        return Err(Error::IdenticallyZeroResultant);
    }
    let r = r.with_vars(&vars(&["x", "y"]))?;
    let (mono, rest) = r.strip_monomial();
    let axis_values = (value_at_infinity(&h.x), h.y.eval(&[Rational::zero()]));
    Ok(HornResult { main_curve: Curve::new(&rest)?, monomial_components: [mono[0], mono[1]], axis_values })
}

pub fn horn_curve(s: &HyperSpec) -> Result<HornResult> {
    eliminate(&horn_limit_maps(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_poly, parse_ratfun};
    use crate::series::index_vars;

    fn spec(a1: &str, a2: &str) -> HyperSpec {
        let v = index_vars();
        HyperSpec { alpha1: parse_ratfun(a1, &v).unwrap(), alpha2: parse_ratfun(a2, &v).unwrap() }
    }

    #[test]
    fn cubic_maps_and_curve() {
        let s = spec(
            "(3*n+3*m+1)*(3*n+3*m+2)*(3*n+3*m+3)/(n+1)^3",
            "(3*n+3*m+1)*(3*n+3*m+2)*(3*n+3*m+3)/(m+1)^3",
        );
        let h = horn_limit_maps(&s).unwrap();
        let tv = vars(&["t"]);
        assert_eq!(h.x, parse_ratfun("t^3/(27*(t+1)^3)", &tv).unwrap());
        assert_eq!(h.y, parse_ratfun("1/(27*(t+1)^3)", &tv).unwrap());
        let c = horn_curve(&s).unwrap();
        let want = parse_poly("19683*(x+y)^3 - 2187*(x^2+y^2-7*x*y) + 81*(x+y) - 1", &vars(&["x", "y"])).unwrap();
        assert_eq!(c.main_curve, Curve::new(&want).unwrap());
        let swapped = eliminate(&horn_limit_maps_along(&s, true).unwrap()).unwrap();
        assert_eq!(swapped.main_curve, c.main_curve);
    }

    #[test]
    fn confluent_spec() {
        let s = spec("1/(n+1)", "1/(m+1)");
        assert_eq!(horn_limit_maps(&s), Err(Error::Confluent));
    }
}
