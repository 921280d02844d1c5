//! Univariate factorization over the rationals: squarefree splitting,
//! rational-root extraction, and a bounded trial search for quadratic
//! factors. Anything left is returned flagged as unfactored.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::squarefree_decomposition;
use super::mpoly::MPoly;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: MPoly,
    pub multiplicity: u32,
    /// True when the factor is known irreducible over the rationals.
    pub irreducible: bool,
}

/// Factor list of a univariate polynomial in variable `v`. The power of the
/// variable itself is reported as `valuation`; the unit is dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub valuation: u32,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn has_unfactored(&self) -> bool {
        self.factors.iter().any(|f| !f.irreducible)
    }

    /// Rational roots with their multiplicities (excluding 0).
    pub fn rational_roots(&self, v: usize) -> Vec<(Rational, u32)> {
        self.factors
            .iter()
            .filter(|f| f.poly.degree(v) == 1)
            .map(|f| {
                let c = f.poly.to_coeffs(v);
                (-(c[0].constant_term() / c[1].constant_term()), f.multiplicity)
            })
            .collect()
    }
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    // trial division; a large cofactor is treated as prime
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= n && p < limit {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
        if divs.len() > 20_000 {
            break;
        }
    }
    divs
}

fn integer_coeffs(p: &MPoly, v: usize) -> Vec<BigInt> {
    p.primitive()
        .univariate_coeffs(v)
        .into_iter()
        .map(|c| c.to_integer())
        .collect()
}

fn eval_at(c: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // homogenized Horner: sum c_i num^i den^(n-i)
    let mut acc = BigInt::zero();
    let mut dp = BigInt::one();
    let n = c.len();
    let mut terms = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        terms[i] = &c[i] * &dp;
        dp *= den;
    }
    for t in terms.iter().rev() {
        acc = acc * num + t;
    }
    acc
}

fn linear(vars: &super::mpoly::Vars, v: usize, num: &BigInt, den: &BigInt) -> MPoly {
    // den*t - num
    let mut e = vec![0u32; vars.len()];
    e[v] = 1;
    let t = MPoly::monomial(vars, e, Rational::from_integer(den.clone()));
    (&t - &MPoly::constant(vars, Rational::from_integer(num.clone()))).primitive()
}

/// Splits off every rational root of a squarefree `p`.
fn split_roots(p: &MPoly, v: usize) -> (Vec<MPoly>, MPoly) {
    let mut rest = p.primitive();
    let mut out = Vec::new();
    if rest.degree(v) == 0 {
        return (out, rest);
    }
    let c = integer_coeffs(&rest, v);
    let lead = c.last().unwrap().clone();
    let tail = c[0].clone();
    if tail.is_zero() {
        return (out, rest);
    }
    let nums = small_divisors(&tail);
    let dens = small_divisors(&lead);
    for d in &dens {
        for n in &nums {
            if n.gcd(d) != BigInt::one() {
                continue;
            }
            for s in [n.clone(), -n.clone()] {
                if rest.degree(v) == 0 {
                    break;
                }
                let cc = integer_coeffs(&rest, v);
                if eval_at(&cc, &s, d).is_zero() {
                    let l = linear(p.vars(), v, &s, d);
                    rest = rest.div_exact(&l).expect("root factor divides");
                    out.push(l);
                }
            }
        }
    }
    (out, rest.primitive())
}

/// Tries to split a root-free squarefree polynomial of degree 4..=6 into a
/// quadratic times a cofactor by bounded trial over monic-ish quadratics
/// `a t^2 + b t + c` with `a | lead`, `c | tail` and `|b|` bounded by the
/// Cauchy bound.
fn split_quadratic(p: &MPoly, v: usize) -> Option<(MPoly, MPoly)> {
    let c = integer_coeffs(p, v);
    let deg = c.len() - 1;
    if !(4..=6).contains(&deg) {
        return None;
    }
    let lead = c[deg].clone();
    let tail = c[0].clone();
    let la = small_divisors(&lead);
    let tc = small_divisors(&tail);
    if la.len() * tc.len() > 4_000 {
        return None;
    }
    // roots bounded by 1 + max|c_i/c_n|; |b/a| <= 2 * bound
    let bound = c[..deg]
        .iter()
        .map(|x| (x.abs() + lead.abs() - BigInt::one()) / lead.abs())
        .max()
        .unwrap_or_default()
        + BigInt::one();
    let vars = p.vars().clone();
    for a in &la {
        let bmax = (BigInt::from(2) * &bound * a).to_i64()?;
        if bmax > 2_000 {
            return None;
        }
        for cc in &tc {
            for cs in [cc.clone(), -cc.clone()] {
                for b in -bmax..=bmax {
                    let q = MPoly::from_coeffs(
                        &vars,
                        v,
                        &[
                            MPoly::constant(&vars, Rational::from_integer(cs.clone())),
                            MPoly::constant(&vars, Rational::from_integer(BigInt::from(b))),
                            MPoly::constant(&vars, Rational::from_integer(a.clone())),
                        ],
                    );
                    if let Some(r) = p.div_exact(&q) {
                        return Some((q.primitive(), r.primitive()));
                    }
                }
            }
        }
    }
    None
}

/// Factors a univariate polynomial (in variable `v`; other variables must
/// be absent) as far as the rational-root and small-quadratic searches go.
pub fn factor_univariate(p: &MPoly, v: usize) -> Factorization {
    let valuation = p.valuation(v);
    let mut e = vec![0u32; p.nvars()];
    e[v] = valuation;
    let (_, stripped) = p.strip_monomial();
    let mut factors = Vec::new();
    for (sq, mult) in squarefree_decomposition(&stripped, v) {
        let (roots, rest) = split_roots(&sq, v);
        for r in roots {
            factors.push(Factor { poly: r, multiplicity: mult, irreducible: true });
        }
        let mut pending = vec![rest];
        while let Some(q) = pending.pop() {
            let d = q.degree(v);
            if d == 0 {
                continue;
            }
            if d <= 3 {
                factors.push(Factor { poly: q, multiplicity: mult, irreducible: true });
                continue;
            }
            match split_quadratic(&q, v) {
                Some((a, b)) => {
                    pending.push(a);
                    pending.push(b);
                }
                None => factors.push(Factor { poly: q, multiplicity: mult, irreducible: false }),
            }
        }
    }
    factors.sort_by(|a, b| {
        (a.poly.degree(v), &a.poly.terms().map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>())
            .cmp(&(b.poly.degree(v), &b.poly.terms().map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>()))
    });
    Factorization { valuation, factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mpoly::vars;

    #[test]
    fn head_of_geometric_ode() {
        let vs = vars(&["t"]);
        // t^2 (1-t)^2 (1-27t)(1+t^2)
        let p = MPoly::univariate(&vs, 0, &[0, 0, 1, -2, 1]);
        let q = &(&p * &MPoly::univariate(&vs, 0, &[1, -27])) * &MPoly::univariate(&vs, 0, &[1, 0, 1]);
        let f = factor_univariate(&q, 0);
        assert_eq!(f.valuation, 2);
        let mut roots = f.rational_roots(0);
        roots.sort();
        assert_eq!(roots, vec![(Rational::new(1.into(), 27.into()), 1), (Rational::one(), 2)]);
        assert!(!f.has_unfactored());
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        let vs = vars(&["t"]);
        let p = &MPoly::univariate(&vs, 0, &[1, 3, 4]) * &MPoly::univariate(&vs, 0, &[4, 3, 1]);
        let f = factor_univariate(&p, 0);
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|x| x.irreducible && x.poly.degree(0) == 2));
    }
}
