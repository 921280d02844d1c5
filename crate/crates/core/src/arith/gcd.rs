//! Multivariate gcd by recursive content / primitive-part reduction.

use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Normalized gcd: integer-primitive with positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.vars());
    }
    let v = (0..a.nvars())
        .find(|&i| a.degree(i) > 0 || b.degree(i) > 0)
        .expect("nonconstant");
    if a.degree(v) == 0 {
        return poly_gcd(a, &content_in(b, v));
    }
    if b.degree(v) == 0 {
        return poly_gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = poly_gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs_gcd(pa, pb, v);
    (&c * &g).primitive()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
pub fn content_in(p: &MPoly, v: usize) -> MPoly {
    let mut g = MPoly::zero(p.vars());
    for c in p.to_coeffs(v) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part of `p` with respect to variable `v`.
pub fn primitive_in(p: &MPoly, v: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Pseudo-remainder of `f` by `g` in variable `v` (leading coefficient
/// multiplications only where a reduction step happens).
pub fn prem(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let vars = f.vars().clone();
    let mut fc = f.to_coeffs(v);
    let gc = g.to_coeffs(v);
    let n = gc.len() - 1;
    let lg = &gc[n];
    while fc.len() > n && !fc.is_empty() {
        let k = fc.len() - 1;
        let lf = fc[k].clone();
        if lf.is_zero() {
            fc.pop();
            continue;
        }
        for c in fc.iter_mut() {
            *c = &*c * lg;
        }
        for (j, gj) in gc.iter().enumerate() {
            let idx = k - n + j;
            fc[idx] = &fc[idx] - &(&lf * gj);
        }
        debug_assert!(fc[k].is_zero());
        fc.pop();
    }
    while fc.last().is_some_and(|c| c.is_zero()) {
        fc.pop();
    }
    MPoly::from_coeffs(&vars, v, &fc)
}

fn prs_gcd(a: MPoly, b: MPoly, v: usize) -> MPoly {
    let (mut f, mut g) = if a.degree(v) >= b.degree(v) { (a, b) } else { (b, a) };
    g = primitive_in(&g, v);
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return primitive_in(&g, v);
        }
        if r.degree(v) == 0 {
            return MPoly::one(f.vars());
        }
        f = g;
        g = primitive_in(&r, v);
    }
}

/// Product of the distinct irreducible factors, integer-primitive with
/// positive leading coefficient.
pub fn squarefree_primitive(a: &MPoly) -> Result<MPoly> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if a.is_constant() {
        return Ok(MPoly::one(a.vars()));
    }
    let mut g = a.clone();
    for i in a.used_vars() {
        g = poly_gcd(&g, &a.derivative(i));
        if g.is_constant() {
            break;
        }
    }
    Ok(a.div_exact(&g).expect("gcd divides").primitive())
}

/// Squarefree decomposition of a univariate polynomial in variable `v`:
/// returns `(factor, multiplicity)` pairs with nonconstant primitive factors.
pub fn squarefree_decomposition(a: &MPoly, v: usize) -> Vec<(MPoly, u32)> {
    let mut out = Vec::new();
    if a.degree(v) == 0 {
        return out;
    }
    // Yun's algorithm
    let da = a.derivative(v);
    let mut b = a.div_exact(&poly_gcd(a, &da)).expect("divides");
    let mut c = da.div_exact(&poly_gcd(a, &da)).expect("divides");
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    loop {
        let g = poly_gcd(&b, &d);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        b = b.div_exact(&g).expect("divides");
        if b.is_constant() {
            break;
        }
        c = d.div_exact(&g).expect("divides");
        d = &c - &b.derivative(v);
        i += 1;
    }
    out
}
