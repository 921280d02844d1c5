//! Sylvester resultants and discriminants via fraction-free elimination.

use super::mpoly::MPoly;
use super::rational::rat;
use crate::error::{Error, Result};

fn var_idx(p: &MPoly, var: &str) -> Result<usize> {
    p.var_index(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))
}

/// Sylvester matrix in `v`: `deg b` rows of `a` coefficients first, then
/// `deg a` rows of `b` coefficients, highest powers leftmost.
pub fn sylvester_matrix(a: &MPoly, b: &MPoly, v: usize) -> Vec<Vec<MPoly>> {
    let ac = a.to_coeffs(v);
    let bc = b.to_coeffs(v);
    let m = ac.len() - 1;
    let n = bc.len() - 1;
    let size = m + n;
    let zero = MPoly::zero(a.vars());
    let mut rows = vec![vec![zero; size]; size];
    for i in 0..n {
        for k in 0..=m {
            rows[i][i + k] = ac[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            rows[n + i][i + k] = bc[n - k].clone();
        }
    }
    rows
}

/// Determinant of a polynomial matrix by Bareiss elimination.
pub fn bareiss_det(mut mat: Vec<Vec<MPoly>>) -> MPoly {
    let size = mat.len();
    if size == 0 {
        panic!("empty matrix");
    }
    let vars = mat[0][0].vars().clone();
    let mut sign = 1i64;
    let mut prev = MPoly::one(&vars);
    for k in 0..size.saturating_sub(1) {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(i, k);
                    sign = -sign;
                }
                None => return MPoly::zero(&vars),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = MPoly::zero(&vars);
        }
        prev = mat[k][k].clone();
    }
    mat[size - 1][size - 1].scale(&rat(sign))
}

/// Resultant of `a` and `b` with respect to `var`.
pub fn resultant(a: &MPoly, b: &MPoly, var: &str) -> Result<MPoly> {
    let v = var_idx(a, var)?;
    if a.degree(v) == 0 || b.degree(v) == 0 {
        return Err(Error::DegreeZero(var.to_string()));
    }
    Ok(bareiss_det(sylvester_matrix(a, b, v)))
}

/// Discriminant `(-1)^(n(n-1)/2) Res(a, a') / lc(a)`, so that
/// `disc(x^2 + b x + c) = b^2 - 4c`.
pub fn discriminant(a: &MPoly, var: &str) -> Result<MPoly> {
    let v = var_idx(a, var)?;
    let n = a.degree(v);
    if n < 2 {
        return Err(Error::DegreeTooLow(var.to_string()));
    }
    let r = resultant(a, &a.derivative(v), var)?;
    let lc = a.to_coeffs(v).pop().expect("nonzero");
    let q = r.div_exact(&lc).expect("leading coefficient divides the resultant");
    let s = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    Ok(q.scale(&rat(s)))
}
