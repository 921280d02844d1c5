//! Exact linear algebra over the rationals.
//!
//! `nullspace` eliminates fraction-free on integer rows (content removed
//! after every step). `nullspace_modular` solves modulo word-size primes,
//! lifts by Chinese remaindering and rational reconstruction, and only
//! returns vectors that were verified exactly against the input.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{denom_lcm, Rational};

/// Scales each row to coprime integers.
fn integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = denom_lcm(row.iter());
            let r: Vec<BigInt> = row
                .iter()
                .map(|q| (q * Rational::from_integer(l.clone())).to_integer())
                .collect();
            primitive_row(r)
        })
        .collect()
}

fn primitive_row(r: Vec<BigInt>) -> Vec<BigInt> {
    let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        r
    } else {
        r.into_iter().map(|x| x / &g).collect()
    }
}

/// Fraction-free Gauss-Jordan elimination. Returns the reduced integer rows
/// and their pivot columns.
fn echelon(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // smallest nonzero entry as pivot keeps numbers small
        let p = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
        let Some(p) = p else { continue };
        rows.swap(r, p);
        let prow = rows[r].clone();
        let pv = prow[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let g = pv.gcd(&f);
            let a = &pv / &g;
            let b = &f / &g;
            let new: Vec<BigInt> = row
                .iter()
                .zip(&prow)
                .map(|(x, y)| &a * x - &b * y)
                .collect();
            *row = primitive_row(new);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of the right nullspace, one vector per free column, with a 1 in
/// that column and 0 in the other free columns.
pub fn nullspace(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = match m.first() {
        Some(r) => r.len(),
        None => return vec![],
    };
    let (rows, pivots) = echelon(integer_rows(m), ncols);
    basis_from_echelon(&rows, &pivots, ncols)
}

fn basis_from_echelon(rows: &[Vec<BigInt>], pivots: &[usize], ncols: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (row, &pc) in rows.iter().zip(pivots) {
            if !row[f].is_zero() {
                v[pc] = -Rational::new(row[f].clone(), row[pc].clone());
            }
        }
        out.push(v);
    }
    out
}

/// Reduced row echelon form with unit pivots; zero rows dropped.
pub fn rref(m: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ncols = match m.first() {
        Some(r) => r.len(),
        None => return (vec![], vec![]),
    };
    let (rows, pivots) = echelon(integer_rows(m), ncols);
    let out = rows
        .iter()
        .zip(&pivots)
        .map(|(row, &pc)| row.iter().map(|x| Rational::new(x.clone(), row[pc].clone())).collect())
        .collect();
    (out, pivots)
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let ncols = match m.first() {
        Some(r) => r.len(),
        None => return 0,
    };
    echelon(integer_rows(m), ncols).1.len()
}

/// `m * v`, exactly.
pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

// ---------------------------------------------------------------------------
// modular path

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime_u64(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

fn reduce(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&pb).to_u64()?;
    Some(mulmod(n, powmod(d, p - 2, p), p))
}

/// Reduced matrix modulo `p`, or `None` if a denominator vanishes.
pub fn reduce_matrix(m: &[Vec<Rational>], p: u64) -> Option<Vec<Vec<u64>>> {
    m.iter()
        .map(|row| row.iter().map(|q| reduce(q, p)).collect::<Option<Vec<u64>>>())
        .collect()
}

/// Row-reduced echelon form modulo `p`; returns pivot columns.
fn rref_mod(m: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = powmod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&prow) {
                if *y != 0 {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the matrix modulo `p` (a lower bound certificate for the
/// rational rank whenever no denominator vanishes mod `p`).
pub fn rank_mod(m: &[Vec<Rational>], p: u64) -> Option<usize> {
    let ncols = m.first().map(|r| r.len())?;
    let mut mm = reduce_matrix(m, p)?;
    Some(rref_mod(&mut mm, ncols, p).len())
}

/// True when the columns are certified independent over the rationals by
/// a full-rank reduction modulo a prime.
pub fn full_column_rank_certified(m: &[Vec<Rational>]) -> bool {
    let ncols = m.first().map_or(0, |r| r.len());
    for p in primes().take(3) {
        if let Some(r) = rank_mod(m, p) {
            return r == ncols;
        }
    }
    false
}

fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    // half extended Euclid with bound sqrt(m/2)
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn crt(r1: &BigInt, m1: &BigInt, r2: u64, p: u64) -> BigInt {
    // x = r1 + m1 * ((r2 - r1) / m1 mod p)
    let pb = BigInt::from(p);
    let m1p = m1.mod_floor(&pb).to_u64().unwrap();
    let r1p = r1.mod_floor(&pb).to_u64().unwrap();
    let diff = (r2 + p - r1p) % p;
    let k = mulmod(diff, powmod(m1p, p - 2, p), p);
    r1 + m1 * BigInt::from(k)
}

/// Integer-scaled copy of the matrix for fast exact verification.
fn verify_exact(rows: &[Vec<BigInt>], v: &[Rational]) -> bool {
    let l = denom_lcm(v.iter());
    let iv: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
    rows.iter().all(|row| {
        let mut acc = BigInt::zero();
        for (a, b) in row.iter().zip(&iv) {
            if a.sign() != Sign::NoSign && b.sign() != Sign::NoSign {
                acc += a * b;
            }
        }
        acc.is_zero()
    })
}

/// Nullspace via modular images; result equals `nullspace(m)` and is
/// verified exactly. Falls back to the fraction-free path when lifting
/// does not converge within `max_primes`.
pub fn nullspace_modular(m: &[Vec<Rational>], max_primes: usize) -> Vec<Vec<Rational>> {
    let ncols = match m.first() {
        Some(r) => r.len(),
        None => return vec![],
    };
    let int_rows = integer_rows(m);
    let mut modulus = BigInt::one();
    let mut pivots: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut used = 0;
    for p in primes() {
        if used >= max_primes {
            break;
        }
        let Some(mut mm) = reduce_matrix(m, p) else { continue };
        used += 1;
        let piv = rref_mod(&mut mm, ncols, p);
        match &pivots {
            Some(old) if old.len() > piv.len() => continue, // unlucky prime
            Some(old) if old.len() == piv.len() && *old != piv => continue,
            Some(old) if old.len() == piv.len() => {}
            _ => {
                // first prime, or a prime revealing higher rank: restart
                pivots = Some(piv.clone());
                modulus = BigInt::one();
                residues = Vec::new();
            }
        }
        let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
        if free.is_empty() {
            return vec![];
        }
        // basis vectors modulo p
        let images: Vec<Vec<u64>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u64; ncols];
                v[f] = 1;
                for (row, &pc) in mm.iter().zip(&piv) {
                    if row[f] != 0 {
                        v[pc] = (p - row[f]) % p;
                    }
                }
                v
            })
            .collect();
        if residues.is_empty() {
            residues = images.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        } else {
            for (acc, img) in residues.iter_mut().zip(&images) {
                for (a, &x) in acc.iter_mut().zip(img) {
                    *a = crt(a, &modulus, x, p);
                }
            }
        }
        modulus *= BigInt::from(p);
        // attempt reconstruction
        let mut basis = Vec::with_capacity(residues.len());
        let mut ok = true;
        for acc in &residues {
            let mut v = Vec::with_capacity(ncols);
            for a in acc {
                match rational_reconstruct(a, &modulus) {
                    Some(q) => v.push(q),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            basis.push(v);
        }
        if ok && basis.iter().all(|v| verify_exact(&int_rows, v)) {
            return basis;
        }
    }
    nullspace(m)
}

/// Nullity modulo a prime: an upper bound for the rational nullity.
pub fn nullity_mod(m: &[Vec<Rational>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    for p in primes().take(3) {
        if let Some(r) = rank_mod(m, p) {
            return ncols - r;
        }
    }
    ncols - rank(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        assert!(nullspace(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).is_empty());
    }

    #[test]
    fn single_row() {
        assert_eq!(nullspace(&m(&[&[1, 1]])), vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn rank_four_of_six() {
        let a = m(&[
            &[1, 2, 0, 3, 1, 4],
            &[0, 1, 5, 2, 2, 1],
            &[2, 0, 1, 1, 3, 3],
            &[1, 1, 1, 0, 7, 2],
        ]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(nullspace_modular(&a, 10), ns);
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < (1 << 62)));
        assert!(ps[0] > ps[1]);
    }

    #[test]
    fn reconstruction_roundtrip() {
        let mm = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let q = Rational::new(BigInt::from(-355), BigInt::from(113));
        let p1 = 1_000_000_007u64;
        let p2 = 998_244_353u64;
        let r1 = reduce(&q, p1).unwrap();
        let r2 = reduce(&q, p2).unwrap();
        let x = crt(&BigInt::from(r1), &BigInt::from(p1), r2, p2);
        assert_eq!(rational_reconstruct(&x, &mm), Some(q));
    }
}
