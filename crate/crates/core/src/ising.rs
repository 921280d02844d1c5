//! Singular curves of the anisotropic square Ising susceptibility terms:
//! Nickelian curves, transcribed factor catalogs and their comparison
//! between the `(k, r)` and `(w, r)` coordinates.

use num_traits::One;

use crate::arith::{frac, poly_gcd, squarefree_primitive, vars, MPoly, RatFun, Rational, Vars};
use crate::curve::{genus_quadratic_fiber, pull_back, verify_parametrization, Curve, Param};
use crate::error::{Error, Result};
use crate::expr::{parse_poly, parse_ratfun};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NickelianIndex {
    pub n: i64,
    pub j: i64,
    pub l: i64,
    /// Sign in `r U +- V`.
    pub sign: i8,
}

impl NickelianIndex {
    pub fn new(n: i64, j: i64, l: i64, sign: i8) -> Result<NickelianIndex> {
        let bad = |f: &str, msg: &str| Error::ValidationError { field: f.to_string(), msg: msg.to_string() };
        if n < 1 {
            return Err(bad("n", "must be at least 1"));
        }
        if !(1..=n).contains(&j) || !(1..=n).contains(&l) {
            return Err(bad("j", "j and l must lie in 1..=n"));
        }
        if sign != 1 && sign != -1 {
            return Err(bad("sign", "must be +1 or -1"));
        }
        Ok(NickelianIndex { n, j, l, sign })
    }
}

/// Pairs `(j, l)` of the isotropic family for a given `n`: both in
/// `0..=n/2`, `(0, 0)` excluded, and `j + l = n/2` excluded for even `n`.
pub fn isotropic_indices(n: i64) -> Vec<(i64, i64)> {
    let h = n / 2;
    let mut out = Vec::new();
    for j in 0..=h {
        for l in 0..=h {
            if (j, l) == (0, 0) || (n % 2 == 0 && j + l == h) {
                continue;
            }
            out.push((j, l));
        }
    }
    out
}

/// `cos(2 pi j / n)` when rational.
pub fn exact_cos(j: i64, n: i64) -> Result<Rational> {
    let g = num_integer::gcd(j, n);
    let (p, q) = ((j / g).rem_euclid(n / g), n / g);
    let c = match (q, p) {
        (1, _) => frac(1, 1),
        (2, _) => frac(-1, 1),
        (3, _) => frac(-1, 2),
        (4, _) => frac(0, 1),
        (6, _) => frac(1, 2),
        _ => return Err(Error::IrrationalCos(j, n)),
    };
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NickelMode {
    Exact,
    /// `U`, `V` kept as variables after `k`, `r`.
    Symbolic,
    /// Double-precision cosines converted exactly to rationals.
    Float,
}

fn nickel_poly(sign: i8) -> MPoly {
    let t = if sign > 0 { "(r+k)*(k*r+1) - k*(r*U+V)^2" } else { "(r+k)*(k*r+1) - k*(r*U-V)^2" };
    parse_poly(t, &vars(&["k", "r", "U", "V"])).expect("fixed text")
}

fn kr_vars() -> Vars {
    vars(&["k", "r"])
}

fn specialize(p: &MPoly, u: &Rational, v: &Rational) -> Result<MPoly> {
    p.eval_var(2, u).eval_var(3, v).with_vars(&kr_vars())
}

pub fn nickelian_curve(idx: &NickelianIndex, mode: NickelMode) -> Result<Curve> {
    let p = nickel_poly(idx.sign);
    match mode {
        NickelMode::Symbolic => Curve::new(&p),
        NickelMode::Exact => {
            let (u, v) = (exact_cos(idx.j, idx.n)?, exact_cos(idx.l, idx.n)?);
            Curve::new(&specialize(&p, &u, &v)?)
        }
        NickelMode::Float => {
            let c = |a: i64| {
                let x = (2.0 * std::f64::consts::PI * a as f64 / idx.n as f64).cos();
                Rational::from_float(x).expect("finite")
            };
            Curve::new(&specialize(&p, &c(idx.j), &c(idx.l))?)
        }
    }
}

/// Curve with its monomial factor removed.
pub fn nonmonomial_part(c: &Curve) -> MPoly {
    c.poly().strip_monomial().1.primitive()
}

/// `1 + s^2 - s (U + V)`, the equal-coupling specialization.
pub fn nickelian_isotropic(idx: &NickelianIndex) -> Result<MPoly> {
    let (u, v) = (exact_cos(idx.j, idx.n)?, exact_cos(idx.l, idx.n)?);
    let sv = vars(&["s"]);
    let s = MPoly::var(&sv, 0);
    let p = &(&MPoly::one(&sv) + &(&s * &s)) - &s.scale(&(u + v));
    Ok(p.primitive())
}

/// Checks that `r = 1`, `k = s^2` in the `+` Nickelian curve vanishes on the
/// zero set of the equal-coupling curve.
pub fn isotropic_consistent(idx: &NickelianIndex) -> Result<bool> {
    let iso = nickelian_isotropic(idx)?;
    let c = nickelian_curve(&NickelianIndex { sign: 1, ..*idx }, NickelMode::Exact)?;
    let sv = vars(&["s"]);
    let s = RatFun::var(&sv, 0);
    let pulled = pull_back(c.poly(), &[s.mul(&s), RatFun::constant(&sv, Rational::one())]);
    Ok(pulled.num().div_exact(&squarefree_primitive(&iso)?).is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coords {
    /// `k = s1 s2`, `r = s1 / s2`.
    Kr,
    /// `w = s / (2 (1 + s^2))` with `s^2 = k`, and `r`.
    Wr,
}

impl Coords {
    pub fn names(self) -> [&'static str; 2] {
        match self {
            Coords::Kr => ["k", "r"],
            Coords::Wr => ["w", "r"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiCatalog {
    pub n: u32,
    pub coords: Coords,
    pub factors: Vec<(MPoly, u32)>,
}

impl ChiCatalog {
    pub fn product(&self) -> MPoly {
        let v = vars(&self.coords.names());
        self.factors.iter().fold(MPoly::one(&v), |acc, (f, e)| &acc * &f.pow(*e))
    }
}

const CHI3_KR: &[(&str, u32)] = &[
    ("k^2-1", 1),
    ("3*k*r+r+4*k^2", 1),
    ("k^2*r+3*k*r+4", 1),
    ("k^2*r+r+k", 1),
    ("3*r^2*k-r-k-k^2*r", 1),
    ("4+3*k*r+4*k+4*k^2", 1),
    ("r+k", 1),
    ("k*r+1", 1),
];

const CHI4_KR: &[(&str, u32)] = &[("k^2-1", 1), ("k*r+1+k^2", 1), ("3*r^2*k-r-k-k^2*r", 1)];

const CHI3_WR: &[(&str, u32)] = &[
    ("w^2-1", 1),
    ("w", 2),
    ("r^2-4*r+4+3*w^2*r^2-4*w^2*r+16*w^4*r", 2),
    ("1+4*w^2*r-2*r", 2),
    ("3*r^2-1-4*w^2*r+2*r", 2),
    ("3*r-4+16*w^2", 2),
    ("1+4*w^2*r-2*r+r^2", 2),
];

const CHI4_WR: &[(&str, u32)] = &[("w", 2), ("w^2-1", 1), ("4*w^2-2+r", 2), ("3*r^2-1-4*w^2*r+2*r", 2)];

pub fn chi_catalog(n: u32, coords: Coords) -> Result<ChiCatalog> {
    let table = match (n, coords) {
        (3, Coords::Kr) => CHI3_KR,
        (4, Coords::Kr) => CHI4_KR,
        (3, Coords::Wr) => CHI3_WR,
        (4, Coords::Wr) => CHI4_WR,
        _ => return Err(Error::ValidationError { field: "n".into(), msg: "catalogs exist for n = 3, 4".into() }),
    };
    let v = vars(&coords.names());
    let factors = table.iter().map(|(t, e)| Ok((parse_poly(t, &v)?, *e))).collect::<Result<_>>()?;
    Ok(ChiCatalog { n, coords, factors })
}

/// Gcd of the two catalog products, integer-primitive.
pub fn chi_gcd(coords: Coords) -> Result<MPoly> {
    let a = chi_catalog(3, coords)?.product();
    let b = chi_catalog(4, coords)?.product();
    Ok(poly_gcd(&a, &b).primitive())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMatch {
    pub wr: usize,
    pub kr: Vec<usize>,
    /// Pulled-back `(w, r)` numerator over the product of the `(k, r)` ones.
    pub ratio: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub matched: Vec<FactorMatch>,
    pub unmatched_kr: Vec<usize>,
    pub unmatched_wr: Vec<usize>,
    /// `(w, r)` factors whose pull-back is a power of `s`, i.e. the `k = 0` locus.
    pub origin_wr: Vec<usize>,
    /// Unmatched `(w, r)` factors that do match on the equal-coupling slice
    /// `r = 1`, with the ratio taken there.
    pub isotropic: Vec<FactorMatch>,
}

fn sr_vars() -> Vars {
    vars(&["s", "r"])
}

/// Numerator of a `(k, r)` polynomial at `k = s^2`.
pub fn kr_to_sr(p: &MPoly) -> MPoly {
    let v = sr_vars();
    let s = RatFun::var(&v, 0);
    pull_back(p, &[s.mul(&s), RatFun::var(&v, 1)]).num().clone()
}

/// Numerator of a `(w, r)` polynomial at `w = s / (2 (1 + s^2))`.
pub fn wr_to_sr(p: &MPoly) -> MPoly {
    let v = sr_vars();
    let w = parse_ratfun("s/(2*(1+s^2))", &v).expect("fixed text");
    pull_back(p, &[w, RatFun::var(&v, 1)]).num().clone()
}

/// Matches each `(w, r)` factor with the `(k, r)` factors sharing a component
/// after both are pulled back to `(s, r)`.
pub fn kr_wr_report(n: u32) -> Result<CorrespondenceReport> {
    let kr = chi_catalog(n, Coords::Kr)?;
    let wr = chi_catalog(n, Coords::Wr)?;
    let kp: Vec<MPoly> = kr.factors.iter().map(|(f, _)| kr_to_sr(f)).collect();
    let mut used = vec![false; kp.len()];
    let mut out = CorrespondenceReport::default();
    for (i, (f, _)) in wr.factors.iter().enumerate() {
        let h = wr_to_sr(f);
        if h.strip_monomial().1.is_constant() {
            out.origin_wr.push(i);
            continue;
        }
        let hs = squarefree_primitive(&h)?;
        let group: Vec<usize> = (0..kp.len()).filter(|&j| !poly_gcd(&hs, &kp[j]).is_constant()).collect();
        let prod = group.iter().fold(MPoly::one(&sr_vars()), |acc, &j| &acc * &kp[j]);
        let ratio = if group.is_empty() { None } else { Some(h.leading_coeff() / prod.leading_coeff()) };
        match ratio {
            Some(c) if h == prod.scale(&c) => {
                for &j in &group {
                    used[j] = true;
                }
                out.matched.push(FactorMatch { wr: i, kr: group, ratio: c });
            }
            _ => out.unmatched_wr.push(i),
        }
    }
    out.unmatched_kr = (0..kp.len()).filter(|&j| !used[j]).collect();
    let one = Rational::one();
    let slice: Vec<MPoly> = kp.iter().map(|p| p.eval_var(1, &one)).collect();
    for &i in &out.unmatched_wr {
        let h = wr_to_sr(&wr.factors[i].0).eval_var(1, &one);
        if h.strip_monomial().1.is_constant() {
            continue;
        }
        let group: Vec<usize> = (0..slice.len()).filter(|&j| !poly_gcd(&h, &slice[j]).is_constant()).collect();
        let prod = group.iter().fold(MPoly::one(&sr_vars()), |acc, &j| &acc * &slice[j]);
        if group.is_empty() {
            continue;
        }
        let c = h.leading_coeff() / prod.leading_coeff();
        if h == prod.scale(&c) {
            out.isotropic.push(FactorMatch { wr: i, kr: group, ratio: c });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub n: u32,
    pub coords: Coords,
    pub factor: MPoly,
    /// Variable the curve was treated as a conic bundle in; `None` when it is
    /// linear in some variable.
    pub fiber_var: Option<String>,
    pub genus: u32,
    /// Outcome of checking the known parametrization, when there is one.
    pub parametrization: Option<bool>,
}

/// Parametrization of the `(w, r)` factor with complex-multiplication roots.
pub fn cm_factor_param() -> Param {
    let u = vars(&["u"]);
    Param::new(parse_ratfun("(u^2+1)/(2*u)", &u).expect("fixed"), parse_ratfun("-4/(u^2*(u^2+3))", &u).expect("fixed"))
        .expect("nonconstant")
}

/// Genus of every nonconstant catalog factor that is at most quadratic in
/// one of its variables.
pub fn elliptic_audit() -> Result<Vec<AuditEntry>> {
    let cm = parse_poly(CHI3_WR[2].0, &vars(&Coords::Wr.names()))?;
    let mut out = Vec::new();
    for coords in [Coords::Kr, Coords::Wr] {
        for n in [3, 4] {
            for (f, _) in chi_catalog(n, coords)?.factors {
                if f.used_vars().len() < 2 {
                    continue;
                }
                let names = coords.names();
                let degs = [f.degree(0), f.degree(1)];
                let (fiber_var, genus) = if degs.contains(&1) {
                    (None, 0)
                } else if let Some(i) = degs.iter().position(|&d| d == 2) {
                    (Some(names[i].to_string()), genus_quadratic_fiber(&Curve::new(&f)?, names[i])?.genus)
                } else {
                    continue;
                };
                let parametrization = (f == cm).then(|| verify_parametrization(&Curve::new(&f).expect("nonzero"), &cm_factor_param()));
                out.push(AuditEntry { n, coords, factor: f, fiber_var, genus, parametrization });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn cosines() {
        assert_eq!(exact_cos(1, 4).unwrap(), Rational::zero());
        assert_eq!(exact_cos(4, 4).unwrap(), Rational::one());
        assert_eq!(exact_cos(2, 6).unwrap(), frac(-1, 2));
        assert_eq!(exact_cos(1, 5), Err(Error::IrrationalCos(1, 5)));
    }

    #[test]
    fn index_range() {
        assert!(NickelianIndex::new(4, 0, 1, 1).is_err());
        assert!(NickelianIndex::new(4, 1, 4, 1).is_ok());
        assert_eq!(isotropic_indices(2), vec![(1, 1)]);
        assert_eq!(isotropic_indices(3), vec![(0, 1), (1, 0), (1, 1)]);
    }
}
