//! Built-in series definitions, operators and curves.

use crate::arith::{vars, MPoly, RatFun, Rational, Vars};
use crate::error::{Error, Result};
use crate::expr::files::{parse_spec, SpecFile};
use crate::expr::{parse_poly, parse_ratfun};
use crate::ode::UniODE;
use crate::theta::ThetaOp;

pub struct NamedSpec {
    pub name: &'static str,
    pub tag: &'static str,
    pub text: &'static str,
    /// Closed-form coefficient of a ratio spec, when one is known.
    pub formula: Option<&'static str>,
    /// Symmetric under exchanging the two variables.
    pub symmetric: bool,
}

pub const SPECS: &[NamedSpec] = &[
    NamedSpec {
        name: "h2",
        tag: "cubic factorial double series",
        text: "[spec]
name = h2
kind = ratio
alpha1 = (3*n+3*m+1)*(3*n+3*m+2)*(3*n+3*m+3)/(n+1)^3
alpha2 = (3*n+3*m+1)*(3*n+3*m+2)*(3*n+3*m+3)/(m+1)^3
",
        formula: Some("fact(3*n+3*m)/(fact(n)^3*fact(m)^3)"),
        symmetric: true,
    },
    NamedSpec {
        name: "bat16",
        tag: "binomial product double series",
        text: "[spec]
name = bat16
kind = ratio
alpha1 = 4*(2*n+2*m+1)*(n+m+1)*(2*n+1)/(n+1)^3
alpha2 = 4*(2*n+2*m+1)*(n+m+1)*(2*m+1)/(m+1)^3
",
        formula: Some("binom(2*n+2*m, n+m)*binom(n+m, n)^2*binom(2*n, n)*binom(2*m, m)"),
        symmetric: true,
    },
    NamedSpec {
        name: "poch",
        tag: "scaled half-integer Pochhammer double series",
        text: "[spec]
name = poch
kind = formula
coeff = 64^(n+m)*poch(1/2, n)^3*poch(1/2, m)^3*poch(1/2, n+m)/(poch(1, n+m)^3*fact(n)*fact(m))
",
        formula: None,
        symmetric: true,
    },
    NamedSpec {
        name: "kdf_general",
        tag: "Kampe de Feriet family",
        text: "[spec]
name = kdf_general
kind = formula
coeff = poch(alpha, n)^M*poch(beta, m)^M*poch(betap, n+m)/(poch(gamma, n+m)^M*fact(n)*fact(m))
param.M = 3
param.alpha = 1/2
param.beta = 1/2
param.betap = 1/2
param.gamma = 1
",
        formula: None,
        symmetric: false,
    },
    NamedSpec {
        name: "bat18",
        tag: "squared factorial double series",
        text: "[spec]
name = bat18
kind = ratio
alpha1 = (n+m+1)^2*(2*n+2*m+1)*(2*n+2*m+2)/(n+1)^4
alpha2 = (n+m+1)^2*(2*n+2*m+1)*(2*n+2*m+2)/(m+1)^4
",
        formula: Some("fact(n+m)^2*fact(2*n+2*m)/(fact(n)^4*fact(m)^4)"),
        symmetric: true,
    },
    NamedSpec {
        name: "bat19",
        tag: "mixed factorial double series",
        text: "[spec]
name = bat19
kind = ratio
alpha1 = (2*n+m+1)*(2*n+m+2)*(2*m+n+1)*(n+m+1)/(n+1)^4
alpha2 = (2*m+n+1)*(2*m+n+2)*(2*n+m+1)*(n+m+1)/(m+1)^4
",
        formula: Some("fact(n+m)*fact(2*n+m)*fact(2*m+n)/(fact(n)^4*fact(m)^4)"),
        symmetric: true,
    },
    NamedSpec {
        name: "asym",
        tag: "asymmetric series with a terminating inner sum",
        text: "[spec]
name = asym
kind = formula
coeff = fact(2*n+2*m)/(fact(n)*fact(m))^2*sum(k, 0, m, poch(-m, k)^2*poch(1/2, k)*4^k/fact(k)^3)
",
        formula: None,
        symmetric: false,
    },
];

pub fn named_spec(name: &str) -> Result<&'static NamedSpec> {
    SPECS.iter().find(|s| s.name == name).ok_or(Error::NotFound)
}

pub fn spec(name: &str) -> Result<SpecFile> {
    parse_spec(named_spec(name)?.text)
}

/// The Kampe de Feriet spec with its parameters bound.
pub fn kdf(m: u32, alpha: Rational, beta: Rational, betap: Rational, gamma: Rational) -> SpecFile {
    spec("kdf_general").expect("built-in").with_params(&[
        ("M", Rational::from_integer(m.into())),
        ("alpha", alpha),
        ("beta", beta),
        ("betap", betap),
        ("gamma", gamma),
    ])
}

pub struct NamedOperator {
    pub name: &'static str,
    pub tag: &'static str,
    pub form: OperatorForm,
}

pub enum OperatorForm {
    /// Theta normal forms over the listed variables.
    Theta(&'static [&'static str], &'static [&'static str]),
    /// `j : p_j(t)` lines of a D-form operator.
    D(&'static str),
}

pub const OPERATORS: &[NamedOperator] = &[
    NamedOperator {
        name: "picard",
        tag: "system annihilating h2",
        form: OperatorForm::Theta(
            &["x", "y"],
            &[
                "tx^3 - x*(3*tx+3*ty+1)*(3*tx+3*ty+2)*(3*tx+3*ty+3)",
                "ty^3 - y*(3*tx+3*ty+1)*(3*tx+3*ty+2)*(3*tx+3*ty+3)",
            ],
        ),
    },
    NamedOperator {
        name: "pde13",
        tag: "system annihilating bat16",
        form: OperatorForm::Theta(
            &["x", "y"],
            &[
                "tx^3 - 4*x*(2*tx+1)*(tx+ty+1)*(2*tx+2*ty+1)",
                "ty^3 - 4*y*(2*ty+1)*(tx+ty+1)*(2*tx+2*ty+1)",
            ],
        ),
    },
    NamedOperator {
        name: "asym_sys",
        tag: "system annihilating asym",
        form: OperatorForm::Theta(
            &["x", "y"],
            &[
                "tx^2 - 2*x*(tx+ty+1)*(2*tx+2*ty+1)",
                "ty^4 - 2*y*(10*ty^2+10*ty+3)*(tx+ty+1)*(2*tx+2*ty+1) + 36*y^2*(2*tx+2*ty+3)*(2*tx+2*ty+1)*(tx+ty+2)*(tx+ty+1)",
            ],
        ),
    },
    NamedOperator {
        name: "batyrev1",
        tag: "order-four operator of the h2 diagonal",
        form: OperatorForm::Theta(
            &["x"],
            &["tx^4 - 3*x*(7*tx^2+7*tx+2)*(3*tx+1)*(3*tx+2) - 72*x^2*(3*tx+5)*(3*tx+4)*(3*tx+2)*(3*tx+1)"],
        ),
    },
    NamedOperator {
        name: "defbatyrev2",
        tag: "order-four operator of the poch diagonal",
        form: OperatorForm::Theta(
            &["x"],
            &["tx^4 - 4*x*(5*tx^2+5*tx+2)*(2*tx+1)^2 + 64*x^2*(2*tx+3)*(2*tx+1)*(2*tx+2)^2"],
        ),
    },
    NamedOperator {
        name: "batyrev5",
        tag: "order-four operator of the bat18 diagonal",
        form: OperatorForm::Theta(
            &["x"],
            &["tx^4 - 4*x*(3*tx^2+3*tx+1)*(2*tx+1)^2 - 4*x^2*(4*tx+5)*(4*tx+6)*(4*tx+2)*(4*tx+3)"],
        ),
    },
    NamedOperator {
        name: "batyrev6",
        tag: "order-four operator of the bat19 diagonal",
        form: OperatorForm::Theta(
            &["x"],
            &["529*tx^4 - 23*x*(921*tx^4+2046*tx^3+1644*tx^2+621*tx+92) \
               - x^2*(380851*tx^4+1328584*tx^3+1772673*tx^2+1033528*tx+221168) \
               - 2*x^3*(475861*tx^4+1310172*tx^3+1028791*tx^2+208932*tx-27232) \
               - 68*x^4*(8873*tx^4+14020*tx^3+5139*tx^2-1664*tx-976) \
               + 6936*x^5*(3*tx+4)*(3*tx+2)*(tx+1)^2"],
        ),
    },
    NamedOperator {
        name: "c4",
        tag: "order-four operator of the M=3 restriction",
        form: OperatorForm::D(
            "4 : t^3*(t-1)*(2*t+1)*(t+2)*(t^2+t+1)^2*(t+1)^4
3 : 2*t^2*(t^2+t+1)*(t+1)^3*(10*t^6+32*t^5+39*t^4+20*t^3-17*t^2-24*t-6)
2 : t*(t+1)^2*(50*t^9+243*t^8+588*t^7+903*t^6+885*t^5+501*t^4+33*t^3-174*t^2-99*t-14)
1 : 2*(t+1)*(15*t^10+82*t^9+228*t^8+411*t^7+531*t^6+513*t^5+333*t^4+99*t^3-12*t^2-12*t-1)
0 : 2*t*(t+2)*(t^2+t+1)^4
",
        ),
    },
    NamedOperator {
        name: "c3",
        tag: "order-three operator of the M=2 restriction",
        form: OperatorForm::D(
            "3 : 8*t^2*(t-1)^3
2 : 12*t*(t-1)^2*(3*t-2)
1 : 2*(t-1)*(13*t^2-16*t+4)
0 : t*(t-2)
",
        ),
    },
    NamedOperator {
        name: "l2_appD",
        tag: "order-two operator whose symmetric square is c3",
        form: OperatorForm::D(
            "2 : 16*t*(t-1)^2
1 : 8*(3*t-2)*(t-1)
0 : t
",
        ),
    },
    NamedOperator {
        name: "secorderbis",
        tag: "order-two hypergeometric operator",
        form: OperatorForm::Theta(&["x"], &["tx^2 - 3*x*(3*tx+1)*(3*tx+2)"]),
    },
];

pub fn named_operator(name: &str) -> Result<&'static NamedOperator> {
    OPERATORS.iter().find(|s| s.name == name).ok_or(Error::NotFound)
}

/// Theta-form operators of a named entry; D-form entries are converted.
pub fn system(name: &str) -> Result<Vec<ThetaOp>> {
    match &named_operator(name)?.form {
        OperatorForm::Theta(vs, ops) => ops.iter().map(|o| ThetaOp::parse(o, vs)).collect(),
        OperatorForm::D(_) => Ok(vec![ThetaOp::from_ode(&ode(name)?)]),
    }
}

/// D-form operator of a named univariate entry.
pub fn ode(name: &str) -> Result<UniODE> {
    match &named_operator(name)?.form {
        OperatorForm::D(text) => crate::expr::files::parse_ode(text),
        OperatorForm::Theta(vs, ops) if vs.len() == 1 => ThetaOp::parse(ops[0], vs)?.to_ode(),
        OperatorForm::Theta(..) => Err(Error::VariableMismatch),
    }
}

/// Head of the order-six operator of `h2` restricted to `y = c x`.
pub fn w6_head(c: &Rational) -> MPoly {
    let v = vars(&["x"]);
    let x = MPoly::var(&v, 0);
    let k = |q: Rational| MPoly::constant(&v, q);
    let one = Rational::from_integer(1.into());
    let i = |n: i64| Rational::from_integer(n.into());
    let c1 = c + &one;
    let lin = &k(one.clone()) + &x.scale(&(i(162) * &c1));
    let cub = &(&(&k(one.clone()) - &x.scale(&(i(81) * &c1))) + &x.pow(2).scale(&(i(2187) * (c * c - i(7) * c + &one))))
        - &x.pow(3).scale(&(i(19683) * num_traits::pow(c1, 3)));
    &(&lin * &cub) * &x.pow(4)
}

pub struct NamedCurve {
    pub name: &'static str,
    pub tag: &'static str,
    pub vars: [&'static str; 2],
    pub text: &'static str,
    /// Rational parametrizations in `u`.
    pub params: &'static [(&'static str, &'static str)],
}

pub const CURVES: &[NamedCurve] = &[
    NamedCurve {
        name: "cand",
        tag: "h2 singular cubic",
        vars: ["x", "y"],
        text: "19683*(x+y)^3 - 2187*(x^2+y^2-7*x*y) + 81*(x+y) - 1",
        params: &[("(1/6+u)^3", "(1/6-u)^3"), ("((5*u+7)/(6*(1-u)))^3", "((7*u+5)/(6*(u-1)))^3")],
    },
    NamedCurve {
        name: "s2xy",
        tag: "bat16 singular conic",
        vars: ["x", "y"],
        text: "256*(x-y)^2 - 32*(x+y) + 1",
        params: &[("(1/8-u)^2", "(1/8+u)^2")],
    },
    NamedCurve {
        name: "tilde_s2xy",
        tag: "poch singular biquadratic",
        vars: ["x", "y"],
        text: "4096*x^2*y^2 - 128*x*y*(x+y) + (x-y)^2",
        params: &[("u^2", "(u/(1+8*u))^2"), ("((u+1)/8)^2", "((u+1)/(8*u))^2")],
    },
    NamedCurve {
        name: "sing_kamp",
        tag: "Kampe de Feriet curve, M=3",
        vars: ["x", "y"],
        text: "x^2*y^2 - 2*x*y*(x+y) + (x-y)^2",
        params: &[("u^2", "(-u/(1-u))^2")],
    },
    NamedCurve {
        name: "m4_even",
        tag: "Kampe de Feriet system curve, M=2",
        vars: ["x", "y"],
        text: "(x+y)^2 - x^2*y^2",
        params: &[("u", "-u/(1-u)")],
    },
    NamedCurve {
        name: "m4_quartic",
        tag: "Kampe de Feriet system curve, M=4",
        vars: ["x", "y"],
        text: "(x+y-x*y)^3 + 27*x^2*y^2",
        params: &[("u^3", "(-u/(1-u))^3")],
    },
    NamedCurve {
        name: "m5",
        tag: "Kampe de Feriet system curve, M=5",
        vars: ["x", "y"],
        text: "(x+y+x*y)^4 - 136*x^2*y^2*(x+y+x*y) - 8*x*y*(x+1+y)*(x^2+y^2) - 8*x^2*y^2*(x+y)*(x*y-1)",
        params: &[("u^4", "(-u/(1-u))^4")],
    },
    NamedCurve {
        name: "sing_bat5",
        tag: "bat18 singular quartic",
        vars: ["x", "y"],
        text: "256*(x-y)^4 - 256*(x+y)*(x^2+y^2+30*x*y) + 32*(3*x^2+3*y^2-62*x*y) - 16*(x+y) + 1",
        params: &[("(u-1)^4/64", "(u+1)^4/64")],
    },
    NamedCurve {
        name: "sing_bat6",
        tag: "bat19 singular quintic",
        vars: ["x", "y"],
        text: "27*x^2*y^2*(x+y) - (256*(x^4+y^4)+304*x*y*(x^2+y^2)+69*x^2*y^2) \
               + 8*(x+y)*(32*(x^2+y^2)+339*x*y) - (96*(x^2+y^2)-1261*x*y) + 16*(x+y) - 1",
        params: &[("u^4/((u+1)*(u+2)*(2*u+1)^2)", "1/((u+1)*(u+2)^2*(2*u+1))")],
    },
    NamedCurve {
        name: "factor1",
        tag: "chi3 factor in (w, r)",
        vars: ["w", "r"],
        text: "r^2 - 4*r + 4 + 3*w^2*r^2 - 4*w^2*r + 16*w^4*r",
        params: &[("(u^2+1)/(2*u)", "-4/(u^2*(u^2+3))")],
    },
    NamedCurve {
        name: "factor2",
        tag: "chi3 factor pair in (k, r)",
        vars: ["k", "r"],
        text: "(3*k*r+r+4*k^2)*(k^2*r+3*k*r+4)",
        params: &[],
    },
    NamedCurve {
        name: "asym_conic1",
        tag: "first asym conic",
        vars: ["x", "y"],
        text: "16*x^2 - 8*(4*y+1)*x + (4*y-1)^2",
        params: &[],
    },
    NamedCurve {
        name: "asym_conic2",
        tag: "second asym conic",
        vars: ["x", "y"],
        text: "16*x^2 - 8*(36*y+1)*x + (36*y-1)^2",
        params: &[],
    },
];

pub fn named_curve(name: &str) -> Result<&'static NamedCurve> {
    CURVES.iter().find(|s| s.name == name).ok_or(Error::NotFound)
}

pub fn curve_poly(name: &str) -> Result<MPoly> {
    let c = named_curve(name)?;
    parse_poly(c.text, &vars(&c.vars))
}

/// Parametrizations of a named curve as rational functions of `u`.
pub fn curve_params(name: &str) -> Result<Vec<(RatFun, RatFun)>> {
    let uv = vars(&["u"]);
    named_curve(name)?
        .params
        .iter()
        .map(|(a, b)| Ok((parse_ratfun(a, &uv)?, parse_ratfun(b, &uv)?)))
        .collect()
}

/// `(r+k)(kr+1) - k (r U + s V)^2` over `(k, r)` with `U`, `V` symbolic.
pub fn genus1_symbolic(sign: i64) -> MPoly {
    let v = genus1_vars();
    let t = if sign >= 0 { "(r+k)*(k*r+1) - k*(r*U+V)^2" } else { "(r+k)*(k*r+1) - k*(r*U-V)^2" };
    parse_poly(t, &v).expect("built-in")
}

pub fn genus1_vars() -> Vars {
    vars(&["k", "r", "U", "V"])
}

/// Leading values of the diagonal of h2.
pub const SOL_BAT1: &[i64] = &[1, 12, 900, 94080, 11988900, 1704214512, 260453217024];

/// Leading values of the diagonal of bat16 (and of poch).
pub const DIAG_BAT16: &[i64] = &[1, 8, 168, 5120, 190120, 7939008, 357713664, 16993726464, 839358285480];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        for s in SPECS {
            let f = spec(s.name).unwrap();
            assert_eq!(f.name, s.name);
            f.hyper().ok();
        }
        for o in OPERATORS {
            assert!(!system(o.name).unwrap().is_empty(), "{}", o.name);
        }
        for c in CURVES {
            curve_poly(c.name).unwrap();
            curve_params(c.name).unwrap();
        }
    }
}
