//! Exact arithmetic: rationals, sparse polynomials, rational functions,
//! gcds, resultants and linear algebra.

pub mod factor;
pub mod gcd;
pub mod linalg;
pub mod mpoly;
pub mod ratfun;
pub mod rational;
pub mod resultant;

pub use gcd::{poly_gcd, squarefree_primitive};
pub use linalg::{nullspace, nullspace_modular, rank};
pub use mpoly::{vars, Monomial, MPoly, Vars};
pub use ratfun::RatFun;
pub use rational::{frac, rat, Rational};
pub use resultant::{discriminant, resultant};
