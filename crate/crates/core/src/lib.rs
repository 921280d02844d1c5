//! Exact computations with holonomic double series: coefficient generation,
//! theta-operator systems, ODE fitting, singular curves from coefficient
//! asymptotics, and catalogs of Ising singularity curves.

pub mod arith;
pub mod curve;
pub mod error;
pub mod expr;
pub mod horn;
pub mod ising;
pub mod ode;
pub mod registry;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
