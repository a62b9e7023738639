//! Exact and high-precision computations around level-one Hecke eigenforms:
//! coefficient tables, Euler-product algebra for standard, adjoint and
//! Rankin–Selberg L-functions, local factorization identities, approximate
//! functional equations, mollified sums, and the exponent optimizations
//! built on top of them.

pub mod analytic;
pub mod arith;
pub mod bounds;
pub mod error;
pub mod factorization;
pub mod lseries;
pub mod modforms;
pub mod mp;

pub use error::{Error, Result};
