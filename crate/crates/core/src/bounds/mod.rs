//! Exponent optimizations and the Euler products they feed: the max-min
//! problems behind the decorrelation exponents, Mertens-type products,
//! local triple-product factors and a registry of the resulting constants.

mod constants;
mod ichino;
mod minimax;
mod products;

pub use constants::{fixed_decimal, named_constants, NamedConstant, CONSTANT_DIGITS};
pub use ichino::{ichino_local, IchinoCase, IchinoInput, IchinoLocal};
pub use minimax::{inner_min, solve_minimax, MinimaxObjective, MinimaxProblem, MinimaxReport};
pub use products::{
    balancing_alpha, correlation_products, correlation_products_with, mertens_product, CorrelationReport, MertensReport,
};
