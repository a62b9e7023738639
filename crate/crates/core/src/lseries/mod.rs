//! Euler-product local factors as truncated series in `u = p^{-s}`, and
//! global Dirichlet-coefficient tables assembled from them.
//!
//! Every factor built from Satake data keeps its inverse roots, so prime-power
//! von Mangoldt coefficients come from power sums instead of root finding.

mod checks;
mod local;
mod series;
mod table;

pub use checks::{
    check_lambda_ineq, check_vonmangoldt_ineq, verify_ff_factorization, FactorizationReport, InequalityReport,
};
pub use local::{
    ad_std_from_alpha_beta, adjoint_from_alpha, local_adjoint, local_rankin, local_rankin_ad_std, local_standard,
    local_zeta, maass_beta, rankin_from_alphas, standard_from_alpha, theta_modulus_bound, theta_trace_bound, THETA_DEN,
    THETA_NUM,
};
pub use series::LocalFactorSeries;
pub use table::{
    adjoint_table, global_coeffs, rankin_table, standard_table, zeta_table, DirichletCoeffTable,
    DirichletCoeffTableJson, TableKind,
};
