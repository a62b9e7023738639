//! Archimedean data of level-one L-functions, truncated values on vertical
//! lines, the approximate functional equation and its diagonal weights
//! `W(n)`, mollified partial sums and the successive-maxima procedure.
//!
//! Everything here runs in double precision; coefficient tables are built at
//! full precision upstream and rounded once.

mod afe;
mod data;
mod gamma;
mod mollifier;

pub use afe::{
    afe_central_value, afe_cutoff, afe_weight, afe_weight_table, weight_decay_slope, weighted_diagonal_sum, AfeConfig,
    Kernel, WeightRow, WeightSlope,
};
pub use data::{analytic_conductor, completed_l, make_lfunction_data, truncated_l, LFunctionData, LSource, LineValue};
pub use gamma::{ln_gamma, ln_gamma_factor, ln_gamma_r};
pub use mollifier::{
    height_bound, mollified_lfunction, mollified_sum, mollifier_product, partial_sum, successive_maxima, MaximaReport,
    MollifierConfig, MAXIMA_STEP,
};
