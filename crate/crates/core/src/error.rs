use thiserror::Error;

/// Every failure surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation below dimension: dim S_{weight} = {dimension}, truncation {truncation}")]
    TruncationBelowDimension {
        weight: u32,
        dimension: usize,
        truncation: usize,
    },

    #[error("insufficient truncation: floor({truncation}/{m}) = 0")]
    InsufficientTruncation { m: u64, truncation: usize },

    #[error("nontrivial coefficient field; exact mode unavailable (weight {0})")]
    UnsupportedWeight(u32),

    #[error("out of table: n = {n} exceeds truncation {truncation}")]
    OutOfTable { n: u64, truncation: usize },

    #[error("violates θ=7/64 bound: |λ_φ({p})| = {value} > {limit}")]
    ThetaBound { p: u64, value: f64, limit: f64 },

    #[error("self-dual table must be nonnegative (value {value} at n = {n})")]
    NegativeSelfDual { n: u64, value: f64 },

    #[error("denominator root inside disk: |root| = {root_modulus} <= radius {radius} at p = {p}")]
    DenominatorRootInsideDisk { p: u64, root_modulus: f64, radius: f64 },

    #[error("outside absolute convergence: Re(s) = {re} needs to exceed {bound}")]
    OutsideAbsoluteConvergence { re: f64, bound: f64 },

    #[error("increase T_max: relative integrand {relative:e} at |t| = {t_max} exceeds {tolerance:e}")]
    QuadratureTail { t_max: f64, relative: f64, tolerance: f64 },

    #[error("empty grid")]
    EmptyGrid,

    #[error("successive maxima: feasible set S_{0} is empty")]
    EmptyFeasibleSet(usize),

    #[error("table too short: need n <= {needed}, table holds {have}")]
    TableTooShort { needed: u64, have: usize },

    #[error("delta/p >= 1 at p = 2 (delta = {0})")]
    MertensDelta(f64),

    #[error("inconsistent local data: {0}")]
    InconsistentLocalData(String),

    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed document: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
