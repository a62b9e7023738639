//! Local GL(2) × GL(3) factorization: the rational-function identity relating
//! `L_p(s, ad f × φ)` to the diagonal series `Σ λ_f(p^{2j}) λ_φ(p^j) p^{-js}`,
//! the correction factor `H_p`, and a numerical scan of the denominator
//! `1 + λ_φ(p) p^{-s} - λ_f(p^2) p^{-2s}`.

mod identities;
mod scan;

pub use identities::{
    check_denominator, diagonal_series, holomorphy_radius, hp_expected_low_terms, hp_series, verify_key_identity,
    verify_thm1_identity, IdentityReport, LocalParams, SIGMA_MIN,
};
pub use scan::{
    denominator_abs, denominator_abs_mp, denominator_min_scan, ScanDomain, ScanGrid, ScanPoint, ScanReport,
};
