use num_complex::Complex64;
use rand::Rng;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lseries::{
    ad_std_from_alpha_beta, adjoint_from_alpha, standard_from_alpha, theta_modulus_bound, LocalFactorSeries,
};
use crate::mp::{identity_threshold, MpComplex};

/// Unramified local data at `p`: a unitary Satake parameter `α` of the
/// holomorphic form and a parameter `β` of the Maass form in the annulus
/// `p^{-7/64} <= |β| <= p^{7/64}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalParams {
    pub p: u64,
    pub alpha: MpComplex,
    pub beta: MpComplex,
    pub precision: u32,
}

impl LocalParams {
    pub fn new(p: u64, alpha: MpComplex, beta: MpComplex) -> Self {
        let precision = alpha.prec().max(beta.prec());
        LocalParams {
            p,
            alpha,
            beta,
            precision,
        }
    }

    /// `α = e^{i a}`, `β = e^{r + i b}`.
    pub fn from_angles(p: u64, alpha_phase: f64, beta_log_modulus: f64, beta_phase: f64, precision: u32) -> Self {
        let alpha = MpComplex::from_phase(precision, alpha_phase);
        let modulus = Float::with_val(precision, beta_log_modulus).exp();
        let beta = MpComplex::from_polar(&modulus, &Float::with_val(precision, beta_phase));
        LocalParams::new(p, alpha, beta)
    }

    /// Seeded admissible sample: uniform phase for `α`; log-uniform modulus in
    /// `[p^{-7/64}, p^{7/64}]` and uniform phase for `β`.
    pub fn sample<R: Rng>(rng: &mut R, p: u64, precision: u32) -> Self {
        let tau = std::f64::consts::TAU;
        let a = rng.gen_range(0.0..tau);
        let bound = 7.0 / 64.0 * (p as f64).ln();
        let r = rng.gen_range(-bound..=bound);
        let b = rng.gen_range(0.0..tau);
        LocalParams::from_angles(p, a, r, b, precision)
    }

    /// `|α| = 1` and `max(|β|, |β|^{-1}) <= p^{7/64}`, each within `2^{-(prec-8)}`.
    pub fn check_admissible(&self) -> Result<()> {
        let tol = identity_threshold(self.precision, 8);
        let a = self.alpha.abs().to_f64();
        if (a - 1.0).abs() > tol {
            return Err(Error::InvalidParameter(format!("|alpha| = {a} is not 1")));
        }
        let b = self.beta.abs();
        let bound = theta_modulus_bound(self.p, self.precision);
        let worst = if b >= 1 { b } else { b.recip() };
        if worst.to_f64() > bound.to_f64() * (1.0 + tol) {
            return Err(Error::ThetaBound {
                p: self.p,
                value: worst.to_f64(),
                limit: bound.to_f64(),
            });
        }
        Ok(())
    }

    /// `λ_f(p) = α + α^{-1}`.
    pub fn lambda_f(&self) -> MpComplex {
        &self.alpha + &self.alpha.recip()
    }

    /// `λ_f(p^2) = α^2 + 1 + α^{-2}`.
    pub fn lambda_f_sq(&self) -> MpComplex {
        let a2 = self.alpha.powu(2);
        &(&a2 + &a2.recip()) + &MpComplex::one(self.precision)
    }

    /// `λ_φ(p) = β + β^{-1}`.
    pub fn lambda_phi(&self) -> MpComplex {
        &self.beta + &self.beta.recip()
    }

    /// `1 + λ_φ(p) u - λ_f(p^2) u^2`.
    pub fn denominator(&self) -> [MpComplex; 3] {
        [MpComplex::one(self.precision), self.lambda_phi(), -&self.lambda_f_sq()]
    }

    /// Roots of the denominator in `u` (one or none when degenerate).
    pub fn denominator_roots(&self) -> Vec<Complex64> {
        let [_, b, c] = self.denominator().map(|z| z.to_c64());
        // c u^2 + b u + 1 = 0
        if c.norm() == 0.0 {
            return if b.norm() == 0.0 { Vec::new() } else { vec![-1.0 / b] };
        }
        let disc = (b * b - 4.0 * c).sqrt();
        vec![(-b + disc) / (2.0 * c), (-b - disc) / (2.0 * c)]
    }
}

/// Radius `p^{-σ_min}` of the disk in `u` that corresponds to `Re(s) >= σ_min`.
pub fn holomorphy_radius(p: u64, sigma_min: f64) -> f64 {
    (p as f64).powf(-sigma_min)
}

/// Default `σ_min` for the holomorphy check.
pub const SIGMA_MIN: f64 = 0.4;

/// `H_p = L_p(s, φ) / (D(p^{-s}) L_p(2s, ad f) L_p(2s, ad φ))` to order `order`.
pub fn hp_series(params: &LocalParams, order: usize) -> Result<LocalFactorSeries> {
    check_denominator(params, SIGMA_MIN)?;
    let p = params.p;
    let l_phi = standard_from_alpha(p, &params.beta, order);
    let d_inv = denominator_series(params, order).reciprocal()?;
    let ad_f2 = adjoint_from_alpha(p, &params.alpha, order).embed_square();
    let ad_phi2 = adjoint_from_alpha(p, &params.beta, order).embed_square();
    Ok(l_phi.mul(&d_inv).mul(&ad_f2.reciprocal()?).mul(&ad_phi2.reciprocal()?))
}

/// Fails when a root of the denominator lies in `|u| <= p^{-σ_min}`.
pub fn check_denominator(params: &LocalParams, sigma_min: f64) -> Result<()> {
    let radius = holomorphy_radius(params.p, sigma_min);
    for r in params.denominator_roots() {
        if r.norm() <= radius {
            return Err(Error::DenominatorRootInsideDisk {
                p: params.p,
                root_modulus: r.norm(),
                radius,
            });
        }
    }
    Ok(())
}

fn denominator_series(params: &LocalParams, order: usize) -> LocalFactorSeries {
    LocalFactorSeries::polynomial(params.p, &params.denominator(), order, params.precision)
}

/// `Σ_j λ_f(p^{2j}) λ_φ(p^j) u^j`, each eigenvalue summed from its Satake
/// parameters: `λ(p^j) = Σ_{r=0}^{j} x^{2r-j}`.
pub fn diagonal_series(params: &LocalParams, order: usize) -> LocalFactorSeries {
    let coeffs = (0..=order)
        .map(|j| {
            let lf = satake_power_sum(&params.alpha, 2 * j);
            let lphi = satake_power_sum(&params.beta, j);
            &lf * &lphi
        })
        .collect();
    LocalFactorSeries::from_coeffs(params.p, coeffs)
}

fn satake_power_sum(x: &MpComplex, j: usize) -> MpComplex {
    let mut acc = MpComplex::zero(x.prec());
    for r in 0..=j {
        acc += &x.powi(2 * r as i32 - j as i32);
    }
    acc
}

/// Coefficientwise comparison of two truncated series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub p: u64,
    pub order: usize,
    pub max_residual: f64,
    /// `max_residual / max(1, max_j |lhs_j|)`
    pub relative_residual: f64,
    pub witness: usize,
    pub threshold: f64,
    pub pass: bool,
}

impl IdentityReport {
    fn compare(p: u64, lhs: &LocalFactorSeries, rhs: &LocalFactorSeries, precision: u32) -> IdentityReport {
        let (max_residual, witness) = lhs.max_residual(rhs);
        let scale = lhs.coeffs().iter().map(|c| c.abs().to_f64()).fold(1.0f64, f64::max);
        let relative_residual = max_residual / scale;
        let threshold = identity_threshold(precision, 16);
        IdentityReport {
            p,
            order: lhs.order().min(rhs.order()),
            max_residual,
            relative_residual,
            witness,
            threshold,
            pass: relative_residual < threshold,
        }
    }
}

/// `L_p(s, ad f × φ) = L_p(s, φ) / D(p^{-s}) · Σ_j λ_f(p^{2j}) λ_φ(p^j) p^{-js}`.
pub fn verify_key_identity(params: &LocalParams, order: usize) -> Result<IdentityReport> {
    params.check_admissible()?;
    check_denominator(params, SIGMA_MIN)?;
    let lhs = ad_std_from_alpha_beta(params.p, &params.alpha, &params.beta, order);
    let l_phi = standard_from_alpha(params.p, &params.beta, order);
    let rhs = l_phi
        .mul(&denominator_series(params, order).reciprocal()?)
        .mul(&diagonal_series(params, order));
    Ok(IdentityReport::compare(params.p, &lhs, &rhs, params.precision))
}

/// `L_p(s, ad f × φ) = H_p(s) L_p(2s, ad f) L_p(2s, ad φ) Σ_j λ_f(p^{2j}) λ_φ(p^j) p^{-js}`.
pub fn verify_thm1_identity(params: &LocalParams, order: usize) -> Result<IdentityReport> {
    params.check_admissible()?;
    let p = params.p;
    let lhs = ad_std_from_alpha_beta(p, &params.alpha, &params.beta, order);
    let rhs = hp_series(params, order)?
        .mul(&adjoint_from_alpha(p, &params.alpha, order).embed_square())
        .mul(&adjoint_from_alpha(p, &params.beta, order).embed_square())
        .mul(&diagonal_series(params, order));
    Ok(IdentityReport::compare(p, &lhs, &rhs, params.precision))
}

/// Printed low-order coefficients of `H_p`: `u^3 ↦ -λ_f(p)^2 λ_φ(p)` and
/// `u^4 ↦ λ_f(p)^2 (λ_φ(p)^2 + 1) - 2`.
pub fn hp_expected_low_terms(params: &LocalParams) -> (MpComplex, MpComplex) {
    let lf2 = params.lambda_f().powu(2);
    let lphi = params.lambda_phi();
    let c3 = -&(&lf2 * &lphi);
    let c4 = &(&lf2 * &(&lphi.powu(2) + &MpComplex::one(params.precision)))
        - &MpComplex::from_f64(params.precision, 2.0, 0.0);
    (c3, c4)
}
