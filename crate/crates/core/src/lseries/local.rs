use rug::ops::Pow;
use rug::Float;

use super::LocalFactorSeries;
use crate::error::{Error, Result};
use crate::modforms::{satake, satake_from_trace, Eigenform};
use crate::mp::MpComplex;

/// `θ = 7/64`, the exponent bounding Satake parameters of the GL(2) Maass factor.
pub const THETA_NUM: u32 = 7;
pub const THETA_DEN: u32 = 64;

/// `p^{θ} + p^{-θ}`, the largest admissible `|λ_φ(p)|` for real parameters.
pub fn theta_trace_bound(p: u64, precision: u32) -> Float {
    let t = theta_modulus_bound(p, precision);
    let inv = Float::with_val(precision, t.recip_ref());
    t + inv
}

/// `p^{θ}`.
pub fn theta_modulus_bound(p: u64, precision: u32) -> Float {
    let e = Float::with_val(precision, THETA_NUM) / THETA_DEN;
    Float::with_val(precision, p).pow(e)
}

/// `(1 - α u)^{-1}(1 - α^{-1} u)^{-1}`.
pub fn standard_from_alpha(p: u64, alpha: &MpComplex, order: usize) -> LocalFactorSeries {
    let prec = alpha.prec();
    LocalFactorSeries::from_inverse_roots(p, vec![alpha.clone(), alpha.recip()], order, prec)
}

/// `Π_{ℓ ∈ {-1,0,1}} (1 - α^{2ℓ} u)^{-1}`.
pub fn adjoint_from_alpha(p: u64, alpha: &MpComplex, order: usize) -> LocalFactorSeries {
    let prec = alpha.prec();
    let a2 = alpha.powu(2);
    let roots = vec![a2.clone(), MpComplex::one(prec), a2.recip()];
    LocalFactorSeries::from_inverse_roots(p, roots, order, prec)
}

/// `Π_{j, j'} (1 - α_j α'_{j'} u)^{-1}` over both Satake pairs.
pub fn rankin_from_alphas(p: u64, alpha: &MpComplex, alpha2: &MpComplex, order: usize) -> LocalFactorSeries {
    let prec = alpha.prec().max(alpha2.prec());
    let (ai, bi) = (alpha.recip(), alpha2.recip());
    let roots = vec![alpha * alpha2, alpha * &bi, &ai * alpha2, &ai * &bi];
    LocalFactorSeries::from_inverse_roots(p, roots, order, prec)
}

/// `Π_{ℓ ∈ {-1,0,1}} Π_{ℓ' = ±1} (1 - α^{2ℓ} β^{ℓ'} u)^{-1}`.
pub fn ad_std_from_alpha_beta(p: u64, alpha: &MpComplex, beta: &MpComplex, order: usize) -> LocalFactorSeries {
    let prec = alpha.prec().max(beta.prec());
    let a2 = alpha.powu(2);
    let ad = [a2.recip(), MpComplex::one(prec), a2];
    let bi = beta.recip();
    let mut roots = Vec::with_capacity(6);
    for x in &ad {
        roots.push(x * beta);
        roots.push(x * &bi);
    }
    LocalFactorSeries::from_inverse_roots(p, roots, order, prec)
}

/// Local factor of `ζ`: `(1 - u)^{-1}`.
pub fn local_zeta(p: u64, order: usize, precision: u32) -> LocalFactorSeries {
    LocalFactorSeries::from_inverse_roots(p, vec![MpComplex::one(precision)], order, precision)
}

pub fn local_standard(f: &Eigenform, p: u64, order: usize, precision: u32) -> Result<LocalFactorSeries> {
    let s = satake(f, p, precision)?;
    Ok(standard_from_alpha(p, &s.alpha, order))
}

pub fn local_adjoint(f: &Eigenform, p: u64, order: usize, precision: u32) -> Result<LocalFactorSeries> {
    let s = satake(f, p, precision)?;
    Ok(adjoint_from_alpha(p, &s.alpha, order))
}

pub fn local_rankin(f: &Eigenform, g: &Eigenform, p: u64, order: usize, precision: u32) -> Result<LocalFactorSeries> {
    let a = satake(f, p, precision)?;
    let b = satake(g, p, precision)?;
    Ok(rankin_from_alphas(p, &a.alpha, &b.alpha, order))
}

/// Satake root `β` of `x^2 - λ_φ(p) x + 1` for a real Maass eigenvalue,
/// after checking `|λ_φ(p)| <= p^{7/64} + p^{-7/64}`.
pub fn maass_beta(lam_phi: &Float, p: u64) -> Result<MpComplex> {
    let prec = lam_phi.prec();
    let limit = theta_trace_bound(p, prec);
    // a few ulps of slack so the extreme admissible value itself passes
    let slack = Float::with_val(prec, &limit * crate::mp::pow2_neg(prec as i64 - 4));
    if Float::with_val(prec, lam_phi.abs_ref()) > Float::with_val(prec, &limit + &slack) {
        return Err(Error::ThetaBound {
            p,
            value: lam_phi.to_f64().abs(),
            limit: limit.to_f64(),
        });
    }
    Ok(satake_from_trace(p, lam_phi).alpha)
}

/// Local factor of `L(s, ad f × φ)` with `λ_φ(p)` a free real parameter.
pub fn local_rankin_ad_std(f: &Eigenform, lam_phi: &Float, p: u64, order: usize) -> Result<LocalFactorSeries> {
    let prec = lam_phi.prec();
    let beta = maass_beta(lam_phi, p)?;
    let a = satake(f, p, prec)?;
    Ok(ad_std_from_alpha_beta(p, &a.alpha, &beta, order))
}
