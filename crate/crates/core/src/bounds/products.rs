use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::modforms::{lambda, Eigenform};

/// `Π_{p<=x} (1 - δ/p)` and the normalized `Π · (log x)^δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MertensReport {
    pub delta: f64,
    pub x: f64,
    pub product: f64,
    pub normalized: f64,
}

pub fn mertens_product(delta: f64, x: f64, precision: u32) -> Result<MertensReport> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be nonnegative, got {delta}"
        )));
    }
    if delta >= 2.0 {
        return Err(Error::MertensDelta(delta));
    }
    if !(x >= 3.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("need x >= 3, got {x}")));
    }
    let d = Float::with_val(precision, delta);
    let mut prod = Float::with_val(precision, 1);
    for p in primes_up_to(x.floor() as u64) {
        prod *= 1 - Float::with_val(precision, &d / p);
    }
    let log_x = Float::with_val(precision, x).ln();
    let normalized = Float::with_val(precision, &prod * log_x.pow(&d));
    Ok(MertensReport {
        delta,
        x,
        product: prod.to_f64(),
        normalized: normalized.to_f64(),
    })
}

/// The two Euler products bounding the decorrelation of `f` and `g`, their
/// minimum and the interpolation `sound^α holo^{1-α}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub x: f64,
    /// `Π_{p<=x} (1 - (λ_f(p)² + λ_g(p)² - 1)/(2p))`
    pub sound_product: f64,
    /// `Π_{p<=x} (1 - ((|λ_f(p)| - 1)² + (|λ_g(p)| - 1)²)/(4p))`
    pub holo_product: f64,
    pub combined: f64,
    pub alpha: f64,
    pub interpolated: f64,
    /// `-log(interpolated) / log log x`
    pub exponent: f64,
}

/// Interpolation weight `α = 2/√3 - 1` balancing the two products.
pub fn balancing_alpha() -> f64 {
    2.0 / 3f64.sqrt() - 1.0
}

pub fn correlation_products(f: &Eigenform, g: &Eigenform, x: f64, precision: u32) -> Result<CorrelationReport> {
    let need = x.floor() as u64;
    for h in [f, g] {
        if (h.truncation() as u64) < need {
            return Err(Error::TableTooShort {
                needed: need,
                have: h.truncation(),
            });
        }
    }
    correlation_products_with(x, precision, |p| {
        Ok((lambda(f, p, precision)?, lambda(g, p, precision)?))
    })
}

/// Same products for an arbitrary eigenvalue source `p -> (λ_f(p), λ_g(p))`.
pub fn correlation_products_with<F>(x: f64, precision: u32, eigenvalues: F) -> Result<CorrelationReport>
where
    F: Fn(u64) -> Result<(Float, Float)>,
{
    if !(x >= 3.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("need x >= 3, got {x}")));
    }
    let mut sound = Float::with_val(precision, 1);
    let mut holo = Float::with_val(precision, 1);
    for p in primes_up_to(x.floor() as u64) {
        let (lf, lg) = eigenvalues(p)?;
        let s = Float::with_val(precision, lf.clone().square() + lg.clone().square()) - 1;
        sound *= 1 - s / (2 * p);
        let hf = Float::with_val(precision, lf.abs() - 1).square();
        let hg = Float::with_val(precision, lg.abs() - 1).square();
        holo *= 1 - Float::with_val(precision, hf + hg) / (4 * p);
    }
    let alpha = balancing_alpha();
    let (s, h) = (sound.to_f64(), holo.to_f64());
    let interpolated = s.powf(alpha) * h.powf(1.0 - alpha);
    Ok(CorrelationReport {
        x,
        sound_product: s,
        holo_product: h,
        combined: s.min(h),
        alpha,
        interpolated,
        exponent: -interpolated.ln() / x.ln().ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_zero_and_domain() {
        assert_eq!(mertens_product(0.0, 1e4, 128).unwrap().product, 1.0);
        assert_eq!(mertens_product(2.0, 1e4, 128), Err(Error::MertensDelta(2.0)));
        assert!(mertens_product(1.0, 2.0, 128).is_err());
    }

    #[test]
    fn small_product_by_hand() {
        // (1 - 1/2)(1 - 1/3)(1 - 1/5)(1 - 1/7) = 8/35
        let r = mertens_product(1.0, 10.0, 128).unwrap();
        assert!((r.product - 8.0 / 35.0).abs() < 1e-16);
    }

    #[test]
    fn constant_eigenvalue_sources() {
        let p = 128;
        let ones =
            correlation_products_with(1000.0, p, |_| Ok((Float::with_val(p, 1), Float::with_val(p, 1)))).unwrap();
        assert_eq!(ones.holo_product, 1.0);
        let zeros = correlation_products_with(10.0, p, |_| Ok((Float::with_val(p, 0), Float::with_val(p, 0)))).unwrap();
        // each sound factor is 1 + 1/(2p)
        let want: f64 = [2.0, 3.0, 5.0, 7.0].iter().map(|q| 1.0 + 0.5 / q).product();
        assert!((zeros.sound_product - want).abs() < 1e-15);
    }
}
