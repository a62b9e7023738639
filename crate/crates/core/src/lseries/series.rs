use crate::error::{Error, Result};
use crate::mp::MpComplex;

/// Truncated power series `Σ_{j=0}^{N_u} c_j u^j` in `u = p^{-s}`.
///
/// When the series is a product of geometric factors `(1 - r u)^{-1}` the
/// inverse roots `r` are kept; `inverse_roots` is empty otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactorSeries {
    pub p: u64,
    coeffs: Vec<MpComplex>,
    inverse_roots: Vec<MpComplex>,
    precision: u32,
}

impl LocalFactorSeries {
    /// `Π_r (1 - r u)^{-1}` to order `order`.
    pub fn from_inverse_roots(p: u64, roots: Vec<MpComplex>, order: usize, precision: u32) -> Self {
        let mut c = vec![MpComplex::zero(precision); order + 1];
        c[0] = MpComplex::one(precision);
        for r in &roots {
            // multiply by 1/(1 - r u): c_j += r c_{j-1}, ascending
            for j in 1..=order {
                let t = &r.clone() * &c[j - 1];
                c[j] += &t;
            }
        }
        LocalFactorSeries {
            p,
            coeffs: c,
            inverse_roots: roots,
            precision,
        }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<MpComplex>) -> Self {
        assert!(!coeffs.is_empty(), "series needs a constant term");
        let precision = coeffs[0].prec();
        LocalFactorSeries {
            p,
            coeffs,
            inverse_roots: Vec::new(),
            precision,
        }
    }

    /// The polynomial `1 + c_1 u + ... ` given by its coefficients, padded to `order`.
    pub fn polynomial(p: u64, poly: &[MpComplex], order: usize, precision: u32) -> Self {
        let coeffs = (0..=order)
            .map(|j| poly.get(j).cloned().unwrap_or_else(|| MpComplex::zero(precision)))
            .collect();
        LocalFactorSeries::from_coeffs(p, coeffs)
    }

    pub fn one(p: u64, order: usize, precision: u32) -> Self {
        LocalFactorSeries::from_inverse_roots(p, Vec::new(), order, precision)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeff(&self, j: usize) -> &MpComplex {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[MpComplex] {
        &self.coeffs
    }

    pub fn inverse_roots(&self) -> &[MpComplex] {
        &self.inverse_roots
    }

    /// Truncated Cauchy product; the order is the smaller of the two.
    pub fn mul(&self, other: &LocalFactorSeries) -> LocalFactorSeries {
        let order = self.order().min(other.order());
        let prec = self.precision.max(other.precision);
        let coeffs = (0..=order)
            .map(|j| {
                let mut acc = MpComplex::zero(prec);
                for i in 0..=j {
                    acc += &(&self.coeffs[i] * &other.coeffs[j - i]);
                }
                acc
            })
            .collect();
        let mut roots = self.inverse_roots.clone();
        let roots_known = !self.inverse_roots.is_empty() || self.is_one();
        let other_known = !other.inverse_roots.is_empty() || other.is_one();
        roots.extend(other.inverse_roots.iter().cloned());
        LocalFactorSeries {
            p: self.p,
            coeffs,
            inverse_roots: if roots_known && other_known { roots } else { Vec::new() },
            precision: prec,
        }
    }

    fn is_one(&self) -> bool {
        self.coeffs[1..].iter().all(MpComplex::is_zero)
    }

    /// Multiplicative inverse as a truncated series; needs `c_0 != 0`.
    pub fn reciprocal(&self) -> Result<LocalFactorSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter("series has zero constant term".into()));
        }
        let prec = self.precision;
        let inv0 = self.coeffs[0].recip();
        let mut b = Vec::with_capacity(self.coeffs.len());
        b.push(inv0.clone());
        for j in 1..self.coeffs.len() {
            let mut acc = MpComplex::zero(prec);
            for i in 1..=j {
                acc += &(&self.coeffs[i] * &b[j - i]);
            }
            b.push(-&(&acc * &inv0));
        }
        Ok(LocalFactorSeries {
            p: self.p,
            coeffs: b,
            inverse_roots: Vec::new(),
            precision: prec,
        })
    }

    /// `F(u) ↦ F(u^2)`, i.e. `s ↦ 2s`, keeping the same order.
    pub fn embed_square(&self) -> LocalFactorSeries {
        let order = self.order();
        let mut c = vec![MpComplex::zero(self.precision); order + 1];
        for (j, v) in self.coeffs.iter().enumerate() {
            if 2 * j > order {
                break;
            }
            c[2 * j] = v.clone();
        }
        LocalFactorSeries {
            p: self.p,
            coeffs: c,
            inverse_roots: Vec::new(),
            precision: self.precision,
        }
    }

    pub fn truncate(&self, order: usize) -> LocalFactorSeries {
        let mut s = self.clone();
        s.coeffs.truncate(order + 1);
        s
    }

    /// `a(p^k)` in `-u d/du log F = Σ_{k>=1} a(p^k) u^k`, for `1 <= k <= order`.
    ///
    /// Power sums of the stored inverse roots when available; otherwise the
    /// Newton recursion `k c_k = Σ_{j=1}^{k} a_j c_{k-j}` (needs `c_0 = 1`).
    pub fn log_derivative_coeffs(&self) -> Vec<MpComplex> {
        let order = self.order();
        let prec = self.precision;
        if !self.inverse_roots.is_empty() {
            let mut powers: Vec<MpComplex> = self.inverse_roots.clone();
            let mut out = Vec::with_capacity(order);
            for _ in 1..=order {
                let mut acc = MpComplex::zero(prec);
                for x in &powers {
                    acc += x;
                }
                out.push(acc);
                for (x, r) in powers.iter_mut().zip(&self.inverse_roots) {
                    *x *= r;
                }
            }
            return out;
        }
        self.newton_power_sums()
    }

    /// Log-derivative coefficients from the series coefficients alone.
    pub fn newton_power_sums(&self) -> Vec<MpComplex> {
        let order = self.order();
        let prec = self.precision;
        let mut a: Vec<MpComplex> = Vec::with_capacity(order);
        for k in 1..=order {
            let mut acc = self.coeffs[k].scale(&rug::Float::with_val(prec, k));
            for j in 1..k {
                acc -= &(&a[j - 1] * &self.coeffs[k - j]);
            }
            a.push(acc);
        }
        a
    }

    /// `max_j |c_j - d_j|` and the index where it occurs.
    pub fn max_residual(&self, other: &LocalFactorSeries) -> (f64, usize) {
        let order = self.order().min(other.order());
        let mut worst = (0.0, 0);
        for j in 0..=order {
            let r = self.coeffs[j].dist(&other.coeffs[j]);
            if r > worst.0 || (j == 0 && r >= worst.0) {
                worst = (r, j);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64(128, re, im)
    }

    #[test]
    fn geometric_series() {
        let s = LocalFactorSeries::from_inverse_roots(2, vec![c(0.5, 0.0)], 5, 128);
        for j in 0..=5 {
            assert!(s.coeff(j).dist(&c(0.5f64.powi(j as i32), 0.0)) < 1e-35);
        }
    }

    #[test]
    fn reciprocal_is_an_involution() {
        let s = LocalFactorSeries::from_coeffs(3, vec![c(1.0, 0.0), c(0.3, -0.2), c(-1.5, 0.1), c(0.0, 2.0)]);
        let back = s.reciprocal().unwrap().reciprocal().unwrap();
        assert!(back.max_residual(&s).0 < 1e-34);
        let prod = s.mul(&s.reciprocal().unwrap());
        assert!(prod.max_residual(&LocalFactorSeries::one(3, 3, 128)).0 < 1e-34);
    }

    #[test]
    fn newton_matches_power_sums() {
        let roots = vec![c(0.6, 0.8), c(0.6, -0.8), c(1.2, 0.0)];
        let s = LocalFactorSeries::from_inverse_roots(5, roots, 8, 128);
        let direct = s.log_derivative_coeffs();
        let newton = s.newton_power_sums();
        for (x, y) in direct.iter().zip(&newton) {
            assert!(x.dist(y) < 1e-30);
        }
    }

    #[test]
    fn square_embedding() {
        let s = LocalFactorSeries::from_inverse_roots(2, vec![c(2.0, 0.0)], 6, 128);
        let e = s.embed_square();
        let want = [1.0, 0.0, 2.0, 0.0, 4.0, 0.0, 8.0];
        for (j, w) in want.iter().enumerate() {
            assert!(e.coeff(j).dist(&c(*w, 0.0)) < 1e-35);
        }
    }
}
