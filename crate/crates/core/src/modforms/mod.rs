//! Level-one holomorphic cusp forms with exact coefficients.
//!
//! The space `S_k(SL_2(Z))` is spanned by `Δ^c E_4^a E_6^b` with
//! `12c + 4a + 6b = k`, `c >= 1`. Row-reducing those monomials gives the
//! echelon ("Miller") basis; when the space is one-dimensional its single
//! basis vector is the normalized Hecke eigenform.

mod eigenform;
mod intseries;
mod qexpansion;

pub use eigenform::{
    eigenform, lambda, satake, satake_from_trace, Eigenform, EigenformJson, HeckeLawReport, SatakeLocalData,
    SUPPORTED_WEIGHTS,
};
pub use intseries::{kronecker_mul, IntSeries};
pub use qexpansion::{hecke_apply, miller_basis, QExpansion};

use rug::ops::Pow;
use rug::Integer;

use crate::error::{Error, Result};

/// `dim S_k(SL_2(Z))` for even `k >= 0`; zero for odd weights.
pub fn cusp_dimension(k: u32) -> usize {
    if k % 2 == 1 || k < 12 {
        return 0;
    }
    let d = (k / 12) as usize;
    if k % 12 == 2 {
        d - 1
    } else {
        d
    }
}

/// `σ_r(n)` for `1 <= n < len` by a divisor sieve (index 0 unused, set to 0).
fn divisor_power_sums(r: u32, len: usize) -> Vec<Integer> {
    let mut sigma = vec![Integer::new(); len];
    for d in 1..len {
        let dr = Integer::from(d).pow(r);
        let mut m = d;
        while m < len {
            sigma[m] += &dr;
            m += d;
        }
    }
    sigma
}

/// `E_4 = 1 + 240 Σ σ_3(n) q^n`, first `len` coefficients.
pub fn eisenstein_e4(len: usize) -> IntSeries {
    eisenstein(3, 240, len)
}

/// `E_6 = 1 - 504 Σ σ_5(n) q^n`, first `len` coefficients.
pub fn eisenstein_e6(len: usize) -> IntSeries {
    eisenstein(5, -504, len)
}

fn eisenstein(r: u32, scale: i64, len: usize) -> IntSeries {
    let mut c = divisor_power_sums(r, len);
    for x in c.iter_mut().skip(1) {
        *x *= scale;
    }
    if len > 0 {
        c[0] = Integer::from(1);
    }
    IntSeries::from_coeffs(c)
}

/// `Δ = (E_4^3 - E_6^2) / 1728`, first `len` coefficients.
pub fn discriminant(len: usize) -> IntSeries {
    let e4 = eisenstein_e4(len);
    let e6 = eisenstein_e6(len);
    let e4_cubed = e4.mul(&e4).mul(&e4);
    let e6_sq = e6.mul(&e6);
    e4_cubed.sub(&e6_sq).div_exact(&Integer::from(1728))
}

/// `E_4^a E_6^b` of weight `w`, with `b ∈ {0, 1}`; `None` for `w = 2` or odd.
fn eisenstein_monomial(w: u32, len: usize) -> Option<IntSeries> {
    if w % 2 == 1 || w == 2 {
        return None;
    }
    let (a, b) = if w % 4 == 0 { (w / 4, 0) } else { ((w - 6) / 4, 1) };
    let mut acc = IntSeries::one(len);
    if a > 0 {
        acc = acc.mul(&eisenstein_e4(len).pow(a));
    }
    if b > 0 {
        acc = acc.mul(&eisenstein_e6(len));
    }
    Some(acc)
}

/// Echelon basis of `S_k` as integer series indexed from `q^0`, each of
/// length `truncation + 1`.
pub(crate) fn echelon_basis(k: u32, truncation: usize) -> Result<Vec<IntSeries>> {
    let dim = cusp_dimension(k);
    if dim == 0 {
        return Ok(Vec::new());
    }
    if truncation < dim {
        return Err(Error::TruncationBelowDimension {
            weight: k,
            dimension: dim,
            truncation,
        });
    }
    let len = truncation + 1;
    let delta = discriminant(len);
    let mut rows: Vec<IntSeries> = Vec::with_capacity(dim);
    let mut delta_pow = delta.clone();
    for c in 1..=dim as u32 {
        let w = k - 12 * c;
        let m = eisenstein_monomial(w, len).expect("weight of cofactor is admissible");
        rows.push(delta_pow.mul(&m));
        delta_pow = delta_pow.mul(&delta);
    }
    // rows[i] = q^{i+1} + ...; clear the entries above the diagonal
    for i in (0..dim).rev() {
        for j in (i + 1)..dim {
            let factor = rows[i].coeff(j + 1).clone();
            if factor != 0 {
                rows[i] = rows[i].sub(&rows[j].scale(&factor));
            }
        }
    }
    Ok(rows)
}
