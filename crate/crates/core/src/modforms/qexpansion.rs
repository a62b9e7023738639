use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{echelon_basis, intseries::kronecker_mul};
use crate::arith::gcd;
use crate::error::{Error, Result};

/// Truncated `q`-expansion `Σ_{n=1}^{N} a(n) q^n` of a weight-`k` cusp form
/// with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    weight: u32,
    /// `coeffs[n - 1] = a(n)`
    coeffs: Vec<Rational>,
}

impl QExpansion {
    pub fn new(weight: u32, coeffs: Vec<Rational>) -> Self {
        QExpansion { weight, coeffs }
    }

    pub fn from_integers(weight: u32, coeffs: &[Integer]) -> Self {
        QExpansion {
            weight,
            coeffs: coeffs.iter().map(|c| Rational::from(c.clone())).collect(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// `a(n)` for `1 <= n <= N`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &QExpansion) -> Result<QExpansion> {
        if self.weight != other.weight {
            return Err(Error::InvalidParameter(format!(
                "cannot add weights {} and {}",
                self.weight, other.weight
            )));
        }
        let n = self.truncation().min(other.truncation());
        Ok(QExpansion {
            weight: self.weight,
            coeffs: (0..n)
                .map(|i| Rational::from(&self.coeffs[i] + &other.coeffs[i]))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> QExpansion {
        QExpansion {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    /// Product of two cusp forms; weights add and the result is valid up to
    /// `q^{min(N_a, N_b) + 1}` because both factors start at `q^1`.
    pub fn mul(&self, other: &QExpansion) -> QExpansion {
        let n = self.truncation().min(other.truncation());
        let (a, da) = clear_denominators(&self.coeffs[..n]);
        let (b, db) = clear_denominators(&other.coeffs[..n]);
        // (Σ a_i q^{i+1})(Σ b_j q^{j+1}) = q^2 Σ c_m q^m
        let c = kronecker_mul(&a, &b, n);
        let denom = Integer::from(&da * &db);
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(Rational::new());
        for cm in c {
            coeffs.push(Rational::from((cm, denom.clone())));
        }
        QExpansion {
            weight: self.weight + other.weight,
            coeffs,
        }
    }
}

fn clear_denominators(v: &[Rational]) -> (Vec<Integer>, Integer) {
    let mut l = Integer::from(1);
    for r in v {
        l.lcm_mut(r.denom());
    }
    let ints = v
        .iter()
        .map(|r| Integer::from(r.numer() * Integer::from(&l / r.denom())))
        .collect();
    (ints, l)
}

/// Echelon basis of `S_k(SL_2(Z))` truncated at `q^N`.
///
/// Odd weights and weights with a trivial cusp space give an empty list.
pub fn miller_basis(k: u32, truncation: usize) -> Result<Vec<QExpansion>> {
    let rows = echelon_basis(k, truncation)?;
    Ok(rows
        .iter()
        .map(|r| QExpansion::from_integers(k, &r.coeffs()[1..]))
        .collect())
}

/// `T_m f` via `a_{T_m f}(n) = Σ_{d | (m, n)} d^{k-1} a_f(mn/d^2)` for
/// `n <= ⌊N/m⌋`.
pub fn hecke_apply(m: u64, f: &QExpansion) -> Result<QExpansion> {
    if m == 0 {
        return Err(Error::InvalidParameter("Hecke index must be >= 1".into()));
    }
    let n_max = f.truncation() as u64 / m;
    if n_max == 0 {
        return Err(Error::InsufficientTruncation {
            m,
            truncation: f.truncation(),
        });
    }
    let k = f.weight();
    let coeffs = (1..=n_max)
        .map(|n| {
            let g = gcd(m, n);
            let mut acc = Rational::new();
            for d in (1..=g).filter(|d| g % d == 0) {
                let idx = (m * n / (d * d)) as usize;
                let w = Integer::from(d).pow(k - 1);
                acc += Rational::from(f.coeff(idx) * w);
            }
            acc
        })
        .collect();
    Ok(QExpansion::new(k, coeffs))
}
