use rug::ops::Pow;
use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use super::echelon_basis;
use crate::arith::{divisor_count, FactorTable};
use crate::error::{Error, Result};
use crate::mp::MpComplex;

/// Weights with `dim S_k = 1`, where the single basis vector is the eigenform.
pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// Normalized level-one Hecke eigenform with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenform {
    weight: u32,
    /// `a[n] = a_f(n)` for `0 <= n <= N`; `a[0] = 0`.
    a: Vec<Integer>,
}

/// The unique normalized eigenform of weight `k`, coefficients up to `q^N`.
///
/// The table is the product `Δ · E_{k-12}` carried to `q^N`; Kronecker
/// multiplication keeps this quasi-linear in `N`, and every prime `p <= N`
/// needs its own series coefficient anyway.
pub fn eigenform(k: u32, truncation: usize) -> Result<Eigenform> {
    if !SUPPORTED_WEIGHTS.contains(&k) {
        return Err(Error::UnsupportedWeight(k));
    }
    if truncation == 0 {
        return Err(Error::InvalidParameter("truncation must be >= 1".into()));
    }
    let mut rows = echelon_basis(k, truncation)?;
    let a = rows.remove(0).into_coeffs();
    debug_assert_eq!(a[1], 1);
    Ok(Eigenform { weight: k, a })
}

impl Eigenform {
    /// Builds a form from a raw coefficient table `a(1..=N)`; `a(1)` must be 1.
    pub fn from_coefficients(weight: u32, coeffs: Vec<Integer>) -> Result<Eigenform> {
        if coeffs.first().map(|c| *c != 1).unwrap_or(true) {
            return Err(Error::Malformed("a(1) must equal 1".into()));
        }
        let mut a = Vec::with_capacity(coeffs.len() + 1);
        a.push(Integer::new());
        a.extend(coeffs);
        Ok(Eigenform { weight, a })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u32 {
        1
    }

    pub fn truncation(&self) -> usize {
        self.a.len() - 1
    }

    /// `a_f(n)` for `1 <= n <= N`.
    pub fn coeff(&self, n: u64) -> Result<&Integer> {
        if n == 0 || n as usize > self.truncation() {
            return Err(Error::OutOfTable {
                n,
                truncation: self.truncation(),
            });
        }
        Ok(&self.a[n as usize])
    }

    /// `a(1..=N)`.
    pub fn coefficients(&self) -> &[Integer] {
        &self.a[1..]
    }

    pub fn to_json(&self) -> EigenformJson {
        EigenformJson {
            weight: self.weight,
            truncation: self.truncation(),
            coefficients: self
                .coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as u64 + 1, c.to_string()))
                .collect(),
        }
    }

    pub fn from_json(doc: &EigenformJson) -> Result<Eigenform> {
        if doc.coefficients.len() != doc.truncation {
            return Err(Error::Malformed(format!(
                "{} coefficients for truncation {}",
                doc.coefficients.len(),
                doc.truncation
            )));
        }
        let mut coeffs = Vec::with_capacity(doc.truncation);
        for (i, (n, s)) in doc.coefficients.iter().enumerate() {
            if *n != i as u64 + 1 {
                return Err(Error::Malformed(format!("index {n} out of order")));
            }
            let c = Integer::from_str_radix(s, 10).map_err(|e| Error::Malformed(format!("a({n}) = {s:?}: {e}")))?;
            coeffs.push(c);
        }
        Eigenform::from_coefficients(doc.weight, coeffs)
    }

    /// Exact check of multiplicativity, the prime-power recursion and the
    /// Deligne bound for every index up to `n_max`.
    pub fn check_hecke_laws(&self, n_max: usize) -> Result<HeckeLawReport> {
        if n_max > self.truncation() {
            return Err(Error::OutOfTable {
                n: n_max as u64,
                truncation: self.truncation(),
            });
        }
        let table = FactorTable::new(n_max.max(1));
        let mut report = HeckeLawReport {
            weight: self.weight,
            n_max,
            normalized: self.a.get(1).map(|c| *c == 1).unwrap_or(false),
            multiplicative_pairs: 0,
            multiplicativity_failure: None,
            recursion_checks: 0,
            recursion_failure: None,
            deligne_failure: None,
        };
        let a = &self.a;

        for m in 2..=n_max {
            for n in (m + 1)..=(n_max / m) {
                if crate::arith::gcd(m as u64, n as u64) != 1 {
                    continue;
                }
                report.multiplicative_pairs += 1;
                if report.multiplicativity_failure.is_none() && a[m * n] != Integer::from(&a[m] * &a[n]) {
                    report.multiplicativity_failure = Some((m as u64, n as u64));
                }
            }
        }

        let pk1 = |p: u64| Integer::from(p).pow(self.weight - 1);
        for p in (2..=n_max as u64).filter(|&p| table.is_prime(p)) {
            let w = pk1(p);
            // a(p^{j+1}) = a(p) a(p^j) - p^{k-1} a(p^{j-1})
            let (mut prev, mut cur) = (1u64, p);
            while let Some(next) = cur.checked_mul(p).filter(|&x| x as usize <= n_max) {
                report.recursion_checks += 1;
                let rhs = Integer::from(&a[p as usize] * &a[cur as usize]) - Integer::from(&w * &a[prev as usize]);
                if report.recursion_failure.is_none() && a[next as usize] != rhs {
                    report.recursion_failure = Some(next);
                }
                (prev, cur) = (cur, next);
            }
        }

        for n in 1..=n_max as u64 {
            let tau = Integer::from(divisor_count(n));
            let bound = Integer::from(tau.square_ref()) * Integer::from(n).pow(self.weight - 1);
            if Integer::from(a[n as usize].square_ref()) > bound {
                report.deligne_failure = Some(n);
                break;
            }
        }
        Ok(report)
    }
}

/// Serialized eigenform: exact coefficients as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenformJson {
    pub weight: u32,
    pub truncation: usize,
    pub coefficients: Vec<(u64, String)>,
}

/// Outcome of [`Eigenform::check_hecke_laws`]; `None` failure fields mean the
/// law held at every index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeLawReport {
    pub weight: u32,
    pub n_max: usize,
    pub normalized: bool,
    pub multiplicative_pairs: u64,
    pub multiplicativity_failure: Option<(u64, u64)>,
    pub recursion_checks: u64,
    pub recursion_failure: Option<u64>,
    pub deligne_failure: Option<u64>,
}

impl HeckeLawReport {
    pub fn pass(&self) -> bool {
        self.normalized
            && self.multiplicativity_failure.is_none()
            && self.recursion_failure.is_none()
            && self.deligne_failure.is_none()
    }
}

/// `λ_f(n) = a_f(n) / n^{(k-1)/2}`, correctly rounded to `precision` bits.
pub fn lambda(f: &Eigenform, n: u64, precision: u32) -> Result<Float> {
    let a = f.coeff(n)?;
    Ok(normalize(a, n, f.weight(), precision))
}

/// Correctly rounded `a / n^{(k-1)/2}`: an integer square root of the scaled
/// square carries `precision + 2` bits, and a sticky bit records inexactness.
fn normalize(a: &Integer, n: u64, k: u32, precision: u32) -> Float {
    if *a == 0 {
        return Float::with_val(precision, 0);
    }
    let num = Integer::from(a.square_ref());
    let den = Integer::from(n).pow(k - 1);
    let spare = (num.significant_bits() as i64 - den.significant_bits() as i64) / 2;
    let e = (precision as i64 + 4 - spare).max(0) as u32;
    let scaled = num << (2 * e);
    let (quot, rem) = scaled.div_rem(den);
    let mut root = Integer::from(quot.sqrt_ref());
    let exact = rem == 0 && Integer::from(root.square_ref()) == quot;
    root <<= 1;
    if !exact {
        root += 1;
    }
    let mut x = Float::with_val(precision, &root);
    x >>= e + 1;
    if *a < 0 {
        -x
    } else {
        x
    }
}

/// Satake parameter `α_p` and its inverse `conj(α_p)` at one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeLocalData {
    pub p: u64,
    pub alpha: MpComplex,
    pub precision: u32,
}

impl SatakeLocalData {
    pub fn alpha_inv(&self) -> MpComplex {
        self.alpha.recip()
    }

    /// `|α| - 1` in absolute value.
    pub fn modulus_defect(&self) -> f64 {
        (self.alpha.abs() - 1u32).to_f64().abs()
    }

    /// `α + α^{-1}`.
    pub fn trace(&self) -> MpComplex {
        &self.alpha + &self.alpha_inv()
    }
}

/// Canonical Satake root of `x^2 - λ_f(p) x + 1` for the eigenform.
pub fn satake(f: &Eigenform, p: u64, precision: u32) -> Result<SatakeLocalData> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let lam = lambda(f, p, precision)?;
    Ok(satake_from_trace(p, &lam))
}

/// Root of `x^2 - t x + 1` with `Im α >= 0`; real roots choose `|α| >= 1`.
pub fn satake_from_trace(p: u64, trace: &Float) -> SatakeLocalData {
    let prec = trace.prec();
    let half = Float::with_val(prec, trace / 2u32);
    // disc/4 = t^2/4 - 1
    let quarter_disc = Float::with_val(prec, half.square_ref()) - 1u32;
    let alpha = if quarter_disc <= 0 {
        let im = Float::with_val(prec, -quarter_disc).sqrt();
        MpComplex::new(half, im)
    } else {
        let r = quarter_disc.sqrt();
        let re = if half >= 0 {
            Float::with_val(prec, &half + &r)
        } else {
            Float::with_val(prec, &half - &r)
        };
        MpComplex::from_real(re)
    };
    SatakeLocalData {
        p,
        alpha,
        precision: prec,
    }
}
