use rug::Float;
use serde::Serialize;

use super::table::{adjoint_table, rankin_table, DirichletCoeffTable};
use crate::error::{Error, Result};
use crate::modforms::Eigenform;
use crate::mp::{identity_threshold, MpComplex};

/// Worst ratio `|AB(n)| / sqrt(A(n) B(n))` over the checked indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub quantity: &'static str,
    pub n_max: u64,
    pub checked: usize,
    pub worst_ratio: f64,
    /// `worst_ratio - 1`, evaluated at working precision.
    pub excess: f64,
    pub worst_n: u64,
    pub threshold: f64,
    pub pass: bool,
}

/// `|Λ_{AB}(n)| <= sqrt(Λ_{AÃ}(n) Λ_{BB̃}(n))` over prime powers `n <= n_max`.
pub fn check_vonmangoldt_ineq(
    table_a: &DirichletCoeffTable,
    table_b: &DirichletCoeffTable,
    table_ab: &DirichletCoeffTable,
    n_max: u64,
) -> Result<InequalityReport> {
    let indices: Vec<u64> = table_ab
        .vonmangoldt_entries()
        .map(|(pk, _)| *pk)
        .filter(|&pk| pk <= n_max)
        .collect();
    let value = |t: &DirichletCoeffTable, n: u64| -> Result<MpComplex> {
        t.vonmangoldt(n).cloned().ok_or(Error::TableTooShort {
            needed: n,
            have: t.truncation(),
        })
    };
    worst_ratio("vonmangoldt", table_a, table_b, table_ab, n_max, &indices, value)
}

/// `|λ_{AB}(n)| <= sqrt(λ_{AÃ}(n) λ_{BB̃}(n))` for `1 <= n <= n_max`.
pub fn check_lambda_ineq(
    table_a: &DirichletCoeffTable,
    table_b: &DirichletCoeffTable,
    table_ab: &DirichletCoeffTable,
    n_max: u64,
) -> Result<InequalityReport> {
    let indices: Vec<u64> = (1..=n_max).collect();
    let value = |t: &DirichletCoeffTable, n: u64| t.lambda(n).cloned();
    worst_ratio("lambda", table_a, table_b, table_ab, n_max, &indices, value)
}

fn worst_ratio<V>(
    quantity: &'static str,
    table_a: &DirichletCoeffTable,
    table_b: &DirichletCoeffTable,
    table_ab: &DirichletCoeffTable,
    n_max: u64,
    indices: &[u64],
    value: V,
) -> Result<InequalityReport>
where
    V: Fn(&DirichletCoeffTable, u64) -> Result<MpComplex>,
{
    let prec = table_a.precision().min(table_b.precision()).min(table_ab.precision());
    let tol = identity_threshold(prec, 16);
    let mut worst = Float::with_val(prec, 0);
    let mut worst_n = 0;
    let mut checked = 0;
    for &n in indices {
        let a = self_dual_value(&value(table_a, n)?, n, tol)?;
        let b = self_dual_value(&value(table_b, n)?, n, tol)?;
        let num = value(table_ab, n)?.abs();
        let den = Float::with_val(prec, &a * &b).sqrt();
        if den <= tol {
            if num <= tol {
                continue;
            }
            worst = Float::with_val(prec, f64::INFINITY);
            worst_n = n;
            checked += 1;
            continue;
        }
        checked += 1;
        let ratio = Float::with_val(prec, &num / &den);
        if ratio > worst {
            worst = ratio;
            worst_n = n;
        }
    }
    let excess = Float::with_val(prec, &worst - 1u32);
    Ok(InequalityReport {
        quantity,
        n_max,
        checked,
        worst_ratio: worst.to_f64(),
        excess: excess.to_f64(),
        worst_n,
        threshold: tol,
        pass: excess <= tol,
    })
}

/// Real part of a `π × π̃` coefficient, rejecting negative or non-real values.
fn self_dual_value(z: &MpComplex, n: u64, tol: f64) -> Result<Float> {
    let scale = z.abs().to_f64().max(1.0);
    if z.re < -tol * scale || z.im.to_f64().abs() > tol * scale {
        return Err(Error::NegativeSelfDual {
            n,
            value: z.re.to_f64(),
        });
    }
    Ok(z.re.clone().max(&Float::with_val(z.prec(), 0)))
}

/// Coefficient-level check of `L(s, f × f) = ζ(s) L(s, ad f)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationReport {
    pub weight: u32,
    pub n_max: usize,
    pub max_deviation: f64,
    pub worst_n: u64,
    pub threshold: f64,
    pub pass: bool,
}

/// Compare `λ_{f×f}(n)` against `Σ_{d | n} λ_{ad f}(d)` for all `n <= n_max`.
pub fn verify_ff_factorization(f: &Eigenform, n_max: usize, precision: u32) -> Result<FactorizationReport> {
    let ff = rankin_table(f, f, n_max, precision)?;
    let ad = adjoint_table(f, n_max, precision)?;
    let mut conv = vec![MpComplex::zero(precision); n_max];
    for d in 1..=n_max {
        let v = ad.lambda(d as u64)?;
        let mut m = d;
        while m <= n_max {
            conv[m - 1] += v;
            m += d;
        }
    }
    let mut worst = (0.0f64, 1u64);
    for n in 1..=n_max {
        let dev = ff.lambda(n as u64)?.dist(&conv[n - 1]);
        if dev > worst.0 {
            worst = (dev, n as u64);
        }
    }
    let threshold = identity_threshold(precision, 16);
    Ok(FactorizationReport {
        weight: f.weight(),
        n_max,
        max_deviation: worst.0,
        worst_n: worst.1,
        threshold,
        pass: worst.0 < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::table::zeta_table;
    use crate::modforms::eigenform;

    #[test]
    fn equality_case_for_identical_forms() {
        let d = eigenform(12, 300).unwrap();
        let t = rankin_table(&d, &d, 300, 128).unwrap();
        let r = check_vonmangoldt_ineq(&t, &t, &t, 300).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.excess.abs() < 1e-30);
        let l = check_lambda_ineq(&t, &t, &t, 300).unwrap();
        assert!(l.pass && l.excess.abs() < 1e-30, "{l:?}");
    }

    #[test]
    fn zeta_against_zeta() {
        let z = zeta_table(200, 128).unwrap();
        let r = check_lambda_ineq(&z, &z, &z, 200).unwrap();
        assert_eq!(r.worst_ratio, 1.0);
        assert!(r.pass);
    }

    #[test]
    fn negative_self_dual_entry_is_rejected() {
        let d = eigenform(12, 50).unwrap();
        let std = crate::lseries::table::standard_table(&d, 50, 128).unwrap();
        let err = check_lambda_ineq(&std, &std, &std, 50).unwrap_err();
        assert!(err.to_string().contains("self-dual table must be nonnegative"));
    }

    #[test]
    fn factorization_small_range() {
        let d = eigenform(12, 200).unwrap();
        let r = verify_ff_factorization(&d, 200, 128).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
