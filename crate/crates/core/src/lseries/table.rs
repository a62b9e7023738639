use std::collections::BTreeMap;

use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::local::{adjoint_from_alpha, local_zeta, rankin_from_alphas, standard_from_alpha};
use super::LocalFactorSeries;
use crate::arith::{gcd, primes_up_to, FactorTable};
use crate::error::{Error, Result};
use crate::modforms::{satake, Eigenform};
use crate::mp::{decimal_digits_for, MpComplex};

/// Which L-function a coefficient table belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TableKind {
    Zeta,
    Standard {
        weight: u32,
    },
    Adjoint {
        weight: u32,
    },
    Rankin {
        weight_f: u32,
        weight_g: u32,
        same_form: bool,
    },
    Composite {
        label: String,
    },
}

impl TableKind {
    pub fn label(&self) -> String {
        match self {
            TableKind::Zeta => "zeta".into(),
            TableKind::Standard { weight } => format!("standard(k={weight})"),
            TableKind::Adjoint { weight } => format!("adjoint(k={weight})"),
            TableKind::Rankin { weight_f, weight_g, .. } => format!("rankin(k={weight_f},k={weight_g})"),
            TableKind::Composite { label } => label.clone(),
        }
    }

    /// Whether the coefficients are those of some `π × π̃` (hence nonnegative).
    pub fn is_self_dual_square(&self) -> bool {
        matches!(self, TableKind::Zeta | TableKind::Rankin { same_form: true, .. })
    }
}

/// Dirichlet coefficients `λ(n)`, `n <= N`, and `Λ(p^k)` for `p^k <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCoeffTable {
    kind: TableKind,
    precision: u32,
    /// `lambda[n - 1] = λ(n)`
    lambda: Vec<MpComplex>,
    vonmangoldt: BTreeMap<u64, MpComplex>,
}

/// Assemble a table multiplicatively from local factors at every `p <= N`.
///
/// `provider(p, order)` must return the local series at `p` to at least
/// `order = ⌊log_p N⌋`. Local factors are computed in parallel; every `λ(n)`
/// is an independent product, so the table does not depend on scheduling.
pub fn global_coeffs<F>(kind: TableKind, n_max: usize, precision: u32, provider: F) -> Result<DirichletCoeffTable>
where
    F: Fn(u64, usize) -> Result<LocalFactorSeries> + Sync,
{
    if n_max == 0 {
        return Err(Error::InvalidParameter("truncation must be >= 1".into()));
    }
    let primes = primes_up_to(n_max as u64);
    let locals: Vec<LocalFactorSeries> = primes
        .par_iter()
        .map(|&p| provider(p, max_exponent(p, n_max as u64) as usize))
        .collect::<Result<_>>()?;
    let index: BTreeMap<u64, usize> = primes.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let table = FactorTable::new(n_max);

    let lambda: Vec<MpComplex> = (1..=n_max as u64)
        .into_par_iter()
        .map(|n| {
            let mut acc = MpComplex::one(precision);
            for (p, e) in table.factorize(n) {
                acc *= locals[index[&p]].coeff(e as usize);
            }
            acc
        })
        .collect();

    let mut vonmangoldt = BTreeMap::new();
    for (p, local) in primes.iter().zip(&locals) {
        let logp = Float::with_val(precision, *p).ln();
        let a = local.log_derivative_coeffs();
        let mut pk = *p;
        for ak in a.iter().take(max_exponent(*p, n_max as u64) as usize) {
            vonmangoldt.insert(pk, ak.scale(&logp));
            pk = pk.saturating_mul(*p);
        }
    }
    Ok(DirichletCoeffTable {
        kind,
        precision,
        lambda,
        vonmangoldt,
    })
}

fn max_exponent(p: u64, n: u64) -> u32 {
    let mut e = 0;
    let mut x = 1u64;
    while x.saturating_mul(p) <= n {
        x *= p;
        e += 1;
    }
    e
}

pub fn zeta_table(n_max: usize, precision: u32) -> Result<DirichletCoeffTable> {
    global_coeffs(TableKind::Zeta, n_max, precision, |p, order| {
        Ok(local_zeta(p, order, precision))
    })
}

pub fn standard_table(f: &Eigenform, n_max: usize, precision: u32) -> Result<DirichletCoeffTable> {
    global_coeffs(
        TableKind::Standard { weight: f.weight() },
        n_max,
        precision,
        |p, order| Ok(standard_from_alpha(p, &satake(f, p, precision)?.alpha, order)),
    )
}

pub fn adjoint_table(f: &Eigenform, n_max: usize, precision: u32) -> Result<DirichletCoeffTable> {
    global_coeffs(
        TableKind::Adjoint { weight: f.weight() },
        n_max,
        precision,
        |p, order| Ok(adjoint_from_alpha(p, &satake(f, p, precision)?.alpha, order)),
    )
}

pub fn rankin_table(f: &Eigenform, g: &Eigenform, n_max: usize, precision: u32) -> Result<DirichletCoeffTable> {
    let kind = TableKind::Rankin {
        weight_f: f.weight(),
        weight_g: g.weight(),
        same_form: f == g,
    };
    global_coeffs(kind, n_max, precision, |p, order| {
        let a = satake(f, p, precision)?;
        let b = satake(g, p, precision)?;
        Ok(rankin_from_alphas(p, &a.alpha, &b.alpha, order))
    })
}

impl DirichletCoeffTable {
    /// Table from explicit values; `lambda[0]` is `λ(1)`.
    pub fn from_values(
        kind: TableKind,
        precision: u32,
        lambda: Vec<MpComplex>,
        vonmangoldt: BTreeMap<u64, MpComplex>,
    ) -> Self {
        DirichletCoeffTable {
            kind,
            precision,
            lambda,
            vonmangoldt,
        }
    }

    pub fn kind(&self) -> &TableKind {
        &self.kind
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn truncation(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self, n: u64) -> Result<&MpComplex> {
        if n == 0 || n as usize > self.lambda.len() {
            return Err(Error::OutOfTable {
                n,
                truncation: self.truncation(),
            });
        }
        Ok(&self.lambda[n as usize - 1])
    }

    pub fn lambdas(&self) -> &[MpComplex] {
        &self.lambda
    }

    /// `Λ(p^k)`; `None` off prime powers.
    pub fn vonmangoldt(&self, pk: u64) -> Option<&MpComplex> {
        self.vonmangoldt.get(&pk)
    }

    pub fn vonmangoldt_entries(&self) -> impl Iterator<Item = (&u64, &MpComplex)> {
        self.vonmangoldt.iter()
    }

    /// `λ(n)` rounded to double precision, `n = 1..=N`.
    pub fn to_c64(&self) -> Vec<num_complex::Complex64> {
        self.lambda.iter().map(MpComplex::to_c64).collect()
    }

    /// `max |λ(mn) - λ(m)λ(n)|` over coprime `m, n >= 2` with `mn <= N`.
    pub fn multiplicativity_defect(&self) -> f64 {
        let n_max = self.lambda.len();
        (2..=n_max)
            .into_par_iter()
            .map(|m| {
                let mut worst = 0.0f64;
                for n in (m + 1)..=(n_max / m) {
                    if gcd(m as u64, n as u64) == 1 {
                        let prod = &self.lambda[m - 1] * &self.lambda[n - 1];
                        worst = worst.max(prod.dist(&self.lambda[m * n - 1]));
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    pub fn to_json(&self) -> DirichletCoeffTableJson {
        let digits = decimal_digits_for(self.precision);
        let row = |n: u64, z: &MpComplex| {
            let (re, im) = z.to_decimal_pair(digits);
            (n, re, im)
        };
        DirichletCoeffTableJson {
            kind: self.kind.label(),
            precision: self.precision,
            truncation: self.truncation(),
            lambda: self
                .lambda
                .iter()
                .enumerate()
                .map(|(i, z)| row(i as u64 + 1, z))
                .collect(),
            vonmangoldt: self.vonmangoldt.iter().map(|(pk, z)| row(*pk, z)).collect(),
        }
    }
}

/// Serialized coefficient table with decimal-string entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletCoeffTableJson {
    pub kind: String,
    pub precision: u32,
    pub truncation: usize,
    pub lambda: Vec<(u64, String, String)>,
    pub vonmangoldt: Vec<(u64, String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::{eigenform, lambda};

    #[test]
    fn zeta_table_is_all_ones() {
        let z = zeta_table(500, 128).unwrap();
        for x in z.lambdas() {
            assert_eq!(*x, MpComplex::one(128));
        }
        let log2 = Float::with_val(128, 2).ln();
        assert_eq!(z.vonmangoldt(8).unwrap().re, log2);
        assert!(z.vonmangoldt(6).is_none());
    }

    #[test]
    fn standard_table_reproduces_eigenvalues() {
        let d = eigenform(12, 300).unwrap();
        let t = standard_table(&d, 300, 128).unwrap();
        for n in 1..=300u64 {
            let l = lambda(&d, n, 128).unwrap();
            assert!(t.lambda(n).unwrap().dist(&MpComplex::from_real(l)) < 1e-30, "n = {n}");
        }
        assert!(t.multiplicativity_defect() < 1e-30);
    }

    #[test]
    fn rankin_and_adjoint_low_terms() {
        let d = eigenform(12, 100).unwrap();
        let r = rankin_table(&d, &d, 100, 128).unwrap();
        let l2 = lambda(&d, 2, 128).unwrap();
        let l2sq = MpComplex::from_real(Float::with_val(128, l2.square_ref()));
        assert!(r.lambda(2).unwrap().dist(&l2sq) < 1e-30);
        assert!(r.kind().is_self_dual_square());

        let ad = adjoint_table(&d, 100, 128).unwrap();
        let l4 = lambda(&d, 4, 128).unwrap();
        let log2 = Float::with_val(128, 2).ln();
        let want = MpComplex::from_real(Float::with_val(128, &l4 * &log2));
        assert!(ad.vonmangoldt(2).unwrap().dist(&want) < 1e-30);
    }

    #[test]
    fn json_shape() {
        let z = zeta_table(4, 64).unwrap();
        let v = serde_json::to_value(z.to_json()).unwrap();
        assert_eq!(v["kind"], "zeta");
        assert_eq!(v["truncation"], 4);
        assert_eq!(v["lambda"].as_array().unwrap().len(), 4);
        assert_eq!(v["vonmangoldt"].as_array().unwrap().len(), 3);
    }
}
