use num_complex::Complex64;
use serde::Serialize;

use super::gamma::ln_gamma_factor;
use crate::arith::det_sum_map;
use crate::error::{Error, Result};
use crate::lseries::{adjoint_table, rankin_table, standard_table, zeta_table, DirichletCoeffTable, TableKind};
use crate::modforms::Eigenform;

/// Which completed L-function to build.
#[derive(Clone, Copy, Debug)]
pub enum LSource<'a> {
    Zeta,
    Standard(&'a Eigenform),
    Adjoint(&'a Eigenform),
    Rankin(&'a Eigenform, &'a Eigenform),
}

/// Completed L-function data at level one:
/// `Λ(s) = N^{s/2} Π_j Γ_R(s + μ_j) L(s)`, `Λ(s) = ε conj(Λ(1 - conj s))`.
#[derive(Clone, Debug)]
pub struct LFunctionData {
    pub kind: TableKind,
    table: DirichletCoeffTable,
    /// `coeffs[n - 1] = λ(n)` in double precision; imaginary parts dropped for
    /// self-dual data so conjugation symmetry holds bit for bit.
    coeffs: Vec<Complex64>,
    pub gamma_shifts: Vec<f64>,
    pub conductor: u64,
    pub root_number: Complex64,
    pub pole_order: u32,
    pub self_dual: bool,
}

pub fn make_lfunction_data(source: LSource<'_>, n_coeffs: usize, precision: u32) -> Result<LFunctionData> {
    let table = match source {
        LSource::Zeta => zeta_table(n_coeffs, precision)?,
        LSource::Standard(f) => standard_table(f, n_coeffs, precision)?,
        LSource::Adjoint(f) => adjoint_table(f, n_coeffs, precision)?,
        LSource::Rankin(f, g) => rankin_table(f, g, n_coeffs, precision)?,
    };
    LFunctionData::from_table(table)
}

impl LFunctionData {
    /// Attach the level-one archimedean data implied by the table kind.
    pub fn from_table(table: DirichletCoeffTable) -> Result<LFunctionData> {
        let kind = table.kind().clone();
        let (gamma_shifts, root_number, pole_order) = match &kind {
            TableKind::Zeta => (vec![0.0], 1.0, 1),
            TableKind::Standard { weight } => {
                let k = *weight as f64;
                // ε = i^k for level one
                let eps = if weight % 4 == 0 { 1.0 } else { -1.0 };
                (vec![(k - 1.0) / 2.0, (k + 1.0) / 2.0], eps, 0)
            }
            TableKind::Adjoint { weight } => {
                let k = *weight as f64;
                (vec![1.0, k - 1.0, k], 1.0, 0)
            }
            TableKind::Rankin {
                weight_f,
                weight_g,
                same_form,
            } => {
                let (a, b) = (*weight_f as f64, *weight_g as f64);
                let sum = (a + b) / 2.0;
                let diff = (a - b).abs() / 2.0;
                (vec![sum - 1.0, sum, diff, diff + 1.0], 1.0, u32::from(*same_form))
            }
            TableKind::Composite { label } => return Err(Error::UnsupportedKind(label.clone())),
        };
        let coeffs = table
            .lambdas()
            .iter()
            .map(|z| Complex64::new(z.re.to_f64(), 0.0))
            .collect();
        Ok(LFunctionData {
            kind,
            table,
            coeffs,
            gamma_shifts,
            conductor: 1,
            root_number: Complex64::new(root_number, 0.0),
            pole_order,
            self_dual: true,
        })
    }

    pub fn degree(&self) -> usize {
        self.gamma_shifts.len()
    }

    pub fn table(&self) -> &DirichletCoeffTable {
        &self.table
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// `log(N^{s/2} Π Γ_R(s + μ_j))`.
    pub fn ln_gamma_factor(&self, s: Complex64) -> Complex64 {
        0.5 * s * (self.conductor as f64).ln() + ln_gamma_factor(&self.gamma_shifts, s)
    }
}

/// `𝔠(t) = N Π_j (3 + |it + μ_j|)`.
pub fn analytic_conductor(data: &LFunctionData, t: f64) -> f64 {
    data.gamma_shifts
        .iter()
        .map(|&mu| 3.0 + Complex64::new(mu, t).norm())
        .product::<f64>()
        * data.conductor as f64
}

/// Partial Dirichlet sum with a rigorous tail bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineValue {
    pub s: [f64; 2],
    pub value_re: f64,
    pub value_im: f64,
    pub tail_bound: f64,
}

impl LineValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }
}

/// `Σ_{n<=N} λ(n) n^{-s}` for `Re s > 1`.
///
/// The tail uses `|λ(n)| <= τ_d(n)` (Ramanujan bound at level one) and
/// `Σ_{n>N} τ_d(n) n^{-σ} <= N^{σ'-σ} ζ(σ')^d <= N^{σ'-σ} (σ'/(σ'-1))^d`
/// minimized over `1 < σ' < σ`.
pub fn truncated_l(data: &LFunctionData, s: Complex64, n: usize) -> Result<LineValue> {
    if s.re <= 1.0 {
        return Err(Error::OutsideAbsoluteConvergence { re: s.re, bound: 1.0 });
    }
    if n > data.truncation() {
        return Err(Error::TableTooShort {
            needed: n as u64,
            have: data.truncation(),
        });
    }
    let c = data.coeffs();
    let value = det_sum_map(n, |i| {
        let m = (i + 1) as f64;
        c[i] * (-s * m.ln()).exp()
    });
    Ok(LineValue {
        s: [s.re, s.im],
        value_re: value.re,
        value_im: value.im,
        tail_bound: tail_bound(n, s.re, data.degree()),
    })
}

fn tail_bound(n: usize, sigma: f64, degree: usize) -> f64 {
    let ln_n = (n as f64).ln();
    let f = |sp: f64| (sp - sigma) * ln_n + degree as f64 * (sp / (sp - 1.0)).ln();
    // f is convex in σ' on (1, σ): ternary search
    let (mut lo, mut hi) = (1.0 + 1e-12, sigma);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let best = f(0.5 * (lo + hi)).min(f(sigma - 1e-12));
    best.exp()
}

/// `Λ(s) = N^{s/2} Π Γ_R(s + μ_j) · Σ_{n<=N} λ(n) n^{-s}` for `Re s > 1`.
pub fn completed_l(data: &LFunctionData, s: Complex64, n: usize) -> Result<Complex64> {
    let l = truncated_l(data, s, n)?;
    Ok(l.value() * data.ln_gamma_factor(s).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eigenform;

    #[test]
    fn shifts_and_poles() {
        let d = eigenform(12, 50).unwrap();
        let g = eigenform(16, 50).unwrap();
        let ad = make_lfunction_data(LSource::Adjoint(&d), 50, 128).unwrap();
        assert_eq!(ad.gamma_shifts, vec![1.0, 11.0, 12.0]);
        assert_eq!((ad.degree(), ad.pole_order, ad.conductor), (3, 0, 1));
        let z = make_lfunction_data(LSource::Zeta, 10, 64).unwrap();
        assert_eq!((z.degree(), z.pole_order), (1, 1));
        let fg = make_lfunction_data(LSource::Rankin(&d, &g), 50, 128).unwrap();
        assert_eq!(fg.pole_order, 0);
        let ff = make_lfunction_data(LSource::Rankin(&d, &d), 50, 128).unwrap();
        assert_eq!(ff.pole_order, 1);
        // f × f splits as ζ · ad f at the archimedean place too
        let mut shifts = ff.gamma_shifts.clone();
        shifts.sort_by(f64::total_cmp);
        assert_eq!(shifts, vec![0.0, 1.0, 11.0, 12.0]);
    }

    #[test]
    fn composite_kind_is_unsupported() {
        let t = DirichletCoeffTable::from_values(
            TableKind::Composite { label: "x".into() },
            64,
            vec![crate::mp::MpComplex::one(64)],
            Default::default(),
        );
        assert!(matches!(LFunctionData::from_table(t), Err(Error::UnsupportedKind(_))));
    }

    #[test]
    fn conductors() {
        let d = eigenform(12, 10).unwrap();
        let z = make_lfunction_data(LSource::Zeta, 10, 64).unwrap();
        assert_eq!(analytic_conductor(&z, 0.0), 3.0);
        let ad = make_lfunction_data(LSource::Adjoint(&d), 10, 64).unwrap();
        assert_eq!(analytic_conductor(&ad, 0.0), 840.0);
        let mut prev = 0.0;
        for t in [0.0, 0.5, 1.0, 5.0, 50.0] {
            let c = analytic_conductor(&ad, -t);
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn outside_absolute_convergence() {
        let z = make_lfunction_data(LSource::Zeta, 10, 64).unwrap();
        let err = truncated_l(&z, Complex64::new(1.0, 0.0), 10).unwrap_err();
        assert!(err.to_string().contains("outside absolute convergence"));
    }

    #[test]
    fn large_real_part_tends_to_one() {
        let d = eigenform(12, 100).unwrap();
        let ad = make_lfunction_data(LSource::Adjoint(&d), 100, 128).unwrap();
        let v = truncated_l(&ad, Complex64::new(60.0, 3.0), 100).unwrap();
        assert!((v.value() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn conjugation_symmetry_is_exact() {
        let d = eigenform(12, 400).unwrap();
        let ff = make_lfunction_data(LSource::Rankin(&d, &d), 400, 128).unwrap();
        for (re, im) in [(1.2, 3.7), (2.0, -11.0), (1.05, 0.25)] {
            let a = truncated_l(&ff, Complex64::new(re, im), 400).unwrap().value();
            let b = truncated_l(&ff, Complex64::new(re, -im), 400).unwrap().value();
            assert_eq!(a, b.conj());
            let ca = completed_l(&ff, Complex64::new(re, im), 400).unwrap();
            let cb = completed_l(&ff, Complex64::new(re, -im), 400).unwrap();
            assert!((ca - cb.conj()).norm() <= 1e-14 * ca.norm());
        }
    }
}
