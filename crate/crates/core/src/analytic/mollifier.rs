use num_complex::Complex64;
use serde::Serialize;

use super::data::{truncated_l, LFunctionData};
use crate::arith::det_sum_map;
use crate::error::{Error, Result};
use crate::lseries::DirichletCoeffTable;

/// `S(x) = Σ_{n<=x} λ(n)`, or `S̃(x) = Σ_{n<=x} λ(n) log n` when `weighted`.
pub fn partial_sum(table: &DirichletCoeffTable, x: f64, weighted: bool) -> Result<Complex64> {
    let coeffs = table.to_c64();
    partial_sum_c64(&coeffs, x, weighted)
}

fn partial_sum_c64(coeffs: &[Complex64], x: f64, weighted: bool) -> Result<Complex64> {
    if !(x >= 1.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let n = x.floor();
    if n > coeffs.len() as f64 {
        return Err(Error::TableTooShort {
            needed: n as u64,
            have: coeffs.len(),
        });
    }
    Ok(det_sum_map(n as usize, |i| {
        if weighted {
            coeffs[i] * ((i + 1) as f64).ln()
        } else {
            coeffs[i]
        }
    }))
}

/// Mollifier exponents `l`, base `w`, shifts `τ` and the anchor `X`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MollifierConfig {
    pub l: Vec<u32>,
    pub w: f64,
    pub tau: Vec<f64>,
    pub x_anchor: f64,
}

/// `T = exp((log log X)^2)`.
pub fn height_bound(x_anchor: f64) -> f64 {
    x_anchor.ln().ln().powi(2).exp()
}

impl MollifierConfig {
    pub fn r(&self) -> usize {
        self.l.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidParameter(what));
        if self.l.is_empty() || self.l.len() != self.tau.len() {
            return bad(format!(
                "need R >= 1 with |l| = |tau|, got {} and {}",
                self.l.len(),
                self.tau.len()
            ));
        }
        if !(self.w > 1.0) {
            return bad(format!("w must exceed 1, got {}", self.w));
        }
        if !(self.x_anchor > std::f64::consts::E) {
            return bad(format!("X must exceed e, got {}", self.x_anchor));
        }
        let t = height_bound(self.x_anchor);
        if let Some(tau) = self.tau.iter().find(|t_j| !(t_j.abs() <= t)) {
            return bad(format!("|tau| = {} exceeds T = {t}", tau.abs()));
        }
        Ok(())
    }
}

/// `O_l(x, w) = Σ_{j<=l} (-1)^{|j|} binom(l, j) w^{Σ j_i (1 + iτ_i)} S(x / w^{|j|})`,
/// or `Õ_l` built from `S̃` when `weighted`.
pub fn mollified_sum(table: &DirichletCoeffTable, x: f64, cfg: &MollifierConfig, weighted: bool) -> Result<Complex64> {
    cfg.validate()?;
    let coeffs = table.to_c64();
    mollified_sum_c64(&coeffs, x, cfg, weighted)
}

fn mollified_sum_c64(coeffs: &[Complex64], x: f64, cfg: &MollifierConfig, weighted: bool) -> Result<Complex64> {
    let ln_w = cfg.w.ln();
    let mut j = vec![0u32; cfg.r()];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let size: u32 = j.iter().sum();
        let mut weight = Complex64::new(if size % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
        let mut exponent = Complex64::new(0.0, 0.0);
        for i in 0..cfg.r() {
            weight *= binomial(cfg.l[i], j[i]);
            exponent += j[i] as f64 * Complex64::new(1.0, cfg.tau[i]);
        }
        let s = partial_sum_c64(coeffs, x / cfg.w.powi(size as i32), weighted)?;
        total += weight * (exponent * ln_w).exp() * s;
        // odometer over 0 <= j <= l
        let mut i = 0;
        while i < j.len() && j[i] == cfg.l[i] {
            j[i] = 0;
            i += 1;
        }
        if i == j.len() {
            return Ok(total);
        }
        j[i] += 1;
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `L(s) Π_j (1 - w^{1 + iτ_j - s})^{l_j}` with `L` truncated to `n` terms.
pub fn mollified_lfunction(data: &LFunctionData, s: Complex64, cfg: &MollifierConfig, n: usize) -> Result<Complex64> {
    cfg.validate()?;
    let l = truncated_l(data, s, n)?.value();
    Ok(l * mollifier_product(s, cfg))
}

/// `Π_j (1 - w^{1 + iτ_j - s})^{l_j}`.
pub fn mollifier_product(s: Complex64, cfg: &MollifierConfig) -> Complex64 {
    let ln_w = cfg.w.ln();
    cfg.l
        .iter()
        .zip(&cfg.tau)
        .fold(Complex64::new(1.0, 0.0), |acc, (&l, &tau)| {
            acc * (1.0 - ((Complex64::new(1.0, tau) - s) * ln_w).exp()).powu(l)
        })
}

/// Output of the successive-maxima procedure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximaReport {
    pub x_anchor: f64,
    pub sigma: f64,
    pub t_bound: f64,
    pub radius: f64,
    pub step: f64,
    pub tau: Vec<f64>,
    /// `|L(σ + iτ_j)|`
    pub values: Vec<f64>,
    pub separation_ok: bool,
}

/// Grid step of the successive-maxima scan.
pub const MAXIMA_STEP: f64 = 0.01;

/// Pick `τ_1, ..., τ_R`: `τ_j` maximizes `|L(1 + 1/log X + it)|` over `S_j`,
/// where `S_1 = [-T, T]` and `S_{j+1}` removes `(τ_j - r, τ_j + r)` from `S_j`,
/// `r = (log X)^{-1/R}`. Each `τ_j` is a grid maximizer refined by golden
/// section inside its feasible interval.
pub fn successive_maxima(data: &LFunctionData, x_anchor: f64, r_count: usize) -> Result<MaximaReport> {
    if r_count == 0 {
        return Err(Error::InvalidParameter("R must be at least 1".into()));
    }
    if !(x_anchor > std::f64::consts::E) {
        return Err(Error::InvalidParameter(format!("X must exceed e, got {x_anchor}")));
    }
    let log_x = x_anchor.ln();
    let sigma = 1.0 + 1.0 / log_x;
    let t_bound = height_bound(x_anchor);
    if !(t_bound / MAXIMA_STEP < 1e7) {
        return Err(Error::InvalidParameter(format!("T = {t_bound} is beyond grid scale")));
    }
    let radius = log_x.powf(-1.0 / r_count as f64);
    let n = data.truncation();
    let abs_l = |t: f64| truncated_l(data, Complex64::new(sigma, t), n).map(|v| v.value().norm());

    let half = (t_bound / MAXIMA_STEP).floor() as i64;
    let grid: Vec<f64> = (-half..=half).map(|i| i as f64 * MAXIMA_STEP).collect();
    let grid_values = grid.iter().map(|&t| abs_l(t)).collect::<Result<Vec<f64>>>()?;

    let mut feasible = vec![(-t_bound, t_bound)];
    let mut tau = Vec::with_capacity(r_count);
    let mut values = Vec::with_capacity(r_count);
    for j in 0..r_count {
        if feasible.is_empty() {
            return Err(Error::EmptyFeasibleSet(j + 1));
        }
        // candidates: grid points inside S_j plus every interval endpoint
        let mut best: Option<(f64, f64, (f64, f64))> = None;
        let mut consider = |t: f64, v: f64, iv: (f64, f64)| {
            if best.is_none_or(|b| v > b.0) {
                best = Some((v, t, iv));
            }
        };
        for &iv in &feasible {
            consider(iv.0, abs_l(iv.0)?, iv);
            consider(iv.1, abs_l(iv.1)?, iv);
        }
        for (&t, &v) in grid.iter().zip(&grid_values) {
            if let Some(&iv) = feasible.iter().find(|iv| iv.0 <= t && t <= iv.1) {
                consider(t, v, iv);
            }
        }
        let (v0, t0, iv) = best.expect("feasible set is nonempty");
        let (t1, v1) = golden_max(&abs_l, (t0 - MAXIMA_STEP).max(iv.0), (t0 + MAXIMA_STEP).min(iv.1))?;
        let (t_j, v_j) = if v1 > v0 { (t1, v1) } else { (t0, v0) };
        tau.push(t_j);
        values.push(v_j);
        feasible = remove_interval(&feasible, t_j, radius);
    }
    let separation_ok = tau
        .iter()
        .enumerate()
        .all(|(a, ta)| tau[a + 1..].iter().all(|tb| (ta - tb).abs() >= radius));
    Ok(MaximaReport {
        x_anchor,
        sigma,
        t_bound,
        radius,
        step: MAXIMA_STEP,
        tau,
        values,
        separation_ok,
    })
}

fn golden_max<F>(f: &F, mut a: f64, mut b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc > fd { (c, fc) } else { (d, fd) })
}

/// Remove the open interval `(t - r, t + r)`. New endpoints are nudged outward
/// until `|endpoint - t| >= r` holds in floating point.
fn remove_interval(feasible: &[(f64, f64)], t: f64, r: f64) -> Vec<(f64, f64)> {
    let mut lo = t - r;
    while t - lo < r {
        lo = lo.next_down();
    }
    let mut hi = t + r;
    while hi - t < r {
        hi = hi.next_up();
    }
    let mut out = Vec::with_capacity(feasible.len() + 1);
    for &(a, b) in feasible {
        if b <= lo || a >= hi {
            out.push((a, b));
            continue;
        }
        if a <= lo {
            out.push((a, lo));
        }
        if b >= hi {
            out.push((hi, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::zeta_table;

    fn cfg(l: Vec<u32>, tau: Vec<f64>) -> MollifierConfig {
        MollifierConfig {
            l,
            w: 2.0,
            tau,
            x_anchor: 1e6,
        }
    }

    #[test]
    fn zeta_partial_sums_count_integers() {
        let z = zeta_table(500, 64).unwrap();
        assert_eq!(partial_sum(&z, 0.5, false).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(partial_sum(&z, 1.0, false).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(partial_sum(&z, 317.9, false).unwrap(), Complex64::new(317.0, 0.0));
        assert!(matches!(
            partial_sum(&z, 501.0, false),
            Err(Error::TableTooShort { .. })
        ));
        // S̃(x) = log ⌊x⌋!
        let lf: f64 = (2..=10).map(|n| (n as f64).ln()).sum();
        assert!((partial_sum(&z, 10.5, true).unwrap().re - lf).abs() < 1e-13);
    }

    #[test]
    fn single_factor_definition() {
        let z = zeta_table(500, 64).unwrap();
        let c = cfg(vec![1], vec![0.7]);
        let got = mollified_sum(&z, 400.0, &c, false).unwrap();
        let want = 400.0 - (Complex64::new(1.0, 0.7) * 2f64.ln()).exp() * 200.0;
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(cfg(vec![1, 2], vec![0.0]).validate().is_err());
        assert!(MollifierConfig {
            w: 1.0,
            ..cfg(vec![1], vec![0.0])
        }
        .validate()
        .is_err());
        // T(10^6) = exp((log log 10^6)^2) ≈ 983
        assert!(cfg(vec![1], vec![900.0]).validate().is_ok());
        assert!(cfg(vec![1], vec![1000.0]).validate().is_err());
    }

    #[test]
    fn product_zero() {
        let c = MollifierConfig {
            l: vec![2, 1],
            w: 3.0,
            tau: vec![1.5, -4.0],
            x_anchor: 1e6,
        };
        for k in [-2, 0, 3] {
            let s = Complex64::new(1.0, 1.5 + 2.0 * std::f64::consts::PI * k as f64 / 3f64.ln());
            assert!(mollifier_product(s, &c).norm() < 1e-10);
        }
    }

    #[test]
    fn interval_removal_keeps_exact_separation() {
        let r = 0.3678794411714423;
        let out = remove_interval(&[(-54.6, 54.6)], 0.123456789, r);
        assert_eq!(out.len(), 2);
        assert!(0.123456789 - out[0].1 >= r);
        assert!(out[1].0 - 0.123456789 >= r);
        // removing at an endpoint leaves one piece
        let out = remove_interval(&[(0.0, 1.0)], 0.0, 0.5);
        assert_eq!(out.len(), 1);
        assert!(out[0].0 >= 0.5);
    }
}
