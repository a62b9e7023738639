use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::data::LFunctionData;
use crate::arith::det_sum_map;
use crate::error::{Error, Result};

/// Even smoothing kernel `G(z)` with `G(0) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Kernel {
    /// `G(z) = e^{z^2}`.
    Gaussian,
    /// `G(z) = (sinh(λz/2) / (λz/2))^K`: the smoothed Perron weight
    /// `((e^{λz} - 1)/(λz))^K` with its odd factor `e^{Kλz/2}` removed, which
    /// makes it even as the functional equation requires.
    PerronPower { k: u32, lambda: f64 },
}

impl Kernel {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            Kernel::Gaussian => (z * z).exp(),
            Kernel::PerronPower { k, lambda } => {
                let u = 0.5 * lambda * z;
                if u.norm() < 1e-4 {
                    // sinh(u)/u = 1 + u^2/6 + u^4/120 + ...
                    let u2 = u * u;
                    (1.0 + u2 / 6.0 + u2 * u2 / 120.0).powu(k)
                } else {
                    (u.sinh() / u).powu(k)
                }
            }
        }
    }

    /// Half-width at which the trapezoid rule is safe by default.
    pub fn default_t_max(&self) -> f64 {
        match self {
            Kernel::Gaussian => 12.0,
            Kernel::PerronPower { .. } => 80.0,
        }
    }
}

/// Contour and quadrature parameters for the approximate functional equation
/// and the diagonal weights `W(n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AfeConfig {
    pub kernel: Kernel,
    /// Abscissa `c > 1/2` of the central-value integral.
    pub abscissa: f64,
    pub step: f64,
    pub t_max: f64,
    /// Largest admissible `|integrand(c ± iT_max)| / max |integrand|`.
    pub quadrature_tolerance: f64,
    /// Largest admissible `sqrt(N) |V(N)|` at the end of the coefficient table.
    pub sum_tolerance: f64,
    /// Root number `κ` entering the diagonal sum as `(1 + κ)`.
    pub kappa: f64,
    /// `A` and `ε` of the weight abscissa `B = (2A + 6)/ε + 1/2`.
    pub big_a: f64,
    pub epsilon: f64,
    /// Dirichlet terms used for the factor `D(1 + 2s)` inside `W(n)`.
    pub weight_terms: usize,
    pub precision: u32,
}

impl Default for AfeConfig {
    fn default() -> Self {
        AfeConfig::gaussian()
    }
}

impl AfeConfig {
    pub fn gaussian() -> Self {
        AfeConfig {
            kernel: Kernel::Gaussian,
            abscissa: 1.0,
            step: 0.05,
            t_max: Kernel::Gaussian.default_t_max(),
            quadrature_tolerance: 1e-15,
            sum_tolerance: 1e-10,
            kappa: 1.0,
            big_a: 3.0,
            epsilon: 0.5,
            weight_terms: 2000,
            precision: 128,
        }
    }

    pub fn perron_power(k: u32, lambda: f64) -> Self {
        let kernel = Kernel::PerronPower { k, lambda };
        AfeConfig {
            kernel,
            t_max: kernel.default_t_max(),
            ..AfeConfig::gaussian()
        }
    }

    /// `B = (2A + 6)/ε + 1/2`.
    pub fn weight_abscissa(&self) -> f64 {
        (2.0 * self.big_a + 6.0) / self.epsilon + 0.5
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.into()));
        if !(self.abscissa > 0.5) {
            return bad("abscissa must exceed 1/2");
        }
        if !(self.step > 0.0) || !(self.t_max > self.step) {
            return bad("need 0 < step < t_max");
        }
        if !(self.epsilon > 0.0) || self.big_a < 0.0 {
            return bad("need epsilon > 0 and A >= 0");
        }
        if let Kernel::PerronPower { k, lambda } = self.kernel {
            if k == 0 || !(lambda > 0.0) {
                return bad("perron kernel needs K >= 1 and lambda > 0");
            }
        }
        Ok(())
    }

    /// Same configuration with the quadrature step halved.
    pub fn refined(&self) -> Self {
        AfeConfig {
            step: self.step / 2.0,
            ..self.clone()
        }
    }
}

/// Trapezoid nodes on `Re z = c` carrying `(h/2π) · F(z)/z`, so that
/// `(1/2πi) ∫ F(z) y^{-z} dz/z ≈ Σ_j w_j y^{-z_j}`.
struct LineRule {
    nodes: Vec<(Complex64, Complex64)>,
}

impl LineRule {
    fn build<F>(c: f64, cfg: &AfeConfig, integrand: F) -> Result<LineRule>
    where
        F: Fn(Complex64) -> Complex64,
    {
        let half = (cfg.t_max / cfg.step).round() as i64;
        let mut nodes = Vec::with_capacity(2 * half as usize + 1);
        let mut peak = 0f64;
        for j in -half..=half {
            let z = Complex64::new(c, j as f64 * cfg.step);
            let v = integrand(z) / z * (cfg.step / (2.0 * PI));
            peak = peak.max(v.norm());
            nodes.push((z, v));
        }
        let edge = nodes[0].1.norm().max(nodes[nodes.len() - 1].1.norm());
        let relative = edge / peak;
        if !(relative <= cfg.quadrature_tolerance) {
            return Err(Error::QuadratureTail {
                t_max: cfg.t_max,
                relative,
                tolerance: cfg.quadrature_tolerance,
            });
        }
        Ok(LineRule { nodes })
    }

    fn eval(&self, ln_y: f64) -> Complex64 {
        self.nodes
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &(z, w)| acc + w * (-z * ln_y).exp())
    }
}

/// `(1 - 4z^2)^r γ(1/2 + z)/γ(1/2) G(z)`: the completed function's entire
/// prefactor removes the pole of order `r` at `s = 1`.
fn central_integrand<'a>(data: &'a LFunctionData, cfg: &AfeConfig) -> impl Fn(Complex64) -> Complex64 + 'a {
    let half = Complex64::new(0.5, 0.0);
    let base = data.ln_gamma_factor(half);
    let r = data.pole_order;
    let kernel = cfg.kernel;
    move |z| {
        let pole = (1.0 - 4.0 * z * z).powu(r);
        pole * (data.ln_gamma_factor(half + z) - base).exp() * kernel.eval(z)
    }
}

/// The cutoff function `V(y)` of the approximate functional equation.
pub fn afe_cutoff(data: &LFunctionData, cfg: &AfeConfig, y: f64) -> Result<Complex64> {
    cfg.validate()?;
    let rule = LineRule::build(cfg.abscissa, cfg, central_integrand(data, cfg))?;
    Ok(rule.eval(y.ln()))
}

/// `L(1/2) = Σ λ(n) n^{-1/2} V(n) + ε Σ conj(λ(n)) n^{-1/2} V(n)` over the
/// whole coefficient table.
///
/// The contour identity is applied to `(s(1-s))^r Λ(s)`, which is entire, so
/// poles need no residue bookkeeping. Errors if `V` has not decayed to
/// `sum_tolerance` by the end of the table.
pub fn afe_central_value(data: &LFunctionData, cfg: &AfeConfig) -> Result<Complex64> {
    cfg.validate()?;
    let rule = LineRule::build(cfg.abscissa, cfg, central_integrand(data, cfg))?;
    let n_max = data.truncation();
    let at = |n: f64| rule.eval(n.ln()).norm() * n.sqrt();
    if !(at(n_max as f64) <= cfg.sum_tolerance) {
        let mut needed = n_max as u64;
        while needed < 1 << 40 && !(at(needed as f64) <= cfg.sum_tolerance) {
            needed *= 2;
        }
        return Err(Error::TableTooShort { needed, have: n_max });
    }
    let c = data.coeffs();
    let eps = data.root_number;
    let total = det_sum_map(n_max, |i| {
        let n = (i + 1) as f64;
        let v = rule.eval(n.ln()) / n.sqrt();
        (c[i] + eps * c[i].conj()) * v
    });
    Ok(total)
}

/// The diagonal weight
/// `W(n) = (1/2πi) ∫ D(1 + 2s) γ(1/2 + s)/γ(1/2) G(s) n^{-s} ds/s`
/// with `D` the data's Dirichlet series truncated to `cfg.weight_terms`.
///
/// The integral does not depend on the line once `Re s > 0`. It is taken on
/// the saddle line of `|integrand| n^{-s}` clamped to `[1/4, B]`: at the line
/// `B` itself, `W(n)` for moderate `n` would be a difference of terms `e^{B^2}`
/// times larger and lost to cancellation in double precision.
pub fn afe_weight(n: u64, data: &LFunctionData, cfg: &AfeConfig) -> Result<Complex64> {
    Ok(afe_weight_table(&[n], data, cfg)?[0].value())
}

/// `W(n)` for every requested `n`. Lines are shared between nearby `n`, so
/// each quadrature rule is built once.
pub fn afe_weight_table(ns: &[u64], data: &LFunctionData, cfg: &AfeConfig) -> Result<Vec<WeightRow>> {
    cfg.validate()?;
    if ns.contains(&0) {
        return Err(Error::InvalidParameter("W(n) needs n >= 1".into()));
    }
    let terms = cfg.weight_terms;
    if terms == 0 || terms > data.truncation() {
        return Err(Error::TableTooShort {
            needed: terms as u64,
            have: data.truncation(),
        });
    }
    let lines = WeightLines::new(data, cfg);
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &n) in ns.iter().enumerate() {
        groups.entry(lines.pick((n as f64).ln())).or_default().push(i);
    }
    let groups: Vec<(usize, Vec<usize>)> = groups.into_iter().collect();
    let evaluated = groups
        .par_iter()
        .map(|(line, members)| {
            let rule = LineRule::build(lines.abscissa[*line], cfg, weight_integrand(data, cfg))?;
            Ok(members
                .iter()
                .map(|&i| (i, rule.eval((ns[i] as f64).ln())))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = vec![
        WeightRow {
            n: 0,
            w_re: 0.0,
            w_im: 0.0
        };
        ns.len()
    ];
    for (i, w) in evaluated.into_iter().flatten() {
        rows[i] = WeightRow {
            n: ns[i],
            w_re: w.re,
            w_im: w.im,
        };
    }
    Ok(rows)
}

fn dirichlet_factor(data: &LFunctionData, terms: usize, s: Complex64) -> Complex64 {
    let coeffs = &data.coeffs()[..terms];
    coeffs
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (i, &a)| {
            acc + a * (-s * ((i + 1) as f64).ln()).exp()
        })
}

fn weight_integrand<'a>(data: &'a LFunctionData, cfg: &AfeConfig) -> impl Fn(Complex64) -> Complex64 + 'a {
    let half = Complex64::new(0.5, 0.0);
    let base = data.ln_gamma_factor(half);
    let kernel = cfg.kernel;
    let terms = cfg.weight_terms;
    move |z| {
        dirichlet_factor(data, terms, 1.0 + 2.0 * z) * (data.ln_gamma_factor(half + z) - base).exp() * kernel.eval(z)
    }
}

/// Candidate lines `c ∈ [1/4, B]` on a `0.05` grid with `log |integrand(c)|`.
struct WeightLines {
    abscissa: Vec<f64>,
    log_abs: Vec<f64>,
}

impl WeightLines {
    fn new(data: &LFunctionData, cfg: &AfeConfig) -> Self {
        let f = weight_integrand(data, cfg);
        let hi = cfg.weight_abscissa().max(0.25);
        let steps = ((hi - 0.25) / 0.05).ceil() as usize;
        let abscissa: Vec<f64> = (0..=steps).map(|i| (0.25 + 0.05 * i as f64).min(hi)).collect();
        let log_abs = abscissa
            .par_iter()
            .map(|&c| f(Complex64::new(c, 0.0)).norm().ln())
            .collect();
        WeightLines { abscissa, log_abs }
    }

    /// Index minimizing `log |integrand(c)| - c log n - log c`.
    fn pick(&self, ln_n: f64) -> usize {
        let mut best = (f64::INFINITY, 0);
        for (i, (&c, &v)) in self.abscissa.iter().zip(&self.log_abs).enumerate() {
            let v = v - c * ln_n - c.ln();
            if v < best.0 {
                best = (v, i);
            }
        }
        best.1
    }
}

/// `(1 + κ) Σ a_n n^{-1/2} W(n)` over the supplied `(n, a_n)` pairs.
pub fn weighted_diagonal_sum(terms: &[(u64, f64)], data: &LFunctionData, cfg: &AfeConfig) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for &(n, a) in terms {
        total += a / (n as f64).sqrt() * afe_weight(n, data, cfg)?;
    }
    Ok((1.0 + cfg.kappa) * total)
}

/// One row of a weight table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightRow {
    pub n: u64,
    #[serde(rename = "W_re")]
    pub w_re: f64,
    #[serde(rename = "W_im")]
    pub w_im: f64,
}

impl WeightRow {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.w_re, self.w_im)
    }
}

/// Least-squares slope of `log |W(n)|` against `log n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSlope {
    pub n_lo: u64,
    pub n_hi: u64,
    pub rows: Vec<WeightRow>,
    pub slope: f64,
    /// `-B + 1/2`
    pub target: f64,
    pub pass: bool,
}

/// `points` log-spaced samples of `W` on `[n_lo, n_hi]`, with the fitted slope.
pub fn weight_decay_slope(
    data: &LFunctionData,
    cfg: &AfeConfig,
    n_lo: u64,
    n_hi: u64,
    points: usize,
) -> Result<WeightSlope> {
    if points < 2 || n_lo == 0 || n_hi <= n_lo {
        return Err(Error::InvalidParameter(
            "need 2 or more points on 1 <= n_lo < n_hi".into(),
        ));
    }
    let (a, b) = ((n_lo as f64).ln(), (n_hi as f64).ln());
    let mut ns: Vec<u64> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().round() as u64)
        .collect();
    ns.dedup();
    let rows = afe_weight_table(&ns, data, cfg)?;
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| Complex64::new(r.w_re, r.w_im).norm().ln())
        .collect();
    let slope = least_squares_slope(&xs, &ys);
    let target = -cfg.weight_abscissa() + 0.5;
    Ok(WeightSlope {
        n_lo,
        n_hi,
        rows,
        slope,
        target,
        pass: slope <= target,
    })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{make_lfunction_data, LSource};
    use crate::modforms::eigenform;

    #[test]
    fn kernels_are_even_and_normalized() {
        for k in [Kernel::Gaussian, Kernel::PerronPower { k: 6, lambda: 1.0 }] {
            assert!((k.eval(Complex64::new(0.0, 0.0)) - 1.0).norm() < 1e-15);
            for z in [Complex64::new(0.3, 2.0), Complex64::new(1.5, -7.0)] {
                assert!((k.eval(z) - k.eval(-z)).norm() <= 1e-12 * k.eval(z).norm());
            }
        }
        // series branch agrees with the closed form where both apply
        let k = Kernel::PerronPower { k: 3, lambda: 1.0 };
        let z = Complex64::new(2e-4, 1e-4);
        let closed = ((0.5 * z).sinh() / (0.5 * z)).powu(3);
        assert!((k.eval(z) - closed).norm() < 1e-15);
    }

    #[test]
    fn weight_abscissa_default() {
        assert_eq!(AfeConfig::default().weight_abscissa(), 24.5);
    }

    #[test]
    fn short_t_max_is_reported() {
        let z = make_lfunction_data(LSource::Zeta, 100, 64).unwrap();
        let cfg = AfeConfig {
            t_max: 2.0,
            ..AfeConfig::gaussian()
        };
        let err = afe_cutoff(&z, &cfg, 10.0).unwrap_err();
        assert!(err.to_string().starts_with("increase T_max"));
    }

    #[test]
    fn short_table_is_reported() {
        let z = make_lfunction_data(LSource::Zeta, 100, 64).unwrap();
        match afe_central_value(&z, &AfeConfig::gaussian()) {
            Err(Error::TableTooShort { needed, have }) => assert!(needed > have as u64),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cutoff_tends_to_one_near_zero() {
        // V(y) -> 1 as y -> 0 for any admissible kernel: shift the line far right
        let d = eigenform(12, 10).unwrap();
        let ad = make_lfunction_data(LSource::Adjoint(&d), 10, 64).unwrap();
        let v = afe_cutoff(&ad, &AfeConfig::gaussian(), 1e-6).unwrap();
        assert!((v - 1.0).norm() < 1e-6, "{v}");
    }

    #[test]
    fn weight_is_real_and_line_independent() {
        let d = eigenform(12, 2000).unwrap();
        let ad = make_lfunction_data(LSource::Adjoint(&d), 2000, 64).unwrap();
        let cfg = AfeConfig::gaussian();
        let w = afe_weight(7, &ad, &cfg).unwrap();
        assert!(w.im.abs() < 1e-12);
        let ln7 = 7f64.ln();
        for c in [0.5, 1.0, 2.0] {
            let rule = LineRule::build(c, &cfg, weight_integrand(&ad, &cfg)).unwrap();
            assert!((rule.eval(ln7) - w).norm() < 1e-11);
        }
    }

    #[test]
    fn slope_fit_is_exact_on_power_laws() {
        let xs: Vec<f64> = (1..6).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.5 * x).collect();
        assert!((least_squares_slope(&xs, &ys) + 2.5).abs() < 1e-14);
    }
}
