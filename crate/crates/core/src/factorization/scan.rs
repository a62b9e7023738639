use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Resolution of the four-dimensional scan, per prime.
///
/// Closed intervals (`sigma`, `alpha_phase`, `lam_phi`) include both ends;
/// the periodic `t_phase` grid covers `[0, 2π)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanGrid {
    pub sigma: usize,
    pub t_phase: usize,
    pub alpha_phase: usize,
    pub lam_phi: usize,
    /// Grid cells refined per prime.
    pub refine_top: usize,
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid {
            sigma: 33,
            t_phase: 72,
            alpha_phase: 25,
            lam_phi: 41,
            refine_top: 4,
        }
    }
}

impl ScanGrid {
    /// Halve every spacing; closed grids stay nested (`n -> 2n - 1`).
    pub fn doubled(&self) -> ScanGrid {
        ScanGrid {
            sigma: 2 * self.sigma - 1,
            t_phase: 2 * self.t_phase,
            alpha_phase: 2 * self.alpha_phase - 1,
            lam_phi: 2 * self.lam_phi - 1,
            refine_top: self.refine_top,
        }
    }
}

/// Scan domain. Values for `σ > sigma_max` are dominated by the `σ = sigma_max`
/// row because both nonconstant terms shrink in modulus as `σ` grows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanDomain {
    pub primes: Vec<u64>,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub threshold: f64,
}

impl ScanDomain {
    /// Primes `19 <= p <= 199`, `σ ∈ [2/5, 3]`, threshold `0.06`.
    pub fn standard() -> ScanDomain {
        ScanDomain {
            primes: (19..=199).filter(|&p| is_prime(p)).collect(),
            sigma_min: 0.4,
            sigma_max: 3.0,
            threshold: 0.06,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub p: u64,
    pub sigma: f64,
    /// `θ` with `p^{-it} = e^{-iθ}`.
    pub t_phase: f64,
    /// `φ` with `α = e^{iφ}`, so `λ_f(p^2) = 1 + 2 cos 2φ`.
    pub alpha_phase: f64,
    pub lam_phi: f64,
    /// Satake root of `x^2 - λ_φ x + 1` as `[re, im]`, `|β| >= 1` when real.
    pub beta: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub min: f64,
    pub argmin: ScanPoint,
    pub grid_min: f64,
    /// Lipschitz bound times half the grid spacing: the grid minimum minus
    /// this margin bounds the true minimum from below.
    pub lipschitz_margin: f64,
    pub certified_lower: f64,
    pub threshold: f64,
    pub pass: bool,
    pub evaluations: u64,
    pub grid: ScanGrid,
    pub domain: ScanDomain,
    pub note: &'static str,
}

const MONOTONE_NOTE: &str =
    "rows with sigma above sigma_max are dominated by the sigma_max row: |terms| shrink as sigma grows";

/// `|1 + λ_φ p^{-s} - λ_f(p^2) p^{-2s}|` at `s = σ + it`, `θ = t log p`.
pub fn denominator_abs(p: u64, sigma: f64, t_phase: f64, lam_f_sq: f64, lam_phi: f64) -> f64 {
    let x = (p as f64).powf(-sigma);
    eval(x, t_phase, lam_f_sq, lam_phi)
}

/// Same quantity at `precision` bits.
pub fn denominator_abs_mp(p: u64, sigma: &Float, t_phase: &Float, lam_f_sq: &Float, lam_phi: &Float) -> Float {
    let prec = sigma.prec();
    let x = Float::with_val(prec, p).pow(Float::with_val(prec, -sigma));
    let (s1, c1) = Float::with_val(prec, t_phase).sin_cos(Float::new(prec));
    let two_t = Float::with_val(prec, t_phase * 2u32);
    let (s2, c2) = two_t.sin_cos(Float::new(prec));
    let a = Float::with_val(prec, lam_phi * &x);
    let b = Float::with_val(prec, lam_f_sq * Float::with_val(prec, x.square_ref()));
    // 1 + a e^{-iθ} - b e^{-2iθ}
    let re = Float::with_val(prec, 1u32) + Float::with_val(prec, &a * &c1) - Float::with_val(prec, &b * &c2);
    let im = Float::with_val(prec, &b * &s2) - Float::with_val(prec, &a * &s1);
    re.hypot(&im)
}

#[inline]
fn eval(x: f64, theta: f64, lam_f_sq: f64, lam_phi: f64) -> f64 {
    let (s1, c1) = theta.sin_cos();
    let (s2, c2) = (2.0 * theta).sin_cos();
    let a = lam_phi * x;
    let b = lam_f_sq * x * x;
    let re = 1.0 + a * c1 - b * c2;
    let im = -a * s1 + b * s2;
    re.hypot(im)
}

fn lam_phi_bound(p: u64) -> f64 {
    let t = (p as f64).powf(7.0 / 64.0);
    t + 1.0 / t
}

fn linspace(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if n == 1 {
        lo
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

#[derive(Clone, Copy, Debug)]
struct Pt {
    sigma: f64,
    theta: f64,
    phase: f64,
    lam_phi: f64,
}

/// Grid minimum over all primes, then golden-section refinement around the
/// best cells of each prime.
pub fn denominator_min_scan(domain: &ScanDomain, grid: &ScanGrid) -> Result<ScanReport> {
    if domain.primes.is_empty() || grid.sigma == 0 || grid.t_phase == 0 || grid.alpha_phase == 0 || grid.lam_phi == 0 {
        return Err(Error::EmptyGrid);
    }
    if domain.sigma_max < domain.sigma_min {
        return Err(Error::EmptyGrid);
    }
    let per_prime: Vec<(u64, f64, Pt, f64, u64)> =
        domain.primes.par_iter().map(|&p| scan_prime(p, domain, grid)).collect();

    let mut best_idx = 0;
    let mut grid_min = f64::INFINITY;
    let mut min = f64::INFINITY;
    let mut evaluations = 0;
    for (i, (_, g, _, refined, evals)) in per_prime.iter().enumerate() {
        evaluations += evals;
        grid_min = grid_min.min(*g);
        if *refined < min {
            min = *refined;
            best_idx = i;
        }
    }
    let (p, _, pt, _, _) = per_prime[best_idx];
    let lipschitz_margin = domain
        .primes
        .iter()
        .map(|&p| lipschitz_margin(p, domain, grid))
        .fold(0.0, f64::max);
    let certified_lower = grid_min - lipschitz_margin;
    let beta = beta_from_trace(pt.lam_phi);
    Ok(ScanReport {
        min,
        argmin: ScanPoint {
            p,
            sigma: pt.sigma,
            t_phase: pt.theta,
            alpha_phase: pt.phase,
            lam_phi: pt.lam_phi,
            beta,
        },
        grid_min,
        lipschitz_margin,
        certified_lower,
        threshold: domain.threshold,
        pass: min > domain.threshold,
        evaluations,
        grid: grid.clone(),
        domain: domain.clone(),
        note: MONOTONE_NOTE,
    })
}

fn beta_from_trace(t: f64) -> [f64; 2] {
    let q = t * t / 4.0 - 1.0;
    if q <= 0.0 {
        [t / 2.0, (-q).sqrt()]
    } else {
        [t / 2.0 + t.signum() * q.sqrt(), 0.0]
    }
}

/// `(p, grid min, refined argmin, refined min, evaluations)`.
fn scan_prime(p: u64, domain: &ScanDomain, grid: &ScanGrid) -> (u64, f64, Pt, f64, u64) {
    let bound = lam_phi_bound(p);
    let lnp = (p as f64).ln();
    let mut cells: Vec<(f64, Pt)> = Vec::new();
    let keep = grid.refine_top.max(1);
    let mut evals = 0u64;
    for is in 0..grid.sigma {
        let sigma = linspace(domain.sigma_min, domain.sigma_max, grid.sigma, is);
        let x = (-sigma * lnp).exp();
        for it in 0..grid.t_phase {
            let theta = TAU * it as f64 / grid.t_phase as f64;
            for ia in 0..grid.alpha_phase {
                let phase = linspace(0.0, PI / 2.0, grid.alpha_phase, ia);
                let lam_f_sq = 1.0 + 2.0 * (2.0 * phase).cos();
                for il in 0..grid.lam_phi {
                    let lam_phi = linspace(-bound, bound, grid.lam_phi, il);
                    let v = eval(x, theta, lam_f_sq, lam_phi);
                    evals += 1;
                    if cells.len() < keep || v < cells[cells.len() - 1].0 {
                        let pt = Pt {
                            sigma,
                            theta,
                            phase,
                            lam_phi,
                        };
                        let pos = cells.partition_point(|c| c.0 <= v);
                        cells.insert(pos, (v, pt));
                        cells.truncate(keep);
                    }
                }
            }
        }
    }
    let grid_min = cells[0].0;
    let h = Steps::new(domain, grid, bound);
    let mut best = (cells[0].0, cells[0].1);
    for (v0, pt0) in &cells {
        let (v, pt, n) = refine(p, *pt0, *v0, &h, domain, bound);
        evals += n;
        if v < best.0 {
            best = (v, pt);
        }
    }
    (p, grid_min, best.1, best.0, evals)
}

struct Steps {
    sigma: f64,
    theta: f64,
    phase: f64,
    lam_phi: f64,
}

impl Steps {
    fn new(domain: &ScanDomain, grid: &ScanGrid, bound: f64) -> Steps {
        let step = |lo: f64, hi: f64, n: usize| if n > 1 { (hi - lo) / (n - 1) as f64 } else { hi - lo };
        Steps {
            sigma: step(domain.sigma_min, domain.sigma_max, grid.sigma),
            theta: TAU / grid.t_phase as f64,
            phase: step(0.0, PI / 2.0, grid.alpha_phase),
            lam_phi: step(-bound, bound, grid.lam_phi),
        }
    }
}

/// Cyclic coordinate golden-section search within one grid cell of the
/// starting point, clamped to the domain.
fn refine(p: u64, start: Pt, v0: f64, h: &Steps, domain: &ScanDomain, bound: f64) -> (f64, Pt, u64) {
    let f = |q: &Pt| {
        let lam_f_sq = 1.0 + 2.0 * (2.0 * q.phase).cos();
        denominator_abs(p, q.sigma, q.theta, lam_f_sq, q.lam_phi)
    };
    let mut pt = start;
    let mut best = v0;
    let mut evals = 0;
    for _sweep in 0..4 {
        for coord in 0..4 {
            let (lo, hi) = match coord {
                0 => (
                    (pt.sigma - h.sigma).max(domain.sigma_min),
                    (pt.sigma + h.sigma).min(domain.sigma_max),
                ),
                1 => (pt.theta - h.theta, pt.theta + h.theta),
                2 => ((pt.phase - h.phase).max(0.0), (pt.phase + h.phase).min(PI / 2.0)),
                _ => (
                    (pt.lam_phi - h.lam_phi).max(-bound),
                    (pt.lam_phi + h.lam_phi).min(bound),
                ),
            };
            let set = |q: &mut Pt, v: f64| match coord {
                0 => q.sigma = v,
                1 => q.theta = v,
                2 => q.phase = v,
                _ => q.lam_phi = v,
            };
            let line = |v: f64| {
                let mut q = pt;
                set(&mut q, v);
                f(&q)
            };
            let (xv, fv, n) = golden_min(line, lo, hi, 40);
            evals += n;
            // endpoints of the bracket are candidates too
            for (x, fx) in [(xv, fv), (lo, line(lo)), (hi, line(hi))] {
                evals += 1;
                if fx < best {
                    best = fx;
                    set(&mut pt, x);
                }
            }
        }
    }
    pt.theta = pt.theta.rem_euclid(TAU);
    (best, pt, evals)
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64, u64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc, iters as u64 + 2)
    } else {
        (d, fd, iters as u64 + 2)
    }
}

/// Sum over coordinates of (bound on the partial derivative) × (half step).
fn lipschitz_margin(p: u64, domain: &ScanDomain, grid: &ScanGrid) -> f64 {
    let bound = lam_phi_bound(p);
    let h = Steps::new(domain, grid, bound);
    let x = (p as f64).powf(-domain.sigma_min);
    let lnp = (p as f64).ln();
    // |λ_f(p^2)| <= 3, |dλ_f(p^2)/dφ| <= 4
    let d_sigma = (bound * x + 2.0 * 3.0 * x * x) * lnp;
    let d_theta = bound * x + 2.0 * 3.0 * x * x;
    let d_phase = 4.0 * x * x;
    let d_lam = x;
    0.5 * (d_sigma * h.sigma + d_theta * h.theta + d_phase * h.phase + d_lam * h.lam_phi)
}
