use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Objectives of the form `max_{α∈[0,1]} min_{λ∈[0,2]^d} F(α, λ)`, each affine in α.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimaxObjective {
    /// `α(λ_f² + λ_g² - 1)/2 + (1 - α)((λ_f - 1)² + (λ_g - 1)²)/4`.
    #[serde(rename = "holQUE-2var")]
    HolQue2Var,
    /// `(α/2)(λ - 1)² + (1 - α)(u - |u|/2 + (1 - u²)/4)` with `u = λ² - 1`.
    #[serde(rename = "appendix-1var")]
    Appendix1Var,
}

impl MinimaxObjective {
    pub fn dimension(self) -> usize {
        match self {
            MinimaxObjective::HolQue2Var => 2,
            MinimaxObjective::Appendix1Var => 1,
        }
    }

    pub fn eval(self, alpha: f64, lam: &[f64]) -> f64 {
        match self {
            MinimaxObjective::HolQue2Var => {
                let (f, g) = (lam[0], lam[1]);
                alpha * (f * f + g * g - 1.0) / 2.0 + (1.0 - alpha) * ((f - 1.0).powi(2) + (g - 1.0).powi(2)) / 4.0
            }
            MinimaxObjective::Appendix1Var => {
                let l = lam[0];
                let u = l * l - 1.0;
                alpha / 2.0 * (l - 1.0).powi(2) + (1.0 - alpha) * (u - 0.5 * u.abs() + 0.25 * (1.0 - u * u))
            }
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MinimaxObjective::HolQue2Var => "holQUE-2var",
            MinimaxObjective::Appendix1Var => "appendix-1var",
        }
    }
}

/// `points` intervals per coordinate on `[0, 2]`; `points` is forced even so
/// the kink `λ = 1` is always a node, and both endpoints are always nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinimaxProblem {
    pub objective: MinimaxObjective,
    pub points: usize,
    pub tolerance: f64,
}

impl MinimaxProblem {
    pub fn new(objective: MinimaxObjective) -> Self {
        MinimaxProblem {
            objective,
            points: 400,
            tolerance: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimaxReport {
    pub objective: MinimaxObjective,
    pub value: f64,
    pub alpha_star: f64,
    pub inner_argmin: Vec<f64>,
    pub points: usize,
    /// Value at doubled inner resolution.
    pub value_doubled: f64,
    pub grid_stable: bool,
}

const INTERVAL: (f64, f64) = (0.0, 2.0);

/// `min_λ F(α, λ)` with its minimizer: dense grid, then coordinatewise golden
/// section within one grid cell of the best node.
pub fn inner_min(objective: MinimaxObjective, alpha: f64, points: usize) -> (f64, Vec<f64>) {
    let n = points.max(2).next_multiple_of(2);
    let h = (INTERVAL.1 - INTERVAL.0) / n as f64;
    let node = |i: usize| INTERVAL.0 + h * i as f64;
    let d = objective.dimension();
    let total = (n + 1).pow(d as u32);
    // min over the grid; ties resolve to the lowest index so the result is schedule-free
    let (best_i, _) = (0..total)
        .into_par_iter()
        .map(|idx| {
            let lam: Vec<f64> = (0..d).map(|c| node(idx / (n + 1).pow(c as u32) % (n + 1))).collect();
            (idx, objective.eval(alpha, &lam))
        })
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a },
        );
    let mut lam: Vec<f64> = (0..d).map(|c| node(best_i / (n + 1).pow(c as u32) % (n + 1))).collect();
    let mut value = objective.eval(alpha, &lam);
    for _ in 0..6 {
        for c in 0..d {
            let lo = (lam[c] - h).max(INTERVAL.0);
            let hi = (lam[c] + h).min(INTERVAL.1);
            let f = |t: f64| {
                let mut trial = lam.clone();
                trial[c] = t;
                objective.eval(alpha, &trial)
            };
            let (t, v) = golden_min(f, lo, hi);
            if v < value {
                lam[c] = t;
                value = v;
            }
        }
    }
    (value, lam)
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-13 {
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
    // endpoints carry the kink and boundary minimizers
    [(a, f(a)), (b, f(b)), (c, fc), (d, fd)]
        .into_iter()
        .fold((a, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc })
}

/// Outer golden-section search over `α ∈ [0, 1]` of the inner-min envelope,
/// which is concave as a pointwise minimum of functions affine in `α`.
fn outer_max(objective: MinimaxObjective, points: usize) -> (f64, f64, Vec<f64>) {
    let env = |a: f64| inner_min(objective, a, points).0;
    let (alpha, _) = golden_min(|a| -env(a), 0.0, 1.0);
    let (value, lam) = inner_min(objective, alpha, points);
    (value, alpha, lam)
}

pub fn solve_minimax(problem: &MinimaxProblem) -> MinimaxReport {
    let (value, alpha_star, inner_argmin) = outer_max(problem.objective, problem.points);
    let (value_doubled, _, _) = outer_max(problem.objective, 2 * problem.points);
    MinimaxReport {
        objective: problem.objective,
        value,
        alpha_star,
        inner_argmin,
        points: problem.points,
        value_doubled,
        grid_stable: (value - value_doubled).abs() < problem.tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_quadratic() {
        // at α = 1 the appendix objective is (λ - 1)²/2
        let (v, lam) = inner_min(MinimaxObjective::Appendix1Var, 1.0, 50);
        assert!(v.abs() < 1e-20 && (lam[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn kink_and_endpoints_are_nodes() {
        // a coarse grid still finds the global minimum through refinement
        let (v, lam) = inner_min(MinimaxObjective::Appendix1Var, 0.0, 3);
        let want = (0..=2000)
            .map(|i| MinimaxObjective::Appendix1Var.eval(0.0, &[i as f64 / 1000.0]))
            .fold(f64::INFINITY, f64::min);
        assert!(v <= want + 1e-15, "{v} at {lam:?}");
    }
}
