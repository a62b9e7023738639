use std::f64::consts::PI;

use num_complex::Complex64;

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Shift target: Stirling with ten terms is below `1e-17` relative for `|z| >= 15`.
const SHIFT: f64 = 15.0;

/// A logarithm of `Γ(z)` (principal branch up to a multiple of `2πi`),
/// valid for `Re z > 0`. Only `exp` of differences is ever used, so the branch
/// is immaterial.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < SHIFT {
        acc -= z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    acc + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

/// `log Γ_R(s) = -(s/2) log π + log Γ(s/2)`.
pub fn ln_gamma_r(s: Complex64) -> Complex64 {
    -0.5 * s * PI.ln() + ln_gamma(0.5 * s)
}

/// `log Π_j Γ_R(s + μ_j)`.
pub fn ln_gamma_factor(shifts: &[f64], s: Complex64) -> Complex64 {
    shifts.iter().map(|&mu| ln_gamma_r(s + mu)).sum()
}
