use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weaksub_core::factorization::*;
use weaksub_core::lseries::LocalFactorSeries;
use weaksub_core::mp::MpComplex;

const PREC: u32 = 128;

/// `1 + λ_φ u - λ_f(p²) u²` at `u = p^{-σ} e^{-iθ}`, in plain f64.
fn denominator_oracle(p: u64, sigma: f64, theta: f64, lam_f_sq: f64, lam_phi: f64) -> f64 {
    let u = Complex64::from_polar((p as f64).powf(-sigma), -theta);
    (1.0 + lam_phi * u - lam_f_sq * u * u).norm()
}

/// `λ_f(p)² λ_φ(p)` and `λ_f(p)² (λ_φ(p)² + 1) - 2`, rebuilt from the parameters.
fn printed_terms(params: &LocalParams) -> (MpComplex, MpComplex) {
    let one = MpComplex::one(PREC);
    let lf = &params.alpha + &params.alpha.recip();
    let lphi = &params.beta + &params.beta.recip();
    let lf2 = lf.powu(2);
    let u3 = -&(&lf2 * &lphi);
    let u4 = &(&lf2 * &(&lphi.powu(2) + &one)) - &(&one + &one);
    (u3, u4)
}

#[test]
fn seeded_samples_satisfy_both_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..40 {
        let p = [19, 23, 29, 97][i % 4];
        let params = LocalParams::sample(&mut rng, p, PREC);
        let key = verify_key_identity(&params, 12).unwrap();
        let thm = verify_thm1_identity(&params, 12).unwrap();
        assert!(key.pass && key.max_residual < 1e-20, "{key:?}");
        assert!(thm.pass && thm.max_residual < 1e-20, "{thm:?}");
    }
}

#[test]
fn extreme_admissible_parameters() {
    // |β| at the edge of the annulus, with α = ±1 and ±i
    for p in [19u64, 97] {
        let r = 7.0 / 64.0 * (p as f64).ln();
        for (a, lr, b) in [
            (0.0, r, 0.0),
            (std::f64::consts::PI, -r, 0.0),
            (std::f64::consts::FRAC_PI_2, r, 1.0),
        ] {
            let params = LocalParams::from_angles(p, a, lr * (1.0 - 1e-12), b, PREC);
            let h = hp_series(&params, 10).unwrap();
            let (u3, u4) = printed_terms(&params);
            assert!(h.coeff(1).abs().to_f64() < 1e-25);
            assert!(h.coeff(2).abs().to_f64() < 1e-25);
            assert!(h.coeff(3).dist(&u3) < 1e-25);
            assert!(h.coeff(4).dist(&u4) < 1e-25);
            assert!(verify_key_identity(&params, 10).unwrap().pass);
        }
    }
}

#[test]
fn inadmissible_parameters_are_rejected() {
    let params = LocalParams::from_angles(19, 0.3, 0.5, 0.0, PREC);
    assert!(params.check_admissible().is_err());
    assert!(verify_key_identity(&params, 8).is_err());
    let params = LocalParams::new(19, MpComplex::from_f64(PREC, 1.1, 0.0), MpComplex::one(PREC));
    assert!(params.check_admissible().is_err());
}

#[test]
fn denominator_roots_lie_outside_the_disk() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [19u64, 23, 29, 31, 97, 199] {
        for _ in 0..25 {
            let params = LocalParams::sample(&mut rng, p, PREC);
            for r in params.denominator_roots() {
                assert!(
                    r.norm() > holomorphy_radius(p, SIGMA_MIN),
                    "p = {p}, |u| = {}",
                    r.norm()
                );
                let [c0, c1, c2] = params.denominator().map(|z| z.to_c64());
                assert!((c0 + c1 * r + c2 * r * r).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn small_scan_minimum_is_below_every_grid_point() {
    let domain = ScanDomain {
        primes: vec![19, 23],
        ..ScanDomain::standard()
    };
    let grid = ScanGrid {
        sigma: 5,
        t_phase: 12,
        alpha_phase: 5,
        lam_phi: 7,
        refine_top: 2,
    };
    let report = denominator_min_scan(&domain, &grid).unwrap();
    let a = &report.argmin;
    let lam_f_sq = 1.0 + 2.0 * (2.0 * a.alpha_phase).cos();
    let at_argmin = denominator_oracle(a.p, a.sigma, a.t_phase, lam_f_sq, a.lam_phi);
    assert!((at_argmin - report.min).abs() < 1e-12, "{at_argmin} vs {}", report.min);
    assert!(report.certified_lower <= report.min);
    assert!(report.min <= report.grid_min);
}

#[test]
fn diagonal_series_matches_power_sums() {
    let params = LocalParams::from_angles(29, 0.7, 0.1, 2.0, PREC);
    let d = diagonal_series(&params, 6);
    // λ(x^j) = (x^{j+1} - x^{-j-1}) / (x - x^{-1})
    let lam = |x: &MpComplex, j: u32| {
        let xi = x.recip();
        &(&x.powu(j + 1) - &xi.powu(j + 1)) / &(x - &xi)
    };
    for j in 0..=6u32 {
        let want = &lam(&params.alpha, 2 * j) * &lam(&params.beta, j);
        assert!(d.coeff(j as usize).dist(&want) < 1e-30, "j = {j}");
    }
    let one = LocalFactorSeries::one(29, 6, PREC);
    assert_eq!(one.mul(&d).max_residual(&d).0, 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hp_low_terms_vanish(p in prop::sample::select(vec![19u64, 23, 29, 97]), a in 0.0f64..6.28, t in -1.0f64..1.0, b in 0.0f64..6.28) {
        let r = t * 7.0 / 64.0 * (p as f64).ln();
        let params = LocalParams::from_angles(p, a, r, b, PREC);
        let h = hp_series(&params, 8).unwrap();
        let (u3, u4) = printed_terms(&params);
        prop_assert!(h.coeff(0).dist(&MpComplex::one(PREC)) < 1e-30);
        prop_assert!(h.coeff(1).abs().to_f64() < 1e-25);
        prop_assert!(h.coeff(2).abs().to_f64() < 1e-25);
        prop_assert!(h.coeff(3).dist(&u3) < 1e-25);
        prop_assert!(h.coeff(4).dist(&u4) < 1e-25);
    }

    #[test]
    fn scan_evaluator_matches_oracle(p in prop::sample::select(vec![19u64, 43, 199]), sigma in 0.4f64..3.0, theta in 0.0f64..6.28, phase in 0.0f64..3.15, lam_phi in -2.1f64..2.1) {
        let lam_f_sq = 1.0 + 2.0 * (2.0 * phase).cos();
        let got = denominator_abs(p, sigma, theta, lam_f_sq, lam_phi);
        let want = denominator_oracle(p, sigma, theta, lam_f_sq, lam_phi);
        prop_assert!((got - want).abs() < 1e-12 * want.max(1.0));
    }
}
