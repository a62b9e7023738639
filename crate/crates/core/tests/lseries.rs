use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;
use weaksub_core::arith::primes_up_to;
use weaksub_core::lseries::*;
use weaksub_core::modforms::{eigenform, Eigenform};
use weaksub_core::mp::MpComplex;

const PREC: u32 = 128;

/// `a(n) / n^{(k-1)/2}` straight from the integer coefficient.
fn lambda_exact(f: &Eigenform, n: u64) -> Float {
    let a = Float::with_val(PREC, f.coeff(n).unwrap());
    let scale = Float::with_val(PREC, n).pow(Float::with_val(PREC, f.weight() - 1) / 2u32);
    a / scale
}

/// `Σ_{d² | n} g(n / d²)`, the coefficient of `ζ(2s) Σ g(n) n^{-s}`.
fn times_zeta_2s(n: u64, g: impl Fn(u64) -> Float) -> Float {
    let mut acc = Float::with_val(PREC, 0);
    let mut d = 1;
    while d * d <= n {
        if n % (d * d) == 0 {
            acc += g(n / (d * d));
        }
        d += 1;
    }
    acc
}

fn dist(z: &MpComplex, x: &Float) -> f64 {
    z.dist(&MpComplex::from_real(x.clone()))
}

#[test]
fn standard_table_is_normalized_coefficients() {
    let f = eigenform(16, 500).unwrap();
    let t = standard_table(&f, 500, PREC).unwrap();
    for n in 1..=500u64 {
        assert!(dist(t.lambda(n).unwrap(), &lambda_exact(&f, n)) < 1e-30, "n = {n}");
    }
}

#[test]
fn adjoint_table_matches_square_index_convolution() {
    // L(s, ad f) = ζ(2s) Σ λ_f(n²) n^{-s}
    let f = eigenform(12, 40_000).unwrap();
    let t = adjoint_table(&f, 200, PREC).unwrap();
    for n in 1..=200u64 {
        let want = times_zeta_2s(n, |m| lambda_exact(&f, m * m));
        assert!(dist(t.lambda(n).unwrap(), &want) < 1e-28, "n = {n}");
    }
}

#[test]
fn rankin_table_matches_product_convolution() {
    // L(s, f × g) = ζ(2s) Σ λ_f(n) λ_g(n) n^{-s}
    let f = eigenform(12, 800).unwrap();
    let g = eigenform(18, 800).unwrap();
    let t = rankin_table(&f, &g, 800, PREC).unwrap();
    for n in 1..=800u64 {
        let want = times_zeta_2s(n, |m| lambda_exact(&f, m) * lambda_exact(&g, m));
        assert!(dist(t.lambda(n).unwrap(), &want) < 1e-28, "n = {n}");
    }
}

#[test]
fn von_mangoldt_of_standard_table() {
    // Λ_f(p^k) = (α^k + α^{-k}) log p = (λ(p^k) - λ(p^{k-2})) log p
    let f = eigenform(20, 1000).unwrap();
    let t = standard_table(&f, 1000, PREC).unwrap();
    for p in primes_up_to(1000) {
        let logp = Float::with_val(PREC, p).ln();
        let mut pk = p;
        let mut k = 1;
        while pk <= 1000 {
            let prev = if k >= 2 {
                lambda_exact(&f, pk / (p * p))
            } else {
                Float::with_val(PREC, 0)
            };
            let want = (lambda_exact(&f, pk) - prev) * &logp;
            assert!(dist(t.vonmangoldt(pk).unwrap(), &want) < 1e-28, "p^k = {pk}");
            pk *= p;
            k += 1;
        }
    }
    let z = zeta_table(100, PREC).unwrap();
    assert!(dist(z.vonmangoldt(64).unwrap(), &Float::with_val(PREC, 2).ln()) < 1e-35);
    assert!(z.vonmangoldt(12).is_none());
}

#[test]
fn cauchy_schwarz_inequalities_hold() {
    let f = eigenform(12, 2000).unwrap();
    let g = eigenform(22, 2000).unwrap();
    let a = rankin_table(&f, &f, 2000, PREC).unwrap();
    let b = rankin_table(&g, &g, 2000, PREC).unwrap();
    let ab = rankin_table(&f, &g, 2000, PREC).unwrap();
    let lam = check_lambda_ineq(&a, &b, &ab, 2000).unwrap();
    let vm = check_vonmangoldt_ineq(&a, &b, &ab, 2000).unwrap();
    assert!(lam.pass, "{lam:?}");
    assert!(vm.pass, "{vm:?}");
    assert!(lam.worst_ratio <= 1.0 + 1e-30);
}

#[test]
fn tables_are_multiplicative() {
    let f = eigenform(26, 3000).unwrap();
    for t in [
        standard_table(&f, 3000, PREC).unwrap(),
        adjoint_table(&f, 3000, PREC).unwrap(),
        rankin_table(&f, &f, 3000, PREC).unwrap(),
    ] {
        assert!(t.multiplicativity_defect() < 1e-30, "{}", t.kind().label());
    }
}

#[test]
fn out_of_range_index_is_an_error() {
    let t = zeta_table(10, PREC).unwrap();
    assert!(t.lambda(0).is_err());
    assert!(t.lambda(11).is_err());
    assert!(zeta_table(0, PREC).is_err());
}

fn roots_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The reciprocal of `Π (1 - r u)^{-1}` is the expanded polynomial `Π (1 - r u)`.
    #[test]
    fn reciprocal_of_geometric_product_is_polynomial(roots in roots_strategy(), extra in 0usize..6) {
        let order = roots.len() + extra;
        let rs: Vec<MpComplex> = roots.iter().map(|&(a, b)| MpComplex::from_f64(PREC, a, b)).collect();
        let series = LocalFactorSeries::from_inverse_roots(2, rs.clone(), order, PREC);
        let mut poly = vec![MpComplex::one(PREC)];
        for r in &rs {
            let mut next = poly.clone();
            next.push(MpComplex::zero(PREC));
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] -= &(r * c);
            }
            poly = next;
        }
        let recip = series.reciprocal().unwrap();
        for j in 0..=order {
            let want = poly.get(j).cloned().unwrap_or_else(|| MpComplex::zero(PREC));
            prop_assert!(recip.coeff(j).dist(&want) < 1e-30, "j = {}", j);
        }
    }

    /// Multiplying local series adds their inverse-root lists.
    #[test]
    fn product_concatenates_roots(a in roots_strategy(), b in roots_strategy()) {
        let order = 8;
        let to_mp = |v: &[(f64, f64)]| v.iter().map(|&(x, y)| MpComplex::from_f64(PREC, x, y)).collect::<Vec<_>>();
        let sa = LocalFactorSeries::from_inverse_roots(3, to_mp(&a), order, PREC);
        let sb = LocalFactorSeries::from_inverse_roots(3, to_mp(&b), order, PREC);
        let joined: Vec<MpComplex> = to_mp(&a).into_iter().chain(to_mp(&b)).collect();
        let sc = LocalFactorSeries::from_inverse_roots(3, joined, order, PREC);
        let (residual, _) = sa.mul(&sb).max_residual(&sc);
        prop_assert!(residual < 1e-25);
    }
}
