//! Truncated power series with exact integer coefficients.
//!
//! Products go through Kronecker substitution: both operands are packed into
//! single GMP integers with wide enough slots, multiplied once, and unpacked.
//! This keeps the cost close to one big-integer product instead of the
//! quadratic schoolbook convolution.

use rug::integer::Order;
use rug::Integer;

/// `Σ_{n=0}^{len-1} c_n q^n`, everything at `q^len` and above discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<Integer>,
}

impl IntSeries {
    pub fn from_coeffs(coeffs: Vec<Integer>) -> Self {
        IntSeries { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        IntSeries {
            coeffs: vec![Integer::new(); len],
        }
    }

    pub fn one(len: usize) -> Self {
        let mut s = IntSeries::zero(len);
        if len > 0 {
            s.coeffs[0] = Integer::from(1);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> &Integer {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn truncate(&mut self, len: usize) {
        self.coeffs.truncate(len);
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        let len = self.len().min(other.len());
        IntSeries {
            coeffs: (0..len)
                .map(|i| Integer::from(&self.coeffs[i] + &other.coeffs[i]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        let len = self.len().min(other.len());
        IntSeries {
            coeffs: (0..len)
                .map(|i| Integer::from(&self.coeffs[i] - &other.coeffs[i]))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Integer) -> IntSeries {
        IntSeries {
            coeffs: self.coeffs.iter().map(|a| Integer::from(a * c)).collect(),
        }
    }

    /// Exact division of every coefficient; panics if some coefficient is not
    /// a multiple of `d` (callers only divide by known common factors).
    pub fn div_exact(&self, d: &Integer) -> IntSeries {
        IntSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    assert!(a.is_divisible(d), "coefficient not divisible by {d}");
                    Integer::from(a.div_exact_ref(d))
                })
                .collect(),
        }
    }

    /// Product truncated to the shorter operand.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let len = self.len().min(other.len());
        IntSeries {
            coeffs: kronecker_mul(&self.coeffs[..len], &other.coeffs[..len], len),
        }
    }

    pub fn pow(&self, e: u32) -> IntSeries {
        let mut acc = IntSeries::one(self.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Exact product of two integer coefficient vectors, first `out_len` terms.
pub fn kronecker_mul(a: &[Integer], b: &[Integer], out_len: usize) -> Vec<Integer> {
    let (ap, an) = split_signs(a);
    let (bp, bn) = split_signs(b);
    let mut out = vec![Integer::new(); out_len];
    let mut accumulate = |x: &Option<Vec<Integer>>, y: &Option<Vec<Integer>>, negate: bool| {
        if let (Some(x), Some(y)) = (x, y) {
            let prod = kronecker_mul_nonneg(x, y, out_len);
            for (o, v) in out.iter_mut().zip(prod) {
                if negate {
                    *o -= v;
                } else {
                    *o += v;
                }
            }
        }
    };
    accumulate(&ap, &bp, false);
    accumulate(&an, &bn, false);
    accumulate(&ap, &bn, true);
    accumulate(&an, &bp, true);
    out
}

/// `(positive part, magnitude of negative part)`; `None` when identically zero.
fn split_signs(a: &[Integer]) -> (Option<Vec<Integer>>, Option<Vec<Integer>>) {
    let mut pos = Vec::with_capacity(a.len());
    let mut neg = Vec::with_capacity(a.len());
    let (mut any_pos, mut any_neg) = (false, false);
    for c in a {
        if *c > 0 {
            any_pos = true;
            pos.push(c.clone());
            neg.push(Integer::new());
        } else if *c < 0 {
            any_neg = true;
            pos.push(Integer::new());
            neg.push(Integer::from(-c));
        } else {
            pos.push(Integer::new());
            neg.push(Integer::new());
        }
    }
    (any_pos.then_some(pos), any_neg.then_some(neg))
}

fn kronecker_mul_nonneg(a: &[Integer], b: &[Integer], out_len: usize) -> Vec<Integer> {
    let bits_a = a.iter().map(|x| x.significant_bits()).max().unwrap_or(0);
    let bits_b = b.iter().map(|x| x.significant_bits()).max().unwrap_or(0);
    let terms = a.len().min(b.len()).max(1) as u32;
    let slot_bits = bits_a + bits_b + (32 - terms.leading_zeros()) + 1;
    let limbs = slot_bits.div_ceil(64) as usize;

    let pack = |v: &[Integer]| -> Integer {
        let mut digits = vec![0u64; v.len() * limbs];
        for (i, c) in v.iter().enumerate() {
            let d = c.to_digits::<u64>(Order::Lsf);
            digits[i * limbs..i * limbs + d.len()].copy_from_slice(&d);
        }
        Integer::from_digits(&digits, Order::Lsf)
    };
    let product = pack(a) * pack(b);
    let mut digits = product.to_digits::<u64>(Order::Lsf);
    digits.resize(out_len * limbs, 0);
    (0..out_len)
        .map(|i| Integer::from_digits(&digits[i * limbs..(i + 1) * limbs], Order::Lsf))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn schoolbook(a: &[i64], b: &[i64], len: usize) -> Vec<Integer> {
        (0..len)
            .map(|n| {
                let mut s = Integer::new();
                for i in 0..=n {
                    if i < a.len() && n - i < b.len() {
                        s += Integer::from(a[i]) * Integer::from(b[n - i]);
                    }
                }
                s
            })
            .collect()
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(
            a in proptest::collection::vec(-1_000_000_000_000i64..1_000_000_000_000, 1..40),
            b in proptest::collection::vec(-1_000_000_000_000i64..1_000_000_000_000, 1..40),
        ) {
            let len = a.len().min(b.len());
            let ai: Vec<Integer> = a[..len].iter().map(|&x| Integer::from(x)).collect();
            let bi: Vec<Integer> = b[..len].iter().map(|&x| Integer::from(x)).collect();
            prop_assert_eq!(kronecker_mul(&ai, &bi, len), schoolbook(&a[..len], &b[..len], len));
        }
    }

    #[test]
    fn geometric_series_squared() {
        // (1 - q)^{-1} squared = Σ (n+1) q^n
        let g = IntSeries::from_coeffs(vec![Integer::from(1); 12]);
        let sq = g.mul(&g);
        for n in 0..12 {
            assert_eq!(*sq.coeff(n), Integer::from(n + 1));
        }
    }

    #[test]
    fn wide_coefficients_survive_packing() {
        let big = Integer::from(1) << 300u32;
        let a = IntSeries::from_coeffs(vec![big.clone(), Integer::from(-3)]);
        let b = IntSeries::from_coeffs(vec![Integer::from(-1), big.clone()]);
        let c = a.mul(&b);
        assert_eq!(*c.coeff(0), -big.clone());
        assert_eq!(*c.coeff(1), Integer::from(&big * &big) + 3);
    }
}
