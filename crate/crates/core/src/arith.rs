//! Elementary arithmetic: sieves, factorization, divisor counts, and the
//! fixed-shape summation every parallel reduction in the crate goes through.

use std::ops::Add;

use rayon::prelude::*;

/// Sieve of Eratosthenes; all primes `p <= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest-prime-factor table for `0..=limit`.
#[derive(Debug, Clone)]
pub struct FactorTable {
    spf: Vec<u32>,
}

impl FactorTable {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] != 0 {
                continue;
            }
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        FactorTable { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Prime factorization in increasing prime order.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(n as usize <= self.limit(), "n beyond factor table");
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// `Some((p, k))` when `n = p^k` with `k >= 1`.
    pub fn prime_power(&self, n: u64) -> Option<(u64, u32)> {
        match self.factorize(n).as_slice() {
            [(p, k)] => Some((*p, *k)),
            _ => None,
        }
    }
}

/// Trial-division factorization for one-off use.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of positive divisors.
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Block length of [`det_sum`]; fixed so the reduction tree never depends on
/// the number of worker threads.
pub const SUM_BLOCK: usize = 256;

/// Sum with a fixed reduction shape: sequential inside blocks of
/// [`SUM_BLOCK`] elements, then a balanced pairwise tree over block sums.
/// The result is bit-identical for any rayon pool size.
pub fn det_sum<T>(values: &[T]) -> T
where
    T: Copy + Default + Add<Output = T> + Send + Sync,
{
    let partials: Vec<T> = values
        .par_chunks(SUM_BLOCK)
        .map(|c| c.iter().fold(T::default(), |acc, &v| acc + v))
        .collect();
    tree_sum(&partials)
}

fn tree_sum<T>(values: &[T]) -> T
where
    T: Copy + Default + Add<Output = T>,
{
    match values.len() {
        0 => T::default(),
        1 => values[0],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}

/// Evaluate `f(i)` for `i in 0..n` in parallel and sum with [`det_sum`].
pub fn det_sum_map<T, F>(n: usize, f: F) -> T
where
    T: Copy + Default + Add<Output = T> + Send + Sync,
    F: Fn(usize) -> T + Sync + Send,
{
    let values: Vec<T> = (0..n).into_par_iter().map(f).collect();
    det_sum(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let primes = primes_up_to(200);
        let brute: Vec<u64> = (0..=200).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, brute);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
    }

    #[test]
    fn factor_table_agrees_with_trial_division() {
        let t = FactorTable::new(5000);
        for n in 1..=5000u64 {
            assert_eq!(t.factorize(n), factorize(n));
        }
        assert_eq!(t.prime_power(81), Some((3, 4)));
        assert_eq!(t.prime_power(12), None);
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert_eq!(gcd(12, 18), 6);
    }

    #[test]
    fn det_sum_is_thread_count_independent() {
        let xs: Vec<f64> = (0..10_000)
            .map(|i| ((i as f64) * 0.37).sin() / (i + 1) as f64)
            .collect();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| det_sum(&xs));
        let b = four.install(|| det_sum(&xs));
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
