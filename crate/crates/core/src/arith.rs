//! Integer utilities: gcd, Möbius sieve, prime enumeration, divisor counts
//! and partial sums of `1/ζ(2)`.

use crate::error::{Error, Result};

/// `6/π² = 1/ζ(2)`, the density of coprime pairs.
pub const INV_ZETA2: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

const SEGMENT_LEN: u64 = 1 << 18;

#[inline]
pub fn gcd(u: u64, v: u64) -> u64 {
    num_integer::gcd(u, v)
}

/// Table of `μ(d)` for `d = 1..=limit`, one signed byte per entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: Vec<i8>,
}

impl MobiusTable {
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `μ(d)`; panics when `d` is zero or beyond the limit.
    #[inline]
    pub fn get(&self, d: u64) -> i8 {
        assert!(d >= 1, "μ(0) is undefined");
        self.values[d as usize]
    }

    /// Values for `d = 1..=limit`.
    pub fn values(&self) -> &[i8] {
        &self.values[1..]
    }

    pub fn mertens(&self, n: u64) -> i64 {
        self.values[1..=n as usize].iter().map(|&m| m as i64).sum()
    }
}

/// Linear sieve for the Möbius function.
pub fn mobius_sieve(limit: u64) -> Result<MobiusTable> {
    if limit == 0 {
        return Err(Error::InvalidArgument(
            "mobius_sieve limit must be >= 1".into(),
        ));
    }
    let n = limit as usize;
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &q in &primes {
            let m = i * q;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % q == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    Ok(MobiusTable { values: mu })
}

/// Plain sieve of Eratosthenes up to `limit` inclusive.
fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut is_p = vec![true; n + 1];
    is_p[0] = false;
    is_p[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is_p[i] {
            let mut j = i * i;
            while j <= n {
                is_p[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is_p.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// Primes in `[lo, hi]`, ascending, via a segmented sieve.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    let lo = lo.max(2);
    if lo > hi {
        return Vec::new();
    }
    let base = small_primes(isqrt(hi));
    let mut out = Vec::new();
    let mut seg_lo = lo;
    let mut mark = vec![true; SEGMENT_LEN as usize];
    while seg_lo <= hi {
        let seg_hi = hi.min(seg_lo.saturating_add(SEGMENT_LEN - 1));
        let len = (seg_hi - seg_lo + 1) as usize;
        mark[..len].fill(true);
        for &q in &base {
            if q * q > seg_hi {
                break;
            }
            let mut start = seg_lo.div_ceil(q) * q;
            if start < q * q {
                start = q * q;
            }
            let mut j = start;
            while j <= seg_hi {
                mark[(j - seg_lo) as usize] = false;
                j += q;
            }
        }
        out.extend(
            mark[..len]
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(seg_lo + i as u64)),
        );
        if seg_hi == hi {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |s| s <= n) {
        r += 1;
    }
    r
}

/// Deterministic primality for `u64` (trial division for small inputs,
/// Miller–Rabin with a fixed witness set otherwise).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= k {
        if k % q == 0 {
            let mut e = 0;
            while k % q == 0 {
                k /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

/// τ(k): number of positive divisors.
pub fn divisor_count(k: u64) -> u64 {
    assert!(k >= 1);
    factorize(k).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// ω(k): number of distinct prime divisors.
pub fn prime_omega(k: u64) -> u32 {
    assert!(k >= 1);
    factorize(k).len() as u32
}

/// `Σ_{d ≤ D} μ(d)/d²`, summed in ascending `d`.
pub fn zeta2_inverse_partial(d_max: u64) -> f64 {
    let table = mobius_sieve(d_max.max(1)).expect("limit >= 1");
    table
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .map(|(i, &m)| {
            let d = (i + 1) as f64;
            m as f64 / (d * d)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Möbius by direct factorization.
    fn mu_oracle(n: u64) -> i8 {
        let f = factorize(n);
        if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn trial_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(1, 1), 1);
        assert_eq!(gcd(4, 4), 4);
        assert_eq!(gcd(2, 3), 1);
        assert_eq!(gcd(12, 18), gcd(18, 12));
    }

    #[test]
    fn mobius_small() {
        let t = mobius_sieve(30).unwrap();
        assert_eq!(&t.values()[..6], &[1, -1, -1, 0, -1, 1]);
        assert_eq!(t.get(4), 0);
        assert_eq!(t.get(30), -1);
        assert!(mobius_sieve(0).is_err());
        assert_eq!(mobius_sieve(1).unwrap().values(), &[1]);
    }

    #[test]
    fn mobius_matches_factorization_and_identity() {
        let limit = 10_000;
        let t = mobius_sieve(limit).unwrap();
        for d in 1..=limit {
            assert_eq!(t.get(d), mu_oracle(d), "d = {d}");
            assert!(t.mertens(d).unsigned_abs() <= d);
        }
        for n in 1..=limit {
            let s: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| t.get(d) as i64)
                .sum();
            assert_eq!(s, (n == 1) as i64, "n = {n}");
        }
    }

    #[test]
    fn primes_in_range_examples() {
        assert_eq!(primes_in_range(10, 20), vec![11, 13, 17, 19]);
        assert!(primes_in_range(24, 28).is_empty());
        assert_eq!(primes_in_range(2, 2), vec![2]);
        assert!(primes_in_range(20, 10).is_empty());
    }

    #[test]
    fn prime_counts_match_trial_division() {
        for (n, expected) in [(100u64, 25usize), (1000, 168), (10_000, 1229)] {
            let oracle = (2..=n).filter(|&k| trial_prime(k)).count();
            assert_eq!(oracle, expected);
            assert_eq!(primes_in_range(2, n).len(), expected);
        }
    }

    #[test]
    fn segmented_sieve_across_segment_boundaries() {
        let lo = SEGMENT_LEN - 50;
        let hi = 3 * SEGMENT_LEN + 50;
        let got = primes_in_range(lo, hi);
        let expect: Vec<u64> = (lo..=hi).filter(|&k| is_prime(k)).collect();
        assert_eq!(got, expect);
        assert!(got.iter().all(|&k| trial_prime(k)));
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_prime(n), "n = {n}");
        }
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297));
    }

    #[test]
    fn divisor_functions() {
        assert_eq!((divisor_count(12), prime_omega(12)), (6, 2));
        assert_eq!((divisor_count(1), prime_omega(1)), (1, 0));
        assert_eq!((divisor_count(97), prime_omega(97)), (2, 1));
        for k in 1..500u64 {
            let tau = (1..=k).filter(|d| k % d == 0).count() as u64;
            assert_eq!(divisor_count(k), tau);
        }
    }

    #[test]
    fn zeta2_partials() {
        assert_eq!(zeta2_inverse_partial(1), 1.0);
        assert_eq!(zeta2_inverse_partial(2), 0.75);
        // 6/π² to 20 digits, written out independently of `PI`.
        let reference = 0.607_927_101_854_026_628_66_f64;
        assert!((INV_ZETA2 - reference).abs() < 1e-15);
        assert!((zeta2_inverse_partial(1_000_000) - reference).abs() < 1e-5);
    }

    #[test]
    fn zeta2_partials_bounded_and_cauchy() {
        for d in [2u64, 3, 5, 10, 17, 100, 1000, 5000] {
            let a = zeta2_inverse_partial(d);
            let b = zeta2_inverse_partial(2 * d);
            assert!((0.5..=1.0).contains(&a), "D = {d}: {a}");
            assert!((a - b).abs() <= 1.0 / d as f64);
        }
    }
}
