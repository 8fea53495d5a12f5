//! Small integer number theory used throughout: trial-division primality,
//! factorization, divisors, Euler phi, p-parts.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Prime factorization as (prime, exponent) pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, k) in factorize(n) {
        let snapshot = out.clone();
        let mut pe = 1;
        for _ in 0..k {
            pe *= p;
            out.extend(snapshot.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    for (p, _) in factorize(n) {
        result = result / p * (p - 1);
    }
    result
}

/// The p-part of `m`: the largest power of `p` dividing `m`.
pub fn p_part(m: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::Defect("p_part of zero".into()));
    }
    let mut part = 1;
    let mut m = m;
    while m % p == 0 {
        part *= p;
        m /= p;
    }
    Ok(part)
}

/// The p'-part: `m` with all factors of `p` removed.
pub fn p_prime_part(m: u64, p: u64) -> Result<u64> {
    Ok(m / p_part(m, p)?)
}

/// Exact integer square root if `n` is a perfect square.
pub fn perfect_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    for cand in r.saturating_sub(2)..=r + 2 {
        if cand * cand == n {
            return Some(cand);
        }
    }
    None
}

/// Smallest prime `q` with `q > floor` and `q ≡ 1 (mod m)`.
pub fn next_prime_one_mod(m: u64, floor: u64) -> u64 {
    let mut q = floor / m * m + 1;
    while q <= floor || !is_prime(q) {
        q += m;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_part_examples() {
        assert_eq!(p_part(48, 2).unwrap(), 16);
        assert_eq!(p_part(7, 2).unwrap(), 1);
        assert_eq!(p_part(216, 3).unwrap(), 27);
        assert!(p_part(10, 4).is_err());
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn phi_values() {
        for (n, expected) in [(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (8, 4), (12, 4), (156, 48)] {
            assert_eq!(euler_phi(n), expected, "phi({n})");
        }
    }

    #[test]
    fn dixon_prime_search() {
        assert_eq!(next_prime_one_mod(24, 48), 73);
        assert_eq!(next_prime_one_mod(1, 1), 2);
        assert_eq!(next_prime_one_mod(156, 156), 157);
    }

    #[test]
    fn perfect_squares_recognized() {
        assert_eq!(perfect_sqrt(49), Some(7));
        assert_eq!(perfect_sqrt(48), None);
        assert_eq!(perfect_sqrt(0), Some(0));
    }
}
