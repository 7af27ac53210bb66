//! Small integer utilities: valuations, primes, factoring of modest values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exponent of `p` in a nonzero integer; `u32::MAX` for zero.
pub fn ord_p(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        x = q;
        k += 1;
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `x` by trial division, or `None` if a cofactor above
/// `limit²` remains.
pub fn prime_divisors(x: &BigInt, limit: u64) -> Option<Vec<u64>> {
    let mut x = x.abs();
    let mut out = Vec::new();
    if x.is_zero() {
        return Some(out);
    }
    let mut d = 2u64;
    while d <= limit {
        let bd = BigInt::from(d);
        if (&x % &bd).is_zero() {
            out.push(d);
            while (&x % &bd).is_zero() {
                x /= &bd;
            }
        }
        if BigInt::from(d) * BigInt::from(d) > x {
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if x > BigInt::from(1) {
        match x.to_u64() {
            Some(v) if (v as u128) <= (limit as u128) * (limit as u128) => out.push(v),
            _ => return None,
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(ord_p(&BigInt::from(96), 2), 5);
        assert_eq!(ord_p(&BigInt::from(-81), 3), 4);
        assert_eq!(ord_p(&BigInt::from(7), 5), 0);
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime(97) && !is_prime(91));
        assert_eq!(prime_divisors(&BigInt::from(2 * 2 * 3 * 101), 1000), Some(vec![2, 3, 101]));
        assert_eq!(prime_divisors(&BigInt::from(1_000_003u64), 10), None);
    }
}
