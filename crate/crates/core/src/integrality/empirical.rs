//! Measured denominator growth `e_p = max_n ord_p(d_n)/n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::int::{ord_p, prime_divisors};
use crate::error::Result;
use crate::picard::HolonomicRecurrence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeExponent {
    pub e: BigRational,
    /// Index where the maximum is attained first.
    pub at: usize,
}

/// A lower-bound measurement: larger `N` can only raise the exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalLevel {
    pub n_used: usize,
    pub exponents: BTreeMap<u64, PrimeExponent>,
    /// `Π p^⌈e_p⌉`
    pub integer_level: BigInt,
    /// False if some denominator had a prime factor outside the candidates.
    pub fully_factored: bool,
}

impl EmpiricalLevel {
    pub fn exponent(&self, p: u64) -> BigRational {
        self.exponents.get(&p).map(|x| x.e.clone()).unwrap_or_else(BigRational::zero)
    }
}

/// Primes that can occur in denominators: divisors of `L(m)` for `m < N`
/// and of the initial denominators.
fn candidate_primes(rec: &HolonomicRecurrence, n_max: usize) -> (BTreeSet<u64>, bool) {
    let mut out = BTreeSet::new();
    let mut complete = true;
    let mut add = |x: &BigInt| match prime_divisors(x, 1 << 20) {
        Some(ps) => out.extend(ps),
        None => complete = false,
    };
    for c in &rec.initials {
        add(c.denom());
    }
    for m in 0..n_max {
        let l = rec.leading.eval_i64(m as i64);
        if !l.is_zero() {
            add(&l);
        }
    }
    (out, complete)
}

pub fn empirical_level(rec: &HolonomicRecurrence, n_max: usize) -> Result<EmpiricalLevel> {
    let u = rec.expand(n_max)?;
    empirical_level_of(rec, &u)
}

/// As [`empirical_level`] on already expanded values `u_0 … u_N`.
pub fn empirical_level_of(rec: &HolonomicRecurrence, u: &[BigRational]) -> Result<EmpiricalLevel> {
    let n_max = u.len().saturating_sub(1);
    let (primes, mut complete) = candidate_primes(rec, n_max);
    let mut exps: BTreeMap<u64, PrimeExponent> = BTreeMap::new();
    for (n, x) in u.iter().enumerate().skip(1) {
        let d = x.denom();
        if d.is_one() {
            continue;
        }
        let mut rest = d.clone();
        for &p in &primes {
            let k = ord_p(&rest, p);
            if k == 0 {
                continue;
            }
            rest /= num_traits::pow(BigInt::from(p), k as usize);
            let e = BigRational::new(BigInt::from(k), BigInt::from(n));
            let entry = exps.entry(p).or_insert(PrimeExponent { e: BigRational::zero(), at: n });
            if e > entry.e {
                *entry = PrimeExponent { e, at: n };
            }
        }
        if !rest.is_one() {
            complete = false;
        }
    }
    let mut level = BigInt::one();
    for (p, x) in &exps {
        let c = x.e.ceil().to_integer();
        level *= num_traits::pow(BigInt::from(*p), usize::try_from(c).unwrap());
    }
    Ok(EmpiricalLevel { n_used: n_max, exponents: exps, integer_level: level, fully_factored: complete })
}
