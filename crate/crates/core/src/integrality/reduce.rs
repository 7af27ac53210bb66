//! p-adic sharpening of an integral recurrence of the shape
//! `(n+1)² u_{n+1} = Σ p^{k_i} q_i(n) u_{n−i}`, `u₀ = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::int::ord_p;
use crate::algebra::PolyZ;
use crate::error::{Error, Result};
use crate::picard::HolonomicRecurrence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub p: u64,
    /// `ord_p` of each weight's content; `None` for a vanishing weight.
    pub k: Vec<Option<u32>>,
    pub k0: i64,
    pub s: i64,
    /// Recurrence for `u_n / p^(n s)`.
    pub reduced: HolonomicRecurrence,
}

fn check_shape(rec: &HolonomicRecurrence) -> Result<()> {
    if rec.leading != PolyZ::from_i64s(&[1, 2, 1]) {
        return Err(Error::ReductionHypotheses(format!(
            "leading weight is {} rather than (n+1)^2",
            rec.leading.to_string_var("n")
        )));
    }
    if rec.initials != vec![BigRational::one()] {
        return Err(Error::ReductionHypotheses("expected the single initial value u0 = 1".into()));
    }
    Ok(())
}

fn valuations(rec: &HolonomicRecurrence, p: u64) -> Vec<Option<u32>> {
    rec.terms
        .iter()
        .map(|t| if t.is_zero() { None } else { Some(ord_p(&t.content(), p)) })
        .collect()
}

/// Largest `k₀` with `k_i ≥ (i+1)·k₀` for all nonvanishing weights.
pub fn admissible_k0(rec: &HolonomicRecurrence, p: u64) -> Option<i64> {
    valuations(rec, p)
        .iter()
        .enumerate()
        .filter_map(|(i, k)| k.map(|k| k as i64 / (i as i64 + 1)))
        .min()
}

/// `s = ⌈k₀ − 2/(p−1)⌉`
pub fn reduction_exponent(k0: i64, p: u64) -> i64 {
    let x = BigRational::from_integer(k0.into()) - BigRational::new(2.into(), BigInt::from(p - 1));
    i64::try_from(x.ceil().to_integer()).unwrap()
}

/// Reduction with the largest admissible `k₀`.
pub fn sharperub_reduce(rec: &HolonomicRecurrence, p: u64) -> Result<ReductionCertificate> {
    check_shape(rec)?;
    let k0 = admissible_k0(rec, p)
        .ok_or_else(|| Error::ReductionHypotheses("recurrence has no nonvanishing weight".into()))?;
    sharperub_reduce_with(rec, p, k0)
}

/// Reduction with a caller-chosen `k₀`; refuses when some weight is not
/// divisible by `p^((i+1)k₀)`.
pub fn sharperub_reduce_with(rec: &HolonomicRecurrence, p: u64, k0: i64) -> Result<ReductionCertificate> {
    check_shape(rec)?;
    let k = valuations(rec, p);
    for (i, ki) in k.iter().enumerate() {
        if let Some(ki) = ki {
            if (*ki as i64) < (i as i64 + 1) * k0 {
                return Err(Error::ReductionHypotheses(format!(
                    "weight {i} has p-adic content {ki} < {}",
                    (i as i64 + 1) * k0
                )));
            }
        }
    }
    let s = reduction_exponent(k0, p);
    let pb = BigInt::from(p);
    let terms = rec
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let e = (i as i64 + 1) * s;
            if e >= 0 {
                t.div_scalar_exact(&num_traits::pow(pb.clone(), e as usize))
            } else {
                t.scale(&num_traits::pow(pb.clone(), (-e) as usize))
            }
        })
        .collect();
    let reduced = HolonomicRecurrence::new(rec.leading.clone(), terms, rec.initials.clone(), rec.offset);
    Ok(ReductionCertificate { p, k, k0, s, reduced })
}

/// Checks that `u_n / p^(ns)` is p-integral for `n ≤ n_max` by direct
/// expansion of the original recurrence.
pub fn verify_reduction(rec: &HolonomicRecurrence, cert: &ReductionCertificate, n_max: usize) -> Result<bool> {
    let u = rec.expand(n_max)?;
    Ok(u.iter().enumerate().all(|(n, x)| {
        x.is_zero() || ord_p(x.numer(), cert.p) as i64 - ord_p(x.denom(), cert.p) as i64 >= n as i64 * cert.s
    }))
}
