//! q-expansions of eta quotients and periodic-exponent products, modular
//! forms as series in a Hauptmodul, and Atkin-Swinnerton-Dyer congruences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::int::primes_up_to;
use crate::algebra::Series;
use crate::error::{Error, Result};
use crate::picard::HolonomicRecurrence;

/// `q^leading_power · ∏_{n≥1} (1 − qⁿ)^{c_(n mod M)}` with `M = exponents.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicExponentProduct {
    pub leading_power: i64,
    pub exponents: Vec<i64>,
}

impl PeriodicExponentProduct {
    /// Exponents depending only on `±n mod M`; `half[k]` is used for
    /// `n ≡ ±k`.
    pub fn symmetric(leading_power: i64, period: usize, half: &[i64]) -> Self {
        let exponents = (0..period).map(|r| half[r.min(period - r)]).collect();
        PeriodicExponentProduct { leading_power, exponents }
    }

    pub fn period(&self) -> usize {
        self.exponents.len()
    }

    fn exponent(&self, n: usize) -> i64 {
        self.exponents[n % self.exponents.len()]
    }
}

/// Weight one form for Γ₁(7), `c_n = 2, 0, 1, −2` for `n ≡ 0, ±1, ±2, ±3`.
pub fn gamma1_7_weight_one() -> PeriodicExponentProduct {
    PeriodicExponentProduct::symmetric(1, 7, &[2, 0, 1, -2])
}

/// Hauptmodul for Γ₁(7), `d_n = 0, 3, −2, −1`.
pub fn gamma1_7_hauptmodul() -> PeriodicExponentProduct {
    PeriodicExponentProduct::symmetric(1, 7, &[0, 3, -2, -1])
}

/// `∏ η(m τ)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    pub factors: Vec<(u64, i64)>,
}

/// `η(τ)³ η(7τ)³`, the weight three cusp form for Γ₁(7).
pub fn gamma1_7_cusp_form() -> EtaQuotient {
    EtaQuotient { factors: vec![(1, 3), (7, 3)] }
}

/// In-place multiplication by `(1 − q^n)^c` of coefficients `a[0..]`.
fn mul_one_minus_pow(a: &mut [BigInt], n: usize, c: i64) {
    if n >= a.len() {
        return;
    }
    if c > 0 {
        for _ in 0..c {
            for k in (n..a.len()).rev() {
                let t = a[k - n].clone();
                a[k] -= t;
            }
        }
    } else {
        for _ in 0..(-c) {
            for k in n..a.len() {
                let t = a[k - n].clone();
                a[k] += t;
            }
        }
    }
}

fn to_series(offset: i64, v: Vec<BigInt>) -> Series {
    Series::from_bigints(offset, v)
}

/// Coefficients of the product through `q^n_max` (inclusive).
pub fn expand_product(spec: &PeriodicExponentProduct, n_max: usize) -> Series {
    let len = (n_max as i64 - spec.leading_power + 1).max(0) as usize;
    let mut a = vec![BigInt::zero(); len];
    if len > 0 {
        a[0] = BigInt::one();
    }
    for n in 1..len {
        mul_one_minus_pow(&mut a, n, spec.exponent(n));
    }
    to_series(spec.leading_power, a)
}

/// Coefficients of the eta quotient through `q^n_max` (inclusive).
pub fn expand_eta_quotient(spec: &EtaQuotient, n_max: usize) -> Result<Series> {
    let weight: i64 = spec.factors.iter().map(|&(m, e)| m as i64 * e).sum();
    if weight % 24 != 0 {
        return Err(Error::NonIntegralQExponent);
    }
    let lead = weight / 24;
    let len = (n_max as i64 - lead + 1).max(0) as usize;
    let mut a = vec![BigInt::zero(); len];
    if len > 0 {
        a[0] = BigInt::one();
    }
    for &(m, e) in &spec.factors {
        let m = m as usize;
        let mut n = m;
        while n < len {
            mul_one_minus_pow(&mut a, n, e);
            n += m;
        }
    }
    Ok(to_series(lead, a))
}

/// Coefficients `v_n` of `f = Σ v_n tⁿ` where both are given as q-series
/// and `t = q + …`.
pub fn form_in_hauptmodul(fq: &Series, tq: &Series) -> Result<Series> {
    let inv = tq.reversion()?;
    fq.compose(&inv)
}

/// Outcome of comparing `f·(q/t)·dt/dq` with `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerrillOutcome {
    pub checked_through: usize,
    pub first_mismatch: Option<i64>,
}

impl VerrillOutcome {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

fn integer_coeffs(s: &Series, upto: i64) -> Result<Vec<BigInt>> {
    if s.order() <= upto {
        return Err(Error::InsufficientPrecision { required: upto + 1 });
    }
    (0..=upto)
        .map(|e| {
            let c = s.coeff(e).unwrap_or_else(BigRational::zero);
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Hypothesis(format!("non-integral q-coefficient at q^{e}")))
            }
        })
        .collect()
}

/// Checks `f·(q/t)·dt/dq = g` through `q^n`. With `t = q·T` this is
/// `f·(T + q·T') = g·T`, which needs no division.
pub fn verrill_identity_check(fq: &Series, tq: &Series, gq: &Series, n: usize) -> Result<VerrillOutcome> {
    let n_i = n as i64;
    if tq.offset() != 1 || tq.coeff(1) != Some(BigRational::one()) {
        return Err(Error::Hypothesis("t must be q + O(q²)".into()));
    }
    let f = integer_coeffs(fq, n_i)?;
    let g = integer_coeffs(gq, n_i)?;
    // f and g are O(q), so T through q^(n-1) fixes everything up to q^n
    let mut big_t = integer_coeffs(&tq.shift(-1), n_i - 1)?;
    big_t.push(BigInt::zero());
    let d: Vec<BigInt> = big_t.iter().enumerate().map(|(k, c)| c * BigInt::from(k as u64 + 1)).collect();
    let conv = |a: &[BigInt], b: &[BigInt], k: usize| -> BigInt {
        (0..=k).filter(|&i| !a[i].is_zero() && !b[k - i].is_zero()).map(|i| &a[i] * &b[k - i]).sum()
    };
    for k in 0..=n {
        if conv(&f, &d, k) != conv(&g, &big_t, k) {
            return Ok(VerrillOutcome { checked_through: n, first_mismatch: Some(k as i64) });
        }
    }
    Ok(VerrillOutcome { checked_through: n, first_mismatch: None })
}

/// `Σ a_d · g(d τ)` through `q^n_max`.
pub fn dilation_sum(g: &Series, terms: &[(u64, i64)], n_max: usize) -> Series {
    let mut out = vec![BigRational::zero(); n_max + 1];
    for &(d, a) in terms {
        for (k, slot) in out.iter_mut().enumerate() {
            if k as u64 % d == 0 {
                if let Some(c) = g.coeff((k as u64 / d) as i64) {
                    *slot += c * BigRational::from_integer(a.into());
                }
            }
        }
    }
    Series::new(0, out)
}

/// Euler's criterion, `a^((p−1)/2) mod p` mapped to −1, 0, 1.
pub fn legendre_symbol(a: i64, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let r = BigInt::from(a).mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        -1
    }
}

/// The recurrence `n² v_{n+1} = (9n²−9n+3)v_n − (13n²−26n+15)v_{n−1}
/// + (2n−3)²v_{n−2} + (n−2)²v_{n−3}` with `v₀ = 0`, `v₁ = 1`.
pub fn hauptmodul_recurrence() -> HolonomicRecurrence {
    HolonomicRecurrence::from_i64(
        &[0, 0, 1],
        &[&[3, -9, 9], &[-15, 26, -13], &[9, -12, 4], &[4, -4, 1]],
        &[0, 1],
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceEntry {
    pub p: u64,
    pub r: u32,
    pub m: u64,
    /// Left side reduced into `[0, p^r)`.
    pub residue: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub entries: Vec<CongruenceEntry>,
    pub passed: usize,
    pub failed: usize,
    pub notes: Vec<String>,
}

impl CongruenceReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn first_failure(&self) -> Option<&CongruenceEntry> {
        self.entries.iter().find(|e| !e.pass)
    }
}

/// Evaluates `v_{mp^r} − γ_p v_{mp^{r−1}} + (p|level) p² v_{mp^{r−2}}`
/// mod `p^r` for primes `p ≤ p_max` (skipping `level`), `1 ≤ r ≤ r_max`
/// and `m ≥ 1` with `m p^r ≤ n_max`. For `r = 1` the two-term form
/// `v_{mp} − γ_p v_m` is used. `gamma[k]` is the coefficient of `q^k`.
pub fn asd_congruence_sweep(
    v: &[BigInt],
    gamma: &[BigInt],
    level: u64,
    p_max: u64,
    r_max: u32,
    n_max: usize,
) -> Result<CongruenceReport> {
    if v.len() <= n_max {
        return Err(Error::InsufficientPrecision { required: n_max as i64 + 1 });
    }
    let mut notes = Vec::new();
    let primes: Vec<u64> = primes_up_to(p_max)
        .into_iter()
        .filter(|&p| {
            if p == level {
                notes.push(format!("p = {p} divides the level; skipped"));
                false
            } else {
                true
            }
        })
        .collect();
    if let Some(&p) = primes.iter().find(|&&p| gamma.len() <= p as usize) {
        return Err(Error::InsufficientPrecision { required: p as i64 + 1 });
    }
    let per_prime: Vec<Vec<CongruenceEntry>> = primes
        .par_iter()
        .map(|&p| {
            let gp = &gamma[p as usize];
            let eps = legendre_symbol(p as i64, level);
            let pb = BigInt::from(p);
            let mut out = Vec::new();
            for r in 1..=r_max {
                let pr = num_traits::pow(pb.clone(), r as usize);
                let Some(pr_u) = pr.to_u64() else { break };
                if pr_u as usize > n_max {
                    break;
                }
                let mut m = 1u64;
                while (m * pr_u) as usize <= n_max {
                    let hi = (m * pr_u) as usize;
                    let mid = hi / p as usize;
                    let mut lhs = &v[hi] - gp * &v[mid];
                    if r >= 2 {
                        let lo = mid / p as usize;
                        lhs += BigInt::from(eps) * &pb * &pb * &v[lo];
                    }
                    let res = lhs.mod_floor(&pr);
                    out.push(CongruenceEntry { p, r, m, residue: res.to_string(), pass: res.is_zero() });
                    m += 1;
                }
            }
            out
        })
        .collect();
    let entries: Vec<CongruenceEntry> = per_prime.into_iter().flatten().collect();
    let passed = entries.iter().filter(|e| e.pass).count();
    let failed = entries.len() - passed;
    Ok(CongruenceReport { entries, passed, failed, notes })
}

/// Integer values `v_0 … v_N` of the Hauptmodul expansion.
pub fn hauptmodul_coefficients(n_max: usize) -> Result<Vec<BigInt>> {
    let (v, bad) = hauptmodul_recurrence().expand_integral(n_max);
    match bad {
        None => Ok(v),
        Some(n) => Err(Error::Hypothesis(format!("non-integral coefficient at index {n}"))),
    }
}

/// `Σ c_n n qⁿ/(1−qⁿ)` expanded through `q^n_max`; equals `−q d/dq log` of
/// the product.
pub fn log_derivative_series(spec: &PeriodicExponentProduct, n_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n_max + 1];
    for n in 1..=n_max {
        let c = spec.exponent(n) * n as i64;
        if c == 0 {
            continue;
        }
        let mut k = n;
        while k <= n_max {
            out[k] += c;
            k += n;
        }
    }
    out
}

/// `q·d/dq` of a q-series, coefficientwise.
pub fn theta(s: &Series) -> Series {
    let c = s.coeffs().iter().enumerate().map(|(i, c)| c * BigRational::from_integer((s.offset() + i as i64).into()));
    Series::new(s.offset(), c.collect())
}
