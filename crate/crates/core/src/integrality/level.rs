//! Certified and measured integral level of the holomorphic period at `t = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::int::ord_p;
use crate::algebra::series::rational_string;
use crate::curve::{compute_invariants, require_singular_origin, WeierstrassFamily};
use crate::error::Result;
use crate::picard::{derive_ode, recurrence_at_zero, HolonomicRecurrence};

use super::bounds::{theoretical_bound, BoundKind};
use super::checks::{syntactic_checks, SyntacticFlags};
use super::empirical::{empirical_level_of, EmpiricalLevel};
use super::reduce::{sharperub_reduce, ReductionCertificate};

/// Reduction applied to `u_{2n}` when the series is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenStep {
    /// Exponent `c` of the frame `f(p^c t)` the subsequence was taken in.
    pub frame: i64,
    pub reduction: ReductionCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAnalysis {
    pub p: u64,
    pub bound_exponent: i64,
    /// `None` when the scaled recurrence is not of the reducible shape.
    pub reduction: Option<ReductionCertificate>,
    pub even: Option<EvenStep>,
    /// `ord_p(d_n) ≤ n·certified` for all `n`.
    pub certified: BigRational,
    pub empirical: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelVerdict {
    Exact { level: String },
    Bounds { lo: String, hi: String },
}

/// Per-prime fractional exponent; `exact` when the measured value meets the
/// certified one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionalExponent {
    pub p: u64,
    pub certified: String,
    pub empirical: String,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityCertificate {
    pub theoretical_bound: BigInt,
    pub bound_kind: BoundKind,
    pub flags: SyntacticFlags,
    pub primes: Vec<PrimeAnalysis>,
    pub empirical: EmpiricalLevel,
    pub verdict: LevelVerdict,
    pub fractional: Vec<FractionalExponent>,
    /// Every measured exponent lies below its certified exponent.
    pub consistent: bool,
}

fn p_power(p: u64, e: i64) -> BigInt {
    num_traits::pow(BigInt::from(p), e.max(0) as usize)
}

fn ceil_i64(x: &BigRational) -> i64 {
    i64::try_from(x.ceil().to_integer()).unwrap()
}

fn even_step(rec0: &HolonomicRecurrence, p: u64, c: i64) -> Option<EvenStep> {
    let framed = rec0.rescale(&BigRational::from_integer(p_power(p, c)));
    let sub = framed.even_subsequence().ok()?;
    let reduction = sharperub_reduce(&sub, p).ok()?;
    Some(EvenStep { frame: c, reduction })
}

fn analyze_prime(rec0: &HolonomicRecurrence, bound: &BigInt, p: u64, flags: &SyntacticFlags) -> PrimeAnalysis {
    let e = ord_p(bound, p) as i64;
    let scaled = rec0.rescale(&BigRational::from_integer(bound.clone()));
    let reduction = sharperub_reduce(&scaled, p).ok();
    let mut c = e - reduction.as_ref().map_or(0, |r| r.s.max(0));
    if flags.fourth_power && p == 2 {
        c = c.min(e - 3);
    }
    if flags.intp1 || flags.ratcor2 {
        c = 0;
    }
    let c = c.max(0);
    let mut certified = BigRational::from_integer(c.into());
    let mut even = None;
    if c > 0 && rec0.is_even() {
        if let Some(step) = even_step(rec0, p, c) {
            let s = step.reduction.s.max(0);
            let cand = BigRational::new((2 * c - s).into(), 2.into());
            if cand < certified {
                certified = cand;
            }
            even = Some(step);
        }
    }
    PrimeAnalysis { p, bound_exponent: e, reduction, even, certified, empirical: BigRational::zero() }
}

/// Full pipeline from a family: bound, per-prime reductions (with the even
/// subsequence when odd coefficients vanish), empirical scan to `n_max`,
/// and the verdict. The level is called exact only when the measured
/// exponents reach the certified ones after rounding up.
pub fn analyze_level(fam: &WeierstrassFamily, n_max: usize) -> Result<IntegralityCertificate> {
    let inv = compute_invariants(fam)?;
    require_singular_origin(&inv)?;
    let rec0 = recurrence_at_zero(&derive_ode(&inv)?)?;
    let flags = syntactic_checks(fam)?;
    let (bound, bound_kind) = theoretical_bound(&inv)?;
    let u = rec0.expand(n_max)?;
    let empirical = empirical_level_of(&rec0, &u)?;
    analyze_recurrence(&rec0, bound, bound_kind, flags, empirical)
}

/// The verdict stage on an already derived recurrence.
pub fn analyze_recurrence(
    rec0: &HolonomicRecurrence,
    bound: BigInt,
    bound_kind: BoundKind,
    flags: SyntacticFlags,
    empirical: EmpiricalLevel,
) -> Result<IntegralityCertificate> {
    let bound_primes = crate::algebra::int::prime_divisors(&bound, 1 << 20).unwrap_or_default();
    let mut primes: Vec<PrimeAnalysis> =
        bound_primes.iter().map(|&p| analyze_prime(rec0, &bound, p, &flags)).collect();
    for pa in primes.iter_mut() {
        pa.empirical = empirical.exponent(pa.p);
    }
    // primes seen in denominators but absent from the bound would contradict it
    let mut consistent = empirical.exponents.keys().all(|p| bound_primes.contains(p));
    consistent &= primes.iter().all(|pa| pa.empirical <= pa.certified);

    let mut lo = BigInt::one();
    let mut hi = BigInt::one();
    for pa in &primes {
        lo *= p_power(pa.p, ceil_i64(&pa.empirical));
        hi *= p_power(pa.p, ceil_i64(&pa.certified));
    }
    let verdict = if lo == hi {
        LevelVerdict::Exact { level: hi.to_string() }
    } else {
        LevelVerdict::Bounds { lo: lo.to_string(), hi: hi.to_string() }
    };
    let fractional = primes
        .iter()
        .filter(|pa| pa.certified.is_positive() || pa.empirical.is_positive())
        .map(|pa| FractionalExponent {
            p: pa.p,
            certified: rational_string(&pa.certified),
            empirical: rational_string(&pa.empirical),
            exact: pa.certified == pa.empirical,
        })
        .collect();
    Ok(IntegralityCertificate { theoretical_bound: bound, bound_kind, flags, primes, empirical, verdict, fractional, consistent })
}

impl IntegralityCertificate {
    pub fn exact_level(&self) -> Option<BigInt> {
        match &self.verdict {
            LevelVerdict::Exact { level } => level.parse().ok(),
            LevelVerdict::Bounds { .. } => None,
        }
    }

    pub fn prime(&self, p: u64) -> Option<&PrimeAnalysis> {
        self.primes.iter().find(|x| x.p == p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let primes: Vec<_> = self
            .primes
            .iter()
            .map(|pa| {
                serde_json::json!({
                    "p": pa.p,
                    "bound_exponent": pa.bound_exponent,
                    "k0": pa.reduction.as_ref().map(|r| r.k0),
                    "s": pa.reduction.as_ref().map(|r| r.s),
                    "even_subsequence": pa.even.as_ref().map(|e| serde_json::json!({
                        "frame_exponent": e.frame,
                        "k0": e.reduction.k0,
                        "s": e.reduction.s,
                    })),
                    "certified_exponent": rational_string(&pa.certified),
                    "empirical_exponent": rational_string(&pa.empirical),
                })
            })
            .collect();
        let empirical: serde_json::Map<String, serde_json::Value> = self
            .empirical
            .exponents
            .iter()
            .map(|(p, x)| (p.to_string(), serde_json::json!({"e": rational_string(&x.e), "at": x.at})))
            .collect();
        serde_json::json!({
            "theoretical_bound": self.theoretical_bound.to_string(),
            "bound_kind": self.bound_kind,
            "flags": self.flags,
            "primes": primes,
            "empirical": {
                "n_used": self.empirical.n_used,
                "exponents": empirical,
                "integer_level_lower_bound": self.empirical.integer_level.to_string(),
                "fully_factored": self.empirical.fully_factored,
                "note": "lower-bound measurement",
            },
            "verdict": self.verdict,
            "fractional": self.fractional,
            "consistent": self.consistent,
        })
    }
}
