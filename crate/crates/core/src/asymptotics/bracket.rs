//! Growth constant `ℓ₀` of `u_n ~ ℓ₀ λⁿ/n`: certified brackets and the
//! numerical checks around them.
//!
//! Everything λ-dependent runs on `x_n = u_n/λⁿ` in outward-rounded `f64`
//! intervals, with `v_n = n x_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::charpoly::{condition_checks, CharacteristicData, QuadraticPart};
use super::interval::Interval;
use super::roots::Dominance;
use crate::error::{Error, Result};
use crate::picard::HolonomicRecurrence;

/// Values below this index are taken from the exact expansion.
const EXACT_PREFIX: usize = 40;

enum Coeffs {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Coeffs {
    fn new(p: &crate::algebra::PolyZ) -> Self {
        let c = p.coeffs();
        match c.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>() {
            Some(v) => Coeffs::Small(v),
            None => Coeffs::Big(c.to_vec()),
        }
    }

    fn at(&self, n: usize) -> Interval {
        match self {
            Coeffs::Small(c) => {
                let n = n as i128;
                let mut acc: Option<i128> = Some(0);
                for &x in c.iter().rev() {
                    acc = acc.and_then(|a| a.checked_mul(n)).and_then(|a| a.checked_add(x));
                }
                match acc {
                    Some(v) => Interval::from_int(&BigInt::from(v)),
                    None => self.big_at(n as usize),
                }
            }
            Coeffs::Big(_) => self.big_at(n),
        }
    }

    fn big_at(&self, n: usize) -> Interval {
        let c: Vec<BigInt> = match self {
            Coeffs::Small(c) => c.iter().map(|&x| BigInt::from(x)).collect(),
            Coeffs::Big(c) => c.clone(),
        };
        let nb = BigInt::from(n);
        let v = c.iter().rev().fold(BigInt::zero(), |a, x| a * &nb + x);
        Interval::from_int(&v)
    }
}

/// `x_n = u_n/λⁿ` for `n = 0..=n_max`.
pub fn scaled_sequence(rec: &HolonomicRecurrence, lam: Interval, n_max: usize) -> Result<Vec<Interval>> {
    let prefix = n_max.min(EXACT_PREFIX.max(rec.initials.len()));
    let exact = rec.expand(prefix)?;
    let mut x = Vec::with_capacity(n_max + 1);
    let mut pow = Interval::point(1.0);
    for u in &exact {
        x.push(Interval::from_rational(u) / pow);
        pow = pow * lam;
    }
    let lead = Coeffs::new(&rec.leading);
    let terms: Vec<Coeffs> = rec.terms.iter().map(Coeffs::new).collect();
    let lam_pow: Vec<Interval> = (1..=terms.len() as u32).map(|k| lam.powi(k)).collect();
    for n in prefix..n_max {
        let l = lead.at(n);
        if l.contains(0.0) {
            return Err(Error::VanishingLeadingWeight(n as i64));
        }
        let mut s = Interval::point(0.0);
        for (k, p) in terms.iter().enumerate() {
            if k > n {
                break;
            }
            s = s + p.at(n) * x[n - k] / lam_pow[k];
        }
        x.push(s / l);
    }
    Ok(x)
}

/// Uncertified point values of `x_n` by plain forward iteration at the
/// midpoint of `lam`. Used when mixed-sign weights make interval widths grow
/// geometrically; rounding errors then only excite subdominant solutions.
pub fn scaled_sequence_estimate(rec: &HolonomicRecurrence, lam: f64, n_max: usize) -> Result<Vec<Interval>> {
    let prefix = n_max.min(EXACT_PREFIX.max(rec.initials.len()));
    let exact = rec.expand(prefix)?;
    let mut x: Vec<f64> = Vec::with_capacity(n_max + 1);
    for (i, u) in exact.iter().enumerate() {
        x.push(Interval::from_rational(u).mid() / lam.powi(i as i32));
    }
    let lead = Coeffs::new(&rec.leading);
    let terms: Vec<Coeffs> = rec.terms.iter().map(Coeffs::new).collect();
    let lam_pow: Vec<f64> = (1..=terms.len() as i32).map(|k| lam.powi(k)).collect();
    for n in prefix..n_max {
        let l = lead.at(n).mid();
        if l == 0.0 {
            return Err(Error::VanishingLeadingWeight(n as i64));
        }
        let s: f64 = terms.iter().enumerate().take(n + 1).map(|(k, p)| p.at(n).mid() * x[n - k] / lam_pow[k]).sum();
        x.push(s / l);
    }
    Ok(x.into_iter().map(Interval::point).collect())
}

/// Rigorous values when their relative width stays below `1e-6`, point
/// estimates otherwise. The flag tells which.
pub fn scaled_sequence_best(rec: &HolonomicRecurrence, lam: Interval, n_max: usize) -> Result<(Vec<Interval>, bool)> {
    let x = scaled_sequence(rec, lam, n_max)?;
    let last = x[n_max];
    if last.lo.is_finite() && last.hi.is_finite() && last.width() <= 1e-6 * last.mid().abs() {
        return Ok((x, true));
    }
    Ok((scaled_sequence_estimate(rec, lam.mid(), n_max)?, false))
}

pub fn v_at(x: &[Interval], n: usize) -> Interval {
    x[n] * Interval::point(n as f64)
}

pub fn lambda_interval(cd: &CharacteristicData) -> Interval {
    Interval::hull(&cd.lambda_enclosure.lo, &cd.lambda_enclosure.hi)
}

#[derive(Clone, Debug, Serialize)]
pub struct UpperBound {
    pub n: usize,
    pub r: i64,
    pub gamma: f64,
    pub beta: f64,
    pub window_max: f64,
    pub ell: f64,
}

/// Upper bound `ℓ` with `v_m < ℓ` for all `m ≥ n`, from the tail window
/// `v_{n−K}, …, v_n` and the correction `e^{2β/n}`.
pub fn upper_bound(parts: &[QuadraticPart], lam: Interval, x: &[Interval], n: usize) -> Result<UpperBound> {
    let depth = parts.len();
    if n < depth + 3 || n >= x.len() {
        return Err(Error::Hypothesis(format!("tail index {n} outside the computed range")));
    }
    let r = parts.iter().map(|q| q.residual.clone()).max().unwrap_or_default().max(BigInt::from(1));
    let r = r.to_i64().ok_or_else(|| Error::Hypothesis("residual too large".into()))?;
    // γ = min(λ, …, λ^{K+1}) at the lower end of the enclosure
    let lo = Interval::point(lam.lo);
    let gamma = (1..=depth as u32).map(|k| lo.powi(k).lo).fold(f64::INFINITY, f64::min);
    let nf = n as f64;
    let kf = (depth - 1) as f64;
    let shape = (Interval::point(nf) * Interval::point(nf)) / (Interval::point(nf - kf) * Interval::point(nf + 1.0));
    let beta = (Interval::point((r * depth as i64) as f64) / Interval::point(gamma)) * Interval::point(shape.hi.max(1.0));
    let beta = beta.hi;
    if nf < 3f64.max(beta / 2.0) {
        return Err(Error::Hypothesis(format!("n = {n} below max(3, beta/2) with beta = {beta}")));
    }
    let window: Vec<Interval> = (n + 1 - depth..=n).map(|j| v_at(x, j)).collect();
    if window.iter().any(|v| !v.is_positive()) {
        return Err(Error::Hypothesis("tail window of v_n not positive".into()));
    }
    let window_max = window.iter().map(|v| v.hi).fold(f64::NEG_INFINITY, f64::max);
    let corr = (Interval::point(2.0 * beta) / Interval::point(nf)).exp();
    let ell = (Interval::point(window_max) * corr).hi.next_up();
    Ok(UpperBound { n, r, gamma, beta, window_max, ell })
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBound {
    pub m: usize,
    /// `Σ_j β_j v_{M−j}`, conserved by the linearized recurrence.
    pub invariant: (f64, f64),
    /// `Σ (k+1) α_k`.
    pub weight: (f64, f64),
    pub ell: f64,
}

/// Limit of the linearized sequence `w_{n+1} = Σ α_k w_{n−k}` seeded with
/// `v` at `M−K, …, M`; it stays below `v_n` and converges to
/// `Σ β_j v_{M−j} / Σ (k+1) α_k` with `α_k = a_k/λ^{k+1}`, `β_j = Σ_{k≥j} α_k`.
pub fn lower_bound(parts: &[QuadraticPart], lam: Interval, x: &[Interval], m: usize) -> Result<LowerBound> {
    let depth = parts.len();
    if m < depth || m >= x.len() {
        return Err(Error::Hypothesis(format!("seed index {m} outside the computed range")));
    }
    let alpha: Vec<Interval> = parts
        .iter()
        .enumerate()
        .map(|(k, q)| Interval::from_int(&q.a) / lam.powi(k as u32 + 1))
        .collect();
    let mut beta = vec![Interval::point(0.0); depth + 1];
    for j in (0..depth).rev() {
        beta[j] = beta[j + 1] + alpha[j];
    }
    let mut inv = Interval::point(0.0);
    let mut weight = Interval::point(0.0);
    for j in 0..depth {
        let v = v_at(x, m - j);
        if !v.is_positive() {
            return Err(Error::Hypothesis(format!("v_{} is not positive", m - j)));
        }
        inv = inv + beta[j] * v;
        weight = weight + beta[j];
    }
    let ell = (inv / weight).lo;
    Ok(LowerBound { m, invariant: (inv.lo, inv.hi), weight: (weight.lo, weight.hi), ell })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EllBracket {
    Bracket { lower: f64, upper: f64, v_n: (f64, f64), lower_detail: LowerBound, upper_detail: UpperBound },
    UpperOnly { upper: f64, v_n: (f64, f64), reason: String, upper_detail: UpperBound },
    EmpiricalOnly { v_n: (f64, f64), reason: String },
}

impl EllBracket {
    pub fn interval(&self) -> Option<(f64, f64)> {
        match self {
            EllBracket::Bracket { lower, upper, .. } => Some((*lower, *upper)),
            _ => None,
        }
    }

    pub fn v_n(&self) -> (f64, f64) {
        match self {
            EllBracket::Bracket { v_n, .. } | EllBracket::UpperOnly { v_n, .. } | EllBracket::EmpiricalOnly { v_n, .. } => *v_n,
        }
    }

    /// Exact rational values of the reported endpoints.
    pub fn rational_endpoints(&self) -> Option<(BigRational, BigRational)> {
        let (lo, hi) = self.interval()?;
        Some((BigRational::from_float(lo)?, BigRational::from_float(hi)?))
    }
}

/// Bracket for `ℓ₀` from the tail at `n` (upper) and the linearized
/// sequence seeded at `m` (lower). Falls back to partial information when
/// hypotheses fail.
pub fn ell_bracket(rec: &HolonomicRecurrence, cd: &CharacteristicData, n: usize, m: usize) -> Result<EllBracket> {
    let lam = lambda_interval(cd);
    let x = scaled_sequence(rec, lam, n.max(m))?;
    ell_bracket_from(cd, &x, n, m)
}

pub fn ell_bracket_from(cd: &CharacteristicData, x: &[Interval], n: usize, m: usize) -> Result<EllBracket> {
    let lam = lambda_interval(cd);
    let vn = v_at(x, n);
    let v_n = (vn.lo, vn.hi);
    let empirical = |reason: &str| Ok(EllBracket::EmpiricalOnly { v_n, reason: format!("no bracket; empirical v_N only: {reason}") });
    let (Some(parts), Some(flags)) = (cd.quadratic_decomposition.as_ref(), condition_checks(cd)) else {
        return empirical("no quadratic decomposition");
    };
    if !flags.upper_bound_applies {
        return empirical("a_k >= 0 and a_k(k-1)+b_k <= 0 not satisfied");
    }
    let upper_detail = match upper_bound(parts, lam, x, n) {
        Ok(u) => u,
        Err(e) => return empirical(&e.to_string()),
    };
    let upper = upper_detail.ell;
    let partial = |reason: String, upper_detail: UpperBound| Ok(EllBracket::UpperOnly { upper, v_n, reason, upper_detail });
    if !flags.convergence_applies {
        return partial("equality a_k(k-1)+b_k = 0 or c_k+k a_k >= 0 fails".into(), upper_detail);
    }
    if cd.dominance != Dominance::Dominant {
        return partial(format!("lambda dominance {:?}", cd.dominance), upper_detail);
    }
    match lower_bound(parts, lam, x, m) {
        Ok(l) => Ok(EllBracket::Bracket { lower: l.ell, upper, v_n, lower_detail: l, upper_detail }),
        Err(e) => partial(e.to_string(), upper_detail),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioScan {
    pub from: usize,
    pub to: usize,
    pub slack: f64,
    pub worst: f64,
    pub first_violation: Option<usize>,
}

/// `u_{n+1}/u_n = λ x_{n+1}/x_n` compared with the λ enclosure widened by
/// `slack`, for `from ≤ n < to`.
pub fn ratio_scan(x: &[Interval], lam: Interval, from: usize, to: usize, slack: f64) -> RatioScan {
    let mut worst = 0f64;
    let mut first_violation = None;
    for n in from..to.min(x.len() - 1) {
        let q = lam * x[n + 1] / x[n];
        let dev = (q.hi - lam.hi).max(lam.lo - q.lo).max(0.0);
        worst = worst.max(dev);
        if dev > slack && first_violation.is_none() {
            first_violation = Some(n);
        }
    }
    RatioScan { from, to, slack, worst, first_violation }
}

/// First index from which `pred` holds through the end.
fn onset(len: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
    let mut start = None;
    for i in 0..len {
        if pred(i) {
            start.get_or_insert(i);
        } else {
            start = None;
        }
    }
    start
}

#[derive(Clone, Debug, Serialize)]
pub struct ModformPoint {
    pub eps: f64,
    /// `Σ_{n≤N} u_n t^n + a log ε` at `t = (1−ε)/λ`.
    pub value: (f64, f64),
    pub tail: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModformReport {
    pub n: usize,
    pub positive_from: Option<usize>,
    pub decreasing_from: Option<usize>,
    /// `ℓ` used in the tail bound and whether it is certified.
    pub tail_ell: f64,
    pub tail_ell_certified: bool,
    pub points: Vec<ModformPoint>,
    /// Fit of `b + ε(d + c log ε)` through the points, evaluated at 0.
    pub extrapolated: f64,
    pub a: f64,
    pub b: f64,
    /// `|v_N − a|/a`.
    pub ratio_error: f64,
}

impl ModformReport {
    pub fn b_deviation(&self) -> f64 {
        (self.extrapolated - self.b).abs()
    }
}

pub const MODFORM_EPS: [f64; 3] = [0.1, 0.05, 0.02];
const TAIL_TOL: f64 = 1e-10;

fn tail_bound(ell: f64, eps: f64, n: usize) -> f64 {
    let n1 = (n + 1) as f64;
    ell * (n1 * (1.0 - eps).ln()).exp() / (n1 * eps)
}

/// Smallest `N` for which the tail at `eps` drops below the tolerance.
pub fn required_terms(ell: f64, eps: f64) -> usize {
    let mut n = 1usize;
    while tail_bound(ell, eps, n) > TAIL_TOL {
        n *= 2;
    }
    let (mut lo, mut hi) = (n / 2, n);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if tail_bound(ell, eps, mid) > TAIL_TOL {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Numerical check of the hypotheses relating `ℓ₀` to the behaviour of
/// `f(t) + a log(1 − λt)` as `t → 1/λ`.
pub fn modform_hypothesis_check(
    rec: &HolonomicRecurrence,
    cd: &CharacteristicData,
    a: f64,
    b: f64,
    n: usize,
) -> Result<ModformReport> {
    let lam = lambda_interval(cd);
    let x = scaled_sequence(rec, lam, n)?;
    let positive_from = onset(n + 1, |i| x[i].lo > 0.0);
    let decreasing_from = onset(n, |i| x[i + 1].hi < x[i].lo).filter(|&i| i < n);

    let certified = cd
        .quadratic_decomposition
        .as_ref()
        .filter(|_| condition_checks(cd).is_some_and(|f| f.upper_bound_applies))
        .and_then(|parts| upper_bound(parts, lam, &x, n).ok());
    let (tail_ell, tail_ell_certified) = match certified {
        Some(u) => (u.ell, true),
        None => {
            let lo = n / 2;
            ((lo..=n).map(|i| v_at(&x, i).hi).fold(0.0, f64::max) * 1.01, false)
        }
    };

    let mut points = Vec::new();
    for &eps in &MODFORM_EPS {
        let tail = tail_bound(tail_ell, eps, n);
        if tail > TAIL_TOL {
            return Err(Error::InsufficientPrecision { required: required_terms(tail_ell, eps) as i64 });
        }
        let r = Interval::point(1.0) - Interval::point(eps);
        let mut pw = Interval::point(1.0);
        let mut s = Interval::point(0.0);
        for xi in &x {
            s = s + *xi * pw;
            pw = pw * r;
        }
        let s = s + Interval::point(a) * Interval::point(eps).ln();
        points.push(ModformPoint { eps, value: (s.lo, s.hi + tail), tail });
    }
    let extrapolated = extrapolate(&points);
    let vn = v_at(&x, n).mid();
    Ok(ModformReport {
        n,
        positive_from,
        decreasing_from,
        tail_ell,
        tail_ell_certified,
        points,
        extrapolated,
        a,
        b,
        ratio_error: (vn - a).abs() / a,
    })
}

/// Solves `F_i = b + ε_i d + c ε_i log ε_i` for `b`.
fn extrapolate(points: &[ModformPoint]) -> f64 {
    let rows: Vec<[f64; 4]> = points
        .iter()
        .map(|p| [1.0, p.eps, p.eps * p.eps.ln(), 0.5 * (p.value.0 + p.value.1)])
        .collect();
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let a = [[rows[0][0], rows[0][1], rows[0][2]], [rows[1][0], rows[1][1], rows[1][2]], [rows[2][0], rows[2][1], rows[2][2]]];
    let mut a0 = a;
    for i in 0..3 {
        a0[i][0] = rows[i][3];
    }
    det3(a0) / det3(a)
}

/// `a λⁿ/n` against `u_n`, as `|v_n − a|/a`.
pub fn ratio_to_constant(x: &[Interval], n: usize, a: f64) -> f64 {
    let v = v_at(x, n);
    ((v.lo - a).abs()).max((v.hi - a).abs()) / a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::charpoly::characteristic_polynomial;

    fn toy() -> HolonomicRecurrence {
        HolonomicRecurrence::from_i64(&[1, 2, 1], &[&[1, 2, 2]], &[1])
    }

    #[test]
    fn toy_bracket_contains_limit() {
        let rec = toy();
        let cd = characteristic_polynomial(&rec).unwrap();
        assert_eq!(cd.dominance, Dominance::Dominant);
        let limit = (std::f64::consts::FRAC_PI_2).cosh() / std::f64::consts::PI;
        let br = ell_bracket(&rec, &cd, 100_000, 1000).unwrap();
        let (lo, hi) = br.interval().unwrap();
        assert!(lo < limit && limit < hi, "{lo} {limit} {hi}");
        let (vlo, vhi) = br.v_n();
        assert!(lo <= vlo && vhi <= hi);
    }

    #[test]
    fn extrapolation_recovers_model() {
        let f = |e: f64| 0.7 + e * (0.3 - 0.2 * e.ln());
        let pts: Vec<ModformPoint> =
            MODFORM_EPS.iter().map(|&eps| ModformPoint { eps, value: (f(eps), f(eps)), tail: 0.0 }).collect();
        assert!((extrapolate(&pts) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn required_terms_grow_as_eps_shrinks() {
        assert!(required_terms(0.4, 0.02) > required_terms(0.4, 0.1));
        assert!(tail_bound(0.4, 0.02, required_terms(0.4, 0.02)) <= TAIL_TOL);
    }
}
