//! Holonomic recurrences `L(n)·u_{n+1} = Σ_k p_k(n)·u_{n−k}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ode::SecondOrderOde;
use crate::algebra::{PolyZ, Series};
use crate::error::{Error, Result};

/// The relation is applied for every `n` with `n + 1 ≥ initials.len()`.
/// `offset` records the exponent of the first coefficient: the series is
/// `Σ u_n x^(n + offset)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomicRecurrence {
    pub leading: PolyZ,
    pub terms: Vec<PolyZ>,
    pub initials: Vec<BigRational>,
    pub offset: i64,
}

/// `n - c` as a polynomial in `n`.
fn n_minus(c: i64) -> PolyZ {
    PolyZ::from_i64s(&[-c, 1])
}

impl HolonomicRecurrence {
    /// Builds a recurrence and normalizes it: common content removed,
    /// leading polynomial positive at infinity, trailing zero terms dropped.
    pub fn new(leading: PolyZ, terms: Vec<PolyZ>, initials: Vec<BigRational>, offset: i64) -> Self {
        let mut terms = terms;
        while terms.last().is_some_and(|t| t.is_zero()) {
            terms.pop();
        }
        let mut c = leading.content();
        for t in &terms {
            c = c.gcd(&t.content());
        }
        let mut sign = BigInt::one();
        if leading.leading().is_negative() {
            sign = -sign;
        }
        let c = &c * &sign;
        let fix = |p: &PolyZ| if c.is_one() { p.clone() } else { p.div_scalar_exact(&c) };
        HolonomicRecurrence {
            leading: fix(&leading),
            terms: terms.iter().map(fix).collect(),
            initials,
            offset,
        }
    }

    pub fn from_i64(leading: &[i64], terms: &[&[i64]], initials: &[i64]) -> Self {
        HolonomicRecurrence::new(
            PolyZ::from_i64s(leading),
            terms.iter().map(|t| PolyZ::from_i64s(t)).collect(),
            initials.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            0,
        )
    }

    /// Weights in the `Σ_{k ≥ −1} w_k(n) u_{n−k} = 0` convention.
    pub fn weights(&self) -> Vec<(i64, PolyZ)> {
        let mut out = vec![(-1, self.leading.clone())];
        for (k, t) in self.terms.iter().enumerate() {
            out.push((k as i64, -t));
        }
        out
    }

    /// Number of previous terms the relation reaches back to.
    pub fn depth(&self) -> usize {
        self.terms.len()
    }

    /// Index of the first value produced by the relation.
    fn first_step(&self) -> usize {
        self.initials.len().max(1) - 1
    }

    /// Exact values `u_0 … u_N`.
    pub fn expand(&self, n_max: usize) -> Result<Vec<BigRational>> {
        let mut u: Vec<BigRational> = self.initials.iter().take(n_max + 1).cloned().collect();
        if u.is_empty() {
            u.push(BigRational::one());
        }
        for n in self.first_step()..n_max {
            if u.len() > n + 1 {
                continue;
            }
            let nb = BigInt::from(n);
            let l = self.leading.eval(&nb);
            if l.is_zero() {
                return Err(Error::VanishingLeadingWeight(n as i64));
            }
            let mut s = BigRational::zero();
            for (k, p) in self.terms.iter().enumerate() {
                if k > n || p.is_zero() {
                    continue;
                }
                let x = &u[n - k];
                if x.is_zero() {
                    continue;
                }
                s += x * BigRational::from_integer(p.eval(&nb));
            }
            u.push(s / BigRational::from_integer(l));
        }
        Ok(u)
    }

    /// Integer expansion that stops at the first value that is not an
    /// integer. Returns the values and, on failure, the offending index.
    pub fn expand_integral(&self, n_max: usize) -> (Vec<BigInt>, Option<usize>) {
        let mut u: Vec<BigInt> = Vec::new();
        for (i, c) in self.initials.iter().take(n_max + 1).enumerate() {
            if !c.is_integer() {
                return (u, Some(i));
            }
            u.push(c.to_integer());
        }
        if u.is_empty() {
            u.push(BigInt::one());
        }
        for n in self.first_step()..n_max {
            if u.len() > n + 1 {
                continue;
            }
            let nb = BigInt::from(n);
            let l = self.leading.eval(&nb);
            if l.is_zero() {
                return (u, Some(n + 1));
            }
            let mut s = BigInt::zero();
            for (k, p) in self.terms.iter().enumerate() {
                if k > n || p.is_zero() || u[n - k].is_zero() {
                    continue;
                }
                s += &u[n - k] * p.eval(&nb);
            }
            let (q, r) = s.div_rem(&l);
            if !r.is_zero() {
                return (u, Some(n + 1));
            }
            u.push(q);
        }
        (u, None)
    }

    pub fn expand_series(&self, n_max: usize) -> Result<Series> {
        Ok(Series::new(self.offset, self.expand(n_max)?))
    }

    /// Recurrence for the coefficients of `f(k t)`.
    pub fn rescale(&self, k: &BigRational) -> Self {
        let (a, b) = (k.numer(), k.denom());
        let j = self.terms.len();
        let leading = self.leading.scale(&num_traits::pow(b.clone(), j));
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, p)| p.scale(&(num_traits::pow(a.clone(), i + 1) * num_traits::pow(b.clone(), j - 1 - i))))
            .collect();
        let mut pw = BigRational::one();
        let mut initials = Vec::with_capacity(self.initials.len());
        for u in &self.initials {
            initials.push(u * &pw);
            pw *= k;
        }
        HolonomicRecurrence::new(leading, terms, initials, self.offset)
    }

    /// True when only odd shifts appear, so that an initial value pattern
    /// with vanishing odd entries propagates to all odd indices.
    pub fn is_even(&self) -> bool {
        self.terms.iter().step_by(2).all(|p| p.is_zero())
            && self.initials.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Recurrence for `V_m = u_{2m}` of an even series (`t² ↦ t`).
    pub fn even_subsequence(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::Hypothesis("series is not even".into()));
        }
        let sub = PolyZ::from_i64s(&[1, 2]);
        let leading = self.leading.compose(&sub);
        let terms = self.terms.iter().skip(1).step_by(2).map(|p| p.compose(&sub)).collect();
        let initials = self.initials.iter().step_by(2).cloned().collect();
        Ok(HolonomicRecurrence::new(leading, terms, initials, self.offset / 2))
    }

    /// Human-readable form of the relation in `n` and the sequence name.
    pub fn display(&self, u: &str) -> String {
        let mut s = format!("({})*{u}[n+1] =", self.leading.to_string_var("n"));
        let mut first = true;
        for (k, p) in self.terms.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let idx = if k == 0 { "n".to_string() } else { format!("n-{k}") };
            let sep = if first { " " } else { " + " };
            s.push_str(&format!("{sep}({})*{u}[{idx}]", p.to_string_var("n")));
            first = false;
        }
        if first {
            s.push_str(" 0");
        }
        s
    }
}

/// Coefficient recurrence of the holomorphic solution at `t = 0`.
pub fn recurrence_at_zero(ode: &SecondOrderOde) -> Result<HolonomicRecurrence> {
    let (p, q, r) = (&ode.p0, &ode.p1, &ode.p2);
    if !r.coeff(0).is_zero() {
        return Err(Error::Hypothesis("t = 0 is an ordinary point of the equation".into()));
    }
    let r1 = r.coeff(1);
    if r1.is_zero() {
        return Err(Error::ApparentSingularity);
    }
    let q0 = q.coeff(0);
    // leading weight (n+1)(q0 + r1 n)
    let (root, rem) = (-&q0).div_rem(&r1);
    if rem.is_zero() && !root.is_negative() {
        return Err(Error::VanishingLeadingWeight(i64::try_from(root).unwrap_or(i64::MAX)));
    }
    let leading = &n_minus(-1) * &PolyZ::new(vec![q0, r1]);
    let deg = [p.degree(), q.degree().map(|d| d.saturating_sub(1)), r.degree().map(|d| d.saturating_sub(2))]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(0);
    let mut terms = Vec::with_capacity(deg + 1);
    for d in 0..=deg {
        let di = d as i64;
        let w = &(&PolyZ::constant(p.coeff(d)) + &n_minus(di).scale(&q.coeff(d + 1)))
            + &(&n_minus(di) * &n_minus(di + 1)).scale(&r.coeff(d + 2));
        terms.push(-w);
    }
    Ok(HolonomicRecurrence::new(leading, terms, vec![BigRational::one()], 0))
}

/// Smallest exponent `δ ≥ 0` and recurrence of the solution
/// `Σ v_n t^(−n−δ)` at infinity.
pub fn recurrence_at_infinity(ode: &SecondOrderOde) -> Result<HolonomicRecurrence> {
    let s_ode = ode.at_infinity();
    let limit = ode.p2.degree().unwrap_or(0) as i64 + 2;
    let indicial = indicial_polynomial(&s_ode);
    for d in 0..=limit {
        if !indicial.eval_i64(d).is_zero() {
            continue;
        }
        if let Ok(mut rec) = recurrence_at_zero(&s_ode.twist(d)) {
            rec.offset = d;
            return Ok(rec);
        }
    }
    Err(Error::Hypothesis("no holomorphic exponent at infinity within the search range".into()))
}

/// Indicial polynomial `I(e)` of the operator at the origin.
pub fn indicial_polynomial(ode: &SecondOrderOde) -> PolyZ {
    let shifts = [(0i64, &ode.p0), (1, &ode.p1), (2, &ode.p2)];
    let dmin = shifts
        .iter()
        .filter_map(|(s, p)| p.valuation().map(|v| v as i64 - s))
        .min()
        .unwrap_or(0);
    let c = |p: &PolyZ, i: i64| if i < 0 { BigInt::zero() } else { p.coeff(i as usize) };
    let e = PolyZ::var();
    let a0 = PolyZ::constant(c(&ode.p0, dmin));
    let a1 = e.scale(&c(&ode.p1, dmin + 1));
    let a2 = (&e * &n_minus(1)).scale(&c(&ode.p2, dmin + 2));
    &(&a0 + &a1) + &a2
}
