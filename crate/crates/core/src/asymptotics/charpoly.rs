//! Characteristic polynomial of a Poincaré-type recurrence and the
//! quadratic decomposition `p_k(n) = a_k (n+1)(n−k) + r_k(n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::roots::{dominance, largest_positive_root, Dominance, RationalInterval};
use crate::algebra::PolyZ;
use crate::error::{Error, Result};
use crate::picard::HolonomicRecurrence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPart {
    pub k: usize,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    /// Linear coefficient of `r_k`, equal to `b_k + a_k (k−1)`.
    pub slope: BigInt,
    /// Constant term of `r_k`, equal to `c_k + k a_k`.
    pub residual: BigInt,
}

impl QuadraticPart {
    pub fn residual_poly(&self) -> PolyZ {
        PolyZ::new(vec![self.residual.clone(), self.slope.clone()])
    }
}

#[derive(Clone, Debug)]
pub struct CharacteristicData {
    pub chi: PolyZ,
    /// `k_j = lim p_j(n)/L(n)`.
    pub limits: Vec<BigRational>,
    pub lambda_enclosure: RationalInterval,
    pub positive_roots: usize,
    pub dominance: Dominance,
    /// Present when the leading weight is `(n+1)²` and every weight has
    /// degree at most 2.
    pub quadratic_decomposition: Option<Vec<QuadraticPart>>,
}

/// Limits `k_j` of the weight ratios.
pub fn poincare_limits(rec: &HolonomicRecurrence) -> Result<Vec<BigRational>> {
    let dl = rec.leading.degree().ok_or(Error::DivisionByZero)?;
    let ll = rec.leading.leading();
    rec.terms
        .iter()
        .enumerate()
        .map(|(j, p)| match p.degree() {
            None => Ok(BigRational::zero()),
            Some(d) if d > dl => Err(Error::NotPoincare(j)),
            Some(d) if d < dl => Ok(BigRational::zero()),
            Some(_) => Ok(BigRational::new(p.leading(), ll.clone())),
        })
        .collect()
}

/// `x^J − Σ k_j x^{J−1−j}` with denominators cleared and content removed.
pub fn chi_from_limits(limits: &[BigRational]) -> PolyZ {
    let j = limits.len();
    let den = limits.iter().fold(BigInt::one(), |acc, k| acc.lcm(k.denom()));
    let mut c = vec![BigInt::zero(); j + 1];
    c[j] = den.clone();
    for (i, k) in limits.iter().enumerate() {
        c[j - 1 - i] = -(k * BigRational::from_integer(den.clone())).to_integer();
    }
    PolyZ::new(c).primitive_part()
}

pub fn quadratic_decomposition(rec: &HolonomicRecurrence) -> Option<Vec<QuadraticPart>> {
    if rec.leading != PolyZ::from_i64s(&[1, 2, 1]) {
        return None;
    }
    if rec.terms.iter().any(|p| p.degree().unwrap_or(0) > 2) {
        return None;
    }
    Some(
        rec.terms
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
                let kb = BigInt::from(k);
                QuadraticPart {
                    k,
                    slope: &b + &a * (&kb - 1),
                    residual: &c + &kb * &a,
                    a,
                    b,
                    c,
                }
            })
            .collect(),
    )
}

/// Default enclosure width.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 30))
}

pub fn characteristic_polynomial(rec: &HolonomicRecurrence) -> Result<CharacteristicData> {
    characteristic_polynomial_with(rec, &default_tolerance())
}

pub fn characteristic_polynomial_with(rec: &HolonomicRecurrence, tol: &BigRational) -> Result<CharacteristicData> {
    let limits = poincare_limits(rec)?;
    let chi = chi_from_limits(&limits);
    let (lambda_enclosure, positive_roots) = largest_positive_root(&chi, tol)?;
    let dominance = dominance(&chi, &lambda_enclosure);
    Ok(CharacteristicData {
        chi,
        limits,
        lambda_enclosure,
        positive_roots,
        dominance,
        quadratic_decomposition: quadratic_decomposition(rec),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    pub a_nonnegative: Vec<bool>,
    /// `a_k(k−1) + b_k ≤ 0`.
    pub slope_nonpositive: Vec<bool>,
    /// `a_k(k−1) + b_k = 0`.
    pub slope_zero: Vec<bool>,
    /// `c_k + k a_k ≥ 0`.
    pub residual_nonnegative: Vec<bool>,
    /// Hypotheses of the upper-bound theorem.
    pub upper_bound_applies: bool,
    /// Hypotheses of the convergence theorem, dominance excluded.
    pub convergence_applies: bool,
}

pub fn condition_checks(cd: &CharacteristicData) -> Option<ConditionFlags> {
    let parts = cd.quadratic_decomposition.as_ref()?;
    let a_nonnegative: Vec<bool> = parts.iter().map(|q| !q.a.is_negative()).collect();
    let slope_nonpositive: Vec<bool> = parts.iter().map(|q| !q.slope.is_positive()).collect();
    let slope_zero: Vec<bool> = parts.iter().map(|q| q.slope.is_zero()).collect();
    let residual_nonnegative: Vec<bool> = parts.iter().map(|q| !q.residual.is_negative()).collect();
    let all = |v: &[bool]| v.iter().all(|&b| b);
    let upper = all(&a_nonnegative) && all(&slope_nonpositive);
    let convergence = upper && all(&slope_zero) && all(&residual_nonnegative);
    Some(ConditionFlags {
        upper_bound_applies: upper,
        convergence_applies: convergence,
        a_nonnegative,
        slope_nonpositive,
        slope_zero,
        residual_nonnegative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_identity() {
        let rec = HolonomicRecurrence::from_i64(&[1, 2, 1], &[&[1, 4, 4], &[2, 0, 13], &[3, -9, 9], &[1, -2, 1]], &[1]);
        let parts = quadratic_decomposition(&rec).unwrap();
        assert_eq!(parts.iter().map(|q| q.residual.clone()).collect::<Vec<_>>(), [1, 15, 21, 4].map(BigInt::from));
        for (q, p) in parts.iter().zip(&rec.terms) {
            let k = q.k as i64;
            let base = &PolyZ::from_i64s(&[1, 1]) * &PolyZ::from_i64s(&[-k, 1]);
            assert_eq!(&base.scale(&q.a) + &q.residual_poly(), *p);
        }
    }

    #[test]
    fn constant_recurrence_fails_slope_condition() {
        let rec = HolonomicRecurrence::from_i64(&[1, 2, 1], &[&[2, 4, 2]], &[1]);
        let cd = characteristic_polynomial(&rec).unwrap();
        assert_eq!(cd.chi, PolyZ::from_i64s(&[-2, 1]));
        let f = condition_checks(&cd).unwrap();
        assert_eq!(cd.quadratic_decomposition.as_ref().unwrap()[0].slope, BigInt::from(2));
        assert!(!f.upper_bound_applies);
        assert!(f.residual_nonnegative[0]);
    }

    #[test]
    fn non_poincare_names_weight() {
        let rec = HolonomicRecurrence::from_i64(&[1, 2, 1], &[&[1], &[0, 0, 0, 1]], &[1]);
        assert_eq!(poincare_limits(&rec), Err(Error::NotPoincare(1)));
    }
}
