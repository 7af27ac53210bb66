//! Independent expansion of the period through the hypergeometric
//! representation `(12g₂/c)^(−1/4) · ₂F₁(5/12, 1/12; 1; 1/j)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{series_expand, Point, RatFunc, Series};
use crate::curve::InvariantSet;
use crate::error::{Error, Result};

/// `12^(3k) · C(−5/12, k) · C(−1/12, k)` for `k = 0..n`; these are integers.
pub fn scaled_hypergeometric_coeffs(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n);
    let mut h = BigRational::one();
    let twelfth = |a: i64| BigRational::new(BigInt::from(a), BigInt::from(12));
    let k1728 = BigRational::from_integer(BigInt::from(1728));
    for k in 0..n {
        out.push(h.clone());
        let kk = BigRational::from_integer(BigInt::from(k as i64 + 1));
        h = h * (twelfth(5) + kk.clone() - BigRational::one()) * (twelfth(1) + kk.clone() - BigRational::one())
            / (&kk * &kk)
            * &k1728;
    }
    out
}

/// Coefficients `u_0 … u_(n−1)` of the normalized holomorphic period at
/// `t = 0`, or `v_0 … v_(n−1)` at infinity (series in `1/t` with offset
/// `deg(12g₂)/4`).
pub fn hypergeometric_oracle(inv: &InvariantSet, n: usize, at: Point) -> Result<Series> {
    let n = n as i64;
    let z = (&inv.inv_j()? / &RatFunc::from_int(1728))?;
    let (prefactor, zs, offset) = match at {
        Point::Zero => {
            if !inv.delta.num().constant_term().is_zero() {
                return Err(Error::Hypothesis("discriminant must vanish at t = 0".into()));
            }
            let c = inv.g2_12.at_zero().map_err(|_| Error::Hypothesis("12g2 has a pole at 0".into()))?;
            if c.is_zero() {
                return Err(Error::Hypothesis("g2 must not vanish at t = 0".into()));
            }
            let g = (&inv.g2_12 / &RatFunc::from_rational(&c))?;
            let a = series_expand(&g, Point::Zero, n)?;
            (a, series_expand(&z, Point::Zero, n)?, 0)
        }
        Point::Infinity => {
            let dg = inv.g2_12.num().degree().unwrap_or(0) as i64 - inv.g2_12.den().degree().unwrap_or(0) as i64;
            let dd = inv.delta.num().degree().unwrap_or(0) as i64 - inv.delta.den().degree().unwrap_or(0) as i64;
            if 3 * dg <= dd {
                return Err(Error::Hypothesis("j must have a pole at infinity".into()));
            }
            if dg <= 0 || dg % 4 != 0 {
                return Err(Error::Hypothesis(format!("deg g2 = {dg} is not a positive multiple of 4")));
            }
            let g = series_expand(&inv.g2_12, Point::Infinity, -dg + n)?;
            let alpha = g.coeffs()[0].clone();
            let a = g.shift(dg).scale(&(BigRational::one() / alpha));
            (a, series_expand(&z, Point::Infinity, n)?, dg / 4)
        }
    };
    if zs.valuation().is_some_and(|v| v < 1) {
        return Err(Error::Hypothesis("1/j must vanish at the expansion point".into()));
    }
    let a = prefactor.pow_frac(-1, 4)?;
    let f = Series::new(0, scaled_hypergeometric_coeffs(n as usize));
    let fz = f.compose(&zs)?;
    Ok(a.mul(&fz).with_offset(0).truncate(n).shift(offset))
}
