//! Truncated Laurent series with exact rational coefficients.
//!
//! A series knows the exponent of its first unknown term (`order`); every
//! binary operation keeps only what both operands determine.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::PolyZ;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    offset: i64,
    coeffs: Vec<BigRational>,
}

/// Where a rational function is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Zero,
    Infinity,
}

fn q(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

impl Series {
    /// Series `Σ coeffs[i] t^(offset+i)` known up to `t^(offset + len)`.
    pub fn new(offset: i64, coeffs: Vec<BigRational>) -> Self {
        Series { offset, coeffs }
    }

    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        Series::new(offset, coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn from_bigints(offset: i64, coeffs: Vec<BigInt>) -> Self {
        Series::new(offset, coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// The exact constant `c`, known to the given order.
    pub fn constant(c: BigRational, order: i64) -> Self {
        let n = order.max(0) as usize;
        let mut v = vec![BigRational::zero(); n];
        if n > 0 {
            v[0] = c;
        }
        Series::new(0, v)
    }

    /// `t` known to the given order.
    pub fn variable(order: i64) -> Self {
        let n = (order - 1).max(0) as usize;
        let mut v = vec![BigRational::zero(); n];
        if n > 0 {
            v[0] = BigRational::one();
        }
        Series::new(1, v)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn order(&self) -> i64 {
        self.offset + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^e`; `None` at or beyond the order.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        if e >= self.order() {
            None
        } else if e < self.offset {
            Some(BigRational::zero())
        } else {
            Some(self.coeffs[(e - self.offset) as usize].clone())
        }
    }

    /// Lowest exponent with a nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.offset + i as i64)
    }

    /// Re-expresses the series starting at exponent `new_offset`, which must
    /// not discard a nonzero coefficient.
    pub fn with_offset(&self, new_offset: i64) -> Self {
        let ord = self.order();
        let n = (ord - new_offset).max(0) as usize;
        let v = (0..n).map(|i| self.coeff(new_offset + i as i64).unwrap()).collect();
        Series::new(new_offset, v)
    }

    /// Moves the offset to the valuation (or to the order for zero).
    pub fn trimmed(&self) -> Self {
        match self.valuation() {
            Some(v) => self.with_offset(v),
            None => Series::new(self.order(), Vec::new()),
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        let n = (order - self.offset).max(0) as usize;
        Series::new(self.offset, self.coeffs[..n.min(self.coeffs.len())].to_vec())
    }

    pub fn is_zero_to_order(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Series) -> Series {
        let ord = self.order().min(o.order());
        let off = self.offset.min(o.offset).min(ord);
        let v = (off..ord).map(|e| self.coeff(e).unwrap() + o.coeff(e).unwrap()).collect();
        Series::new(off, v)
    }

    pub fn neg(&self) -> Series {
        Series::new(self.offset, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series::new(self.offset, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series::new(self.offset + k, self.coeffs.clone())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let a = self.trimmed();
        let b = o.trimmed();
        let off = a.offset + b.offset;
        // relative precision of a product is the smaller relative precision
        let n = a.coeffs.len().min(b.coeffs.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, x) in a.coeffs.iter().take(n).enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().take(n - i).enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            // one factor is zero to its order
            let ord = (a.order() + b.offset).min(b.order() + a.offset);
            return Series::new(ord, Vec::new());
        }
        Series::new(off, v)
    }

    /// Multiplicative inverse; the series must have a nonzero known term.
    pub fn inverse(&self) -> Result<Series> {
        let a = self.trimmed();
        if a.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let n = a.coeffs.len();
        let c0 = a.coeffs[0].clone();
        let mut v: Vec<BigRational> = Vec::with_capacity(n);
        v.push(BigRational::one() / &c0);
        for k in 1..n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !a.coeffs[j].is_zero() {
                    s += &a.coeffs[j] * &v[k - j];
                }
            }
            v.push(-s / &c0);
        }
        Ok(Series::new(-a.offset, v))
    }

    pub fn div(&self, o: &Series) -> Result<Series> {
        Ok(self.mul(&o.inverse()?))
    }

    pub fn pow_int(&self, e: u32) -> Series {
        if e == 0 {
            return Series::constant(BigRational::one(), self.order() - self.offset);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `s^(num/den)` for a power series with constant term 1, expanded as the
    /// generalized binomial series `Σ C(α, k) h^k` with `h = s − 1`.
    pub fn pow_frac(&self, num: i64, den: i64) -> Result<Series> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let c0 = self.coeff(0);
        if self.offset < 0 && self.coeffs.iter().take((-self.offset) as usize).any(|c| !c.is_zero()) {
            return Err(Error::NonUnitConstantTerm);
        }
        if c0 != Some(BigRational::one()) {
            return Err(Error::NonUnitConstantTerm);
        }
        let s = self.with_offset(0);
        let ord = s.order();
        let alpha = BigRational::new(BigInt::from(num), BigInt::from(den));
        let mut h = s.clone();
        h.coeffs[0] = BigRational::zero();
        let mut out = Series::constant(BigRational::one(), ord);
        let mut hk = Series::constant(BigRational::one(), ord);
        let mut binom = BigRational::one();
        for k in 1..ord {
            hk = hk.mul(&h).with_offset(0).truncate(ord);
            binom = binom * (&alpha - q(k - 1)) / q(k);
            if binom.is_zero() {
                break;
            }
            out = out.add(&hk.scale(&binom));
        }
        Ok(out.with_offset(0))
    }

    pub fn derivative(&self) -> Series {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * q(self.offset + i as i64))
            .collect::<Vec<_>>();
        if self.offset == 0 {
            return Series::new(0, v.into_iter().skip(1).collect());
        }
        Series::new(self.offset - 1, v)
    }

    /// `self(inner(t))` where `inner` has positive valuation and `self` is a
    /// power series.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if self.offset < 0 {
            return Err(Error::Hypothesis("outer series must be a power series".into()));
        }
        let iv = inner.valuation().unwrap_or(inner.order());
        if iv < 1 {
            return Err(Error::Hypothesis("inner series must vanish at 0".into()));
        }
        let inner = inner.with_offset(0);
        // terms a_k inner^k with k ≥ order(self) are unknown and start at t^(k·iv)
        let ord = inner.order().min(self.order() * iv);
        let mut acc = Series::constant(BigRational::zero(), ord);
        for k in (0..self.order()).rev() {
            acc = acc.mul(&inner).with_offset(0).truncate(ord);
            let a = self.coeff(k).unwrap();
            acc = acc.add(&Series::constant(a, ord));
        }
        Ok(acc)
    }

    /// Compositional inverse of `t + …` by Lagrange inversion:
    /// `[t^n] rev = (1/n) [z^(n-1)] (z/s(z))^n`.
    pub fn reversion(&self) -> Result<Series> {
        if self.offset != 1 || self.coeffs.is_empty() || self.coeffs[0].is_zero() {
            return Err(Error::NotReversible);
        }
        let ord = self.order();
        let phi = self.shift(-1).inverse()?;
        let mut out = vec![BigRational::zero(); (ord - 1) as usize];
        let mut pw = Series::constant(BigRational::one(), ord - 1);
        for n in 1..ord {
            pw = pw.mul(&phi);
            let c = pw.coeff(n - 1).expect("within order");
            out[(n - 1) as usize] = c / q(n);
        }
        Ok(Series::new(1, out))
    }

    /// Value of the truncated sum at a rational point.
    pub fn eval_partial(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let mut pw = BigRational::one();
        let base = if self.offset < 0 { BigRational::one() / x } else { x.clone() };
        for _ in 0..self.offset.unsigned_abs() {
            pw *= &base;
        }
        acc * pw
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Numerators and denominators as decimal strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn rational_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = rational_string(&c.abs());
            match e {
                0 => write!(f, "{a}")?,
                _ if c.abs().is_one() => write!(f, "t^{e}")?,
                _ => write!(f, "{a}*t^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

/// Expands a rational function at `t = 0` or in `s = 1/t` at infinity,
/// known through exponent `order − 1`.
pub fn series_expand(r: &RatFunc, at: Point, order: i64) -> Result<Series> {
    let (num, den, shift) = match at {
        Point::Zero => {
            if r.den().constant_term().is_zero() {
                return Err(Error::PoleAtExpansionPoint);
            }
            (r.num().clone(), r.den().clone(), 0i64)
        }
        Point::Infinity => {
            let dn = r.num().degree().unwrap_or(0);
            let dd = r.den().degree().unwrap_or(0);
            (r.num().reversal(dn)?, r.den().reversal(dd)?, dd as i64 - dn as i64)
        }
    };
    if num.is_zero() {
        return Ok(Series::new(order, Vec::new()));
    }
    let v = num.valuation().unwrap();
    let num = num.shift_down(v);
    let off = shift + v as i64;
    let n = (order - off).max(0) as usize;
    Ok(Series::new(off, poly_quotient_coeffs(&num, &den, n)))
}

/// First `n` Taylor coefficients of `a/b` with `b(0) ≠ 0`.
fn poly_quotient_coeffs(a: &PolyZ, b: &PolyZ, n: usize) -> Vec<BigRational> {
    let b0 = BigRational::from_integer(b.constant_term());
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = BigRational::from_integer(a.coeff(k));
        for j in 1..=k.min(b.coeffs().len().saturating_sub(1)) {
            let bj = &b.coeffs()[j];
            if !bj.is_zero() {
                s -= &out[k - j] * BigRational::from_integer(bj.clone());
            }
        }
        out.push(s / &b0);
    }
    out
}

/// Exact series of a polynomial, known to the given order.
pub fn poly_series(p: &PolyZ, order: i64) -> Series {
    let n = order.max(0) as usize;
    Series::new(0, (0..n).map(|i| BigRational::from_integer(p.coeff(i))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyZ {
        PolyZ::from_i64s(cs)
    }

    #[test]
    fn geometric_series() {
        let r = RatFunc::new(p(&[1]), p(&[1, -1])).unwrap();
        let s = series_expand(&r, Point::Zero, 4).unwrap();
        assert_eq!(s, Series::from_ints(0, &[1, 1, 1, 1]));
    }

    #[test]
    fn pole_rejected() {
        let r = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(series_expand(&r, Point::Zero, 4), Err(Error::PoleAtExpansionPoint));
    }

    #[test]
    fn expansion_at_infinity() {
        // t/(t^2+1) = s/(1+s^2)
        let r = RatFunc::new(p(&[0, 1]), p(&[1, 0, 1])).unwrap();
        let s = series_expand(&r, Point::Infinity, 6).unwrap();
        assert_eq!(s, Series::from_ints(1, &[1, 0, -1, 0, 1]));
        let big = series_expand(&RatFunc::from_poly(p(&[1, 0, 3])), Point::Infinity, 1).unwrap();
        assert_eq!(big, Series::from_ints(-2, &[3, 0, 1]));
    }

    #[test]
    fn binomial_fourth_root() {
        let s = Series::from_ints(0, &[1, 8, 0, 0]);
        assert_eq!(s.pow_frac(-1, 4).unwrap(), Series::from_ints(0, &[1, -2, 10, -60]));
        let one = Series::from_ints(0, &[1, 0, 0]);
        assert_eq!(one.pow_frac(3, 7).unwrap(), one);
    }

    #[test]
    fn fourth_root_of_fourth_power() {
        let g = poly_series(&p(&[1, 1, 1]), 12);
        let s = g.pow_int(4);
        assert_eq!(s.pow_frac(1, 4).unwrap(), g);
    }

    #[test]
    fn non_unit_constant() {
        let s = Series::from_ints(0, &[2, 1]);
        assert_eq!(s.pow_frac(1, 2), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn inverse_and_order() {
        let s = Series::from_ints(0, &[1, -1, 0, 0, 0]);
        assert_eq!(s.inverse().unwrap(), Series::from_ints(0, &[1, 1, 1, 1, 1]));
        let a = Series::from_ints(0, &[1, 2, 3]);
        let b = Series::from_ints(0, &[1, 1]);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&b).order(), 2);
    }

    #[test]
    fn reversion_examples() {
        let t = Series::from_ints(1, &[1, 0, 0, 0]);
        assert_eq!(t.reversion().unwrap(), t);
        let s = Series::from_ints(1, &[1, -3, 5, -6, 7, -7, 3, 4]);
        let r = s.reversion().unwrap();
        assert_eq!(r, Series::from_ints(1, &[1, 3, 13, 66, 365, 2128, 12859, 79745]));
        assert_eq!(Series::from_ints(0, &[1, 1]).reversion(), Err(Error::NotReversible));
    }

    #[test]
    fn composition() {
        // 1/(1-u) with u = t + t^2
        let outer = Series::from_ints(0, &[1, 1, 1, 1, 1]);
        let inner = Series::from_ints(1, &[1, 1, 0, 0]);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c, Series::from_ints(0, &[1, 1, 2, 3, 5]));
    }

    #[test]
    fn derivative_of_laurent() {
        let s = Series::from_ints(-1, &[1, 2, 3]);
        assert_eq!(s.derivative(), Series::from_ints(-2, &[-1, 0, 3]));
    }
}
