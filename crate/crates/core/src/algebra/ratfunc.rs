//! Rational functions over Q, kept in lowest terms with integral parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::PolyZ;
use crate::error::{Error, Result};

/// `num/den` with gcd 1 over Q, coprime integer contents and a positive
/// leading coefficient on `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: PolyZ,
    den: PolyZ,
}

impl RatFunc {
    pub fn new(num: PolyZ, den: PolyZ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: PolyZ, den: PolyZ) -> Self {
        if num.is_zero() {
            return RatFunc { num: PolyZ::zero(), den: PolyZ::one() };
        }
        let g = num.gcd(&den).primitive_part();
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let h = num.content().gcd(&den.content());
        if !h.is_one() {
            num = num.div_scalar_exact(&h);
            den = den.div_scalar_exact(&h);
        }
        if den.leading().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: PolyZ) -> Self {
        RatFunc { num: p, den: PolyZ::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(PolyZ::constant(BigInt::from(c)))
    }

    pub fn from_rational(c: &BigRational) -> Self {
        Self::normalize(PolyZ::constant(c.numer().clone()), PolyZ::constant(c.denom().clone()))
    }

    pub fn zero() -> Self {
        Self::from_poly(PolyZ::zero())
    }

    pub fn var() -> Self {
        Self::from_poly(PolyZ::var())
    }

    pub fn num(&self) -> &PolyZ {
        &self.num
    }

    pub fn den(&self) -> &PolyZ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the function is a polynomial with integer coefficients.
    pub fn is_integral_polynomial(&self) -> bool {
        self.den.is_constant() && self.den.leading().is_one()
    }

    /// True when the function is a polynomial over Q.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `(ν, δ)`: constant terms of the numerator and denominator.
    pub fn nu_delta(&self) -> (BigInt, BigInt) {
        (self.num.constant_term(), self.den.constant_term())
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalize(n, &self.den * &self.den)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return Err(Error::PoleAtExpansionPoint);
        }
        Ok(self.num.eval_rational(x) / d)
    }

    /// Value at `t = 0`, if finite.
    pub fn at_zero(&self) -> Result<BigRational> {
        self.eval(&BigRational::zero())
    }

    /// `r(k t)` for rational `k`.
    pub fn scale_var(&self, k: &BigRational) -> Self {
        let (a, b) = (k.numer(), k.denom());
        let d = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        let clear = |p: &PolyZ| {
            let mut out = Vec::with_capacity(p.coeffs().len());
            for (i, c) in p.coeffs().iter().enumerate() {
                out.push(c * num_traits::pow(a.clone(), i) * num_traits::pow(b.clone(), d - i));
            }
            PolyZ::new(out)
        };
        Self::normalize(clear(&self.num), clear(&self.den))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.den.is_constant() && self.den.leading().is_one() {
            return self.num.to_string_var(var);
        }
        format!("({})/({})", self.num.to_string_var(var), self.den.to_string_var(var))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::normalize(&self.num + &o.num, self.den.clone());
        }
        RatFunc::normalize(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, o: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyZ {
        PolyZ::from_i64s(cs)
    }

    #[test]
    fn lowest_terms() {
        let r = RatFunc::new(p(&[2, 2]) * p(&[1, 3]), p(&[-4, -4])).unwrap();
        assert_eq!(r.num(), &p(&[-1, -3]));
        assert_eq!(r.den(), &p(&[2]));
    }

    #[test]
    fn nu_delta_reads_constants() {
        let r = RatFunc::new(p(&[3, 2]), p(&[-1, 5])).unwrap();
        assert_eq!(r.nu_delta(), (BigInt::from(3), BigInt::from(-1)));
        let s = RatFunc::new(p(&[0, 1]), p(&[1, 0, 1])).unwrap();
        assert_eq!(s.nu_delta(), (BigInt::from(0), BigInt::from(1)));
    }

    #[test]
    fn derivative_quotient_rule() {
        let r = RatFunc::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        let d = r.derivative();
        assert_eq!(d, RatFunc::new(p(&[1]), p(&[1, 2, 1])).unwrap());
    }

    #[test]
    fn scaling_by_rational() {
        let r = RatFunc::new(p(&[1, 1]), p(&[1, 0, 1])).unwrap();
        let k = BigRational::new(BigInt::from(2), BigInt::from(3));
        let s = r.scale_var(&k);
        let x = BigRational::new(BigInt::from(5), BigInt::from(7));
        assert_eq!(s.eval(&x).unwrap(), r.eval(&(&x * &k)).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(p(&[1]), PolyZ::zero()), Err(Error::DivisionByZero));
    }
}
