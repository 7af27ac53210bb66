//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored low degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t`
    pub fn var() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar_exact(&c)
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Primitive part with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_part();
        if p.leading().is_negative() {
            -p
        } else {
            p
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Drops the factor `t^k`; the caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// `p(k t)`
    pub fn scale_var(&self, k: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= k;
        }
        Self::new(out)
    }

    /// `p(q(t))`
    pub fn compose(&self, q: &PolyZ) -> Self {
        let mut acc = PolyZ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &PolyZ::constant(c.clone());
        }
        acc
    }

    /// `t^d p(1/t)`
    pub fn reversal(&self, d: usize) -> Result<Self> {
        match self.degree() {
            None => Ok(Self::zero()),
            Some(deg) if d < deg => Err(Error::InsufficientDegreeShift { shift: d, degree: deg }),
            Some(_) => {
                let mut v = vec![BigInt::zero(); d + 1];
                for (i, c) in self.coeffs.iter().enumerate() {
                    v[d - i] = c.clone();
                }
                Ok(Self::new(v))
            }
        }
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &PolyZ) -> Self {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let lb = b.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            r = &r.scale(&lb) - &b.scale(&lr).shift_up(dr - db);
        }
        r
    }

    /// Exact division over the integers; fails unless `b` divides `self` in Z[t].
    pub fn div_exact(&self, b: &PolyZ) -> Option<Self> {
        let db = b.degree()?;
        let lb = b.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (qc, rem) = r.leading().div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &b.scale(&qc).shift_up(dr - db);
            q[dr - db] = qc;
        }
        Some(Self::new(q))
    }

    /// Greatest common divisor in Z[t]: primitive-remainder sequence, with
    /// the gcd of the contents restored and a positive leading coefficient.
    pub fn gcd(&self, other: &PolyZ) -> Self {
        if self.is_zero() {
            return other.normalized_keep_content();
        }
        if other.is_zero() {
            return self.normalized_keep_content();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.normalized().scale(&c)
    }

    fn normalized_keep_content(&self) -> Self {
        if self.leading().is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Squarefree part of a primitive polynomial.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.normalized();
        }
        self.primitive_part()
            .div_exact(&g.primitive_part())
            .expect("gcd divides")
            .normalized()
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyZ({self})")
    }
}

impl Add for &PolyZ {
    type Output = PolyZ;
    fn add(self, o: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyZ::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &PolyZ {
    type Output = PolyZ;
    fn sub(self, o: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyZ::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &PolyZ {
    type Output = PolyZ;
    fn mul(self, o: &PolyZ) -> PolyZ {
        if self.is_zero() || o.is_zero() {
            return PolyZ::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PolyZ::new(v)
    }
}

impl Neg for PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        PolyZ { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyZ {
            type Output = PolyZ;
            fn $m(self, o: PolyZ) -> PolyZ {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Polynomial with rational coefficients, used for polynomials in the
/// recurrence index where exact decompositions can leave the integers.
pub fn eval_poly_q(cs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in cs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyZ {
        PolyZ::from_i64s(cs)
    }

    #[test]
    fn derivative_of_cubic() {
        assert_eq!(p(&[-1, 5, 8, 1]).derivative(), p(&[5, 16, 3]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(PolyZ::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]), PolyZ::zero());
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn reversal_needs_room() {
        let q = p(&[1, 2, 3]);
        assert_eq!(q.reversal(2).unwrap(), p(&[3, 2, 1]));
        assert_eq!(q.reversal(4).unwrap(), p(&[0, 0, 3, 2, 1]));
        assert!(matches!(q.reversal(1), Err(Error::InsufficientDegreeShift { .. })));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let a = p(&[1, 1]) * p(&[-2, 0, 3]);
        let b = p(&[1, 1]) * p(&[5, 7]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let c = p(&[2, 2]).scale(&BigInt::from(3));
        assert_eq!(c.gcd(&p(&[4, 4])), p(&[2, 2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]) * p(&[-2, 0, 3]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-2, 0, 3])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
    }

    #[test]
    fn compose_and_scale() {
        let q = p(&[1, 1, 1]);
        assert_eq!(q.scale_var(&BigInt::from(2)), p(&[1, 2, 4]));
        assert_eq!(q.compose(&p(&[1, 2])), p(&[3, 6, 4]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 5, 8, 1]).to_string(), "t^3 + 8*t^2 + 5*t - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn squarefree() {
        let a = p(&[1, 1]) * p(&[1, 1]) * p(&[-3, 1]);
        assert_eq!(a.squarefree_part(), p(&[-3, -2, 1]));
    }
}
