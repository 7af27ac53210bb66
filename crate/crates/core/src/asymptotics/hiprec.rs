//! Binary fixed-point evaluation of the closed-form growth constants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// `value · 2^bits` stored as an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    pub raw: BigInt,
    pub bits: u32,
}

impl Fixed {
    pub fn from_int(x: i64, bits: u32) -> Self {
        Fixed { raw: BigInt::from(x) << bits, bits }
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed { raw: &self.raw + &o.raw, bits: self.bits }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        Fixed { raw: (&self.raw * &o.raw) >> self.bits, bits: self.bits }
    }

    pub fn div(&self, o: &Fixed) -> Fixed {
        Fixed { raw: (&self.raw << self.bits) / &o.raw, bits: self.bits }
    }

    pub fn div_int(&self, k: i64) -> Fixed {
        Fixed { raw: &self.raw / BigInt::from(k), bits: self.bits }
    }

    pub fn mul_int(&self, k: i64) -> Fixed {
        Fixed { raw: &self.raw * BigInt::from(k), bits: self.bits }
    }

    pub fn sqrt(&self) -> Fixed {
        Fixed { raw: (&self.raw << self.bits).sqrt(), bits: self.bits }
    }

    pub fn powi(&self, k: u32) -> Fixed {
        let mut acc = Fixed::from_int(1, self.bits);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Truncated decimal expansion with `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.raw.is_negative();
        let scaled = (self.raw.abs() * num_traits::pow(BigInt::from(10), digits)) >> self.bits;
        let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        format!("{}{int}.{frac}", if neg { "-" } else { "" })
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().unwrap()
    }
}

/// `atan(1/k)` by its alternating series.
fn atan_inv(k: i64, bits: u32) -> Fixed {
    let k2 = BigInt::from(k * k);
    let mut term = (BigInt::one() << bits) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut i = 0i64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * i + 1);
        if i % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &k2;
        i += 1;
    }
    Fixed { raw: sum, bits }
}

/// Machin's formula `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(bits: u32) -> Fixed {
    atan_inv(5, bits).mul_int(16).add(&atan_inv(239, bits).mul_int(-4))
}

/// Taylor series of `sin`, for moderate arguments.
pub fn sin(x: &Fixed) -> Fixed {
    let bits = x.bits;
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut sum = BigInt::zero();
    let mut i = 0i64;
    while !term.raw.is_zero() {
        sum += &term.raw;
        term = term.mul(&x2).div_int(-(2 * i + 2) * (2 * i + 3));
        i += 1;
    }
    Fixed { raw: sum, bits }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    Gamma1_7,
    Gamma8_4_1_2,
    Gamma1_10,
}

impl ClosedForm {
    pub fn parse(tag: &str) -> Option<Self> {
        match tag {
            "gamma1_7" => Some(ClosedForm::Gamma1_7),
            "gamma_8_4_1_2" => Some(ClosedForm::Gamma8_4_1_2),
            "gamma1_10" => Some(ClosedForm::Gamma1_10),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ClosedForm::Gamma1_7 => "gamma1_7",
            ClosedForm::Gamma8_4_1_2 => "gamma_8_4_1_2",
            ClosedForm::Gamma1_10 => "gamma1_10",
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            ClosedForm::Gamma1_7 => "7 sin(4pi/7) / (256 pi sin(6pi/7)^3 sin(2pi/7)^5)",
            ClosedForm::Gamma8_4_1_2 => "2/pi",
            ClosedForm::Gamma1_10 => "2/(pi sqrt(5+2 sqrt 5))",
        }
    }

    /// Fixed-point value with `bits` fractional bits (a few low bits are
    /// lost to truncation).
    pub fn value(&self, bits: u32) -> Fixed {
        let wb = bits + 32;
        let p = pi(wb);
        let v = match self {
            ClosedForm::Gamma1_7 => {
                let s = |k: i64| sin(&p.mul_int(k).div_int(7));
                let num = s(4).mul_int(7);
                let den = p.mul_int(256).mul(&s(6).powi(3)).mul(&s(2).powi(5));
                num.div(&den)
            }
            ClosedForm::Gamma8_4_1_2 => Fixed::from_int(2, wb).div(&p),
            ClosedForm::Gamma1_10 => {
                let r5 = Fixed::from_int(5, wb).sqrt();
                let inner = Fixed::from_int(5, wb).add(&r5.mul_int(2)).sqrt();
                Fixed::from_int(2, wb).div(&p.mul(&inner))
            }
        };
        Fixed { raw: v.raw >> 32, bits }
    }

    /// Decimal value to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
        self.value(bits).to_decimal(digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        assert_eq!(pi(200).to_decimal(40), "3.1415926535897932384626433832795028841971");
    }

    #[test]
    fn sine_values() {
        let p = pi(200);
        let s = sin(&p.div_int(6));
        assert!((s.to_f64() - 0.5).abs() < 1e-18);
        let r2 = Fixed::from_int(2, 200).sqrt();
        assert_eq!(&r2.to_decimal(30), "1.414213562373095048801688724209");
    }

    #[test]
    fn constants() {
        assert_eq!(&ClosedForm::Gamma1_7.decimal(16), "0.3556270700876065");
        assert_eq!(&ClosedForm::Gamma8_4_1_2.decimal(8), "0.63661977");
        assert_eq!(&ClosedForm::Gamma1_10.decimal(8), "0.20685030");
    }
}
