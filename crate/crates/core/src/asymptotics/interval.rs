//! Outward-rounded `f64` intervals.

use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "{lo} > {hi}");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Enclosure of an exact rational.
    pub fn from_rational(x: &BigRational) -> Self {
        let f = x.to_f64().expect("rational out of f64 range");
        Interval { lo: f.next_down(), hi: f.next_up() }
    }

    /// Enclosure of an integer; exact below 2⁵³.
    pub fn from_int(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) if v.unsigned_abs() < (1u64 << 53) => Interval::point(v as f64),
            _ => {
                let f = x.to_f64().expect("integer out of f64 range");
                Interval { lo: f.next_down(), hi: f.next_up() }
            }
        }
    }

    pub fn hull(a: &BigRational, b: &BigRational) -> Self {
        let (x, y) = (Interval::from_rational(a), Interval::from_rational(b));
        Interval { lo: x.lo.min(y.lo), hi: x.hi.max(y.hi) }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Interval::point(1.0);
        for _ in 0..k {
            acc = acc * *self;
        }
        acc
    }

    /// Monotone functions evaluated at the endpoints and widened by two ulps
    /// to cover library rounding.
    fn monotone(&self, f: fn(f64) -> f64) -> Self {
        Interval { lo: f(self.lo).next_down().next_down(), hi: f(self.hi).next_up().next_up() }
    }

    pub fn exp(&self) -> Self {
        self.monotone(f64::exp)
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self) -> Self {
        self.monotone(f64::ln)
    }

    pub fn max(&self, o: &Interval) -> Self {
        Interval { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn min(&self, o: &Interval) -> Self {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.min(o.hi) }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: (self.lo + o.lo).next_down(), hi: (self.hi + o.hi).next_up() }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: (self.lo - o.hi).next_down(), hi: (self.hi - o.lo).next_up() }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: lo.next_down(), hi: hi.next_up() }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "interval division by an interval containing 0");
        let p = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: lo.next_down(), hi: hi.next_up() }
    }
}
