//! Parameter tuples of the self-adjoint family
//! `A(t) F + (B(t) F′)′ = 0`, `A = b₃t³+b₂t²+b₁t+b₀`, `B = c₅t⁵+c₄t⁴+c₃t³+c₂t²−t`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::PolyZ;
use crate::error::{Error, Result};
use crate::picard::{HolonomicRecurrence, SecondOrderOde};

pub const COORDS: [&str; 8] = ["b3", "b2", "b1", "b0", "c5", "c4", "c3", "c2"];

/// Coordinates negated by `t ↦ −t` (after rescaling so that `B = −t + …`).
pub const FLIPPED: [bool; 8] = [false, true, false, true, false, true, false, true];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SearchTuple(pub [i64; 8]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleKind {
    Regular,
    /// `b₃ = c₅ = 0`: the recurrence has order 3.
    OrderThree,
    /// `A = 0` and `B = −t`: every `u_n` with `n ≥ 1` vanishes.
    Trivial,
}

impl SearchTuple {
    pub const GAMMA1_7: SearchTuple = SearchTuple([4, 21, 15, 1, 1, 9, 13, 4]);

    pub fn b(&self) -> [i64; 4] {
        let t = self.0;
        [t[3], t[2], t[1], t[0]]
    }

    /// `[c₂, c₃, c₄, c₅]`.
    pub fn c(&self) -> [i64; 4] {
        let t = self.0;
        [t[7], t[6], t[5], t[4]]
    }

    pub fn kind(&self) -> TupleKind {
        if self.0.iter().all(|&x| x == 0) {
            TupleKind::Trivial
        } else if self.0[0] == 0 && self.0[4] == 0 {
            TupleKind::OrderThree
        } else {
            TupleKind::Regular
        }
    }

    /// Image under `t ↦ −t`.
    pub fn flipped(&self) -> SearchTuple {
        let mut t = self.0;
        for (x, f) in t.iter_mut().zip(FLIPPED) {
            if f {
                *x = -*x;
            }
        }
        SearchTuple(t)
    }

    /// Weights `p_k(n) = c_{k+2}(n−k)(n+1) + b_k` over leading `(n+1)²`.
    pub fn weights(&self) -> [[i64; 3]; 4] {
        let (b, c) = (self.b(), self.c());
        let mut w = [[0i64; 3]; 4];
        for k in 0..4 {
            let kk = k as i64;
            // (n−k)(n+1) = n² + (1−k)n − k
            w[k] = [c[k] * -kk + b[k], c[k] * (1 - kk), c[k]];
        }
        w
    }

    pub fn to_recurrence(&self) -> HolonomicRecurrence {
        let terms: Vec<PolyZ> = self.weights().iter().map(|w| PolyZ::from_i64s(w)).collect();
        HolonomicRecurrence::new(
            PolyZ::from_i64s(&[1, 2, 1]),
            terms,
            vec![BigRational::one()],
            0,
        )
    }

    /// The differential operator `B F″ + B′ F′ + A F`.
    pub fn to_ode(&self) -> SecondOrderOde {
        let b = self.b();
        let c = self.c();
        let a = PolyZ::from_i64s(&b);
        let bb = PolyZ::from_i64s(&[0, -1, c[0], c[1], c[2], c[3]]);
        SecondOrderOde::new(a, bb.derivative(), bb)
    }
}

impl fmt::Display for SearchTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for SearchTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Config(format!("tuple '{s}': {e}"))))
            .collect::<Result<_>>()?;
        let arr: [i64; 8] = v.try_into().map_err(|_| Error::Config(format!("tuple '{s}' needs 8 integers")))?;
        Ok(SearchTuple(arr))
    }
}

/// Inclusive per-coordinate ranges, enumerated lexicographically in the
/// order `b3, b2, b1, b0, c5, c4, c3, c2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub lo: [i64; 8],
    pub hi: [i64; 8],
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox { lo: [-10, -25, -15, -5, -5, -10, -15, 0], hi: [10, 25, 15, 5, 5, 10, 15, 10] }
    }
}

impl SearchBox {
    pub fn around(center: SearchTuple, radius: i64) -> Self {
        SearchBox { lo: center.0.map(|x| x - radius), hi: center.0.map(|x| x + radius) }
    }

    pub fn sizes(&self) -> [u64; 8] {
        let mut s = [0u64; 8];
        for i in 0..8 {
            s[i] = (self.hi[i] - self.lo[i] + 1).max(0) as u64;
        }
        s
    }

    pub fn len(&self) -> u64 {
        self.sizes().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, t: &SearchTuple) -> bool {
        (0..8).all(|i| self.lo[i] <= t.0[i] && t.0[i] <= self.hi[i])
    }

    /// Tuple at lexicographic position `idx`.
    pub fn at(&self, mut idx: u64) -> SearchTuple {
        let sizes = self.sizes();
        let mut t = [0i64; 8];
        for i in (0..8).rev() {
            t[i] = self.lo[i] + (idx % sizes[i]) as i64;
            idx /= sizes[i];
        }
        SearchTuple(t)
    }

    pub fn index_of(&self, t: &SearchTuple) -> Option<u64> {
        if !self.contains(t) {
            return None;
        }
        let sizes = self.sizes();
        Some((0..8).fold(0u64, |acc, i| acc * sizes[i] + (t.0[i] - self.lo[i]) as u64))
    }

    /// True when the box is mapped onto itself by `t ↦ −t`.
    pub fn is_symmetric(&self) -> bool {
        (0..8).all(|i| !FLIPPED[i] || self.lo[i] == -self.hi[i])
    }

    pub fn validate(&self, allow_negative_c2: bool) -> Result<()> {
        if (0..8).any(|i| self.lo[i] > self.hi[i]) {
            return Err(Error::Config("empty coordinate range".into()));
        }
        if !allow_negative_c2 && self.lo[7] < 0 {
            return Err(Error::Config("c2 must be nonnegative (t -> -t symmetry); pass allow_negative_c2 to override".into()));
        }
        Ok(())
    }

    /// Parses `default`, `around:<8 ints>:<radius>`, or a comma list of
    /// `name=lo..hi` / `name=v` overriding the default box.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "default" {
            return Ok(SearchBox::default());
        }
        if let Some(rest) = s.strip_prefix("around:") {
            let (center, radius) = rest.rsplit_once(':').ok_or_else(|| Error::Config(format!("box '{s}'")))?;
            let r: i64 = radius.parse().map_err(|e| Error::Config(format!("radius: {e}")))?;
            return Ok(SearchBox::around(center.parse()?, r));
        }
        let mut b = SearchBox::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, range) = part.split_once('=').ok_or_else(|| Error::Config(format!("box entry '{part}'")))?;
            let i = COORDS
                .iter()
                .position(|c| *c == name.trim())
                .ok_or_else(|| Error::Config(format!("unknown coordinate '{name}'")))?;
            let num = |x: &str| x.trim().parse::<i64>().map_err(|e| Error::Config(format!("'{part}': {e}")));
            let (lo, hi) = match range.split_once("..") {
                Some((a, b)) => (num(a)?, num(b)?),
                None => (num(range)?, num(range)?),
            };
            b.lo[i] = lo;
            b.hi[i] = hi;
        }
        Ok(b)
    }

    pub fn spec_string(&self) -> String {
        (0..8).map(|i| format!("{}={}..{}", COORDS[i], self.lo[i], self.hi[i])).collect::<Vec<_>>().join(",")
    }
}

/// `u_n` through `depth` as exact integers when all are integral.
pub fn integer_coefficients(t: &SearchTuple, depth: usize) -> Option<Vec<BigInt>> {
    let (u, fail) = t.to_recurrence().expand_integral(depth);
    fail.is_none().then_some(u)
}
