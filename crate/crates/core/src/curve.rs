//! Weierstrass families over Q(t) and their modular invariants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::parse::parse_ratfunc_at;
use crate::algebra::{PolyZ, RatFunc};
use crate::error::{Error, Result};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with coefficients in Q(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassFamily {
    pub name: String,
    pub a1: RatFunc,
    pub a2: RatFunc,
    pub a3: RatFunc,
    pub a4: RatFunc,
    pub a6: RatFunc,
}

const KEYS: [&str; 5] = ["a1", "a2", "a3", "a4", "a6"];

impl WeierstrassFamily {
    pub fn new(name: &str, a: [RatFunc; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        WeierstrassFamily { name: name.to_string(), a1, a2, a3, a4, a6 }
    }

    pub fn coords(&self) -> [(&'static str, &RatFunc); 5] {
        [("a1", &self.a1), ("a2", &self.a2), ("a3", &self.a3), ("a4", &self.a4), ("a6", &self.a6)]
    }

    /// Parses the `key = value` family format; `#` starts a comment and
    /// missing coordinates default to zero.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name: Option<String> = None;
        let mut vals: BTreeMap<&str, RatFunc> = BTreeMap::new();
        let mut seen_any = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                let col = line.len() - line.trim_start().len() + 1;
                return Err(Error::Parse { line: line_no, col, msg: "expected 'key = value'".into() });
            };
            let key = line[..eq].trim();
            let value = &line[eq + 1..];
            seen_any = true;
            if key == "name" {
                name = Some(value.trim().to_string());
                continue;
            }
            let Some(k) = KEYS.iter().find(|k| **k == key) else {
                let col = line.find(key).unwrap_or(0) + 1;
                return Err(Error::Parse { line: line_no, col, msg: format!("unknown key '{key}'") });
            };
            if vals.contains_key(k) {
                let col = line.find(key).unwrap_or(0) + 1;
                return Err(Error::Parse { line: line_no, col, msg: format!("duplicate key '{key}'") });
            }
            vals.insert(k, parse_ratfunc_at(value, line_no, eq + 1)?);
        }
        if !seen_any {
            return Err(Error::Parse { line: 1, col: 1, msg: "empty family file".into() });
        }
        let mut get = |k: &str| vals.remove(k).unwrap_or_else(RatFunc::zero);
        Ok(WeierstrassFamily {
            name: name.unwrap_or_default(),
            a1: get("a1"),
            a2: get("a2"),
            a3: get("a3"),
            a4: get("a4"),
            a6: get("a6"),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("name = {}\n", self.name);
        for (k, v) in self.coords() {
            if !v.is_zero() {
                s.push_str(&format!("{k} = {v}\n"));
            }
        }
        s
    }

    pub fn has_polynomial_coordinates(&self) -> bool {
        self.coords().iter().all(|(_, r)| r.is_integral_polynomial())
    }

    /// The family after `t ↦ k t`.
    pub fn scale_var(&self, k: &BigRational) -> Self {
        WeierstrassFamily {
            name: format!("{} (t -> {}t)", self.name, k),
            a1: self.a1.scale_var(k),
            a2: self.a2.scale_var(k),
            a3: self.a3.scale_var(k),
            a4: self.a4.scale_var(k),
            a6: self.a6.scale_var(k),
        }
    }
}

/// Modular invariants, kept as the integral-normalized `12g₂` and `−216g₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub g2_12: RatFunc,
    pub g3_m216: RatFunc,
    pub delta: RatFunc,
    pub j: RatFunc,
    pub gamma: RatFunc,
    pub polynomial_coordinates: bool,
}

impl InvariantSet {
    pub fn g2(&self) -> RatFunc {
        (&self.g2_12 / &RatFunc::from_int(12)).unwrap()
    }

    pub fn g3(&self) -> RatFunc {
        (&self.g3_m216 / &RatFunc::from_int(-216)).unwrap()
    }

    /// `1/j = 12³Δ/(12g₂)³`
    pub fn inv_j(&self) -> Result<RatFunc> {
        &(&self.delta * &RatFunc::from_int(1728)) / &self.g2_12.pow(3)
    }
}

pub fn compute_invariants(fam: &WeierstrassFamily) -> Result<InvariantSet> {
    let (a1, a2, a3, a4, a6) = (&fam.a1, &fam.a2, &fam.a3, &fam.a4, &fam.a6);
    let c = RatFunc::from_int;
    let b2 = a1 * a1 + &c(4) * a2;
    let b4 = a1 * a3 + &c(2) * a4;
    let b6 = a3 * a3 + &c(4) * a6;
    let g2_12 = &b2 * &b2 - &c(24) * &b4;
    let g3_m216 = &b2 * &(&b2 * &b2) - &c(36) * &(&b2 * &b4) + &c(216) * &b6;
    let g2 = (&g2_12 / &c(12))?;
    let g3 = (&g3_m216 / &c(-216))?;
    let delta = &g2 * &(&g2 * &g2) - &c(27) * &(&g3 * &g3);
    if delta.is_zero() {
        return Err(Error::IdenticallySingular);
    }
    let j = (&(&g2 * &(&g2 * &g2)) / &delta)?;
    let gamma = &c(3) * &(&g3 * &g2.derivative()) - &c(2) * &(&g2 * &g3.derivative());
    Ok(InvariantSet {
        g2_12,
        g3_m216,
        delta,
        j,
        gamma,
        polynomial_coordinates: fam.has_polynomial_coordinates(),
    })
}

/// Shape of the fiber at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub values: [BigRational; 5],
    /// `Some(±1)` when the reduction is `y² ± xy = x³`.
    pub nodal_sign: Option<i32>,
}

pub fn reduce_mod_t(fam: &WeierstrassFamily) -> Result<Reduction> {
    let mut values: Vec<BigRational> = Vec::with_capacity(5);
    for (k, r) in fam.coords() {
        values.push(r.at_zero().map_err(|_| Error::PoleAtOrigin(k.to_string()))?);
    }
    let rest_zero = values[1..].iter().all(|v| v.is_zero());
    let one = BigRational::one();
    let nodal_sign = if rest_zero && values[0] == one {
        Some(1)
    } else if rest_zero && values[0] == -one {
        Some(-1)
    } else {
        None
    };
    Ok(Reduction { values: values.try_into().unwrap(), nodal_sign })
}

pub fn check_delta_vanishes_at_zero(inv: &InvariantSet) -> bool {
    inv.delta.num().constant_term().is_zero()
}

/// Integer roots of a nonzero polynomial (rational root test on divisors of
/// the constant term after removing powers of `t`). `None` when the constant
/// term is too large to factor by trial division.
pub fn integer_roots(p: &PolyZ) -> Option<Vec<BigInt>> {
    if p.is_zero() {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let v = p.valuation().unwrap();
    if v > 0 {
        roots.push(BigInt::zero());
    }
    let q = p.shift_down(v);
    let c = q.constant_term().abs();
    let c64 = c.to_u64()?;
    if c64 > 1u64 << 50 {
        return None;
    }
    let mut divisors = Vec::new();
    let mut d = 1u64;
    while d * d <= c64 {
        if c64 % d == 0 {
            divisors.push(d);
            if d * d != c64 {
                divisors.push(c64 / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    for d in divisors {
        for r in [BigInt::from(d), -BigInt::from(d)] {
            if q.eval(&r).is_zero() {
                roots.push(r);
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Fails with a "shift required" error listing candidate integer shifts
/// when the discriminant does not vanish at the origin.
pub fn require_singular_origin(inv: &InvariantSet) -> Result<()> {
    if check_delta_vanishes_at_zero(inv) {
        return Ok(());
    }
    let roots = match integer_roots(inv.delta.num()) {
        Some(r) if r.is_empty() => "none".to_string(),
        Some(r) => r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        None => "not computed".to_string(),
    };
    Err(Error::ShiftRequired(roots))
}
