//! Exact real-root counting and isolation for integer polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::PolyZ;
use crate::error::{Error, Result};

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn mid_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

/// Remainder of `a` by `b` up to a positive factor.
fn signed_rem(a: &PolyZ, b: &PolyZ) -> PolyZ {
    let db = b.degree().expect("division by zero polynomial");
    let lb = b.leading();
    let (lb_abs, b_pos) = if lb.is_negative() { (-&lb, -b) } else { (lb.clone(), b.clone()) };
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading();
        r = &r.scale(&lb_abs) - &b_pos.scale(&lr).shift_up(dr - db);
        if !r.is_zero() {
            r = r.primitive_part_positive();
        }
    }
    r
}

trait PositivePrimitive {
    fn primitive_part_positive(&self) -> PolyZ;
}

impl PositivePrimitive for PolyZ {
    /// Division by the absolute content, keeping signs.
    fn primitive_part_positive(&self) -> PolyZ {
        let c = self.content().abs();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }
}

pub fn sturm_sequence(p: &PolyZ) -> Vec<PolyZ> {
    let mut seq = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(p.derivative().primitive_part_positive());
    loop {
        let n = seq.len();
        let r = signed_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes<I: Iterator<Item = i32>>(signs: I) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn changes_at(seq: &[PolyZ], x: &BigRational) -> usize {
    sign_changes(seq.iter().map(|p| sign(&p.eval_rational(x))))
}

fn changes_at_pos_inf(seq: &[PolyZ]) -> usize {
    sign_changes(seq.iter().map(|p| if p.is_zero() { 0 } else if p.leading().is_positive() { 1 } else { -1 }))
}

/// Distinct real roots in `(a, b]`; `a` must not be a root.
pub fn count_roots(seq: &[PolyZ], a: &BigRational, b: &BigRational) -> usize {
    changes_at(seq, a).saturating_sub(changes_at(seq, b))
}

/// Distinct real roots in `(a, ∞)`; `a` must not be a root.
pub fn count_roots_above(seq: &[PolyZ], a: &BigRational) -> usize {
    changes_at(seq, a).saturating_sub(changes_at_pos_inf(seq))
}

/// `1 + max |c_i / c_d|`, a bound on the moduli of all roots.
pub fn cauchy_bound(p: &PolyZ) -> BigRational {
    let lc = p.leading().abs();
    let m = p.coeffs().iter().map(|c| BigRational::new(c.abs(), lc.clone())).max().unwrap_or_else(BigRational::zero);
    m + BigRational::one()
}

/// Enclosure of the largest positive root together with the number of
/// distinct positive roots.
pub fn largest_positive_root(p: &PolyZ, tol: &BigRational) -> Result<(RationalInterval, usize)> {
    let sf = p.squarefree_part();
    let sf = sf.shift_down(sf.valuation().unwrap_or(0));
    let seq = sturm_sequence(&sf);
    let zero = BigRational::zero();
    let mut hi = cauchy_bound(&sf);
    let total = count_roots(&seq, &zero, &hi);
    if total == 0 {
        return Err(Error::NoPositiveRoot);
    }
    let mut lo = zero;
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > *tol {
        let mut mid = (&lo + &hi) / &two;
        while sf.eval_rational(&mid).is_zero() {
            mid = (&mid + &hi) / &two;
        }
        if count_roots(&seq, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // keep the endpoints off the root so that p changes sign strictly
    while sf.eval_rational(&hi).is_zero() {
        hi = &hi + (&hi - &lo) / &two;
    }
    Ok((RationalInterval { lo, hi }, total))
}

/// Positive root enclosure of width at most `tol`; fails if `p` has no
/// positive root.
pub fn dominant_root(p: &PolyZ, tol: &BigRational) -> Result<RationalInterval> {
    largest_positive_root(p, tol).map(|x| x.0)
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester resultant of two nonconstant polynomials.
pub fn resultant(a: &PolyZ, b: &PolyZ) -> BigInt {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else { return BigInt::zero() };
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..db {
        for k in 0..=da {
            m[i][i + k] = a.coeff(da - k);
        }
    }
    for i in 0..da {
        for k in 0..=db {
            m[db + i][i + k] = b.coeff(db - k);
        }
    }
    bareiss_det(m)
}

/// Polynomial in `m` whose roots are all products `z_i z_j` of roots of `p`:
/// `Res_z(p(z), z^d p(m/z))`, by evaluation at `d² + 1` points.
pub fn product_resultant(p: &PolyZ) -> PolyZ {
    let d = p.degree().unwrap_or(0);
    let pts: Vec<i64> = (0..=(d * d) as i64).collect();
    let vals: Vec<BigInt> = pts
        .iter()
        .map(|&m| {
            let mb = BigInt::from(m);
            let cs: Vec<BigInt> = (0..=d).map(|i| p.coeff(d - i) * num_traits::pow(mb.clone(), d - i)).collect();
            resultant(p, &PolyZ::new(cs))
        })
        .collect();
    interpolate(&pts, &vals)
}

/// Integer-valued Lagrange interpolation; the result is expected to have
/// integer coefficients.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> PolyZ {
    // Newton divided differences over the rationals
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(xs[i] - xs[i - j]));
        }
    }
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigRational::from_integer(xs[i].into());
        }
        next[0] += &dd[i];
        acc = next;
    }
    PolyZ::new(acc.into_iter().map(|c| {
        debug_assert!(c.is_integer());
        c.to_integer()
    }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// Every other root has strictly smaller modulus.
    Dominant,
    /// Some other root has modulus at least λ.
    NotDominant,
    Unverified,
}

/// Decides whether the root enclosed by `lam` strictly dominates all other
/// roots of `p` in modulus. Any root `w ≠ λ` with `|w| ≥ λ` makes `|w|²` or
/// `w²` a real root of the product resultant at or above `λ²`.
pub fn dominance(p: &PolyZ, lam: &RationalInterval) -> Dominance {
    let r = product_resultant(p);
    if r.is_zero() {
        return Dominance::Unverified;
    }
    let lo2 = &lam.lo * &lam.lo;
    let hi2 = &lam.hi * &lam.hi;
    let sf = r.squarefree_part();
    if sf.eval_rational(&lo2).is_zero() || sf.eval_rational(&hi2).is_zero() {
        return Dominance::Unverified;
    }
    let seq = sturm_sequence(&sf);
    let above_lo = count_roots_above(&seq, &lo2);
    if count_roots_above(&seq, &hi2) > 0 {
        return Dominance::NotDominant;
    }
    if above_lo != 1 {
        return Dominance::Unverified;
    }
    // the root in (lo², hi²] is λ²; a repeated λ² means another |w| = λ
    let g = r.gcd(&r.derivative());
    if g.degree().unwrap_or(0) > 0 {
        let gs = g.squarefree_part();
        if !gs.eval_rational(&lo2).is_zero() && count_roots_above(&sturm_sequence(&gs), &lo2) > 0 {
            return Dominance::NotDominant;
        }
    }
    Dominance::Dominant
}
