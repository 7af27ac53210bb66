//! Second-order Picard-Fuchs operators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{PolyZ, RatFunc, Series};
use crate::curve::{InvariantSet, WeierstrassFamily};
use crate::error::{Error, Result};

/// `P2·F'' + P1·F' + P0·F = 0`, primitive with `P2` leading coefficient > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderOde {
    pub p0: PolyZ,
    pub p1: PolyZ,
    pub p2: PolyZ,
}

impl SecondOrderOde {
    /// Normalizes an arbitrary triple: removes the common polynomial factor
    /// and integer content, and makes `P2` positive at infinity.
    pub fn new(p0: PolyZ, p1: PolyZ, p2: PolyZ) -> Self {
        let g = p0.gcd(&p1).gcd(&p2);
        let (mut p0, mut p1, mut p2) = if g.is_zero() || g.is_constant() {
            (p0, p1, p2)
        } else {
            let g = g.primitive_part();
            (p0.div_exact(&g).unwrap(), p1.div_exact(&g).unwrap(), p2.div_exact(&g).unwrap())
        };
        let c = p0.content().gcd(&p1.content()).gcd(&p2.content());
        if !c.is_zero() && !c.is_one() {
            p0 = p0.div_scalar_exact(&c);
            p1 = p1.div_scalar_exact(&c);
            p2 = p2.div_scalar_exact(&c);
        }
        if p2.leading().is_negative() {
            p0 = -p0;
            p1 = -p1;
            p2 = -p2;
        }
        SecondOrderOde { p0, p1, p2 }
    }

    /// Applies the operator to a series, returning `P2 f'' + P1 f' + P0 f`.
    pub fn apply(&self, f: &Series) -> Series {
        let ord = f.order();
        let lift = |p: &PolyZ| crate::algebra::series::poly_series(p, ord + 2);
        let d1 = f.derivative();
        let d2 = d1.derivative();
        lift(&self.p2).mul(&d2).add(&lift(&self.p1).mul(&d1)).add(&lift(&self.p0).mul(f))
    }

    /// The operator in `s = 1/t` acting on `g(s) = F(1/s)`.
    pub fn at_infinity(&self) -> Self {
        let e = [&self.p0, &self.p1, &self.p2].iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let r2 = self.p2.reversal(e).unwrap();
        let r1 = self.p1.reversal(e).unwrap();
        let r0 = self.p0.reversal(e).unwrap();
        // F' = -s² g', F'' = s⁴ g'' + 2s³ g'
        let q2 = r2.shift_up(4);
        let q1 = &r2.shift_up(3).scale(&BigInt::from(2)) - &r1.shift_up(2);
        SecondOrderOde::new(r0, q1, q2)
    }

    /// The operator satisfied by `h` where `g = s^d h`.
    pub fn twist(&self, d: i64) -> Self {
        let db = BigInt::from(d);
        let r2 = &self.p2;
        let r1 = &self.p1;
        let s2 = r2.shift_up(2);
        let s1 = &r2.shift_up(1).scale(&(&db * 2)) + &r1.shift_up(2);
        let s0 = &(&r2.scale(&(&db * (&db - 1))) + &r1.shift_up(1).scale(&db)) + &self.p0.shift_up(2);
        SecondOrderOde::new(s0, s1, s2)
    }
}

/// Eliminates `f₂` from the first-order period system
/// `f₁' = A f₁ + B f₂`, `f₂' = C f₁ + D f₂` with
/// `A = −2Δ'/(24Δ)`, `B = 36γ/(24Δ)`, `C = −3g₂γ/(24Δ)`, `D = 2Δ'/(24Δ)`.
pub fn derive_ode(inv: &InvariantSet) -> Result<SecondOrderOde> {
    if inv.gamma.is_zero() {
        return Err(Error::ConstantJ);
    }
    let c = RatFunc::from_int;
    let d24 = &inv.delta * &c(24);
    let dp = inv.delta.derivative();
    let a = (&(&dp * &c(-2)) / &d24)?;
    let b = (&(&inv.gamma * &c(36)) / &d24)?;
    let cc = (&(&(&inv.g2() * &inv.gamma) * &c(-3)) / &d24)?;
    let d = (&(&dp * &c(2)) / &d24)?;
    // f₁'' + (−A − D − B'/B) f₁' + (−A' + A·B'/B − B·C + A·D) f₁ = 0
    let bl = (&b.derivative() / &b)?;
    let c1 = &(&(-&a) - &d) - &bl;
    let c0 = &(&(&(-&a.derivative()) + &(&a * &bl)) - &(&b * &cc)) + &(&a * &d);
    let den = lcm_poly(c1.den(), c0.den());
    let den_r = RatFunc::from_poly(den.clone());
    let e1 = &c1 * &den_r;
    let e0 = &c0 * &den_r;
    // e1, e0 are polynomials over Q; clear their constant denominators
    let scale = e1.den().leading().lcm(&e0.den().leading());
    let to_z = |r: &RatFunc| -> PolyZ {
        r.num().scale(&(&scale / r.den().leading()))
    };
    Ok(SecondOrderOde::new(to_z(&e0), to_z(&e1), den.scale(&scale)))
}

/// Least common multiple in Z[t] up to a unit.
fn lcm_poly(a: &PolyZ, b: &PolyZ) -> PolyZ {
    let g = a.gcd(b);
    (a * b).div_exact(&g).unwrap()
}

pub fn derive_ode_for(fam: &WeierstrassFamily) -> Result<SecondOrderOde> {
    derive_ode(&crate::curve::compute_invariants(fam)?)
}
