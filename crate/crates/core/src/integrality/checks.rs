//! Hypotheses that can be read off the coordinates directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{PolyZ, RatFunc};
use crate::curve::{check_delta_vanishes_at_zero, compute_invariants, reduce_mod_t, InvariantSet, WeierstrassFamily};
use crate::error::Result;

use super::fourth::{fourth_power_test, FourthPowerMode, FourthPowerVerdict};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SyntacticFlags {
    /// Integral polynomial coordinates reducing to `y² ± xy = x³`.
    pub intp1: bool,
    /// Nodal reduction with every coordinate denominator equal to ±1 at 0.
    pub ratcor2: bool,
    /// `12g₂/12g₂(0)` certified to be a fourth power in `Z[[t]]`.
    pub fourth_power: bool,
}

pub fn syntactic_checks(fam: &WeierstrassFamily) -> Result<SyntacticFlags> {
    let inv = compute_invariants(fam)?;
    let nodal = match reduce_mod_t(fam) {
        Ok(r) => r.nodal_sign.is_some(),
        Err(_) => false,
    };
    let singular = check_delta_vanishes_at_zero(&inv);
    let intp1 = singular && nodal && fam.has_polynomial_coordinates();
    let ratcor2 = singular
        && nodal
        && fam.coords().iter().all(|(_, r)| r.nu_delta().1.abs().is_one());
    Ok(SyntacticFlags { intp1, ratcor2, fourth_power: fourth_power_witness(&inv).is_some() })
}

/// Normalizes `p` to constant term 1 if `p(0)` divides it.
fn unit_constant(p: &PolyZ) -> Option<PolyZ> {
    let c = p.constant_term();
    if c.is_zero() || !p.content().is_multiple_of(&c) {
        return None;
    }
    Some(p.div_scalar_exact(&c))
}

/// Mod-8 witnesses for numerator and denominator of `12g₂/12g₂(0)`; each
/// side is a fourth power in `Z[[t]]` by the Heninger-Rains-Sloane
/// criterion, so the quotient is as well.
pub fn fourth_power_witness(inv: &InvariantSet) -> Option<(PolyZ, PolyZ)> {
    let g: &RatFunc = &inv.g2_12;
    let (num, den) = (unit_constant(g.num())?, unit_constant(g.den())?);
    let witness = |p: &PolyZ| match fourth_power_test(p, FourthPowerMode::Mod8) {
        Ok(FourthPowerVerdict::Witness(w)) => Some(w),
        _ => None,
    };
    Some((witness(&num)?, witness(&den)?))
}

/// `α_N`, the leading coefficient of `12g₂`, and the bound `8α_N⁴` on the
/// denominator growth at infinity; the factor 8 drops when
/// `12t^N g₂(1/t)/α_N` has a mod-8 fourth-power witness.
pub fn infinity_bound(inv: &InvariantSet) -> Option<(BigInt, Option<PolyZ>)> {
    if !inv.polynomial_coordinates {
        return None;
    }
    let g = inv.g2_12.num();
    let n = g.degree()?;
    let alpha = g.leading().clone();
    let rev = g.reversal(n).ok()?;
    let witness = if rev.content().is_multiple_of(&alpha) {
        match fourth_power_test(&rev.div_scalar_exact(&alpha), FourthPowerMode::Mod8) {
            Ok(FourthPowerVerdict::Witness(w)) => Some(w),
            _ => None,
        }
    } else {
        None
    };
    let a4 = num_traits::pow(alpha.abs(), 4);
    let bound = if witness.is_some() { a4 } else { BigInt::from(8) * a4 };
    Some((bound, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ratfunc;

    fn fam(a: [&str; 5]) -> WeierstrassFamily {
        WeierstrassFamily::new("t", a.map(|s| parse_ratfunc(s).unwrap()))
    }

    #[test]
    fn flags_on_small_families() {
        let f = fam(["1-t-t^2", "t^2+t^3", "t^2+t^3", "0", "0"]);
        let fl = syntactic_checks(&f).unwrap();
        assert!(fl.intp1 && fl.ratcor2 && fl.fourth_power);
        let f = fam(["2", "1", "0", "t", "t"]);
        let fl = syntactic_checks(&f).unwrap();
        assert!(!fl.intp1 && !fl.ratcor2 && !fl.fourth_power);
    }

    #[test]
    fn infinity_bound_drops_the_eight() {
        let f = fam(["1-t-t^2", "t^2+t^3", "t^2+t^3", "0", "0"]);
        let inv = compute_invariants(&f).unwrap();
        let (b, w) = infinity_bound(&inv).unwrap();
        assert_eq!(b, BigInt::one());
        assert_eq!(w.unwrap(), PolyZ::from_i64s(&[1, 1, 1]));
    }
}
