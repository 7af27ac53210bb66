//! Denominator bounds from the value of `12g₂` at the singular fiber.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::curve::{check_delta_vanishes_at_zero, InvariantSet};
use crate::error::{Error, Result};

/// `8·(12g₂(0))⁴` for families with coordinates in `Z[t]`.
pub fn genint_bound(inv: &InvariantSet) -> Result<BigInt> {
    if !inv.polynomial_coordinates {
        return Err(Error::Hypothesis(
            "coordinates are not all in Z[t]; use the rational-coordinate bound".into(),
        ));
    }
    if !check_delta_vanishes_at_zero(inv) {
        return Err(Error::Hypothesis("discriminant does not vanish at t = 0".into()));
    }
    let g0 = inv.g2_12.num().constant_term();
    if g0.is_zero() {
        return Err(Error::Hypothesis("12g2(0) = 0".into()));
    }
    Ok(BigInt::from(8) * num_traits::pow(g0, 4))
}

/// `|8·δ(Δ)·ν(12g₂)⁴|` for coordinates in `Z(t)`.
pub fn strongint_bound(inv: &InvariantSet) -> Result<BigInt> {
    if !check_delta_vanishes_at_zero(inv) {
        return Err(Error::Hypothesis("discriminant does not vanish at t = 0".into()));
    }
    let (_, delta_den) = inv.delta.nu_delta();
    let (nu_g2, g2_den) = inv.g2_12.nu_delta();
    if nu_g2.is_zero() || g2_den.is_zero() {
        return Err(Error::Hypothesis("12g2 must be finite and nonzero at t = 0".into()));
    }
    Ok((BigInt::from(8) * delta_den * num_traits::pow(nu_g2, 4)).abs())
}

/// Which theorem produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    PolynomialCoordinates,
    RationalCoordinates,
}

/// The polynomial-coordinate bound when it applies, otherwise the general one.
pub fn theoretical_bound(inv: &InvariantSet) -> Result<(BigInt, BoundKind)> {
    if inv.polynomial_coordinates {
        genint_bound(inv).map(|b| (b, BoundKind::PolynomialCoordinates))
    } else {
        strongint_bound(inv).map(|b| (b, BoundKind::RationalCoordinates))
    }
}
