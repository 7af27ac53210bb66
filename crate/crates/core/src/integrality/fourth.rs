//! Is a polynomial with constant term 1 a fourth power modulo 8, or does
//! its formal fourth root have integral coefficients?

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::algebra::{PolyZ, Series};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourthPowerMode {
    Mod8,
    Series(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FourthPowerVerdict {
    /// `g⁴ ≡ pol (mod 8)`, coefficients of `g` in `0..8`.
    Witness(PolyZ),
    NoWitness,
    /// Fourth root integral through the requested number of terms.
    IntegralRoot(Series),
    /// Index of the first non-integral coefficient of the fourth root.
    NonIntegral(usize),
}

const MAX_WITNESS_DEGREE: usize = 12;

pub fn fourth_power_test(pol: &PolyZ, mode: FourthPowerMode) -> Result<FourthPowerVerdict> {
    if !pol.constant_term().is_one() {
        return Err(Error::Hypothesis("fourth-power test needs constant term 1".into()));
    }
    match mode {
        FourthPowerMode::Mod8 => {
            let d = pol.degree().unwrap_or(0) / 4;
            if d > MAX_WITNESS_DEGREE {
                return Err(Error::Config(format!(
                    "witness degree {d} exceeds the search cap {MAX_WITNESS_DEGREE}"
                )));
            }
            let target: Vec<u8> = (0..=pol.degree().unwrap_or(0)).map(|i| mod8(&pol.coeff(i))).collect();
            let mut g = vec![0u8; d + 1];
            Ok(match search(&target, &mut g, 0) {
                true => FourthPowerVerdict::Witness(PolyZ::new(g.iter().map(|&c| BigInt::from(c)).collect())),
                false => FourthPowerVerdict::NoWitness,
            })
        }
        FourthPowerMode::Series(n) => {
            let s = crate::algebra::series::poly_series(pol, n as i64);
            let r = s.pow_frac(1, 4)?;
            match r.coeffs().iter().position(|c| !c.is_integer()) {
                Some(i) => Ok(FourthPowerVerdict::NonIntegral(i)),
                None => Ok(FourthPowerVerdict::IntegralRoot(r)),
            }
        }
    }
}

fn mod8(c: &BigInt) -> u8 {
    c.mod_floor(&BigInt::from(8)).to_u8().unwrap()
}

/// Coefficients of `g⁴ mod 8` up to degree `upto`.
fn fourth_power_mod8(g: &[u8], upto: usize) -> Vec<u8> {
    let mul = |a: &[u8], b: &[u8]| -> Vec<u8> {
        let mut c = vec![0u8; upto + 1];
        for (i, &x) in a.iter().enumerate().take(upto + 1) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(upto + 1 - i) {
                c[i + j] = (c[i + j] + x * y) & 7;
            }
        }
        c
    };
    let sq = mul(g, g);
    mul(&sq, &sq)
}

/// Depth-first search fixing one coefficient at a time; the coefficient of
/// `t^k` in `g⁴` depends only on `g_0 … g_k`, which prunes each level.
fn search(target: &[u8], g: &mut [u8], k: usize) -> bool {
    if k == g.len() {
        let top = target.len().max(4 * g.len()) - 1;
        let full = fourth_power_mod8(g, top);
        return (0..=top).all(|i| full[i] == target.get(i).copied().unwrap_or(0));
    }
    for c in 0..8u8 {
        g[k] = c;
        let partial = fourth_power_mod8(&g[..=k], k);
        if partial[k] == target.get(k).copied().unwrap_or(0) && search(target, g, k + 1) {
            return true;
        }
    }
    g[k] = 0;
    false
}

/// Direct check that `g⁴ ≡ pol (mod 8)`.
pub fn is_fourth_power_mod8(g: &PolyZ, pol: &PolyZ) -> bool {
    let g4 = &(g * g) * &(g * g);
    let n = g4.coeffs().len().max(pol.coeffs().len());
    (0..n).all(|i| mod8(&(g4.coeff(i) - pol.coeff(i))) == 0)
}

/// Fourth root as rationals, for reports.
pub fn formal_fourth_root(pol: &PolyZ, n: usize) -> Result<Vec<BigRational>> {
    let s = crate::algebra::series::poly_series(pol, n as i64);
    Ok(s.pow_frac(1, 4)?.coeffs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn gamma1_7_reversed_g2() {
        let pol = parse_poly("t^8-4*t^7-14*t^6+35*t^4+56*t^3+42*t^2+12*t+1").unwrap();
        let v = fourth_power_test(&pol, FourthPowerMode::Mod8).unwrap();
        let w = parse_poly("t^2+t+1").unwrap();
        assert_eq!(v, FourthPowerVerdict::Witness(w.clone()));
        assert!(is_fourth_power_mod8(&w, &pol));
    }

    #[test]
    fn trivial_witness() {
        let v = fourth_power_test(&PolyZ::one(), FourthPowerMode::Mod8).unwrap();
        assert_eq!(v, FourthPowerVerdict::Witness(PolyZ::one()));
    }

    #[test]
    fn no_witness() {
        let pol = parse_poly("1+2*t").unwrap();
        assert_eq!(fourth_power_test(&pol, FourthPowerMode::Mod8).unwrap(), FourthPowerVerdict::NoWitness);
    }

    #[test]
    fn series_mode() {
        let pol = parse_poly("1+8*t").unwrap();
        match fourth_power_test(&pol, FourthPowerMode::Series(30)).unwrap() {
            FourthPowerVerdict::IntegralRoot(r) => {
                assert_eq!(&r.coeffs()[..4], &Series::from_ints(0, &[1, 2, -6, 28]).coeffs()[..]);
            }
            other => panic!("{other:?}"),
        }
        let pol = parse_poly("1+2*t").unwrap();
        assert_eq!(fourth_power_test(&pol, FourthPowerMode::Series(10)).unwrap(), FourthPowerVerdict::NonIntegral(1));
    }

    #[test]
    fn constant_term_must_be_one() {
        assert!(fourth_power_test(&parse_poly("3+t").unwrap(), FourthPowerMode::Mod8).is_err());
    }
}
