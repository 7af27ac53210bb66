mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use picard_core::algebra::{parse_poly, Point};
use picard_core::curve::compute_invariants;
use picard_core::picard::{
    derive_ode, hypergeometric_oracle, recurrence_at_infinity, recurrence_at_zero, SecondOrderOde,
};

use common::{family, GOLDEN};

#[test]
fn gamma1_10_equation() {
    let inv = compute_invariants(&family("gamma1_10")).unwrap();
    let ode = derive_ode(&inv).unwrap();
    let want = SecondOrderOde {
        p0: parse_poly("2*(36*t^5+128*t^4+136*t^3+49*t^2+2*t-1)").unwrap(),
        p1: parse_poly("56*t^6+240*t^5+320*t^4+156*t^3+12*t^2-8*t-1").unwrap(),
        p2: parse_poly("t*(t+1)*(2*t+1)*(t^2+3*t+1)*(4*t^2+2*t-1)").unwrap(),
    };
    assert_eq!(ode, want);
}

#[test]
fn oracle_matches_recurrence_at_zero() {
    for name in GOLDEN.iter().chain(["ex1", "gamma1_8"].iter()) {
        let inv = compute_invariants(&family(name)).unwrap();
        let rec = recurrence_at_zero(&derive_ode(&inv).unwrap()).unwrap();
        let got = rec.expand(29).unwrap();
        let oracle = hypergeometric_oracle(&inv, 30, Point::Zero).unwrap();
        assert_eq!(oracle.offset(), 0, "{name}");
        assert_eq!(oracle.coeffs(), &got[..], "{name}");
    }
}

#[test]
fn oracle_matches_recurrence_at_infinity() {
    for name in GOLDEN {
        let inv = compute_invariants(&family(name)).unwrap();
        let rec = recurrence_at_infinity(&derive_ode(&inv).unwrap()).unwrap();
        let oracle = hypergeometric_oracle(&inv, 30, Point::Infinity).unwrap();
        let deg = inv.g2_12.num().degree().unwrap() as i64;
        assert_eq!(rec.offset, deg / 4, "{name}");
        assert_eq!(oracle.offset(), rec.offset, "{name}");
        assert_eq!(oracle.coeffs(), &rec.expand(29).unwrap()[..], "{name}");
    }
}

#[test]
fn gamma0_12_even_terms_are_apery_like() {
    let inv = compute_invariants(&family("gamma0_12")).unwrap();
    let u = recurrence_at_zero(&derive_ode(&inv).unwrap()).unwrap().expand(60).unwrap();
    let binom = |n: u64, k: u64| -> BigInt {
        let mut b = BigInt::one();
        for i in 0..k {
            b = b * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        b
    };
    for n in 0..=30u64 {
        let s: BigInt = (0..=n).map(|k| binom(n, k) * binom(n, k) * binom(2 * k, k)).sum();
        assert_eq!(u[2 * n as usize], BigRational::from_integer(s));
        if n < 30 {
            assert!(u[2 * n as usize + 1].is_zero());
        }
    }
}
