mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use picard_core::algebra::Series;
use picard_core::modular::*;
use picard_core::picard::{derive_ode_for, recurrence_at_infinity};

fn q_ints(s: &Series, upto: i64) -> Vec<BigInt> {
    (0..=upto).map(|e| s.coeff(e).unwrap_or_else(BigRational::zero).to_integer()).collect()
}

fn triple(n: usize) -> (Series, Series, Series) {
    (
        expand_product(&gamma1_7_weight_one(), n),
        expand_product(&gamma1_7_hauptmodul(), n),
        expand_eta_quotient(&gamma1_7_cusp_form(), n).unwrap(),
    )
}

#[test]
fn verrill_identity_through_q200() {
    let (f, t, g) = triple(200);
    assert!(verrill_identity_check(&f, &t, &g, 200).unwrap().holds());
    assert!(verrill_identity_check(&f, &t, &g, 1).unwrap().holds());

    let mut gi = q_ints(&g, 200);
    gi[50] += 1;
    let bumped = Series::from_bigints(0, gi);
    let out = verrill_identity_check(&f, &t, &bumped, 200).unwrap();
    assert_eq!(out.first_mismatch, Some(50));

    assert!(matches!(
        verrill_identity_check(&f, &t, &g, 300),
        Err(picard_core::Error::InsufficientPrecision { .. })
    ));
    // a single dilation term with coefficient 1 is g itself
    let single = dilation_sum(&g, &[(1, 1)], 200);
    assert!(verrill_identity_check(&f, &t, &single, 200).unwrap().holds());
}

#[test]
fn form_in_hauptmodul_matches_recurrence() {
    let (f, t, _) = triple(61);
    let inv = t.reversion().unwrap();
    let printed_q = [0, 1, 3, 13, 66, 365, 2128, 12859, 79745];
    assert_eq!(q_ints(&inv, 8), printed_q.map(BigInt::from));
    let v = form_in_hauptmodul(&f, &t).unwrap();
    let printed_v = [0, 1, 3, 12, 59, 325, 1908, 11655, 73155];
    assert_eq!(q_ints(&v, 8), printed_v.map(BigInt::from));
    let rec = hauptmodul_coefficients(60).unwrap();
    assert_eq!(q_ints(&v, 60), rec);

    // the Hauptmodul in itself is the identity
    let id = form_in_hauptmodul(&t, &t).unwrap();
    let mut expect = vec![BigInt::zero(); 61];
    expect[1] = BigInt::from(1);
    assert_eq!(q_ints(&id, 60), expect);
}

#[test]
fn hauptmodul_sequence_is_the_infinity_expansion_up_to_sign() {
    let ode = derive_ode_for(&common::family("gamma1_7")).unwrap();
    let u = recurrence_at_infinity(&ode).unwrap().expand(60).unwrap();
    let v = hauptmodul_coefficients(61).unwrap();
    for n in 0..=60 {
        assert_eq!(u[n].abs().to_integer(), v[n + 1].abs(), "n={n}");
    }
}

#[test]
fn log_derivative_identity() {
    for spec in [gamma1_7_weight_one(), gamma1_7_hauptmodul()] {
        let f = expand_product(&spec, 100);
        let s = log_derivative_series(&spec, 100);
        let lead = BigInt::from(spec.leading_power);
        let rhs: Vec<BigInt> = s.iter().enumerate().map(|(i, c)| if i == 0 { lead.clone() } else { -c }).collect();
        let lhs = theta(&f).mul(&f.inverse().unwrap());
        let rhs = Series::from_bigints(0, rhs);
        for e in 0..=98 {
            assert_eq!(lhs.coeff(e).unwrap(), rhs.coeff(e).unwrap(), "exponent {e}");
        }
    }
}

fn sweep_inputs() -> (Vec<BigInt>, Vec<BigInt>) {
    let v = hauptmodul_coefficients(2000).unwrap();
    let g = expand_eta_quotient(&gamma1_7_cusp_form(), 50).unwrap();
    (v, q_ints(&g, 50))
}

#[test]
fn asd_sweep_and_mutation() {
    let (v, gamma) = sweep_inputs();
    let rep = asd_congruence_sweep(&v, &gamma, 7, 50, 2, 2000).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.first_failure());
    assert!(rep.entries.iter().any(|e| e.r == 2));
    assert!(!rep.notes.is_empty());

    for k in [53usize, 100, 1024] {
        let mut bad = v.clone();
        bad[k] += 1;
        let rep = asd_congruence_sweep(&bad, &gamma, 7, 50, 2, 2000).unwrap();
        assert!(!rep.all_pass(), "mutation at {k} undetected");
    }
}
