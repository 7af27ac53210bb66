//! Integrality probe with early exit at the first non-integral coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::tuple::SearchTuple;
use crate::picard::HolonomicRecurrence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub survives: bool,
    /// Index of the first non-integral `u_n`.
    pub fail_index: Option<usize>,
}

/// Exact probe of a general recurrence.
pub fn integrality_probe(rec: &HolonomicRecurrence, depth: usize) -> ProbeResult {
    let (_, fail) = rec.expand_integral(depth);
    ProbeResult { survives: fail.is_none(), fail_index: fail }
}

/// Probe specialised to the search family: machine integers while they
/// fit, big integers after the first overflow.
pub fn probe_tuple(t: &SearchTuple, depth: usize) -> ProbeResult {
    let w = t.weights();
    let mut u: Vec<i128> = Vec::with_capacity(depth + 1);
    u.push(1);
    for n in 0..depth {
        match step_i128(&w, &u, n) {
            Some(Ok(v)) => u.push(v),
            Some(Err(())) => return ProbeResult { survives: false, fail_index: Some(n + 1) },
            None => return probe_big(&w, u.iter().map(|&x| BigInt::from(x)).collect(), depth),
        }
    }
    ProbeResult { survives: true, fail_index: None }
}

fn weight_at(w: &[i64; 3], n: i128) -> Option<i128> {
    let (a, b, c) = (w[2] as i128, w[1] as i128, w[0] as i128);
    a.checked_mul(n)?.checked_add(b)?.checked_mul(n)?.checked_add(c)
}

/// `None` on overflow, `Err` on a non-integral value.
fn step_i128(w: &[[i64; 3]; 4], u: &[i128], n: usize) -> Option<Result<i128, ()>> {
    let ni = n as i128;
    let mut s: i128 = 0;
    for k in 0..4.min(n + 1) {
        let x = u[n - k];
        if x == 0 {
            continue;
        }
        s = s.checked_add(weight_at(&w[k], ni)?.checked_mul(x)?)?;
    }
    let l = (ni + 1) * (ni + 1);
    Some(if s % l == 0 { Ok(s / l) } else { Err(()) })
}

fn probe_big(w: &[[i64; 3]; 4], mut u: Vec<BigInt>, depth: usize) -> ProbeResult {
    for n in u.len() - 1..depth {
        let nb = BigInt::from(n);
        let mut s = BigInt::zero();
        for k in 0..4.min(n + 1) {
            if u[n - k].is_zero() {
                continue;
            }
            let p = BigInt::from(w[k][2]) * &nb * &nb + BigInt::from(w[k][1]) * &nb + BigInt::from(w[k][0]);
            s += p * &u[n - k];
        }
        let l = BigInt::from((n + 1) * (n + 1));
        let (q, r) = s.div_rem(&l);
        if !r.is_zero() {
            return ProbeResult { survives: false, fail_index: Some(n + 1) };
        }
        u.push(q);
    }
    ProbeResult { survives: true, fail_index: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_probe_agrees_with_exact_expansion() {
        for t in [
            SearchTuple::GAMMA1_7,
            SearchTuple([1, 0, 0, 0, 0, 0, 0, 0]),
            SearchTuple([4, 21, 15, 1, 1, 9, 13, 5]),
            SearchTuple([-10, 25, -15, 5, 5, -10, 15, 10]),
            SearchTuple([0, 0, 0, 0, 0, 0, 0, 1]),
        ] {
            assert_eq!(probe_tuple(&t, 80), integrality_probe(&t.to_recurrence(), 80), "{t}");
        }
    }

    #[test]
    fn known_outcomes() {
        assert!(probe_tuple(&SearchTuple::GAMMA1_7, 200).survives);
        // (n+1)² u_{n+1} = u_{n−3}: u_4 = 1/16
        assert_eq!(probe_tuple(&SearchTuple([1, 0, 0, 0, 0, 0, 0, 0]), 60).fail_index, Some(4));
    }
}
