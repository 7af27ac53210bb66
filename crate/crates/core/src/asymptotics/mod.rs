//! Growth of Poincaré-type recurrences: characteristic polynomial, dominant
//! root, and the constant `ℓ₀` in `u_n ~ ℓ₀ λⁿ/n`.

mod bracket;
mod charpoly;
mod hiprec;
mod interval;
mod roots;

pub use bracket::{
    ell_bracket, ell_bracket_from, lambda_interval, lower_bound, modform_hypothesis_check, ratio_scan, ratio_to_constant,
    required_terms, scaled_sequence, scaled_sequence_best, scaled_sequence_estimate, upper_bound, v_at, EllBracket, LowerBound, ModformPoint, ModformReport, RatioScan,
    UpperBound, MODFORM_EPS,
};
pub use charpoly::{
    characteristic_polynomial, characteristic_polynomial_with, chi_from_limits, condition_checks, default_tolerance,
    poincare_limits, quadratic_decomposition, CharacteristicData, ConditionFlags, QuadraticPart,
};
pub use hiprec::{pi, sin, ClosedForm, Fixed};
pub use interval::Interval;
pub use roots::{
    count_roots, count_roots_above, dominance, dominant_root, largest_positive_root, product_resultant, resultant,
    sturm_sequence, Dominance, RationalInterval,
};

use num_rational::BigRational;
use serde_json::json;

use crate::algebra::series::rational_string;
use crate::error::Result;
use crate::picard::HolonomicRecurrence;

/// Decimal digits of a rational, truncated toward zero.
pub fn rational_decimal(x: &BigRational, digits: usize) -> String {
    use num_bigint::BigInt;
    use num_traits::Signed;
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (x.abs() * BigRational::from_integer(scale)).to_integer();
    let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if x.is_negative() { "-" } else { "" })
}

#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub data: CharacteristicData,
    pub conditions: Option<ConditionFlags>,
    /// Whether `x_n` came from rigorous interval iteration.
    pub certified_sequence: bool,
    pub positive_from: Option<usize>,
    pub decreasing_from: Option<usize>,
    pub ell_bracket: EllBracket,
    pub closed_form: Option<(ClosedForm, String)>,
}

#[derive(Clone, Copy, Debug)]
pub struct AsymptoticOptions {
    /// Index of the tail window for the upper bound.
    pub n: usize,
    /// Seed index of the linearized lower-bound sequence.
    pub m: usize,
    pub digits: usize,
}

impl Default for AsymptoticOptions {
    fn default() -> Self {
        AsymptoticOptions { n: 100_000, m: 10_000, digits: 50 }
    }
}

pub fn analyze_asymptotics(
    rec: &HolonomicRecurrence,
    opts: &AsymptoticOptions,
    group: Option<ClosedForm>,
) -> Result<AsymptoticReport> {
    let data = characteristic_polynomial(rec)?;
    let lam = lambda_interval(&data);
    let (x, certified_sequence) = scaled_sequence_best(rec, lam, opts.n.max(opts.m))?;
    let onset = |pred: &dyn Fn(usize) -> bool, len: usize| {
        let mut start = None;
        for i in 0..len {
            if pred(i) {
                start.get_or_insert(i);
            } else {
                start = None;
            }
        }
        start
    };
    let positive_from = onset(&|i| x[i].lo > 0.0, x.len());
    let decreasing_from = onset(&|i| x[i + 1].hi < x[i].lo, x.len() - 1);
    let ell_bracket = if certified_sequence {
        ell_bracket_from(&data, &x, opts.n, opts.m)?
    } else {
        let v = v_at(&x, opts.n);
        let mut why = String::new();
        if data.dominance != Dominance::Dominant {
            why.push_str(&format!("lambda dominance {:?}; ", data.dominance));
        }
        why.push_str("interval iteration lost precision, point estimate");
        EllBracket::EmpiricalOnly { v_n: (v.lo, v.hi), reason: format!("no bracket; empirical v_N only: {why}") }
    };
    Ok(AsymptoticReport {
        conditions: condition_checks(&data),
        certified_sequence,
        data,
        positive_from,
        decreasing_from,
        ell_bracket,
        closed_form: group.map(|g| (g, g.decimal(opts.digits))),
    })
}

impl AsymptoticReport {
    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        let d = &self.data;
        let lam = &d.lambda_enclosure;
        json!({
            "chi": d.chi.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "limits": d.limits.iter().map(rational_string).collect::<Vec<_>>(),
            "lambda": {
                "lo": rational_string(&lam.lo),
                "hi": rational_string(&lam.hi),
                "lo_decimal": rational_decimal(&lam.lo, digits),
                "hi_decimal": rational_decimal(&lam.hi, digits),
            },
            "positive_roots": d.positive_roots,
            "dominance": d.dominance,
            "quadratic_decomposition": d.quadratic_decomposition.as_ref().map(|parts| parts.iter().map(|q| json!({
                "k": q.k,
                "a": q.a.to_string(),
                "b": q.b.to_string(),
                "c": q.c.to_string(),
                "slope": q.slope.to_string(),
                "residual": q.residual.to_string(),
            })).collect::<Vec<_>>()),
            "conditions": self.conditions,
            "certified_sequence": self.certified_sequence,
            "positive_from": self.positive_from,
            "decreasing_from": self.decreasing_from,
            "ell_bracket": self.ell_bracket,
            "ell_bracket_exact": self.ell_bracket.rational_endpoints().map(|(lo, hi)| json!({
                "lo": rational_string(&lo),
                "hi": rational_string(&hi),
            })),
            "closed_form": self.closed_form.as_ref().map(|(g, v)| json!({
                "group": g.tag(),
                "formula": g.formula(),
                "value": v,
                "inside_bracket": self.ell_bracket.interval().map(|(lo, hi)| {
                    let x: f64 = v.parse().unwrap_or(f64::NAN);
                    lo <= x && x <= hi
                }),
            })),
        })
    }
}
