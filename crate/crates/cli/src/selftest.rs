//! Golden-vector suite. The vectors live in `data/golden/vectors.json` and
//! are compiled in; `--store` substitutes another copy of the file.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use picard_core::algebra::series::rational_string;
use picard_core::algebra::{parse_poly, Point, RatFunc};
use picard_core::asymptotics::{characteristic_polynomial, quadratic_decomposition, rational_decimal, ClosedForm};
use picard_core::curve::{compute_invariants, WeierstrassFamily};
use picard_core::integrality::{analyze_level, infinity_bound, sharperub_reduce, theoretical_bound};
use picard_core::modular::{
    asd_congruence_sweep, expand_eta_quotient, expand_product, gamma1_7_cusp_form, gamma1_7_hauptmodul,
    gamma1_7_weight_one, hauptmodul_coefficients, verrill_identity_check,
};
use picard_core::picard::{derive_ode, hypergeometric_oracle, recurrence_at_infinity, recurrence_at_zero};
use picard_core::{Error, Result};

use crate::stages::parse_poly_in;

pub const EMBEDDED_STORE: &str = include_str!("../../../data/golden/vectors.json");

const FAMILIES: [(&str, &str); 6] = [
    ("gamma1_7", include_str!("../../../data/families/gamma1_7.fam")),
    ("gamma0_12", include_str!("../../../data/families/gamma0_12.fam")),
    ("gamma_8_4_1_2", include_str!("../../../data/families/gamma_8_4_1_2.fam")),
    ("gamma1_10", include_str!("../../../data/families/gamma1_10.fam")),
    ("gamma1_8", include_str!("../../../data/families/gamma1_8.fam")),
    ("ex1", include_str!("../../../data/families/ex1.fam")),
];

pub struct Vector {
    pub name: String,
    pub family: String,
    pub check: String,
    pub expect: Value,
}

/// Parses a store; a malformed store is an input error.
pub fn load_store(text: &str) -> Result<Vec<Vector>> {
    let bad = |msg: String| Error::Config(format!("golden store: {msg}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let list = v.get("vectors").and_then(Value::as_array).ok_or_else(|| bad("missing 'vectors' array".into()))?;
    list.iter()
        .enumerate()
        .map(|(i, x)| {
            let field = |k: &str| {
                x.get(k).and_then(Value::as_str).map(str::to_string).ok_or_else(|| bad(format!("vector {i}: missing '{k}'")))
            };
            Ok(Vector { name: field("name")?, family: field("family")?, check: field("check")?, expect: x["expect"].clone() })
        })
        .collect()
}

fn family(name: &str) -> Result<WeierstrassFamily> {
    let text = FAMILIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Config(format!("unknown family '{name}'")))?;
    WeierstrassFamily::parse(text)
}

fn mismatch(what: &str, got: impl std::fmt::Display, want: impl std::fmt::Display) -> Error {
    Error::Hypothesis(format!("{what}: got {got}, expected {want}"))
}

fn str_field<'a>(e: &'a Value, k: &str) -> Result<&'a str> {
    e.get(k).and_then(Value::as_str).ok_or_else(|| Error::Config(format!("expect.{k} missing")))
}

fn int_field(e: &Value, k: &str) -> Result<i64> {
    e.get(k).and_then(Value::as_i64).ok_or_else(|| Error::Config(format!("expect.{k} missing")))
}

fn strings(e: &Value, k: &str) -> Result<Vec<String>> {
    e.get(k)
        .and_then(Value::as_array)
        .map(|a| a.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect())
        .ok_or_else(|| Error::Config(format!("expect.{k} missing")))
}

fn ratfunc(e: &Value) -> Result<RatFunc> {
    RatFunc::new(parse_poly(str_field(e, "num")?)?, parse_poly(str_field(e, "den")?)?)
}

fn compare_list(what: &str, got: &[String], want: &[String]) -> Result<()> {
    if got.len() < want.len() {
        return Err(mismatch(what, format!("{} terms", got.len()), format!("{} terms", want.len())));
    }
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        if g != w {
            return Err(mismatch(&format!("{what}[{i}]"), g, w));
        }
    }
    Ok(())
}

/// Runs one vector; `Ok` may carry counts worth reporting.
pub fn run_vector(v: &Vector) -> Result<Value> {
    let fam = family(&v.family)?;
    let e = &v.expect;
    let inv = compute_invariants(&fam)?;
    match v.check.as_str() {
        "j_invariant" => {
            let want = ratfunc(e)?;
            if inv.j != want {
                return Err(mismatch("j", inv.j.to_string_var("t"), want.to_string_var("t")));
            }
        }
        "discriminant" => {
            let want = ratfunc(e)?;
            if inv.delta != want {
                return Err(mismatch("delta", inv.delta.to_string_var("t"), want.to_string_var("t")));
            }
        }
        "ode" => {
            let ode = derive_ode(&inv)?;
            for (k, got) in [("p0", &ode.p0), ("p1", &ode.p1), ("p2", &ode.p2)] {
                let want = parse_poly(str_field(e, k)?)?;
                if *got != want {
                    return Err(mismatch(k, got.to_string_var("t"), want.to_string_var("t")));
                }
            }
        }
        "series_zero" | "series_infinity" | "even_terms" => {
            let want = strings(e, "coefficients")?;
            let ode = derive_ode(&inv)?;
            let rec = if v.check == "series_infinity" { recurrence_at_infinity(&ode)? } else { recurrence_at_zero(&ode)? };
            let step = if v.check == "even_terms" { 2 } else { 1 };
            let u = rec.expand(step * want.len())?;
            let got: Vec<String> = u.iter().step_by(step).map(rational_string).collect();
            compare_list(&v.check, &got, &want)?;
            if step == 2 {
                if let Some(i) = (0..want.len() - 1).find(|&i| !u[2 * i + 1].is_zero()) {
                    return Err(mismatch(&format!("odd coefficient {}", 2 * i + 1), rational_string(&u[2 * i + 1]), 0));
                }
            }
        }
        "coefficient" => {
            let i = int_field(e, "index")? as usize;
            let u = recurrence_at_zero(&derive_ode(&inv)?)?.expand(i)?;
            let want = str_field(e, "value")?;
            if rational_string(&u[i]) != want {
                return Err(mismatch(&format!("u[{i}]"), rational_string(&u[i]), want));
            }
        }
        "oracle" => {
            let n = int_field(e, "terms")? as usize;
            let ode = derive_ode(&inv)?;
            let rec = recurrence_at_zero(&ode)?;
            let got = hypergeometric_oracle(&inv, n, Point::Zero)?;
            if got.coeffs() != &rec.expand(n - 1)?[..] {
                return Err(Error::Hypothesis("hypergeometric expansion differs from the recurrence".into()));
            }
        }
        "theoretical_bound" => {
            let (b, _) = theoretical_bound(&inv)?;
            let want = str_field(e, "bound")?;
            if b.to_string() != want {
                return Err(mismatch("bound", b, want));
            }
        }
        "sharperub" => {
            let (b, _) = theoretical_bound(&inv)?;
            let rec = recurrence_at_zero(&derive_ode(&inv)?)?.rescale(&BigRational::from_integer(b));
            let cert = sharperub_reduce(&rec, int_field(e, "p")? as u64)?;
            if (cert.k0, cert.s) != (int_field(e, "k0")?, int_field(e, "s")?) {
                return Err(mismatch("(k0, s)", format!("{:?}", (cert.k0, cert.s)), format!("({}, {})", e["k0"], e["s"])));
            }
            let want: Vec<_> = strings(e, "reduced")?.iter().map(|s| parse_poly_in(s, 'n')).collect::<Result<_>>()?;
            if cert.reduced.terms != want {
                let got: Vec<String> = cert.reduced.terms.iter().map(|t| t.to_string_var("n")).collect();
                return Err(mismatch("reduced weights", got.join("; "), strings(e, "reduced")?.join("; ")));
            }
        }
        "level" => {
            let cert = analyze_level(&fam, int_field(e, "terms")? as usize)?;
            let level = cert.exact_level().map(|l| l.to_string()).unwrap_or_else(|| "none".into());
            let want = str_field(e, "level")?;
            if level != want {
                return Err(mismatch("level", level, want));
            }
            if let Some(frame) = e.get("frame").and_then(Value::as_i64) {
                let got = cert.prime(2).and_then(|p| p.even.as_ref()).map(|s| s.frame);
                if got != Some(frame) {
                    return Err(mismatch("even-subsequence frame", format!("{got:?}"), frame));
                }
            }
            if let Some(want) = e.get("exponent_2").and_then(Value::as_str) {
                let got = cert.prime(2).map(|p| rational_string(&p.certified)).unwrap_or_default();
                if got != want {
                    return Err(mismatch("e_2", got, want));
                }
            }
            if !cert.consistent {
                return Err(Error::Hypothesis("measured exponents exceed certified ones".into()));
            }
        }
        "fourth_power_witness" => {
            let want = parse_poly(str_field(e, "witness")?)?;
            let got = infinity_bound(&inv).and_then(|(_, w)| w);
            if got.as_ref() != Some(&want) {
                return Err(mismatch("witness", format!("{:?}", got.map(|g| g.to_string_var("t"))), want.to_string_var("t")));
            }
        }
        "verrill_identity" => {
            let n = int_field(e, "order")? as usize;
            let f = expand_product(&gamma1_7_weight_one(), n);
            let t = expand_product(&gamma1_7_hauptmodul(), n);
            let g = expand_eta_quotient(&gamma1_7_cusp_form(), n)?;
            let out = verrill_identity_check(&f, &t, &g, n)?;
            if !out.holds() {
                return Err(mismatch("first mismatch", format!("{:?}", out.first_mismatch), "none"));
            }
        }
        "asd_sweep" => {
            let (p_max, r_max, n_max) = (int_field(e, "p_max")? as u64, int_field(e, "r_max")? as u32, int_field(e, "n_max")? as usize);
            let mut v = hauptmodul_coefficients(n_max)?;
            if let Some(k) = e.get("mutate").and_then(Value::as_u64) {
                v[k as usize] += 1;
            }
            let g = expand_eta_quotient(&gamma1_7_cusp_form(), p_max as usize)?;
            let gamma: Vec<BigInt> = (0..=p_max as i64).map(|k| g.coeff(k).unwrap_or_else(BigRational::zero).to_integer()).collect();
            let rep = asd_congruence_sweep(&v, &gamma, 7, p_max, r_max, n_max)?;
            let want = e.get("pass").and_then(Value::as_bool).unwrap_or(true);
            if rep.all_pass() != want {
                return Err(mismatch("sweep passes", rep.all_pass(), want));
            }
            return Ok(json!({ "checked": rep.entries.len(), "failed": rep.failed }));
        }
        "characteristic" => {
            let rec = recurrence_at_zero(&derive_ode(&inv)?)?;
            let cd = characteristic_polynomial(&rec)?;
            let want = parse_poly_in(str_field(e, "chi")?, 'x')?;
            if cd.chi != want {
                return Err(mismatch("chi", cd.chi.to_string_var("x"), want.to_string_var("x")));
            }
            let dom = serde_json::to_value(cd.dominance).unwrap_or_default();
            if dom.as_str() != Some(str_field(e, "dominance")?) {
                return Err(mismatch("dominance", dom, str_field(e, "dominance")?));
            }
            if let Ok(want) = strings(e, "residuals") {
                let got: Vec<String> = quadratic_decomposition(&rec)
                    .unwrap_or_default()
                    .iter()
                    .map(|q| q.residual.to_string())
                    .collect();
                compare_list("residuals", &got, &want)?;
            }
            if let Ok(prefix) = str_field(e, "lambda_prefix") {
                let lam = &cd.lambda_enclosure;
                let digits = prefix.len() - prefix.find('.').map_or(prefix.len(), |d| d + 1);
                let (lo, hi) = (rational_decimal(&lam.lo, digits), rational_decimal(&lam.hi, digits));
                if lo != prefix || hi != prefix {
                    return Err(mismatch("lambda", format!("[{lo}, {hi}]"), prefix));
                }
                let width = decimal_rational(str_field(e, "lambda_width")?)?;
                if lam.width() > width {
                    return Err(mismatch("lambda width", rational_decimal(&lam.width(), 12), str_field(e, "lambda_width")?));
                }
            }
        }
        "closed_form" => {
            let g = ClosedForm::parse(&v.family).ok_or_else(|| Error::Config(format!("no closed form for {}", v.family)))?;
            let want = str_field(e, "prefix")?;
            let got = g.decimal(want.len() + 5);
            if !got.starts_with(want) {
                return Err(mismatch("constant", got, want));
            }
        }
        other => return Err(Error::Config(format!("unknown check '{other}'"))),
    }
    Ok(Value::Null)
}

/// Exact rational from a decimal literal such as `6.2958969` or `1e-8`.
fn decimal_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Config(format!("bad decimal '{s}'"));
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, x)) => (m, x.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let e = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if e >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-e) as usize))
    })
}
