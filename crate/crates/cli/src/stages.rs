//! Pipeline stages over one family. Intermediate objects are derived lazily
//! and shared, so a failing stage only poisons the stages that need it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use picard_core::algebra::int::prime_divisors;
use picard_core::algebra::series::rational_string;
use picard_core::algebra::{PolyZ, RatFunc};
use picard_core::asymptotics::{analyze_asymptotics, AsymptoticOptions, ClosedForm};
use picard_core::curve::{
    check_delta_vanishes_at_zero, compute_invariants, integer_roots, reduce_mod_t, require_singular_origin, InvariantSet,
    WeierstrassFamily,
};
use picard_core::integrality::{analyze_level, sharperub_reduce, theoretical_bound, verify_reduction};
use picard_core::modular::{
    asd_congruence_sweep, expand_eta_quotient, expand_product, gamma1_7_cusp_form, gamma1_7_hauptmodul,
    gamma1_7_weight_one, hauptmodul_coefficients, verrill_identity_check,
};
use picard_core::picard::{derive_ode, recurrence_at_infinity, recurrence_at_zero, HolonomicRecurrence, SecondOrderOde};
use picard_core::{Error, Result};

#[derive(Clone, Debug)]
pub enum Stage {
    Invariants,
    Ode,
    Series(usize),
    SeriesInfinity(usize),
    Level { terms: usize },
    Reduce { prime: Option<u64> },
    Asymptotics { n: usize, m: usize, group: Option<String> },
    Congruence { p_max: u64, r_max: u32, n_max: usize },
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::Invariants => "invariants",
            Stage::Ode => "ode",
            Stage::Series(_) => "series",
            Stage::SeriesInfinity(_) => "series_infinity",
            Stage::Level { .. } => "level",
            Stage::Reduce { .. } => "reduce",
            Stage::Asymptotics { .. } => "asymptotics",
            Stage::Congruence { .. } => "congruence",
        }
    }

    pub fn config(&self) -> Value {
        match self {
            Stage::Invariants | Stage::Ode => json!({}),
            Stage::Series(n) | Stage::SeriesInfinity(n) => json!({ "terms": n }),
            Stage::Level { terms } => json!({ "terms": terms }),
            Stage::Reduce { prime } => json!({ "prime": prime }),
            Stage::Asymptotics { n, m, group } => json!({ "n": n, "m": m, "group": group }),
            Stage::Congruence { p_max, r_max, n_max } => json!({ "p_max": p_max, "r_max": r_max, "n_max": n_max }),
        }
    }
}

/// Lazily derived objects for one family.
pub struct Context {
    pub fam: WeierstrassFamily,
    pub digits: usize,
    inv: Option<Result<InvariantSet>>,
    ode: Option<Result<SecondOrderOde>>,
    rec0: Option<Result<HolonomicRecurrence>>,
}

impl Context {
    pub fn new(fam: WeierstrassFamily, digits: usize) -> Self {
        Context { fam, digits, inv: None, ode: None, rec0: None }
    }

    pub fn inv(&mut self) -> Result<InvariantSet> {
        let fam = &self.fam;
        self.inv.get_or_insert_with(|| compute_invariants(fam)).clone()
    }

    pub fn ode(&mut self) -> Result<SecondOrderOde> {
        if self.ode.is_none() {
            let r = self.inv().and_then(|inv| derive_ode(&inv));
            self.ode = Some(r);
        }
        self.ode.clone().unwrap()
    }

    /// Recurrence at `t = 0`; requires a singular fiber there.
    pub fn rec0(&mut self) -> Result<HolonomicRecurrence> {
        if self.rec0.is_none() {
            let r = self.inv().and_then(|inv| require_singular_origin(&inv)).and_then(|_| self.ode()).and_then(|o| recurrence_at_zero(&o));
            self.rec0 = Some(r);
        }
        self.rec0.clone().unwrap()
    }

    pub fn run(&mut self, stage: &Stage) -> Result<Value> {
        match stage {
            Stage::Invariants => self.invariants(),
            Stage::Ode => self.ode_report(),
            Stage::Series(n) => self.series(*n),
            Stage::SeriesInfinity(n) => self.series_infinity(*n),
            Stage::Level { terms } => Ok(analyze_level(&self.fam, *terms)?.to_json()),
            Stage::Reduce { prime } => self.reduce(*prime),
            Stage::Asymptotics { n, m, group } => self.asymptotics(*n, *m, group.as_deref()),
            Stage::Congruence { p_max, r_max, n_max } => self.congruence(*p_max, *r_max, *n_max),
        }
    }

    fn invariants(&mut self) -> Result<Value> {
        let inv = self.inv()?;
        let red = reduce_mod_t(&self.fam);
        let roots = integer_roots(inv.delta.num())
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        Ok(json!({
            "g2_times_12": ratfunc_json(&inv.g2_12),
            "g3_times_minus_216": ratfunc_json(&inv.g3_m216),
            "delta": ratfunc_json(&inv.delta),
            "j": ratfunc_json(&inv.j),
            "gamma": ratfunc_json(&inv.gamma),
            "polynomial_coordinates": inv.polynomial_coordinates,
            "delta_vanishes_at_zero": check_delta_vanishes_at_zero(&inv),
            "delta_integer_roots": roots,
            "reduction_at_zero": match red {
                Ok(r) => json!({
                    "values": r.values.iter().map(rational_string).collect::<Vec<_>>(),
                    "nodal_sign": r.nodal_sign,
                }),
                Err(e) => json!({ "error": e.to_string() }),
            },
        }))
    }

    fn ode_report(&mut self) -> Result<Value> {
        let ode = self.ode()?;
        let rec_str = |r: Result<HolonomicRecurrence>, u: &str| match r {
            Ok(r) => json!({ "relation": r.display(u), "offset": r.offset }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        Ok(json!({
            "p0": ode.p0.to_string_var("t"),
            "p1": ode.p1.to_string_var("t"),
            "p2": ode.p2.to_string_var("t"),
            "recurrence_zero": rec_str(self.rec0(), "u"),
            "recurrence_infinity": rec_str(recurrence_at_infinity(&ode), "v"),
        }))
    }

    fn series(&mut self, n: usize) -> Result<Value> {
        let rec = self.rec0()?;
        let u = rec.expand(n)?;
        Ok(json!({
            "recurrence": rec.display("u"),
            "coefficients": u.iter().map(rational_string).collect::<Vec<_>>(),
            "integral": u.iter().all(|c| c.is_integer()),
        }))
    }

    fn series_infinity(&mut self, n: usize) -> Result<Value> {
        let rec = recurrence_at_infinity(&self.ode()?)?;
        let v = rec.expand(n)?;
        Ok(json!({
            "recurrence": rec.display("v"),
            "offset": rec.offset,
            "coefficients": v.iter().map(rational_string).collect::<Vec<_>>(),
            "integral": v.iter().all(|c| c.is_integer()),
        }))
    }

    fn reduce(&mut self, prime: Option<u64>) -> Result<Value> {
        let rec = self.rec0()?;
        let (bound, kind) = theoretical_bound(&self.inv()?)?;
        let scaled = rec.rescale(&BigRational::from_integer(bound.clone()));
        let primes = match prime {
            Some(p) => vec![p],
            None => prime_divisors(&bound, 1 << 20)
                .ok_or_else(|| Error::Hypothesis(format!("could not factor the bound {bound}")))?,
        };
        let per_prime: Vec<Value> = primes
            .iter()
            .map(|&p| match sharperub_reduce(&scaled, p) {
                Ok(cert) => json!({
                    "p": p,
                    "k": cert.k,
                    "k0": cert.k0,
                    "s": cert.s,
                    "reduced": cert.reduced.terms.iter().map(|t| t.to_string_var("n")).collect::<Vec<_>>(),
                    "reduced_relation": cert.reduced.display("w"),
                    "verified_terms": 200,
                    "verified": verify_reduction(&scaled, &cert, 200).unwrap_or(false),
                }),
                Err(e) => json!({ "p": p, "error": e.to_string() }),
            })
            .collect();
        Ok(json!({
            "theoretical_bound": bound.to_string(),
            "bound_kind": kind,
            "scaled_relation": scaled.display("u"),
            "primes": per_prime,
        }))
    }

    fn asymptotics(&mut self, n: usize, m: usize, group: Option<&str>) -> Result<Value> {
        let rec = self.rec0()?;
        let group = match group {
            Some(tag) => Some(ClosedForm::parse(tag).ok_or_else(|| Error::Config(format!("unknown group '{tag}'")))?),
            None => ClosedForm::parse(&self.fam.name),
        };
        let opts = AsymptoticOptions { n, m, digits: self.digits };
        Ok(analyze_asymptotics(&rec, &opts, group)?.to_json(self.digits))
    }

    /// ASD sweep on `w_{n+1} = (−1)ⁿ v_n` built from the expansion at
    /// infinity, with the weight-3 cusp form of level 7.
    fn congruence(&mut self, p_max: u64, r_max: u32, n_max: usize) -> Result<Value> {
        let rec = recurrence_at_infinity(&self.ode()?)?;
        let (v, bad) = rec.expand_integral(n_max);
        if let Some(i) = bad {
            return Err(Error::Hypothesis(format!("expansion at infinity is not integral (index {i})")));
        }
        let mut w = vec![BigInt::zero()];
        w.extend(v.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x.clone() }));
        let probe = 60.min(n_max);
        if hauptmodul_coefficients(probe + 1)?[..=probe + 1] != w[..=probe + 1] {
            return Err(Error::Hypothesis(
                "no modular parametrization known: the expansion at infinity is not the level-7 Hauptmodul series".into(),
            ));
        }
        let order = 200;
        let f = expand_product(&gamma1_7_weight_one(), order);
        let t = expand_product(&gamma1_7_hauptmodul(), order);
        let g = expand_eta_quotient(&gamma1_7_cusp_form(), order.max(p_max as usize))?;
        let verrill = verrill_identity_check(&f, &t, &g, order)?;
        let gamma: Vec<BigInt> = (0..=p_max as i64).map(|e| g.coeff(e).unwrap_or_else(BigRational::zero).to_integer()).collect();
        let rep = asd_congruence_sweep(&w, &gamma, 7, p_max, r_max, n_max)?;
        Ok(json!({
            "verrill_identity": { "order": order, "holds": verrill.holds(), "first_mismatch": verrill.first_mismatch },
            "sweep": {
                "level": 7,
                "checked": rep.entries.len(),
                "passed": rep.passed,
                "failed": rep.failed,
                "all_pass": rep.all_pass(),
                "first_failure": rep.first_failure(),
                "notes": rep.notes,
            },
        }))
    }
}

pub fn ratfunc_json(r: &RatFunc) -> Value {
    let (nu, delta) = r.nu_delta();
    json!({
        "value": r.to_string_var("t"),
        "num": r.num().to_string_var("t"),
        "den": r.den().to_string_var("t"),
        "nu": nu.to_string(),
        "delta": delta.to_string(),
    })
}

/// Stable snake-case tag for an error variant.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::InsufficientDegreeShift { .. } => "insufficient_degree_shift",
        Error::PoleAtExpansionPoint => "pole_at_expansion_point",
        Error::NonUnitConstantTerm => "non_unit_constant_term",
        Error::NotReversible => "not_reversible",
        Error::DivisionByZero => "division_by_zero",
        Error::IdenticallySingular => "identically_singular",
        Error::PoleAtOrigin(_) => "pole_at_origin",
        Error::ConstantJ => "constant_j",
        Error::ApparentSingularity => "apparent_singularity",
        Error::VanishingLeadingWeight(_) => "vanishing_leading_weight",
        Error::Hypothesis(_) => "hypothesis",
        Error::ShiftRequired(_) => "shift_required",
        Error::ReductionHypotheses(_) => "reduction_hypotheses",
        Error::NonIntegralQExponent => "non_integral_q_exponent",
        Error::InsufficientPrecision { .. } => "insufficient_precision",
        Error::NoPositiveRoot => "no_positive_root",
        Error::NotPoincare(_) => "not_poincare",
        Error::Checkpoint(_) => "checkpoint",
        Error::Config(_) => "config",
        Error::Io(_) => "io",
    }
}

/// Polynomial in `n` (or `x`) written with that letter, parsed through the
/// `t` parser.
pub fn parse_poly_in(s: &str, var: char) -> Result<PolyZ> {
    picard_core::algebra::parse_poly(&s.replace(var, "t"))
}
