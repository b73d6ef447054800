//! Command implementations. Each returns its results as JSON together with
//! a verdict that can be recomputed from those results.

use serde_json::{json, Value};
use smtlab::nevanlinna::{fmt_check, geometric_grid, smt_check, truncation_bound, SmtScenario};
use smtlab::position::{distributive_constant, subgeneral_position_check};
use smtlab::rational::format_rational;
use smtlab::replace::{
    delta_from_thresholds, dimension_profile, m_sequence, replace_family, thresholds_from_profile,
    verify_certificate, weighted_product_inequality, Thresholds, DEFAULT_RETRY_BUDGET,
};
use smtlab::variety::{hilbert_function, projective_dimension};
use smtlab::weights::{brute_force_hilbert_weight, ef_inequality_check, max_weight_basis, WeightVector};
use smtlab::{Error, Rational};

use crate::report::{Outcome, Verdict};
use crate::scenario::Scenario;
use crate::{CliError, Flags};

/// Command-line flags take precedence over the scenario; the report echoes
/// the merged scenario so that it can be re-run as is.
pub fn apply_flags(s: &mut Scenario, f: &Flags) {
    let a = &mut s.analysis;
    if let Some(seed) = f.seed {
        s.sampling.seed = seed;
    }
    if let Some(e) = &f.epsilon {
        a.epsilon = Some(e.clone());
    }
    if f.u.is_some() {
        a.u = f.u;
    }
    if f.r_min.is_some() || f.r_max.is_some() {
        let [lo, hi] = a.r_range.unwrap_or(DEFAULT_RANGE);
        a.r_range = Some([f.r_min.unwrap_or(lo), f.r_max.unwrap_or(hi)]);
        a.grid = None;
    }
    if f.samples.is_some() {
        a.samples = f.samples;
        a.grid = None;
    }
    if f.retry_budget.is_some() {
        a.retry_budget = f.retry_budget;
    }
    if f.tolerance.is_some() {
        a.tolerance = f.tolerance;
    }
}

const DEFAULT_RANGE: [f64; 2] = [2.0, 100.0];
const DEFAULT_SAMPLES: usize = 20;
/// Fraction of radii at which the Second Main Theorem inequality must hold.
const SMT_PASS_FRACTION: f64 = 0.95;

pub fn dispatch(name: &str, s: &Scenario) -> Result<Outcome, CliError> {
    match name {
        "analyze-position" => analyze_position(s),
        "replace" => replace(s),
        "lemma31" => lemma31(s),
        "hilbert-weight" => hilbert_weight(s),
        "ef-check" => ef_check(s),
        "fmt-check" => fmt(s),
        "smt-check" => smt(s),
        "truncation-bound" => truncation(s),
        other => Err(CliError::input(format!("unknown command `{other}`"))),
    }
}

fn fr(q: &Rational) -> String {
    format_rational(q)
}

fn frs(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(fr).collect()
}

fn grid(s: &Scenario) -> Result<Vec<f64>, CliError> {
    if let Some(g) = &s.analysis.grid {
        return Ok(g.clone());
    }
    let [lo, hi] = s.analysis.r_range.unwrap_or(DEFAULT_RANGE);
    geometric_grid(lo, hi, s.analysis.samples.unwrap_or(DEFAULT_SAMPLES))
        .map_err(|e| CliError::input(format!("analysis.r_range: {e}")))
}

fn analyze_position(s: &Scenario) -> Result<Outcome, CliError> {
    let v = s.variety()?;
    let fam = s.family()?;
    let cfg = s.sampling()?;
    let rep = distributive_constant(&v, &fam, &cfg)?;
    let names = |idx: &[usize]| idx.iter().map(|&i| fam.entries()[i].name.clone()).collect::<Vec<_>>();
    let table: Vec<Value> = rep
        .table
        .iter()
        .map(|e| json!({ "subset": names(&e.subset), "codim": e.codim.to_string(), "ratio": fr(&e.ratio()) }))
        .collect();
    let dim = projective_dimension(&v);
    let mut results = json!({
        "dim_v": dim.to_string(),
        "delta": fr(&rep.delta),
        "witness": names(&rep.witness),
        "stable": rep.stable,
        "samples_used": frs(&rep.samples_used),
        "degenerate_samples": frs(&rep.degenerate_samples),
        "table": table,
    });
    let Some(l) = s.analysis.l else {
        return Ok(Outcome {
            results,
            verdict: Verdict::Pass,
            criterion: "informational: PASS whenever delta is computed".into(),
            csv: None,
        });
    };
    let sg = subgeneral_position_check(&v, &fam, l, &cfg)?;
    let n = dim.dim().unwrap_or(0) as i64;
    let bound = Rational::from_integer((l as i64 - n + 1).into());
    let within = rep.delta <= bound;
    results["subgeneral"] = json!({
        "l": l,
        "holds": sg.holds,
        "violating_subset": sg.violating_subset.as_deref().map(names),
        "delta_bound": fr(&bound),
        "delta_within_bound": within,
    });
    Ok(Outcome {
        results,
        verdict: Verdict::from_bool(sg.holds && within),
        criterion: "PASS iff the family is in l-subgeneral position and delta <= l - dim V + 1".into(),
        csv: None,
    })
}

fn replace(s: &Scenario) -> Result<Outcome, CliError> {
    let v = s.variety()?;
    let fam = s.fixed_family()?;
    let budget = s.analysis.retry_budget.unwrap_or(DEFAULT_RETRY_BUDGET);
    let profile = dimension_profile(&v, &fam)?;
    let r = replace_family(&v, &fam, s.sampling.seed, budget)?;
    let verified = verify_certificate(&v, &fam, &r)?;
    let combos: Vec<String> = r.polys(&fam)?.iter().map(|p| p.to_string_with(&s.variables)).collect();
    let results = json!({
        "profile": profile.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "thresholds": r.thresholds.values(),
        "convention": format!("{:?}", r.thresholds.convention()),
        "delta": fr(&delta_from_thresholds(&r.thresholds)),
        "coefficients": r.coefficients.iter().map(|c| frs(c)).collect::<Vec<_>>(),
        "combinations": combos,
        "certificate": r.certificate.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "retries_used": r.retries_used,
        "retry_budget": budget,
        "verified": verified,
    });
    Ok(Outcome {
        results,
        verdict: Verdict::from_bool(verified),
        criterion: "PASS iff the certificate re-verifies with final EMPTY".into(),
        csv: None,
    })
}

fn lemma31(s: &Scenario) -> Result<Outcome, CliError> {
    let t = match &s.analysis.thresholds {
        Some(t) => Thresholds::new(t.clone()).map_err(|e| CliError::input(format!("analysis.thresholds: {e}")))?,
        None => {
            let v = s.variety()?;
            let n = projective_dimension(&v).dim().ok_or(Error::EmptyVariety)?;
            thresholds_from_profile(&dimension_profile(&v, &s.fixed_family()?)?, n)?
        }
    };
    let delta = delta_from_thresholds(&t);
    let m = m_sequence(&t);
    let m0_ok = m.last() == Some(&delta);
    let mut results = json!({
        "thresholds": t.values(),
        "convention": format!("{:?}", t.convention()),
        "normalized": t.normalized().values(),
        "delta": fr(&delta),
        "m_sequence": frs(&m),
        "m0_equals_delta": m0_ok,
    });
    let mut ok = m0_ok;
    if let Some(a) = s.a_values()? {
        let p = weighted_product_inequality(&t, &a).map_err(|e| CliError::input(format!("analysis.a: {e}")))?;
        ok &= p.holds;
        results["product"] = json!({
            "a": frs(&a),
            "lhs": fr(&p.lhs),
            "rhs": fr(&p.rhs),
            "power": p.power,
            "holds": p.holds,
        });
    }
    Ok(Outcome {
        results,
        verdict: Verdict::from_bool(ok),
        criterion: "PASS iff m_0 = delta and, when a is given, lhs <= rhs".into(),
        csv: None,
    })
}

fn weight_vector(s: &Scenario) -> Result<WeightVector, CliError> {
    WeightVector::new(s.weights()?).map_err(|e| CliError::input(format!("analysis.c: {e}")))
}

fn hilbert_weight(s: &Scenario) -> Result<Outcome, CliError> {
    let v = s.variety()?;
    let u = s.u()?;
    let c = weight_vector(s)?;
    let rep = max_weight_basis(&v, u, &c)?;
    let h = hilbert_function(&v, u)?;
    let oracle = match brute_force_hilbert_weight(&v, u, &c) {
        Ok(x) => Some(x),
        Err(Error::OracleScale(..)) => None,
        Err(e) => return Err(e.into()),
    };
    let matches = oracle.as_ref().is_none_or(|x| *x == rep.value);
    let normalized = &rep.value / Rational::from_integer((u as u64 * h).into());
    let results = json!({
        "u": u,
        "c": frs(c.values()),
        "value": fr(&rep.value),
        "basis": rep.basis.iter().map(|m| m.to_string_with(&s.variables)).collect::<Vec<_>>(),
        "hilbert_function": h,
        "normalized": fr(&normalized),
        "oracle": oracle.as_ref().map(fr),
        "matches_oracle": matches,
    });
    Ok(Outcome {
        results,
        verdict: Verdict::from_bool(matches),
        criterion: "PASS iff the greedy value equals the brute-force maximum (when within oracle scale)".into(),
        csv: None,
    })
}

fn ef_check(s: &Scenario) -> Result<Outcome, CliError> {
    let v = s.variety()?;
    let u = s.u()?;
    let c = weight_vector(s)?;
    let j = s.analysis.j.clone().ok_or_else(|| CliError::input("analysis.j: missing"))?;
    let rep = ef_inequality_check(&v, &c, u, &j)?;
    let results = json!({
        "u": u,
        "c": frs(c.values()),
        "j": j,
        "lhs": fr(&rep.lhs),
        "rhs": fr(&rep.rhs),
        "slack": fr(&rep.slack),
        "holds": rep.holds,
        "in_theorem_range": rep.in_theorem_range,
    });
    Ok(Outcome {
        results,
        verdict: Verdict::from_bool(rep.holds),
        criterion: "PASS iff lhs >= rhs".into(),
        csv: None,
    })
}

fn fmt(s: &Scenario) -> Result<Outcome, CliError> {
    let f = s.curve()?;
    let fam = s.family()?;
    let cfg = s.quadrature()?;
    let grid = grid(s)?;
    let mut checks = Vec::new();
    let mut csv = String::from("hypersurface,r,T,m,N,rho\n");
    let mut all = true;
    for e in fam.entries() {
        let rep = fmt_check(&f, &e.poly, &grid, &cfg)?;
        all &= rep.pass;
        for row in &rep.rows {
            csv += &format!("{},{},{},{},{},{}\n", e.name, row.r, row.t, row.m, row.n, row.rho);
        }
        checks.push(json!({
            "name": e.name,
            "moving": rep.moving,
            "pass": rep.pass,
            "criterion": rep.criterion,
            "rows": rep.rows.iter().map(|r| json!({"r": r.r, "t": r.t, "m": r.m, "n": r.n, "rho": r.rho})).collect::<Vec<_>>(),
        }));
    }
    let results = json!({ "tolerance": cfg.tolerance, "checks": checks });
    Ok(Outcome {
        results,
        verdict: Verdict::from_bool(all),
        criterion: "PASS iff every hypersurface passes its residual criterion".into(),
        csv: Some(csv),
    })
}

fn smt(s: &Scenario) -> Result<Outcome, CliError> {
    let v = s.variety()?;
    let f = s.curve()?;
    let fam = s.family()?;
    let epsilon = s.epsilon()?;
    let [r_min, r_max] = s.analysis.r_range.unwrap_or(DEFAULT_RANGE);
    let scenario = SmtScenario {
        variety: &v,
        curve: &f,
        family: &fam,
        epsilon,
        r_min,
        r_max,
        samples: s.analysis.samples.unwrap_or(DEFAULT_SAMPLES),
        sampling: s.sampling()?,
        quadrature: s.quadrature()?,
    };
    let rep = smt_check(&scenario)?;
    let mut csv = String::from("r,T,lhs,rhs,margin\n");
    for row in &rep.rows {
        csv += &format!("{},{},{},{},{}\n", row.r, row.t_f, row.lhs, row.rhs, row.margin);
    }
    let results = json!({
        "n_f": rep.n_f,
        "degree_f": rep.degree_f,
        "delta_f": fr(&rep.delta_f),
        "delta_stable": rep.delta_stable,
        "q": rep.q,
        "epsilon": fr(&rep.epsilon),
        "coefficient": fr(&rep.coefficient),
        "tolerance": scenario.quadrature.tolerance,
        "fraction_holding": rep.fraction_holding,
        "fraction_strict": rep.fraction_strict(),
        "rows": rep.rows.iter().map(|r| json!({
            "r": r.r, "t_f": r.t_f, "m": r.m, "n": r.n, "lhs": r.lhs, "rhs": r.rhs, "margin": r.margin,
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        results,
        verdict: Verdict::from_bool(rep.fraction_holding >= SMT_PASS_FRACTION),
        criterion: format!("PASS iff fraction_holding >= {SMT_PASS_FRACTION}"),
        csv: Some(csv),
    })
}

fn truncation(s: &Scenario) -> Result<Outcome, CliError> {
    let q = match s.analysis.q {
        Some(q) => q,
        None if !s.hypersurfaces.is_empty() => s.hypersurfaces.len() as u64,
        None => return Err(CliError::input("analysis.q: missing and no hypersurfaces to count")),
    };
    let eps = s.epsilon()?;
    let bound = truncation_bound(q, &eps)?;
    let results = json!({ "q": q, "epsilon": fr(&eps), "bound": bound.to_string() });
    Ok(Outcome {
        results,
        verdict: Verdict::Pass,
        criterion: "informational: PASS whenever the bound is computed".into(),
        csv: None,
    })
}
