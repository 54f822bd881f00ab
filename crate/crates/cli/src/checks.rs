//! Verification routines shared by the single-purpose subcommands and `verify-all`.

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use spacecurve_core::catalog::{adjacencies, instantiate, CatalogEntry, EntryId, Family};
use spacecurve_core::deform_solver::{
    bifurcation_matrix, discriminant_closure_point, discriminant_matrix, sample_discriminant,
    sample_sigma, SigmaComponent, VectorFieldMatrix,
};
use spacecurve_core::genericity::{random_integer, random_nonzero, GenericityConfig};
use spacecurve_core::invariants::{milnor, tjurina};
use spacecurve_core::ll_map::{
    extended_matrix_identity, ll_degree, ll_fiber_origin_check, ll_jacobian_check, ll_point,
    printed_ll_degree, random_cpqr_params, weight_profile,
};
use spacecurve_core::poly::format_rational;
use spacecurve_core::{Error, Polynomial, Rational};

use crate::report::Check;

pub fn rat(c: &Rational) -> String {
    format_rational(c)
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat).collect()
}

fn poly_rows(rows: &[Vec<Polynomial>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|p| p.to_string()).collect())
        .collect()
}

pub fn entry_record(e: &CatalogEntry) -> Value {
    json!({
        "entry": e.id.to_string(),
        "label": e.id.label(),
        "family": e.id.family.name(),
        "indices": e.id.indices,
        "modulus": e.id.modulus.as_ref().map(rat),
        "tau": e.expected_tau,
        "matrix": poly_rows(e.pair.matrix.rows()),
        "function": e.pair.function.to_string(),
        "adjacencies": adjacencies(&e.id).iter().map(|a| a.to_string()).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------- Tjurina

pub struct TauRow {
    pub id: EntryId,
    pub computed: Result<usize, Error>,
}

pub fn tau_rows(ids: &[EntryId]) -> Vec<TauRow> {
    ids.par_iter()
        .map(|id| TauRow {
            id: id.clone(),
            computed: instantiate(id).and_then(|e| tjurina(&e.pair)),
        })
        .collect()
}

pub fn tau_report(rows: &[TauRow]) -> (Value, Vec<Check>) {
    let mut records = Vec::new();
    let mut checks = Vec::new();
    for row in rows {
        let expected = row.id.expected_tau();
        let name = format!("tau {}", row.id);
        let check = match &row.computed {
            Ok(t) => Check::new(
                name,
                *t == expected,
                format!("tau = {t}, expected {expected}"),
                json!({"computed": t, "expected": expected}),
            ),
            Err(e) => Check::error(name, e),
        };
        records.push(json!({
            "family": row.id.family.name(),
            "indices": row.id.indices,
            "modulus": row.id.modulus.as_ref().map(rat),
            "tau": row.computed.as_ref().ok(),
            "expected_tau": expected,
            "status": check.status,
        }));
        checks.push(check);
    }
    (Value::Array(records), checks)
}

// ---------------------------------------------------------------- Milnor

/// Milnor numbers of each entry under every listed seed, compared with the Tjurina number.
pub fn conjecture_report(
    rows: &[TauRow],
    cfg: &GenericityConfig,
    seeds: &[u64],
) -> (Value, Vec<Check>) {
    let computed: Vec<Vec<Result<Option<usize>, Error>>> = rows
        .par_iter()
        .map(|row| {
            let entry = match instantiate(&row.id) {
                Ok(e) => e,
                Err(e) => return vec![Err(e)],
            };
            seeds
                .iter()
                .map(|&s| milnor(&entry, &cfg.with_seed(s)))
                .collect()
        })
        .collect();
    let mut records = Vec::new();
    let mut checks = Vec::new();
    for (row, mus) in rows.iter().zip(computed) {
        let name = format!("mu {}", row.id);
        let tau = row.computed.as_ref().ok().copied();
        let by_seed: Vec<Value> = mus
            .iter()
            .map(|m| match m {
                Ok(Some(v)) => json!(v),
                Ok(None) => Value::Null,
                Err(e) => json!(format!("error: {e}")),
            })
            .collect();
        let check = if let Some(Err(e)) = mus.iter().find(|m| m.is_err()) {
            Check::error(name, e)
        } else if mus.iter().all(|m| matches!(m, Ok(None))) {
            Check::skipped(name, "mu not computed for this family")
        } else {
            let values: Vec<usize> = mus
                .iter()
                .filter_map(|m| m.clone().ok().flatten())
                .collect();
            let ok = tau.is_some()
                && values.len() == seeds.len()
                && values.iter().all(|&m| Some(m) == tau);
            Check::new(
                name,
                ok,
                format!(
                    "mu = {values:?} over seeds {seeds:?}, tau = {}",
                    fmt_opt(tau)
                ),
                json!({"tau": tau, "mu_by_seed": by_seed}),
            )
        };
        records.push(json!({
            "family": row.id.family.name(),
            "indices": row.id.indices,
            "modulus": row.id.modulus.as_ref().map(rat),
            "tau": tau,
            "mu": by_seed.first().cloned().unwrap_or(Value::Null),
            "mu_by_seed": by_seed,
            "seeds": seeds,
            "status": check.status,
        }));
        checks.push(check);
    }
    (Value::Array(records), checks)
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or("?".into(), |t| t.to_string())
}

// ---------------------------------------------------------------- LL degree

pub fn ll_degree_report(ids: &[EntryId]) -> (Value, Vec<Check>, String) {
    let mut records = Vec::new();
    let mut checks = Vec::new();
    let mut table = format!(
        "{:<18} {:>4} {:>4}  {:<38} {:>14} {:>14}  {}\n",
        "entry", "tau", "d", "truncated weights", "LL degree", "printed", "status"
    );
    for id in ids {
        let name = format!("ll-degree {id}");
        if id.family.has_modulus() {
            let c = Check::skipped(name, "carries a modulus; not quasi-homogeneous");
            records.push(json!({"entry": id.to_string(), "label": id.label(), "status": c.status, "note": c.summary}));
            table.push_str(&format!(
                "{:<18} {:>4} {:>4}  {:<38} {:>14} {:>14}  SKIP\n",
                id.label(),
                id.expected_tau(),
                "-",
                "-",
                "-",
                "-"
            ));
            checks.push(c);
            continue;
        }
        let computed = instantiate(id)
            .and_then(|e| weight_profile(&e))
            .and_then(|wp| ll_degree(&wp).map(|d| (wp, d)));
        let printed = printed_ll_degree(id);
        let printed_s = printed.as_ref().map(rat);
        match computed {
            Ok((wp, deg)) => {
                let ok = printed
                    .as_ref()
                    .is_some_and(|p| p.is_integer() && p.numer() == &deg);
                let c = Check::new(
                    name,
                    ok,
                    format!(
                        "computed {deg}, printed {}",
                        printed_s.clone().unwrap_or("none".into())
                    ),
                    json!({"computed": deg.to_string(), "printed": printed_s}),
                );
                let weights = format!("{:?}", wp.truncated_weights());
                table.push_str(&format!(
                    "{:<18} {:>4} {:>4}  {:<38} {:>14} {:>14}  {}\n",
                    id.label(),
                    wp.tau,
                    wp.degree,
                    weights,
                    deg.to_string(),
                    printed_s.clone().unwrap_or("-".into()),
                    crate::report::label(c.status)
                ));
                records.push(json!({
                    "entry": id.to_string(),
                    "label": id.label(),
                    "family": id.family.name(),
                    "indices": id.indices,
                    "tau": wp.tau,
                    "degree": wp.degree,
                    "variable_weights": wp.var_weights,
                    "parameter_weights": wp.param_weights,
                    "ll_degree": deg.to_string(),
                    "printed": printed_s,
                    "status": c.status,
                }));
                checks.push(c);
            }
            Err(e) => {
                let c = Check::error(name, &e);
                records.push(json!({"entry": id.to_string(), "label": id.label(), "status": c.status, "error": e.to_string()}));
                checks.push(c);
            }
        }
    }
    (Value::Array(records), checks, table)
}

// ---------------------------------------------------------------- free divisors

fn matrix_record(m: &VectorFieldMatrix) -> Value {
    json!({
        "parameters": m.params.names(),
        "parameter_weights": m.param_weights,
        "field_degrees": m.field_degrees,
        "entries": poly_rows(&m.entries),
        "det": m.det.to_string(),
        "normalization": rat(&m.scale),
        "multiplier": format!("{:?}", m.multiplier),
        "fallback_reason": m.fallback_reason,
    })
}

/// The determinant restricted to the constant-term axis.
fn axis_restriction(det: &Polynomial) -> Vec<(u32, String)> {
    let last = det.vars().len() - 1;
    det.terms()
        .filter(|(e, _)| e[..last].iter().all(|&k| k == 0))
        .map(|(e, c)| (e[last], rat(c)))
        .collect()
}

fn vanishing_check(
    name: String,
    m: &VectorFieldMatrix,
    points: &[Vec<Rational>],
    need: usize,
) -> Check {
    let bad: Vec<Vec<String>> = points
        .iter()
        .filter(|p| !m.det_at(p).is_zero())
        .map(|p| rats(p))
        .collect();
    let ok = bad.is_empty() && points.len() >= need;
    Check::new(
        name,
        ok,
        format!(
            "det vanishes at {}/{} points (need {need})",
            points.len() - bad.len(),
            points.len()
        ),
        if ok {
            Value::Null
        } else {
            json!({"nonvanishing_points": bad.into_iter().take(5).collect::<Vec<_>>()})
        },
    )
}

pub fn delta_report(id: &EntryId, samples: usize, cfg: &GenericityConfig) -> (Value, Vec<Check>) {
    let pre = format!("delta {id}");
    let (v, _) = match discriminant_matrix(id) {
        Ok(x) => x,
        Err(e) => return (Value::Null, vec![Check::error(format!("{pre}: solve"), e)]),
    };
    let tau = id.expected_tau() as u32;
    let mut checks = Vec::new();
    let axis = axis_restriction(&v.det);
    checks.push(Check::new(
        format!("{pre}: axis"),
        axis == vec![(tau, "1".to_string())],
        format!(
            "det on the constant-term axis = {}",
            render_axis(
                &axis,
                v.params.names().last().map(|s| s.as_str()).unwrap_or("l0")
            )
        ),
        json!({"axis_terms": axis, "expected_power": tau}),
    ));
    let deg = v.det.quasi_degree(&v.param_weights);
    checks.push(Check::new(
        format!("{pre}: quasi-degree"),
        deg == Some(v.expected_det_degree()),
        format!(
            "det quasi-degree {}, expected {}",
            deg.map_or("mixed".into(), |d| d.to_string()),
            v.expected_det_degree()
        ),
        Value::Null,
    ));
    match sample_discriminant(id, samples, cfg) {
        Ok(pts) => checks.push(vanishing_check(
            format!("{pre}: samples"),
            &v,
            &pts,
            samples,
        )),
        Err(e) => checks.push(Check::error(format!("{pre}: samples"), e)),
    }
    if id.family == Family::CSpace {
        match discriminant_closure_point(id, cfg) {
            Ok(p) => checks.push(vanishing_check(
                format!("{pre}: closure point"),
                &v,
                &[p],
                1,
            )),
            Err(e) => checks.push(Check::error(format!("{pre}: closure point"), e)),
        }
    }
    (matrix_record(&v), checks)
}

fn render_axis(terms: &[(u32, String)], var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(k, c)| {
            if c == "1" {
                format!("{var}^{k}")
            } else {
                format!("{c}*{var}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Σ samples grouped by the label used in the figure data.
pub fn sigma_points(
    id: &EntryId,
    per_component: usize,
    cfg: &GenericityConfig,
    comp: SigmaComponent,
) -> Result<Vec<(String, Vec<Rational>)>, Error> {
    let split = comp == SigmaComponent::Nonsmooth && id.family == Family::CSpace;
    let n = if split {
        3 * per_component
    } else {
        per_component
    };
    let pts = sample_sigma(id, n, cfg, comp)?;
    Ok(pts
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            let label = if split {
                ["nonsmooth_alpha", "nonsmooth_beta", "nonsmooth_gamma"][k % 3].to_string()
            } else {
                comp.name().to_string()
            };
            (label, p)
        })
        .collect())
}

pub fn sigma_report(id: &EntryId, samples: usize, cfg: &GenericityConfig) -> (Value, Vec<Check>) {
    let pre = format!("sigma {id}");
    let (w, _) = match bifurcation_matrix(id, cfg) {
        Ok(x) => x,
        Err(e) => return (Value::Null, vec![Check::error(format!("{pre}: solve"), e)]),
    };
    let mut checks = Vec::new();
    if let Some(reason) = &w.fallback_reason {
        checks.push(Check::skipped(
            format!("{pre}: printed multiplier"),
            format!("rejected ({reason}); constant-direction multiplier used"),
        ));
    }
    let degree = instantiate(id)
        .ok()
        .and_then(|e| e.weights.map(|w| w.degree))
        .unwrap_or(1);
    let rows = w.row_degrees(degree);
    let three_lines = id.family == Family::CSpace && id.indices == [1, 1, 1];
    let expected_rows: Vec<i64> = if three_lines {
        vec![1, 2, 3]
    } else {
        rows.clone()
    };
    checks.push(Check::new(
        format!("{pre}: row quasi-degrees"),
        rows == expected_rows,
        format!("rows {rows:?}"),
        json!({"row_degrees": rows, "expected": expected_rows}),
    ));
    let deg = w.det.quasi_degree(&w.param_weights);
    let expected_deg = if three_lines {
        6
    } else {
        w.expected_det_degree()
    };
    checks.push(Check::new(
        format!("{pre}: det quasi-degree"),
        deg == Some(expected_deg) && w.expected_det_degree() == expected_deg,
        format!(
            "det quasi-degree {}, expected {expected_deg}",
            deg.map_or("mixed".into(), |d| d.to_string())
        ),
        Value::Null,
    ));
    checks.push(Check::new(
        format!("{pre}: det squarefree"),
        w.det_squarefree_on_line(cfg),
        "gcd with derivative on a random line is constant",
        Value::Null,
    ));
    checks.push(Check::new(
        format!("{pre}: Euler field"),
        w.euler_in_span(),
        "Euler field is a constant combination of degree-one rows",
        Value::Null,
    ));
    let mut counts = serde_json::Map::new();
    for comp in SigmaComponent::ALL {
        let name = format!("{pre}: {} component", comp.name());
        match sigma_points(id, samples, cfg, comp) {
            Ok(pts) => {
                let mut labels: Vec<String> = pts.iter().map(|(l, _)| l.clone()).collect();
                labels.sort();
                labels.dedup();
                for l in labels {
                    let group: Vec<Vec<Rational>> = pts
                        .iter()
                        .filter(|(k, _)| *k == l)
                        .map(|(_, p)| p.clone())
                        .collect();
                    counts.insert(l.clone(), json!(group.len()));
                    checks.push(vanishing_check(format!("{pre}: {l}"), &w, &group, samples));
                }
            }
            Err(Error::EmptyComponent(reason)) => {
                counts.insert(comp.name().into(), json!(0));
                checks.push(Check::skipped(name, format!("empty: {reason}")));
            }
            Err(e) => checks.push(Check::error(name, e)),
        }
    }
    let mut rec = matrix_record(&w);
    rec["row_degrees"] = json!(rows);
    rec["samples"] = Value::Object(counts);
    (rec, checks)
}

// ---------------------------------------------------------------- covering

pub struct CoverDraws {
    pub off_sigma: usize,
    pub on_sigma: usize,
    pub fiber: usize,
}

pub fn cover_report(
    id: &EntryId,
    draws: &CoverDraws,
    cfg: &GenericityConfig,
) -> (Value, Vec<Check>) {
    let pre = format!("ll-check {id}");
    if id.family != Family::CSpace {
        return (
            Value::Null,
            vec![Check::error(pre, "the covering checks apply to C_{p,q,r}")],
        );
    }
    let pqr = (id.indices[0], id.indices[1], id.indices[2]);
    let b = cfg.coeff_bound;
    let mut checks = Vec::new();
    let mut rec = serde_json::Map::new();

    // generic draws off the bifurcation diagram
    let mut rng = cfg.rng(&format!("jacobian:{id}"));
    let (mut accepted, mut nonsingular, mut attempts) = (0, 0, 0);
    let mut offending = Vec::new();
    while accepted < draws.off_sigma && attempts < 10 * draws.off_sigma.max(1) {
        attempts += 1;
        let v = random_cpqr_params(pqr, &mut rng, b).to_values();
        match ll_point(id, &v) {
            Ok(p) if !p.has_multiple_root() => {}
            _ => continue,
        }
        accepted += 1;
        match ll_jacobian_check(id, &v) {
            Ok(r) if r.nonsingular => nonsingular += 1,
            Ok(r) => offending.push(json!({"values": rats(&v), "reason": r.reason})),
            Err(e) => offending.push(json!({"values": rats(&v), "error": e.to_string()})),
        }
    }
    rec.insert(
        "off_sigma".into(),
        json!({"draws": accepted, "nonsingular": nonsingular}),
    );
    checks.push(Check::new(
        format!("{pre}: Jacobian off Sigma"),
        accepted == draws.off_sigma && nonsingular == accepted,
        format!("nonsingular at {nonsingular}/{accepted} draws"),
        if offending.is_empty() {
            Value::Null
        } else {
            json!({"offending": offending})
        },
    ));

    // draws on the bifurcation diagram: a singular curve or a degenerate critical point
    let mut rng = cfg.rng(&format!("jacobian-sigma:{id}"));
    let n_smooth = draws.on_sigma / 2;
    let mut on: Vec<Vec<Rational>> = (0..draws.on_sigma - n_smooth)
        .map(|k| {
            let mut v = random_cpqr_params(pqr, &mut rng, b).to_values();
            v[k % 3] = Rational::zero();
            v
        })
        .collect();
    match sample_sigma(id, n_smooth, cfg, SigmaComponent::Degenerate) {
        Ok(pts) => on.extend(pts.into_iter().map(|mut p| {
            p.push(random_integer(&mut rng, b));
            p
        })),
        Err(e) => checks.push(Check::error(format!("{pre}: Sigma sampler"), e)),
    }
    let mut singular = 0;
    let mut offending = Vec::new();
    for v in &on {
        match ll_jacobian_check(id, v) {
            Ok(r) if !r.nonsingular => singular += 1,
            Ok(_) => offending.push(json!(rats(v))),
            Err(e) => offending.push(json!({"values": rats(v), "error": e.to_string()})),
        }
    }
    rec.insert(
        "on_sigma".into(),
        json!({"draws": on.len(), "singular": singular}),
    );
    checks.push(Check::new(
        format!("{pre}: Jacobian on Sigma"),
        on.len() == draws.on_sigma && singular == on.len(),
        format!("singular at {singular}/{} draws", on.len()),
        if offending.is_empty() {
            Value::Null
        } else {
            json!({"offending": offending})
        },
    ));

    // determinant relation for the extended evaluation matrix
    let tau = id.expected_tau();
    let mut rng = cfg.rng(&format!("extended:{id}"));
    let mut pts: Vec<Rational> = Vec::new();
    while pts.len() < tau {
        let c = random_nonzero(&mut rng, b);
        if !pts.contains(&c) {
            pts.push(c);
        }
    }
    match extended_matrix_identity(pqr, &pts) {
        Ok(r) => {
            let data =
                json!({"points": rats(&pts), "det_tau": r.det_tau, "det_extended": r.det_extended});
            checks.push(Check::new(
                format!("{pre}: extended matrix, printed relation"),
                r.printed_relation_holds,
                "det_(tau+1) = c * B * gamma^(p+1) * det_tau",
                data.clone(),
            ));
            checks.push(Check::new(
                format!("{pre}: extended matrix, corrected relation"),
                r.corrected_relation_holds && r.extended_nonsingular,
                "det_(tau+1) = -B * gamma^(p+1) * det'_tau with y^(r+1) as last function",
                Value::Null,
            ));
            rec.insert(
                "extended".into(),
                json!({
                    "printed_relation_holds": r.printed_relation_holds,
                    "corrected_relation_holds": r.corrected_relation_holds,
                    "extended_nonsingular": r.extended_nonsingular,
                }),
            );
        }
        Err(e) => checks.push(Check::error(format!("{pre}: extended matrix"), e)),
    }

    match ll_fiber_origin_check(pqr, draws.fiber, cfg) {
        Ok(f) => {
            let ok = f.passed();
            checks.push(Check::new(
                format!("{pre}: zero fiber"),
                ok,
                format!(
                    "smooth numerator degree {} <= {}, {} origin hits in {} draws",
                    f.smooth_numerator_degree,
                    pqr.0 + pqr.1 + pqr.2,
                    f.zero_fiber_hits,
                    f.zero_fiber_draws
                ),
                if ok {
                    Value::Null
                } else {
                    serde_json::to_value(&f).unwrap_or(Value::Null)
                },
            ));
            rec.insert(
                "fiber".into(),
                serde_json::to_value(&f).unwrap_or(Value::Null),
            );
        }
        Err(e) => checks.push(Check::error(format!("{pre}: zero fiber"), e)),
    }
    (Value::Object(rec), checks)
}
