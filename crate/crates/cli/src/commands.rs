//! One function per subcommand. Each returns the result payload; the
//! caller wraps it with the operation name and the input echo.

use serde_json::{json, Value};

use predynkin::galois::{
    bipolar_closure, certainty_system, credal, distorted_credal, dual_credal, dual_credal_finite,
    is_bipolar_closed, polytope_subset, PiecewiseLinearConcave, ReferenceMeasure,
};
use predynkin::measure::{HornTarskiViolation, ImpreciseProbability, PartialProbability};
use predynkin::polytope::CredalPolytope;
use predynkin::previsions::{
    generalized_credal, precise_gambles, LinearSubspace, PartialExpectation, PrevisionViolation,
};
use predynkin::rational::format_rational;
use predynkin::report::{ValidationReport, Violation};
use predynkin::{Error, EventSet, Rational, SetSystem};

use crate::error::CliError;
use crate::problem::Problem;

pub const DEFAULT_DEPTH: usize = 4;

/// Every subcommand name, in help order.
pub const OPERATIONS: [&str; 17] = [
    "hull",
    "blocks",
    "validate",
    "extendable",
    "extend",
    "inner-outer",
    "bayes",
    "precise-events",
    "bipolar",
    "dual",
    "galois-audit",
    "distort",
    "certainty",
    "prevision-from-measure",
    "prevision-extend",
    "precise-gambles",
    "falsify",
];

pub fn dispatch(op: &str, p: &Problem) -> Result<Value, CliError> {
    match op {
        "hull" => hull(p),
        "blocks" => blocks(p),
        "validate" => validate(p),
        "extendable" => extendable(p),
        "extend" => extend(p),
        "inner-outer" => inner_outer(p),
        "bayes" => bayes(p),
        "precise-events" => precise_events(p),
        "bipolar" => bipolar(p),
        "dual" => dual(p),
        "galois-audit" => galois_audit(p),
        "distort" => distort(p),
        "certainty" => certainty(p),
        "prevision-from-measure" => prevision_from_measure(p),
        "prevision-extend" => prevision_extend(p),
        "precise-gambles" => precise_gambles_op(p),
        "falsify" => falsify(p),
        other => Err(CliError::field("operation", format!("unknown operation {other:?}"))),
    }
}

// ---- rendering -------------------------------------------------------------

fn r(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(r).collect())
}

struct Render {
    n: usize,
}

impl Render {
    fn event(&self, e: EventSet) -> Value {
        Value::String(e.label(self.n))
    }

    fn events(&self, es: impl IntoIterator<Item = EventSet>) -> Value {
        Value::Array(es.into_iter().map(|e| self.event(e)).collect())
    }

    fn system(&self, s: &SetSystem) -> Value {
        self.events(s.iter())
    }

    fn violation(&self, v: &Violation) -> Value {
        let detail = match v {
            Violation::Normalization { event, value, expected } => json!({
                "event": self.event(*event), "value": r(value), "expected": r(expected),
            }),
            Violation::Range { event, value } => json!({
                "event": self.event(*event), "value": r(value),
            }),
            Violation::Additivity { a, b, union, sum }
            | Violation::Subadditivity { a, b, union, sum }
            | Violation::Superadditivity { a, b, union, sum } => json!({
                "a": self.event(*a), "b": self.event(*b), "union": r(union), "sum": r(sum),
            }),
            Violation::Conjugacy { event, upper, conjugate } => json!({
                "event": self.event(*event), "upper": r(upper), "conjugate": r(conjugate),
            }),
            Violation::CrossConsistency { first, second, gamble, first_value, second_value } => json!({
                "first": first, "second": second, "gamble": vector(gamble),
                "first_value": r(first_value), "second_value": r(second_value),
            }),
            Violation::Coherence { subspace, gamble, value, infimum } => json!({
                "subspace": subspace, "gamble": vector(gamble),
                "value": r(value), "infimum": r(infimum),
            }),
        };
        json!({ "kind": v.kind(), "detail": detail })
    }

    fn report(&self, rep: &ValidationReport) -> Value {
        Value::Array(rep.violations.iter().map(|v| self.violation(v)).collect())
    }

    fn falsifier(&self, v: &HornTarskiViolation) -> Value {
        json!({ "plus": self.events(v.plus.iter().copied()), "minus": self.events(v.minus.iter().copied()) })
    }

    fn table(&self, t: &ImpreciseProbability, lo: &str, hi: &str) -> Value {
        let g = t.ground();
        Value::Array(
            g.events()
                .map(|e| {
                    let mut row = serde_json::Map::new();
                    row.insert("event".into(), self.event(e));
                    row.insert(lo.into(), r(t.lower(e)));
                    row.insert(hi.into(), r(t.upper(e)));
                    Value::Object(row)
                })
                .collect(),
        )
    }

    fn subspace(&self, s: &LinearSubspace) -> Value {
        Value::Array(s.basis().iter().map(|b| vector(b)).collect())
    }

    fn prevision_violation(&self, v: &PrevisionViolation) -> Value {
        json!({
            "family": v.family.iter().map(|(i, f)| json!({ "subspace": i, "gamble": vector(f) })).collect::<Vec<_>>(),
            "constant": r(&v.constant),
        })
    }
}

// ---- inputs ----------------------------------------------------------------

fn render(p: &Problem) -> Render {
    Render { n: p.ground.n() }
}

fn system(op: &'static str, p: &Problem) -> Result<SetSystem, CliError> {
    p.system.clone().ok_or(CliError::Missing(op, "system"))
}

/// Domain is the pre-Dynkin hull of the system (if any) and the assigned
/// events; unassigned members are filled where the axioms force a value.
fn measure(op: &'static str, p: &Problem) -> Result<PartialProbability, CliError> {
    let assignments = p.measure.as_ref().ok_or(CliError::Missing(op, "measure"))?;
    let assigned = SetSystem::new(p.ground, assignments.iter().map(|(e, _)| *e))?;
    let generators = match &p.system {
        Some(s) => s.union(&assigned)?,
        None => assigned,
    };
    Ok(PartialProbability::complete(generators.pre_dynkin_hull(), assignments)?)
}

fn psi(op: &'static str, p: &Problem) -> Result<ReferenceMeasure, CliError> {
    let masses = p.psi.clone().ok_or(CliError::Missing(op, "psi"))?;
    Ok(ReferenceMeasure::new(p.ground, masses)?)
}

fn gamma(op: &'static str, p: &Problem) -> Result<PiecewiseLinearConcave, CliError> {
    let pts = p.gamma.clone().ok_or(CliError::Missing(op, "gamma"))?;
    Ok(PiecewiseLinearConcave::new(pts)?)
}

fn expectation(op: &'static str, p: &Problem) -> Result<(PartialExpectation, &'static str), CliError> {
    match &p.subspaces {
        Some(s) => Ok((PartialExpectation::new(p.ground, s.clone())?, "subspaces")),
        None => Ok((PartialExpectation::from_measure(&measure(op, p)?), "measure")),
    }
}

/// Treats `NotExtendable` as a finding rather than a failure.
fn finding<T>(r: predynkin::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::NotExtendable) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

// ---- set systems -----------------------------------------------------------

fn hull(p: &Problem) -> Result<Value, CliError> {
    let s = system("hull", p)?;
    let h = s.pre_dynkin_hull();
    let out = render(p);
    Ok(json!({
        "generators": out.system(&s),
        "pre_dynkin": s.is_pre_dynkin(),
        "hull": out.system(&h),
        "size": h.len(),
    }))
}

fn blocks(p: &Problem) -> Result<Value, CliError> {
    let s = system("blocks", p)?;
    let h = s.pre_dynkin_hull();
    let out = render(p);
    let listing: Vec<Value> = h
        .blocks()
        .iter()
        .map(|b| json!({ "events": out.system(b), "atoms": out.events(b.algebra_atoms()) }))
        .collect();
    Ok(json!({
        "pre_dynkin": s.is_pre_dynkin(),
        "system": out.system(&h),
        "blocks": listing,
    }))
}

// ---- measures --------------------------------------------------------------

fn validate(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("validate", p)?;
    let out = render(p);
    let rep = mu.validate();
    let values: serde_json::Map<String, Value> = mu
        .values()
        .iter()
        .map(|(e, v)| (e.label(out.n), r(v)))
        .collect();
    Ok(json!({
        "domain": out.system(mu.domain()),
        "values": values,
        "valid": rep.is_valid(),
        "violations": out.report(&rep),
    }))
}

fn extendable(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("extendable", p)?;
    let out = render(p);
    let witness = mu.extension_witness()?;
    let depth = p.depth.unwrap_or(DEFAULT_DEPTH);
    let falsifier = match witness {
        Some(_) => Value::Null,
        None => mu
            .horn_tarski_falsify(depth)?
            .map_or(Value::Null, |v| out.falsifier(&v)),
    };
    Ok(json!({
        "extendable": witness.is_some(),
        "witness": witness.as_deref().map_or(Value::Null, vector),
        "depth": depth,
        "falsifier": falsifier,
    }))
}

fn extend(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("extend", p)?;
    let out = render(p);
    let table = finding(mu.coherent_extension_table())?;
    Ok(json!({
        "extendable": table.is_some(),
        "table": table.map_or(Value::Null, |t| out.table(&t, "lower", "upper")),
    }))
}

fn inner_outer(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("inner-outer", p)?;
    let out = render(p);
    let io = mu.inner_outer();
    Ok(json!({
        "table": out.table(&io, "inner", "outer"),
        "violations": out.report(&io.check_axioms()),
    }))
}

fn bayes(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("bayes", p)?;
    let out = render(p);
    let b = p.cond.ok_or(CliError::Missing("bayes", "cond"))?;
    let targets: Vec<EventSet> = match p.event {
        Some(a) => vec![a],
        None => p.ground.events().collect(),
    };
    let mut rows = Vec::with_capacity(targets.len());
    for a in targets {
        match finding(mu.gbr_conditional(a, b))? {
            Some((lo, hi)) => rows.push(json!({ "event": out.event(a), "lower": r(&lo), "upper": r(&hi) })),
            None => return Ok(json!({ "cond": out.event(b), "extendable": false, "rows": Value::Null })),
        }
    }
    Ok(json!({
        "cond": out.event(b),
        "cond_mass": mu.value(b).map_or(Value::Null, r),
        "extendable": true,
        "rows": rows,
    }))
}

fn precise_events(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("precise-events", p)?;
    let out = render(p);
    let Some(table) = finding(mu.coherent_extension_table())? else {
        return Ok(json!({ "extendable": false, "precise_events": Value::Null }));
    };
    let (precise, flag) = table.precise_events();
    Ok(json!({
        "extendable": true,
        "precise_events": out.system(&precise),
        "pre_dynkin": flag,
        "equals_domain": &precise == mu.domain(),
    }))
}

fn falsify(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("falsify", p)?;
    let out = render(p);
    let depth = p.depth.unwrap_or(DEFAULT_DEPTH);
    let found = mu.horn_tarski_falsify(depth)?;
    Ok(json!({
        "depth": depth,
        "falsifier": found.as_ref().map_or(Value::Null, |v| out.falsifier(v)),
        "verified": found.as_ref().map(|v| v.verify(&mu)),
        "lp_extendable": mu.is_extendable()?,
    }))
}

// ---- Galois connection -----------------------------------------------------

fn bipolar(p: &Problem) -> Result<Value, CliError> {
    let psi = psi("bipolar", p)?;
    let a = system("bipolar", p)?;
    let out = render(p);
    Ok(json!({
        "closure": out.system(&bipolar_closure(&psi, &a)?),
        "bipolar_closed": is_bipolar_closed(&psi, &a)?,
        "hull": out.system(&a.pre_dynkin_hull()),
    }))
}

/// The dual of finitely many measures, of a distorted credal set, or of
/// `m(A)` for a system, whichever the problem supplies first.
fn dual(p: &Problem) -> Result<Value, CliError> {
    let psi = psi("dual", p)?;
    let out = render(p);
    let (source, d) = if let Some(ms) = &p.measures {
        ("measures", dual_credal_finite(&psi, ms)?)
    } else if p.gamma.is_some() {
        ("gamma", dual_credal(&psi, &distorted_credal(&psi, &gamma("dual", p)?))?)
    } else if let Some(a) = &p.system {
        ("system", dual_credal(&psi, &credal(&psi, a)?)?)
    } else {
        return Err(CliError::Missing("dual", "measures, gamma or system"));
    };
    Ok(json!({ "source": source, "dual": out.system(&d), "pre_dynkin": d.is_pre_dynkin() }))
}

fn galois_audit(p: &Problem) -> Result<Value, CliError> {
    let psi = psi("galois-audit", p)?;
    let a = system("galois-audit", p)?;
    let out = render(p);
    let hull = a.pre_dynkin_hull();
    let m = credal(&psi, &a)?;
    let closure = dual_credal(&psi, &m)?;
    let m_closure = credal(&psi, &closure)?;
    let simplex = CredalPolytope::simplex(p.ground);
    Ok(json!({
        "closure": out.system(&closure),
        "checks": {
            "hull_invariance": m.set_eq(&credal(&psi, &hull)?)?,
            "extensive": a.is_subset_of(&closure),
            "closure_pre_dynkin": closure.is_pre_dynkin(),
            "closure_idempotent": dual_credal(&psi, &m_closure)? == closure,
            "pseudo_inverse": m_closure.set_eq(&m)?,
            "contains_psi": m.contains(psi.atom_mass()),
            "within_simplex": polytope_subset(&m, &simplex)?,
            "bipolar_matches": bipolar_closure(&psi, &a)? == closure,
        },
    }))
}

fn distort(p: &Problem) -> Result<Value, CliError> {
    let psi = psi("distort", p)?;
    let g = gamma("distort", p)?;
    let out = render(p);
    let q = distorted_credal(&psi, &g);
    let d = dual_credal(&psi, &q)?;
    let certain = certainty_system(&psi);
    let bounds: Vec<Value> = p
        .ground
        .events()
        .map(|e| json!({ "event": out.event(e), "bound": r(&g.eval(&psi.mass(e))) }))
        .collect();
    Ok(json!({
        "identity": g.is_identity(),
        "bounds": bounds,
        "dual": out.system(&d),
        "certainty": out.system(&certain),
        "matches_certainty": d == certain,
        "is_point": q.set_eq(&psi.point_polytope())?,
    }))
}

fn certainty(p: &Problem) -> Result<Value, CliError> {
    let psi = psi("certainty", p)?;
    let out = render(p);
    let null = p.ground.events().filter(|&e| psi.mass(e) == Rational::default());
    Ok(json!({
        "null_events": out.events(null),
        "certainty": out.system(&certainty_system(&psi)),
    }))
}

// ---- previsions ------------------------------------------------------------

fn subspaces_json(e: &PartialExpectation) -> Value {
    Value::Array(
        e.subspaces()
            .iter()
            .map(|s| {
                json!({
                    "basis": s.basis.iter().map(|b| vector(b)).collect::<Vec<_>>(),
                    "values": vector(&s.values),
                })
            })
            .collect(),
    )
}

fn prevision_from_measure(p: &Problem) -> Result<Value, CliError> {
    let mu = measure("prevision-from-measure", p)?;
    let out = render(p);
    let e = PartialExpectation::from_measure(&mu);
    let rep = e.validate()?;
    Ok(json!({
        "subspaces": subspaces_json(&e),
        "valid": rep.is_valid(),
        "violations": out.report(&rep),
    }))
}

fn prevision_extend(p: &Problem) -> Result<Value, CliError> {
    let (e, source) = expectation("prevision-extend", p)?;
    let out = render(p);
    let rep = e.validate()?;
    let (ok, witness) = e.is_extendable_prevision()?;
    let search = e.violation_search()?;
    let extensions = match (&p.gambles, ok) {
        (Some(gs), true) => Value::Array(
            gs.iter()
                .map(|f| {
                    let (lo, hi) = e.natural_extension(f)?;
                    Ok(json!({ "gamble": vector(f), "lower": r(&lo), "upper": r(&hi) }))
                })
                .collect::<Result<Vec<_>, CliError>>()?,
        ),
        _ => Value::Null,
    };
    Ok(json!({
        "source": source,
        "subspaces": subspaces_json(&e),
        "valid": rep.is_valid(),
        "violations": out.report(&rep),
        "extendable": ok,
        "witness": witness.as_deref().map_or(Value::Null, vector),
        "violation": search.as_ref().map_or(Value::Null, |v| out.prevision_violation(v)),
        "natural_extension": extensions,
    }))
}

/// Precise gambles of the credal set of a measure, of `m(A)` for a system,
/// or of the generalized credal set of gambles.
fn precise_gambles_op(p: &Problem) -> Result<Value, CliError> {
    let out = render(p);
    let (source, q) = if p.measure.is_some() {
        ("measure", measure("precise-gambles", p)?.credal_set())
    } else if let Some(a) = &p.system {
        ("system", credal(&psi("precise-gambles", p)?, a)?)
    } else if let Some(gs) = &p.gambles {
        ("gambles", generalized_credal(&psi("precise-gambles", p)?, gs)?)
    } else {
        return Err(CliError::Missing("precise-gambles", "measure, system or gambles"));
    };
    if q.is_empty()? {
        return Ok(json!({ "source": source, "empty": true, "basis": Value::Null }));
    }
    let s = precise_gambles(&q)?;
    Ok(json!({
        "source": source,
        "empty": false,
        "dimension": s.dim(),
        "basis": out.subspace(&s),
        "annihilator": out.subspace(&s.annihilator()),
    }))
}
