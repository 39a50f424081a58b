//! Problem files: JSON with exact rationals written as strings.

use serde::{Deserialize, Serialize};

use predynkin::previsions::ExpectationSubspace;
use predynkin::rational::{format_rational, parse_rational};
use predynkin::{EventSet, GroundSet, Rational, SetSystem};

use crate::error::CliError;

/// The file as written. Events are ascending 1-indexed atom lists.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    pub ground: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<Vec<RawAssignment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gambles: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measures: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspaces: Option<Vec<RawSubspace>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAssignment {
    pub event: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSubspace {
    pub basis: Vec<Vec<String>>,
    pub values: Vec<String>,
}

/// A parsed, validated problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub ground: GroundSet,
    pub system: Option<SetSystem>,
    pub measure: Option<Vec<(EventSet, Rational)>>,
    pub psi: Option<Vec<Rational>>,
    pub gambles: Option<Vec<Vec<Rational>>>,
    pub gamma: Option<Vec<(Rational, Rational)>>,
    pub measures: Option<Vec<Vec<Rational>>>,
    pub subspaces: Option<Vec<ExpectationSubspace>>,
    pub event: Option<EventSet>,
    pub cond: Option<EventSet>,
    pub depth: Option<usize>,
}

fn rational(field: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::field(field, e.to_string()))
}

fn vector(field: &str, v: &[String], n: usize) -> Result<Vec<Rational>, CliError> {
    if v.len() != n {
        return Err(CliError::field(field, format!("expected {n} entries, found {}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| rational(&format!("{field}[{i}]"), s))
        .collect()
}

/// Parses an event list against the ground set.
pub fn event(field: &str, atoms: &[usize], ground: GroundSet) -> Result<EventSet, CliError> {
    if atoms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::field(field, "atoms must be strictly ascending"));
    }
    ground
        .event(atoms)
        .map_err(|e| CliError::field(field, e.to_string()))
}

/// Parses an event given on the command line: `"13"` (single-digit atoms),
/// `"1,3"`, or `"∅"` / `""` for the empty event.
pub fn event_spec(field: &str, spec: &str, ground: GroundSet) -> Result<EventSet, CliError> {
    let spec = spec.trim().trim_start_matches('{').trim_end_matches('}');
    if spec.is_empty() || spec == "∅" {
        return Ok(EventSet::EMPTY);
    }
    let parts: Option<Vec<usize>> = if spec.contains(',') {
        spec.split(',').map(|p| p.trim().parse::<usize>().ok()).collect()
    } else {
        spec.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    let mut atoms = parts.ok_or_else(|| CliError::field(field, format!("cannot parse event {spec:?}")))?;
    atoms.sort_unstable();
    atoms.dedup();
    event(field, &atoms, ground)
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawProblem = serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
        Self::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawProblem) -> Result<Self, CliError> {
        let ground = GroundSet::new(raw.ground)?;
        let n = ground.n();
        let system = raw
            .system
            .as_ref()
            .map(|lists| {
                let events = lists
                    .iter()
                    .enumerate()
                    .map(|(i, l)| event(&format!("system[{i}]"), l, ground))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok::<_, CliError>(SetSystem::new(ground, events)?)
            })
            .transpose()?;
        let measure = raw
            .measure
            .as_ref()
            .map(|list| {
                let mut out: Vec<(EventSet, Rational)> = Vec::new();
                for (i, a) in list.iter().enumerate() {
                    let e = event(&format!("measure[{i}].event"), &a.event, ground)?;
                    let v = rational(&format!("measure[{i}].value"), &a.value)?;
                    if out.iter().any(|(f, _)| *f == e) {
                        return Err(CliError::field(
                            &format!("measure[{i}].event"),
                            "event assigned twice",
                        ));
                    }
                    out.push((e, v));
                }
                Ok(out)
            })
            .transpose()?;
        let psi = raw.psi.as_ref().map(|v| vector("psi", v, n)).transpose()?;
        let rows = |field: &str, rows: &Option<Vec<Vec<String>>>| {
            rows.as_ref()
                .map(|rows| {
                    rows.iter()
                        .enumerate()
                        .map(|(i, r)| vector(&format!("{field}[{i}]"), r, n))
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()
        };
        let gambles = rows("gambles", &raw.gambles)?;
        let measures = rows("measures", &raw.measures)?;
        let gamma = raw
            .gamma
            .as_ref()
            .map(|pts| {
                pts.iter()
                    .enumerate()
                    .map(|(i, [x, y])| {
                        Ok((
                            rational(&format!("gamma[{i}][0]"), x)?,
                            rational(&format!("gamma[{i}][1]"), y)?,
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()
            })
            .transpose()?;
        let subspaces = raw
            .subspaces
            .as_ref()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let basis = s
                            .basis
                            .iter()
                            .enumerate()
                            .map(|(j, b)| vector(&format!("subspaces[{i}].basis[{j}]"), b, n))
                            .collect::<Result<Vec<_>, _>>()?;
                        let values = vector(&format!("subspaces[{i}].values"), &s.values, basis.len())?;
                        Ok(ExpectationSubspace { basis, values })
                    })
                    .collect::<Result<Vec<_>, CliError>>()
            })
            .transpose()?;
        let event_field = |field: &str, atoms: &Option<Vec<usize>>| {
            atoms.as_ref().map(|a| event(field, a, ground)).transpose()
        };
        Ok(Problem {
            ground,
            system,
            measure,
            psi,
            gambles,
            gamma,
            measures,
            subspaces,
            event: event_field("event", &raw.event)?,
            cond: event_field("cond", &raw.cond)?,
            depth: raw.depth,
        })
    }

    /// Canonical file form; parsing it gives back an equal problem.
    pub fn to_raw(&self) -> RawProblem {
        let r = format_rational;
        let v = |x: &[Rational]| x.iter().map(r).collect::<Vec<_>>();
        RawProblem {
            ground: self.ground.n(),
            system: self.system.as_ref().map(|s| s.iter().map(|e| e.atoms()).collect()),
            measure: self.measure.as_ref().map(|m| {
                m.iter()
                    .map(|(e, x)| RawAssignment { event: e.atoms(), value: r(x) })
                    .collect()
            }),
            psi: self.psi.as_deref().map(v),
            gambles: self.gambles.as_ref().map(|g| g.iter().map(|x| v(x)).collect()),
            gamma: self
                .gamma
                .as_ref()
                .map(|g| g.iter().map(|(x, y)| [r(x), r(y)]).collect()),
            measures: self.measures.as_ref().map(|g| g.iter().map(|x| v(x)).collect()),
            subspaces: self.subspaces.as_ref().map(|list| {
                list.iter()
                    .map(|s| RawSubspace {
                        basis: s.basis.iter().map(|b| v(b)).collect(),
                        values: v(&s.values),
                    })
                    .collect()
            }),
            event: self.event.map(|e| e.atoms()),
            cond: self.cond.map(|e| e.atoms()),
            depth: self.depth,
        }
    }
}
