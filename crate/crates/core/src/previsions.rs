//! Partial expectations on families of gamble subspaces.
//!
//! A gamble is a vector of atom values. Subspaces are kept in reduced row
//! echelon form so that equal subspaces compare equal structurally.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::galois::ReferenceMeasure;
use crate::linalg::{coordinates, independent, nullspace, rref};
use crate::lp::{Direction, LinearProgram, LpOutcome};
use crate::measure::PartialProbability;
use crate::polytope::CredalPolytope;
use crate::rational::{dot, one, zero};
use crate::report::{ValidationReport, Violation};
use crate::{EventSet, GroundSet, Rational};

/// Values per atom, `f(ω_i) = f[i − 1]`.
pub type Gamble = Vec<Rational>;

pub fn indicator(ground: GroundSet, e: EventSet) -> Gamble {
    e.indicator(ground.n())
}

pub fn constant(ground: GroundSet, c: Rational) -> Gamble {
    vec![c; ground.n()]
}

fn infimum(f: &[Rational]) -> Rational {
    f.iter().min().cloned().unwrap_or_else(zero)
}

fn check_len(ground: GroundSet, f: &[Rational]) -> Result<()> {
    if f.len() != ground.n() {
        return Err(Error::DimensionMismatch {
            expected: ground.n(),
            found: f.len(),
        });
    }
    Ok(())
}

fn combine(coeffs: &[Rational], basis: &[Gamble], n: usize) -> Gamble {
    let mut out = vec![zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// A linear subspace of gambles with a canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    ground: GroundSet,
    basis: Vec<Gamble>,
}

impl LinearSubspace {
    /// `span(generators)`.
    pub fn span(ground: GroundSet, generators: &[Gamble]) -> Result<Self> {
        for g in generators {
            check_len(ground, g)?;
        }
        Ok(LinearSubspace {
            ground,
            basis: rref(generators, ground.n()).0,
        })
    }

    pub fn zero(ground: GroundSet) -> Self {
        LinearSubspace { ground, basis: Vec::new() }
    }

    pub fn full(ground: GroundSet) -> Self {
        let n = ground.n();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        LinearSubspace { ground, basis }
    }

    /// `span{χΩ}`.
    pub fn constants(ground: GroundSet) -> Self {
        Self::span(ground, &[constant(ground, one())]).expect("sized to ground")
    }

    /// `{f : d · f = 0 for every d}`.
    pub fn orthogonal_complement(ground: GroundSet, vectors: &[Vec<Rational>]) -> Result<Self> {
        for v in vectors {
            check_len(ground, v)?;
        }
        Ok(LinearSubspace {
            ground,
            basis: rref(&nullspace(vectors, ground.n()), ground.n()).0,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn basis(&self) -> &[Gamble] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &[Rational]) -> bool {
        f.len() == self.ground.n() && coordinates(&self.basis, f).is_some()
    }

    pub fn is_subset_of(&self, other: &LinearSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Basis of the orthogonal complement.
    pub fn annihilator(&self) -> LinearSubspace {
        Self::orthogonal_complement(self.ground, &self.basis).expect("same ground")
    }

    /// Span of the union.
    pub fn join(&self, other: &LinearSubspace) -> Result<LinearSubspace> {
        self.ground.ensure_same(&other.ground)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Self::span(self.ground, &gens)
    }

    /// Intersection, as the complement of the stacked annihilators.
    pub fn meet(&self, other: &LinearSubspace) -> Result<LinearSubspace> {
        self.ground.ensure_same(&other.ground)?;
        let mut stacked = self.annihilator().basis;
        stacked.extend(other.annihilator().basis);
        Self::orthogonal_complement(self.ground, &stacked)
    }
}

/// One subspace of a partial expectation: linearly independent gambles and
/// the expectation of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationSubspace {
    pub basis: Vec<Gamble>,
    pub values: Vec<Rational>,
}

impl ExpectationSubspace {
    /// The linear extension of the basis values to `f`, if `f` is spanned.
    pub fn evaluate(&self, f: &[Rational]) -> Option<Rational> {
        coordinates(&self.basis, f).map(|c| dot(&c, &self.values))
    }
}

/// Violation of the extendability condition: `Σ f_i + c ≥ 0` pointwise
/// while `Σ E(f_i) + c < 0`. The constant `c` is folded into a subspace
/// holding the constants whenever one exists, leaving `c = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrevisionViolation {
    /// `(subspace index, f_i)`; zero gambles are omitted.
    pub family: Vec<(usize, Gamble)>,
    pub constant: Rational,
}

impl PrevisionViolation {
    pub fn verify(&self, e: &PartialExpectation) -> bool {
        let n = e.ground.n();
        let mut total = constant(e.ground, self.constant.clone());
        let mut value = self.constant.clone();
        for (i, f) in &self.family {
            let Some(s) = e.subspaces.get(*i) else {
                return false;
            };
            let Some(v) = s.evaluate(f) else {
                return false;
            };
            value += v;
            for (t, x) in total.iter_mut().zip(f) {
                *t += x;
            }
        }
        debug_assert_eq!(total.len(), n);
        total.iter().all(|x| !x.is_negative()) && value.is_negative()
    }
}

/// Linear functionals on a family of gamble subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialExpectation {
    ground: GroundSet,
    subspaces: Vec<ExpectationSubspace>,
}

impl PartialExpectation {
    /// Each subspace needs one value per basis gamble and an independent
    /// basis. Consistency and coherence are checked by
    /// [`PartialExpectation::validate`].
    pub fn new(ground: GroundSet, subspaces: Vec<ExpectationSubspace>) -> Result<Self> {
        for s in &subspaces {
            if s.basis.len() != s.values.len() {
                return Err(Error::DimensionMismatch {
                    expected: s.basis.len(),
                    found: s.values.len(),
                });
            }
            for g in &s.basis {
                check_len(ground, g)?;
            }
            if !independent(&s.basis, ground.n()) {
                return Err(Error::LinearDependence);
            }
        }
        Ok(PartialExpectation { ground, subspaces })
    }

    /// One subspace per block of `μ`'s domain, spanned by the indicators of
    /// the block's atoms and valued by `μ`.
    pub fn from_measure(mu: &PartialProbability) -> Self {
        let g = mu.ground();
        let subspaces = mu
            .domain()
            .blocks()
            .iter()
            .map(|block| {
                let atoms = block.algebra_atoms();
                ExpectationSubspace {
                    basis: atoms.iter().map(|&a| indicator(g, a)).collect(),
                    values: atoms
                        .iter()
                        .map(|a| mu.value(*a).cloned().expect("block members lie in the domain"))
                        .collect(),
                }
            })
            .collect();
        PartialExpectation { ground: g, subspaces }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn subspaces(&self) -> &[ExpectationSubspace] {
        &self.subspaces
    }

    pub fn subspace(&self, i: usize) -> LinearSubspace {
        LinearSubspace::span(self.ground, &self.subspaces[i].basis).expect("checked in new")
    }

    /// `E(f)` from the first subspace containing `f`; `None` outside the
    /// domain.
    pub fn evaluate(&self, f: &[Rational]) -> Option<Rational> {
        if f.len() != self.ground.n() {
            return None;
        }
        self.subspaces.iter().find_map(|s| s.evaluate(f))
    }

    /// Cross-consistency on every pairwise intersection, then coherence
    /// `E(f) ≥ inf f` on each subspace.
    pub fn validate(&self) -> Result<ValidationReport> {
        let mut report = ValidationReport::default();
        for i in 0..self.subspaces.len() {
            for j in i + 1..self.subspaces.len() {
                let common = self.subspace(i).meet(&self.subspace(j))?;
                for g in common.basis() {
                    let first = self.subspaces[i].evaluate(g).expect("in the intersection");
                    let second = self.subspaces[j].evaluate(g).expect("in the intersection");
                    if first != second {
                        report.push(Violation::CrossConsistency {
                            first: i,
                            second: j,
                            gamble: g.clone(),
                            first_value: first,
                            second_value: second,
                        });
                    }
                }
            }
        }
        for i in 0..self.subspaces.len() {
            if let Some((gamble, value)) = self.coherence_witness(i)? {
                report.push(Violation::Coherence {
                    subspace: i,
                    infimum: infimum(&gamble),
                    gamble,
                    value,
                });
            }
        }
        Ok(report)
    }

    /// Minimizes `E(f) + c` over `h = f + c ≥ 0`, `Σ h = 1`, with `f` in
    /// subspace `i` and the constant valued at `c`; the objective is floored
    /// at `−1`. A negative optimum yields `f` with `E(f) < inf f`.
    fn coherence_witness(&self, i: usize) -> Result<Option<(Gamble, Rational)>> {
        let s = &self.subspaces[i];
        let n = self.ground.n();
        let k = s.basis.len();
        let mut lp = LinearProgram::new(k + 1);
        for v in 0..=k {
            lp.set_free(v);
        }
        let column = |w: usize| -> Vec<Rational> {
            let mut row: Vec<Rational> = s.basis.iter().map(|b| b[w].clone()).collect();
            row.push(one());
            row
        };
        let mut total = vec![zero(); k + 1];
        for w in 0..n {
            let row = column(w);
            for (t, x) in total.iter_mut().zip(&row) {
                *t += x;
            }
            lp.add_inequality(row.iter().map(|x| -x).collect(), zero())?;
        }
        lp.add_equality(total, one())?;
        let mut objective = s.values.clone();
        objective.push(one());
        lp.add_inequality(objective.iter().map(|x| -x).collect(), one())?;
        match lp.solve(&objective, Direction::Minimize)? {
            LpOutcome::Optimal { value, point } if value.is_negative() => {
                let f = combine(&point[..k], &s.basis, n);
                Ok(Some((f, dot(&point[..k], &s.values))))
            }
            _ => Ok(None),
        }
    }

    /// The full linear previsions extending `E`, as a polytope of
    /// measures.
    pub fn credal_set(&self) -> CredalPolytope {
        let mut p = CredalPolytope::simplex(self.ground);
        for s in &self.subspaces {
            for (b, v) in s.basis.iter().zip(&s.values) {
                p.add_gamble_equality(b.clone(), v.clone())
                    .expect("checked in new");
            }
        }
        p
    }

    /// Atom masses of a linear prevision extending `E`, if any.
    pub fn is_extendable_prevision(&self) -> Result<(bool, Option<Vec<Rational>>)> {
        let witness = self.credal_set().feasible_point()?;
        Ok((witness.is_some(), witness))
    }

    /// One LP over the coefficients of every subspace plus a constant:
    /// minimize `Σ E(f_i) + c` subject to `Σ f_i + c ≥ 0`, floored at `−1`.
    /// By Farkas' lemma a negative optimum exists iff `E` has no
    /// extension.
    pub fn violation_search(&self) -> Result<Option<PrevisionViolation>> {
        let n = self.ground.n();
        let offsets: Vec<usize> = self
            .subspaces
            .iter()
            .scan(0, |acc, s| {
                let start = *acc;
                *acc += s.basis.len();
                Some(start)
            })
            .collect();
        let k: usize = self.subspaces.iter().map(|s| s.basis.len()).sum();
        let mut lp = LinearProgram::new(k + 1);
        for v in 0..=k {
            lp.set_free(v);
        }
        for w in 0..n {
            let mut row: Vec<Rational> = self
                .subspaces
                .iter()
                .flat_map(|s| s.basis.iter().map(move |b| -b[w].clone()))
                .collect();
            row.push(-one());
            lp.add_inequality(row, zero())?;
        }
        let mut objective: Vec<Rational> = self
            .subspaces
            .iter()
            .flat_map(|s| s.values.iter().cloned())
            .collect();
        objective.push(one());
        lp.add_inequality(objective.iter().map(|x| -x).collect(), one())?;
        let point = match lp.solve(&objective, Direction::Minimize)? {
            LpOutcome::Optimal { value, point } if value.is_negative() => point,
            _ => {
                debug_assert!(self.is_extendable_prevision()?.0);
                return Ok(None);
            }
        };
        let mut family: Vec<(usize, Gamble)> = self
            .subspaces
            .iter()
            .zip(&offsets)
            .enumerate()
            .map(|(i, (s, &o))| (i, combine(&point[o..o + s.basis.len()], &s.basis, n)))
            .collect();
        let mut c = point[k].clone();
        let unit = constant(self.ground, one());
        if let Some(i) = self
            .subspaces
            .iter()
            .position(|s| s.evaluate(&unit) == Some(one()))
        {
            for x in family[i].1.iter_mut() {
                *x += &c;
            }
            c = zero();
        }
        family.retain(|(_, f)| f.iter().any(|x| !x.is_zero()));
        let violation = PrevisionViolation { family, constant: c };
        debug_assert!(violation.verify(self));
        debug_assert!(!self.is_extendable_prevision()?.0);
        Ok(Some(violation))
    }

    /// `(min, max)` of `ν · f` over all linear previsions extending `E`.
    pub fn natural_extension(&self, f: &[Rational]) -> Result<(Rational, Rational)> {
        check_len(self.ground, f)?;
        self.credal_set().range(f)?.ok_or(Error::NotExtendable)
    }
}

pub fn validate_partial_expectation(e: &PartialExpectation) -> Result<ValidationReport> {
    e.validate()
}

/// Gambles with the same expectation under every measure of `Q`: the
/// orthogonal complement of the affine directions of `Q`.
pub fn precise_gambles(q: &CredalPolytope) -> Result<LinearSubspace> {
    let (_, directions) = q.directions()?;
    let s = LinearSubspace::orthogonal_complement(q.ground(), &directions)?;
    debug_assert!(s.contains(&constant(q.ground(), one())));
    Ok(s)
}

/// `m(G) = {ν ∈ Δ : ν · g = ψ · g for g ∈ G}`. Always contains `ψ`.
pub fn generalized_credal(psi: &ReferenceMeasure, gambles: &[Gamble]) -> Result<CredalPolytope> {
    let mut p = CredalPolytope::simplex(psi.ground());
    for g in gambles {
        p.add_gamble_equality(g.clone(), psi.expectation(g))?;
    }
    debug_assert!(p.contains(psi.atom_mass()));
    Ok(p)
}

/// `m°(Q) = {f : ν · f = ψ · f for ν ∈ Q}`, the complement of the
/// directions of `Q` together with `anchor − ψ`.
pub fn generalized_dual_credal(psi: &ReferenceMeasure, q: &CredalPolytope) -> Result<LinearSubspace> {
    psi.ground().ensure_same(&q.ground())?;
    let (anchor, mut directions) = q.directions()?;
    directions.push(anchor.iter().zip(psi.atom_mass()).map(|(a, p)| a - p).collect());
    LinearSubspace::orthogonal_complement(psi.ground(), &directions)
}

/// `m°(Q)` for finitely many measures: the complement of `{ν − ψ}`.
pub fn generalized_dual_credal_finite(
    psi: &ReferenceMeasure,
    measures: &[Vec<Rational>],
) -> Result<LinearSubspace> {
    let diffs: Vec<Vec<Rational>> = measures
        .iter()
        .map(|m| {
            check_len(psi.ground(), m)?;
            Ok(m.iter().zip(psi.atom_mass()).map(|(a, p)| a - p).collect())
        })
        .collect::<Result<_>>()?;
    LinearSubspace::orthogonal_complement(psi.ground(), &diffs)
}
