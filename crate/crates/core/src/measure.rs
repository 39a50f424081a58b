//! Finitely additive probabilities on pre-Dynkin systems and their
//! extensions to the power set.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polytope::{event_mass, CredalPolytope};
use crate::rational::{one, zero};
use crate::report::{ValidationReport, Violation};
use crate::{EventSet, GroundSet, Rational, SetSystem};

/// Upper bound on the number of coefficient vectors the Horn–Tarski search
/// may visit.
pub const MAX_FALSIFIER_CANDIDATES: u128 = 50_000_000;

/// A probability given on a pre-Dynkin system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialProbability {
    domain: SetSystem,
    values: BTreeMap<EventSet, Rational>,
}

impl PartialProbability {
    /// Takes the values as given. The domain must be pre-Dynkin and the
    /// values must cover it exactly; the numeric axioms are checked by
    /// [`PartialProbability::validate`].
    pub fn new(domain: SetSystem, values: BTreeMap<EventSet, Rational>) -> Result<Self> {
        if !domain.is_pre_dynkin() {
            return Err(Error::NotPreDynkin);
        }
        for &e in values.keys() {
            if !domain.contains(e) {
                return Err(Error::Membership(e));
            }
        }
        if let Some(e) = domain.iter().find(|e| !values.contains_key(e)) {
            return Err(Error::InvalidMeasure(format!("no value for {e:?}")));
        }
        Ok(PartialProbability { domain, values })
    }

    /// Fills the domain from partial assignments. Missing values follow
    /// from `μ(∅) = 0`, `μ(Ω) = 1`, complements, disjoint unions and set
    /// differences of nested members; explicit values are never replaced.
    pub fn complete(domain: SetSystem, assignments: &[(EventSet, Rational)]) -> Result<Self> {
        if !domain.is_pre_dynkin() {
            return Err(Error::NotPreDynkin);
        }
        let g = domain.ground();
        let mut values: BTreeMap<EventSet, Rational> = BTreeMap::new();
        for (e, v) in assignments {
            if !domain.contains(*e) {
                return Err(Error::Membership(*e));
            }
            values.insert(*e, v.clone());
        }
        values.entry(EventSet::EMPTY).or_insert_with(zero);
        values.entry(g.full()).or_insert_with(one);

        loop {
            let known: Vec<(EventSet, Rational)> =
                values.iter().map(|(e, v)| (*e, v.clone())).collect();
            let mut derived: Vec<(EventSet, Rational)> = Vec::new();
            for (i, (a, va)) in known.iter().enumerate() {
                derived.push((a.complement(&g), one() - va));
                for (b, vb) in &known[i + 1..] {
                    if a.is_disjoint(*b) {
                        derived.push((a.union(*b), va + vb));
                    }
                    if a.is_subset_of(*b) {
                        derived.push((b.difference(*a), vb - va));
                    } else if b.is_subset_of(*a) {
                        derived.push((a.difference(*b), va - vb));
                    }
                }
            }
            let mut changed = false;
            for (e, v) in derived {
                if domain.contains(e) && !values.contains_key(&e) {
                    values.insert(e, v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::new(domain, values)
    }

    /// Domain is the pre-Dynkin hull of the assigned events.
    pub fn from_assignments(ground: GroundSet, assignments: &[(EventSet, Rational)]) -> Result<Self> {
        let generators = SetSystem::new(ground, assignments.iter().map(|(e, _)| *e))?;
        Self::complete(generators.pre_dynkin_hull(), assignments)
    }

    /// A full measure given by atom masses, on the power set.
    pub fn from_atom_masses(ground: GroundSet, masses: &[Rational]) -> Result<Self> {
        if masses.len() != ground.n() {
            return Err(Error::DimensionMismatch {
                expected: ground.n(),
                found: masses.len(),
            });
        }
        let values = ground.events().map(|e| (e, event_mass(masses, e))).collect();
        Self::new(SetSystem::power_set(ground), values)
    }

    pub fn ground(&self) -> GroundSet {
        self.domain.ground()
    }

    pub fn domain(&self) -> &SetSystem {
        &self.domain
    }

    pub fn value(&self, e: EventSet) -> Option<&Rational> {
        self.values.get(&e)
    }

    pub fn values(&self) -> &BTreeMap<EventSet, Rational> {
        &self.values
    }

    /// Every violated clause with its witness. Additivity is checked on
    /// pairs, which covers finite disjoint unions inside the domain.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let g = self.ground();
        for (e, expected) in [(EventSet::EMPTY, zero()), (g.full(), one())] {
            let value = &self.values[&e];
            if *value != expected {
                report.push(Violation::Normalization {
                    event: e,
                    value: value.clone(),
                    expected,
                });
            }
        }
        for (&e, v) in &self.values {
            if v.is_negative() || *v > one() {
                report.push(Violation::Range {
                    event: e,
                    value: v.clone(),
                });
            }
        }
        let events = self.domain.events();
        for (i, &a) in events.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for &b in &events[i + 1..] {
                if !a.is_disjoint(b) {
                    continue;
                }
                let u = a.union(b);
                if let Some(vu) = self.values.get(&u) {
                    let sum = &self.values[&a] + &self.values[&b];
                    if *vu != sum {
                        report.push(Violation::Additivity {
                            a,
                            b,
                            union: vu.clone(),
                            sum,
                        });
                    }
                }
            }
        }
        report
    }

    /// Inner and outer extension: sup over contained members and inf over
    /// containing members, for every event.
    pub fn inner_outer(&self) -> ImpreciseProbability {
        let g = self.ground();
        let (lower, upper): (Vec<Rational>, Vec<Rational>) = g
            .events()
            .map(|a| {
                let inner = self
                    .values
                    .iter()
                    .filter(|(b, _)| b.is_subset_of(a))
                    .map(|(_, v)| v)
                    .max()
                    .cloned()
                    .unwrap_or_else(zero);
                let outer = self
                    .values
                    .iter()
                    .filter(|(b, _)| a.is_subset_of(**b))
                    .map(|(_, v)| v)
                    .min()
                    .cloned()
                    .unwrap_or_else(one);
                (inner, outer)
            })
            .unzip();
        let ip = ImpreciseProbability { ground: g, lower, upper };
        debug_assert!(
            !self.validate().is_valid() || g.events().all(|a| *ip.upper(a) == one() - ip.lower(a.complement(&g))),
            "inner and outer extension must be conjugate"
        );
        ip
    }

    /// `M(μ, D)`: all measures on the power set agreeing with `μ` on `D`.
    pub fn credal_set(&self) -> CredalPolytope {
        let mut p = CredalPolytope::simplex(self.ground());
        for (&e, v) in &self.values {
            p.add_event_equality(e, v.clone())
                .expect("domain events are valid");
        }
        p
    }

    /// Atom masses of some full measure extending `μ`, if one exists.
    pub fn extension_witness(&self) -> Result<Option<Vec<Rational>>> {
        let witness = self.credal_set().feasible_point()?;
        if let Some(w) = &witness {
            debug_assert!(self.values.iter().all(|(e, v)| event_mass(w, *e) == *v));
        }
        Ok(witness)
    }

    pub fn is_extendable(&self) -> Result<bool> {
        Ok(self.extension_witness()?.is_some())
    }

    /// Searches families `B_1..B_m`, `A_1..A_k` of members with
    /// `Σ χ_B − Σ χ_A ≥ 0` pointwise but `Σ μ(B) − Σ μ(A) < 0`, with
    /// `m + k ≤ depth`. Any family found certifies non-extendability.
    pub fn horn_tarski_falsify(&self, depth: usize) -> Result<Option<HornTarskiViolation>> {
        let events: Vec<EventSet> = self.domain.iter().filter(|e| !e.is_empty()).collect();
        let mut estimate: u128 = 0;
        for d in 1..=depth {
            estimate = estimate.saturating_add(lattice_points(events.len(), d));
        }
        if estimate > MAX_FALSIFIER_CANDIDATES {
            return Err(Error::SizeLimitExceeded(format!(
                "Horn–Tarski search over {} events at depth {} (~{} families)",
                events.len(),
                depth,
                estimate
            )));
        }
        let denom_lcm = self
            .values
            .values()
            .fold(BigInt::one(), |acc, v| num_integer_lcm(&acc, v.denom()));
        let scaled: Vec<BigInt> = events
            .iter()
            .map(|e| {
                let v = &self.values[e];
                v.numer() * (&denom_lcm / v.denom())
            })
            .collect();
        let search = HornTarski {
            n: self.ground().n(),
            events: &events,
            scaled: &scaled,
        };
        for d in 1..=depth {
            let mut coeffs = vec![0i64; events.len()];
            if search.dfs(0, d as i64, &mut coeffs) {
                let mut plus = Vec::new();
                let mut minus = Vec::new();
                for (&e, &c) in events.iter().zip(&coeffs) {
                    let target = if c > 0 { &mut plus } else { &mut minus };
                    for _ in 0..c.unsigned_abs() {
                        target.push(e);
                    }
                }
                return Ok(Some(HornTarskiViolation { plus, minus }));
            }
        }
        Ok(None)
    }

    /// `(min, max)` of `ν(a)` over the credal set.
    pub fn coherent_extension(&self, a: EventSet) -> Result<(Rational, Rational)> {
        self.ground().check(a)?;
        self.credal_set()
            .event_range(a)?
            .ok_or(Error::NotExtendable)
    }

    /// Lower and upper coherent extension over every event.
    pub fn coherent_extension_table(&self) -> Result<ImpreciseProbability> {
        let credal = self.credal_set();
        if credal.is_empty()? {
            return Err(Error::NotExtendable);
        }
        let g = self.ground();
        let ranges: Vec<(Rational, Rational)> = (0..g.event_count() as u32)
            .into_par_iter()
            .map(|m| {
                credal
                    .event_range(EventSet::from_mask(m))
                    .map(|r| r.expect("credal set is nonempty"))
            })
            .collect::<Result<_>>()?;
        let (lower, upper) = ranges.into_iter().unzip();
        Ok(ImpreciseProbability { ground: g, lower, upper })
    }

    /// Generalized Bayes rule for a conditioning event `b` in the domain
    /// with `μ(b) > 0`: `(lower(a ∩ b) / μ(b), upper(a ∩ b) / μ(b))`.
    pub fn gbr_conditional(&self, a: EventSet, b: EventSet) -> Result<(Rational, Rational)> {
        self.ground().check(a)?;
        let mb = self
            .values
            .get(&b)
            .ok_or_else(|| Error::Conditioning(format!("{b:?} is not in the domain")))?;
        if !mb.is_positive() {
            return Err(Error::Conditioning(format!("{b:?} has probability zero")));
        }
        let (lo, hi) = self.coherent_extension(a.intersection(b))?;
        let cond = (&lo / mb, &hi / mb);
        debug_assert_eq!(&cond.1 * mb, hi);
        Ok(cond)
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

/// Integer vectors of dimension `dim` with L1 norm exactly `d`.
fn lattice_points(dim: usize, d: usize) -> u128 {
    fn binom(n: u128, k: u128) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
    }
    (1..=dim.min(d))
        .map(|j| {
            (1u128 << j)
                .saturating_mul(binom(dim as u128, j as u128))
                .saturating_mul(binom(d as u128 - 1, j as u128 - 1))
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// A certificate against extendability: the `plus` indicators dominate the
/// `minus` indicators pointwise, yet carry less total probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornTarskiViolation {
    pub plus: Vec<EventSet>,
    pub minus: Vec<EventSet>,
}

impl HornTarskiViolation {
    /// Re-checks the certificate against `μ`.
    pub fn verify(&self, mu: &PartialProbability) -> bool {
        let n = mu.ground().n();
        let pointwise_ok = (1..=n).all(|a| {
            let p = self.plus.iter().filter(|e| e.contains_atom(a)).count();
            let m = self.minus.iter().filter(|e| e.contains_atom(a)).count();
            p >= m
        });
        let total = self
            .plus
            .iter()
            .map(|e| mu.value(*e).cloned())
            .chain(self.minus.iter().map(|e| mu.value(*e).map(|v| -v)))
            .collect::<Option<Vec<_>>>();
        match total {
            Some(parts) => pointwise_ok && parts.into_iter().sum::<Rational>().is_negative(),
            None => false,
        }
    }
}

struct HornTarski<'a> {
    n: usize,
    events: &'a [EventSet],
    scaled: &'a [BigInt],
}

impl HornTarski<'_> {
    /// Assigns coefficients from index `i` on, spending exactly `budget`.
    fn dfs(&self, i: usize, budget: i64, coeffs: &mut [i64]) -> bool {
        if budget == 0 {
            return self.violates(coeffs);
        }
        if i == self.events.len() {
            return false;
        }
        for c in (-budget..=budget).rev() {
            coeffs[i] = c;
            if self.dfs(i + 1, budget - c.abs(), coeffs) {
                return true;
            }
        }
        coeffs[i] = 0;
        false
    }

    fn violates(&self, coeffs: &[i64]) -> bool {
        let mut total = BigInt::zero();
        for (c, v) in coeffs.iter().zip(self.scaled) {
            if *c != 0 {
                total += v * c;
            }
        }
        if !total.is_negative() {
            return false;
        }
        (1..=self.n).all(|a| {
            coeffs
                .iter()
                .zip(self.events)
                .filter(|(_, e)| e.contains_atom(a))
                .map(|(c, _)| *c)
                .sum::<i64>()
                >= 0
        })
    }
}

/// A lower and an upper probability on every event, indexed by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpreciseProbability {
    ground: GroundSet,
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

impl ImpreciseProbability {
    pub fn new(ground: GroundSet, lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self> {
        for v in [&lower, &upper] {
            if v.len() != ground.event_count() {
                return Err(Error::DimensionMismatch {
                    expected: ground.event_count(),
                    found: v.len(),
                });
            }
        }
        Ok(ImpreciseProbability { ground, lower, upper })
    }

    /// Builds the tables from partial assignments, filling each missing
    /// entry from its conjugate `upper(A) = 1 − lower(Aᶜ)`.
    pub fn from_assignments(
        ground: GroundSet,
        lower: &[(EventSet, Rational)],
        upper: &[(EventSet, Rational)],
    ) -> Result<Self> {
        let size = ground.event_count();
        let mut lo: Vec<Option<Rational>> = vec![None; size];
        let mut hi: Vec<Option<Rational>> = vec![None; size];
        for (table, given) in [(&mut lo, lower), (&mut hi, upper)] {
            for (e, v) in given {
                ground.check(*e)?;
                table[e.mask() as usize] = Some(v.clone());
            }
        }
        let mut lower_out = Vec::with_capacity(size);
        let mut upper_out = Vec::with_capacity(size);
        for e in ground.events() {
            let c = e.complement(&ground).mask() as usize;
            let i = e.mask() as usize;
            let l = lo[i]
                .clone()
                .or_else(|| hi[c].as_ref().map(|u| one() - u))
                .ok_or_else(|| Error::InvalidMeasure(format!("no lower value for {e:?}")))?;
            let u = hi[i]
                .clone()
                .or_else(|| lo[c].as_ref().map(|l| one() - l))
                .ok_or_else(|| Error::InvalidMeasure(format!("no upper value for {e:?}")))?;
            lower_out.push(l);
            upper_out.push(u);
        }
        Self::new(ground, lower_out, upper_out)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn lower(&self, e: EventSet) -> &Rational {
        &self.lower[e.mask() as usize]
    }

    pub fn upper(&self, e: EventSet) -> &Rational {
        &self.upper[e.mask() as usize]
    }

    /// Normalization at `∅`, conjugacy, subadditivity of the upper and
    /// superadditivity of the lower probability. Each failed clause is
    /// reported once, with the first witness in mask order.
    pub fn check_axioms(&self) -> ValidationReport {
        let g = self.ground;
        let mut report = ValidationReport::default();
        for value in [&self.lower[0], &self.upper[0]] {
            if !value.is_zero() {
                report.push(Violation::Normalization {
                    event: EventSet::EMPTY,
                    value: value.clone(),
                    expected: zero(),
                });
            }
        }
        if let Some(e) = g
            .events()
            .find(|&e| *self.upper(e) != one() - self.lower(e.complement(&g)))
        {
            report.push(Violation::Conjugacy {
                event: e,
                upper: self.upper(e).clone(),
                conjugate: one() - self.lower(e.complement(&g)),
            });
        }
        let disjoint_pairs = || {
            g.events().flat_map(move |a| {
                g.events()
                    .filter(move |&b| a.mask() < b.mask() && a.is_disjoint(b))
                    .map(move |b| (a, b))
            })
        };
        if let Some((a, b)) =
            disjoint_pairs().find(|&(a, b)| *self.upper(a.union(b)) > self.upper(a) + self.upper(b))
        {
            report.push(Violation::Subadditivity {
                a,
                b,
                union: self.upper(a.union(b)).clone(),
                sum: self.upper(a) + self.upper(b),
            });
        }
        if let Some((a, b)) =
            disjoint_pairs().find(|&(a, b)| *self.lower(a.union(b)) < self.lower(a) + self.lower(b))
        {
            report.push(Violation::Superadditivity {
                a,
                b,
                union: self.lower(a.union(b)).clone(),
                sum: self.lower(a) + self.lower(b),
            });
        }
        report
    }

    /// Events where lower and upper coincide, and whether they form a
    /// pre-Dynkin system.
    pub fn precise_events(&self) -> (SetSystem, bool) {
        let events = self
            .ground
            .events()
            .filter(|&e| self.lower(e) == self.upper(e));
        let system = SetSystem::new(self.ground, events).expect("events of the ground set");
        let flag = system.is_pre_dynkin();
        debug_assert!(!self.check_axioms().is_valid() || flag);
        (system, flag)
    }

    /// The common value on the precise events as a probability, when those
    /// events form a pre-Dynkin system.
    pub fn precise_measure(&self) -> Result<PartialProbability> {
        let (system, _) = self.precise_events();
        let values = system.iter().map(|e| (e, self.lower(e).clone())).collect();
        PartialProbability::new(system, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn e(atoms: &[usize]) -> EventSet {
        EventSet::of(atoms)
    }

    fn running() -> PartialProbability {
        PartialProbability::from_assignments(
            g(4),
            &[
                (e(&[1, 2]), rat(1, 2)),
                (e(&[3, 4]), rat(1, 2)),
                (e(&[1, 3]), rat(1, 5)),
                (e(&[2, 4]), rat(4, 5)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn completion_fills_domain() {
        let mu = running();
        assert_eq!(mu.domain().len(), 6);
        assert_eq!(mu.value(EventSet::EMPTY), Some(&zero()));
        assert_eq!(mu.value(g(4).full()), Some(&one()));
        let partial = PartialProbability::from_assignments(
            g(4),
            &[(e(&[1, 2]), rat(1, 2)), (e(&[1, 3]), rat(1, 5))],
        )
        .unwrap();
        assert_eq!(partial, mu);
    }

    #[test]
    fn completion_uses_differences() {
        let d = SetSystem::new(g(4), [e(&[1, 2]), e(&[3])]).unwrap().pre_dynkin_hull();
        let mu = PartialProbability::complete(
            d,
            &[(e(&[1, 2, 3]), rat(3, 4)), (e(&[3]), rat(1, 4))],
        )
        .unwrap();
        assert_eq!(mu.value(e(&[1, 2])), Some(&rat(1, 2)));
        assert_eq!(mu.value(e(&[4])), Some(&rat(1, 4)));
    }

    #[test]
    fn validation_examples() {
        assert!(running().validate().is_valid());

        let mut values = running().values().clone();
        values.insert(e(&[3, 4]), rat(3, 5));
        let bad = PartialProbability::new(running().domain().clone(), values).unwrap();
        let report = bad.validate();
        assert!(report.violations.contains(&Violation::Additivity {
            a: e(&[1, 2]),
            b: e(&[3, 4]),
            union: one(),
            sum: rat(11, 10),
        }));

        let mut values = running().values().clone();
        values.insert(EventSet::EMPTY, rat(1, 10));
        let bad = PartialProbability::new(running().domain().clone(), values).unwrap();
        assert!(bad.validate().has("normalization"));
    }

    #[test]
    fn rejects_non_pre_dynkin_domain() {
        let s = SetSystem::new(g(3), [EventSet::EMPTY, e(&[1]), g(3).full()]).unwrap();
        let values = s.iter().map(|x| (x, zero())).collect();
        assert_eq!(PartialProbability::new(s, values), Err(Error::NotPreDynkin));
    }

    #[test]
    fn inner_outer_examples() {
        let ip = running().inner_outer();
        assert_eq!(ip.lower(e(&[1, 2, 3])), &rat(1, 2));
        assert_eq!(ip.lower(e(&[1, 4])), &zero());
        assert_eq!(ip.upper(e(&[1, 4])), &one());
        assert_eq!(ip.upper(e(&[1])) + ip.upper(e(&[4])), rat(7, 10));
        assert_eq!(ip.lower(g(4).full()), &one());
        assert_eq!(ip.upper(EventSet::EMPTY), &zero());
        let report = ip.check_axioms();
        assert_eq!(
            report.first("subadditivity"),
            Some(&Violation::Subadditivity {
                a: e(&[1]),
                b: e(&[4]),
                union: one(),
                sum: rat(7, 10),
            })
        );
    }

    #[test]
    fn extendability_examples() {
        let w = running().extension_witness().unwrap().unwrap();
        assert!(running().credal_set().contains(&w));
        let trivial = PartialProbability::from_assignments(g(3), &[]).unwrap();
        assert!(trivial.is_extendable().unwrap());
        assert_eq!(running().horn_tarski_falsify(4).unwrap(), None);
        assert_eq!(running().horn_tarski_falsify(0).unwrap(), None);
    }

    #[test]
    fn coherent_extension_examples() {
        let mu = running();
        assert_eq!(mu.coherent_extension(e(&[2])).unwrap(), (rat(3, 10), rat(1, 2)));
        assert_eq!(mu.coherent_extension(e(&[1, 4])).unwrap(), (rat(3, 10), rat(7, 10)));
        for a in mu.domain().iter() {
            let v = mu.value(a).unwrap().clone();
            assert_eq!(mu.coherent_extension(a).unwrap(), (v.clone(), v));
        }
    }

    #[test]
    fn full_measure_table_is_precise() {
        let masses = vec![rat(1, 6), rat(1, 3), rat(1, 2)];
        let mu = PartialProbability::from_atom_masses(g(3), &masses).unwrap();
        let table = mu.coherent_extension_table().unwrap();
        for a in g(3).events() {
            assert_eq!(table.lower(a), mu.value(a).unwrap());
            assert_eq!(table.upper(a), mu.value(a).unwrap());
        }
        let (precise, flag) = table.precise_events();
        assert!(flag);
        assert_eq!(precise, SetSystem::power_set(g(3)));
    }

    #[test]
    fn almost_pre_dynkin_pair() {
        let ip = ImpreciseProbability::from_assignments(
            g(3),
            &[
                (EventSet::EMPTY, zero()),
                (e(&[1]), rat(1, 5)),
                (e(&[2]), rat(1, 5)),
                (e(&[3]), zero()),
            ],
            &[
                (EventSet::EMPTY, zero()),
                (e(&[1]), rat(1, 5)),
                (e(&[2]), rat(1, 5)),
                (e(&[3]), rat(3, 5)),
            ],
        )
        .unwrap();
        let (system, flag) = ip.precise_events();
        assert!(!flag);
        let expected = SetSystem::new(
            g(3),
            [EventSet::EMPTY, e(&[1]), e(&[2]), e(&[2, 3]), e(&[1, 3]), g(3).full()],
        )
        .unwrap();
        assert_eq!(system, expected);
        assert!(ip.precise_measure().is_err());
    }

    #[test]
    fn gbr_examples() {
        let mu = running();
        assert_eq!(
            mu.gbr_conditional(e(&[1, 3]), e(&[1, 2])).unwrap(),
            (zero(), rat(2, 5))
        );
        assert_eq!(mu.gbr_conditional(e(&[3, 4]), e(&[3, 4])).unwrap(), (one(), one()));
        assert_eq!(mu.gbr_conditional(EventSet::EMPTY, e(&[2, 4])).unwrap(), (zero(), zero()));
        assert!(matches!(
            mu.gbr_conditional(e(&[1]), e(&[1])),
            Err(Error::Conditioning(_))
        ));
        assert!(matches!(
            mu.gbr_conditional(e(&[1]), EventSet::EMPTY),
            Err(Error::Conditioning(_))
        ));
    }

    #[test]
    fn lattice_point_counts() {
        // L1 sphere of radius 1 and 2 in three dimensions
        assert_eq!(lattice_points(3, 1), 6);
        assert_eq!(lattice_points(3, 2), 18);
    }
}
