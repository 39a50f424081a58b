#![allow(dead_code)]

use std::collections::BTreeMap;

use predynkin::lp::{Direction, LinearProgram, LpOutcome};
use predynkin::measure::PartialProbability;
use predynkin::rational::{int, one, rat, zero};
use predynkin::{EventSet, GroundSet, Rational, SetSystem};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ground(n: usize) -> GroundSet {
    GroundSet::new(n).unwrap()
}

pub fn e(atoms: &[usize]) -> EventSet {
    EventSet::of(atoms)
}

pub fn sys(n: usize, lists: &[&[usize]]) -> SetSystem {
    let lists: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
    SetSystem::from_atom_lists(ground(n), &lists).unwrap()
}

pub fn d4() -> SetSystem {
    sys(4, &[&[], &[1, 2], &[3, 4], &[1, 3], &[2, 4], &[1, 2, 3, 4]])
}

pub fn running_measure() -> PartialProbability {
    PartialProbability::from_assignments(
        ground(4),
        &[
            (e(&[1, 2]), rat(1, 2)),
            (e(&[3, 4]), rat(1, 2)),
            (e(&[1, 3]), rat(1, 5)),
            (e(&[2, 4]), rat(4, 5)),
        ],
    )
    .unwrap()
}

/// All six two-atom events of four atoms (three pairings) with
/// `μ(12) = μ(13) = μ(23) = 1`. The certificate `χ14 + χ24 − χ12 ≥ 0` with
/// `μ(14) + μ(24) − μ(12) = −1` rules out any extension. This is the first
/// instance produced by `search_finds_non_extendable_vertices` (seed 7).
pub fn non_extendable_measure() -> PartialProbability {
    PartialProbability::from_assignments(
        ground(4),
        &[
            (e(&[1, 2]), one()),
            (e(&[1, 3]), one()),
            (e(&[2, 3]), one()),
        ],
    )
    .unwrap()
}

pub fn random_event(rng: &mut impl Rng, n: usize) -> EventSet {
    EventSet::from_mask(rng.gen_range(0..(1u32 << n)))
}

pub fn random_system(rng: &mut impl Rng, n: usize, max_events: usize) -> SetSystem {
    let k = rng.gen_range(0..=max_events);
    SetSystem::new(ground(n), (0..k).map(|_| random_event(rng, n))).unwrap()
}

pub fn random_pre_dynkin(rng: &mut impl Rng, n: usize, max_generators: usize) -> SetSystem {
    random_system(rng, n, max_generators).pre_dynkin_hull()
}

/// Atom masses with denominators up to `max_den`, all strictly positive.
pub fn random_positive_measure(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| rat(w, total)).collect()
}

/// Atom masses where each atom is zero with probability 1/3 (at least one
/// atom keeps positive mass).
pub fn random_measure_with_zeros(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut weights: Vec<i64> = (0..n)
        .map(|_| if rng.gen_bool(1.0 / 3.0) { 0 } else { rng.gen_range(1..=9) })
        .collect();
    if weights.iter().all(|&w| w == 0) {
        let i = rng.gen_range(0..n);
        weights[i] = rng.gen_range(1..=9);
    }
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| rat(w, total)).collect()
}

pub fn restrict(domain: &SetSystem, masses: &[Rational]) -> PartialProbability {
    let values: BTreeMap<EventSet, Rational> = domain
        .iter()
        .map(|ev| (ev, predynkin::polytope::event_mass(masses, ev)))
        .collect();
    PartialProbability::new(domain.clone(), values).unwrap()
}

/// An extendable probability: a random full measure restricted to a random
/// pre-Dynkin system.
pub fn random_extendable(rng: &mut impl Rng, n: usize) -> PartialProbability {
    let d = random_pre_dynkin(rng, n, 3);
    let masses = if rng.gen_bool(0.5) {
        random_positive_measure(rng, n)
    } else {
        random_measure_with_zeros(rng, n)
    };
    restrict(&d, &masses)
}

/// A vertex of the polytope of all finitely additive probabilities on `d`,
/// picked by a random objective. Vertices outside the convex hull of the
/// restricted point masses are exactly the non-extendable ones.
pub fn random_valid_measure(rng: &mut impl Rng, d: &SetSystem) -> PartialProbability {
    let events = d.events();
    let k = events.len();
    let index = |x: EventSet| events.binary_search(&x).unwrap();
    let g = d.ground();
    let mut lp = LinearProgram::new(k);
    let unit = |i: usize| {
        let mut row = vec![zero(); k];
        row[i] = one();
        row
    };
    lp.add_equality(unit(index(EventSet::EMPTY)), zero()).unwrap();
    lp.add_equality(unit(index(g.full())), one()).unwrap();
    for i in 0..k {
        lp.add_inequality(unit(i), one()).unwrap();
    }
    for (i, &a) in events.iter().enumerate() {
        for &b in &events[i + 1..] {
            if a.is_empty() || !a.is_disjoint(b) || !d.contains(a.union(b)) {
                continue;
            }
            let mut row = vec![zero(); k];
            row[index(a.union(b))] = one();
            row[index(a)] -= one();
            row[index(b)] -= one();
            lp.add_equality(row, zero()).unwrap();
        }
    }
    let objective: Vec<Rational> = (0..k).map(|_| int(rng.gen_range(-5..=5))).collect();
    let point = match lp.solve(&objective, Direction::Maximize).unwrap() {
        LpOutcome::Optimal { point, .. } => point,
        other => panic!("valid-measure polytope is a nonempty polytope: {other:?}"),
    };
    let values = events.iter().copied().zip(point).collect();
    PartialProbability::new(d.clone(), values).unwrap()
}

/// Random concave piecewise-linear distortion that is not the identity.
/// Breakpoints are `(0,0)`, interior points with decreasing slopes, `(1,1)`.
pub fn random_distortion_points(rng: &mut impl Rng) -> Vec<(Rational, Rational)> {
    loop {
        let k = rng.gen_range(1..=3);
        let mut xs: Vec<i64> = (0..k).map(|_| rng.gen_range(1..10)).collect();
        xs.sort_unstable();
        xs.dedup();
        // slopes, non-increasing, chosen so the last segment ends at (1,1)
        let mut slopes: Vec<i64> = (0..=xs.len()).map(|_| rng.gen_range(0..=6)).collect();
        slopes.sort_unstable_by(|a, b| b.cmp(a));
        let mut pts = vec![(zero(), zero())];
        let mut prev_x = 0;
        let mut y = zero();
        for (i, &x) in xs.iter().chain(std::iter::once(&10)).enumerate() {
            y += rat(slopes[i] * (x - prev_x), 10);
            pts.push((rat(x, 10), y.clone()));
            prev_x = x;
        }
        let total = y;
        if total == zero() {
            continue;
        }
        // rescale so that gamma(1) = 1; concavity and monotonicity survive
        let pts: Vec<(Rational, Rational)> =
            pts.into_iter().map(|(x, y)| (x, y / &total)).collect();
        if pts.iter().all(|(x, y)| x == y) {
            continue;
        }
        return pts;
    }
}
