mod common;

use common::*;
use predynkin::linalg::{nullspace, rank};
use predynkin::lp::{affine_directions, Direction, LinearProgram, LpOutcome};
use predynkin::rational::{dot, int, rat, zero};
use predynkin::Rational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_row(rng: &mut impl Rng, m: usize) -> Vec<Rational> {
    (0..m).map(|_| int(rng.gen_range(-3..=3))).collect()
}

/// A bounded LP over the simplex with a few random constraints that all
/// hold at a known interior-ish point, so the program is feasible.
fn random_feasible_lp(rng: &mut impl Rng, m: usize) -> (LinearProgram, Vec<Rational>) {
    let weights: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=5)).collect();
    let total: i64 = weights.iter().sum();
    let point: Vec<Rational> = weights.iter().map(|&w| rat(w, total)).collect();
    let mut lp = LinearProgram::simplex(m);
    for _ in 0..rng.gen_range(0..=2) {
        let row = random_row(rng, m);
        let rhs = dot(&row, &point);
        lp.add_equality(row, rhs).unwrap();
    }
    for _ in 0..rng.gen_range(0..=3) {
        let row = random_row(rng, m);
        let rhs = dot(&row, &point) + int(rng.gen_range(0..=2));
        lp.add_inequality(row, rhs).unwrap();
    }
    (lp, point)
}

fn rebuild_permuted(lp: &LinearProgram, rng: &mut impl Rng) -> LinearProgram {
    let mut eqs = lp.equalities().to_vec();
    let mut ineqs = lp.inequalities().to_vec();
    eqs.shuffle(rng);
    ineqs.shuffle(rng);
    let mut out = LinearProgram::new(lp.num_vars());
    for c in eqs {
        out.add_equality(c.coeffs, c.rhs).unwrap();
    }
    for c in ineqs {
        out.add_inequality(c.coeffs, c.rhs).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn optimal_points_are_exactly_feasible(seed in any::<u64>(), m in 2usize..=5) {
        let mut rng = rng(seed);
        let (lp, known) = random_feasible_lp(&mut rng, m);
        let objective = random_row(&mut rng, m);
        for direction in [Direction::Maximize, Direction::Minimize] {
            let LpOutcome::Optimal { value, point } = lp.solve(&objective, direction).unwrap() else {
                panic!("bounded feasible program");
            };
            prop_assert!(lp.is_feasible(&point));
            prop_assert_eq!(dot(&objective, &point), value.clone());
            let at_known = dot(&objective, &known);
            match direction {
                Direction::Maximize => prop_assert!(value >= at_known),
                Direction::Minimize => prop_assert!(value <= at_known),
            }
            let permuted = rebuild_permuted(&lp, &mut rng);
            let again = permuted.solve(&objective, direction).unwrap();
            prop_assert_eq!(again.value(), Some(&value));
        }
    }

    #[test]
    fn nullspace_is_orthogonal(seed in any::<u64>(), m in 1usize..=6) {
        let mut rng = rng(seed);
        let rows: Vec<Vec<Rational>> = (0..rng.gen_range(0..=m)).map(|_| random_row(&mut rng, m)).collect();
        let basis = nullspace(&rows, m);
        prop_assert_eq!(basis.len() + rank(&rows, m), m);
        for v in &basis {
            for r in &rows {
                prop_assert_eq!(dot(r, v), zero());
            }
        }
    }

    #[test]
    fn affine_directions_span_the_feasible_set(seed in any::<u64>(), m in 2usize..=5) {
        let mut rng = rng(seed);
        let (lp, _) = random_feasible_lp(&mut rng, m);
        let anchor = lp.feasible_point().unwrap().unwrap();
        let dirs = affine_directions(&lp, &anchor).unwrap();
        let mut points = vec![anchor.clone()];
        for _ in 0..6 {
            let obj = random_row(&mut rng, m);
            points.push(lp.solve(&obj, Direction::Maximize).unwrap().point().unwrap().to_vec());
        }
        let diffs: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| p.iter().zip(&anchor).map(|(a, b)| a - b).collect())
            .collect();
        let mut stacked = dirs.clone();
        stacked.extend(diffs.iter().cloned());
        // every sampled difference lies in the span of the directions
        prop_assert_eq!(rank(&stacked, m), dirs.len());
        // each direction moves the objective d·x across the feasible set
        for d in &dirs {
            for c in lp.equalities() {
                prop_assert_eq!(dot(&c.coeffs, d), zero());
            }
            let hi = lp.solve(d, Direction::Maximize).unwrap().value().cloned().unwrap();
            let lo = lp.solve(d, Direction::Minimize).unwrap().value().cloned().unwrap();
            prop_assert!(hi > lo);
        }
    }
}

#[test]
fn running_example_directions() {
    let p = running_measure().credal_set();
    let anchor = p.feasible_point().unwrap().unwrap();
    let dirs = p.affine_directions(&anchor).unwrap();
    assert_eq!(dirs, vec![vec![int(1), int(-1), int(-1), int(1)]]);
}
