//! The credal / dual credal Galois connection anchored at a reference
//! measure `ψ`, and credal sets of distorted probabilities.
//!
//! `credal` sends a set system `A` to `m(A) = {ν ∈ Δ : ν(E) = ψ(E), E ∈ A}`;
//! `dual_credal` sends a set of measures `Q` to
//! `m°(Q) = {E : ν(E) = ψ(E) for all ν ∈ Q}`. Both maps are antitone and
//! their composites are closure operators.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::Direction;
use crate::polytope::{event_mass, CredalPolytope};
use crate::rational::{dot, one, zero};
use crate::{EventSet, GroundSet, Rational, SetSystem};

/// The anchor `ψ`: a full probability given by its atom masses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceMeasure {
    ground: GroundSet,
    atom_mass: Vec<Rational>,
}

impl ReferenceMeasure {
    /// Entries must be nonnegative and sum to one.
    pub fn new(ground: GroundSet, atom_mass: Vec<Rational>) -> Result<Self> {
        if atom_mass.len() != ground.n() {
            return Err(Error::DimensionMismatch {
                expected: ground.n(),
                found: atom_mass.len(),
            });
        }
        if atom_mass.iter().any(Signed::is_negative) {
            return Err(Error::InvalidMeasure("negative atom mass".into()));
        }
        if atom_mass.iter().sum::<Rational>() != one() {
            return Err(Error::InvalidMeasure("atom masses do not sum to 1".into()));
        }
        Ok(ReferenceMeasure { ground, atom_mass })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn atom_mass(&self) -> &[Rational] {
        &self.atom_mass
    }

    pub fn mass(&self, e: EventSet) -> Rational {
        event_mass(&self.atom_mass, e)
    }

    /// `ψ · f`.
    pub fn expectation(&self, f: &[Rational]) -> Rational {
        dot(&self.atom_mass, f)
    }

    pub fn point_polytope(&self) -> CredalPolytope {
        CredalPolytope::point(self.ground, &self.atom_mass).expect("length checked in new")
    }
}

/// `m(A)`. Always contains `ψ`.
pub fn credal(psi: &ReferenceMeasure, a: &SetSystem) -> Result<CredalPolytope> {
    psi.ground.ensure_same(&a.ground())?;
    let mut p = CredalPolytope::simplex(psi.ground);
    for e in a.iter() {
        p.add_event_equality(e, psi.mass(e))?;
    }
    debug_assert!(p.contains(&psi.atom_mass));
    Ok(p)
}

/// `m°(Q)` for a polytope `Q`.
///
/// An event belongs iff `ν(E)` is constant on `Q` and that constant is
/// `ψ(E)`. Constancy holds exactly when `χ_E` is orthogonal to the
/// affine directions of `Q`, so one direction computation serves all
/// `2^n` events.
pub fn dual_credal(psi: &ReferenceMeasure, q: &CredalPolytope) -> Result<SetSystem> {
    psi.ground.ensure_same(&q.ground())?;
    let (anchor, directions) = q.directions()?;
    let n = psi.ground.n();
    let members: Vec<EventSet> = psi
        .ground
        .events()
        .filter(|&e| {
            event_mass(&anchor, e) == psi.mass(e)
                && directions.iter().all(|d| event_mass(d, e).is_zero())
        })
        .collect();
    let out = SetSystem::new(psi.ground, members)?;
    debug_assert!(out.is_pre_dynkin());
    debug_assert!(n > 6 || out == dual_credal_by_lp(psi, q)?);
    Ok(out)
}

/// `m°(Q)` by two LP solves per event. Slower reference route for
/// [`dual_credal`].
pub fn dual_credal_by_lp(psi: &ReferenceMeasure, q: &CredalPolytope) -> Result<SetSystem> {
    psi.ground.ensure_same(&q.ground())?;
    let lp = q.to_lp();
    let anchor = lp.feasible_point()?.ok_or(Error::EmptyPolytope)?;
    let events: Vec<EventSet> = psi.ground.events().collect();
    let flags: Vec<bool> = events
        .par_iter()
        .map(|&e| -> Result<bool> {
            let target = psi.mass(e);
            if event_mass(&anchor, e) != target {
                return Ok(false);
            }
            let chi = e.indicator(psi.ground.n());
            for direction in [Direction::Minimize, Direction::Maximize] {
                if lp.solve(&chi, direction)?.value() != Some(&target) {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<_>>()?;
    SetSystem::new(
        psi.ground,
        events.into_iter().zip(flags).filter(|(_, f)| *f).map(|(e, _)| e),
    )
}

/// `m°(Q)` for a finite list of measures, which equals `m°` of their
/// convex hull.
pub fn dual_credal_finite(psi: &ReferenceMeasure, measures: &[Vec<Rational>]) -> Result<SetSystem> {
    let n = psi.ground.n();
    for m in measures {
        if m.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.len() });
        }
    }
    let members = psi
        .ground
        .events()
        .filter(|&e| {
            let target = psi.mass(e);
            measures.iter().all(|m| event_mass(m, e) == target)
        })
        .collect::<Vec<_>>();
    SetSystem::new(psi.ground, members)
}

/// `m°(m(A))`, the closure of `A`. Contains the pre-Dynkin hull of `A`.
pub fn bipolar_closure(psi: &ReferenceMeasure, a: &SetSystem) -> Result<SetSystem> {
    let p = credal(psi, a)?;
    let dirs = p.affine_directions(&psi.atom_mass)?;
    let members = psi
        .ground
        .events()
        .filter(|&e| dirs.iter().all(|d| event_mass(d, e).is_zero()))
        .collect::<Vec<_>>();
    let out = SetSystem::new(psi.ground, members)?;
    debug_assert!(a.pre_dynkin_hull().is_subset_of(&out));
    Ok(out)
}

pub fn is_bipolar_closed(psi: &ReferenceMeasure, a: &SetSystem) -> Result<bool> {
    Ok(bipolar_closure(psi, a)? == *a)
}

/// LP-certified `P ⊆ Q`.
pub fn polytope_subset(p: &CredalPolytope, q: &CredalPolytope) -> Result<bool> {
    p.is_subset_of(q)
}

/// Concave increasing piecewise-linear `γ : [0,1] → [0,1]` with
/// `γ(0) = 0` and `γ(1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinearConcave {
    breakpoints: Vec<(Rational, Rational)>,
}

impl PiecewiseLinearConcave {
    /// Breakpoints must run from `(0,0)` to `(1,1)` with strictly
    /// ascending `x` and nonnegative, non-increasing slopes.
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidDistortion(m.into()));
        if breakpoints.len() < 2 {
            return bad("at least two breakpoints are required");
        }
        if breakpoints[0] != (zero(), zero()) {
            return bad("the first breakpoint must be (0, 0)");
        }
        if breakpoints[breakpoints.len() - 1] != (one(), one()) {
            return bad("the last breakpoint must be (1, 1)");
        }
        let mut previous_slope: Option<Rational> = None;
        for w in breakpoints.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            if x1 <= x0 {
                return bad("breakpoint abscissae must be strictly ascending");
            }
            let slope = (y1 - y0) / (x1 - x0);
            if slope.is_negative() {
                return bad("distortion must be increasing");
            }
            if previous_slope.as_ref().is_some_and(|p| slope > *p) {
                return bad("distortion must be concave");
            }
            previous_slope = Some(slope);
        }
        let gamma = PiecewiseLinearConcave { breakpoints };
        // a concave γ touching the diagonal inside (0,1) is the identity
        debug_assert!(
            gamma.is_identity()
                || gamma.breakpoints[1..gamma.breakpoints.len() - 1]
                    .iter()
                    .all(|(x, y)| y > x)
        );
        Ok(gamma)
    }

    pub fn identity() -> Self {
        PiecewiseLinearConcave {
            breakpoints: vec![(zero(), zero()), (one(), one())],
        }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn is_identity(&self) -> bool {
        self.breakpoints.iter().all(|(x, y)| x == y)
    }

    /// Linear interpolation; `x` is clamped to `[0, 1]`.
    pub fn eval(&self, x: &Rational) -> Rational {
        if !x.is_positive() {
            return zero();
        }
        for w in self.breakpoints.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            if x <= x1 {
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        one()
    }
}

/// `M(ψ, γ) = {ν ∈ Δ : ν(F) ≤ γ(ψ(F)) for every F}`, one bound per event.
pub fn distorted_credal(psi: &ReferenceMeasure, gamma: &PiecewiseLinearConcave) -> CredalPolytope {
    let mut p = CredalPolytope::simplex(psi.ground);
    for f in psi.ground.events() {
        p.add_event_upper_bound(f, gamma.eval(&psi.mass(f)))
            .expect("events of the ground set");
    }
    debug_assert!(p.contains(&psi.atom_mass));
    p
}

/// `F01 = {F : ψ(F) ∈ {0, 1}}`, the pre-Dynkin hull of the null events.
pub fn certainty_system(psi: &ReferenceMeasure) -> SetSystem {
    let members = psi.ground.events().filter(|&f| {
        let m = psi.mass(f);
        m.is_zero() || m == one()
    });
    let out = SetSystem::new(psi.ground, members).expect("events of the ground set");
    debug_assert!({
        let null = psi.ground.events().filter(|&f| psi.mass(f).is_zero());
        SetSystem::new(psi.ground, null).unwrap().pre_dynkin_hull() == out
    });
    out
}
