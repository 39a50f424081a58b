//! Credal sets over a finite ground set, held as linear constraints on the
//! probability simplex.
//!
//! Two polytopes are compared by LP-certified inclusion, never by their
//! constraint lists: different generators routinely describe the same set.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lp::{affine_directions, Constraint, Direction, LinearProgram, LpOutcome};
use crate::rational::{dot, format_rational, format_vector};
use crate::{EventSet, GroundSet, Rational};

/// `{ν ∈ Δ : a·ν = b for each equality, a·ν ≤ b for each upper bound}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CredalPolytope {
    ground: GroundSet,
    equalities: Vec<Constraint>,
    upper_bounds: Vec<Constraint>,
}

impl CredalPolytope {
    /// The whole simplex `Δ`.
    pub fn simplex(ground: GroundSet) -> Self {
        CredalPolytope {
            ground,
            equalities: Vec::new(),
            upper_bounds: Vec::new(),
        }
    }

    /// The single measure `point`, pinned atom by atom.
    pub fn point(ground: GroundSet, point: &[Rational]) -> Result<Self> {
        let mut p = Self::simplex(ground);
        for a in 1..=ground.n() {
            let x = point.get(a - 1).ok_or(Error::DimensionMismatch {
                expected: ground.n(),
                found: point.len(),
            })?;
            p.add_event_equality(EventSet::of(&[a]), x.clone())?;
        }
        if point.len() != ground.n() {
            return Err(Error::DimensionMismatch {
                expected: ground.n(),
                found: point.len(),
            });
        }
        Ok(p)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn upper_bounds(&self) -> &[Constraint] {
        &self.upper_bounds
    }

    fn check_gamble(&self, g: &[Rational]) -> Result<()> {
        if g.len() != self.ground.n() {
            return Err(Error::DimensionMismatch {
                expected: self.ground.n(),
                found: g.len(),
            });
        }
        Ok(())
    }

    /// Adds `ν(e) = value`.
    pub fn add_event_equality(&mut self, e: EventSet, value: Rational) -> Result<()> {
        self.ground.check(e)?;
        self.equalities.push(Constraint {
            coeffs: e.indicator(self.ground.n()),
            rhs: value,
        });
        Ok(())
    }

    /// Adds `ν(e) ≤ bound`.
    pub fn add_event_upper_bound(&mut self, e: EventSet, bound: Rational) -> Result<()> {
        self.ground.check(e)?;
        self.upper_bounds.push(Constraint {
            coeffs: e.indicator(self.ground.n()),
            rhs: bound,
        });
        Ok(())
    }

    /// Adds `ν · g = value`.
    pub fn add_gamble_equality(&mut self, g: Vec<Rational>, value: Rational) -> Result<()> {
        self.check_gamble(&g)?;
        self.equalities.push(Constraint { coeffs: g, rhs: value });
        Ok(())
    }

    /// Adds `ν · g ≤ bound`.
    pub fn add_gamble_upper_bound(&mut self, g: Vec<Rational>, bound: Rational) -> Result<()> {
        self.check_gamble(&g)?;
        self.upper_bounds.push(Constraint { coeffs: g, rhs: bound });
        Ok(())
    }

    /// Constraint union, i.e. set intersection.
    pub fn intersection(&self, other: &CredalPolytope) -> Result<CredalPolytope> {
        self.ground.ensure_same(&other.ground)?;
        let mut out = self.clone();
        out.equalities.extend(other.equalities.iter().cloned());
        out.upper_bounds.extend(other.upper_bounds.iter().cloned());
        Ok(out)
    }

    pub fn to_lp(&self) -> LinearProgram {
        let mut lp = LinearProgram::simplex(self.ground.n());
        for c in &self.equalities {
            lp.add_equality(c.coeffs.clone(), c.rhs.clone())
                .expect("rows sized to the ground set");
        }
        for c in &self.upper_bounds {
            lp.add_inequality(c.coeffs.clone(), c.rhs.clone())
                .expect("rows sized to the ground set");
        }
        lp
    }

    pub fn contains(&self, nu: &[Rational]) -> bool {
        self.to_lp().is_feasible(nu)
    }

    pub fn feasible_point(&self) -> Result<Option<Vec<Rational>>> {
        self.to_lp().feasible_point()
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.feasible_point()?.is_none())
    }

    /// `(min, max)` of `ν · objective` over the polytope, `None` if empty.
    pub fn range(&self, objective: &[Rational]) -> Result<Option<(Rational, Rational)>> {
        self.check_gamble(objective)?;
        let lp = self.to_lp();
        let lo = match lp.solve(objective, Direction::Minimize)? {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => unreachable!("the simplex is bounded"),
        };
        let hi = lp
            .solve(objective, Direction::Maximize)?
            .value()
            .cloned()
            .expect("feasible and bounded");
        Ok(Some((lo, hi)))
    }

    pub fn event_range(&self, e: EventSet) -> Result<Option<(Rational, Rational)>> {
        self.ground.check(e)?;
        self.range(&e.indicator(self.ground.n()))
    }

    /// Whether every measure in `self` satisfies every constraint of
    /// `other`. Each constraint is certified by LP over `self`.
    pub fn is_subset_of(&self, other: &CredalPolytope) -> Result<bool> {
        self.ground.ensure_same(&other.ground)?;
        let lp = self.to_lp();
        if lp.feasible_point()?.is_none() {
            return Ok(true);
        }
        for c in &other.equalities {
            let lo = lp.solve(&c.coeffs, Direction::Minimize)?;
            if lo.value() != Some(&c.rhs) {
                return Ok(false);
            }
            let hi = lp.solve(&c.coeffs, Direction::Maximize)?;
            if hi.value() != Some(&c.rhs) {
                return Ok(false);
            }
        }
        for c in &other.upper_bounds {
            let hi = lp.solve(&c.coeffs, Direction::Maximize)?;
            match hi.value() {
                Some(v) if *v <= c.rhs => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Set equality by mutual inclusion.
    pub fn set_eq(&self, other: &CredalPolytope) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Basis of the directions spanned by the polytope around `anchor`.
    pub fn affine_directions(&self, anchor: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        affine_directions(&self.to_lp(), anchor)
    }

    /// Directions around some feasible point, together with that point.
    pub fn directions(&self) -> Result<(Vec<Rational>, Vec<Vec<Rational>>)> {
        let anchor = self.feasible_point()?.ok_or(Error::EmptyPolytope)?;
        let dirs = self.affine_directions(&anchor)?;
        Ok((anchor, dirs))
    }
}

impl fmt::Debug for CredalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CredalPolytope(n={}) {{", self.ground.n())?;
        for c in &self.equalities {
            writeln!(f, "  {} · ν = {}", format_vector(&c.coeffs), format_rational(&c.rhs))?;
        }
        for c in &self.upper_bounds {
            writeln!(f, "  {} · ν ≤ {}", format_vector(&c.coeffs), format_rational(&c.rhs))?;
        }
        write!(f, "}}")
    }
}

/// `ν(e)` for a measure given by its atom masses.
pub fn event_mass(nu: &[Rational], e: EventSet) -> Rational {
    nu.iter()
        .enumerate()
        .filter(|&(i, _)| e.contains_atom(i + 1))
        .fold(Rational::zero(), |acc, (_, x)| acc + x)
}

/// Expectation `ν · f`.
pub fn expectation(nu: &[Rational], f: &[Rational]) -> Rational {
    dot(nu, f)
}
