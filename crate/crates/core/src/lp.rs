//! Exact linear programming: dense two-phase simplex with Bland's rule.
//!
//! Equality rows are reduced by Gaussian elimination before the tableau is
//! built, so the highly redundant systems produced by credal sets over
//! `2^n` events collapse to at most `m` rows. Entries are kept in lowest
//! terms after every pivot (the rational type normalizes on each
//! operation); entry sizes can still grow with the number of pivots, which
//! is bounded in practice by the small variable counts used here.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::rational::{dot, one, zero};
use crate::Rational;

pub const DEFAULT_SIZE_CAP: usize = 1 << 16;

static SIZE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_SIZE_CAP);

/// Overrides the variable / constraint cap for every subsequent solve.
pub fn set_size_cap(cap: usize) {
    SIZE_CAP.store(cap, Ordering::Relaxed);
}

pub fn size_cap() -> usize {
    SIZE_CAP.load(Ordering::Relaxed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Equality rows, `≤` rows and per-variable sign restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
    nonneg: Vec<bool>,
}

impl LinearProgram {
    /// Program over `num_vars` nonnegative variables with no constraints.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            nonneg: vec![true; num_vars],
        }
    }

    /// The probability simplex: `x ≥ 0`, `Σ x = 1`.
    pub fn simplex(num_vars: usize) -> Self {
        let mut lp = Self::new(num_vars);
        lp.equalities.push(Constraint {
            coeffs: vec![one(); num_vars],
            rhs: one(),
        });
        lp
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    fn check_len(&self, coeffs: &[Rational]) -> Result<()> {
        if coeffs.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn add_equality(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.check_len(&coeffs)?;
        self.equalities.push(Constraint { coeffs, rhs });
        Ok(())
    }

    /// Adds `coeffs · x ≤ rhs`.
    pub fn add_inequality(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.check_len(&coeffs)?;
        self.inequalities.push(Constraint { coeffs, rhs });
        Ok(())
    }

    pub fn set_free(&mut self, var: usize) {
        self.nonneg[var] = false;
    }

    /// Whether `point` satisfies every constraint exactly.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point
                .iter()
                .zip(&self.nonneg)
                .all(|(x, &nn)| !nn || !x.is_negative())
            && self
                .equalities
                .iter()
                .all(|c| dot(&c.coeffs, point) == c.rhs)
            && self
                .inequalities
                .iter()
                .all(|c| dot(&c.coeffs, point) <= c.rhs)
    }

    /// Any feasible point, or `None` when the program is infeasible.
    pub fn feasible_point(&self) -> Result<Option<Vec<Rational>>> {
        let objective = vec![zero(); self.num_vars];
        Ok(match self.solve(&objective, Direction::Minimize)? {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        })
    }

    pub fn solve(&self, objective: &[Rational], direction: Direction) -> Result<LpOutcome> {
        self.check_len(objective)?;
        let cap = size_cap();
        let rows = self.equalities.len() + self.inequalities.len();
        if self.num_vars > cap || rows > cap {
            return Err(Error::SizeLimitExceeded(format!(
                "linear program with {} variables and {} constraints (cap {})",
                self.num_vars, rows, cap
            )));
        }

        let Some(equalities) = self.reduced_equalities() else {
            return Ok(LpOutcome::Infeasible);
        };

        // column layout: one column per variable, a second (negated) column
        // for each free variable, then one slack per inequality
        let mut neg_col = vec![None; self.num_vars];
        let mut ncols = self.num_vars;
        for (j, &nn) in self.nonneg.iter().enumerate() {
            if !nn {
                neg_col[j] = Some(ncols);
                ncols += 1;
            }
        }
        let structural = ncols;
        ncols += self.inequalities.len();

        let expand = |coeffs: &[Rational]| {
            let mut row = vec![zero(); structural];
            for (j, c) in coeffs.iter().enumerate() {
                row[j] = c.clone();
                if let Some(k) = neg_col[j] {
                    row[k] = -c.clone();
                }
            }
            row
        };

        let mut rows_out = Vec::new();
        let mut rhs_out = Vec::new();
        let mut slack_basic = Vec::new();
        for c in &equalities {
            let mut row = expand(&c.coeffs);
            row.resize(ncols, zero());
            rows_out.push(row);
            rhs_out.push(c.rhs.clone());
            slack_basic.push(None);
        }
        for (i, c) in self.inequalities.iter().enumerate() {
            let mut row = expand(&c.coeffs);
            row.resize(ncols, zero());
            row[structural + i] = one();
            rows_out.push(row);
            rhs_out.push(c.rhs.clone());
            slack_basic.push(Some(structural + i));
        }

        // artificials for every row that lacks a usable slack
        let mut basis = Vec::with_capacity(rows_out.len());
        let first_artificial = ncols;
        let mut n_art = 0;
        for (r, row) in rows_out.iter_mut().enumerate() {
            if rhs_out[r].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                rhs_out[r] = -rhs_out[r].clone();
                slack_basic[r] = None;
            }
            match slack_basic[r] {
                Some(s) => basis.push(s),
                None => {
                    basis.push(first_artificial + n_art);
                    n_art += 1;
                }
            }
        }
        let total = first_artificial + n_art;
        for (r, row) in rows_out.iter_mut().enumerate() {
            row.resize(total, zero());
            if basis[r] >= first_artificial {
                row[basis[r]] = one();
            }
        }

        let mut t = Tableau {
            rows: rows_out,
            rhs: rhs_out,
            basis,
            reduced: Vec::new(),
            value: zero(),
            allowed: vec![true; total],
        };

        if n_art > 0 {
            let mut costs = vec![zero(); total];
            for c in costs.iter_mut().skip(first_artificial) {
                *c = one();
            }
            t.price(&costs);
            let bounded = t.run();
            debug_assert!(bounded, "phase one is bounded below by zero");
            if t.value.is_positive() {
                return Ok(LpOutcome::Infeasible);
            }
            t.drive_out_artificials(first_artificial);
            for a in t.allowed.iter_mut().skip(first_artificial) {
                *a = false;
            }
        }

        let sign = match direction {
            Direction::Minimize => one(),
            Direction::Maximize => -one(),
        };
        let mut costs = vec![zero(); total];
        for (j, c) in objective.iter().enumerate() {
            costs[j] = &sign * c;
            if let Some(k) = neg_col[j] {
                costs[k] = -(&sign * c);
            }
        }
        t.price(&costs);
        if !t.run() {
            return Ok(LpOutcome::Unbounded);
        }

        let mut col_values = vec![zero(); total];
        for (r, &b) in t.basis.iter().enumerate() {
            col_values[b] = t.rhs[r].clone();
        }
        let point: Vec<Rational> = (0..self.num_vars)
            .map(|j| match neg_col[j] {
                Some(k) => &col_values[j] - &col_values[k],
                None => col_values[j].clone(),
            })
            .collect();
        let value = dot(objective, &point);
        debug_assert_eq!(value, &sign * &t.value);
        debug_assert!(self.is_feasible(&point));
        Ok(LpOutcome::Optimal { value, point })
    }

    /// Equality rows in reduced echelon form without redundant rows, or
    /// `None` if the equalities are inconsistent.
    fn reduced_equalities(&self) -> Option<Vec<Constraint>> {
        if self.equalities.is_empty() {
            return Some(Vec::new());
        }
        let augmented: Vec<Vec<Rational>> = self
            .equalities
            .iter()
            .map(|c| {
                let mut row = c.coeffs.clone();
                row.push(c.rhs.clone());
                row
            })
            .collect();
        let (reduced, pivots) = rref(&augmented, self.num_vars + 1);
        if pivots.last() == Some(&self.num_vars) {
            return None;
        }
        Some(
            reduced
                .into_iter()
                .map(|mut row| {
                    let rhs = row.pop().expect("augmented row");
                    Constraint { coeffs: row, rhs }
                })
                .collect(),
        )
    }
}

/// Basis (reduced echelon form) of the linear span of `{x − anchor : x
/// feasible}`.
///
/// Probes the program with objectives orthogonal to the directions found so
/// far. Whenever a maximum or minimum moves off the anchor's value, the
/// optimizer minus the anchor is a new independent direction. The loop ends
/// once every orthogonal objective is constant on the feasible set.
pub fn affine_directions(lp: &LinearProgram, anchor: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if !lp.is_feasible(anchor) {
        return Err(Error::InfeasibleAnchor);
    }
    let m = lp.num_vars();
    let mut directions: Vec<Vec<Rational>> = Vec::new();
    'search: loop {
        for probe in crate::linalg::nullspace(&directions, m) {
            let base = dot(&probe, anchor);
            for direction in [Direction::Maximize, Direction::Minimize] {
                if let Some(point) = probe_off_anchor(lp, &probe, &base, direction)? {
                    let d: Vec<Rational> = point.iter().zip(anchor).map(|(x, a)| x - a).collect();
                    directions.push(d);
                    continue 'search;
                }
            }
        }
        break;
    }
    Ok(rref(&directions, m).0)
}

/// A feasible point whose objective differs from `base`, if the optimum in
/// `direction` moves away from it.
fn probe_off_anchor(
    lp: &LinearProgram,
    objective: &[Rational],
    base: &Rational,
    direction: Direction,
) -> Result<Option<Vec<Rational>>> {
    match lp.solve(objective, direction)? {
        LpOutcome::Optimal { value, point } => Ok((value != *base).then_some(point)),
        LpOutcome::Infeasible => Err(Error::InfeasibleAnchor),
        LpOutcome::Unbounded => {
            // cap the objective one unit away from the anchor value
            let mut capped = lp.clone();
            match direction {
                Direction::Maximize => {
                    capped.add_inequality(objective.to_vec(), base + one())?
                }
                Direction::Minimize => capped.add_inequality(
                    objective.iter().map(|c| -c.clone()).collect(),
                    -(base - one()),
                )?,
            }
            Ok(capped.solve(objective, direction)?.point().map(|p| p.to_vec()))
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
    allowed: Vec<bool>,
}

impl Tableau {
    /// Recomputes reduced costs and objective value for `costs`.
    fn price(&mut self, costs: &[Rational]) {
        let mut reduced = costs.to_vec();
        let mut value = zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (d, a) in reduced.iter_mut().zip(&self.rows[r]) {
                if !a.is_zero() {
                    *d -= cb * a;
                }
            }
            value += cb * &self.rhs[r];
        }
        self.reduced = reduced;
        self.value = value;
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.rows[r][j].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let nz: Vec<usize> = (0..self.rows[r].len())
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let factor = self.rows[i][j].clone();
            for &k in &nz {
                self.rows[i][k] -= &factor * &pivot_row[k];
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.reduced[j].is_zero() {
            let factor = self.reduced[j].clone();
            for &k in &nz {
                self.reduced[k] -= &factor * &pivot_row[k];
            }
            self.value += &factor * &pivot_rhs;
        }
        self.basis[r] = j;
    }

    /// Runs Bland's rule to optimality. Returns false when unbounded.
    fn run(&mut self) -> bool {
        loop {
            let Some(j) = (0..self.reduced.len())
                .find(|&j| self.allowed[j] && self.reduced[j].is_negative())
            else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }

    /// After a zero-valued phase one, pivots artificial variables out of the
    /// basis or drops their rows when they are redundant.
    fn drive_out_artificials(&mut self, first_artificial: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < first_artificial {
                r += 1;
                continue;
            }
            match (0..first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.rhs.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}
