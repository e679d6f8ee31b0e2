//! Exact rational linear programming.
//!
//! Dense two-phase primal simplex with Bland's rule. Decision variables are
//! free; bounds are ordinary constraints. Every returned point is checked by
//! substitution into all constraints before it leaves this module.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, fmt_rational, Q};
use crate::matrix::QMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn holds(self, lhs: &Q, rhs: &Q) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

impl Constraint {
    pub fn new(coeffs: Vec<Q>, relation: Relation, rhs: Q) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn is_satisfied(&self, x: &[Q]) -> bool {
        self.relation.holds(&dot(&self.coeffs, x), &self.rhs)
    }
}

/// `maximize objective . x` subject to `constraints`, with `x` free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    n_vars: usize,
    objective: Vec<Q>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Q>) -> Self {
        LinearProgram { n_vars: objective.len(), objective, constraints: Vec::new() }
    }

    pub fn add(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) -> Result<&mut Self> {
        if coeffs.len() != self.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, actual: coeffs.len() });
        }
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
        Ok(self)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn objective(&self) -> &[Q] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_feasible_point(&self, x: &[Q]) -> bool {
        x.len() == self.n_vars && self.constraints.iter().all(|c| c.is_satisfied(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Q, witness: Vec<Q> },
    Infeasible,
    /// `witness + t * ray` is feasible for all `t >= 0` and the objective
    /// grows without bound along `ray`.
    Unbounded { witness: Vec<Q>, ray: Vec<Q> },
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible => LpStatus::Infeasible,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Q> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[Q]> {
        match self {
            LpOutcome::Optimal { witness, .. } | LpOutcome::Unbounded { witness, .. } => Some(witness),
            LpOutcome::Infeasible => None,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    Simplex::build(lp, false).run(lp)
}

/// Like [`solve`], also returning a rendering of the tableau after setup and
/// after every pivot.
pub fn solve_traced(lp: &LinearProgram) -> (LpOutcome, Vec<String>) {
    let mut s = Simplex::build(lp, true);
    let out = s.run(lp);
    (out, s.trace)
}

/// Basis of `{x : row . x = 0 for every row}`, from the reduced row echelon form.
pub fn kernel(rows: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let Some(first) = rows.first() else {
        return Ok(Vec::new());
    };
    let width = first.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != width) {
        return Err(Error::DimensionMismatch { expected: width, actual: bad.len() });
    }
    Ok(QMatrix::from_rows(rows.to_vec())?.kernel())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Simplex {
    cols: Vec<Column>,
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    tracing: bool,
    trace: Vec<String>,
}

impl Simplex {
    fn build(lp: &LinearProgram, tracing: bool) -> Simplex {
        let n = lp.n_vars;
        let mut cols: Vec<Column> = (0..n).flat_map(|j| [Column::Plus(j), Column::Minus(j)]).collect();
        // normalize to nonnegative right-hand sides
        let normalized: Vec<(Vec<Q>, Relation, Q)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    (c.coeffs.iter().map(|x| -x).collect(), c.relation.flipped(), -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let m = normalized.len();
        let mut extra: Vec<(usize, Q, Column)> = Vec::new(); // (row, coefficient, kind)
        let mut basis_kind: Vec<usize> = vec![usize::MAX; m];
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            match rel {
                Relation::Le => extra.push((i, Q::one(), Column::Slack)),
                Relation::Ge => {
                    extra.push((i, -Q::one(), Column::Slack));
                    extra.push((i, Q::one(), Column::Artificial));
                }
                Relation::Eq => extra.push((i, Q::one(), Column::Artificial)),
            }
        }
        let base = cols.len();
        let total = base + extra.len();
        let mut rows = vec![vec![Q::zero(); total]; m];
        for (i, (coeffs, _, _)) in normalized.iter().enumerate() {
            for (j, a) in coeffs.iter().enumerate() {
                rows[i][2 * j] = a.clone();
                rows[i][2 * j + 1] = -a.clone();
            }
        }
        for (k, (i, coeff, kind)) in extra.iter().enumerate() {
            let col = base + k;
            rows[*i][col] = coeff.clone();
            cols.push(*kind);
            if coeff.is_positive() {
                basis_kind[*i] = col;
            }
        }
        let rhs = normalized.into_iter().map(|(_, _, b)| b).collect();
        Simplex { cols, rows, rhs, basis: basis_kind, tracing, trace: Vec::new() }
    }

    fn snapshot(&mut self, label: &str) {
        if !self.tracing {
            return;
        }
        let mut s = format!("{label}\n");
        let header: Vec<String> = self
            .cols
            .iter()
            .map(|c| match c {
                Column::Plus(j) => format!("x{j}+"),
                Column::Minus(j) => format!("x{j}-"),
                Column::Slack => "s".into(),
                Column::Artificial => "a".into(),
            })
            .collect();
        s.push_str(&format!("basis | {} | rhs\n", header.join(" ")));
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(fmt_rational).collect();
            s.push_str(&format!("{:>5} | {} | {}\n", self.basis[i], cells.join(" "), fmt_rational(&self.rhs[i])));
        }
        self.trace.push(s);
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . y` over the current basis; `allowed` masks columns
    /// that may enter. Returns the entering column when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> Option<usize> {
        loop {
            let mut entering = None;
            for j in 0..self.cols.len() {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let reduced = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(cost[j].clone(), |acc, (row, &b)| acc - &cost[b] * &row[j]);
                if reduced.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let e = entering?;
            let mut leaving: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &leaving {
                        None => true,
                        Some((li, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leaving else {
                return Some(e);
            };
            self.pivot(r, e);
            self.snapshot(&format!("pivot: column {e} enters at row {r}"));
        }
    }

    fn primal_point(&self, n: usize) -> Vec<Q> {
        let mut y = vec![Q::zero(); self.cols.len()];
        for (i, &b) in self.basis.iter().enumerate() {
            y[b] = self.rhs[i].clone();
        }
        self.to_original(&y, n)
    }

    fn to_original(&self, y: &[Q], n: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (j, c) in self.cols.iter().enumerate() {
            match c {
                Column::Plus(k) => x[*k] += &y[j],
                Column::Minus(k) => x[*k] -= &y[j],
                _ => {}
            }
        }
        x
    }

    fn run(&mut self, lp: &LinearProgram) -> LpOutcome {
        let n = lp.n_vars;
        self.snapshot("initial tableau");
        let ncols = self.cols.len();
        let all: Vec<bool> = vec![true; ncols];
        if self.cols.contains(&Column::Artificial) {
            let cost: Vec<Q> = self
                .cols
                .iter()
                .map(|c| if *c == Column::Artificial { -Q::one() } else { Q::zero() })
                .collect();
            let unbounded = self.optimize(&cost, &all);
            debug_assert!(unbounded.is_none(), "phase one is bounded");
            let infeasibility = self
                .basis
                .iter()
                .zip(&self.rhs)
                .filter(|(b, _)| self.cols[**b] == Column::Artificial)
                .fold(Q::zero(), |acc, (_, v)| acc + v);
            if infeasibility.is_positive() {
                log::debug!("phase one ended with infeasibility {}", fmt_rational(&infeasibility));
                return LpOutcome::Infeasible;
            }
            // drive zero-valued artificials out of the basis
            let mut i = 0;
            while i < self.rows.len() {
                if self.cols[self.basis[i]] == Column::Artificial {
                    let replacement = (0..ncols)
                        .find(|&j| self.cols[j] != Column::Artificial && !self.rows[i][j].is_zero());
                    match replacement {
                        Some(j) => self.pivot(i, j),
                        None => {
                            self.rows.remove(i);
                            self.rhs.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
            self.snapshot("after phase one");
        }
        let allowed: Vec<bool> = self.cols.iter().map(|c| *c != Column::Artificial).collect();
        let cost: Vec<Q> = self
            .cols
            .iter()
            .map(|c| match c {
                Column::Plus(k) => lp.objective[*k].clone(),
                Column::Minus(k) => -lp.objective[*k].clone(),
                _ => Q::zero(),
            })
            .collect();
        let unbounded = self.optimize(&cost, &allowed);
        let witness = self.primal_point(n);
        assert!(lp.is_feasible_point(&witness), "simplex produced an infeasible point");
        match unbounded {
            None => {
                let value = dot(&lp.objective, &witness);
                LpOutcome::Optimal { value, witness }
            }
            Some(e) => {
                let mut dir = vec![Q::zero(); ncols];
                dir[e] = Q::one();
                for (i, &b) in self.basis.iter().enumerate() {
                    dir[b] = -self.rows[i][e].clone();
                }
                let ray = self.to_original(&dir, n);
                debug_assert!(dot(&lp.objective, &ray).is_positive());
                debug_assert!({
                    let far: Vec<Q> = witness.iter().zip(&ray).map(|(w, r)| w + r).collect();
                    lp.is_feasible_point(&far)
                });
                LpOutcome::Unbounded { witness, ray }
            }
        }
    }
}
