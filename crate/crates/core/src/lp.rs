//! Small exact linear-programming solver.
//!
//! Dense two-phase simplex over `BigRational` with Bland's pivoting rule, so it
//! cannot cycle on degenerate problems. Sized for the certificate problems in
//! this crate (tens of variables and constraints), not for general use.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
struct Constraint {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

/// `maximize c·x` subject to linear constraints; variables are nonnegative
/// unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    constraints: Vec<Constraint>,
    objective: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        values: Vec<Rational>,
        objective: Rational,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn values(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { values, .. } => Some(values),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) {
        assert_eq!(objective.len(), self.num_vars, "objective width");
        self.objective = Some(objective);
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    /// rows × (cols + 1); the last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    first_artificial: usize,
    /// Column of each original variable's positive part and, if free, its negative part.
    var_columns: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut var_columns = Vec::with_capacity(lp.num_vars);
        let mut next = 0;
        for &free in &lp.free {
            if free {
                var_columns.push((next, Some(next + 1)));
                next += 2;
            } else {
                var_columns.push((next, None));
                next += 1;
            }
        }
        let slack_count = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let first_artificial = next + slack_count;
        let m = lp.constraints.len();
        let cols = first_artificial + m;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = next;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols + 1];
            for (v, coeff) in c.coeffs.iter().enumerate() {
                let (pos, neg) = var_columns[v];
                row[pos] = coeff.clone();
                if let Some(neg) = neg {
                    row[neg] = -coeff.clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[cols] = c.rhs.clone();
            if row[cols].is_negative() {
                for e in row.iter_mut() {
                    *e = -e.clone();
                }
            }
            row[first_artificial + i] = Rational::from_integer(1.into());
            rows.push(row);
            basis.push(first_artificial + i);
        }
        Tableau {
            rows,
            basis,
            cols,
            first_artificial,
            var_columns,
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        // Phase 1: maximize -Σ artificials.
        let mut phase1 = vec![Rational::zero(); self.cols];
        for c in phase1.iter_mut().skip(self.first_artificial) {
            *c = Rational::from_integer((-1).into());
        }
        let all = vec![true; self.cols];
        // Phase 1 is bounded above by zero, so it never reports unbounded.
        let _ = self.optimize(&phase1, &all);
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rows)
            .filter(|(b, _)| **b >= self.first_artificial)
            .map(|(_, row)| row[self.cols].clone())
            .sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        self.expel_artificials();

        let allowed: Vec<bool> = (0..self.cols).map(|j| j < self.first_artificial).collect();
        let mut cost = vec![Rational::zero(); self.cols];
        if let Some(obj) = &lp.objective {
            for (v, c) in obj.iter().enumerate() {
                let (pos, neg) = self.var_columns[v];
                cost[pos] = c.clone();
                if let Some(neg) = neg {
                    cost[neg] = -c.clone();
                }
            }
            if !self.optimize(&cost, &allowed) {
                return LpOutcome::Unbounded;
            }
        }

        let mut column_values = vec![Rational::zero(); self.cols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            column_values[b] = row[self.cols].clone();
        }
        let values: Vec<Rational> = self
            .var_columns
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &column_values[pos] - &column_values[neg],
                None => column_values[pos].clone(),
            })
            .collect();
        let objective = match &lp.objective {
            Some(obj) => obj.iter().zip(&values).map(|(c, v)| c * v).sum(),
            None => Rational::zero(),
        };
        LpOutcome::Optimal { values, objective }
    }

    /// Runs simplex iterations with Bland's rule. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        reduced -= &cost[b] * &row[j];
                    }
                }
                if reduced.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[j];
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((i, _)) = leaving else {
                return false;
            };
            self.pivot(i, j);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for e in self.rows[r].iter_mut() {
            if !e.is_zero() {
                *e *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Pivots zero-level artificial variables out of the basis, dropping
    /// rows that turn out to be redundant.
    fn expel_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn small_maximization() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let mut lp = LinearProgram::new(2);
        lp.add_constraint(ints(&[1, 1]), Relation::Le, int(4));
        lp.add_constraint(ints(&[1, 3]), Relation::Le, int(6));
        lp.add_constraint(ints(&[1, 0]), Relation::Le, int(3));
        lp.maximize(ints(&[3, 2]));
        match lp.solve() {
            LpOutcome::Optimal { values, objective } => {
                assert_eq!(values, ints(&[3, 1]));
                assert_eq!(objective, int(11));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(ints(&[1]), Relation::Ge, int(2));
        lp.add_constraint(ints(&[1]), Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.add_constraint(ints(&[1, -1]), Relation::Le, int(1));
        lp.maximize(ints(&[1, 0]));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // x free, x + y = -3, y >= 0, minimize y  =>  x = -3
        let mut lp = LinearProgram::new(2);
        lp.set_free(0);
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, int(-3));
        lp.maximize(ints(&[0, -1]));
        let values = lp.solve().values().unwrap().to_vec();
        assert_eq!(values, ints(&[-3, 0]));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(3);
        lp.add_constraint(ints(&[1, 1, 1]), Relation::Eq, int(1));
        lp.add_constraint(ints(&[2, 2, 2]), Relation::Eq, int(2));
        lp.add_constraint(ints(&[1, -1, 0]), Relation::Eq, int(0));
        lp.maximize(ints(&[0, 0, 1]));
        match lp.solve() {
            LpOutcome::Optimal { values, .. } => assert_eq!(values, ints(&[0, 0, 1])),
            other => panic!("{other:?}"),
        }
        let mut lp = LinearProgram::new(2);
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, int(1));
        lp.add_constraint(ints(&[1, -1]), Relation::Eq, int(0));
        assert_eq!(
            lp.solve().values().unwrap(),
            &[ratio(1, 2), ratio(1, 2)][..]
        );
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example (Beale) for the textbook largest-coefficient rule.
        let mut lp = LinearProgram::new(4);
        lp.add_constraint(
            vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(
            vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(ints(&[0, 0, 1, 0]), Relation::Le, int(1));
        lp.maximize(vec![ratio(3, 4), int(-150), ratio(1, 50), int(-6)]);
        match lp.solve() {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, ratio(1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
