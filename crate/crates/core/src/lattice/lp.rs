//! Exact two-phase simplex with Bland's rule, used only to decide feasibility
//! of systems that may contain strict inequalities.
//!
//! Strict rows `a·x > b` become `a·x − b ≥ t` with a shared slack `t ≤ 1`
//! that is maximized; the system is feasible iff the optimum is positive.

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `coeffs · x ≥ rhs` (or `>` when strict)
    Ge,
    /// `coeffs · x = rhs`
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
    pub strict: bool,
}

impl Constraint {
    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs,
            strict: false,
        }
    }

    pub fn gt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs,
            strict: true,
        }
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation: Relation::Eq,
            rhs,
            strict: false,
        }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match (self.relation, self.strict) {
            (Relation::Eq, _) => lhs == self.rhs,
            (Relation::Ge, false) => lhs >= self.rhs,
            (Relation::Ge, true) => lhs > self.rhs,
        }
    }
}

/// Variables are free (unrestricted in sign).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LpProblem {
    pub variables: usize,
    pub constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(variables: usize) -> Self {
        LpProblem {
            variables,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// A point satisfying every constraint exactly (strict rows strictly).
    Feasible(Vec<Rational>),
    Infeasible,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible(x) => Some(x),
            LpOutcome::Infeasible => None,
        }
    }
}

pub fn lp_feasible(p: &LpProblem) -> Result<LpOutcome> {
    for (i, c) in p.constraints.iter().enumerate() {
        if c.coeffs.len() != p.variables {
            return Err(Error::invalid(format!(
                "constraint {i} has {} coefficients, expected {}",
                c.coeffs.len(),
                p.variables
            )));
        }
        if c.strict && c.relation == Relation::Eq {
            return Err(Error::invalid(format!(
                "constraint {i} is a strict equality"
            )));
        }
    }
    let has_strict = p.constraints.iter().any(|c| c.strict);
    let tableau = Tableau::build(p, has_strict);
    let Some(mut t) = tableau.phase_one() else {
        return Ok(LpOutcome::Infeasible);
    };
    if has_strict {
        t.maximize_slack();
        if !t.slack_value().is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
    }
    let x: Vec<Rational> = (0..p.variables)
        .map(|j| t.value(2 * j) - t.value(2 * j + 1))
        .collect();
    debug_assert!(p.constraints.iter().all(|c| c.is_satisfied_by(&x)));
    if !p.constraints.iter().all(|c| c.is_satisfied_by(&x)) {
        return Err(Error::Internal(
            "simplex certificate fails re-substitution".into(),
        ));
    }
    Ok(LpOutcome::Feasible(x))
}

/// Dense tableau for `A z = b, z ≥ 0` with columns laid out as
/// `[x⁺, x⁻ per variable] [t⁺, t⁻] [surplus per ≥ row] [t-bound slack] [artificials]`.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    first_artificial: usize,
    slack_col: usize,
}

impl Tableau {
    fn build(p: &LpProblem, has_strict: bool) -> Self {
        let nx = 2 * p.variables;
        let nt = if has_strict { 2 } else { 0 };
        let n_ge = p
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Ge)
            .count();
        let n_bound = usize::from(has_strict);
        let m = p.constraints.len() + n_bound;
        let first_artificial = nx + nt + n_ge + n_bound;
        let ncols = first_artificial + m;
        let slack_col = nx;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut surplus = nx + nt;
        for c in &p.constraints {
            let mut row = vec![Rational::zero(); ncols];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[2 * j] = a.clone();
                row[2 * j + 1] = -a.clone();
            }
            if c.relation == Relation::Ge {
                row[surplus] = -Rational::one();
                surplus += 1;
                if c.strict {
                    row[slack_col] = -Rational::one();
                    row[slack_col + 1] = Rational::one();
                }
            }
            rows.push(row);
            rhs.push(c.rhs.clone());
        }
        if has_strict {
            // t⁺ − t⁻ + s = 1
            let mut row = vec![Rational::zero(); ncols];
            row[slack_col] = Rational::one();
            row[slack_col + 1] = -Rational::one();
            row[first_artificial - 1] = Rational::one();
            rows.push(row);
            rhs.push(Rational::one());
        }
        for (i, (row, b)) in rows.iter_mut().zip(rhs.iter_mut()).enumerate() {
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                *b = -b.clone();
            }
            row[first_artificial + i] = Rational::one();
        }
        Tableau {
            rows,
            rhs,
            basis: (first_artificial..ncols).collect(),
            ncols,
            first_artificial,
            slack_col,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · z` over the current feasible basis, never entering
    /// columns at or beyond `col_limit`. Dantzig's rule, falling back to
    /// Bland's rule after a run of degenerate pivots so cycling cannot occur.
    fn optimize(&mut self, cost: &[Rational], col_limit: usize) {
        // Reduced costs `cost_j − Σ cost_B(i) · a_ij`, kept up to date by pivoting.
        let mut reduced = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *r -= &cost[b] * a;
                }
            }
        }
        let mut degenerate_run = 0usize;
        loop {
            let candidates = (0..col_limit).filter(|&j| reduced[j].is_positive());
            let entering = if degenerate_run < 50 {
                candidates.fold(None, |best: Option<usize>, j| match best {
                    Some(b) if reduced[b] >= reduced[j] => Some(b),
                    _ => Some(j),
                })
            } else {
                candidates.min()
            };
            let Some(c) = entering else {
                return;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                // Unbounded direction; callers only optimize bounded objectives.
                return;
            };
            if ratio.is_zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, c);
            let f = reduced[c].clone();
            for (x, p) in reduced.iter_mut().zip(&self.rows[r]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }

    fn phase_one(mut self) -> Option<Self> {
        let mut cost = vec![Rational::zero(); self.ncols];
        for c in cost.iter_mut().skip(self.first_artificial) {
            *c = -Rational::one();
        }
        self.optimize(&cost, self.ncols);
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rhs)
            .filter(|(&b, _)| b >= self.first_artificial)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return None;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
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
        Some(self)
    }

    fn maximize_slack(&mut self) {
        let mut cost = vec![Rational::zero(); self.ncols];
        cost[self.slack_col] = Rational::one();
        cost[self.slack_col + 1] = -Rational::one();
        self.optimize(&cost, self.first_artificial);
    }

    fn value(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rational::zero, |i| self.rhs[i].clone())
    }

    fn slack_value(&self) -> Rational {
        self.value(self.slack_col) - self.value(self.slack_col + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn unit_box_is_feasible() {
        let mut p = LpProblem::new(1);
        p.push(Constraint::ge(v(&[1]), rat(0)));
        p.push(Constraint::ge(v(&[-1]), rat(-1)));
        let x = lp_feasible(&p).unwrap();
        let x = x.point().unwrap();
        assert!(x[0] >= rat(0) && x[0] <= rat(1));
    }

    #[test]
    fn strict_contradiction() {
        let mut p = LpProblem::new(1);
        p.push(Constraint::gt(v(&[1]), rat(0)));
        p.push(Constraint::gt(v(&[-1]), rat(0)));
        assert_eq!(lp_feasible(&p).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn strict_feasible_interior() {
        // 0 < x < 1, y = 2x
        let mut p = LpProblem::new(2);
        p.push(Constraint::gt(v(&[1, 0]), rat(0)));
        p.push(Constraint::gt(v(&[-1, 0]), rat(-1)));
        p.push(Constraint::eq(v(&[2, -1]), rat(0)));
        let out = lp_feasible(&p).unwrap();
        let x = out.point().unwrap();
        assert!(x[0] > rat(0) && x[0] < rat(1));
        assert_eq!(x[1], &x[0] * rat(2));
    }

    #[test]
    fn strict_touching_boundary_is_infeasible() {
        // x ≥ 0, x ≤ 0, x > 0
        let mut p = LpProblem::new(1);
        p.push(Constraint::ge(v(&[1]), rat(0)));
        p.push(Constraint::ge(v(&[-1]), rat(0)));
        p.push(Constraint::gt(v(&[1]), rat(0)));
        assert_eq!(lp_feasible(&p).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn equality_infeasible() {
        let mut p = LpProblem::new(2);
        p.push(Constraint::eq(v(&[1, 1]), rat(1)));
        p.push(Constraint::eq(v(&[1, 1]), rat(2)));
        assert_eq!(lp_feasible(&p).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn malformed_dimensions() {
        let mut p = LpProblem::new(2);
        p.push(Constraint::ge(v(&[1]), rat(0)));
        assert!(lp_feasible(&p).is_err());
    }
}
