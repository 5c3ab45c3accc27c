use crate::error::{Error, Result};
use crate::lattice::{
    lp_feasible, vertices_of_inequalities, Constraint, LpOutcome, LpProblem, Rational,
};

/// Polytope given by `a · x ≥ b` inequalities and `a · x = b` equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub inequalities: Vec<(Vec<Rational>, Rational)>,
    pub equations: Vec<(Vec<Rational>, Rational)>,
}

impl HPolytope {
    pub fn new(
        dim: usize,
        inequalities: Vec<(Vec<Rational>, Rational)>,
        equations: Vec<(Vec<Rational>, Rational)>,
    ) -> Result<Self> {
        if inequalities
            .iter()
            .chain(&equations)
            .any(|(a, _)| a.len() != dim)
        {
            return Err(Error::invalid("constraint width does not match dimension"));
        }
        Ok(HPolytope {
            dim,
            inequalities,
            equations,
        })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let val = |a: &[Rational]| -> Rational { a.iter().zip(x).map(|(p, q)| p * q).sum() };
        self.inequalities.iter().all(|(a, b)| val(a) >= *b)
            && self.equations.iter().all(|(a, b)| val(a) == *b)
    }

    /// Exact feasibility by linear programming; returns a point when nonempty.
    pub fn feasible_point(&self) -> Result<Option<Vec<Rational>>> {
        let mut lp = LpProblem::new(self.dim);
        for (a, b) in &self.inequalities {
            lp.push(Constraint::ge(a.clone(), b.clone()));
        }
        for (a, b) in &self.equations {
            lp.push(Constraint::eq(a.clone(), b.clone()));
        }
        Ok(match lp_feasible(&lp)? {
            LpOutcome::Feasible(x) => Some(x),
            LpOutcome::Infeasible => None,
        })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.feasible_point()?.is_none())
    }

    /// Vertices in lexicographic order (empty when the polytope is empty).
    pub fn vertices(&self) -> Result<Vec<Vec<Rational>>> {
        vertices_of_inequalities(self.dim, &self.inequalities, &self.equations)
    }
}
