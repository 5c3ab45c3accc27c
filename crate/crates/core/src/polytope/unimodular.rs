use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{determinant, Rational};

/// Vectors in `ℤ^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSystem {
    r: usize,
    vectors: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnimodularCheck {
    Unimodular,
    /// The first `r`-subset (lexicographic) whose minor is outside `{0, ±1}`.
    Witness {
        subset: Vec<usize>,
        minor: BigInt,
    },
}

impl VectorSystem {
    pub fn new(r: usize, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != r) {
            return Err(Error::invalid(format!("every vector must have length {r}")));
        }
        Ok(VectorSystem { r, vectors })
    }

    pub fn from_i64(r: usize, vectors: &[&[i64]]) -> Result<Self> {
        Self::new(
            r,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    /// True when the vectors span `ℚ^r` (a necessary condition checked, not required).
    pub fn is_spanning(&self) -> bool {
        let rows: Vec<Vec<Rational>> = self
            .vectors
            .iter()
            .map(|v| v.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        crate::lattice::rank(&rows) == self.r
    }

    pub fn minor(&self, subset: &[usize]) -> BigInt {
        let m: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| {
                self.vectors[i]
                    .iter()
                    .cloned()
                    .map(Rational::from_integer)
                    .collect()
            })
            .collect();
        determinant(&m).to_integer()
    }

    /// Checks all `C(n, r)` maximal minors.
    pub fn is_unimodular(&self, exec: Execution) -> UnimodularCheck {
        if self.r == 0 {
            return UnimodularCheck::Unimodular;
        }
        let subsets = combinations(self.vectors.len(), self.r);
        exec.find_map_first(&subsets, |s| {
            let m = self.minor(s);
            (!(m.is_zero() || m.abs().is_one())).then_some(m)
        })
        .map_or(UnimodularCheck::Unimodular, |(i, minor)| {
            UnimodularCheck::Witness {
                subset: subsets[i].clone(),
                minor,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems() {
        let vs = VectorSystem::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(
            vs.is_unimodular(Execution::Sequential),
            UnimodularCheck::Unimodular
        );
        let vs = VectorSystem::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        assert_eq!(
            vs.is_unimodular(Execution::Parallel),
            UnimodularCheck::Witness {
                subset: vec![0, 1],
                minor: BigInt::from(2)
            }
        );
        assert!(VectorSystem::from_i64(2, &[&[1]]).is_err());
    }
}
