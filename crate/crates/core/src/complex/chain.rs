use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{smith_normal_form, IntegerMatrix};

/// A bounded chain complex of free abelian groups `C_0 ← C_1 ← …`.
///
/// Matrices act on row vectors: `boundary(p)` has `rank(p)` rows and
/// `rank(p − 1)` columns, and `x ↦ x · boundary(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

/// `ℤ^rank ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |a, b| a * b)
    }
}

impl ChainComplex {
    /// `boundaries[p − 1]` is the map `C_p → C_{p−1}` for `p ≥ 1`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::invalid("need one boundary map per positive degree"));
        }
        for (p, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[p + 1] || d.cols() != ranks[p] {
                return Err(Error::invalid(format!(
                    "boundary in degree {} has shape {}×{}, expected {}×{}",
                    p + 1,
                    d.rows(),
                    d.cols(),
                    ranks[p + 1],
                    ranks[p]
                )));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// Highest degree plus one.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, p: usize) -> usize {
        self.ranks.get(p).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// The map `C_p → C_{p−1}`; `None` for `p = 0` or beyond the top degree.
    pub fn boundary(&self, p: usize) -> Option<&IntegerMatrix> {
        p.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// True when every composite `C_{p+1} → C_p → C_{p−1}` vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(p, &r)| if p % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// `H_p` for every degree `p < len()`.
    pub fn homology(&self, exec: Execution) -> Vec<HomologyGroup> {
        let snfs = exec.map(&self.boundaries, smith_normal_form);
        (0..self.ranks.len())
            .map(|p| {
                let out_rank = if p == 0 { 0 } else { snfs[p - 1].rank() };
                let (in_rank, torsion) = snfs
                    .get(p)
                    .map_or((0, Vec::new()), |s| (s.rank(), s.torsion()));
                HomologyGroup {
                    rank: self.ranks[p] - out_rank - in_rank,
                    torsion,
                }
            })
            .collect()
    }

    /// Mapping cone of a chain map `ψ: other → self`, with
    /// `K_n = C_n ⊕ other_{n−1}` and `∂(x, y) = (∂x + ψ(y), −∂'y)`.
    /// `psi[p]` is the map `other_p → C_p`.
    pub fn mapping_cone(&self, other: &ChainComplex, psi: &[IntegerMatrix]) -> Result<Self> {
        let top = self.len().max(other.len() + 1);
        for (p, m) in psi.iter().enumerate() {
            if m.rows() != other.rank(p) || m.cols() != self.rank(p) {
                return Err(Error::invalid(format!(
                    "chain map has wrong shape in degree {p}"
                )));
            }
        }
        let psi_at = |p: usize| {
            psi.get(p)
                .cloned()
                .unwrap_or_else(|| IntegerMatrix::zeros(other.rank(p), self.rank(p)))
        };
        let or_zeros = |m: Option<&IntegerMatrix>, rows: usize, cols: usize| {
            m.cloned()
                .unwrap_or_else(|| IntegerMatrix::zeros(rows, cols))
        };
        let ranks: Vec<usize> = (0..top)
            .map(|n| self.rank(n) + if n == 0 { 0 } else { other.rank(n - 1) })
            .collect();
        let mut boundaries = Vec::with_capacity(top.saturating_sub(1));
        for n in 1..top {
            let mut d = IntegerMatrix::zeros(ranks[n], ranks[n - 1]);
            let (cn, cn1) = (self.rank(n), self.rank(n - 1));
            let dn = or_zeros(self.boundary(n), cn, cn1);
            for i in 0..cn {
                for j in 0..cn1 {
                    d.set(i, j, dn.get(i, j).clone());
                }
            }
            let ps = psi_at(n - 1);
            for i in 0..other.rank(n - 1) {
                for j in 0..cn1 {
                    d.set(cn + i, j, ps.get(i, j).clone());
                }
            }
            if n >= 2 {
                let on = or_zeros(other.boundary(n - 1), other.rank(n - 1), other.rank(n - 2));
                for i in 0..other.rank(n - 1) {
                    for j in 0..other.rank(n - 2) {
                        d.set(cn + i, cn1 + j, -on.get(i, j));
                    }
                }
            }
            boundaries.push(d);
        }
        ChainComplex::new(ranks, boundaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_homology() {
        // triangle boundary: three vertices, three edges
        let d1 = IntegerMatrix::from_i64(&[&[-1, 1, 0], &[0, -1, 1], &[-1, 0, 1]]);
        let c = ChainComplex::new(vec![3, 3], vec![d1]).unwrap();
        let h = c.homology(Execution::Sequential);
        assert_eq!(
            h[0],
            HomologyGroup {
                rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(
            h[1],
            HomologyGroup {
                rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn torsion_and_cone() {
        let d1 = IntegerMatrix::from_i64(&[&[2]]);
        let c = ChainComplex::new(vec![1, 1], vec![d1]).unwrap();
        let h = c.homology(Execution::Parallel);
        assert_eq!(h[0].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[1].rank, 0);
        // cone of the identity is acyclic
        let id = ChainComplex::new(vec![1], vec![]).unwrap();
        let cone = id.mapping_cone(&id, &[IntegerMatrix::identity(1)]).unwrap();
        assert!(cone.squares_to_zero());
        assert!(cone
            .homology(Execution::Sequential)
            .iter()
            .all(HomologyGroup::is_trivial));
        assert!(ChainComplex::new(vec![1, 2], vec![IntegerMatrix::zeros(1, 1)]).is_err());
    }
}
