use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::hpoly::HPolytope;
use super::lattice_polytope::LatticePolytope;
use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{rank, Rational};

/// Largest ground set a [`RankFunction`] may have.
pub const MAX_GROUND_SET: usize = 20;

/// `Δ(r, n)`: the convex hull of 0/1 vectors of length `n` with `r` ones.
pub fn hypersimplex(r: i64, n: i64) -> Result<LatticePolytope> {
    if r <= 0 || r >= n {
        return Err(Error::invalid(format!(
            "hypersimplex needs 0 < r < n, got r = {r}, n = {n}"
        )));
    }
    if n as usize > MAX_GROUND_SET {
        return Err(Error::Refused(format!(
            "hypersimplex with n = {n} is too large"
        )));
    }
    let (r, n) = (r as usize, n as usize);
    let points = combinations(n, r)
        .into_iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); n];
            for i in c {
                v[i] = BigInt::one();
            }
            v
        })
        .collect();
    LatticePolytope::new(points)
}

/// Dense table of ranks `d(I)` indexed by bitmask (bit `i` is block `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    n: usize,
    r: u64,
    block_dims: Vec<u64>,
    d: Vec<u64>,
}

impl RankFunction {
    /// `d` must have `2^n` entries.
    pub fn new(n: usize, r: u64, block_dims: Vec<u64>, d: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::invalid(format!(
                "ground set size must be in 1..={MAX_GROUND_SET}, got {n}"
            )));
        }
        if block_dims.len() != n || block_dims.contains(&0) {
            return Err(Error::invalid("need n positive block dimensions"));
        }
        if d.len() != 1 << n {
            return Err(Error::invalid("rank table must have 2^n entries"));
        }
        let full = (1usize << n) - 1;
        if d[0] != 0 {
            return Err(Error::invalid("d(∅) must be 0"));
        }
        if d[full] != r {
            return Err(Error::invalid(format!(
                "d(full set) = {} but r = {r}",
                d[full]
            )));
        }
        for mask in 0..=full {
            let cap: u64 = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| block_dims[i])
                .sum();
            if d[mask] > cap {
                return Err(Error::invalid(format!(
                    "d({}) = {} exceeds the block dimension bound {cap}",
                    mask_label(mask, n),
                    d[mask]
                )));
            }
            for i in 0..n {
                if mask >> i & 1 == 0 && d[mask] > d[mask | 1 << i] {
                    return Err(Error::invalid(format!(
                        "d is not monotone at {} ⊂ {}",
                        mask_label(mask, n),
                        mask_label(mask | 1 << i, n)
                    )));
                }
            }
        }
        Ok(RankFunction {
            n,
            r,
            block_dims,
            d,
        })
    }

    /// Builds the table from sparse entries; unspecified subsets get 0.
    pub fn from_entries(
        n: usize,
        r: u64,
        block_dims: Vec<u64>,
        entries: impl IntoIterator<Item = (usize, u64)>,
    ) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::invalid(format!(
                "ground set size must be in 1..={MAX_GROUND_SET}, got {n}"
            )));
        }
        let mut d = vec![0; 1 << n];
        for (mask, v) in entries {
            if mask >= d.len() {
                return Err(Error::invalid(format!(
                    "bitmask {mask} outside the ground set"
                )));
            }
            d[mask] = v;
        }
        Self::new(n, r, block_dims, d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn block_dims(&self) -> &[u64] {
        &self.block_dims
    }

    pub fn get(&self, mask: usize) -> u64 {
        self.d[mask]
    }

    pub fn table(&self) -> &[u64] {
        &self.d
    }

    fn violates(&self, i: usize, j: usize) -> bool {
        self.d[i & j] + self.d[i | j] < self.d[i] + self.d[j]
    }

    /// First pair `(I, J)` with `I < J` as bitmasks (ordered by `I`, then `J`)
    /// such that `d(I ∩ J) + d(I ∪ J) < d(I) + d(J)`, or `None`.
    pub fn check_submodular(&self, exec: Execution) -> Option<(usize, usize)> {
        let size = 1usize << self.n;
        // Local submodularity over all squares is equivalent to the global
        // condition, so a clean table is settled in O(n² 2^n).
        let local_ok = exec
            .find_map_first(&(0..size).collect::<Vec<_>>(), |&s| {
                (0..self.n)
                    .filter(|&a| s >> a & 1 == 0)
                    .any(|a| {
                        (a + 1..self.n)
                            .filter(|&b| s >> b & 1 == 0)
                            .any(|b| self.violates(s | 1 << a, s | 1 << b))
                    })
                    .then_some(())
            })
            .is_none();
        if local_ok {
            return None;
        }
        let masks: Vec<usize> = (0..size).collect();
        exec.find_map_first(&masks, |&i| {
            (i + 1..size).find(|&j| self.violates(i, j)).map(|j| (i, j))
        })
        .map(|(_, pair)| pair)
    }
}

/// Elements of a bitmask as a 1-based set, e.g. `{1,3}`.
pub fn mask_label(mask: usize, n: usize) -> String {
    let items: Vec<String> = (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Ranks `d(I) = dim(V ∩ ⊕_{i∈I} E_i)` of the row space `V` of `basis`,
/// with coordinates grouped into consecutive blocks of sizes `block_dims`.
pub fn rank_function_of_subspace(
    basis: &[Vec<Rational>],
    block_dims: &[u64],
) -> Result<RankFunction> {
    let n = block_dims.len();
    if n == 0 || n > MAX_GROUND_SET {
        return Err(Error::invalid(format!(
            "number of blocks must be in 1..={MAX_GROUND_SET}"
        )));
    }
    let ambient: u64 = block_dims.iter().sum();
    if basis.iter().any(|row| row.len() as u64 != ambient) {
        return Err(Error::invalid(format!(
            "basis rows must have length {ambient} (sum of block dimensions)"
        )));
    }
    let k = basis.len();
    if rank(basis) != k {
        return Err(Error::invalid("basis rows are linearly dependent"));
    }
    let mut offsets = Vec::with_capacity(n);
    let mut acc = 0usize;
    for &e in block_dims {
        offsets.push(acc..acc + e as usize);
        acc += e as usize;
    }
    // A vector of V lies in ⊕_{i∈I} E_i iff its coordinates outside the
    // blocks of I vanish, so d(I) = k − rank of those columns.
    let d = Execution::default().map_range(1 << n, |mask| {
        let cols: Vec<usize> = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .flat_map(|i| offsets[i].clone())
            .collect();
        let sub: Vec<Vec<Rational>> = basis
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        (k - if cols.is_empty() { 0 } else { rank(&sub) }) as u64
    });
    RankFunction::new(n, k as u64, block_dims.to_vec(), d)
}

/// `{0 ≤ x_i ≤ dim E_i, Σ x_i = r, Σ_{i∈I} x_i ≥ d_I}` with its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedMatroidPolytope {
    pub polytope: HPolytope,
    pub vertices: Vec<Vec<Rational>>,
    pub empty: bool,
}

pub fn generalized_matroid_polytope(rf: &RankFunction) -> Result<GeneralizedMatroidPolytope> {
    let n = rf.n;
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    };
    let mut inequalities = Vec::new();
    for i in 0..n {
        inequalities.push((unit(i), Rational::zero()));
        let neg: Vec<Rational> = unit(i).into_iter().map(|x| -x).collect();
        inequalities.push((neg, -Rational::from_integer(rf.block_dims[i].into())));
    }
    // Rows with d_I = 0 follow from x ≥ 0 and are left out of the solve.
    let mut essential = inequalities.clone();
    for mask in 1..(1usize << n) {
        let a: Vec<Rational> = (0..n)
            .map(|i| Rational::from_integer((mask >> i & 1).into()))
            .collect();
        let row = (a, Rational::from_integer(rf.d[mask].into()));
        if rf.d[mask] > 0 {
            essential.push(row.clone());
        }
        inequalities.push(row);
    }
    let equations = vec![(
        vec![Rational::one(); n],
        Rational::from_integer(rf.r.into()),
    )];
    let reduced = HPolytope::new(n, essential, equations.clone())?;
    let vertices = reduced.vertices()?;
    let empty = reduced.is_empty()?;
    if empty != vertices.is_empty() {
        return Err(Error::Internal(
            "LP and vertex enumeration disagree on emptiness".into(),
        ));
    }
    Ok(GeneralizedMatroidPolytope {
        polytope: HPolytope::new(n, inequalities, equations)?,
        vertices,
        empty,
    })
}
