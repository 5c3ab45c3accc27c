use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Signed;

use super::subdivision::PeriodicSubdivision;
use crate::error::{Error, Result};
use crate::lattice::{IntegerMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlEquivalence {
    /// `U · d1 = d2`; `word_length` generators were needed.
    Equivalent {
        witness: IntegerMatrix,
        word_length: usize,
    },
    /// Inconclusive: no witness among words of the searched length.
    NotFound { reason: String },
}

/// Cell count, then per cell (volume, vertex count, marked count), sorted.
type CellProfile = (Rational, usize, usize);

fn invariants(d: &PeriodicSubdivision) -> Result<(BigInt, Vec<CellProfile>)> {
    let mut cells = d
        .cells()
        .iter()
        .map(|c| Ok((c.normalized_volume()?, c.vertices.len(), c.marking.len())))
        .collect::<Result<Vec<_>>>()?;
    cells.sort();
    Ok((d.period_basis().determinant().abs(), cells))
}

/// Transvections `I ± E_ij`, transpositions and sign flips.
fn generators(g: usize) -> Vec<IntegerMatrix> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in 0..g {
            if i == j {
                continue;
            }
            for s in [1, -1] {
                let mut m = IntegerMatrix::identity(g);
                m.set(i, j, BigInt::from(s));
                out.push(m);
            }
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            let mut m = IntegerMatrix::identity(g);
            m.swap_rows(i, j);
            out.push(m);
        }
    }
    for i in 0..g {
        let mut m = IntegerMatrix::identity(g);
        m.negate_row(i);
        out.push(m);
    }
    out
}

/// Breadth-first search for `U ∈ GL(g, ℤ)` with `U · d1 = d2` among words of
/// length at most `word_bound`. Subdivisions with different invariants are
/// rejected without searching.
pub fn gl_equivalent(
    d1: &PeriodicSubdivision,
    d2: &PeriodicSubdivision,
    word_bound: usize,
) -> Result<GlEquivalence> {
    let g = d1.g();
    if d2.g() != g {
        return Err(Error::invalid("subdivisions have different dimensions"));
    }
    if invariants(d1)? != invariants(d2)? {
        return Ok(GlEquivalence::NotFound {
            reason: "invariants differ".into(),
        });
    }
    let gens = generators(g);
    let mut depth: BTreeMap<Vec<Vec<BigInt>>, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let id = IntegerMatrix::identity(g);
    depth.insert(id.to_rows(), 0);
    queue.push_back(id);
    while let Some(u) = queue.pop_front() {
        let k = depth[&u.to_rows()];
        if &d1.transform(&u)? == d2 {
            return Ok(GlEquivalence::Equivalent {
                witness: u,
                word_length: k,
            });
        }
        if k == word_bound {
            continue;
        }
        for s in &gens {
            let next = s.mul(&u);
            let key = next.to_rows();
            if let std::collections::btree_map::Entry::Vacant(e) = depth.entry(key) {
                e.insert(k + 1);
                queue.push_back(next);
            }
        }
    }
    Ok(GlEquivalence::NotFound {
        reason: format!("no witness among words of length ≤ {word_bound}"),
    })
}
