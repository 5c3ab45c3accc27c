use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    convex_hull, hermite_normal_form, solve, to_integer_vec, vertices_of_inequalities,
    IntegerMatrix, Rational,
};
use crate::polytope::volume;

/// One representative of a `Γ`-orbit of maximal cells.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodicCell {
    /// Sorted vertices.
    pub vertices: Vec<Vec<Rational>>,
    /// Sorted marked lattice points.
    pub marking: Vec<Vec<BigInt>>,
}

/// A `Γ`-periodic subdivision of `ℝ^g` given by orbit representatives whose
/// lexicographically smallest vertex lies in the half-open box spanned by
/// the period basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSubdivision {
    g: usize,
    period_basis: IntegerMatrix,
    cells: Vec<PeriodicCell>,
}

fn to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// `Γ`-coordinates `t` with `x = t · Γ`.
fn gamma_coords(basis: &IntegerMatrix, x: &[Rational]) -> Vec<Rational> {
    let cols: Vec<Vec<Rational>> = (0..basis.cols())
        .map(|j| {
            (0..basis.rows())
                .map(|i| Rational::from_integer(basis.get(i, j).clone()))
                .collect()
        })
        .collect();
    solve(&cols, x).expect("period basis has full rank")
}

/// `Σ_i t_i γ_i` for an integer vector `t`.
fn combine(basis: &IntegerMatrix, t: &[BigInt]) -> Vec<BigInt> {
    (0..basis.cols())
        .map(|j| {
            t.iter()
                .enumerate()
                .map(|(i, ti)| ti * basis.get(i, j))
                .sum()
        })
        .collect()
}

impl PeriodicCell {
    pub fn new(mut vertices: Vec<Vec<Rational>>, mut marking: Vec<Vec<BigInt>>) -> Self {
        vertices.sort();
        vertices.dedup();
        marking.sort();
        marking.dedup();
        PeriodicCell { vertices, marking }
    }

    pub(crate) fn translate(&self, shift: &[BigInt]) -> Self {
        let rs = to_rat(shift);
        PeriodicCell::new(
            self.vertices
                .iter()
                .map(|v| v.iter().zip(&rs).map(|(a, b)| a + b).collect())
                .collect(),
            self.marking
                .iter()
                .map(|m| m.iter().zip(shift).map(|(a, b)| a + b).collect())
                .collect(),
        )
    }

    /// The translate whose smallest vertex has `Γ`-coordinates in `[0, 1)^g`.
    pub(crate) fn canonical(&self, basis: &IntegerMatrix) -> Self {
        let t = gamma_coords(basis, &self.vertices[0]);
        let shift: Vec<BigInt> = combine(
            basis,
            &t.iter()
                .map(|x| -x.floor().to_integer())
                .collect::<Vec<_>>(),
        );
        self.translate(&shift)
    }

    pub fn normalized_volume(&self) -> Result<Rational> {
        volume(&self.vertices)
    }

    pub fn has_integral_vertices(&self) -> bool {
        self.vertices.iter().all(|v| to_integer_vec(v).is_some())
    }

    /// `x ↦ U x` on column vectors.
    pub(crate) fn transform(&self, u: &IntegerMatrix) -> Self {
        let ur = u.to_rational_rows();
        let apply_r = |v: &Vec<Rational>| -> Vec<Rational> {
            ur.iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        };
        let apply_i = |v: &Vec<BigInt>| -> Vec<BigInt> {
            (0..u.rows())
                .map(|i| (0..u.cols()).map(|j| u.get(i, j) * &v[j]).sum())
                .collect()
        };
        PeriodicCell::new(
            self.vertices.iter().map(apply_r).collect(),
            self.marking.iter().map(apply_i).collect(),
        )
    }
}

impl PeriodicSubdivision {
    /// Canonicalizes and sorts the representatives; repeated orbits are merged.
    pub fn new(period_basis: &IntegerMatrix, cells: Vec<PeriodicCell>) -> Result<Self> {
        let g = period_basis.cols();
        if period_basis.rows() != g || period_basis.determinant().is_zero() {
            return Err(Error::invalid(
                "period lattice needs a square basis of full rank",
            ));
        }
        if cells
            .iter()
            .any(|c| c.vertices.is_empty() || c.vertices.iter().any(|v| v.len() != g))
        {
            return Err(Error::invalid("cells must have vertices in dimension g"));
        }
        let basis = hermite_normal_form(period_basis);
        let mut cells: Vec<PeriodicCell> = cells.iter().map(|c| c.canonical(&basis)).collect();
        cells.sort();
        cells.dedup();
        Ok(PeriodicSubdivision {
            g,
            period_basis: basis,
            cells,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// Hermite normal form basis of `Γ` (rows).
    pub fn period_basis(&self) -> &IntegerMatrix {
        &self.period_basis
    }

    pub fn cells(&self) -> &[PeriodicCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `g! · |det Γ|`, the normalized volume of a fundamental domain.
    pub fn covolume(&self) -> Rational {
        let fact: BigInt = (1..=self.g).map(BigInt::from).product();
        Rational::from_integer(fact * self.period_basis.determinant().abs())
    }

    /// Total normalized volume of the representatives.
    pub fn total_volume(&self) -> Result<Rational> {
        self.cells.iter().map(PeriodicCell::normalized_volume).sum()
    }

    pub fn has_integral_vertices(&self) -> bool {
        self.cells.iter().all(PeriodicCell::has_integral_vertices)
    }

    /// The image under `x ↦ U x`, with period lattice `U Γ`.
    pub fn transform(&self, u: &IntegerMatrix) -> Result<Self> {
        if u.rows() != self.g || u.cols() != self.g || !u.determinant().abs().is_one() {
            return Err(Error::invalid("transform must be unimodular of size g"));
        }
        let gamma = self.period_basis.mul(&u.transpose());
        PeriodicSubdivision::new(&gamma, self.cells.iter().map(|c| c.transform(u)).collect())
    }

    /// Checks that the `Γ`-translates of the cells tile `ℝ^g`: every cell is
    /// full-dimensional, the volumes add up to a fundamental domain, and no
    /// two translates meeting the fundamental box overlap in their interiors.
    pub fn validate(&self) -> Result<()> {
        let g = self.g;
        let mut hulls = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            let h = convex_hull(&c.vertices)?;
            if h.dim != g {
                return Err(Error::invalid("cell is not full-dimensional"));
            }
            hulls.push(h);
        }
        let total = self.total_volume()?;
        if total != self.covolume() {
            return Err(Error::invalid(format!(
                "cells have total normalized volume {total}, a fundamental domain has {}",
                self.covolume()
            )));
        }
        let others = self.translates(-2, 2);
        for (i, hi) in hulls.iter().enumerate() {
            for other in &others {
                if *other == self.cells[i] {
                    continue;
                }
                let ho = convex_hull(&other.vertices)?;
                let ineqs: Vec<(Vec<Rational>, Rational)> = hi
                    .facets
                    .iter()
                    .chain(&ho.facets)
                    .map(|f| (f.normal.clone(), f.offset.clone()))
                    .collect();
                let common = vertices_of_inequalities(g, &ineqs, &[])?;
                if !common.is_empty() && convex_hull(&common)?.dim == g {
                    return Err(Error::invalid("two cells overlap in their interiors"));
                }
            }
        }
        Ok(())
    }

    /// All translates of the representatives by `Γ`-vectors with
    /// coordinates in `lo..=hi`.
    pub fn translates(&self, lo: i64, hi: i64) -> Vec<PeriodicCell> {
        let ts = crate::combinatorics::box_points(&vec![lo; self.g], &vec![hi; self.g]);
        let mut out = Vec::new();
        for t in ts {
            let t: Vec<BigInt> = t.into_iter().map(BigInt::from).collect();
            let shift = combine(&self.period_basis, &t);
            out.extend(self.cells.iter().map(|c| c.translate(&shift)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_vec, rat_vec};

    #[test]
    fn canonical_translation() {
        let cell = PeriodicCell::new(
            vec![rat_vec(&[3]), rat_vec(&[4])],
            vec![int_vec(&[3]), int_vec(&[4])],
        );
        let d = PeriodicSubdivision::new(&IntegerMatrix::from_i64(&[&[2]]), vec![cell]).unwrap();
        assert_eq!(d.cells()[0].vertices, vec![rat_vec(&[1]), rat_vec(&[2])]);
        assert_eq!(d.covolume(), Rational::from_integer(2.into()));
        assert_eq!(d.total_volume().unwrap(), Rational::from_integer(1.into()));
    }
}
