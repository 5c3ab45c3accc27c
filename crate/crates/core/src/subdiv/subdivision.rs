use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::geometry::{CellGeometry, Geometry};
use crate::complex::{Cell, MarkedComplex, PolytopalComplex};
use crate::error::{Error, Result};
use crate::lattice::{
    convex_hull, lp_feasible, rank, solve, Constraint, LpOutcome, LpProblem, Rational,
};
use crate::polytope::{simplex_volume, volume, PointConfiguration};

/// Maximal cells of a marked subdivision, each given by its marking (a
/// sorted label set whose convex hull is the cell). Cells are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedSubdivision {
    cells: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    /// Integral heights inducing the subdivision, zero on an affine basis.
    Regular {
        heights: Vec<Rational>,
    },
    NotRegular,
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular { .. })
    }
}

impl MarkedSubdivision {
    /// Validates that the cells are full-dimensional, meet in common faces
    /// with agreeing markings and cover the configuration's hull.
    pub fn new(config: &PointConfiguration, cells: Vec<Vec<usize>>) -> Result<Self> {
        let sub = Self::from_cells(cells);
        let geo = Geometry::new(config);
        sub.validate(&geo)?;
        Ok(sub)
    }

    pub(crate) fn from_cells(cells: Vec<Vec<usize>>) -> Self {
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cells.sort();
        cells.dedup();
        MarkedSubdivision { cells }
    }

    pub(crate) fn validate(&self, geo: &Geometry) -> Result<Vec<CellGeometry>> {
        if self.cells.is_empty() {
            return Err(Error::invalid("a subdivision needs at least one cell"));
        }
        let cells = self
            .cells
            .iter()
            .map(|c| CellGeometry::new(geo, c))
            .collect::<Result<Vec<_>>>()?;
        for (c, labels) in cells.iter().zip(&self.cells) {
            if c.dim() != geo.dim {
                return Err(Error::invalid(format!(
                    "cell {labels:?} has dimension {}, expected {}",
                    c.dim(),
                    geo.dim
                )));
            }
        }
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if let Some(reason) = cells[i].conflict(&cells[j], geo) {
                    return Err(Error::invalid(format!(
                        "cells {:?} and {:?}: {reason}",
                        self.cells[i], self.cells[j]
                    )));
                }
            }
        }
        let total: Rational = self
            .cells
            .iter()
            .map(|c| volume(&geo.points(c)))
            .sum::<Result<Rational>>()?;
        if total != volume(&geo.coords)? {
            return Err(Error::invalid("the cells do not cover the convex hull"));
        }
        Ok(cells)
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// True when every cell is a simplex marked by its vertices.
    pub fn is_triangulation(&self, config: &PointConfiguration) -> bool {
        let k = config.dim();
        self.cells.iter().all(|c| c.len() == k + 1)
    }
}

/// Lower envelope of the lifted points `(m, h(m))`. Each cell is marked by
/// every label whose lift lies on the supporting hyperplane.
pub fn regular_subdivision(
    config: &PointConfiguration,
    heights: &[Rational],
) -> Result<MarkedSubdivision> {
    if heights.len() != config.len() {
        return Err(Error::invalid(format!(
            "expected {} heights, got {}",
            config.len(),
            heights.len()
        )));
    }
    let geo = Geometry::new(config);
    lower_envelope(&geo, heights)
}

pub(crate) fn lower_envelope(geo: &Geometry, heights: &[Rational]) -> Result<MarkedSubdivision> {
    let lifted: Vec<Vec<Rational>> = geo
        .coords
        .iter()
        .zip(heights)
        .map(|(p, h)| {
            let mut q = p.clone();
            q.push(h.clone());
            q
        })
        .collect();
    let hull = convex_hull(&lifted)?;
    Ok(MarkedSubdivision::from_cells(
        hull.lower_facets.into_iter().map(|f| f.incident).collect(),
    ))
}

/// Exact LP search for heights inducing `sub`: per cell an affine function
/// equal to `h` on the marking and strictly below it elsewhere.
pub fn is_regular(config: &PointConfiguration, sub: &MarkedSubdivision) -> Result<Regularity> {
    let geo = Geometry::new(config);
    sub.validate(&geo)?;
    regularity(&geo, sub)
}

/// First affinely independent labels in order, spanning the affine hull of `labels`.
fn affine_basis(geo: &Geometry, labels: &[usize]) -> Vec<usize> {
    let mut basis = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &m in labels {
        rows.push(lift(&geo.coords[m]));
        if rank(&rows) > basis.len() {
            basis.push(m);
        } else {
            rows.pop();
        }
    }
    basis
}

fn lift(x: &[Rational]) -> Vec<Rational> {
    std::iter::once(Rational::one())
        .chain(x.iter().cloned())
        .collect()
}

pub(crate) fn regularity(geo: &Geometry, sub: &MarkedSubdivision) -> Result<Regularity> {
    let n = geo.len();
    let mut lp = LpProblem::new(n);
    for cell in sub.cells() {
        // The affine function of the cell is the interpolation of h on an
        // affine basis B of the cell: α(m) = Σ_b λ_b(m) h(b).
        let basis = affine_basis(geo, cell);
        let system: Vec<Vec<Rational>> = (0..=geo.dim)
            .map(|j| {
                basis
                    .iter()
                    .map(|&b| lift(&geo.coords[b])[j].clone())
                    .collect()
            })
            .collect();
        for m in 0..n {
            if basis.contains(&m) {
                continue;
            }
            let lambda = solve(&system, &lift(&geo.coords[m]))
                .ok_or_else(|| Error::Internal("affine basis does not span the cell".into()))?;
            // h(m) − α(m)
            let mut row = vec![Rational::zero(); n];
            row[m] = Rational::one();
            for (&b, l) in basis.iter().zip(&lambda) {
                row[b] -= l;
            }
            lp.push(if cell.binary_search(&m).is_ok() {
                Constraint::eq(row, Rational::zero())
            } else {
                Constraint::gt(row, Rational::zero())
            });
        }
    }
    // Fix the gauge: h vanishes on the first affine basis in label order.
    let all: Vec<usize> = (0..n).collect();
    for m in affine_basis(geo, &all) {
        let mut row = vec![Rational::zero(); n];
        row[m] = Rational::one();
        lp.push(Constraint::eq(row, Rational::zero()));
    }
    let LpOutcome::Feasible(x) = lp_feasible(&lp)? else {
        return Ok(Regularity::NotRegular);
    };
    let scale = x.iter().fold(BigInt::one(), |acc, h| acc.lcm(h.denom()));
    let heights: Vec<Rational> = x
        .iter()
        .map(|h| h * Rational::from_integer(scale.clone()))
        .collect();
    if lower_envelope(geo, &heights)? != *sub {
        return Err(Error::Internal(
            "regularity certificate does not reproduce the subdivision".into(),
        ));
    }
    Ok(Regularity::Regular { heights })
}

/// Per label, the total normalized volume of the simplices containing it.
pub fn gkz_vector(config: &PointConfiguration, sub: &MarkedSubdivision) -> Result<Vec<Rational>> {
    let geo = Geometry::new(config);
    gkz(&geo, sub)
}

pub(crate) fn gkz(geo: &Geometry, sub: &MarkedSubdivision) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); geo.len()];
    for cell in sub.cells() {
        if cell.len() != geo.dim + 1 {
            return Err(Error::invalid(format!("cell {cell:?} is not a simplex")));
        }
        let pts = geo.points(cell);
        let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
        let v = simplex_volume(&refs);
        if v.is_zero() {
            return Err(Error::invalid(format!("cell {cell:?} is degenerate")));
        }
        for &m in cell {
            out[m] += &v;
        }
    }
    Ok(out)
}

/// The subdivision as a marked polytopal complex in the ambient lattice;
/// cell ids are the cell indices.
pub fn marked_complex_of(
    config: &PointConfiguration,
    sub: &MarkedSubdivision,
) -> Result<MarkedComplex> {
    let point = |l: usize| {
        config
            .integer_point(l)
            .ok_or_else(|| Error::invalid("marked complexes need an integral configuration"))
    };
    let mut cells = Vec::new();
    let mut markings = BTreeMap::new();
    for (i, c) in sub.cells().iter().enumerate() {
        let pts = c.iter().map(|&l| point(l)).collect::<Result<Vec<_>>>()?;
        cells.push(Cell::new(i.to_string(), pts.clone())?);
        markings.insert(i.to_string(), pts);
    }
    MarkedComplex::new(
        PolytopalComplex::new(config.ambient_dim(), cells)?,
        markings,
    )
}
