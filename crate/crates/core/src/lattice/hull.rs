//! Convex hulls of rational point sets, computed inside the affine hull.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::dd::dual_description;
use super::matrix::{dot, primitive, rank, rref, sub};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest intrinsic dimension accepted by [`convex_hull`].
pub const MAX_HULL_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub ambient_dim: usize,
    pub dim: usize,
    pub origin: Vec<Rational>,
    /// Direction space basis in reduced row echelon form.
    pub directions: Vec<Vec<Rational>>,
    /// Pivot coordinates; projecting onto them is injective on the hull.
    pub pivots: Vec<usize>,
    /// `a · x = b` cutting out the hull.
    pub equations: Vec<(Vec<Rational>, Rational)>,
}

impl AffineHull {
    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| x[p].clone()).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot(a, x) == *b)
    }
}

pub fn affine_hull(points: &[Vec<Rational>]) -> Result<AffineHull> {
    let first = points
        .first()
        .ok_or_else(|| Error::invalid("empty point set"))?;
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::invalid("points have inconsistent dimensions"));
    }
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub(p, first)).collect();
    let (directions, pivots) = rref(&diffs);
    let mut equations = Vec::new();
    for j in (0..d).filter(|j| !pivots.contains(j)) {
        // x_j − Σ_i dir_i[j] x_{p_i} = origin_j − Σ_i dir_i[j] origin_{p_i}
        let mut a = vec![Rational::zero(); d];
        a[j] = Rational::from_integer(1.into());
        for (row, &p) in directions.iter().zip(&pivots) {
            a[p] = -row[j].clone();
        }
        let b = dot(&a, first);
        equations.push((a, b));
    }
    Ok(AffineHull {
        ambient_dim: d,
        dim: pivots.len(),
        origin: first.clone(),
        directions,
        pivots,
        equations,
    })
}

/// A facet `normal · x ≥ offset` together with the input points lying on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub incident: Vec<usize>,
}

impl Facet {
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullResult {
    pub ambient_dim: usize,
    /// Intrinsic dimension.
    pub dim: usize,
    /// Equations of the affine hull.
    pub equations: Vec<(Vec<Rational>, Rational)>,
    /// Facets relative to the affine hull, ordered by incident index sets.
    pub facets: Vec<Facet>,
    /// Lower faces with respect to the last coordinate. For a full-dimensional
    /// hull these are the facets with positive last normal coordinate (the
    /// polytope lies above them). For a hull of codimension one that is the
    /// graph of an affine function, the whole hull is the single lower face.
    pub lower_facets: Vec<Facet>,
    /// Indices of the points that are vertices (first occurrence of repeats).
    pub vertices: Vec<usize>,
}

impl HullResult {
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot(a, x) == *b)
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// True when `x` lies in the relative interior.
    pub fn contains_relative_interior(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot(a, x) == *b)
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }
}

/// Exact H-representation and incidences of the convex hull of `points`.
pub fn convex_hull(points: &[Vec<Rational>]) -> Result<HullResult> {
    let aff = affine_hull(points)?;
    let k = aff.dim;
    if k > MAX_HULL_DIM {
        return Err(Error::Refused(format!(
            "hull of intrinsic dimension {k} exceeds the limit {MAX_HULL_DIM}"
        )));
    }
    let d = aff.ambient_dim;
    let projected: Vec<Vec<Rational>> = points.iter().map(|p| aff.project(p)).collect();

    let mut facets = Vec::new();
    let mut vertices = Vec::new();
    if k == 0 {
        vertices.push(0);
    } else {
        // Inequalities c + a·y ≥ 0 valid on every point form a pointed cone
        // whose extreme rays are the facets.
        let rows: Vec<Vec<_>> = projected
            .iter()
            .map(|y| {
                let mut r = Vec::with_capacity(k + 1);
                r.push(Rational::from_integer(1.into()));
                r.extend(y.iter().cloned());
                primitive(&r)
            })
            .collect();
        let cone = dual_description(k + 1, &rows);
        debug_assert!(cone.lineality.is_empty());
        for ray in cone.rays {
            if ray[1..].iter().all(Zero::is_zero) {
                continue;
            }
            let a: Vec<Rational> = ray[1..]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let offset = -Rational::from_integer(ray[0].clone());
            let incident: Vec<usize> = projected
                .iter()
                .enumerate()
                .filter(|(_, y)| dot(&a, y) == offset)
                .map(|(i, _)| i)
                .collect();
            let mut normal = vec![Rational::zero(); d];
            for (&p, ai) in aff.pivots.iter().zip(&a) {
                normal[p] = ai.clone();
            }
            facets.push((
                Facet {
                    normal,
                    offset,
                    incident,
                },
                a,
            ));
        }
        let mut seen: BTreeSet<&Vec<Rational>> = BTreeSet::new();
        for (i, y) in projected.iter().enumerate() {
            if !seen.insert(y) {
                continue;
            }
            let tight: Vec<Vec<Rational>> = facets
                .iter()
                .filter(|(f, _)| f.incident.binary_search(&i).is_ok())
                .map(|(_, a)| a.clone())
                .collect();
            if rank(&tight) == k {
                vertices.push(i);
            }
        }
    }
    let mut facets: Vec<Facet> = facets.into_iter().map(|(f, _)| f).collect();
    facets.sort_by(|a, b| a.incident.cmp(&b.incident));

    let lower_facets = if k == d && d > 0 {
        facets
            .iter()
            .filter(|f| f.normal[d - 1].is_positive())
            .cloned()
            .collect()
    } else if d > 0 && k + 1 == d && !aff.pivots.contains(&(d - 1)) {
        let (a, b) = aff.equations[0].clone();
        // The single equation has coefficient 1 on the last coordinate.
        vec![Facet {
            normal: a,
            offset: b,
            incident: (0..points.len()).collect(),
        }]
    } else {
        Vec::new()
    };

    Ok(HullResult {
        ambient_dim: d,
        dim: k,
        equations: aff.equations,
        facets,
        lower_facets,
        vertices,
    })
}

/// All nonempty faces of a hull as sets of incident point indices, including
/// the polytope itself (which contains every input point). Sorted.
pub fn faces_of(hull: &HullResult, num_points: usize) -> Vec<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = hull.facets.iter().map(|f| f.incident.clone()).collect();
    loop {
        let current: Vec<Vec<usize>> = faces.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let c: Vec<usize> = a
                    .iter()
                    .filter(|x| b.binary_search(x).is_ok())
                    .copied()
                    .collect();
                if !c.is_empty() && faces.insert(c) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    faces.insert((0..num_points).collect());
    faces.into_iter().collect()
}
