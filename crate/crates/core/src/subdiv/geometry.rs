use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lattice::{convex_hull, faces_of, vertices_of_inequalities, HullResult, Rational};
use crate::polytope::PointConfiguration;

/// A configuration in intrinsic (lattice when integral) coordinates.
pub(crate) struct Geometry {
    pub dim: usize,
    pub coords: Vec<Vec<Rational>>,
    index: HashMap<Vec<Rational>, usize>,
}

impl Geometry {
    pub fn new(config: &PointConfiguration) -> Self {
        let frame = config.frame();
        let index = frame
            .coords
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Geometry {
            dim: frame.dim,
            coords: frame.coords,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn label_of(&self, x: &[Rational]) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn points(&self, labels: &[usize]) -> Vec<Vec<Rational>> {
        labels.iter().map(|&l| self.coords[l].clone()).collect()
    }
}

/// A marked cell together with its hull in intrinsic coordinates.
#[derive(Clone, Debug)]
pub(crate) struct CellGeometry {
    /// Sorted marking.
    pub marking: Vec<usize>,
    pub hull: HullResult,
    /// Sorted labels of the vertices.
    pub vertices: Vec<usize>,
    /// Faces as sorted vertex-label sets.
    pub faces: BTreeSet<Vec<usize>>,
    /// Facets: vertex-label set, inward normal, offset.
    pub facets: Vec<(Vec<usize>, Vec<Rational>, Rational)>,
    /// Sorted labels of every configuration point in the cell.
    pub contained: Vec<usize>,
}

impl CellGeometry {
    pub fn new(geo: &Geometry, marking: &[usize]) -> Result<Self> {
        let mut marking = marking.to_vec();
        marking.sort_unstable();
        marking.dedup();
        if marking.iter().any(|&l| l >= geo.len()) {
            return Err(Error::invalid("cell label out of range"));
        }
        let pts = geo.points(&marking);
        let hull = convex_hull(&pts)?;
        let is_vertex: Vec<bool> = (0..marking.len())
            .map(|i| hull.vertices.contains(&i))
            .collect();
        let vertices: Vec<usize> = marking
            .iter()
            .zip(&is_vertex)
            .filter(|(_, v)| **v)
            .map(|(l, _)| *l)
            .collect();
        let to_vertex_labels = |idx: &[usize]| -> Vec<usize> {
            idx.iter()
                .filter(|&&i| is_vertex[i])
                .map(|&i| marking[i])
                .collect()
        };
        let faces = faces_of(&hull, marking.len())
            .iter()
            .map(|f| to_vertex_labels(f))
            .collect();
        let facets = hull
            .facets
            .iter()
            .map(|f| {
                (
                    to_vertex_labels(&f.incident),
                    f.normal.clone(),
                    f.offset.clone(),
                )
            })
            .collect();
        let contained = (0..geo.len())
            .filter(|&l| hull.contains(&geo.coords[l]))
            .collect();
        Ok(CellGeometry {
            marking,
            hull,
            vertices,
            faces,
            facets,
            contained,
        })
    }

    pub fn dim(&self) -> usize {
        self.hull.dim
    }

    /// Why `self` and `other` do not form part of a marked subdivision, if
    /// they don't: the intersection must be a common face on which the
    /// markings agree.
    pub fn conflict(&self, other: &CellGeometry, geo: &Geometry) -> Option<String> {
        let common: Vec<usize> = self
            .contained
            .iter()
            .filter(|l| other.contained.binary_search(l).is_ok())
            .copied()
            .collect();
        let mark = |c: &CellGeometry| -> Vec<usize> {
            common
                .iter()
                .filter(|l| c.marking.binary_search(l).is_ok())
                .copied()
                .collect()
        };
        if mark(self) != mark(other) {
            return Some("markings disagree on the common face".into());
        }
        let mut ineqs = Vec::new();
        for h in [&self.hull, &other.hull] {
            ineqs.extend(
                h.facets
                    .iter()
                    .map(|f| (f.normal.clone(), f.offset.clone())),
            );
        }
        let mut eqs = self.hull.equations.clone();
        eqs.extend(other.hull.equations.iter().cloned());
        let verts = match vertices_of_inequalities(geo.dim, &ineqs, &eqs) {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        };
        if verts.is_empty() {
            return None;
        }
        let labels: Option<Vec<usize>> = verts.iter().map(|v| geo.label_of(v)).collect();
        let Some(mut labels) = labels else {
            return Some("the cells cross".into());
        };
        labels.sort_unstable();
        if !self.faces.contains(&labels) || !other.faces.contains(&labels) {
            return Some("the intersection is not a common face".into());
        }
        None
    }
}
