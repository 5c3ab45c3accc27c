use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{faces_of, to_integer_vec, vertices_of_inequalities};
use crate::polytope::LatticePolytope;

/// A named lattice polytope in `ℤ^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub polytope: LatticePolytope,
}

impl Cell {
    pub fn new(id: impl Into<String>, vertices: Vec<Vec<BigInt>>) -> Result<Self> {
        Ok(Cell {
            id: id.into(),
            polytope: LatticePolytope::new(vertices)?,
        })
    }

    pub fn from_i64(id: impl Into<String>, vertices: &[&[i64]]) -> Result<Self> {
        Ok(Cell {
            id: id.into(),
            polytope: LatticePolytope::from_i64(vertices)?,
        })
    }
}

/// Cells meeting along common faces, embedded in `ℤ^g` by the identity
/// reference map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalComplex {
    g: usize,
    cells: Vec<Cell>,
    maximal: Vec<usize>,
    faces: Vec<Vec<Vec<BigInt>>>,
}

/// Vertex lists of all nonempty faces of `p` (including `p`).
fn face_vertex_sets(p: &LatticePolytope) -> Vec<Vec<Vec<BigInt>>> {
    faces_of(p.hull(), p.vertices().len())
        .into_iter()
        .map(|f| f.into_iter().map(|i| p.vertices()[i].clone()).collect())
        .collect()
}

/// Vertices of `a ∩ b`, or a reason why it cannot be a lattice face.
fn intersection(
    a: &LatticePolytope,
    b: &LatticePolytope,
) -> Result<Option<Vec<Vec<BigInt>>>, String> {
    let d = a.ambient_dim();
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for h in [a.hull(), b.hull()] {
        ineqs.extend(
            h.facets
                .iter()
                .map(|f| (f.normal.clone(), f.offset.clone())),
        );
        eqs.extend(h.equations.iter().cloned());
    }
    let verts = vertices_of_inequalities(d, &ineqs, &eqs).map_err(|e| e.to_string())?;
    if verts.is_empty() {
        return Ok(None);
    }
    let ints: Option<Vec<Vec<BigInt>>> = verts.iter().map(|v| to_integer_vec(v)).collect();
    ints.map(Some)
        .ok_or_else(|| "the intersection has a non-lattice vertex".to_string())
}

impl PolytopalComplex {
    /// Validates that any two cells meet in a common face (or not at all).
    pub fn new(g: usize, cells: Vec<Cell>) -> Result<Self> {
        Self::with_execution(g, cells, Execution::default())
    }

    pub fn with_execution(g: usize, cells: Vec<Cell>, exec: Execution) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::invalid("a complex needs at least one cell"));
        }
        let mut ids = BTreeSet::new();
        for c in &cells {
            if c.polytope.ambient_dim() != g {
                return Err(Error::invalid(format!(
                    "cell {} lives in dimension {}, expected {g}",
                    c.id,
                    c.polytope.ambient_dim()
                )));
            }
            if !ids.insert(c.id.clone()) {
                return Err(Error::invalid(format!("duplicate cell id {}", c.id)));
            }
        }
        let cell_faces: Vec<BTreeSet<Vec<Vec<BigInt>>>> = exec.map(&cells, |c| {
            face_vertex_sets(&c.polytope).into_iter().collect()
        });
        let pairs: Vec<(usize, usize)> = (0..cells.len())
            .flat_map(|i| (i + 1..cells.len()).map(move |j| (i, j)))
            .collect();
        let violation = exec.find_map_first(&pairs, |&(i, j)| {
            let reason = match intersection(&cells[i].polytope, &cells[j].polytope) {
                Err(reason) => reason,
                Ok(None) => return None,
                Ok(Some(verts)) => {
                    if cells[i].polytope.vertices() == cells[j].polytope.vertices() {
                        "the cells coincide".to_string()
                    } else if !cell_faces[i].contains(&verts) {
                        format!("the intersection is not a face of {}", cells[i].id)
                    } else if !cell_faces[j].contains(&verts) {
                        format!("the intersection is not a face of {}", cells[j].id)
                    } else {
                        return None;
                    }
                }
            };
            Some(Error::ComplexViolation {
                first: cells[i].id.clone(),
                second: cells[j].id.clone(),
                reason,
            })
        });
        if let Some((_, err)) = violation {
            return Err(err);
        }
        let maximal: Vec<usize> = (0..cells.len())
            .filter(|&i| {
                (0..cells.len())
                    .all(|j| j == i || !cell_faces[j].contains(cells[i].polytope.vertices()))
            })
            .collect();
        let faces: BTreeSet<Vec<Vec<BigInt>>> = maximal
            .iter()
            .flat_map(|&i| cell_faces[i].iter().cloned())
            .collect();
        let mut faces: Vec<Vec<Vec<BigInt>>> = faces.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(PolytopalComplex {
            g,
            cells,
            maximal,
            faces,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: &str) -> Option<&Cell> {
        self.cells.iter().find(|c| c.id == id)
    }

    /// Cells that are not faces of other cells, in input order.
    pub fn maximal_cells(&self) -> Vec<&Cell> {
        self.maximal.iter().map(|&i| &self.cells[i]).collect()
    }

    /// Vertex lists of every face of every maximal cell, by size then lexicographically.
    pub fn faces(&self) -> &[Vec<Vec<BigInt>>] {
        &self.faces
    }

    /// The reference map is the identity on cells given in coordinates, so
    /// it is always injective on `|Q|`.
    pub fn is_multiplicity_free(&self) -> bool {
        true
    }

    /// Dimension of the largest cell.
    pub fn dim(&self) -> usize {
        self.cells
            .iter()
            .map(|c| c.polytope.dim())
            .max()
            .unwrap_or(0)
    }
}

/// A complex with a set of marked lattice points on each maximal cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedComplex {
    complex: PolytopalComplex,
    markings: BTreeMap<String, Vec<Vec<BigInt>>>,
}

impl MarkedComplex {
    /// Each maximal cell needs a marking `C` of its lattice points with
    /// `Conv(C)` equal to the cell, and markings must agree on shared faces.
    pub fn new(
        complex: PolytopalComplex,
        markings: BTreeMap<String, Vec<Vec<BigInt>>>,
    ) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for id in markings.keys() {
            if !complex.maximal_cells().iter().any(|c| &c.id == id) {
                return Err(Error::invalid(format!(
                    "marking for unknown or non-maximal cell {id}"
                )));
            }
        }
        for cell in complex.maximal_cells() {
            let Some(marks) = markings.get(&cell.id) else {
                return Err(Error::invalid(format!("cell {} has no marking", cell.id)));
            };
            let mut marks = marks.clone();
            marks.sort();
            marks.dedup();
            if let Some(bad) = marks
                .iter()
                .find(|m| m.len() != complex.g || !cell.polytope.contains(m))
            {
                return Err(Error::invalid(format!(
                    "marked point {bad:?} is not a lattice point of cell {}",
                    cell.id
                )));
            }
            if let Some(v) = cell
                .polytope
                .vertices()
                .iter()
                .find(|v| marks.binary_search(v).is_err())
            {
                return Err(Error::invalid(format!(
                    "Conv of the marking of cell {} misses the vertex {v:?}",
                    cell.id
                )));
            }
            normalized.insert(cell.id.clone(), marks);
        }
        let maximal = complex.maximal_cells();
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                let common: Vec<Vec<BigInt>> = a
                    .polytope
                    .vertices()
                    .iter()
                    .filter(|v| b.polytope.vertices().binary_search(v).is_ok())
                    .cloned()
                    .collect();
                if common.is_empty() {
                    continue;
                }
                let face = LatticePolytope::new(common)?;
                let restrict = |id: &str| -> Vec<Vec<BigInt>> {
                    normalized[id]
                        .iter()
                        .filter(|m| face.contains(m))
                        .cloned()
                        .collect()
                };
                if restrict(&a.id) != restrict(&b.id) {
                    return Err(Error::invalid(format!(
                        "markings of {} and {} disagree on their common face",
                        a.id, b.id
                    )));
                }
            }
        }
        Ok(MarkedComplex {
            complex,
            markings: normalized,
        })
    }

    pub fn complex(&self) -> &PolytopalComplex {
        &self.complex
    }

    /// Sorted marked points of a maximal cell.
    pub fn marking(&self, id: &str) -> Option<&[Vec<BigInt>]> {
        self.markings.get(id).map(Vec::as_slice)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PseudomanifoldVerdict {
    Closed,
    WithBoundary,
    NotPseudomanifold { witness: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudomanifoldReport {
    pub verdict: PseudomanifoldVerdict,
    /// Codimension-one faces lying in exactly one maximal cell.
    pub boundary: Vec<Vec<Vec<BigInt>>>,
}

/// Combinatorial surrogate for "|Q| is a manifold with boundary": pure, every
/// codimension-one face in one or two maximal cells, strongly connected.
pub fn pseudomanifold_check(complex: &PolytopalComplex) -> PseudomanifoldReport {
    let maximal = complex.maximal_cells();
    let not = |witness: String| PseudomanifoldReport {
        verdict: PseudomanifoldVerdict::NotPseudomanifold { witness },
        boundary: Vec::new(),
    };
    let top = maximal[0].polytope.dim();
    if let Some(c) = maximal.iter().find(|c| c.polytope.dim() != top) {
        return not(format!(
            "complex is not pure: cell {} has dimension {} but cell {} has dimension {top}",
            c.id,
            c.polytope.dim(),
            maximal[0].id
        ));
    }
    let mut ridges: BTreeMap<Vec<Vec<BigInt>>, Vec<usize>> = BTreeMap::new();
    for (k, c) in maximal.iter().enumerate() {
        let p = &c.polytope;
        for f in &p.hull().facets {
            let verts = f
                .incident
                .iter()
                .map(|&i| p.vertices()[i].clone())
                .collect();
            ridges.entry(verts).or_default().push(k);
        }
    }
    if let Some((r, owners)) = ridges.iter().find(|(_, o)| o.len() > 2) {
        return not(format!(
            "codimension-one face {r:?} lies in {} maximal cells",
            owners.len()
        ));
    }
    // strong connectivity through shared codimension-one faces
    let mut seen = vec![false; maximal.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(k) = stack.pop() {
        for owners in ridges.values().filter(|o| o.len() == 2 && o.contains(&k)) {
            for &m in owners {
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return not(format!(
            "cell {} is not reachable from cell {} through codimension-one faces",
            maximal[k].id, maximal[0].id
        ));
    }
    let boundary: Vec<Vec<Vec<BigInt>>> = ridges
        .into_iter()
        .filter(|(_, o)| o.len() == 1)
        .map(|(r, _)| r)
        .collect();
    let verdict = if boundary.is_empty() {
        PseudomanifoldVerdict::Closed
    } else {
        PseudomanifoldVerdict::WithBoundary
    };
    PseudomanifoldReport { verdict, boundary }
}
