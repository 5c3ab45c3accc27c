use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::geometry::{CellGeometry, Geometry};
use super::subdivision::{regularity, MarkedSubdivision, Regularity};
use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{convex_hull, dot, Rational};
use crate::polytope::PointConfiguration;

pub const MAX_ENUM_POINTS: usize = 12;
pub const MAX_ENUM_DIM: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlaggedSubdivision {
    pub subdivision: MarkedSubdivision,
    pub regularity: Regularity,
}

struct Candidate {
    cell: CellGeometry,
    /// Facets not on the boundary of the configuration's hull.
    interior: Vec<usize>,
}

struct Search<'a> {
    geo: &'a Geometry,
    candidates: Vec<Candidate>,
    /// Facet vertex-label set → candidates having it as an interior facet.
    by_facet: HashMap<Vec<usize>, Vec<usize>>,
}

fn check_limits(config: &PointConfiguration) -> Result<()> {
    if config.len() > MAX_ENUM_POINTS {
        return Err(Error::Refused(format!(
            "enumeration is limited to {MAX_ENUM_POINTS} points, got {}",
            config.len()
        )));
    }
    if config.dim() > MAX_ENUM_DIM {
        return Err(Error::Refused(format!(
            "enumeration is limited to dimension {MAX_ENUM_DIM}, got {}",
            config.dim()
        )));
    }
    Ok(())
}

impl<'a> Search<'a> {
    fn new(geo: &'a Geometry, label_sets: Vec<Vec<usize>>, exec: Execution) -> Result<Self> {
        let cells = exec.map(&label_sets, |s| CellGeometry::new(geo, s));
        let mut candidates = Vec::new();
        for cell in cells {
            let cell = cell?;
            if cell.dim() != geo.dim {
                continue;
            }
            let interior = (0..cell.facets.len())
                .filter(|&f| {
                    let (_, a, b) = &cell.facets[f];
                    geo.coords.iter().any(|x| dot(a, x) < *b)
                })
                .collect();
            candidates.push(Candidate { cell, interior });
        }
        let mut by_facet: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (i, c) in candidates.iter().enumerate() {
            for &f in &c.interior {
                by_facet
                    .entry(c.cell.facets[f].0.clone())
                    .or_default()
                    .push(i);
            }
        }
        Ok(Search {
            geo,
            candidates,
            by_facet,
        })
    }

    /// A point of the hull's interior on no facet hyperplane of any candidate.
    fn generic_point(&self) -> Result<Vec<Rational>> {
        let k = self.geo.dim;
        let n = Rational::from_integer(self.geo.len().into());
        let mut center = vec![Rational::zero(); k];
        for p in &self.geo.coords {
            for (c, x) in center.iter_mut().zip(p) {
                *c += x;
            }
        }
        for c in center.iter_mut() {
            *c /= &n;
        }
        let hull = convex_hull(&self.geo.coords)?;
        let mut scale = Rational::one();
        for step in 0..200u32 {
            let base = Rational::from_integer((step as i64 + 7).into());
            let mut x = center.clone();
            let mut w = scale.clone();
            for xi in x.iter_mut() {
                *xi += &w;
                w /= &base;
            }
            let generic = self
                .candidates
                .iter()
                .all(|c| c.cell.facets.iter().all(|(_, a, b)| dot(a, &x) != *b));
            if generic && hull.contains_relative_interior(&x) {
                return Ok(x);
            }
            scale /= Rational::from_integer(2.into());
        }
        Err(Error::Internal("no generic interior point found".into()))
    }

    fn compatible(&self, i: usize, j: usize, memo: &mut HashMap<(usize, usize), bool>) -> bool {
        let key = (i.min(j), i.max(j));
        *memo.entry(key).or_insert_with(|| {
            self.candidates[i]
                .cell
                .conflict(&self.candidates[j].cell, self.geo)
                .is_none()
        })
    }

    fn extend(
        &self,
        chosen: &mut Vec<usize>,
        open: &mut BTreeMap<Vec<usize>, usize>,
        memo: &mut HashMap<(usize, usize), bool>,
        out: &mut Vec<MarkedSubdivision>,
    ) {
        let Some((facet, &owner)) = open.iter().next() else {
            out.push(MarkedSubdivision::from_cells(
                chosen
                    .iter()
                    .map(|&c| self.candidates[c].cell.marking.clone())
                    .collect(),
            ));
            return;
        };
        let facet = facet.clone();
        let owner_cell = &self.candidates[owner].cell;
        let (_, a, b) = owner_cell
            .facets
            .iter()
            .find(|(key, _, _)| *key == facet)
            .expect("open facet belongs to its owner");
        for &j in &self.by_facet[&facet] {
            let beyond = self.candidates[j]
                .cell
                .vertices
                .iter()
                .any(|&v| dot(a, &self.geo.coords[v]) < *b);
            if !beyond || !chosen.iter().all(|&c| self.compatible(c, j, memo)) {
                continue;
            }
            let saved = open.clone();
            self.add(j, open);
            chosen.push(j);
            self.extend(chosen, open, memo, out);
            chosen.pop();
            *open = saved;
        }
    }

    fn add(&self, j: usize, open: &mut BTreeMap<Vec<usize>, usize>) {
        let c = &self.candidates[j];
        for &f in &c.interior {
            let key = &c.cell.facets[f].0;
            if open.remove(key).is_none() {
                open.insert(key.clone(), j);
            }
        }
    }

    /// Every marked subdivision made of candidate cells, sorted.
    fn run(&self, exec: Execution) -> Result<Vec<MarkedSubdivision>> {
        let x0 = self.generic_point()?;
        let starts: Vec<usize> = (0..self.candidates.len())
            .filter(|&i| self.candidates[i].cell.hull.contains_relative_interior(&x0))
            .collect();
        let branches = exec.map(&starts, |&s| {
            let mut out = Vec::new();
            let mut open = BTreeMap::new();
            self.add(s, &mut open);
            self.extend(&mut vec![s], &mut open, &mut HashMap::new(), &mut out);
            out
        });
        let mut all: Vec<MarkedSubdivision> = branches.into_iter().flatten().collect();
        all.sort();
        Ok(all)
    }
}

/// All triangulations (cells are simplices marked by their vertices; points
/// may be left unused), by backtracking over lexicographically ordered
/// simplices.
pub fn enumerate_triangulations(
    config: &PointConfiguration,
    exec: Execution,
) -> Result<Vec<MarkedSubdivision>> {
    check_limits(config)?;
    let geo = Geometry::new(config);
    let simplices = combinations(geo.len(), geo.dim + 1);
    Search::new(&geo, simplices, exec)?.run(exec)
}

/// All marked subdivisions, each flagged with its regularity.
pub fn enumerate_all_subdivisions(
    config: &PointConfiguration,
    exec: Execution,
) -> Result<Vec<FlaggedSubdivision>> {
    check_limits(config)?;
    let geo = Geometry::new(config);
    let n = geo.len();
    let subsets: Vec<Vec<usize>> = (1u32..1 << n)
        .filter(|m| m.count_ones() as usize > geo.dim)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let subs = Search::new(&geo, subsets, exec)?.run(exec)?;
    let flags = exec.map(&subs, |s| regularity(&geo, s));
    subs.into_iter()
        .zip(flags)
        .map(|(subdivision, r)| {
            Ok(FlaggedSubdivision {
                subdivision,
                regularity: r?,
            })
        })
        .collect()
}
