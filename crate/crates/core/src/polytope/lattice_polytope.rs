use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::config::PointConfiguration;
use super::triangulate::volume;
use crate::combinatorics::box_points;
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, faces_of, int_vec, HullResult, Rational};

/// Boxes with more integer points than this are refused by the enumerators.
const MAX_BOX_POINTS: u128 = 20_000_000;

/// Convex hull of finitely many integer points, stored by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    vertices: Vec<Vec<BigInt>>,
    hull: HullResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdpOutcome {
    /// Every lattice point at levels `2..=degree_bound` is a sum of level-one points.
    Idp,
    /// A lattice point of `level · P` that is not a sum of `level` lattice points of `P`.
    Witness { level: u32, point: Vec<BigInt> },
}

fn to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Refused(format!("coordinate {x} is too large to enumerate")))
}

impl LatticePolytope {
    /// Hull of the given points; only the vertices are kept.
    pub fn new(points: Vec<Vec<BigInt>>) -> Result<Self> {
        let rat: Vec<Vec<Rational>> = points.iter().map(|p| to_rat(p)).collect();
        let hull = convex_hull(&rat)?;
        let mut vertices: Vec<Vec<BigInt>> =
            hull.vertices.iter().map(|&i| points[i].clone()).collect();
        vertices.sort();
        let rat: Vec<Vec<Rational>> = vertices.iter().map(|p| to_rat(p)).collect();
        let hull = convex_hull(&rat)?;
        Ok(LatticePolytope { vertices, hull })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| int_vec(p)).collect())
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.vertices
    }

    pub fn rational_vertices(&self) -> Vec<Vec<Rational>> {
        self.vertices.iter().map(|v| to_rat(v)).collect()
    }

    /// H-representation over the vertex list (incidences index `vertices()`).
    pub fn hull(&self) -> &HullResult {
        &self.hull
    }

    pub fn dim(&self) -> usize {
        self.hull.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.hull.ambient_dim
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.hull.contains(&to_rat(x))
    }

    pub fn contains_rational(&self, x: &[Rational]) -> bool {
        self.hull.contains(x)
    }

    /// All nonempty faces as sets of vertex indices, including the polytope.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        faces_of(&self.hull, self.vertices.len())
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dim() == 1 {
            return vec![(0, 1)];
        }
        self.faces()
            .into_iter()
            .filter(|f| f.len() == 2)
            .map(|f| (f[0], f[1]))
            .collect()
    }

    /// Lattice points of `k · P`, lexicographically ordered.
    pub fn dilated_lattice_points(&self, k: u32) -> Result<Vec<Vec<BigInt>>> {
        let kb = BigInt::from(k);
        let d = self.ambient_dim();
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        let mut count: u128 = 1;
        for j in 0..d {
            let min = self.vertices.iter().map(|v| &v[j]).min().expect("nonempty");
            let max = self.vertices.iter().map(|v| &v[j]).max().expect("nonempty");
            let (a, b) = (to_i64(&(min * &kb))?, to_i64(&(max * &kb))?);
            count = count.saturating_mul((b - a + 1) as u128);
            lo.push(a);
            hi.push(b);
        }
        if count > MAX_BOX_POINTS {
            return Err(Error::Refused(format!(
                "bounding box of {count} integer points is too large"
            )));
        }
        let kr = Rational::from_integer(kb);
        let inside = |x: &[Rational]| {
            self.hull
                .equations
                .iter()
                .all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>() == b * &kr)
                && self.hull.facets.iter().all(|f| {
                    f.normal.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>() >= &f.offset * &kr
                })
        };
        Ok(box_points(&lo, &hi)
            .into_iter()
            .map(|p| p.into_iter().map(BigInt::from).collect::<Vec<_>>())
            .filter(|p| inside(&to_rat(p)))
            .collect())
    }

    /// Lattice points, by bounding box enumeration filtered through the H-representation.
    pub fn lattice_points(&self) -> Result<Vec<Vec<BigInt>>> {
        self.dilated_lattice_points(1)
    }

    /// `dim! ·` volume relative to the lattice of the affine hull.
    pub fn normalized_volume(&self) -> Result<BigInt> {
        let config = PointConfiguration::new(self.rational_vertices())?;
        let frame = config.frame();
        let v = volume(&frame.coords)?;
        if !v.is_integer() {
            return Err(Error::Internal(format!("non-integral lattice volume {v}")));
        }
        Ok(v.to_integer())
    }

    /// Checks that lattice points of `k · P` are sums of `k` lattice points of
    /// `P` for `k = 2..=degree_bound`.
    pub fn is_idp(&self, degree_bound: u32) -> Result<IdpOutcome> {
        if degree_bound < 2 {
            return Err(Error::invalid("degree bound must be at least 2"));
        }
        let base = self.lattice_points()?;
        let mut sums: HashSet<Vec<BigInt>> = base.iter().cloned().collect();
        for level in 2..=degree_bound {
            sums = sums
                .iter()
                .flat_map(|s| {
                    base.iter()
                        .map(move |p| s.iter().zip(p).map(|(a, b)| a + b).collect::<Vec<_>>())
                })
                .collect();
            if let Some(point) = self
                .dilated_lattice_points(level)?
                .into_iter()
                .find(|x| !sums.contains(x))
            {
                return Ok(IdpOutcome::Witness { level, point });
            }
        }
        Ok(IdpOutcome::Idp)
    }

    /// True iff every edge is parallel to some `e_i − e_j`. Requires `P` to sit
    /// in a slice `{0 ≤ x ≤ 1, Σ x = r}`.
    pub fn is_matroid_polytope(&self) -> Result<bool> {
        let in_cube = self
            .vertices
            .iter()
            .flatten()
            .all(|x| x.is_zero() || x.is_one());
        let sum = |v: &Vec<BigInt>| v.iter().sum::<BigInt>();
        let r = sum(&self.vertices[0]);
        if !in_cube || self.vertices.iter().any(|v| sum(v) != r) {
            return Err(Error::invalid(
                "polytope is not contained in a hypersimplex slice",
            ));
        }
        Ok(self.edges().iter().all(|&(a, b)| {
            let diff: Vec<BigInt> = self.vertices[a]
                .iter()
                .zip(&self.vertices[b])
                .map(|(x, y)| x - y)
                .collect();
            let nonzero: Vec<&BigInt> = diff.iter().filter(|x| !x.is_zero()).collect();
            nonzero.len() == 2 && nonzero.iter().all(|x| x.abs().is_one())
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> LatticePolytope {
        LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 0]]).unwrap()
    }

    #[test]
    fn segment_points_and_volume() {
        let s = LatticePolytope::from_i64(&[&[0], &[2]]).unwrap();
        assert_eq!(
            s.lattice_points().unwrap(),
            vec![int_vec(&[0]), int_vec(&[1]), int_vec(&[2])]
        );
        assert_eq!(s.normalized_volume().unwrap(), BigInt::from(2));
    }

    #[test]
    fn square_basics() {
        let sq = square();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.normalized_volume().unwrap(), BigInt::from(2));
        assert_eq!(sq.edges().len(), 4);
        assert_eq!(sq.is_idp(3).unwrap(), IdpOutcome::Idp);
        assert!(sq.is_idp(1).is_err());
    }

    #[test]
    fn matroid_edge_test() {
        let edge = LatticePolytope::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]).unwrap();
        assert!(!edge.is_matroid_polytope().unwrap());
        let tri = LatticePolytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(tri.is_matroid_polytope().unwrap());
        assert!(square().is_matroid_polytope().is_err());
    }

    #[test]
    fn point_polytope() {
        let p = LatticePolytope::from_i64(&[&[3, 4]]).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.normalized_volume().unwrap(), BigInt::one());
        assert_eq!(p.lattice_points().unwrap(), vec![int_vec(&[3, 4])]);
    }
}
