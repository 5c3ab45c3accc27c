use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{
    affine_hull, rat_vec, saturate, solve_integer, to_integer_vec, AffineHull, IntegerMatrix,
    Rational,
};

/// Labeled points; the label of a point is its index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    points: Vec<Vec<Rational>>,
}

/// Intrinsic coordinates of a configuration inside its affine hull. For
/// integral configurations these are coordinates in a basis of the affine
/// lattice, so determinants are normalized lattice volumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub dim: usize,
    pub coords: Vec<Vec<Rational>>,
}

impl PointConfiguration {
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::invalid("a configuration needs at least one point"))?;
        let d = first.len();
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::invalid("points have inconsistent dimensions"));
        }
        let distinct: BTreeSet<&Vec<Rational>> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::invalid("repeated points are not supported"));
        }
        Ok(PointConfiguration { points })
    }

    pub fn from_integers(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| rat_vec(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, label: usize) -> &[Rational] {
        &self.points[label]
    }

    pub fn is_integral(&self) -> bool {
        self.points.iter().flatten().all(|x| x.is_integer())
    }

    pub fn integer_point(&self, label: usize) -> Option<Vec<BigInt>> {
        to_integer_vec(&self.points[label])
    }

    pub fn affine_hull(&self) -> AffineHull {
        affine_hull(&self.points).expect("configuration is nonempty and rectangular")
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.affine_hull().dim
    }

    pub fn frame(&self) -> Frame {
        let aff = self.affine_hull();
        let k = aff.dim;
        if k == self.ambient_dim() {
            return Frame {
                dim: k,
                coords: self.points.clone(),
            };
        }
        if self.is_integral() {
            let ints: Vec<Vec<BigInt>> = self
                .points
                .iter()
                .map(|p| to_integer_vec(p).expect("integral"))
                .collect();
            let diffs: Vec<Vec<BigInt>> = ints
                .iter()
                .map(|p| p.iter().zip(&ints[0]).map(|(a, b)| a - b).collect())
                .collect();
            let gens =
                IntegerMatrix::from_rows(diffs.clone(), self.ambient_dim()).expect("rectangular");
            let basis = saturate(&gens);
            let coords = diffs
                .iter()
                .map(|v| {
                    solve_integer(&basis, v)
                        .expect("differences lie in the saturated lattice")
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect()
                })
                .collect();
            return Frame { dim: k, coords };
        }
        Frame {
            dim: k,
            coords: self.points.iter().map(|p| aff.project(p)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeats_and_empty() {
        assert!(PointConfiguration::new(vec![]).is_err());
        assert!(PointConfiguration::from_integers(&[&[0, 0], &[0, 0]]).is_err());
        assert!(PointConfiguration::from_integers(&[&[0, 0], &[1]]).is_err());
    }

    #[test]
    fn lattice_frame_of_a_diagonal() {
        let c = PointConfiguration::from_integers(&[&[0, 0], &[1, 1], &[3, 3]]).unwrap();
        let f = c.frame();
        assert_eq!(f.dim, 1);
        let xs: Vec<_> = f.coords.iter().map(|v| v[0].clone()).collect();
        assert_eq!(xs, rat_vec(&[0, 1, 3]));
    }
}
