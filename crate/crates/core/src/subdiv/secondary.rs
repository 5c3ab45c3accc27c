use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::enumerate::enumerate_triangulations;
use super::geometry::Geometry;
use super::subdivision::{
    gkz, lower_envelope, marked_complex_of, regularity, MarkedSubdivision, Regularity,
};
use crate::complex::marked_section_complex;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{
    affine_hull, convex_hull, dot, faces_of, to_integer_vec, HullResult, Rational,
};
use crate::polytope::{LatticePolytope, PointConfiguration};

/// Hull of the GKZ vectors of all triangulations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondaryPolytope {
    pub triangulations: Vec<MarkedSubdivision>,
    /// GKZ vector of each triangulation, in the same order.
    pub gkz: Vec<Vec<Rational>>,
    pub hull: HullResult,
    pub dim: usize,
}

impl SecondaryPolytope {
    /// Indices of the triangulations whose GKZ vectors are vertices.
    pub fn vertices(&self) -> &[usize] {
        &self.hull.vertices
    }

    /// Nonempty faces as sets of triangulation indices.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        faces_of(&self.hull, self.gkz.len())
    }

    pub fn face_dim(&self, face: &[usize]) -> usize {
        let pts: Vec<Vec<Rational>> = face.iter().map(|&i| self.gkz[i].clone()).collect();
        affine_hull(&pts).map_or(0, |a| a.dim)
    }

    /// The polytope itself; GKZ vectors of integral configurations are integral.
    pub fn lattice_polytope(&self) -> Result<LatticePolytope> {
        let pts = self
            .gkz
            .iter()
            .map(|v| {
                to_integer_vec(v).ok_or_else(|| Error::invalid("GKZ vectors are not integral"))
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::new(pts)
    }
}

pub fn secondary_polytope(
    config: &PointConfiguration,
    exec: Execution,
) -> Result<SecondaryPolytope> {
    let geo = Geometry::new(config);
    secondary(&geo, config, exec)
}

fn secondary(
    geo: &Geometry,
    config: &PointConfiguration,
    exec: Execution,
) -> Result<SecondaryPolytope> {
    let triangulations = enumerate_triangulations(config, exec)?;
    let gkz = exec
        .map(&triangulations, |t| gkz(geo, t))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let hull = convex_hull(&gkz)?;
    let expected = geo.len() - geo.dim - 1;
    if hull.dim != expected {
        return Err(Error::Internal(format!(
            "secondary polytope has dimension {}, expected {expected}",
            hull.dim
        )));
    }
    Ok(SecondaryPolytope {
        triangulations,
        gkz,
        dim: hull.dim,
        hull,
    })
}

/// A face of the secondary polytope with the regular subdivision it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularFace {
    pub subdivision: MarkedSubdivision,
    pub face_dim: usize,
    /// Triangulations (indices into the secondary polytope) on the face.
    pub triangulations: Vec<usize>,
    /// A height in the relative interior of the face's normal cone.
    pub height: Vec<Rational>,
}

/// One regular subdivision per nonempty face, ordered by face dimension and
/// then by cells.
pub fn enumerate_regular_subdivisions(
    config: &PointConfiguration,
    exec: Execution,
) -> Result<Vec<RegularFace>> {
    let geo = Geometry::new(config);
    let sec = secondary(&geo, config, exec)?;
    let faces = sec.faces();
    let mut out = exec
        .map(&faces, |face| {
            // Summing inward facet normals over the facets containing the
            // face gives a functional minimized exactly on the face.
            let mut psi = vec![Rational::zero(); geo.len()];
            for f in sec
                .hull
                .facets
                .iter()
                .filter(|f| face.iter().all(|i| f.incident.binary_search(i).is_ok()))
            {
                for (p, a) in psi.iter_mut().zip(&f.normal) {
                    *p += a;
                }
            }
            let scale = psi.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let height: Vec<Rational> = psi
                .iter()
                .map(|x| x * Rational::from_integer(scale.clone()))
                .collect();
            Ok(RegularFace {
                subdivision: lower_envelope(&geo, &height)?,
                face_dim: sec.face_dim(face),
                triangulations: face.clone(),
                height,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| {
        a.face_dim
            .cmp(&b.face_dim)
            .then_with(|| a.subdivision.cmp(&b.subdivision))
    });
    if out.windows(2).any(|w| w[0].subdivision == w[1].subdivision) {
        return Err(Error::Internal(
            "two faces induce the same subdivision".into(),
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDimensions {
    pub secondary_dim: usize,
    /// Dimension of the secondary face of the subdivision.
    pub face_dim: usize,
    pub secondary_codim: usize,
    pub gluing_h1_rank: usize,
    /// The gluing moduli exceed the face dimension, signalling components
    /// beyond the secondary-polytope one.
    pub flag: bool,
}

pub fn stratum_dimensions(
    config: &PointConfiguration,
    sub: &MarkedSubdivision,
    exec: Execution,
) -> Result<StratumDimensions> {
    let geo = Geometry::new(config);
    sub.validate(&geo)?;
    let Regularity::Regular { heights } = regularity(&geo, sub)? else {
        return Err(Error::invalid("the subdivision is not regular"));
    };
    let sec = secondary(&geo, config, exec)?;
    let values: Vec<Rational> = sec.gkz.iter().map(|g| dot(&heights, g)).collect();
    let min = values
        .iter()
        .min()
        .expect("at least one triangulation")
        .clone();
    let face: Vec<usize> = (0..values.len()).filter(|&i| values[i] == min).collect();
    let face_dim = sec.face_dim(&face);
    let mc = marked_complex_of(config, sub)?;
    let (_, coh) = marked_section_complex(&mc, exec)?;
    Ok(StratumDimensions {
        secondary_dim: sec.dim,
        face_dim,
        secondary_codim: sec.dim - face_dim,
        gluing_h1_rank: coh.h1_rank,
        flag: coh.h1_rank > face_dim,
    })
}
