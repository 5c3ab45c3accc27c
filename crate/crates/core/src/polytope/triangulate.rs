use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::lattice::{convex_hull, determinant, Rational};

/// Pulling triangulation of `conv(points)`: cone from the first vertex over a
/// pulling triangulation of every facet not containing it. Simplices are
/// returned as sorted index lists.
pub fn pulling_triangulation(points: &[Vec<Rational>]) -> Result<Vec<Vec<usize>>> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut out = pull(points, &all)?;
    for s in out.iter_mut() {
        s.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn pull(points: &[Vec<Rational>], idx: &[usize]) -> Result<Vec<Vec<usize>>> {
    let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| points[i].clone()).collect();
    let hull = convex_hull(&sub)?;
    let apex_local = hull.vertices[0];
    if hull.dim == 0 {
        return Ok(vec![vec![idx[apex_local]]]);
    }
    let mut out = Vec::new();
    for f in &hull.facets {
        if f.incident.binary_search(&apex_local).is_ok() {
            continue;
        }
        let face: Vec<usize> = f.incident.iter().map(|&j| idx[j]).collect();
        for mut s in pull(points, &face)? {
            s.push(idx[apex_local]);
            out.push(s);
        }
    }
    Ok(out)
}

/// `|det(p_1 − p_0, …, p_k − p_0)|` for `k + 1` points in `ℚ^k`.
pub fn simplex_volume(simplex: &[&[Rational]]) -> Rational {
    let base = simplex[0];
    let rows: Vec<Vec<Rational>> = simplex[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    determinant(&rows).abs()
}

/// Normalized volume (`d!` times Euclidean volume) of `conv(points)` in `ℚ^d`;
/// zero when the hull is not full-dimensional.
pub fn volume(points: &[Vec<Rational>]) -> Result<Rational> {
    let d = points.first().map_or(0, |p| p.len());
    let hull = convex_hull(points)?;
    if hull.dim < d {
        return Ok(Rational::zero());
    }
    if d == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    let simplices = pulling_triangulation(points)?;
    Ok(simplices
        .iter()
        .map(|s| {
            let refs: Vec<&[Rational]> = s.iter().map(|&i| points[i].as_slice()).collect();
            simplex_volume(&refs)
        })
        .sum())
}
