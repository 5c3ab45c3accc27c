//! Double description method over the integers.
//!
//! Computes the extreme rays and lineality space of `{x : a_i · x ≥ 0}` by
//! inserting one constraint at a time. Rays are kept primitive, so the whole
//! computation is fraction-free. Adjacency uses the combinatorial test on
//! zero sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{dot_int, primitive};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeRays {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Bitset,
}

#[derive(Clone, PartialEq, Eq)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, o: &Bitset) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// `a * x − b * y`, made primitive.
fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    make_primitive(x.iter().zip(y).map(|(xi, yi)| a * xi - b * yi).collect())
}

/// Extreme rays and lineality basis of `{x ∈ ℚ^dim : c · x ≥ 0 for c in constraints}`.
pub fn dual_description(dim: usize, constraints: &[Vec<BigInt>]) -> ConeRays {
    let m = constraints.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        assert_eq!(a.len(), dim, "constraint width mismatch");
        if let Some(p) = lineality.iter().position(|l| !dot_int(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(p);
            let mut al0 = dot_int(a, &l0);
            if al0.is_negative() {
                l0 = l0.into_iter().map(|x| -x).collect();
                al0 = -al0;
            }
            lineality = lineality
                .iter()
                .map(|l| combine(&al0, l, &dot_int(a, l), &l0))
                .filter(|l| l.iter().any(|x| !x.is_zero()))
                .collect();
            for r in rays.iter_mut() {
                let ar = dot_int(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al0, &r.v, &ar, &l0);
                }
                r.zeros.insert(k);
            }
            let mut zeros = Bitset::new(m);
            for j in 0..k {
                zeros.insert(j);
            }
            rays.push(Ray {
                v: make_primitive(l0),
                zeros,
            });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let pointed_dim = dim - lineality.len();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if pointed_dim >= 2 && common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|o| o == p || o == n || !common.is_subset(&rays[o].zeros));
                if !adjacent {
                    continue;
                }
                let v = combine(&values[p], &rays[n].v, &values[n], &rays[p].v);
                let mut zeros = common;
                zeros.insert(k);
                next.push(Ray { v, zeros });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.insert(k);
            }
            next.push(r);
        }
        rays = next;
    }
    ConeRays {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}

/// Vertices of the polytope `{x : a·x ≥ b for (a,b) in inequalities, a·x = b for (a,b) in equations}`.
///
/// Returns an empty list when the polytope is empty and an error when it is
/// unbounded.
pub fn vertices_of_inequalities(
    dim: usize,
    inequalities: &[(Vec<Rational>, Rational)],
    equations: &[(Vec<Rational>, Rational)],
) -> Result<Vec<Vec<Rational>>> {
    // Homogenize with z = (t, x): a·x − b·t ≥ 0, t ≥ 0.
    let homog = |a: &[Rational], b: &Rational| -> Vec<BigInt> {
        let mut row = Vec::with_capacity(dim + 1);
        row.push(-b.clone());
        row.extend(a.iter().cloned());
        primitive(&row)
    };
    let mut rows = Vec::with_capacity(inequalities.len() + 2 * equations.len() + 1);
    let mut t_row = vec![BigInt::zero(); dim + 1];
    t_row[0] = BigInt::one();
    rows.push(t_row);
    for (a, b) in equations {
        if a.len() != dim {
            return Err(Error::invalid("equation width mismatch"));
        }
        let r = homog(a, b);
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
    }
    for (a, b) in inequalities {
        if a.len() != dim {
            return Err(Error::invalid("inequality width mismatch"));
        }
        rows.push(homog(a, b));
    }
    let cone = dual_description(dim + 1, &rows);
    let mut vertices: Vec<Vec<Rational>> = cone
        .rays
        .iter()
        .filter(|r| r[0].is_positive())
        .map(|r| {
            r[1..]
                .iter()
                .map(|x| Rational::new(x.clone(), r[0].clone()))
                .collect()
        })
        .collect();
    if vertices.is_empty() {
        return Ok(vertices);
    }
    if !cone.lineality.is_empty() || cone.rays.iter().any(|r| r[0].is_zero()) {
        return Err(Error::invalid("polyhedron is unbounded"));
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::{int_vec, rat_vec};
    use crate::lattice::rational::rat;

    #[test]
    fn orthant_rays() {
        let c = dual_description(2, &[int_vec(&[1, 0]), int_vec(&[0, 1])]);
        let mut rays = c.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        assert!(c.lineality.is_empty());
    }

    #[test]
    fn halfplane_has_lineality() {
        let c = dual_description(2, &[int_vec(&[1, 1])]);
        assert_eq!(c.rays.len(), 1);
        assert_eq!(c.lineality.len(), 1);
    }

    #[test]
    fn square_vertices() {
        let ineq = vec![
            (rat_vec(&[1, 0]), rat(0)),
            (rat_vec(&[-1, 0]), rat(-1)),
            (rat_vec(&[0, 1]), rat(0)),
            (rat_vec(&[0, -1]), rat(-1)),
        ];
        let v = vertices_of_inequalities(2, &ineq, &[]).unwrap();
        assert_eq!(
            v,
            vec![
                rat_vec(&[0, 0]),
                rat_vec(&[0, 1]),
                rat_vec(&[1, 0]),
                rat_vec(&[1, 1])
            ]
        );
    }

    #[test]
    fn empty_and_unbounded() {
        let empty = vec![(rat_vec(&[1]), rat(1)), (rat_vec(&[-1]), rat(0))];
        assert!(vertices_of_inequalities(1, &empty, &[]).unwrap().is_empty());
        let unbounded = vec![(rat_vec(&[1]), rat(0))];
        assert!(vertices_of_inequalities(1, &unbounded, &[]).is_err());
    }

    #[test]
    fn slice_of_cube() {
        // 0 ≤ x ≤ 1 in ℝ³ with x1+x2+x3 = 1: the standard triangle
        let mut ineq = Vec::new();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            ineq.push((rat_vec(&e), rat(0)));
            e[i] = -1;
            ineq.push((rat_vec(&e), rat(-1)));
        }
        let eq = vec![(rat_vec(&[1, 1, 1]), rat(1))];
        let v = vertices_of_inequalities(3, &ineq, &eq).unwrap();
        assert_eq!(v.len(), 3);
    }
}
