//! Independent brute-force oracles shared by the integration tests. Nothing
//! here calls into the library.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational as Q;
use num_traits::{One, Signed, Zero};

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qv(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn iv(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Reduced row echelon form and pivot columns.
pub fn echelon(rows: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    echelon(rows).1.len()
}

/// Intrinsic dimension of a point set.
pub fn affine_dim(points: &[Vec<Q>]) -> usize {
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// The unique solution of `A x = b`, if there is exactly one.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first()?.len();
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    let (m, pivots) = echelon(&aug);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

/// Fraction-free Gaussian elimination (Bareiss).
pub fn bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `gcd` of all `k × k` minors of an integer matrix.
pub fn minor_gcd(m: &[Vec<BigInt>], k: usize) -> BigInt {
    use num_integer::Integer;
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            g = g.gcd(&bareiss(&sub));
        }
    }
    g
}

/// Cells of the regular subdivision of `points` under heights `h`: every
/// affinely independent spanning subset defines an interpolating affine
/// function; it supports a lower face when no lifted point lies below it,
/// and the cell is the set of points on it.
pub fn lower_cells(points: &[Vec<Q>], h: &[Q]) -> BTreeSet<Vec<usize>> {
    let k = affine_dim(points);
    let d = points[0].len();
    let mut cells = BTreeSet::new();
    for s in subsets(points.len(), k + 1) {
        let basis: Vec<Vec<Q>> = s.iter().map(|&i| points[i].clone()).collect();
        if affine_dim(&basis) != k {
            continue;
        }
        // Barycentric coordinates: d coordinate rows plus Σ λ = 1.
        let mut a: Vec<Vec<Q>> = (0..d)
            .map(|c| basis.iter().map(|p| p[c].clone()).collect())
            .collect();
        a.push(vec![Q::one(); k + 1]);
        let mut marking = Vec::new();
        let mut ok = true;
        for (i, p) in points.iter().enumerate() {
            let mut b = p.clone();
            b.push(Q::one());
            let lambda = solve_unique(&a, &b).expect("point lies in the affine hull");
            let alpha: Q = lambda.iter().zip(&s).map(|(l, &j)| l * &h[j]).sum();
            match h[i].cmp(&alpha) {
                std::cmp::Ordering::Less => {
                    ok = false;
                    break;
                }
                std::cmp::Ordering::Equal => marking.push(i),
                std::cmp::Ordering::Greater => {}
            }
        }
        if ok {
            cells.insert(marking);
        }
    }
    cells
}

/// Incidence sets of the facets of the convex hull of integer points, by
/// testing every hyperplane through `dim` points. Works inside the affine
/// hull by projecting to pivot coordinates.
pub fn hull_facets(points: &[Vec<BigInt>]) -> BTreeSet<Vec<usize>> {
    let qp: Vec<Vec<Q>> = points
        .iter()
        .map(|p| p.iter().cloned().map(Q::from_integer).collect())
        .collect();
    let diffs: Vec<Vec<Q>> = qp[1..]
        .iter()
        .map(|p| p.iter().zip(&qp[0]).map(|(a, b)| a - b).collect())
        .collect();
    let (_, pivots) = echelon(&diffs);
    let k = pivots.len();
    let mut facets = BTreeSet::new();
    if k == 0 {
        return facets;
    }
    let proj: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();
    for s in subsets(points.len(), k) {
        // Normal by cofactor expansion of the (k−1) × k difference matrix.
        let rows: Vec<Vec<BigInt>> = s[1..]
            .iter()
            .map(|&i| {
                proj[i]
                    .iter()
                    .zip(&proj[s[0]])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let normal: Vec<BigInt> = (0..k)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let det = bareiss(&minor);
                if j % 2 == 0 {
                    det
                } else {
                    -det
                }
            })
            .collect();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let dot = |p: &Vec<BigInt>| -> BigInt { p.iter().zip(&normal).map(|(a, b)| a * b).sum() };
        let offset = dot(&proj[s[0]]);
        let vals: Vec<BigInt> = proj.iter().map(|p| dot(p) - &offset).collect();
        if vals.iter().any(Signed::is_positive) && vals.iter().any(Signed::is_negative) {
            continue;
        }
        facets.insert((0..points.len()).filter(|&i| vals[i].is_zero()).collect());
    }
    facets
}

/// Normalized volume `k! · vol` of a full-dimensional simplex given by
/// integer vertices.
pub fn simplex_volume(vertices: &[Vec<BigInt>]) -> BigInt {
    let rows: Vec<Vec<BigInt>> = vertices[1..]
        .iter()
        .map(|p| p.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    bareiss(&rows).abs()
}
