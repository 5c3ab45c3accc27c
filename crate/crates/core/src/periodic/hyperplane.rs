use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::delaunay::check_volume;
use super::subdivision::{PeriodicCell, PeriodicSubdivision};
use crate::combinatorics::box_points;
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, vertices_of_inequalities, IntegerMatrix, Rational};
use crate::polytope::VectorSystem;

fn to_rat(m: &[BigInt]) -> Vec<Rational> {
    m.iter().cloned().map(Rational::from_integer).collect()
}

fn eval(l: &[Rational], x: &[Rational]) -> Rational {
    l.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// The cell `{x : k_i ≤ l_i · x ≤ k_i + 1}`.
fn cell_vertices(ls: &[Vec<Rational>], k: &[BigInt]) -> Result<Vec<Vec<Rational>>> {
    let mut ineqs = Vec::with_capacity(2 * ls.len());
    for (l, ki) in ls.iter().zip(k) {
        ineqs.push((l.clone(), Rational::from_integer(ki.clone())));
        ineqs.push((
            l.iter().map(|x| -x).collect(),
            -Rational::from_integer(ki + 1),
        ));
    }
    vertices_of_inequalities(ls[0].len(), &ineqs, &[])
}

/// The `ℤ^r`-periodic subdivision of `ℝ^r` cut out by the hyperplanes
/// `l_i · x ∈ ℤ`. Its vertices are all integral exactly when the system is
/// unimodular.
pub fn hyperplane_subdivision(system: &VectorSystem) -> Result<PeriodicSubdivision> {
    let r = system.r();
    if r == 0 {
        return Err(Error::invalid("hyperplane systems need r ≥ 1"));
    }
    if system.vectors().iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Err(Error::invalid("zero vector in hyperplane system"));
    }
    if !system.is_spanning() {
        return Err(Error::invalid("vectors do not span"));
    }
    let ls: Vec<Vec<Rational>> = system.vectors().iter().map(|v| to_rat(v)).collect();
    let ints = system.vectors();

    // A point on no hyperplane: coordinates N^-1, N^-2, … with N exceeding
    // twice every entry, so each l_i · p is a nonzero balanced base-N fraction.
    let max = ints
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or_default();
    let n = Rational::from_integer(max * 2 + 3);
    let mut p = Vec::with_capacity(r);
    let mut cur = Rational::one();
    for _ in 0..r {
        cur /= &n;
        p.push(cur.clone());
    }
    let start: Vec<BigInt> = ls
        .iter()
        .map(|l| eval(l, &p).floor().to_integer())
        .collect();

    let basis = IntegerMatrix::identity(r);
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut cells = Vec::new();
    let mut queue = VecDeque::new();
    let canonical = |k: Vec<BigInt>| -> Result<(Vec<BigInt>, Vec<Vec<Rational>>)> {
        let verts = cell_vertices(&ls, &k)?;
        let t: Vec<BigInt> = verts[0].iter().map(|x| x.floor().to_integer()).collect();
        let k: Vec<BigInt> = k
            .iter()
            .zip(ints)
            .map(|(ki, l)| ki - l.iter().zip(&t).map(|(a, b)| a * b).sum::<BigInt>())
            .collect();
        let verts = cell_vertices(&ls, &k)?;
        Ok((k, verts))
    };
    let (k0, v0) = canonical(start)?;
    seen.insert(k0.clone());
    queue.push_back(v0);
    while let Some(verts) = queue.pop_front() {
        let hull = convex_hull(&verts)?;
        if hull.dim != r {
            return Err(Error::Internal(
                "hyperplane cell is not full-dimensional".into(),
            ));
        }
        for facet in &hull.facets {
            let m = Rational::from_integer(BigInt::from(facet.incident.len()));
            let centre: Vec<Rational> = (0..r)
                .map(|j| {
                    facet
                        .incident
                        .iter()
                        .map(|&i| verts[i][j].clone())
                        .sum::<Rational>()
                        / &m
                })
                .collect();
            let next: Vec<BigInt> = ls
                .iter()
                .map(|l| {
                    let v = eval(l, &centre);
                    if v.is_integer() {
                        // Crossing outward; the inward normal points back.
                        if eval(l, &facet.normal).is_negative() {
                            v.to_integer()
                        } else {
                            v.to_integer() - 1
                        }
                    } else {
                        v.floor().to_integer()
                    }
                })
                .collect();
            let (key, nv) = canonical(next)?;
            if seen.insert(key.clone()) {
                queue.push_back(nv);
            }
        }
        let lo: Vec<i64> = (0..r)
            .map(|j| verts.iter().map(|v| v[j].floor()).min().unwrap())
            .map(|x| i64::try_from(x.to_integer()).unwrap())
            .collect();
        let hi: Vec<i64> = (0..r)
            .map(|j| verts.iter().map(|v| v[j].ceil()).max().unwrap())
            .map(|x| i64::try_from(x.to_integer()).unwrap())
            .collect();
        let marking: Vec<Vec<BigInt>> = box_points(&lo, &hi)
            .into_iter()
            .map(|p| p.into_iter().map(BigInt::from).collect::<Vec<_>>())
            .filter(|m| hull.contains(&to_rat(m)))
            .collect();
        cells.push(PeriodicCell::new(verts, marking));
    }
    let out = PeriodicSubdivision::new(&basis, cells)?;
    check_volume(&out)?;
    Ok(out)
}

/// A multigraph with oriented edges; loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) has an endpoint out of range"
            )));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn components(&self) -> usize {
        self.spanning_forest().1
    }

    /// BFS forest: parent edge of each vertex, and the component count.
    fn spanning_forest(&self) -> (Vec<Option<usize>>, usize) {
        let mut adj = vec![Vec::new(); self.vertices];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                adj[u].push((e, v));
                adj[v].push((e, u));
            }
        }
        let mut parent = vec![None; self.vertices];
        let mut visited = vec![false; self.vertices];
        let mut components = 0;
        for root in 0..self.vertices {
            if visited[root] {
                continue;
            }
            components += 1;
            visited[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &(e, y) in &adj[x] {
                    if !visited[y] {
                        visited[y] = true;
                        parent[y] = Some(e);
                        queue.push_back(y);
                    }
                }
            }
        }
        (parent, components)
    }
}

/// Fundamental cycles of the BFS spanning forest, one row per non-tree edge
/// in input order. Each row has `+1` on its non-tree edge.
pub fn cycle_space_basis(graph: &Graph) -> IntegerMatrix {
    let (parent, _) = graph.spanning_forest();
    let tree: BTreeSet<usize> = parent.iter().flatten().copied().collect();
    let ne = graph.edges.len();
    let mut rows = Vec::new();
    // Path to the root as (edge, sign) for traversal toward the root.
    let to_root = |mut x: usize| -> Vec<(usize, usize, i64)> {
        let mut path = Vec::new();
        while let Some(e) = parent[x] {
            let (a, b) = graph.edges[e];
            let (next, sign) = if b == x { (a, -1) } else { (b, 1) };
            path.push((x, e, sign));
            x = next;
        }
        path
    };
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        if tree.contains(&e) {
            continue;
        }
        let mut row = vec![BigInt::zero(); ne];
        row[e] += 1;
        if u != v {
            // Close the cycle by walking v → u through the tree.
            let pv = to_root(v);
            let pu = to_root(u);
            let on_u: BTreeSet<usize> = pu.iter().map(|&(_, e, _)| e).collect();
            let on_v: BTreeSet<usize> = pv.iter().map(|&(_, e, _)| e).collect();
            for &(_, t, s) in pv.iter().filter(|(_, t, _)| !on_u.contains(t)) {
                row[t] += s;
            }
            for &(_, t, s) in pu.iter().filter(|(_, t, _)| !on_v.contains(t)) {
                row[t] -= s;
            }
        }
        rows.push(row);
    }
    IntegerMatrix::from_rows(rows, ne).expect("consistent width")
}

/// Intersection of `H_1(G, ℝ)` with the unit cubes of `ℝ^E`, in coordinates
/// of the fundamental cycle basis. Periodic under `H_1(G, ℤ)`.
pub fn cographic_subdivision(graph: &Graph) -> Result<PeriodicSubdivision> {
    let b = cycle_space_basis(graph);
    let k = b.rows();
    if k == 0 {
        return Err(Error::invalid("graph has no cycles"));
    }
    let columns: Vec<Vec<BigInt>> = (0..b.cols())
        .map(|e| (0..k).map(|i| b.get(i, e).clone()).collect::<Vec<_>>())
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let out = hyperplane_subdivision(&VectorSystem::new(k, columns)?)?;
    if !out.has_integral_vertices() {
        return Err(Error::Internal(
            "cographic cell has a non-integral vertex".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arrangements() {
        let seg = hyperplane_subdivision(&VectorSystem::from_i64(1, &[&[1]]).unwrap()).unwrap();
        assert_eq!(seg.len(), 1);
        let sq = hyperplane_subdivision(&VectorSystem::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap())
            .unwrap();
        assert_eq!(sq.len(), 1);
        let tri = hyperplane_subdivision(
            &VectorSystem::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap(),
        )
        .unwrap();
        assert_eq!(tri.len(), 2);
        assert!(tri.has_integral_vertices());
        let bad = hyperplane_subdivision(&VectorSystem::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap())
            .unwrap();
        assert!(!bad.has_integral_vertices());
    }

    #[test]
    fn cycles() {
        let c3 = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = cycle_space_basis(&c3);
        assert_eq!(b.to_rows(), vec![vec![BigInt::from(1); 3]]);
        assert_eq!(cographic_subdivision(&c3).unwrap().len(), 1);
        let tree = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(cycle_space_basis(&tree).rows(), 0);
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(cycle_space_basis(&k4).rows(), 3);
        assert!(cographic_subdivision(&k4).unwrap().has_integral_vertices());
    }
}
