mod common;

use std::collections::BTreeSet;

use common::{affine_dim, bareiss, iv, lower_cells, q, rank, solve_unique, subsets};
use num_bigint::BigInt;
use num_rational::BigRational as Q;
use num_traits::{One, Signed, Zero};
use polystrata::lattice::{convex_hull, vertices_of_inequalities, IntegerMatrix};
use polystrata::periodic::{
    cographic_subdivision, cycle_space_basis, delaunay, hyperplane_subdivision, semi_delaunay,
    Graph, PeriodicCell, PeriodicSubdivision, QuadraticForm, ResidueFunction, DEFAULT_WINDOW,
};
use polystrata::polytope::{UnimodularCheck, VectorSystem};
use polystrata::Execution;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn form(rows: &[&[i64]]) -> QuadraticForm {
    QuadraticForm::from_i64(rows).unwrap()
}

fn eval(rows: &[Vec<Q>], m: &[i64]) -> Q {
    let mut s = Q::zero();
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            s += x * q(m[i] * m[j]);
        }
    }
    s
}

fn box_points(g: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

/// Interpolates the lifted marking, then checks every lattice point of the
/// box lies on or above the plane, with equality exactly on the marking.
fn assert_empty_paraboloid(entries: &[Vec<Q>], cell: &PeriodicCell, lo: i64, hi: i64) {
    let g = entries.len();
    let marking: Vec<Vec<i64>> = cell.marking.iter().map(|m| to_i64(m)).collect();
    let basis = subsets(marking.len(), g + 1)
        .into_iter()
        .find(|s| {
            affine_dim(
                &s.iter()
                    .map(|&i| common::qv(&marking[i]))
                    .collect::<Vec<_>>(),
            ) == g
        })
        .expect("full-dimensional marking");
    let a: Vec<Vec<Q>> = basis
        .iter()
        .map(|&i| marking[i].iter().map(|&x| q(x)).chain([Q::one()]).collect())
        .collect();
    let b: Vec<Q> = basis.iter().map(|&i| eval(entries, &marking[i])).collect();
    let alpha = solve_unique(&a, &b).unwrap();
    let on: BTreeSet<Vec<i64>> = marking.iter().cloned().collect();
    for m in box_points(g, lo, hi) {
        let plane: Q = m.iter().zip(&alpha).map(|(&x, c)| c * q(x)).sum::<Q>() + &alpha[g];
        let gap = eval(entries, &m) - plane;
        assert!(!gap.is_negative(), "{m:?} below cell {:?}", cell.marking);
        assert_eq!(
            gap.is_zero(),
            on.contains(&m),
            "{m:?} vs marking {:?}",
            cell.marking
        );
    }
}

/// Compares the Delaunay cells against the lower facets of the lifted
/// window `[-w, w]^g`: translates inside the window must appear, and window
/// cells well inside it must be translates.
fn assert_matches_window_hull(d: &PeriodicSubdivision, entries: &[Vec<Q>], w: i64) {
    let g = entries.len();
    let pts = box_points(g, -w, w);
    let qp: Vec<Vec<Q>> = pts.iter().map(|p| common::qv(p)).collect();
    let h: Vec<Q> = pts.iter().map(|p| eval(entries, p)).collect();
    let oracle = lower_cells(&qp, &h);
    let index = |m: &[BigInt]| pts.iter().position(|p| *p == to_i64(m));
    let mut translates = BTreeSet::new();
    for c in d.translates(-2 * w, 2 * w) {
        if let Some(ix) = c
            .marking
            .iter()
            .map(|m| index(m))
            .collect::<Option<Vec<usize>>>()
        {
            let mut ix = ix;
            ix.sort();
            assert!(
                oracle.contains(&ix),
                "translate {:?} is not a window cell",
                c.marking
            );
            translates.insert(ix);
        }
    }
    for cell in &oracle {
        if cell.iter().all(|&i| pts[i].iter().all(|x| x.abs() < w)) {
            assert!(
                translates.contains(cell),
                "window cell {cell:?} is not a translate"
            );
        }
    }
}

fn check_delaunay(rows: &[&[i64]], expected_cells: Option<usize>) -> PeriodicSubdivision {
    let qf = form(rows);
    let d = delaunay(&qf, DEFAULT_WINDOW).unwrap();
    if let Some(n) = expected_cells {
        assert_eq!(d.len(), n);
    }
    assert!(d.has_integral_vertices());
    let entries = qf.entries().to_vec();
    for c in d.cells() {
        assert_empty_paraboloid(&entries, c, -5, 6);
    }
    d
}

#[test]
fn classical_fixtures_pass_the_oracles() {
    let d1 = check_delaunay(&[&[1]], Some(1));
    assert_matches_window_hull(&d1, &[vec![q(1)]], 4);
    let i2 = check_delaunay(&[&[1, 0], &[0, 1]], Some(1));
    assert_eq!(i2.cells()[0].marking.len(), 4);
    assert_matches_window_hull(&i2, form(&[&[1, 0], &[0, 1]]).entries(), 2);
    let a2 = check_delaunay(&[&[2, -1], &[-1, 2]], Some(2));
    assert!(a2.cells().iter().all(|c| c.marking.len() == 3));
    assert_matches_window_hull(&a2, form(&[&[2, -1], &[-1, 2]]).entries(), 2);
    let a2b = check_delaunay(&[&[2, 1], &[1, 2]], Some(2));
    assert_ne!(a2, a2b);
}

#[test]
fn three_dimensional_forms() {
    // Cube, and the A3 root lattice form (tetrahedra and octahedra).
    let i3 = check_delaunay(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], Some(1));
    assert_eq!(i3.cells()[0].marking.len(), 8);
    let a3 = check_delaunay(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]], None);
    assert_eq!(a3.total_volume().unwrap(), q(6));
    // Two tetrahedra and a six-point cell whose lifts are coplanar.
    let skew = check_delaunay(&[&[3, 1, 1], &[1, 4, 1], &[1, 1, 5]], Some(3));
    let mut sizes: Vec<usize> = skew.cells().iter().map(|c| c.marking.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![4, 4, 6]);
    assert_eq!(skew.total_volume().unwrap(), q(6));
}

/// Random unimodular `U` with its inverse, as products of elementary moves.
fn random_unimodular(rng: &mut impl Rng, g: usize, steps: usize) -> (IntegerMatrix, IntegerMatrix) {
    let mut u = IntegerMatrix::identity(g);
    let mut inv = IntegerMatrix::identity(g);
    for _ in 0..steps {
        let mut e = IntegerMatrix::identity(g);
        let mut e_inv = IntegerMatrix::identity(g);
        let i = rng.gen_range(0..g);
        let j = (i + rng.gen_range(1..g)) % g;
        match rng.gen_range(0..3) {
            0 => {
                let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                e.set(i, j, s.into());
                e_inv.set(i, j, (-s).into());
            }
            1 => {
                for m in [&mut e, &mut e_inv] {
                    m.set(i, i, 0.into());
                    m.set(j, j, 0.into());
                    m.set(i, j, 1.into());
                    m.set(j, i, 1.into());
                }
            }
            _ => {
                e.set(i, i, (-1).into());
                e_inv.set(i, i, (-1).into());
            }
        }
        u = u.mul(&e);
        inv = e_inv.mul(&inv);
    }
    assert_eq!(u.mul(&inv), IntegerMatrix::identity(g));
    (u, inv)
}

#[test]
fn delaunay_is_gl_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let forms = [
        form(&[&[2, -1], &[-1, 2]]),
        form(&[&[1, 0], &[0, 1]]),
        form(&[&[2, 1], &[1, 3]]),
    ];
    for (k, qf) in forms.iter().cycle().take(20).enumerate() {
        let (u, inv) = random_unimodular(&mut rng, 2, 3 + k % 5);
        // Skewed forms need a wider search box than the default.
        let lhs = delaunay(&qf.transform(&u).unwrap(), 1 << 12).unwrap();
        let rhs = delaunay(qf, DEFAULT_WINDOW)
            .unwrap()
            .transform(&inv)
            .unwrap();
        assert_eq!(lhs, rhs, "U = {u:?}");
    }
}

fn positive_definite_2() -> impl Strategy<Value = (i64, i64, i64)> {
    (1i64..=6, -5i64..=5, 1i64..=6).prop_filter("positive definite", |&(a, b, c)| b * b < a * c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delaunay_is_scale_invariant((a, b, c) in positive_definite_2(), num in 1i64..=30, den in 1i64..=30) {
        let qf = form(&[&[a, b], &[b, c]]);
        let lambda = Q::new(num.into(), den.into());
        prop_assert_eq!(
            delaunay(&qf.scaled(&lambda).unwrap(), DEFAULT_WINDOW).unwrap(),
            delaunay(&qf, DEFAULT_WINDOW).unwrap()
        );
    }

    #[test]
    fn random_forms_are_empty_paraboloid_tilings((a, b, c) in positive_definite_2()) {
        let d = check_delaunay(&[&[a, b], &[b, c]], None);
        assert_tiles(&d);
    }
}

/// Generic sample points of `[0, 2)^g` lie in exactly one translate.
fn assert_tiles(d: &PeriodicSubdivision) {
    let g = d.g();
    let hulls: Vec<_> = d
        .translates(-3, 3)
        .iter()
        .map(|c| convex_hull(&c.vertices).unwrap())
        .collect();
    for p in box_points(g, 0, 7) {
        let x: Vec<Q> = p
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                Q::new(v.into(), 4.into()) + Q::new(1.into(), (37 + 4 * i as i64).into())
            })
            .collect();
        let inside = hulls
            .iter()
            .filter(|h| h.contains_relative_interior(&x))
            .count();
        let closure = hulls.iter().filter(|h| h.contains(&x)).count();
        assert!(closure >= 1, "{x:?} is not covered");
        assert!(inside <= 1, "{x:?} lies inside {inside} cells");
    }
    assert_eq!(d.total_volume().unwrap(), d.covolume());
}

#[test]
fn fixtures_tile_the_plane() {
    for rows in [
        &[&[1i64, 0][..], &[0, 1]][..],
        &[&[2, -1], &[-1, 2]],
        &[&[3, 1], &[1, 2]],
    ] {
        let d = delaunay(&form(rows), DEFAULT_WINDOW).unwrap();
        assert_tiles(&d);
        d.validate().unwrap();
    }
}

#[test]
fn semi_delaunay_matches_window_envelope() {
    // Flat form on 2Z with the odd class at the bottom: the window envelope
    // is a single flat facet through the odd points.
    let gamma = IntegerMatrix::from_i64(&[&[2]]);
    let r = ResidueFunction::new(&gamma, vec![(iv(&[0]), q(0)), (iv(&[1]), q(-1))]).unwrap();
    let d = semi_delaunay(&form(&[&[0]]), &r, DEFAULT_WINDOW).unwrap();
    let pts: Vec<Vec<i64>> = (-6..=6).map(|x| vec![x]).collect();
    let h: Vec<Q> = pts
        .iter()
        .map(|p| if p[0] % 2 == 0 { q(0) } else { q(-1) })
        .collect();
    let oracle = lower_cells(&pts.iter().map(|p| common::qv(p)).collect::<Vec<_>>(), &h);
    // Away from the even window ends the envelope is flat on the odd points.
    let odd: Vec<usize> = (0..pts.len()).filter(|&i| pts[i][0] % 2 != 0).collect();
    let last = pts.len() - 1;
    let inner: BTreeSet<Vec<usize>> = oracle
        .into_iter()
        .filter(|c| !c.contains(&0) && !c.contains(&last))
        .collect();
    assert_eq!(inner, BTreeSet::from([odd]));
    assert_eq!(d.len(), 1);
    assert!(d.cells()[0].marking.iter().all(|m| to_i64(m)[0] % 2 != 0));
    assert_eq!(d.total_volume().unwrap(), d.covolume());

    // Positive definite form with a residue twist on 2Z^2.
    let gamma = IntegerMatrix::from_i64(&[&[2, 0], &[0, 2]]);
    let vals = [
        ((0, 0), q(0)),
        ((1, 0), Q::new(1.into(), 2.into())),
        ((0, 1), q(0)),
        ((1, 1), q(-1)),
    ];
    let r = ResidueFunction::new(
        &gamma,
        vals.iter()
            .map(|((a, b), v)| (iv(&[*a, *b]), v.clone()))
            .collect(),
    )
    .unwrap();
    let qf = form(&[&[1, 0], &[0, 1]]);
    let d = semi_delaunay(&qf, &r, DEFAULT_WINDOW).unwrap();
    assert_eq!(d.total_volume().unwrap(), d.covolume());
    let w = 3;
    let pts = box_points(2, -w, w);
    let h: Vec<Q> = pts
        .iter()
        .map(|p| eval(qf.entries(), p) + r.value(&iv(p)))
        .collect();
    let oracle = lower_cells(&pts.iter().map(|p| common::qv(p)).collect::<Vec<_>>(), &h);
    let index = |m: &[BigInt]| pts.iter().position(|p| *p == to_i64(m));
    let mut translates = BTreeSet::new();
    for c in d.translates(-4, 4) {
        if let Some(mut ix) = c
            .marking
            .iter()
            .map(|m| index(m))
            .collect::<Option<Vec<usize>>>()
        {
            ix.sort();
            assert!(oracle.contains(&ix));
            translates.insert(ix);
        }
    }
    for cell in oracle
        .iter()
        .filter(|c| c.iter().all(|&i| pts[i].iter().all(|x| x.abs() < w - 1)))
    {
        assert!(translates.contains(cell));
    }
}

fn random_graph(rng: &mut impl Rng) -> Graph {
    loop {
        let n = rng.gen_range(2..=7);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let max_extra = (n * (n - 1) / 2 - edges.len()).min(12 - edges.len());
        if max_extra == 0 {
            continue;
        }
        let extra = rng.gen_range(1..=max_extra);
        let mut tries = 0;
        while edges.len() < n - 1 + extra && tries < 200 {
            tries += 1;
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b
                && !edges
                    .iter()
                    .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
            {
                edges.push((a, b));
            }
        }
        for e in edges.iter_mut() {
            if rng.gen_bool(0.5) {
                *e = (e.1, e.0);
            }
        }
        return Graph::new(n, edges).unwrap();
    }
}

/// Rows of the cycle basis are cycles and span a space of dimension `E − V + 1`.
fn assert_cycle_basis(graph: &Graph, b: &IntegerMatrix) {
    for i in 0..b.rows() {
        let mut boundary = vec![BigInt::zero(); graph.vertices()];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            boundary[v] += b.get(i, e);
            boundary[u] -= b.get(i, e);
        }
        assert!(boundary.iter().all(Zero::is_zero), "row {i} is not a cycle");
    }
    let rows: Vec<Vec<Q>> = b.to_rational_rows();
    assert_eq!(b.rows(), graph.edges().len() + 1 - graph.vertices());
    assert_eq!(rank(&rows), b.rows());
}

fn assert_totally_unimodular_columns(b: &IntegerMatrix) {
    let k = b.rows();
    let cols: Vec<Vec<BigInt>> = (0..b.cols())
        .map(|e| (0..k).map(|i| b.get(i, e).clone()).collect())
        .collect();
    for s in subsets(cols.len(), k) {
        let m: Vec<Vec<BigInt>> = s.iter().map(|&e| cols[e].clone()).collect();
        assert!(bareiss(&m).abs() <= BigInt::one());
    }
    let sys = VectorSystem::new(k, cols).unwrap();
    assert_eq!(
        sys.is_unimodular(Execution::Parallel),
        UnimodularCheck::Unimodular
    );
}

/// Cells of `H_1(G, R)` cut by unit cubes whose smallest vertex is the
/// origin: cubes `[n, n + 1]` with `n ∈ {−1, 0}^E`.
fn cube_oracle(b: &IntegerMatrix) -> BTreeSet<Vec<Vec<Q>>> {
    let (k, ne) = (b.rows(), b.cols());
    let cols: Vec<Vec<Q>> = (0..ne)
        .map(|e| {
            (0..k)
                .map(|i| Q::from_integer(b.get(i, e).clone()))
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0..(1usize << ne) {
        let mut ineqs = Vec::new();
        for (e, c) in cols.iter().enumerate() {
            let n = if mask >> e & 1 == 1 { q(-1) } else { q(0) };
            ineqs.push((c.clone(), n.clone()));
            ineqs.push((c.iter().map(|x| -x).collect(), -(n + q(1))));
        }
        let mut verts = vertices_of_inequalities(k, &ineqs, &[]).unwrap();
        if verts.is_empty() || affine_dim(&verts) != k {
            continue;
        }
        verts.sort();
        if verts[0].iter().all(Zero::is_zero) {
            out.insert(verts);
        }
    }
    out
}

#[test]
fn cographic_named_graphs_match_cube_oracle() {
    let graphs = [
        Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap(),
        Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
        Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
    ];
    for (graph, rank) in graphs.iter().zip([1, 2, 3]) {
        let b = cycle_space_basis(graph);
        assert_eq!(b.rows(), rank);
        let d = cographic_subdivision(graph).unwrap();
        let got: BTreeSet<Vec<Vec<Q>>> = d.cells().iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(got, cube_oracle(&b));
        for c in d.cells() {
            let marks: Vec<Vec<Q>> = c
                .marking
                .iter()
                .map(|m| m.iter().cloned().map(Q::from_integer).collect())
                .collect();
            assert_eq!(marks, c.vertices);
        }
    }
    // C3: the line t(1,1,1) cut at integers is one segment per period.
    let c3 = cographic_subdivision(&graphs[0]).unwrap();
    assert_eq!(c3.len(), 1);
    assert_eq!(c3.cells()[0].vertices, vec![vec![q(0)], vec![q(1)]]);
    // Two triangles sharing a vertex: product of two segment patterns.
    let bowtie = cographic_subdivision(&graphs[1]).unwrap();
    assert_eq!(bowtie.len(), 1);
    assert_eq!(bowtie.cells()[0].vertices.len(), 4);
}

#[test]
fn random_cographic_subdivisions_are_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..50 {
        let graph = random_graph(&mut rng);
        let b = cycle_space_basis(&graph);
        assert_cycle_basis(&graph, &b);
        assert_totally_unimodular_columns(&b);
        let d = cographic_subdivision(&graph).unwrap();
        assert!(d.has_integral_vertices());
        assert_eq!(d.total_volume().unwrap(), d.covolume());
        if trial < 12 && graph.edges().len() <= 9 {
            let got: BTreeSet<Vec<Vec<Q>>> = d.cells().iter().map(|c| c.vertices.clone()).collect();
            assert_eq!(got, cube_oracle(&b), "{:?}", graph.edges());
        }
    }
}

#[test]
fn integral_vertices_iff_unimodular() {
    let battery: Vec<(usize, Vec<Vec<i64>>)> = vec![
        (2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
        (2, vec![vec![1, 0], vec![1, 2]]),
        (2, vec![vec![1, 0], vec![0, 1]]),
        (2, vec![vec![1, 0], vec![0, 1], vec![1, -1]]),
        (2, vec![vec![1, 1], vec![1, -1]]),
        (2, vec![vec![2, 1], vec![1, 1]]),
        (2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]),
        (1, vec![vec![1], vec![2]]),
        (1, vec![vec![1], vec![-1]]),
        (
            3,
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 0],
                vec![0, 1, 1],
                vec![1, 1, 1],
            ],
        ),
        (
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        ),
        (3, vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]),
        (
            3,
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 1],
                vec![1, -1, 0],
            ],
        ),
    ];
    let mut seen = [false; 2];
    for (r, vecs) in &battery {
        let refs: Vec<&[i64]> = vecs.iter().map(Vec::as_slice).collect();
        let sys = VectorSystem::from_i64(*r, &refs).unwrap();
        let oracle = subsets(vecs.len(), *r).iter().all(|s| {
            let m: Vec<Vec<BigInt>> = s.iter().map(|&i| iv(&vecs[i])).collect();
            bareiss(&m).abs() <= BigInt::one()
        });
        let check = sys.is_unimodular(Execution::Sequential);
        assert_eq!(check == UnimodularCheck::Unimodular, oracle, "{vecs:?}");
        let d = hyperplane_subdivision(&sys).unwrap();
        assert_eq!(d.has_integral_vertices(), oracle, "{vecs:?}");
        assert_eq!(d.total_volume().unwrap(), d.covolume());
        seen[oracle as usize] = true;
    }
    assert_eq!(seen, [true, true]);
    let witness = VectorSystem::from_i64(2, &[&[1, 0], &[1, 2]])
        .unwrap()
        .is_unimodular(Execution::Parallel);
    assert_eq!(
        witness,
        UnimodularCheck::Witness {
            subset: vec![0, 1],
            minor: 2.into()
        }
    );
}
