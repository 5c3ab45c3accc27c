use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::chain::{ChainComplex, HomologyGroup};
use super::polytopal::{MarkedComplex, PolytopalComplex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{saturate, solve_integer, IntegerMatrix};
use crate::polytope::LatticePolytope;

/// Ranks and torsion of the gluing cohomology `H^p(Q, T̃)`, read off from
/// the homology of the lattice chain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingCohomology {
    /// Dimension of the automorphism torus.
    pub h0_rank: usize,
    /// Dimension of the gluing moduli.
    pub h1_rank: usize,
    pub h0_torsion: Vec<BigInt>,
    pub h1_torsion: Vec<BigInt>,
    pub chain_ranks: Vec<usize>,
    pub homology: Vec<HomologyGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCohomology {
    pub h0_rank: usize,
    pub h1_rank: usize,
    pub h0_torsion: Vec<BigInt>,
    pub h1_torsion: Vec<BigInt>,
    pub chain_ranks: Vec<usize>,
    pub homology: Vec<HomologyGroup>,
    /// Order of the automorphism group when it is finite.
    pub automorphism_order: Option<BigInt>,
    /// Raised when `h0_rank > 0` although every marking spans its cell.
    pub infinite_automorphisms: bool,
}

/// An intersection of maximal cells (indices into `maximal_cells()`).
struct NerveSimplex {
    cells: Vec<usize>,
    vertices: Vec<Vec<BigInt>>,
    lattice: IntegerMatrix,
}

type Polytope = Vec<Vec<BigInt>>;

fn tilde_of(vertices: &[Vec<BigInt>]) -> IntegerMatrix {
    let g = vertices[0].len();
    let rows: Vec<Vec<BigInt>> = vertices
        .iter()
        .map(|v| {
            std::iter::once(BigInt::one())
                .chain(v.iter().cloned())
                .collect()
        })
        .collect();
    saturate(&IntegerMatrix::from_rows(rows, g + 1).expect("consistent width"))
}

/// Basis of `M̃_F`, the saturated lattice generated by `(1, m)` for the
/// lattice points `m` of the cell. The saturation only depends on the
/// rational span, so the vertices suffice as generators.
pub fn tilde_lattice(complex: &PolytopalComplex, cell_id: &str) -> Result<IntegerMatrix> {
    let cell = complex
        .cell(cell_id)
        .ok_or_else(|| Error::invalid(format!("no cell with id {cell_id}")))?;
    Ok(tilde_of(cell.polytope.vertices()))
}

/// Simplices of the nerve of the maximal cells, grouped by size.
fn nerve(complex: &PolytopalComplex, exec: Execution) -> Vec<Vec<NerveSimplex>> {
    let maximal = complex.maximal_cells();
    let mut levels: Vec<Vec<(Vec<usize>, Polytope)>> = vec![maximal
        .iter()
        .enumerate()
        .map(|(i, c)| (vec![i], c.polytope.vertices().to_vec()))
        .collect()];
    loop {
        let last = levels.last().expect("nonempty");
        let maximal = &maximal;
        let next: Vec<(Vec<usize>, Vec<Vec<BigInt>>)> = last
            .iter()
            .flat_map(|(s, verts)| {
                let start = s.last().expect("nonempty") + 1;
                (start..maximal.len()).filter_map(move |j| {
                    // In a valid complex the intersection is the common face,
                    // spanned by the common vertices.
                    let other = maximal[j].polytope.vertices();
                    let common: Vec<Vec<BigInt>> = verts
                        .iter()
                        .filter(|v| other.binary_search(v).is_ok())
                        .cloned()
                        .collect();
                    (!common.is_empty()).then(|| {
                        let mut t = s.clone();
                        t.push(j);
                        (t, common)
                    })
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
        .into_iter()
        .map(|level| {
            exec.map(&level, |(cells, vertices)| NerveSimplex {
                cells: cells.clone(),
                vertices: vertices.clone(),
                lattice: tilde_of(vertices),
            })
        })
        .collect()
}

/// Rows: coordinates of each basis vector of `sub` in the basis `sup`.
fn inclusion(sub: &IntegerMatrix, sup: &IntegerMatrix) -> Result<IntegerMatrix> {
    let rows = (0..sub.rows())
        .map(|i| {
            solve_integer(sup, sub.row(i)).ok_or_else(|| {
                Error::Internal("lattice of a face is not contained in its cell".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_rows(rows, sup.rows())
}

fn offsets(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut out = Vec::new();
    let mut acc = 0;
    for s in sizes {
        out.push(acc);
        acc += s;
    }
    (out, acc)
}

/// Assembles the alternating-sign Čech boundary of a direct sum over the
/// nerve, given each simplex's summand size and the block for an inclusion
/// `S ⊃ S'`.
fn cech_complex<F>(
    levels: &[Vec<NerveSimplex>],
    size: impl Fn(&NerveSimplex) -> usize,
    block: F,
) -> Result<ChainComplex>
where
    F: Fn(&NerveSimplex, &NerveSimplex) -> Result<IntegerMatrix>,
{
    let mut ranks = Vec::new();
    let mut layout = Vec::new();
    for level in levels {
        let (offs, total) = offsets(level.iter().map(&size));
        ranks.push(total);
        let index: HashMap<&[usize], usize> = level
            .iter()
            .enumerate()
            .map(|(i, s)| (s.cells.as_slice(), i))
            .collect();
        layout.push((offs, index));
    }
    let mut boundaries = Vec::new();
    for p in 1..levels.len() {
        let mut d = IntegerMatrix::zeros(ranks[p], ranks[p - 1]);
        let (lower_offs, lower_index) = &layout[p - 1];
        for (si, s) in levels[p].iter().enumerate() {
            let row0 = layout[p].0[si];
            for j in 0..s.cells.len() {
                let mut face = s.cells.clone();
                face.remove(j);
                let ti = lower_index[face.as_slice()];
                let t = &levels[p - 1][ti];
                let b = block(s, t)?;
                let col0 = lower_offs[ti];
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        let v = b.get(r, c);
                        if !v.is_zero() {
                            d.set(row0 + r, col0 + c, if j % 2 == 0 { v.clone() } else { -v });
                        }
                    }
                }
            }
        }
        boundaries.push(d);
    }
    ChainComplex::new(ranks, boundaries)
}

/// `L_p = ⊕ M̃_{∩S}` over `(p+1)`-subsets `S` of maximal cells with nonempty
/// intersection; the boundary omits the `j`-th index with sign `(−1)^j`.
pub fn cech_lattice_complex(complex: &PolytopalComplex) -> Result<ChainComplex> {
    let levels = nerve(complex, Execution::default());
    cech_complex(
        &levels,
        |s| s.lattice.rows(),
        |s, t| inclusion(&s.lattice, &t.lattice),
    )
}

fn split(homology: &[HomologyGroup]) -> (usize, usize, Vec<BigInt>, Vec<BigInt>) {
    let h = |p: usize| homology.get(p).cloned().unwrap_or_default();
    (h(0).rank, h(1).rank, h(0).torsion, h(1).torsion)
}

pub fn gluing_cohomology(complex: &PolytopalComplex, exec: Execution) -> Result<GluingCohomology> {
    let levels = nerve(complex, exec);
    let chain = cech_complex(
        &levels,
        |s| s.lattice.rows(),
        |s, t| inclusion(&s.lattice, &t.lattice),
    )?;
    let homology = chain.homology(exec);
    let (h0_rank, h1_rank, h0_torsion, h1_torsion) = split(&homology);
    Ok(GluingCohomology {
        h0_rank,
        h1_rank,
        h0_torsion,
        h1_torsion,
        chain_ranks: chain.ranks().to_vec(),
        homology,
    })
}

/// Mapping cone of the evaluation map `ℤ^{C_∩S} → M̃_{∩S}`, `e_m ↦ (1, m)`,
/// together with its homology.
pub fn marked_section_complex(
    mc: &MarkedComplex,
    exec: Execution,
) -> Result<(ChainComplex, MarkedCohomology)> {
    let complex = mc.complex();
    let maximal = complex.maximal_cells();
    let levels = nerve(complex, exec);
    let marks: Vec<Vec<Vec<Vec<BigInt>>>> = levels
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|s| {
                    let face = LatticePolytope::new(s.vertices.clone())?;
                    let own = mc
                        .marking(&maximal[s.cells[0]].id)
                        .expect("validated marking");
                    Ok(own.iter().filter(|m| face.contains(m)).cloned().collect())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let marks_of = |s: &NerveSimplex| -> &Vec<Vec<BigInt>> {
        let p = s.cells.len() - 1;
        let i = levels[p]
            .iter()
            .position(|t| t.cells == s.cells)
            .expect("in nerve");
        &marks[p][i]
    };
    let lattice = cech_complex(
        &levels,
        |s| s.lattice.rows(),
        |s, t| inclusion(&s.lattice, &t.lattice),
    )?;
    let points = cech_complex(
        &levels,
        |s| marks_of(s).len(),
        |s, t| {
            let (ms, mt) = (marks_of(s), marks_of(t));
            let mut b = IntegerMatrix::zeros(ms.len(), mt.len());
            for (r, m) in ms.iter().enumerate() {
                let c = mt.binary_search(m).map_err(|_| {
                    Error::Internal("marked point missing from a larger intersection".into())
                })?;
                b.set(r, c, BigInt::one());
            }
            Ok(b)
        },
    )?;
    let psi = levels
        .iter()
        .enumerate()
        .map(|(p, level)| {
            let mut m = IntegerMatrix::zeros(points.rank(p), lattice.rank(p));
            let (mut r0, mut c0) = (0, 0);
            for (i, s) in level.iter().enumerate() {
                for (r, pt) in marks[p][i].iter().enumerate() {
                    let v: Vec<BigInt> = std::iter::once(BigInt::one())
                        .chain(pt.iter().cloned())
                        .collect();
                    let coeffs = solve_integer(&s.lattice, &v).ok_or_else(|| {
                        Error::Internal("marked point outside its lattice".into())
                    })?;
                    for (c, x) in coeffs.into_iter().enumerate() {
                        m.set(r0 + r, c0 + c, x);
                    }
                }
                r0 += marks[p][i].len();
                c0 += s.lattice.rows();
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let cone = lattice.mapping_cone(&points, &psi)?;
    if !cone.squares_to_zero() {
        return Err(Error::Internal(
            "mapping cone differential does not square to zero".into(),
        ));
    }
    let homology = cone.homology(exec);
    let (h0_rank, h1_rank, h0_torsion, h1_torsion) = split(&homology);
    let automorphism_order =
        (h0_rank == 0).then(|| h0_torsion.iter().fold(BigInt::one(), |a, b| a * b));
    Ok((
        cone.clone(),
        MarkedCohomology {
            h0_rank,
            h1_rank,
            h0_torsion,
            h1_torsion,
            chain_ranks: cone.ranks().to_vec(),
            homology,
            automorphism_order,
            infinite_automorphisms: h0_rank > 0,
        },
    ))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complex::Cell;
    use crate::lattice::int_vec;

    fn complex(g: usize, cells: &[(&str, &[&[i64]])]) -> PolytopalComplex {
        PolytopalComplex::new(
            g,
            cells
                .iter()
                .map(|(id, v)| Cell::from_i64(*id, v).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn tilde_lattices() {
        let c = complex(1, &[("s", &[&[0], &[2]]), ("p", &[&[2]])]);
        assert_eq!(tilde_lattice(&c, "s").unwrap(), IntegerMatrix::identity(2));
        assert_eq!(
            tilde_lattice(&c, "p").unwrap(),
            IntegerMatrix::from_i64(&[&[1, 2]])
        );
        assert!(tilde_lattice(&c, "zz").is_err());
    }

    #[test]
    fn two_segments() {
        let c = complex(1, &[("a", &[&[0], &[1]]), ("b", &[&[1], &[2]])]);
        let l = cech_lattice_complex(&c).unwrap();
        assert_eq!(l.ranks(), &[4, 1]);
        let h = gluing_cohomology(&c, Execution::Sequential).unwrap();
        assert_eq!((h.h0_rank, h.h1_rank), (3, 0));
    }

    #[test]
    fn split_square() {
        let c = complex(
            2,
            &[
                ("t1", &[&[0, 0], &[1, 0], &[1, 1]]),
                ("t2", &[&[0, 0], &[0, 1], &[1, 1]]),
            ],
        );
        // the diagonal is a segment, so its lattice has rank 2
        assert_eq!(cech_lattice_complex(&c).unwrap().ranks(), &[6, 2]);
        let h = gluing_cohomology(&c, Execution::Parallel).unwrap();
        assert_eq!((h.h0_rank, h.h1_rank), (4, 0));
    }

    #[test]
    fn cycle_of_segments_has_gluing_moduli() {
        // the boundary of a triangle: three edges meeting pairwise in vertices
        let c = complex(
            2,
            &[
                ("a", &[&[0, 0], &[1, 0]]),
                ("b", &[&[1, 0], &[0, 1]]),
                ("c", &[&[0, 1], &[0, 0]]),
            ],
        );
        let l = cech_lattice_complex(&c).unwrap();
        assert!(l.squares_to_zero());
        let h = gluing_cohomology(&c, Execution::Sequential).unwrap();
        assert_eq!(h.h1_rank, 0);
        assert_eq!(h.h0_rank, 3);
    }

    fn marked(verts: &[&[i64]], marks: &[&[i64]]) -> MarkedCohomology {
        let c = complex(verts[0].len(), &[("q", verts)]);
        let m = BTreeMap::from([("q".to_string(), marks.iter().map(|p| int_vec(p)).collect())]);
        let mc = MarkedComplex::new(c, m).unwrap();
        marked_section_complex(&mc, Execution::Sequential)
            .unwrap()
            .1
    }

    #[test]
    fn marked_segments() {
        let unit = marked(&[&[0], &[1]], &[&[0], &[1]]);
        assert_eq!((unit.h0_rank, unit.h1_rank), (0, 0));
        assert!(unit.h0_torsion.is_empty());
        let wide = marked(&[&[0], &[2]], &[&[0], &[2]]);
        assert_eq!(wide.h0_torsion, vec![BigInt::from(2)]);
        assert_eq!(wide.automorphism_order, Some(BigInt::from(2)));
        let full = marked(&[&[0], &[2]], &[&[0], &[1], &[2]]);
        assert_eq!(full.automorphism_order, Some(BigInt::one()));
        let point = marked(&[&[5]], &[&[5]]);
        assert!(point.homology.iter().all(HomologyGroup::is_trivial));
    }
}
