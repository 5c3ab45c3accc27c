use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::form::{representatives, QuadraticForm, ResidueFunction};
use super::subdivision::{PeriodicCell, PeriodicSubdivision};
use crate::combinatorics::box_points;
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, kernel, rank, solve, IntegerMatrix, Rational};

/// Default sup-norm radius limit for lattice-point searches.
pub const DEFAULT_WINDOW: i64 = 64;

/// `x ↦ a · x + a0`.
#[derive(Clone, Debug)]
struct Affine {
    a: Vec<Rational>,
    a0: Rational,
}

impl Affine {
    fn at(&self, m: &[BigInt]) -> Rational {
        let mut s = self.a0.clone();
        for (ai, mi) in self.a.iter().zip(m) {
            if !ai.is_zero() {
                s += ai * Rational::from_integer(mi.clone());
            }
        }
        s
    }

    fn plus(&self, t: &Rational, l: &Affine) -> Affine {
        Affine {
            a: self.a.iter().zip(&l.a).map(|(x, y)| x + t * y).collect(),
            a0: &self.a0 + t * &l.a0,
        }
    }
}

fn to_rat(m: &[BigInt]) -> Vec<Rational> {
    m.iter().cloned().map(Rational::from_integer).collect()
}

fn ceil_sqrt(x: &Rational) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    let n = x.ceil().to_integer();
    let s = n.sqrt();
    if &s * &s < n {
        s + 1
    } else {
        s
    }
}

/// The height `q(m) + r(m mod Γ)` for positive definite `q`.
struct Height<'a> {
    q: &'a QuadraticForm,
    r: &'a ResidueFunction,
    qinv: Vec<Vec<Rational>>,
    r_min: Rational,
    window: i64,
}

struct Scan {
    below: Vec<Vec<BigInt>>,
    on: Vec<Vec<BigInt>>,
}

impl<'a> Height<'a> {
    fn new(q: &'a QuadraticForm, r: &'a ResidueFunction, window: i64) -> Self {
        let g = q.g();
        let qinv: Vec<Vec<Rational>> = (0..g)
            .map(|j| {
                let e: Vec<Rational> = (0..g)
                    .map(|i| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                solve(q.entries(), &e).expect("definite form is invertible")
            })
            .collect();
        Height {
            q,
            r,
            qinv,
            r_min: r.min_value().clone(),
            window,
        }
    }

    fn g(&self) -> usize {
        self.q.g()
    }

    fn at(&self, m: &[BigInt]) -> Rational {
        self.q.eval_int(m) + self.r.value(m)
    }

    /// Every lattice point where `h − f` is negative or zero. Complete: the
    /// search covers the ellipsoid outside of which `h − f > 0` is forced.
    fn scan(&self, f: &Affine) -> Result<Scan> {
        let g = self.g();
        // q(m) − a·m = (m − c)ᵀ Q (m − c) − cᵀQc with c = Q⁻¹a / 2.
        let c: Vec<Rational> = (0..g)
            .map(|i| {
                (0..g).map(|j| &self.qinv[i][j] * &f.a[j]).sum::<Rational>()
                    / Rational::from_integer(2.into())
            })
            .collect();
        let radius = &f.a0 + self.q.eval(&c) - &self.r_min;
        let mut out = Scan {
            below: Vec::new(),
            on: Vec::new(),
        };
        if radius.is_negative() {
            return Ok(out);
        }
        let mut lo = Vec::with_capacity(g);
        let mut hi = Vec::with_capacity(g);
        let mut needed = BigInt::zero();
        for i in 0..g {
            let s = ceil_sqrt(&(&radius * &self.qinv[i][i]));
            let l = c[i].floor().to_integer() - &s;
            let h = c[i].ceil().to_integer() + &s;
            needed = needed.max(l.abs()).max(h.abs());
            lo.push(l);
            hi.push(h);
        }
        if needed > BigInt::from(self.window) {
            return Err(Error::WindowExceeded {
                needed: needed.to_string(),
                limit: self.window,
            });
        }
        let lo: Vec<i64> = lo
            .iter()
            .map(|x| i64::try_from(x).expect("within window"))
            .collect();
        let hi: Vec<i64> = hi
            .iter()
            .map(|x| i64::try_from(x).expect("within window"))
            .collect();
        for p in box_points(&lo, &hi) {
            let m: Vec<BigInt> = p.into_iter().map(BigInt::from).collect();
            let d = self.at(&m) - f.at(&m);
            if d.is_negative() {
                out.below.push(m);
            } else if d.is_zero() {
                out.on.push(m);
            }
        }
        Ok(out)
    }

    /// Raises `f` along `l` (positive beyond a face of the contact set) until
    /// it touches a new lattice point, keeping `f ≤ h` everywhere.
    fn pivot(
        &self,
        f: &Affine,
        l: &Affine,
        seeds: &[Vec<BigInt>],
    ) -> Result<(Affine, Vec<Vec<BigInt>>)> {
        let ratio = |m: &Vec<BigInt>| -> Option<Rational> {
            let lm = l.at(m);
            lm.is_positive().then(|| (self.at(m) - f.at(m)) / lm)
        };
        let mut t = seeds
            .iter()
            .filter_map(ratio)
            .min()
            .ok_or_else(|| Error::Internal("no seed point beyond the face".into()))?;
        loop {
            let cand = f.plus(&t, l);
            let scan = self.scan(&cand)?;
            if scan.below.is_empty() {
                return Ok((cand, scan.on));
            }
            let mut next = t.clone();
            for m in &scan.below {
                match ratio(m) {
                    Some(x) if x < next => next = x,
                    Some(_) => {}
                    None => {
                        return Err(Error::Internal("envelope dropped below the height".into()))
                    }
                }
            }
            if next >= t {
                return Err(Error::Internal("pivot failed to make progress".into()));
            }
            t = next;
        }
    }

    fn first_cell(&self) -> Result<Vec<Vec<BigInt>>> {
        let g = self.g();
        let zero = Affine {
            a: vec![Rational::zero(); g],
            a0: Rational::zero(),
        };
        let one = Affine {
            a: vec![Rational::zero(); g],
            a0: Rational::one(),
        };
        let (mut f, mut touch) = self.pivot(&zero, &one, &[vec![BigInt::zero(); g]])?;
        loop {
            let base = touch[0].clone();
            let dirs: Vec<Vec<Rational>> = touch[1..]
                .iter()
                .map(|m| {
                    m.iter()
                        .zip(&base)
                        .map(|(a, b)| Rational::from_integer(a - b))
                        .collect()
                })
                .collect();
            if rank(&dirs) == g {
                return Ok(touch);
            }
            let v = kernel(&dirs, g).swap_remove(0);
            let l = Affine {
                a0: -v
                    .iter()
                    .zip(&base)
                    .map(|(vi, bi)| vi * Rational::from_integer(bi.clone()))
                    .sum::<Rational>(),
                a: v,
            };
            let seeds: Vec<Vec<BigInt>> = (0..g)
                .flat_map(|i| {
                    [-1, 1].into_iter().map({
                        let base = &base;
                        move |s| {
                            let mut m = base.clone();
                            m[i] += s;
                            m
                        }
                    })
                })
                .collect();
            (f, touch) = self.pivot(&f, &l, &seeds)?;
        }
    }

    /// Interpolates the height affinely on a marked cell.
    fn support(&self, marking: &[Vec<BigInt>]) -> Result<Affine> {
        let rows: Vec<Vec<Rational>> = marking
            .iter()
            .map(|m| {
                let mut r = to_rat(m);
                r.push(Rational::one());
                r
            })
            .collect();
        let b: Vec<Rational> = marking.iter().map(|m| self.at(m)).collect();
        let x = solve(&rows, &b)
            .ok_or_else(|| Error::Internal("marked points are not co-hyperplanar".into()))?;
        let g = self.g();
        Ok(Affine {
            a: x[..g].to_vec(),
            a0: x[g].clone(),
        })
    }
}

fn cell_of(marking: Vec<Vec<BigInt>>) -> Result<PeriodicCell> {
    let pts: Vec<Vec<Rational>> = marking.iter().map(|m| to_rat(m)).collect();
    let hull = convex_hull(&pts)?;
    if hull.dim != hull.ambient_dim {
        return Err(Error::Internal(
            "envelope cell is not full-dimensional".into(),
        ));
    }
    let vertices = hull.vertices.iter().map(|&i| pts[i].clone()).collect();
    Ok(PeriodicCell::new(vertices, marking))
}

/// Walks the cells of the lower envelope across facets, one orbit at a time.
fn envelope(height: &Height<'_>) -> Result<PeriodicSubdivision> {
    let g = height.g();
    let basis = height.r.period_basis().clone();
    let start = PeriodicSubdivision::new(&basis, vec![cell_of(height.first_cell()?)?])?;
    let mut seen: BTreeSet<PeriodicCell> = BTreeSet::new();
    let mut queue: VecDeque<PeriodicCell> = VecDeque::new();
    seen.insert(start.cells()[0].clone());
    queue.push_back(start.cells()[0].clone());
    while let Some(cell) = queue.pop_front() {
        let f = height.support(&cell.marking)?;
        let pts: Vec<Vec<Rational>> = cell.marking.iter().map(|m| to_rat(m)).collect();
        let hull = convex_hull(&pts)?;
        for facet in &hull.facets {
            // Positive beyond the facet.
            let l = Affine {
                a: facet.normal.iter().map(|x| -x).collect(),
                a0: facet.offset.clone(),
            };
            let mut seeds = Vec::new();
            for &i in &facet.incident {
                for j in 0..g {
                    for s in [-1, 1] {
                        let mut m = cell.marking[i].clone();
                        m[j] += s;
                        seeds.push(m);
                    }
                }
            }
            let (_, touch) = height.pivot(&f, &l, &seeds)?;
            let next = cell_of(touch)?.canonical(&basis);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let out = PeriodicSubdivision::new(&basis, seen.into_iter().collect())?;
    check_volume(&out)?;
    Ok(out)
}

pub(crate) fn check_volume(d: &PeriodicSubdivision) -> Result<()> {
    let total = d.total_volume()?;
    if total != d.covolume() {
        return Err(Error::Internal(format!(
            "cells have total normalized volume {total}, expected {}",
            d.covolume()
        )));
    }
    Ok(())
}

/// The `ℤ^g`-periodic Delaunay decomposition of a positive definite form.
pub fn delaunay(q: &QuadraticForm, window: i64) -> Result<PeriodicSubdivision> {
    if !q.is_positive_definite() {
        return Err(Error::invalid(
            "delaunay needs a positive definite form; use semi_delaunay with a period lattice",
        ));
    }
    semi_delaunay(q, &ResidueFunction::trivial(q.g()), window)
}

/// The `Γ`-periodic decomposition for the height `q(m) + r(m mod Γ)`.
///
/// Positive definite `q` is handled by the envelope walk. For `q = 0` the
/// envelope is flat over the residue classes where `r` is minimal; that
/// region is cut into the translates of the `Γ`-parallelepiped at the
/// smallest such point. Other semidefinite forms are refused.
pub fn semi_delaunay(
    q: &QuadraticForm,
    r: &ResidueFunction,
    window: i64,
) -> Result<PeriodicSubdivision> {
    let g = q.g();
    if r.g() != g {
        return Err(Error::invalid(
            "form and residue function have different dimensions",
        ));
    }
    if window < 1 {
        return Err(Error::invalid("window must be positive"));
    }
    if q.is_positive_definite() {
        return envelope(&Height::new(q, r, window));
    }
    if !q.is_zero() {
        return Err(Error::Refused(
            "semidefinite forms with a proper nonzero kernel are not supported".into(),
        ));
    }
    flat(r)
}

fn flat(r: &ResidueFunction) -> Result<PeriodicSubdivision> {
    let basis = r.period_basis();
    let min = r.min_value();
    let bottom: Vec<Vec<BigInt>> = representatives(basis)
        .into_iter()
        .filter(|m| r.value(m) == min)
        .collect();
    if bottom.len() == r.values().len() {
        return Err(Error::invalid(
            "height is constant on all lattice points, so it is not proper",
        ));
    }
    let g = r.g();
    let anchor = &bottom[0];
    let corners: Vec<Vec<Rational>> = box_points(&vec![0; g], &vec![1; g])
        .into_iter()
        .map(|t| {
            (0..g)
                .map(|j| {
                    let s: BigInt = anchor[j].clone()
                        + t.iter()
                            .enumerate()
                            .map(|(i, &ti)| BigInt::from(ti) * basis.get(i, j))
                            .sum::<BigInt>();
                    Rational::from_integer(s)
                })
                .collect()
        })
        .collect();
    let hull = convex_hull(&corners)?;
    let vertices: Vec<Vec<Rational>> = hull.vertices.iter().map(|&i| corners[i].clone()).collect();
    // Marked points: the minimal classes inside the parallelepiped.
    let mut lo = vec![i64::MAX; g];
    let mut hi = vec![i64::MIN; g];
    for v in &vertices {
        for j in 0..g {
            let x: i64 = v[j]
                .to_integer()
                .try_into()
                .map_err(|_| Error::Refused("period lattice too large".into()))?;
            lo[j] = lo[j].min(x);
            hi[j] = hi[j].max(x);
        }
    }
    let marking: Vec<Vec<BigInt>> = box_points(&lo, &hi)
        .into_iter()
        .map(|p| p.into_iter().map(BigInt::from).collect::<Vec<_>>())
        .filter(|m| r.value(m) == min && hull.contains(&to_rat(m)))
        .collect();
    let out = PeriodicSubdivision::new(basis, vec![PeriodicCell::new(vertices, marking)])?;
    check_volume(&out)?;
    Ok(out)
}

/// True when the two forms induce the same Delaunay decomposition.
pub fn same_voronoi_cone(q1: &QuadraticForm, q2: &QuadraticForm, window: i64) -> Result<bool> {
    if q1.g() != q2.g() {
        return Err(Error::invalid("forms have different dimensions"));
    }
    Ok(delaunay(q1, window)? == delaunay(q2, window)?)
}

/// Dimension of the space of symmetric forms under which every cell's marked
/// points stay co-hyperplanar. `q` must generate `d`.
pub fn voronoi_cone_dimension(
    d: &PeriodicSubdivision,
    q: &QuadraticForm,
    window: i64,
) -> Result<usize> {
    let g = d.g();
    if q.g() != g {
        return Err(Error::invalid(
            "form and subdivision have different dimensions",
        ));
    }
    if d.period_basis() != &IntegerMatrix::identity(g) {
        return Err(Error::invalid(
            "Delaunay decompositions are periodic under the full lattice",
        ));
    }
    if &delaunay(q, window)? != d {
        return Err(Error::invalid(
            "the form does not generate this subdivision",
        ));
    }
    // Coordinates of a symmetric form: entries (i, j) with i ≤ j.
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
    let monomials = |m: &[BigInt]| -> Vec<Rational> {
        pairs
            .iter()
            .map(|&(i, j)| {
                let v = &m[i] * &m[j] * if i == j { 1 } else { 2 };
                Rational::from_integer(v)
            })
            .collect()
    };
    let mut rows = Vec::new();
    for cell in d.cells() {
        let basis = affine_basis(&cell.marking);
        let base_rows: Vec<Vec<Rational>> = basis
            .iter()
            .map(|&i| {
                let mut r = to_rat(&cell.marking[i]);
                r.push(Rational::one());
                r
            })
            .collect();
        // Columns indexed by basis points: solve for barycentric weights.
        let cols: Vec<Vec<Rational>> = (0..=g)
            .map(|k| base_rows.iter().map(|r| r[k].clone()).collect())
            .collect();
        for (idx, m) in cell.marking.iter().enumerate() {
            if basis.contains(&idx) {
                continue;
            }
            let mut target = to_rat(m);
            target.push(Rational::one());
            let lambda = solve(&cols, &target)
                .ok_or_else(|| Error::Internal("affine basis does not span".into()))?;
            let mut row = monomials(m);
            for (w, &b) in lambda.iter().zip(&basis) {
                for (x, y) in row.iter_mut().zip(monomials(&cell.marking[b])) {
                    *x -= w * y;
                }
            }
            rows.push(row);
        }
    }
    Ok(pairs.len() - rank(&rows))
}

/// Indices of a maximal affinely independent subset, greedy in order.
fn affine_basis(points: &[Vec<BigInt>]) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut dirs: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let d: Vec<Rational> = p
            .iter()
            .zip(&points[0])
            .map(|(a, b)| Rational::from_integer(a - b))
            .collect();
        dirs.push(d);
        if rank(&dirs) == dirs.len() {
            chosen.push(i);
        } else {
            dirs.pop();
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_vec, rat_vec};

    #[test]
    fn one_dimensional() {
        let d = delaunay(&QuadraticForm::from_i64(&[&[1]]).unwrap(), DEFAULT_WINDOW).unwrap();
        assert_eq!(d.len(), 1);
        d.validate().unwrap();
        assert_eq!(d.cells()[0].vertices, vec![rat_vec(&[0]), rat_vec(&[1])]);
    }

    #[test]
    fn square_and_triangles() {
        let i2 = delaunay(
            &QuadraticForm::from_i64(&[&[1, 0], &[0, 1]]).unwrap(),
            DEFAULT_WINDOW,
        )
        .unwrap();
        assert_eq!(i2.len(), 1);
        assert_eq!(i2.cells()[0].marking.len(), 4);
        let a2 = delaunay(
            &QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]]).unwrap(),
            DEFAULT_WINDOW,
        )
        .unwrap();
        assert_eq!(a2.len(), 2);
        assert!(a2.cells().iter().all(|c| c.vertices.len() == 3));
        a2.validate().unwrap();
        i2.validate().unwrap();
    }

    #[test]
    fn cone_dimensions() {
        for (rows, dim) in [
            (vec![vec![2, -1], vec![-1, 2]], 3),
            (vec![vec![1, 0], vec![0, 1]], 2),
            (vec![vec![1]], 1),
        ] {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let q = QuadraticForm::from_i64(&refs).unwrap();
            let d = delaunay(&q, DEFAULT_WINDOW).unwrap();
            assert_eq!(voronoi_cone_dimension(&d, &q, DEFAULT_WINDOW).unwrap(), dim);
        }
    }

    #[test]
    fn semi_delaunay_examples() {
        let two = IntegerMatrix::from_i64(&[&[2]]);
        let q1 = QuadraticForm::from_i64(&[&[1]]).unwrap();
        let d = semi_delaunay(&q1, &ResidueFunction::zero(&two).unwrap(), DEFAULT_WINDOW).unwrap();
        assert_eq!(d.len(), 2);

        let q0 = QuadraticForm::from_i64(&[&[0]]).unwrap();
        let r = ResidueFunction::new(
            &two,
            vec![(int_vec(&[0]), rat(0)), (int_vec(&[1]), rat(-1))],
        )
        .unwrap();
        let d = semi_delaunay(&q0, &r, DEFAULT_WINDOW).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.cells()[0].vertices, vec![rat_vec(&[1]), rat_vec(&[3])]);
        assert_eq!(d.cells()[0].marking, vec![int_vec(&[1]), int_vec(&[3])]);

        let flat = semi_delaunay(&q0, &ResidueFunction::trivial(1), DEFAULT_WINDOW);
        assert!(matches!(flat, Err(Error::InvalidInput(_))));
    }

    use crate::lattice::rat;
}
