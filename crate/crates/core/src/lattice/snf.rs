use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{solve, to_integer_vec, to_rational, IntegerMatrix};

/// Smith normal form `left · A · right = diag(invariant_factors, 0, …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors `d_1 | d_2 | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
    /// Inverse of `right`; its leading rows span the saturation of the row space.
    pub right_inverse: IntegerMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// The diagonal matrix `left · A · right` predicted by the invariant factors.
    pub fn diagonal(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

struct SnfWork {
    d: IntegerMatrix,
    left: IntegerMatrix,
    right: IntegerMatrix,
    right_inv: IntegerMatrix,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.left.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.right_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_row_multiple(dst, src, f);
        self.left.add_row_multiple(dst, src, f);
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_col_multiple(dst, src, f);
        self.right.add_col_multiple(dst, src, f);
        // right' = right·(I + f e_src e_dstᵀ), so right'^{-1} = (I − f e_src e_dstᵀ)·right^{-1}
        self.right_inv.add_row_multiple(src, dst, &-f);
    }

    /// Position of the nonzero entry of least absolute value in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let v = self.d.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut w = SnfWork {
        d: a.clone(),
        left: IntegerMatrix::identity(m),
        right: IntegerMatrix::identity(n),
        right_inv: IntegerMatrix::identity(n),
    };
    let mut factors = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.min_pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                let q = w.d.get(i, t).div_floor(&p);
                w.add_row(i, t, &-q);
                dirty |= !w.d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = w.d.get(t, j).div_floor(&p);
                w.add_col(j, t, &-q);
                dirty |= !w.d.get(t, j).is_zero();
            }
            if !dirty {
                // Pivot must divide the whole trailing block.
                let bad_row =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d.get(i, j).is_multiple_of(&p)));
                match bad_row {
                    None => break,
                    Some(i) => {
                        w.add_row(t, i, &BigInt::one());
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pi, pj) = w.min_pivot(t).expect("nonzero block has a pivot");
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
            }
        }
        if w.d.get(t, t).is_negative() {
            w.d.negate_row(t);
            w.left.negate_row(t);
        }
        factors.push(w.d.get(t, t).clone());
    }
    SnfResult {
        invariant_factors: factors,
        left: w.left,
        right: w.right,
        right_inverse: w.right_inv,
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows. Zero rows
/// are dropped; pivots are positive and entries above each pivot are reduced
/// into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntegerMatrix) -> IntegerMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..m.
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| !h.get(i, c).is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&i| h.get(i, c).abs())
                .expect("nonempty");
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &-q);
                done &= h.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
        }
        let p = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&p);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    let rows = h.to_rows().into_iter().take(r).collect();
    IntegerMatrix::from_rows(rows, n).expect("consistent width")
}

/// Basis (in Hermite normal form) of the saturation of the lattice spanned by
/// the rows of `generators`.
pub fn saturate(generators: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(generators);
    let rows: Vec<Vec<BigInt>> = (0..snf.rank())
        .map(|i| snf.right_inverse.row(i).to_vec())
        .collect();
    let basis = IntegerMatrix::from_rows(rows, generators.cols()).expect("consistent width");
    hermite_normal_form(&basis)
}

/// Integer coefficients `c` with `c · basis = v`, if they exist.
pub fn solve_integer(basis: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let cols: Vec<Vec<_>> = (0..basis.cols())
        .map(|j| {
            (0..basis.rows())
                .map(|i| num_rational::BigRational::from_integer(basis.get(i, j).clone()))
                .collect()
        })
        .collect();
    let x = solve(&cols, &to_rational(v))?;
    to_integer_vec(&x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::int_vec;

    fn check(a: &IntegerMatrix) -> SnfResult {
        let s = smith_normal_form(a);
        assert_eq!(s.left.mul(a).mul(&s.right), s.diagonal());
        assert!(s.right.mul(&s.right_inverse) == IntegerMatrix::identity(a.cols()));
        assert_eq!(s.left.determinant().abs(), BigInt::one());
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_factors() {
        let s = check(&IntegerMatrix::identity(3));
        assert_eq!(s.invariant_factors, int_vec(&[1, 1, 1]));
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntegerMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors, int_vec(&[2, 4]));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntegerMatrix::zeros(2, 3));
        assert!(s.invariant_factors.is_empty());
    }

    #[test]
    fn divisibility_fixup() {
        let s = check(&IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors, int_vec(&[1, 6]));
    }

    #[test]
    fn saturation_examples() {
        let b = saturate(&IntegerMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(b.to_rows(), vec![int_vec(&[1, 0])]);
        let b = saturate(&IntegerMatrix::from_i64(&[&[1, 1], &[1, 2]]));
        assert_eq!(b, IntegerMatrix::identity(2));
        let b = saturate(&IntegerMatrix::zeros(0, 2));
        assert_eq!(b.rows(), 0);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntegerMatrix::from_i64(&[&[3, 1], &[1, 1]]);
        let b = IntegerMatrix::from_i64(&[&[4, 2], &[1, 1]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        assert_eq!(
            hermite_normal_form(&a).to_rows(),
            vec![int_vec(&[1, 1]), int_vec(&[0, 2])]
        );
    }

    #[test]
    fn integer_solve() {
        let basis = IntegerMatrix::from_i64(&[&[1, 1], &[0, 2]]);
        assert_eq!(
            solve_integer(&basis, &int_vec(&[3, 5])),
            Some(int_vec(&[3, 1]))
        );
        assert_eq!(solve_integer(&basis, &int_vec(&[0, 1])), None);
    }
}
