use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::lattice::{determinant, hermite_normal_form, IntegerMatrix, Rational};

/// Symmetric rational `g × g` matrix `Q` with `q(x) = xᵀ Q x`, certified
/// positive semidefinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    entries: Vec<Vec<Rational>>,
    definite: bool,
}

impl QuadraticForm {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let g = entries.len();
        if g == 0 || entries.iter().any(|r| r.len() != g) {
            return Err(Error::invalid(
                "a quadratic form needs a nonempty square matrix",
            ));
        }
        for i in 0..g {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::invalid(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let minor = |idx: &[usize]| -> Rational {
            let m: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| entries[i][j].clone()).collect())
                .collect();
            determinant(&m)
        };
        for k in 1..=g {
            if let Some(idx) = combinations(g, k)
                .into_iter()
                .find(|idx| minor(idx).is_negative())
            {
                return Err(Error::invalid(format!(
                    "form is not positive semidefinite (principal minor {idx:?} is negative)"
                )));
            }
        }
        let definite = (1..=g).all(|k| minor(&(0..k).collect::<Vec<_>>()).is_positive());
        Ok(QuadraticForm { entries, definite })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn g(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_positive_definite(&self) -> bool {
        self.definite
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, xj) in x.iter().enumerate() {
                s += &self.entries[i][j] * xi * xj;
            }
        }
        s
    }

    pub fn eval_int(&self, m: &[BigInt]) -> Rational {
        let x: Vec<Rational> = m.iter().cloned().map(Rational::from_integer).collect();
        self.eval(&x)
    }

    /// `Uᵀ Q U`, so that the new form at `x` equals `q(U x)`.
    pub fn transform(&self, u: &IntegerMatrix) -> Result<Self> {
        let g = self.g();
        if u.rows() != g || u.cols() != g {
            return Err(Error::invalid("transform must be a g × g matrix"));
        }
        let uu = u.to_rational_rows();
        let entries = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        let mut s = Rational::zero();
                        for a in 0..g {
                            for b in 0..g {
                                s += &uu[a][i] * &self.entries[a][b] * &uu[b][j];
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Self::new(entries)
    }

    pub fn scaled(&self, lambda: &Rational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::invalid("scale factor must be positive"));
        }
        Self::new(
            self.entries
                .iter()
                .map(|r| r.iter().map(|x| x * lambda).collect())
                .collect(),
        )
    }
}

/// A function on `ℤ^g / Γ`; classes are keyed by their reduced representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueFunction {
    /// Hermite normal form of `Γ`, rows a basis.
    period_basis: IntegerMatrix,
    values: BTreeMap<Vec<BigInt>, Rational>,
}

impl ResidueFunction {
    /// `values` must give exactly one value per class of `ℤ^g / Γ`;
    /// representatives may be any lattice points.
    pub fn new(period_basis: &IntegerMatrix, values: Vec<(Vec<BigInt>, Rational)>) -> Result<Self> {
        let g = period_basis.cols();
        if period_basis.rows() != g || g == 0 {
            return Err(Error::invalid("period lattice needs a square basis"));
        }
        if period_basis.determinant().is_zero() {
            return Err(Error::invalid("period lattice must have finite index"));
        }
        let hnf = hermite_normal_form(period_basis);
        let mut out = BTreeMap::new();
        for (m, v) in values {
            if m.len() != g {
                return Err(Error::invalid(
                    "residue representative has the wrong dimension",
                ));
            }
            let key = reduce(&hnf, &m);
            if out.insert(key.clone(), v).is_some() {
                return Err(Error::invalid(format!(
                    "residue class of {key:?} given twice"
                )));
            }
        }
        let index = hnf.determinant().abs();
        if BigInt::from(out.len()) != index {
            return Err(Error::invalid(format!(
                "expected one value for each of the {index} residue classes, got {}",
                out.len()
            )));
        }
        Ok(ResidueFunction {
            period_basis: hnf,
            values: out,
        })
    }

    /// `r ≡ 0` with `Γ = ℤ^g`.
    pub fn trivial(g: usize) -> Self {
        ResidueFunction {
            period_basis: IntegerMatrix::identity(g),
            values: BTreeMap::from([(vec![BigInt::zero(); g], Rational::zero())]),
        }
    }

    pub fn zero(period_basis: &IntegerMatrix) -> Result<Self> {
        let hnf = hermite_normal_form(period_basis);
        let reps = representatives(&hnf);
        Self::new(
            &hnf,
            reps.into_iter().map(|r| (r, Rational::zero())).collect(),
        )
    }

    pub fn g(&self) -> usize {
        self.period_basis.cols()
    }

    pub fn period_basis(&self) -> &IntegerMatrix {
        &self.period_basis
    }

    pub fn value(&self, m: &[BigInt]) -> &Rational {
        &self.values[&reduce(&self.period_basis, m)]
    }

    pub fn values(&self) -> &BTreeMap<Vec<BigInt>, Rational> {
        &self.values
    }

    pub fn min_value(&self) -> &Rational {
        self.values.values().min().expect("at least one class")
    }
}

/// Reduced representative of `m` modulo the lattice with upper triangular
/// HNF basis `hnf`: `0 ≤ m_i < hnf_ii`.
pub(crate) fn reduce(hnf: &IntegerMatrix, m: &[BigInt]) -> Vec<BigInt> {
    let mut m = m.to_vec();
    for i in 0..hnf.rows() {
        let q = m[i].div_floor(hnf.get(i, i));
        if q.is_zero() {
            continue;
        }
        for (j, x) in m.iter_mut().enumerate() {
            *x -= &q * hnf.get(i, j);
        }
    }
    m
}

/// All reduced representatives of `ℤ^g / Γ`, lexicographic.
pub(crate) fn representatives(hnf: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for i in 0..hnf.rows() {
        let d: i64 = hnf.get(i, i).try_into().expect("small index");
        out = out
            .into_iter()
            .flat_map(|p: Vec<BigInt>| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(BigInt::from(x));
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_vec, rat};

    #[test]
    fn form_checks() {
        assert!(QuadraticForm::from_i64(&[&[1, 2], &[0, 1]]).is_err());
        assert!(QuadraticForm::from_i64(&[&[1, 2], &[2, 1]]).is_err());
        assert!(QuadraticForm::from_i64(&[&[0, 0], &[0, -1]]).is_err());
        let a2 = QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]]).unwrap();
        assert!(a2.is_positive_definite());
        assert_eq!(a2.eval_int(&int_vec(&[1, 1])), rat(2));
        let psd = QuadraticForm::from_i64(&[&[1, 1], &[1, 1]]).unwrap();
        assert!(!psd.is_positive_definite());
        let u = IntegerMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let t = a2.transform(&u).unwrap();
        assert_eq!(t, QuadraticForm::from_i64(&[&[2, 1], &[1, 2]]).unwrap());
    }

    #[test]
    fn residues() {
        let gamma = IntegerMatrix::from_i64(&[&[2]]);
        let r = ResidueFunction::new(
            &gamma,
            vec![(int_vec(&[0]), rat(0)), (int_vec(&[3]), rat(-1))],
        )
        .unwrap();
        assert_eq!(r.value(&int_vec(&[-5])), &rat(-1));
        assert_eq!(r.value(&int_vec(&[4])), &rat(0));
        assert!(ResidueFunction::new(&gamma, vec![(int_vec(&[0]), rat(0))]).is_err());
        assert!(ResidueFunction::new(
            &gamma,
            vec![(int_vec(&[0]), rat(0)), (int_vec(&[2]), rat(0))]
        )
        .is_err());
        let g2 = IntegerMatrix::from_i64(&[&[1, 1], &[0, 2]]);
        let hnf = hermite_normal_form(&g2);
        assert_eq!(representatives(&hnf).len(), 2);
    }
}
