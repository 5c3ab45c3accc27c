//! JSON encodings of the library's inputs and outputs.
//!
//! Every number is written as an exact string: `"p"` for integers and
//! `"p/q"` otherwise. On input, integers may also be plain JSON numbers.
//! Counts, labels and ranks stay plain JSON integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{Cell, MarkedComplex, PolytopalComplex};
use crate::error::{Error, Result};
use crate::lattice::{format_rational, parse_rational, IntegerMatrix, Rational};
use crate::periodic::{Graph, PeriodicCell, PeriodicSubdivision, QuadraticForm, ResidueFunction};
use crate::polytope::{PointConfiguration, RankFunction, VectorSystem};

/// An exact rational in text form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Num(pub Rational);

/// An exact integer in text form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct NumVisitor;

impl Visitor<'_> for NumVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v.into()))
    }

    fn visit_f64<E: de::Error>(self, _: f64) -> std::result::Result<Rational, E> {
        Err(E::custom(
            "floating point numbers are not accepted; use a \"p/q\" string",
        ))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        parse_rational(v).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(NumVisitor).map(Num)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = d.deserialize_any(NumVisitor)?;
        if !x.is_integer() {
            return Err(de::Error::custom(format!("expected an integer, got {x}")));
        }
        Ok(Int(x.to_integer()))
    }
}

pub fn nums(xs: &[Rational]) -> Vec<Num> {
    xs.iter().cloned().map(Num).collect()
}

pub fn ints(xs: &[BigInt]) -> Vec<Int> {
    xs.iter().cloned().map(Int).collect()
}

fn from_nums(xs: Vec<Num>) -> Vec<Rational> {
    xs.into_iter().map(|x| x.0).collect()
}

fn from_ints(xs: Vec<Int>) -> Vec<BigInt> {
    xs.into_iter().map(|x| x.0).collect()
}

pub fn int_rows(m: &IntegerMatrix) -> Vec<Vec<Int>> {
    m.to_rows().iter().map(|r| ints(r)).collect()
}

fn matrix(rows: Vec<Vec<Int>>) -> Result<IntegerMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    IntegerMatrix::from_rows(rows.into_iter().map(from_ints).collect(), cols)
}

/// `{"matrix": [[…]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub matrix: Vec<Vec<Int>>,
}

impl MatrixJson {
    pub fn to_matrix(self) -> Result<IntegerMatrix> {
        matrix(self.matrix)
    }
}

/// `{"points": [[…]]}`; labels are positions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointsJson {
    pub points: Vec<Vec<Num>>,
}

impl PointsJson {
    pub fn to_config(self) -> Result<PointConfiguration> {
        PointConfiguration::new(self.points.into_iter().map(from_nums).collect())
    }
}

/// Heights either as `{"label": "p/q"}` or as a list indexed by label.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HeightsJson {
    List(Vec<Num>),
    Map(BTreeMap<String, Num>),
}

impl HeightsJson {
    pub fn from_heights(h: &[Rational]) -> Self {
        HeightsJson::Map(
            h.iter()
                .enumerate()
                .map(|(i, x)| (i.to_string(), Num(x.clone())))
                .collect(),
        )
    }

    pub fn to_heights(self, n: usize) -> Result<Vec<Rational>> {
        match self {
            HeightsJson::List(v) => {
                if v.len() != n {
                    return Err(Error::invalid(format!(
                        "expected {n} heights, got {}",
                        v.len()
                    )));
                }
                Ok(from_nums(v))
            }
            HeightsJson::Map(m) => {
                let mut out = vec![None; n];
                for (k, v) in m {
                    let i: usize = k.parse().ok().filter(|&i| i < n).ok_or_else(|| {
                        Error::invalid(format!("height label {k:?} is not a point label"))
                    })?;
                    out[i] = Some(v.0);
                }
                out.into_iter()
                    .enumerate()
                    .map(|(i, h)| {
                        h.ok_or_else(|| Error::invalid(format!("missing height for label {i}")))
                    })
                    .collect()
            }
        }
    }
}

/// `{"cells": [[labels]…]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub cells: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellJson {
    pub id: String,
    pub vertices: Vec<Vec<Int>>,
}

/// `{"g": …, "cells": [{"id": …, "vertices": [[…]]}], "markings": {…}}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub g: usize,
    pub cells: Vec<CellJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markings: Option<BTreeMap<String, Vec<Vec<Int>>>>,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<PolytopalComplex> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                Cell::new(
                    c.id.clone(),
                    c.vertices.iter().map(|v| from_ints(v.clone())).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        PolytopalComplex::new(self.g, cells)
    }

    /// `None` when no markings are given.
    pub fn to_marked(&self) -> Result<Option<MarkedComplex>> {
        let Some(markings) = &self.markings else {
            return Ok(None);
        };
        let complex = self.to_complex()?;
        let markings = markings
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().map(|p| from_ints(p.clone())).collect()))
            .collect();
        MarkedComplex::new(complex, markings).map(Some)
    }
}

/// `{"n": …, "r": …, "block_dims": […], "d": {"bitmask": value, …}}`
///
/// Bitmask keys are decimal, or binary with a `0b` prefix; bit `i` is block `i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankFunctionJson {
    pub n: usize,
    pub r: u64,
    pub block_dims: Vec<u64>,
    pub d: BTreeMap<String, u64>,
}

fn parse_mask(k: &str) -> Result<usize> {
    let parsed = match k.strip_prefix("0b") {
        Some(bits) => usize::from_str_radix(bits, 2),
        None => k.parse(),
    };
    parsed.map_err(|_| Error::invalid(format!("bad bitmask key {k:?}")))
}

impl RankFunctionJson {
    pub fn from_rank_function(rf: &RankFunction) -> Self {
        RankFunctionJson {
            n: rf.n(),
            r: rf.r(),
            block_dims: rf.block_dims().to_vec(),
            d: rf
                .table()
                .iter()
                .enumerate()
                .map(|(m, &v)| (m.to_string(), v))
                .collect(),
        }
    }

    pub fn to_rank_function(&self) -> Result<RankFunction> {
        let entries = self
            .d
            .iter()
            .map(|(k, &v)| Ok((parse_mask(k)?, v)))
            .collect::<Result<Vec<_>>>()?;
        RankFunction::from_entries(self.n, self.r, self.block_dims.clone(), entries)
    }
}

/// `{"vertices": [[…]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<Int>>,
}

/// `{"r": …, "vectors": [[…]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorSystemJson {
    pub r: usize,
    pub vectors: Vec<Vec<Int>>,
}

impl VectorSystemJson {
    pub fn to_system(&self) -> Result<VectorSystem> {
        VectorSystem::new(
            self.r,
            self.vectors.iter().map(|v| from_ints(v.clone())).collect(),
        )
    }
}

/// `{"g": …, "matrix": [["p/q", …], …]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub g: usize,
    pub matrix: Vec<Vec<Num>>,
}

impl FormJson {
    pub fn from_form(q: &QuadraticForm) -> Self {
        FormJson {
            g: q.g(),
            matrix: q.entries().iter().map(|r| nums(r)).collect(),
        }
    }

    pub fn to_form(&self) -> Result<QuadraticForm> {
        if self.matrix.len() != self.g {
            return Err(Error::invalid(format!("matrix must have {} rows", self.g)));
        }
        QuadraticForm::new(self.matrix.iter().map(|r| from_nums(r.clone())).collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidueValueJson {
    pub class: Vec<Int>,
    pub value: Num,
}

/// `{"period_basis": [[…]], "values": [{"class": […], "value": "p/q"}]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidueJson {
    pub period_basis: Vec<Vec<Int>>,
    pub values: Vec<ResidueValueJson>,
}

impl ResidueJson {
    pub fn to_residue(&self) -> Result<ResidueFunction> {
        let basis = matrix(self.period_basis.clone())?;
        ResidueFunction::new(
            &basis,
            self.values
                .iter()
                .map(|v| (from_ints(v.class.clone()), v.value.0.clone()))
                .collect(),
        )
    }
}

/// `{"vertices": n, "edges": [[u, v], …]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.vertices, self.edges.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicCellJson {
    pub vertices: Vec<Vec<Num>>,
    pub marking: Vec<Vec<Int>>,
}

/// `{"g": …, "period_basis": [[…]], "cells": [{"vertices": [[…]], "marking": [[…]]}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicJson {
    pub g: usize,
    pub period_basis: Vec<Vec<Int>>,
    pub cells: Vec<PeriodicCellJson>,
}

impl PeriodicJson {
    pub fn from_subdivision(d: &PeriodicSubdivision) -> Self {
        PeriodicJson {
            g: d.g(),
            period_basis: int_rows(d.period_basis()),
            cells: d
                .cells()
                .iter()
                .map(|c| PeriodicCellJson {
                    vertices: c.vertices.iter().map(|v| nums(v)).collect(),
                    marking: c.marking.iter().map(|m| ints(m)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_subdivision(&self) -> Result<PeriodicSubdivision> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                PeriodicCell::new(
                    c.vertices.iter().map(|v| from_nums(v.clone())).collect(),
                    c.marking.iter().map(|m| from_ints(m.clone())).collect(),
                )
            })
            .collect();
        let d = PeriodicSubdivision::new(&matrix(self.period_basis.clone())?, cells)?;
        if d.g() != self.g {
            return Err(Error::invalid("g does not match the period basis"));
        }
        d.validate()?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        let v: Vec<Num> = serde_json::from_str(r#"[3, "-1/2", "4/2"]"#).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["3","-1/2","2"]"#);
        assert!(serde_json::from_str::<Num>("0.5").is_err());
        assert!(serde_json::from_str::<Int>(r#""1/2""#).is_err());
    }

    #[test]
    fn rank_function_keys() {
        let j: RankFunctionJson =
            serde_json::from_str(r#"{"n":2,"r":1,"block_dims":[1,1],"d":{"0b11":1}}"#).unwrap();
        let rf = j.to_rank_function().unwrap();
        assert_eq!(rf.get(3), 1);
        assert_eq!(rf.get(1), 0);
    }
}
