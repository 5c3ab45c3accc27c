//! Bundled example inputs, each paired with the subcommand it is meant for.

use serde::Serialize;
use serde_json::{json, Value};

use crate::Command;

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub command: Command,
    pub input: Value,
}

/// Outer triangle with a rotated inner one; the cyclically twisted
/// triangulation joining them is not regular.
pub const NESTED_TRIANGLES: [[i64; 2]; 6] = [[0, 0], [18, 0], [0, 18], [3, 3], [9, 3], [3, 9]];
pub const TWISTED_TRIANGULATION: [[usize; 3]; 7] = [
    [0, 1, 4],
    [0, 3, 4],
    [1, 2, 5],
    [1, 4, 5],
    [0, 2, 3],
    [2, 3, 5],
    [3, 4, 5],
];

fn hypersimplex_vertices() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut v = vec![0; 4];
            v[i] = 1;
            v[j] = 1;
            out.push(v);
        }
    }
    out
}

pub fn all() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "hypersimplex-2-4",
            description: "the hypersimplex Δ(2,4), an octahedron in the hyperplane Σx = 2",
            command: Command::Idp,
            input: json!({ "vertices": hypersimplex_vertices() }),
        },
        Fixture {
            name: "uniform-2-4",
            description: "rank function of a generic plane in k^4 split into lines",
            command: Command::MatroidPolytope,
            input: json!({
                "n": 4, "r": 2, "block_dims": [1, 1, 1, 1],
                "d": { "7": 1, "11": 1, "13": 1, "14": 1, "15": 2 }
            }),
        },
        Fixture {
            name: "plane-in-k4",
            description: "the row space of [[1,0,1,1],[0,1,1,2]] with four one-dimensional blocks",
            command: Command::RankFunction,
            input: json!({ "block_dims": [1, 1, 1, 1], "basis": [[1, 0, 1, 1], [0, 1, 1, 2]] }),
        },
        Fixture {
            name: "non-unimodular",
            description: "the system {e1, e1 + 2 e2}, whose only maximal minor is 2",
            command: Command::Unimodular,
            input: json!({ "r": 2, "vectors": [[1, 0], [1, 2]] }),
        },
        Fixture {
            name: "a2-hyperplanes",
            description: "hyperplanes dual to e1, e2, e1 + e2",
            command: Command::Hyperplanes,
            input: json!({ "r": 2, "vectors": [[1, 0], [0, 1], [1, 1]] }),
        },
        Fixture {
            name: "unit-form",
            description: "the form [1] on Z",
            command: Command::Delaunay,
            input: json!({ "g": 1, "matrix": [["1"]] }),
        },
        Fixture {
            name: "i2-form",
            description: "the identity form on Z^2",
            command: Command::Delaunay,
            input: json!({ "g": 2, "matrix": [["1", "0"], ["0", "1"]] }),
        },
        Fixture {
            name: "a2-form",
            description: "the A2 form [[2,-1],[-1,2]]",
            command: Command::Delaunay,
            input: json!({ "g": 2, "matrix": [["2", "-1"], ["-1", "2"]] }),
        },
        Fixture {
            name: "a2-pair",
            description: "the A2 form and its image under a sign flip",
            command: Command::GlEquiv,
            input: json!({
                "first": { "g": 2, "matrix": [["2", "-1"], ["-1", "2"]] },
                "second": { "g": 2, "matrix": [["2", "1"], ["1", "2"]] }
            }),
        },
        Fixture {
            name: "a2-scaled",
            description: "the A2 form and [[4,-1],[-1,4]]",
            command: Command::VoronoiCone,
            input: json!({
                "first": { "g": 2, "matrix": [["2", "-1"], ["-1", "2"]] },
                "second": { "g": 2, "matrix": [["4", "-1"], ["-1", "4"]] }
            }),
        },
        Fixture {
            name: "odd-bottom",
            description: "zero form on Z with period 2Z and r(1) = -1",
            command: Command::SemiDelaunay,
            input: json!({
                "form": { "g": 1, "matrix": [["0"]] },
                "residue": {
                    "period_basis": [[2]],
                    "values": [{ "class": [0], "value": "0" }, { "class": [1], "value": "-1" }]
                }
            }),
        },
        Fixture {
            name: "k4",
            description: "the complete graph on four vertices",
            command: Command::Cographic,
            input: json!({ "vertices": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] }),
        },
        Fixture {
            name: "three-collinear",
            description: "the points 0, 1, 2 on a line",
            command: Command::Secondary,
            input: json!({ "points": [[0], [1], [2]] }),
        },
        Fixture {
            name: "four-collinear",
            description: "the points 0, 1, 2, 3 on a line",
            command: Command::Secondary,
            input: json!({ "points": [[0], [1], [2], [3]] }),
        },
        Fixture {
            name: "nested-triangles",
            description: "two nested triangles with the cyclically twisted triangulation",
            command: Command::RegularCheck,
            input: json!({
                "points": NESTED_TRIANGLES,
                "subdivision": { "cells": TWISTED_TRIANGULATION }
            }),
        },
        Fixture {
            name: "unit-square",
            description: "the unit square with heights lifting one diagonal",
            command: Command::Subdiv,
            input: json!({ "points": [[0, 0], [1, 0], [0, 1], [1, 1]], "heights": ["0", "0", "0", "1"] }),
        },
        Fixture {
            name: "square-strata",
            description: "the unit square split along the diagonal through 0 and 3",
            command: Command::Strata,
            input: json!({
                "points": [[0, 0], [1, 0], [0, 1], [1, 1]],
                "subdivision": { "cells": [[0, 1, 3], [0, 2, 3]] }
            }),
        },
        Fixture {
            name: "split-square",
            description: "the unit square as a complex of two triangles",
            command: Command::Gluing,
            input: json!({
                "g": 2,
                "cells": [
                    { "id": "a", "vertices": [[0, 0], [1, 0], [1, 1]] },
                    { "id": "b", "vertices": [[0, 0], [0, 1], [1, 1]] }
                ]
            }),
        },
        Fixture {
            name: "marked-segment",
            description: "the segment [0,2] marked only at its endpoints",
            command: Command::Gluing,
            input: json!({
                "g": 1,
                "cells": [{ "id": "s", "vertices": [[0], [2]] }],
                "markings": { "s": [[0], [2]] }
            }),
        },
        Fixture {
            name: "bowtie",
            description: "three segments meeting at the origin",
            command: Command::Pseudomanifold,
            input: json!({
                "g": 2,
                "cells": [
                    { "id": "a", "vertices": [[0, 0], [1, 0]] },
                    { "id": "b", "vertices": [[0, 0], [0, 1]] },
                    { "id": "c", "vertices": [[0, 0], [-1, -1]] }
                ]
            }),
        },
        Fixture {
            name: "snf-example",
            description: "a 3 × 3 integer matrix with invariant factors 2, 6, 12",
            command: Command::Snf,
            input: json!({ "matrix": [[2, 4, 4], [-6, 6, 12], [10, -4, -16]] }),
        },
        Fixture {
            name: "cube-hull",
            description: "the eight corners of the unit cube and its centre",
            command: Command::Hull,
            input: json!({
                "points": [[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1],["1/2","1/2","1/2"]]
            }),
        },
        Fixture {
            name: "hexagon",
            description: "a lattice hexagon with its centre",
            command: Command::Triangulations,
            input: json!({ "points": [[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1], [1, 1]] }),
        },
        Fixture {
            name: "delta-2-4",
            description: "parameters of the hypersimplex Δ(2,4)",
            command: Command::Hypersimplex,
            input: json!({ "r": 2, "n": 4 }),
        },
        Fixture {
            name: "submodular-violation",
            description: "a table breaking submodularity at {1}, {2}",
            command: Command::Submodular,
            input: json!({ "n": 2, "r": 1, "block_dims": [1, 1], "d": { "1": 1, "2": 1, "3": 1 } }),
        },
        Fixture {
            name: "i2-cone",
            description: "the identity form, for the dimension of its second Voronoi cone",
            command: Command::VoronoiDim,
            input: json!({ "g": 2, "matrix": [["1", "0"], ["0", "1"]] }),
        },
    ]
}

pub fn get(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
