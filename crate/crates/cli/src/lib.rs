//! Batch front end: every pipeline as a subcommand taking one JSON document
//! and producing one JSON payload.

pub mod fixtures;

use std::time::Instant;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use polystrata::complex::{
    gluing_cohomology, marked_section_complex, pseudomanifold_check, PseudomanifoldVerdict,
};
use polystrata::json::{
    int_rows, ints, nums, ComplexJson, FormJson, GraphJson, HeightsJson, Int, MatrixJson, Num,
    PeriodicJson, PointsJson, PolytopeJson, RankFunctionJson, ResidueJson, SubdivisionJson,
    VectorSystemJson,
};
use polystrata::lattice::{convex_hull, smith_normal_form, Rational};
use polystrata::periodic::{
    cographic_subdivision, cycle_space_basis, delaunay, gl_equivalent, hyperplane_subdivision,
    same_voronoi_cone, semi_delaunay, voronoi_cone_dimension, GlEquivalence, PeriodicSubdivision,
    DEFAULT_WINDOW,
};
use polystrata::polytope::{
    generalized_matroid_polytope, hypersimplex, mask_label, rank_function_of_subspace, IdpOutcome,
    LatticePolytope, PointConfiguration, UnimodularCheck,
};
use polystrata::subdiv::{
    enumerate_regular_subdivisions, enumerate_triangulations, is_regular, regular_subdivision,
    secondary_polytope, stratum_dimensions, MarkedSubdivision, Regularity, MAX_ENUM_POINTS,
};
use polystrata::{Error, Execution};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Snf,
    Hull,
    Subdiv,
    RegularCheck,
    Triangulations,
    Secondary,
    Strata,
    Gluing,
    Pseudomanifold,
    MatroidPolytope,
    Submodular,
    RankFunction,
    Unimodular,
    Idp,
    Hypersimplex,
    Delaunay,
    SemiDelaunay,
    VoronoiCone,
    VoronoiDim,
    GlEquiv,
    Hyperplanes,
    Cographic,
    Fixtures,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub window: i64,
    pub word_bound: usize,
    pub degree_bound: u32,
    pub max_points: usize,
    pub exec: Execution,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            window: DEFAULT_WINDOW,
            word_bound: 6,
            degree_bound: 3,
            max_points: MAX_ENUM_POINTS,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    /// SHA-256 of the canonical (key-sorted, compact) input JSON.
    pub input_digest: String,
    pub payload: Value,
    pub elapsed_ms: u128,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    #[serde(skip)]
    pub exit_code: i32,
    pub subcommand: String,
    pub error: ErrorBody,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub message: String,
}

/// 0 on success, 2 for well-formed input refused by a size or search
/// limit, 1 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Refused(_) | Error::WindowExceeded { .. } => 2,
        _ => 1,
    }
}

pub fn digest(input: &Value) -> String {
    let bytes = serde_json::to_vec(input).expect("values always serialize");
    hex::encode(Sha256::digest(bytes))
}

/// Runs one subcommand and wraps the payload with provenance.
pub fn run(command: Command, input: &Value, opts: &Options) -> Result<RunReport, ErrorReport> {
    let start = Instant::now();
    match dispatch(command, input, opts) {
        Ok(payload) => Ok(RunReport {
            subcommand: command.name(),
            input_digest: digest(input),
            payload,
            elapsed_ms: start.elapsed().as_millis(),
            version: VERSION,
        }),
        Err(e) => Err(ErrorReport {
            exit_code: exit_code(&e),
            subcommand: command.name(),
            error: ErrorBody {
                code: e.code(),
                message: e.to_string(),
            },
            version: VERSION,
        }),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(input: &Value) -> Result<T, Error> {
    T::deserialize(input).map_err(|e| Error::InvalidInput(format!("malformed input: {e}")))
}

fn to_value<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("payloads always serialize")
}

#[derive(Deserialize)]
struct SubdivInput {
    points: Vec<Vec<Num>>,
    heights: HeightsJson,
}

#[derive(Deserialize)]
struct ConfigWithSubdivision {
    points: Vec<Vec<Num>>,
    subdivision: SubdivisionJson,
}

#[derive(Deserialize)]
struct HypersimplexInput {
    r: i64,
    n: i64,
}

#[derive(Deserialize)]
struct SubspaceInput {
    block_dims: Vec<u64>,
    basis: Vec<Vec<Num>>,
}

#[derive(Deserialize)]
struct SemiDelaunayInput {
    form: FormJson,
    residue: ResidueJson,
}

#[derive(Deserialize)]
struct Pair<T> {
    first: T,
    second: T,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FormOrSubdivision {
    Form(FormJson),
    Subdivision(PeriodicJson),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VoronoiDimInput {
    WithSubdivision {
        form: FormJson,
        subdivision: PeriodicJson,
    },
    Form(FormJson),
}

fn config(points: Vec<Vec<Num>>, opts: &Options) -> Result<PointConfiguration, Error> {
    if points.len() > opts.max_points {
        return Err(Error::Refused(format!(
            "{} points exceed --max-points {}",
            points.len(),
            opts.max_points
        )));
    }
    PointsJson { points }.to_config()
}

fn cells_json(sub: &MarkedSubdivision) -> Value {
    json!(sub.cells())
}

fn periodic_json(d: &PeriodicSubdivision) -> Value {
    to_value(PeriodicJson::from_subdivision(d))
}

fn resolve(x: FormOrSubdivision, opts: &Options) -> Result<PeriodicSubdivision, Error> {
    match x {
        FormOrSubdivision::Form(f) => delaunay(&f.to_form()?, opts.window),
        FormOrSubdivision::Subdivision(d) => d.to_subdivision(),
    }
}

fn polytope_summary(p: &LatticePolytope) -> Result<Value, Error> {
    Ok(json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(|v| ints(v)).collect::<Vec<_>>(),
        "lattice_points": p.lattice_points()?.len(),
        "normalized_volume": Int(p.normalized_volume()?),
    }))
}

fn dispatch(command: Command, input: &Value, opts: &Options) -> Result<Value, Error> {
    let exec = opts.exec;
    Ok(match command {
        Command::Snf => {
            let m = parse::<MatrixJson>(input)?.to_matrix()?;
            let snf = smith_normal_form(&m);
            json!({
                "invariant_factors": ints(&snf.invariant_factors),
                "rank": snf.rank(),
                "torsion": ints(&snf.torsion()),
                "diagonal": int_rows(&snf.diagonal()),
            })
        }
        Command::Hull => {
            let pts: Vec<Vec<Rational>> =
                parse::<PointsJson>(input)?.to_config()?.points().to_vec();
            let hull = convex_hull(&pts)?;
            json!({
                "dim": hull.dim,
                "vertices": hull.vertices,
                "equations": hull.equations.iter().map(|(a, b)| json!({"normal": nums(a), "offset": Num(b.clone())})).collect::<Vec<_>>(),
                "facets": hull.facets.iter().map(|f| json!({
                    "normal": nums(&f.normal),
                    "offset": Num(f.offset.clone()),
                    "incident": f.incident,
                })).collect::<Vec<_>>(),
            })
        }
        Command::Subdiv => {
            let inp: SubdivInput = parse(input)?;
            let cfg = PointsJson { points: inp.points }.to_config()?;
            let h = inp.heights.to_heights(cfg.len())?;
            json!({ "cells": cells_json(&regular_subdivision(&cfg, &h)?) })
        }
        Command::RegularCheck => {
            let inp: ConfigWithSubdivision = parse(input)?;
            let cfg = PointsJson { points: inp.points }.to_config()?;
            let sub = MarkedSubdivision::new(&cfg, inp.subdivision.cells)?;
            match is_regular(&cfg, &sub)? {
                Regularity::Regular { heights } => {
                    json!({ "regular": true, "heights": HeightsJson::from_heights(&heights) })
                }
                Regularity::NotRegular => json!({ "regular": false }),
            }
        }
        Command::Triangulations => {
            let cfg = config(parse::<PointsJson>(input)?.points, opts)?;
            let ts = enumerate_triangulations(&cfg, exec)?;
            let flags = exec.map(&ts, |t| is_regular(&cfg, t).map(|r| r.is_regular()));
            let items = ts
                .iter()
                .zip(flags)
                .map(|(t, r)| Ok(json!({ "cells": cells_json(t), "regular": r? })))
                .collect::<Result<Vec<_>, Error>>()?;
            json!({ "count": ts.len(), "triangulations": items })
        }
        Command::Secondary => {
            let cfg = config(parse::<PointsJson>(input)?.points, opts)?;
            let sec = secondary_polytope(&cfg, exec)?;
            let faces = enumerate_regular_subdivisions(&cfg, exec)?;
            json!({
                "dim": sec.dim,
                "triangulations": sec.triangulations.len(),
                "vertices": sec.vertices().iter().map(|&i| nums(&sec.gkz[i])).collect::<Vec<_>>(),
                "regular_subdivisions": faces.len(),
                "faces": faces.iter().map(|f| json!({
                    "cells": cells_json(&f.subdivision),
                    "face_dim": f.face_dim,
                    "height": nums(&f.height),
                })).collect::<Vec<_>>(),
            })
        }
        Command::Strata => {
            let inp: ConfigWithSubdivision = parse(input)?;
            let cfg = config(inp.points, opts)?;
            let sub = MarkedSubdivision::new(&cfg, inp.subdivision.cells)?;
            let s = stratum_dimensions(&cfg, &sub, exec)?;
            json!({
                "secondary_dim": s.secondary_dim,
                "face_dim": s.face_dim,
                "secondary_codim": s.secondary_codim,
                "gluing_h1_rank": s.gluing_h1_rank,
                "flag": s.flag,
            })
        }
        Command::Gluing => {
            let cj: ComplexJson = parse(input)?;
            let table = |h: &[polystrata::complex::HomologyGroup]| -> Vec<Value> {
                h.iter()
                    .enumerate()
                    .map(|(p, g)| json!({ "degree": p, "rank": g.rank, "torsion": ints(&g.torsion) }))
                    .collect()
            };
            match cj.to_marked()? {
                Some(mc) => {
                    let (_, c) = marked_section_complex(&mc, exec)?;
                    json!({
                        "marked": true,
                        "h0_rank": c.h0_rank,
                        "h1_rank": c.h1_rank,
                        "h0_torsion": ints(&c.h0_torsion),
                        "h1_torsion": ints(&c.h1_torsion),
                        "chain_ranks": c.chain_ranks,
                        "table": table(&c.homology),
                        "automorphism_order": c.automorphism_order.map(Int),
                        "infinite_automorphisms": c.infinite_automorphisms,
                    })
                }
                None => {
                    let c = gluing_cohomology(&cj.to_complex()?, exec)?;
                    json!({
                        "marked": false,
                        "h0_rank": c.h0_rank,
                        "h1_rank": c.h1_rank,
                        "h0_torsion": ints(&c.h0_torsion),
                        "h1_torsion": ints(&c.h1_torsion),
                        "chain_ranks": c.chain_ranks,
                        "table": table(&c.homology),
                    })
                }
            }
        }
        Command::Pseudomanifold => {
            let complex = parse::<ComplexJson>(input)?.to_complex()?;
            let report = pseudomanifold_check(&complex);
            let (verdict, witness) = match report.verdict {
                PseudomanifoldVerdict::Closed => ("closed", None),
                PseudomanifoldVerdict::WithBoundary => ("with_boundary", None),
                PseudomanifoldVerdict::NotPseudomanifold { witness } => {
                    ("not_pseudomanifold", Some(witness))
                }
            };
            json!({
                "verdict": verdict,
                "witness": witness,
                "boundary": report.boundary.iter().map(|f| f.iter().map(|v| ints(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        }
        Command::MatroidPolytope => {
            let rf = parse::<RankFunctionJson>(input)?.to_rank_function()?;
            let gmp = generalized_matroid_polytope(&rf)?;
            json!({
                "empty": gmp.empty,
                "vertices": gmp.vertices.iter().map(|v| nums(v)).collect::<Vec<_>>(),
                "inequalities": gmp.polytope.inequalities.iter().map(|(a, b)| json!({"normal": nums(a), "offset": Num(b.clone())})).collect::<Vec<_>>(),
                "equations": gmp.polytope.equations.iter().map(|(a, b)| json!({"normal": nums(a), "offset": Num(b.clone())})).collect::<Vec<_>>(),
            })
        }
        Command::Submodular => {
            let rf = parse::<RankFunctionJson>(input)?.to_rank_function()?;
            match rf.check_submodular(exec) {
                None => json!({ "submodular": true }),
                Some((i, j)) => json!({
                    "submodular": false,
                    "violation": {
                        "first": i, "second": j,
                        "first_set": mask_label(i, rf.n()), "second_set": mask_label(j, rf.n()),
                    },
                }),
            }
        }
        Command::RankFunction => {
            let inp: SubspaceInput = parse(input)?;
            let basis: Vec<Vec<Rational>> = inp
                .basis
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect();
            to_value(RankFunctionJson::from_rank_function(
                &rank_function_of_subspace(&basis, &inp.block_dims)?,
            ))
        }
        Command::Unimodular => {
            let sys = parse::<VectorSystemJson>(input)?.to_system()?;
            match sys.is_unimodular(exec) {
                UnimodularCheck::Unimodular => json!({ "unimodular": true }),
                UnimodularCheck::Witness { subset, minor } => json!({
                    "unimodular": false,
                    "witness": { "subset": subset, "minor": Int(minor) },
                }),
            }
        }
        Command::Idp => {
            let pj: PolytopeJson = parse(input)?;
            let p = LatticePolytope::new(
                pj.vertices
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| x.0).collect())
                    .collect(),
            )?;
            let mut out = polytope_summary(&p)?;
            out["degree_bound"] = json!(opts.degree_bound);
            match p.is_idp(opts.degree_bound)? {
                IdpOutcome::Idp => out["idp"] = json!(true),
                IdpOutcome::Witness { level, point } => {
                    out["idp"] = json!(false);
                    out["witness"] = json!({ "level": level, "point": ints(&point) });
                }
            }
            out
        }
        Command::Hypersimplex => {
            let inp: HypersimplexInput = parse(input)?;
            polytope_summary(&hypersimplex(inp.r, inp.n)?)?
        }
        Command::Delaunay => periodic_json(&delaunay(
            &parse::<FormJson>(input)?.to_form()?,
            opts.window,
        )?),
        Command::SemiDelaunay => {
            let inp: SemiDelaunayInput = parse(input)?;
            periodic_json(&semi_delaunay(
                &inp.form.to_form()?,
                &inp.residue.to_residue()?,
                opts.window,
            )?)
        }
        Command::VoronoiCone => {
            let inp: Pair<FormJson> = parse(input)?;
            json!({ "same_cone": same_voronoi_cone(&inp.first.to_form()?, &inp.second.to_form()?, opts.window)? })
        }
        Command::VoronoiDim => {
            let (q, d) = match parse::<VoronoiDimInput>(input)? {
                VoronoiDimInput::WithSubdivision { form, subdivision } => {
                    (form.to_form()?, subdivision.to_subdivision()?)
                }
                VoronoiDimInput::Form(f) => {
                    let q = f.to_form()?;
                    let d = delaunay(&q, opts.window)?;
                    (q, d)
                }
            };
            let dim = voronoi_cone_dimension(&d, &q, opts.window)?;
            let total = q.g() * (q.g() + 1) / 2;
            json!({ "dimension": dim, "forms_dimension": total, "codimension": total - dim })
        }
        Command::GlEquiv => {
            let inp: Pair<FormOrSubdivision> = parse(input)?;
            let a = resolve(inp.first, opts)?;
            let b = resolve(inp.second, opts)?;
            match gl_equivalent(&a, &b, opts.word_bound)? {
                GlEquivalence::Equivalent {
                    witness,
                    word_length,
                } => json!({
                    "equivalent": true,
                    "witness": int_rows(&witness),
                    "word_length": word_length,
                    "word_bound": opts.word_bound,
                }),
                GlEquivalence::NotFound { reason } => json!({
                    "equivalent": false,
                    "inconclusive": true,
                    "reason": reason,
                    "word_bound": opts.word_bound,
                }),
            }
        }
        Command::Hyperplanes => {
            let sys = parse::<VectorSystemJson>(input)?.to_system()?;
            let d = hyperplane_subdivision(&sys)?;
            json!({
                "subdivision": periodic_json(&d),
                "integral_vertices": d.has_integral_vertices(),
                "unimodular": matches!(sys.is_unimodular(exec), UnimodularCheck::Unimodular),
            })
        }
        Command::Cographic => {
            let g = parse::<GraphJson>(input)?.to_graph()?;
            let d = cographic_subdivision(&g)?;
            json!({
                "cycle_basis": int_rows(&cycle_space_basis(&g)),
                "subdivision": periodic_json(&d),
                "integral_vertices": d.has_integral_vertices(),
            })
        }
        Command::Fixtures => to_value(json!({ "fixtures": fixtures::all() })),
    })
}
