//! The serializable picture document: walls, chambers, and verification
//! flags, with every number emitted as an exact `p/q` string.

use semipic::exactgeom::{verify_wall_chamber, Cone, LabeledCone, RatVec, Rational};
use semipic::nakayama::{NakAlgebra, Summand};
use semipic::quivercore::{build_model, HereditaryModel, Quiver};
use semipic::srr::{cone_of, enumerate_clusters, SrrTriple};
use semipic::tame::{tube_data, TubeData};
use semipic::{Error, Result};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Meta {
    pub schema_version: String,
    pub tool_version: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quiver: Option<String>,
    pub eta: Vec<String>,
    pub g_eta: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub history: Option<Vec<(usize, i8)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WallDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    pub label: Vec<String>,
    pub is_null: bool,
    pub equations: Vec<Vec<String>>,
    pub inequalities: Vec<Vec<String>>,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CornerDoc {
    /// "g0" | "p" | "neg_p" | "g" | "g_shift"
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choice: Option<Vec<usize>>,
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChamberDoc {
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster: Option<ClusterDoc>,
    pub corners: Vec<CornerDoc>,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClusterDoc {
    pub modules: Vec<String>,
    pub pplus: Vec<Vec<usize>>,
    pub pminus: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationDoc {
    pub chamber_count: usize,
    pub wall_count: usize,
    pub wall_cell_count: usize,
    pub span_dim: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PictureDocument {
    pub meta: Meta,
    pub walls: Vec<WallDoc>,
    pub chambers: Vec<ChamberDoc>,
    pub verification: VerificationDoc,
}

pub fn rat_str(r: &Rational) -> String {
    r.to_string()
}

pub fn vec_str(v: &RatVec) -> Vec<String> {
    v.coords.iter().map(rat_str).collect()
}

pub fn parse_vec(v: &[String]) -> Result<RatVec> {
    let coords: Result<Vec<Rational>> = v
        .iter()
        .map(|s| {
            Rational::from_str(s).map_err(|e| Error::Precondition(format!("bad rational: {}", e)))
        })
        .collect();
    Ok(RatVec::new(coords?))
}

fn cone_doc(cone: &Cone) -> (Vec<Vec<String>>, Vec<Vec<String>>, Vec<Vec<String>>) {
    (
        cone.equations.iter().map(vec_str).collect(),
        cone.inequalities.iter().map(vec_str).collect(),
        cone.generators.iter().map(vec_str).collect(),
    )
}

fn wall_doc(w: &LabeledCone, eta: &RatVec) -> WallDoc {
    let (equations, inequalities, generators) = cone_doc(&w.cone);
    WallDoc {
        module: w.module.clone(),
        label: vec_str(&w.label),
        is_null: &w.label == eta,
        equations,
        inequalities,
        generators,
    }
}

/// The standard picture of `Lambda_r`.
pub fn nakayama_document(r: usize) -> Result<PictureDocument> {
    if !(1..=6).contains(&r) {
        return Err(Error::Precondition(format!(
            "rank {} out of the supported range 1..=6",
            r
        )));
    }
    let alg = NakAlgebra::new(r);
    let walls = alg.brick_walls();
    let structure = verify_wall_chamber(&walls);
    let stt = alg.enumerate_stt()?;
    let one = RatVec::new(vec![semipic::exactgeom::rat(1); r]);
    let mut chambers = Vec::new();
    for t in &stt {
        let cone = alg.g_cone(t);
        let corners: Vec<CornerDoc> = t
            .summands()
            .iter()
            .map(|&s| CornerDoc {
                kind: match s {
                    Summand::Module(_) => "g".into(),
                    Summand::Shift(_) => "g_shift".into(),
                },
                module: Some(s.name()),
                choice: None,
                vector: vec_str(&alg.g_vector(s)),
            })
            .collect();
        let (_, _, generators) = cone_doc(&cone);
        chambers.push(ChamberDoc {
            witness: vec_str(&cone.relative_interior_point()),
            cluster: Some(ClusterDoc {
                modules: t.modules.iter().map(|m| m.name()).collect(),
                pplus: Vec::new(),
                pminus: t.shifted.iter().map(|m| vec![m.socle]).collect(),
            }),
            corners,
            generators,
        });
    }
    chambers.sort_by(|a, b| a.witness.cmp(&b.witness));
    Ok(PictureDocument {
        meta: Meta {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            kind: "nakayama".into(),
            rank: Some(r),
            quiver: None,
            eta: vec_str(&one),
            g_eta: vec![],
            history: None,
        },
        walls: walls.iter().map(|w| wall_doc(w, &one)).collect(),
        chambers,
        verification: VerificationDoc {
            chamber_count: structure.chamber_count(),
            wall_count: walls.len(),
            wall_cell_count: structure.wall_cell_count,
            span_dim: structure.span_dim,
            passed: structure.report.passed() && structure.chamber_count() == stt.len(),
        },
    })
}

pub fn load_regular_model(
    quiver_text: &str,
    table: Option<&str>,
) -> Result<(HereditaryModel, TubeData)> {
    let q = Quiver::parse(quiver_text)?;
    let model = build_model(&q)?;
    let td = tube_data(&model, table)?;
    Ok((model, td))
}

fn cluster_doc(t: &SrrTriple) -> ClusterDoc {
    ClusterDoc {
        modules: t.modules.iter().map(|m| m.name()).collect(),
        pplus: t.pplus.iter().map(|p| p.choice.clone()).collect(),
        pminus: t.pminus.iter().map(|p| p.choice.clone()).collect(),
    }
}

fn cluster_corners(
    model: &HereditaryModel,
    td: &TubeData,
    t: &SrrTriple,
) -> Vec<CornerDoc> {
    let mut corners = Vec::new();
    for x in &t.modules {
        corners.push(CornerDoc {
            kind: "g0".into(),
            module: Some(x.name()),
            choice: None,
            vector: vec_str(&semipic::tame::g0(model, &td.module_dim(*x))),
        });
    }
    for p in &t.pplus {
        corners.push(CornerDoc {
            kind: "p".into(),
            module: None,
            choice: Some(p.choice.clone()),
            vector: vec_str(&p.vec),
        });
    }
    for p in &t.pminus {
        corners.push(CornerDoc {
            kind: "neg_p".into(),
            module: None,
            choice: Some(p.choice.clone()),
            vector: vec_str(&-&p.vec),
        });
    }
    corners
}

/// The regular picture of a Euclidean quiver, with its clusters.
pub fn regular_document(quiver_text: &str, table: Option<&str>) -> Result<PictureDocument> {
    let (model, td) = load_regular_model(quiver_text, table)?;
    let walls = semipic::tame::regular_walls(&model, &td);
    let structure = verify_wall_chamber(&walls);
    let clusters = enumerate_clusters(&model, &td)?;
    let mut chambers = Vec::new();
    for t in &clusters {
        let cone = cone_of(&model, &td, t)?.cone;
        let (_, _, generators) = cone_doc(&cone);
        chambers.push(ChamberDoc {
            witness: vec_str(&cone.relative_interior_point()),
            cluster: Some(cluster_doc(t)),
            corners: cluster_corners(&model, &td, t),
            generators,
        });
    }
    chambers.sort_by(|a, b| a.witness.cmp(&b.witness));
    Ok(PictureDocument {
        meta: Meta {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            kind: "regular".into(),
            rank: None,
            quiver: Some(model.quiver.to_text()),
            eta: vec_str(&model.eta),
            g_eta: vec_str(&model.g_eta),
            history: None,
        },
        walls: walls.iter().map(|w| wall_doc(w, &model.eta)).collect(),
        chambers,
        verification: VerificationDoc {
            chamber_count: structure.chamber_count(),
            wall_count: walls.len(),
            wall_cell_count: structure.wall_cell_count,
            span_dim: structure.span_dim,
            passed: structure.report.passed() && structure.chamber_count() == clusters.len(),
        },
    })
}

/// The transported picture after a mutation sequence.
pub fn mutate_document(
    quiver_text: &str,
    sequence: &[usize],
    table: Option<&str>,
) -> Result<PictureDocument> {
    let (model, td) = load_regular_model(quiver_text, table)?;
    let mut state = semipic::mutapp::PictureState::hereditary(&model, &td);
    for &k in sequence {
        state = semipic::mutapp::mutate_picture(&state, k)?;
    }
    let labeled = state.labeled_walls();
    let structure = verify_wall_chamber(&labeled);
    let chambers = (0..structure.chamber_count())
        .map(|c| {
            let cell = structure
                .chambers
                .cells
                .iter()
                .zip(&structure.chambers.cell_chamber)
                .find(|&(_, &ch)| ch == c)
                .map(|(cell, _)| cell.witness.clone())
                .expect("every chamber has a cell");
            ChamberDoc {
                witness: vec_str(&cell),
                cluster: None,
                corners: Vec::new(),
                generators: Vec::new(),
            }
        })
        .collect();
    Ok(PictureDocument {
        meta: Meta {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            kind: "mutated".into(),
            rank: None,
            quiver: Some(state.b.to_quiver()?.to_text()),
            eta: vec_str(&state.eta),
            g_eta: vec_str(&state.g_eta),
            history: Some(state.history.clone()),
        },
        walls: labeled.iter().map(|w| wall_doc(w, &state.eta)).collect(),
        chambers,
        verification: VerificationDoc {
            chamber_count: structure.chamber_count(),
            wall_count: labeled.len(),
            wall_cell_count: structure.wall_cell_count,
            span_dim: structure.span_dim,
            passed: structure.report.passed(),
        },
    })
}

pub fn to_json(doc: &PictureDocument) -> String {
    serde_json::to_string_pretty(doc).expect("document serializes")
}

pub fn from_json(text: &str) -> Result<PictureDocument> {
    serde_json::from_str(text).map_err(|e| Error::Precondition(format!("bad document: {}", e)))
}
