//! JSON ingestion of instance files and canonical emission of results.
//!
//! All output types serialize with a fixed field order and canonical
//! rational strings, so a given input always produces byte-identical
//! output.  Dimension vectors and weights are rendered in star coordinates
//! as `{"center": …, "arms": [[…], …]}`.

use serde::{Deserialize, Serialize};

use crate::class::{ClassTuple, JordanClass};
use crate::decide::{Certificate, Decision, SolutionCount};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::rep::{MatrixSolution, QuiverRep};
use crate::star::{defect_p, parts_of, DimVector, RootClass, StarQuiver, Weight};

/// `classes` entry of an instance file: one eigenvalue with its Jordan
/// block sizes.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EigenSpec {
    value: Rat,
    blocks: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassSpec {
    spectrum: Vec<EigenSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    classes: Vec<ClassSpec>,
    #[serde(default)]
    mode: Option<ModeHint>,
}

/// Requested decision routing, either from the file's `mode` field or the
/// `--mode` flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeHint {
    Auto,
    General,
    Nilpotent,
    Generic,
}

/// Parse an instance file: the class tuple plus an optional mode hint.
pub fn parse_instance(text: &str) -> Result<(ClassTuple, Option<ModeHint>)> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad instance file: {e}")))?;
    let mut classes = Vec::with_capacity(file.classes.len());
    for spec in file.classes {
        let spectrum = spec
            .spectrum
            .into_iter()
            .map(|e| (e.value, e.blocks))
            .collect();
        classes.push(JordanClass::new(spectrum)?);
    }
    Ok((ClassTuple::new(classes)?, file.mode))
}

/// Parse a candidate solution file (`{"matrices": [[[…]]]}`).
pub fn parse_solution(text: &str) -> Result<MatrixSolution> {
    let sol: MatrixSolution =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad solution file: {e}")))?;
    if sol.matrices.is_empty() {
        return Err(Error::invalid("solution file contains no matrices"));
    }
    Ok(sol)
}

/// A dimension vector in star coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimVectorJson {
    pub center: i64,
    pub arms: Vec<Vec<i64>>,
}

/// A weight in star coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub center: Rat,
    pub arms: Vec<Vec<Rat>>,
}

pub fn dim_vector_json(q: &StarQuiver, v: &DimVector) -> DimVectorJson {
    let (center, arms) = parts_of(q, v);
    DimVectorJson { center, arms }
}

pub fn weight_json(q: &StarQuiver, w: &Weight) -> WeightJson {
    let (center, arms) = parts_of(q, w);
    WeightJson { center, arms }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CertificateJson {
    TraceObstruction,
    NotRoot,
    Decomposition { parts: Vec<DimVectorJson> },
    MemberOk {
        p_alpha: i64,
        max_sub_defect: Option<i64>,
    },
}

/// Full decision document: verdict, certificate, and the instance data
/// (`α`, `λ`, `p(α)`) it refers to.
#[derive(Debug, Serialize)]
pub struct DecisionJson {
    member: bool,
    root_class: &'static str,
    solution_count: &'static str,
    certificate: CertificateJson,
    alpha: DimVectorJson,
    lambda: WeightJson,
    p_alpha: i64,
}

pub fn root_class_str(rc: RootClass) -> &'static str {
    match rc {
        RootClass::NotRoot => "not_root",
        RootClass::Real => "real",
        RootClass::Imaginary => "imaginary",
    }
}

fn solution_count_str(sc: SolutionCount) -> &'static str {
    match sc {
        SolutionCount::None => "none",
        SolutionCount::Unique => "unique",
        SolutionCount::Infinite => "infinite",
    }
}

pub fn decision_json(
    q: &StarQuiver,
    alpha: &DimVector,
    lambda: &Weight,
    d: &Decision,
) -> DecisionJson {
    let certificate = match &d.certificate {
        Certificate::TraceObstruction => CertificateJson::TraceObstruction,
        Certificate::NotRoot => CertificateJson::NotRoot,
        Certificate::Decomposition { parts } => CertificateJson::Decomposition {
            parts: parts.iter().map(|p| dim_vector_json(q, p)).collect(),
        },
        Certificate::MemberOk {
            p_alpha,
            max_sub_defect,
        } => CertificateJson::MemberOk {
            p_alpha: *p_alpha,
            max_sub_defect: *max_sub_defect,
        },
    };
    DecisionJson {
        member: d.member,
        root_class: root_class_str(d.root_class),
        solution_count: solution_count_str(d.solution_count),
        certificate,
        alpha: dim_vector_json(q, alpha),
        lambda: weight_json(q, lambda),
        p_alpha: defect_p(q, alpha),
    }
}

/// Instance introspection document for the `roots` command.
#[derive(Debug, Serialize)]
pub struct RootsJson {
    pub alpha: DimVectorJson,
    pub lambda: WeightJson,
    pub root_class: &'static str,
    pub p_alpha: i64,
    /// `|R⁺_λ ∩ [0, α]|`: admissible positive roots below `α`.
    pub admissible_roots: usize,
}

/// Serialize any of the output documents to its canonical one-line form.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types always serialize")
}

/// Serialize a quiver representation: the dimension vector plus one
/// matrix per arrow, keyed `a[i][j]` / `astar[i][j]` (1-based).
pub fn rep_to_json(q: &StarQuiver, rep: &QuiverRep) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    map.insert(
        "dims".into(),
        serde_json::to_value(dim_vector_json(q, &rep.dims)).expect("serializable"),
    );
    for i in 0..q.k() {
        for j in 1..=q.arm_lengths()[i] {
            map.insert(
                format!("a[{}][{}]", i + 1, j),
                serde_json::to_value(&rep.a[i][j - 1]).expect("serializable"),
            );
            map.insert(
                format!("astar[{}][{}]", i + 1, j),
                serde_json::to_value(&rep.astar[i][j - 1]).expect("serializable"),
            );
        }
    }
    serde_json::Value::Object(map)
}

/// Inverse of [`rep_to_json`].
pub fn rep_from_json(value: &serde_json::Value) -> Result<QuiverRep> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::invalid("representation JSON must be an object"))?;
    let dims_json: DimVectorJson = serde_json::from_value(
        obj.get("dims")
            .ok_or_else(|| Error::invalid("representation JSON lacks \"dims\""))?
            .clone(),
    )
    .map_err(|e| Error::invalid(format!("bad dims: {e}")))?;
    let arm_lengths: Vec<usize> = dims_json.arms.iter().map(Vec::len).collect();
    let q = StarQuiver::new(arm_lengths);
    let mut dims = vec![dims_json.center];
    for arm in &dims_json.arms {
        dims.extend(arm.iter().copied());
    }
    let mut a = Vec::with_capacity(q.k());
    let mut astar = Vec::with_capacity(q.k());
    for i in 0..q.k() {
        let mut arm_a = Vec::new();
        let mut arm_astar = Vec::new();
        for j in 1..=q.arm_lengths()[i] {
            for (key, store) in [("a", &mut arm_a), ("astar", &mut arm_astar)] {
                let name = format!("{}[{}][{}]", key, i + 1, j);
                let m = obj
                    .get(&name)
                    .ok_or_else(|| Error::invalid(format!("representation JSON lacks \"{name}\"")))?;
                store.push(
                    serde_json::from_value(m.clone())
                        .map_err(|e| Error::invalid(format!("bad matrix {name}: {e}")))?,
                );
            }
        }
        a.push(arm_a);
        astar.push(arm_astar);
    }
    let rep = QuiverRep { dims, a, astar };
    rep.validate(&q)?;
    Ok(rep)
}
