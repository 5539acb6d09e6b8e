//! File formats and command drivers for the `ksink` binary.
//!
//! Instances, solutions and hitting-set inputs travel as versioned JSON
//! documents. Parsing is strict: unknown fields are rejected with line and
//! column information, and semantic problems name the offending record.
//! Serialization is canonical (fixed field order, two-space indentation,
//! trailing newline) so document bytes are stable across runs and worker
//! counts.

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::epsilon::Epsilon;
use crate::error::Error;
use crate::evaluator::{evacuation_time, EvaluationResult};
use crate::exact::{solve_exact_with, DEFAULT_SUBSET_BUDGET};
use crate::fptas::solve_fptas_with;
use crate::hardness::{from_hitting_set, verify_reduction_with, HittingSetInstance};
use crate::network::{violations_to_error, DynamicNetwork, Instance, Position, SinkSet};

pub const INSTANCE_FORMAT: &str = "ksink-instance/1";
pub const SOLUTION_FORMAT: &str = "ksink-solution/1";
pub const HITTING_SET_FORMAT: &str = "ksink-hitting-set/1";

/// Errors raised while reading documents or running commands.
#[derive(Debug, ThisError)]
pub enum DocumentError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document format {found:?}, expected {expected:?}")]
    WrongFormat { expected: &'static str, found: String },
    #[error("edge record {index} ({u:?} -- {v:?}): unknown vertex {name:?}")]
    UnknownEdgeVertex {
        index: usize,
        u: String,
        v: String,
        name: String,
    },
    #[error("source record {index}: unknown vertex {name:?}")]
    UnknownSourceVertex { index: usize, name: String },
    #[error("source record {index}: vertex {name:?} listed twice")]
    DuplicateSource { index: usize, name: String },
    #[error("sink token {token:?}: {reason}")]
    BadSinkToken { token: String, reason: String },
    #[error(transparent)]
    Solver(#[from] Error),
}

/// On-disk image of a problem instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub format: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub sources: Vec<SourceRecord>,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    pub capacity: u64,
    pub transit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceRecord {
    pub vertex: String,
    pub supply: u64,
}

/// On-disk image of a solver answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub format: String,
    /// `"fptas eps=<rational>"`, `"exact"`, or `"evaluate"`.
    pub solver: String,
    pub k: u64,
    /// Sink tokens: a vertex name or `e<index>:<offset>` with 1-based
    /// edge indices.
    pub sinks: Vec<String>,
    pub evacuation_time: TimeRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subsets_evaluated: Option<u64>,
}

/// A finite horizon or the explicit infeasibility marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeRecord {
    Finite(u64),
    Marker(String),
}

impl From<EvaluationResult> for TimeRecord {
    fn from(result: EvaluationResult) -> Self {
        match result {
            EvaluationResult::Time(t) => TimeRecord::Finite(t),
            EvaluationResult::Infeasible => TimeRecord::Marker("infeasible".into()),
        }
    }
}

/// On-disk image of a hitting-set instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HittingSetDocument {
    pub format: String,
    pub universe: Vec<String>,
    pub family: Vec<Vec<String>>,
    pub k: u64,
}

fn check_format(expected: &'static str, found: &str) -> Result<(), DocumentError> {
    if found == expected {
        Ok(())
    } else {
        Err(DocumentError::WrongFormat {
            expected,
            found: found.to_owned(),
        })
    }
}

/// Canonical serialization: pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(document: &T) -> String {
    let mut text = serde_json::to_string_pretty(document).expect("documents serialize");
    text.push('\n');
    text
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let document: InstanceDocument = serde_json::from_str(text)?;
        check_format(INSTANCE_FORMAT, &document.format)?;
        Ok(document)
    }

    /// Resolves names, canonicalizes edge endpoint order and validates the
    /// network, rejecting any structural violation.
    pub fn to_instance(&self) -> Result<Instance, DocumentError> {
        let index_of = |name: &str| self.vertices.iter().position(|v| v == name);
        let mut network = DynamicNetwork {
            vertices: self.vertices.clone(),
            edges: Vec::with_capacity(self.edges.len()),
            sources: Default::default(),
        };
        for (i, record) in self.edges.iter().enumerate() {
            let resolve = |name: &String| {
                index_of(name).ok_or_else(|| DocumentError::UnknownEdgeVertex {
                    index: i,
                    u: record.u.clone(),
                    v: record.v.clone(),
                    name: name.clone(),
                })
            };
            let (mut u, mut v) = (resolve(&record.u)?, resolve(&record.v)?);
            if u > v {
                std::mem::swap(&mut u, &mut v);
            }
            network.edges.push(crate::network::Edge {
                u,
                v,
                capacity: record.capacity,
                transit: record.transit,
            });
        }
        for (i, record) in self.sources.iter().enumerate() {
            let vertex =
                index_of(&record.vertex).ok_or_else(|| DocumentError::UnknownSourceVertex {
                    index: i,
                    name: record.vertex.clone(),
                })?;
            if network.sources.insert(vertex, record.supply).is_some() {
                return Err(DocumentError::DuplicateSource {
                    index: i,
                    name: record.vertex.clone(),
                });
            }
        }
        let instance = Instance::new(network, self.k);
        let violations = instance.validate();
        if !violations.is_empty() {
            return Err(violations_to_error(&violations).into());
        }
        Ok(instance)
    }

    /// The normalized document of an instance: edges in stored (canonical)
    /// order, sources ascending by vertex.
    pub fn from_instance(instance: &Instance) -> Self {
        let network = &instance.network;
        InstanceDocument {
            format: INSTANCE_FORMAT.into(),
            vertices: network.vertices.clone(),
            edges: network
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    u: network.vertices[e.u].clone(),
                    v: network.vertices[e.v].clone(),
                    capacity: e.capacity,
                    transit: e.transit,
                })
                .collect(),
            sources: network
                .sources
                .iter()
                .map(|(&vertex, &supply)| SourceRecord {
                    vertex: network.vertices[vertex].clone(),
                    supply,
                })
                .collect(),
            k: instance.k,
        }
    }
}

impl HittingSetDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let document: HittingSetDocument = serde_json::from_str(text)?;
        check_format(HITTING_SET_FORMAT, &document.format)?;
        Ok(document)
    }

    pub fn to_hitting_set(&self) -> Result<HittingSetInstance, DocumentError> {
        let hs = HittingSetInstance {
            universe: self.universe.clone(),
            family: self.family.clone(),
            k: self.k,
        };
        hs.validate()?;
        Ok(hs)
    }
}

/// Renders a canonical position as a sink token: the vertex name, or
/// `e<index>:<offset>` with a 1-based edge index.
pub fn sink_token(network: &DynamicNetwork, position: Position) -> String {
    match position {
        Position::Vertex(v) => network.vertices[v].clone(),
        Position::EdgePoint { edge, offset } => format!("e{}:{}", edge + 1, offset),
    }
}

/// Parses a sink token against a network. `e<index>:<offset>` names a point
/// on the 1-based edge (offsets 0 and transit canonicalize to the endpoint
/// vertices); anything else must be a vertex name.
pub fn parse_sink_token(
    network: &DynamicNetwork,
    token: &str,
) -> Result<Position, DocumentError> {
    let bad = |reason: String| DocumentError::BadSinkToken {
        token: token.to_owned(),
        reason,
    };
    if let Some((edge_part, offset_part)) = token.split_once(':') {
        let looks_like_edge = edge_part.len() > 1
            && edge_part.starts_with('e')
            && edge_part[1..].bytes().all(|b| b.is_ascii_digit());
        if looks_like_edge {
            let ordinal: usize = edge_part[1..]
                .parse()
                .map_err(|_| bad("edge index does not fit".into()))?;
            if ordinal == 0 {
                return Err(bad("edge indices are 1-based".into()));
            }
            let edge = ordinal - 1;
            if edge >= network.edge_count() {
                return Err(bad(format!(
                    "network has only {} edges",
                    network.edge_count()
                )));
            }
            let offset: u64 = offset_part
                .parse()
                .map_err(|_| bad("offset must be a nonnegative integer".into()))?;
            return network
                .canonicalize(Position::EdgePoint { edge, offset })
                .map_err(|e| bad(e.to_string()));
        }
    }
    match network.vertices.iter().position(|name| name == token) {
        Some(vertex) => Ok(Position::Vertex(vertex)),
        None => Err(bad("no such vertex".into())),
    }
}

fn solution(
    network: &DynamicNetwork,
    solver: String,
    k: u64,
    sinks: &SinkSet,
    time: EvaluationResult,
    candidates: Option<u64>,
    subsets_evaluated: Option<u64>,
) -> SolutionDocument {
    SolutionDocument {
        format: SOLUTION_FORMAT.into(),
        solver,
        k,
        sinks: sinks
            .iter()
            .map(|&p| sink_token(network, p))
            .collect(),
        evacuation_time: time.into(),
        candidates,
        subsets_evaluated,
    }
}

/// Drives the approximate solver on an instance document. Returns the
/// solution and any warnings (currently only the degenerate-k notice).
pub fn run_solve(
    instance_text: &str,
    epsilon: Epsilon,
    k_override: Option<u64>,
    parallelism: usize,
) -> Result<(SolutionDocument, Vec<String>), DocumentError> {
    let mut instance = InstanceDocument::parse(instance_text)?.to_instance()?;
    if let Some(k) = k_override {
        instance.k = k;
    }
    let result = solve_fptas_with(&instance, epsilon, parallelism)?;
    let mut warnings = instance.network.warnings();
    if instance.k > result.candidate_count {
        warnings.push(format!(
            "k = {} exceeds the {} candidates; using all of them",
            instance.k, result.candidate_count
        ));
    }
    let document = solution(
        &instance.network,
        format!("fptas eps={}", epsilon),
        instance.k,
        &result.sinks,
        result.time,
        Some(result.candidate_count),
        Some(u64::try_from(result.subsets_evaluated).unwrap_or(u64::MAX)),
    );
    Ok((document, warnings))
}

/// Drives the exact solver on an instance document.
pub fn run_exact(
    instance_text: &str,
    budget: Option<u64>,
    k_override: Option<u64>,
    parallelism: usize,
) -> Result<(SolutionDocument, Vec<String>), DocumentError> {
    let mut instance = InstanceDocument::parse(instance_text)?.to_instance()?;
    if let Some(k) = k_override {
        instance.k = k;
    }
    let budget = budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    let result = solve_exact_with(&instance, budget, parallelism)?;
    let document = solution(
        &instance.network,
        "exact".into(),
        instance.k,
        &result.sinks,
        result.time,
        Some(result.position_count),
        Some(u64::try_from(result.subsets_evaluated).unwrap_or(u64::MAX)),
    );
    Ok((document, instance.network.warnings()))
}

/// Evaluates an explicit sink set given as tokens.
pub fn run_evaluate(
    instance_text: &str,
    sink_tokens: &[String],
) -> Result<SolutionDocument, DocumentError> {
    let instance = InstanceDocument::parse(instance_text)?.to_instance()?;
    let positions = sink_tokens
        .iter()
        .map(|token| parse_sink_token(&instance.network, token))
        .collect::<Result<Vec<_>, _>>()?;
    let sinks = SinkSet::new(&instance.network, positions)?;
    let time = evacuation_time(&instance.network, &sinks)?;
    Ok(solution(
        &instance.network,
        "evaluate".into(),
        sinks.len() as u64,
        &sinks,
        time,
        None,
        None,
    ))
}

/// Generates the instance document of a hitting-set file.
pub fn run_gen_hs(hitting_set_text: &str) -> Result<InstanceDocument, DocumentError> {
    let hs = HittingSetDocument::parse(hitting_set_text)?.to_hitting_set()?;
    let instance = from_hitting_set(&hs)?;
    Ok(InstanceDocument::from_instance(&instance))
}

/// Outcome of the reduction equivalence check on one hitting-set file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub consistent: bool,
    pub universe_size: usize,
    pub family_size: usize,
    pub k: u64,
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: |U|={}, {} sets, k={}: hitting-set decision and 1-step \
             evacuation decision {}",
            if self.consistent { "pass" } else { "FAIL" },
            self.universe_size,
            self.family_size,
            self.k,
            if self.consistent { "agree" } else { "disagree" },
        )
    }
}

/// Runs the reduction verifier on a hitting-set file.
pub fn run_verify_hs(
    hitting_set_text: &str,
    budget: Option<u64>,
) -> Result<VerifyReport, DocumentError> {
    let hs = HittingSetDocument::parse(hitting_set_text)?.to_hitting_set()?;
    let consistent = verify_reduction_with(&hs, budget.unwrap_or(DEFAULT_SUBSET_BUDGET))?;
    Ok(VerifyReport {
        consistent,
        universe_size: hs.universe.len(),
        family_size: hs.family.len(),
        k: hs.k,
    })
}
