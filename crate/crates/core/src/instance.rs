//! Instance and allocation files, and the seeded instance generator.
//!
//! Every rational is written as a `"p/q"` string; no floats appear in any
//! file.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cake::{Density, Piece};
use crate::graph::{FairnessGraph, RootedTree};
use crate::protocols::{Allocation, SliceLedger, SliceRecord};
use crate::rational::{format_rational, parse_rational, ratio, Rational};
use crate::verify::{cut_count, CutConvention};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },
}

impl InstanceError {
    fn validation(field: impl Into<String>, message: impl ToString) -> Self {
        InstanceError::Validation {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl From<serde_json::Error> for InstanceError {
    fn from(e: serde_json::Error) -> Self {
        InstanceError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// A tree of agents, one density per agent, and optionally an explicit
/// graph to verify against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub tree: RootedTree,
    pub densities: Vec<Density>,
    pub graph: Option<FairnessGraph>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    parents: Vec<Option<usize>>,
    densities: Vec<RawDensity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph: Option<Vec<[usize; 2]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDensity {
    breakpoints: Vec<String>,
    values: Vec<String>,
}

fn parse_list(field: &str, raw: &[String]) -> Result<Vec<Rational>, InstanceError> {
    raw.iter()
        .enumerate()
        .map(|(k, s)| {
            parse_rational(s).map_err(|e| InstanceError::validation(format!("{field}[{k}]"), e))
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let raw: RawInstance = serde_json::from_str(text)?;
    let tree = RootedTree::from_parents(&raw.parents)
        .map_err(|e| InstanceError::validation("parents", e))?;
    if raw.densities.len() != tree.len() {
        return Err(InstanceError::validation(
            "densities",
            format!(
                "expected {} densities, got {}",
                tree.len(),
                raw.densities.len()
            ),
        ));
    }
    let densities = raw
        .densities
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let field = format!("densities[{i}]");
            let bps = parse_list(&format!("{field}.breakpoints"), &d.breakpoints)?;
            let vals = parse_list(&format!("{field}.values"), &d.values)?;
            Density::new(bps, vals).map_err(|e| InstanceError::validation(field, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let graph = raw
        .graph
        .map(|edges| {
            FairnessGraph::from_edges(tree.len(), edges.iter().map(|&[a, b]| (a, b)))
                .map_err(|e| InstanceError::validation("graph", e))
        })
        .transpose()?;
    Ok(Instance {
        tree,
        densities,
        graph,
    })
}

impl Instance {
    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn to_json(&self) -> String {
        let raw = RawInstance {
            parents: self.tree.parents().to_vec(),
            densities: self
                .densities
                .iter()
                .map(|d| RawDensity {
                    breakpoints: d.breakpoints().iter().map(format_rational).collect(),
                    values: d.values().iter().map(format_rational).collect(),
                })
                .collect(),
            graph: self
                .graph
                .as_ref()
                .map(|g| g.edges().into_iter().map(|(a, b)| [a, b]).collect()),
        };
        serde_json::to_string_pretty(&raw).expect("instance serializes")
    }
}

/// Knobs for [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    /// Upper bound on density segments per agent.
    pub segments: usize,
    /// Upper bound on the tree depth, if any.
    pub max_depth: Option<usize>,
}

/// Random tree (each vertex's parent uniform among earlier vertices) with
/// random step densities. Same config, same instance.
pub fn generate_instance(n: usize, seed: u64, segments: usize) -> Instance {
    generate(GeneratorConfig {
        n,
        seed,
        segments,
        max_depth: None,
    })
}

pub fn generate(cfg: GeneratorConfig) -> Instance {
    assert!(
        cfg.n >= 1 && cfg.segments >= 1,
        "need n >= 1 and segments >= 1"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut parents = vec![None];
    let mut depth = vec![0usize];
    for v in 1..cfg.n {
        let eligible: Vec<usize> = (0..v)
            .filter(|&u| cfg.max_depth.is_none_or(|m| depth[u] < m))
            .collect();
        let p = *eligible
            .choose(&mut rng)
            .expect("the root is always eligible");
        parents.push(Some(p));
        depth.push(depth[p] + 1);
    }
    let tree = RootedTree::from_parents(&parents).expect("generated tree is valid");
    let densities = (0..cfg.n)
        .map(|_| random_density(&mut rng, cfg.segments))
        .collect();
    Instance {
        tree,
        densities,
        graph: None,
    }
}

/// Step density with at most `segments` cells; small numerators and
/// denominators, occasionally zero.
pub fn random_density<R: Rng>(rng: &mut R, segments: usize) -> Density {
    let cells = rng.gen_range(1..=segments);
    let mut inner: Vec<Rational> = (1..cells)
        .map(|_| {
            let q = rng.gen_range(2..=12i64);
            ratio(rng.gen_range(1..q), q)
        })
        .collect();
    inner.sort();
    inner.dedup();
    let mut bps = vec![ratio(0, 1)];
    bps.extend(inner);
    bps.push(ratio(1, 1));
    let values = (1..bps.len())
        .map(|_| ratio(rng.gen_range(0..=9), rng.gen_range(1..=4)))
        .collect();
    Density::new(bps, values).expect("generated density is valid")
}

/// The allocation file: final pieces, both cut counts and, for the
/// descendant protocol, the slice ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationFile {
    pub pieces: BTreeMap<usize, Piece>,
    pub cuts_paper: u64,
    pub cuts_true: u64,
    #[serde(default)]
    pub ledger: BTreeMap<usize, Vec<LedgerEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub from: usize,
    pub piece: Piece,
}

impl AllocationFile {
    pub fn from_allocation(a: &Allocation) -> Self {
        let ledger = a
            .ledger
            .as_ref()
            .map(|l| {
                (0..l.len())
                    .map(|v| {
                        let entries = l
                            .records(v)
                            .iter()
                            .map(|r| LedgerEntry {
                                from: r.from,
                                piece: r.piece.clone(),
                            })
                            .collect();
                        (v, entries)
                    })
                    .collect()
            })
            .unwrap_or_default();
        AllocationFile {
            pieces: a.pieces.iter().cloned().enumerate().collect(),
            cuts_paper: cut_count(a, CutConvention::Paper),
            cuts_true: cut_count(a, CutConvention::True),
            ledger,
        }
    }

    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let file: AllocationFile = serde_json::from_str(text)?;
        if file.pieces.keys().copied().ne(0..file.pieces.len()) {
            return Err(InstanceError::validation("pieces", "keys must be 0..n-1"));
        }
        if file.ledger.keys().any(|&v| v >= file.pieces.len()) {
            return Err(InstanceError::validation("ledger", "vertex out of range"));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("allocation serializes")
    }

    /// Pieces and ledger; the cut log itself is not stored in the file.
    pub fn to_allocation(&self) -> Allocation {
        let mut a = Allocation::from_pieces(self.pieces.values().cloned().collect());
        if !self.ledger.is_empty() {
            let records = (0..a.len())
                .map(|v| {
                    self.ledger
                        .get(&v)
                        .map(|es| {
                            es.iter()
                                .map(|e| SliceRecord {
                                    from: e.from,
                                    piece: e.piece.clone(),
                                })
                                .collect()
                        })
                        .unwrap_or_default()
                })
                .collect();
            a.ledger = Some(SliceLedger::from_records(records));
        }
        a
    }
}
