use std::fs;
use std::path::{Path, PathBuf};

use cakenet::graph::factorial;
use cakenet::instance::{generate, GeneratorConfig};
use cakenet::{
    alg_descendant, allocation_tree, check_envy_free, check_partition, check_proportional,
    descendant_closure, parse_instance, AllocationFile, FairnessGraph, Instance, InstanceError,
};
use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: InstanceError,
    },
    #[error(transparent)]
    Protocol(#[from] cakenet::Error),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Input {
                source: InstanceError::Parse { .. },
                ..
            } => "parse",
            CliError::Input { .. } => "validation",
            CliError::Protocol(_) => "protocol",
            CliError::Mismatch(_) => "validation",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.kind(), "message": self.to_string() })
    }
}

/// JSON produced by a command, and whether it reports a fairness violation.
pub struct Output {
    pub json: String,
    pub violated: bool,
}

impl Output {
    fn ok(json: String) -> Self {
        Output {
            json,
            violated: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Protocol {
    Tree,
    Descendant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CriterionArg {
    EnvyFree,
    Proportional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphArg {
    Tree,
    DescendantClosure,
    Explicit,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

pub fn solve(protocol: Protocol, input: &Path) -> Result<Output, CliError> {
    let inst = load_instance(input)?;
    let alloc = match protocol {
        Protocol::Tree => allocation_tree(&inst.tree, &inst.densities)?,
        Protocol::Descendant => alg_descendant(&inst.tree, &inst.densities)?,
    };
    Ok(Output::ok(
        AllocationFile::from_allocation(&alloc).to_json(),
    ))
}

pub fn verify(
    criterion: CriterionArg,
    graph: GraphArg,
    input: &Path,
    alloc_path: &Path,
) -> Result<Output, CliError> {
    let inst = load_instance(input)?;
    let file = AllocationFile::parse(&read(alloc_path)?).map_err(|source| CliError::Input {
        path: alloc_path.to_owned(),
        source,
    })?;
    let alloc = file.to_allocation();
    if alloc.len() != inst.len() {
        return Err(CliError::Mismatch(format!(
            "allocation has {} pieces but the instance has {} agents",
            alloc.len(),
            inst.len()
        )));
    }
    let g: FairnessGraph = match graph {
        GraphArg::Tree => inst.tree.as_graph(),
        GraphArg::DescendantClosure => descendant_closure(&inst.tree),
        GraphArg::Explicit => inst
            .graph
            .clone()
            .ok_or_else(|| CliError::Mismatch("instance has no \"graph\" field".into()))?,
    };
    let partition = check_partition(&alloc);
    let report = match criterion {
        CriterionArg::EnvyFree => check_envy_free(&alloc, &g, &inst.densities),
        CriterionArg::Proportional => check_proportional(&alloc, &g, &inst.densities),
    };
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["partition"] = Value::Bool(partition);
    let json = serde_json::to_string_pretty(&value).expect("report serializes");
    Ok(Output {
        json,
        violated: !(partition && report.satisfied),
    })
}

pub fn gen(
    n: usize,
    seed: u64,
    segments: usize,
    max_depth: Option<usize>,
) -> Result<Output, CliError> {
    if n == 0 || segments == 0 {
        return Err(CliError::Mismatch(
            "--n and --segments must be at least 1".into(),
        ));
    }
    let inst = generate(GeneratorConfig {
        n,
        seed,
        segments,
        max_depth,
    });
    Ok(Output::ok(inst.to_json()))
}

/// Small integers as JSON numbers, huge ones as decimal strings.
fn big(x: &BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn info(input: &Path) -> Result<Output, CliError> {
    let inst = load_instance(input)?;
    let t = &inst.tree;
    let n = t.len();
    let dfact = factorial(t.max_depth());
    let f = t.f_values()?;
    let n2 = BigUint::from(n * n);
    let value = json!({
        "n": n,
        "root": t.root(),
        "depth": t.max_depth(),
        "d_factorial": big(&dfact),
        "depths": t.depths(),
        "subtree_sizes": t.subtree_sizes(),
        "f_values": f.iter().map(big).collect::<Vec<_>>(),
        "cut_bound_tree": big(&(&n2 * 3u32)),
        "cut_bound_descendant": big(&(&n2 * &dfact)),
    });
    Ok(Output::ok(
        serde_json::to_string_pretty(&value).expect("info serializes"),
    ))
}
