//! Workloads shared by the protocol benchmarks.

use cakenet::instance::{generate, GeneratorConfig, Instance};

/// Seeded instance with a bounded tree depth.
pub fn workload(n: usize, max_depth: usize, seed: u64) -> Instance {
    generate(GeneratorConfig {
        n,
        seed,
        segments: 6,
        max_depth: Some(max_depth),
    })
}
