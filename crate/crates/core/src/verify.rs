//! Fairness and accounting checks.
//!
//! Everything here is recomputed from the final pieces and the densities
//! with a separate integrator, so protocol bugs cannot hide behind shared
//! code.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cake::{Density, Interval, Piece};
use crate::graph::{FairnessGraph, RootedTree};
use crate::protocols::Allocation;
use crate::rational::{serde_str, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    EnvyFree,
    Proportional,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::EnvyFree => "envy-free",
            Criterion::Proportional => "proportional",
        })
    }
}

/// One failed comparison. `neighbor` is `None` when `compared` is the
/// average over all neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub agent: usize,
    pub neighbor: Option<usize>,
    #[serde(with = "serde_str")]
    pub own: Rational,
    #[serde(with = "serde_str")]
    pub compared: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FairnessReport {
    pub criterion: Criterion,
    pub graph: String,
    pub satisfied: bool,
    pub violations: Vec<Violation>,
}

impl FairnessReport {
    fn new(criterion: Criterion, graph: &FairnessGraph, violations: Vec<Violation>) -> Self {
        FairnessReport {
            criterion,
            graph: graph.to_string(),
            satisfied: violations.is_empty(),
            violations,
        }
    }
}

/// `∫_S d`, by brute overlap of every interval with every density cell.
pub fn integrate(d: &Density, s: &Piece) -> Rational {
    let bps = d.breakpoints();
    let mut total = Rational::zero();
    for iv in s.intervals() {
        for (k, v) in d.values().iter().enumerate() {
            let lo = iv.lo().max(&bps[k]);
            let hi = iv.hi().min(&bps[k + 1]);
            if lo < hi {
                total += v * (hi - lo);
            }
        }
    }
    total
}

/// Value matrix: `values[i][j]` is agent `i`'s value for piece `j`.
fn value_matrix(a: &Allocation, densities: &[Density]) -> Vec<Vec<Rational>> {
    densities
        .iter()
        .map(|d| a.pieces.iter().map(|p| integrate(d, p)).collect())
        .collect()
}

/// The pieces are pairwise disjoint and cover `[0, 1)` exactly.
pub fn check_partition(a: &Allocation) -> bool {
    if a.pieces.iter().any(|p| !p.is_canonical()) {
        return false;
    }
    let mut all: Vec<&Interval> = a.pieces.iter().flat_map(|p| p.intervals()).collect();
    all.sort_by(|x, y| x.lo().cmp(y.lo()));
    let mut reach = Rational::zero();
    for iv in all {
        if *iv.lo() != reach {
            return false;
        }
        reach = iv.hi().clone();
    }
    reach == Rational::from_integer(1.into())
}

/// Nobody values a neighbor's piece above their own.
pub fn check_envy_free(a: &Allocation, g: &FairnessGraph, densities: &[Density]) -> FairnessReport {
    let values = value_matrix(a, densities);
    let mut violations = Vec::new();
    for (i, row) in values.iter().enumerate() {
        for &j in g.neighbors(i) {
            if row[i] < row[j] {
                violations.push(Violation {
                    agent: i,
                    neighbor: Some(j),
                    own: row[i].clone(),
                    compared: row[j].clone(),
                });
            }
        }
    }
    FairnessReport::new(Criterion::EnvyFree, g, violations)
}

/// Everyone values their own piece at least at the average of their
/// neighbors' pieces. Isolated vertices pass.
pub fn check_proportional(
    a: &Allocation,
    g: &FairnessGraph,
    densities: &[Density],
) -> FairnessReport {
    let values = value_matrix(a, densities);
    let mut violations = Vec::new();
    for (i, row) in values.iter().enumerate() {
        let ns = g.neighbors(i);
        if ns.is_empty() {
            continue;
        }
        let sum: Rational = ns.iter().map(|&j| &row[j]).sum();
        let avg = sum / Rational::from_integer(ns.len().into());
        if row[i] < avg {
            violations.push(Violation {
                agent: i,
                neighbor: None,
                own: row[i].clone(),
                compared: avg,
            });
        }
    }
    FairnessReport::new(Criterion::Proportional, g, violations)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutConvention {
    /// Sum of per-step charges: `n - 1` for the root's split, `2|T(i)|` per
    /// moving knife, `f(v) - 1` per slicing.
    Paper,
    /// Distinct division points actually introduced.
    True,
}

pub fn cut_count(a: &Allocation, convention: CutConvention) -> u64 {
    match convention {
        CutConvention::Paper => a.cut_log.charges().iter().map(|c| c.cuts).sum(),
        CutConvention::True => {
            let points: BTreeSet<&Rational> =
                a.cut_log.events().iter().map(|e| &e.position).collect();
            points.len() as u64
        }
    }
}

/// Received and kept slice counts for one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceCount {
    pub received: usize,
    pub kept: usize,
}

pub fn slice_counts(a: &Allocation) -> Option<Vec<SliceCount>> {
    let ledger = a.ledger.as_ref()?;
    Some(
        (0..ledger.len())
            .map(|v| SliceCount {
                received: ledger.received(v).count(),
                kept: ledger.kept(v).count(),
            })
            .collect(),
    )
}

/// Every non-root `v` received exactly `f(v)` slices, every vertex kept
/// exactly `d!`, and the kept slices make up the final piece.
pub fn check_slice_ledger(a: &Allocation, tree: &RootedTree) -> bool {
    let (Some(ledger), Some(counts)) = (a.ledger.as_ref(), slice_counts(a)) else {
        return false;
    };
    if counts.len() != tree.len() {
        return false;
    }
    let dfact = tree.depth_factorial();
    let as_big = |x: usize| BigUint::from(x);
    counts.iter().enumerate().all(|(v, c)| {
        let received_ok = if v == tree.root() {
            c.received == 0
        } else {
            tree.f_value(v).is_ok_and(|f| f == as_big(c.received))
        };
        let kept_ok = dfact.to_usize() == Some(c.kept);
        let union = Piece::union_all(ledger.kept(v).map(|r| &r.piece));
        received_ok && kept_ok && union == a.pieces[v]
    })
}
