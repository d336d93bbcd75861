//! The allocation protocols and the record they leave behind.

mod descendant;
mod tree;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cake::{measure, Density, Piece};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub use descendant::alg_descendant;
pub use tree::allocation_tree;

/// Which protocol step placed a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CutStep {
    /// The root's first equal split of the whole cake.
    InitialSplit,
    /// Moving-knife division of `child`'s bundle agreed with `parent`.
    Austin { child: usize, parent: usize },
    /// An agent slicing its collected cake into equal pieces.
    Slice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutEvent {
    pub position: Rational,
    pub step: CutStep,
    pub agent: usize,
}

/// Cuts charged to a step under the textbook accounting (`2n` per moving
/// knife, `k - 1` per split into `k` parts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Charge {
    pub step: CutStep,
    pub agent: usize,
    pub cuts: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CutLog {
    events: Vec<CutEvent>,
    charges: Vec<Charge>,
}

impl CutLog {
    /// Logs every boundary of `parts` that actually splits `whole`.
    pub(crate) fn record_split(
        &mut self,
        whole: &Piece,
        parts: &[Piece],
        step: CutStep,
        agent: usize,
    ) {
        let mut seen = BTreeSet::new();
        for p in parts {
            for iv in p.intervals() {
                for x in [iv.lo(), iv.hi()] {
                    if whole.splits_at(x) && seen.insert(x.clone()) {
                        self.events.push(CutEvent {
                            position: x.clone(),
                            step,
                            agent,
                        });
                    }
                }
            }
        }
    }

    pub(crate) fn charge(&mut self, step: CutStep, agent: usize, cuts: u64) {
        self.charges.push(Charge { step, agent, cuts });
    }

    pub fn events(&self) -> &[CutEvent] {
        &self.events
    }

    pub fn charges(&self) -> &[Charge] {
        &self.charges
    }
}

/// One slice handed to (or kept by) a vertex during the descendant protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceRecord {
    /// The vertex that cut the slice. Equal to the holder for kept slices.
    pub from: usize,
    pub piece: Piece,
}

/// Per-vertex slice history of the descendant protocol.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SliceLedger {
    records: Vec<Vec<SliceRecord>>,
}

impl SliceLedger {
    pub(crate) fn new(n: usize) -> Self {
        SliceLedger {
            records: vec![Vec::new(); n],
        }
    }

    pub fn from_records(records: Vec<Vec<SliceRecord>>) -> Self {
        SliceLedger { records }
    }

    pub(crate) fn push(&mut self, holder: usize, from: usize, piece: Piece) {
        self.records[holder].push(SliceRecord { from, piece });
    }

    pub fn records(&self, v: usize) -> &[SliceRecord] {
        &self.records[v]
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Slices `v` received from ancestors.
    pub fn received(&self, v: usize) -> impl Iterator<Item = &SliceRecord> {
        self.records[v].iter().filter(move |r| r.from != v)
    }

    /// Slices `v` cut itself and kept.
    pub fn kept(&self, v: usize) -> impl Iterator<Item = &SliceRecord> {
        self.records[v].iter().filter(move |r| r.from == v)
    }
}

/// Output of a protocol run: one piece per vertex plus its trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    pub pieces: Vec<Piece>,
    pub cut_log: CutLog,
    /// Only filled by the descendant-graph protocol.
    pub ledger: Option<SliceLedger>,
}

impl Allocation {
    /// A bare allocation with no trace, e.g. one read back from a file.
    pub fn from_pieces(pieces: Vec<Piece>) -> Self {
        Allocation {
            pieces,
            cut_log: CutLog::default(),
            ledger: None,
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// Indices of the `m` candidates `d` values most, best first. Ties go to the
/// smaller index.
pub fn pick_top<'a, I>(d: &Density, candidates: I, m: usize) -> Result<Vec<usize>>
where
    I: IntoIterator<Item = (usize, &'a Piece)>,
{
    let mut scored: Vec<(Rational, usize)> = candidates
        .into_iter()
        .map(|(i, p)| (measure(d, p), i))
        .collect();
    if scored.len() < m {
        return Err(Error::NotEnoughPieces {
            wanted: m,
            available: scored.len(),
        });
    }
    scored.sort_by(|(va, ia), (vb, ib)| vb.cmp(va).then(ia.cmp(ib)));
    Ok(scored.into_iter().take(m).map(|(_, i)| i).collect())
}
