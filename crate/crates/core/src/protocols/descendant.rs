use num_traits::ToPrimitive;

use super::{pick_top, Allocation, CutLog, CutStep, SliceLedger};
use crate::cake::{equal_split, Density, Piece};
use crate::error::{Error, Result};
use crate::graph::RootedTree;

/// Proportional allocation on the descendant graph of `tree`.
///
/// Vertices are processed top-down (by depth, then id). Each one gathers
/// everything it holds, slices it into `f(u)` parts of equal value to
/// itself, and lets every strict descendant, shallowest first, take the
/// `f(v) / d(v)` parts it values most. The `d!` parts left over are kept.
pub fn alg_descendant(tree: &RootedTree, densities: &[Density]) -> Result<Allocation> {
    let n = tree.len();
    if densities.len() != n {
        return Err(Error::DensityCount {
            expected: n,
            found: densities.len(),
        });
    }
    let f = tree
        .f_values()?
        .into_iter()
        .map(|x| {
            x.to_usize()
                .ok_or_else(|| Error::TooManySlices(x.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut log = CutLog::default();
    let mut ledger = SliceLedger::new(n);
    let mut holding: Vec<Vec<Piece>> = vec![Vec::new(); n];
    holding[tree.root()].push(Piece::whole());
    let mut pieces = vec![Piece::empty(); n];

    for u in tree.depth_order() {
        let collected = Piece::union_all(&holding[u]);
        holding[u].clear();
        let slices = equal_split(&densities[u], &collected, f[u]);
        log.record_split(&collected, &slices, CutStep::Slice, u);
        log.charge(CutStep::Slice, u, (f[u] - 1) as u64);

        let mut taken = vec![false; slices.len()];
        for v in tree.strict_descendants(u) {
            if f[v] % tree.depth(v) != 0 {
                return Err(Error::NonIntegral { vertex: v });
            }
            let share = f[v] / tree.depth(v);
            let remaining = slices.iter().enumerate().filter(|(i, _)| !taken[*i]);
            for i in pick_top(&densities[v], remaining, share)? {
                taken[i] = true;
                ledger.push(v, u, slices[i].clone());
                holding[v].push(slices[i].clone());
            }
        }
        let kept: Vec<&Piece> = slices
            .iter()
            .zip(&taken)
            .filter(|(_, t)| !**t)
            .map(|(p, _)| p)
            .collect();
        for p in &kept {
            ledger.push(u, u, (*p).clone());
        }
        pieces[u] = Piece::union_all(kept);
    }

    Ok(Allocation {
        pieces,
        cut_log: log,
        ledger: Some(ledger),
    })
}
