use super::{pick_top, Allocation, CutLog, CutStep};
use crate::austin::austin_cut;
use crate::cake::{equal_split, Density, Piece};
use crate::error::{Error, Result};
use crate::graph::RootedTree;

/// Envy-free allocation on the tree `tree`.
///
/// The root cuts the cake into `n` parts of equal value to her. Then, at
/// every vertex, each child (in child order) takes the `|T(child)|` parts it
/// values most from those left, the vertex keeps the single remaining part,
/// and each child's bundle is re-divided by a moving knife agreed between
/// child and parent into `|T(child)|` parts that recursively feed the
/// child's subtree.
pub fn allocation_tree(tree: &RootedTree, densities: &[Density]) -> Result<Allocation> {
    let n = tree.len();
    if densities.len() != n {
        return Err(Error::DensityCount {
            expected: n,
            found: densities.len(),
        });
    }
    let root = tree.root();
    let mut run = TreeRun {
        tree,
        densities,
        log: CutLog::default(),
        pieces: vec![Piece::empty(); n],
    };
    let whole = Piece::whole();
    let parts = equal_split(&densities[root], &whole, n);
    run.log
        .record_split(&whole, &parts, CutStep::InitialSplit, root);
    run.log.charge(CutStep::InitialSplit, root, (n - 1) as u64);
    run.descend(root, parts)?;
    Ok(Allocation {
        pieces: run.pieces,
        cut_log: run.log,
        ledger: None,
    })
}

struct TreeRun<'a> {
    tree: &'a RootedTree,
    densities: &'a [Density],
    log: CutLog,
    pieces: Vec<Piece>,
}

impl TreeRun<'_> {
    fn descend(&mut self, v: usize, parts: Vec<Piece>) -> Result<()> {
        debug_assert_eq!(parts.len(), self.tree.subtree_size(v));
        let mut taken = vec![false; parts.len()];
        let mut bundles = Vec::with_capacity(self.tree.children(v).len());
        for &c in self.tree.children(v) {
            let remaining = parts.iter().enumerate().filter(|(i, _)| !taken[*i]);
            let picks = pick_top(&self.densities[c], remaining, self.tree.subtree_size(c))?;
            for &i in &picks {
                taken[i] = true;
            }
            bundles.push(Piece::union_all(picks.iter().map(|&i| &parts[i])));
        }
        let last = taken
            .iter()
            .position(|t| !t)
            .expect("one part is left for the parent");
        self.pieces[v] = parts[last].clone();

        for (&c, bundle) in self.tree.children(v).iter().zip(bundles) {
            let size = self.tree.subtree_size(c);
            let mut sub = austin_cut(&self.densities[c], &self.densities[v], size, &bundle)?;
            let step = CutStep::Austin {
                child: c,
                parent: v,
            };
            self.log.record_split(&bundle, &sub, step, c);
            self.log.charge(step, c, 2 * size as u64);
            sub.sort_by(|a, b| a.start().cmp(&b.start()));
            self.descend(c, sub)?;
        }
        Ok(())
    }
}
