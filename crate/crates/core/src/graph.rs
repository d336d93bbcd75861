//! Rooted trees, fairness graphs and the slice-count function `f`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A rooted tree on vertices `0..n`.
///
/// Children keep the order in which they appear in the parent list; every
/// deterministic tie-break in the protocols follows it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    subtree_size: Vec<usize>,
    max_depth: usize,
}

impl RootedTree {
    /// `parents[v]` is the parent of `v`, `None` for the single root.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::MalformedTree("no vertices".into()));
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::MalformedTree(format!(
                        "more than one root ({} and {v})",
                        root.unwrap()
                    )))
                }
                None => root = Some(v),
                Some(p) if p >= n => {
                    return Err(Error::MalformedTree(format!(
                        "parent {p} of {v} out of range"
                    )))
                }
                Some(p) if p == v => {
                    return Err(Error::MalformedTree(format!(
                        "vertex {v} is its own parent"
                    )))
                }
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::MalformedTree("no root".into()))?;

        let mut depth = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                queue.push_back(c);
            }
        }
        if order.len() != n {
            return Err(Error::MalformedTree(format!(
                "only {} of {n} vertices reachable from root {root} (cycle)",
                order.len()
            )));
        }

        let mut subtree_size = vec![1; n];
        for &v in order.iter().rev() {
            if let Some(p) = parents[v] {
                subtree_size[p] += subtree_size[v];
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        Ok(RootedTree {
            root,
            parent: parents.to_vec(),
            children,
            depth,
            subtree_size,
            max_depth,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Edges on the path from `v` to the root.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    /// `|T(v)|`, counting `v` itself.
    pub fn subtree_size(&self, v: usize) -> usize {
        self.subtree_size[v]
    }

    pub fn subtree_sizes(&self) -> &[usize] {
        &self.subtree_size
    }

    /// Depth of the deepest vertex.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// True if `a` is a strict ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = self.parent[b];
        while let Some(p) = cur {
            if p == a {
                return true;
            }
            cur = self.parent[p];
        }
        false
    }

    /// Vertices of `T(v)` other than `v`, by increasing depth then id.
    pub fn strict_descendants(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.subtree_size[v] - 1);
        let mut stack = self.children[v].clone();
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend_from_slice(&self.children[u]);
        }
        out.sort_by_key(|&u| (self.depth[u], u));
        out
    }

    /// All vertices by increasing depth then id.
    pub fn depth_order(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len()).collect();
        out.sort_by_key(|&u| (self.depth[u], u));
        out
    }

    /// The tree edges as an undirected graph.
    pub fn as_graph(&self) -> FairnessGraph {
        let edges = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)));
        FairnessGraph::from_edges(self.len(), edges).expect("tree edges are simple")
    }

    /// `d!` for the tree depth `d`.
    pub fn depth_factorial(&self) -> BigUint {
        factorial(self.max_depth)
    }

    /// `f(v) = (d(v) + |T(v)|) / (d(v) + 1) · d!`.
    pub fn f_value(&self, v: usize) -> Result<BigUint> {
        let num = BigUint::from(self.depth[v] + self.subtree_size[v]) * self.depth_factorial();
        let (q, r) = num.div_rem(&BigUint::from(self.depth[v] + 1));
        if !r.is_zero() {
            return Err(Error::NonIntegral { vertex: v });
        }
        Ok(q)
    }

    pub fn f_values(&self) -> Result<Vec<BigUint>> {
        (0..self.len()).map(|v| self.f_value(v)).collect()
    }
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Undirected simple graph given by neighbor sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessGraph {
    neighbors: Vec<BTreeSet<usize>>,
}

impl FairnessGraph {
    pub fn empty(n: usize) -> Self {
        FairnessGraph {
            neighbors: vec![BTreeSet::new(); n],
        }
    }

    /// Duplicate edges collapse; self-loops and out-of-range ids are errors.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = FairnessGraph::empty(n);
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            g.neighbors[a].insert(b);
            g.neighbors[b].insert(a);
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].contains(&b)
    }

    /// Each edge once, as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Same vertex set, edges a subset of `other`'s.
    pub fn is_subgraph_of(&self, other: &FairnessGraph) -> bool {
        self.len() == other.len()
            && self
                .neighbors
                .iter()
                .zip(&other.neighbors)
                .all(|(a, b)| a.is_subset(b))
    }

    /// Keeps only the edges for which `keep` returns true.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> FairnessGraph {
        let kept: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| keep(a, b))
            .collect();
        FairnessGraph::from_edges(self.len(), kept).expect("subset of a simple graph")
    }
}

impl fmt::Display for FairnessGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, m={})", self.len(), self.edge_count())
    }
}

/// Joins every ancestor-descendant pair of `tree`.
pub fn descendant_closure(tree: &RootedTree) -> FairnessGraph {
    let mut g = FairnessGraph::empty(tree.len());
    for v in 0..tree.len() {
        let mut cur = tree.parent(v);
        while let Some(a) = cur {
            g.neighbors[a].insert(v);
            g.neighbors[v].insert(a);
            cur = tree.parent(a);
        }
    }
    g
}
