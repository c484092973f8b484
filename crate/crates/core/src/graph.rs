//! Core graph data model: simple graphs, multigraphs, vertex sets and orders.
//!
//! Vertices are `0..n`. Adjacency is kept in sorted sets so every iteration
//! order is deterministic. Graphs are cheap to clone and are treated as
//! immutable once a builder finishes with them.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({u}, {v}) is absent")]
    AbsentEdge { u: usize, v: usize },
    #[error("multiplicity for ({u}, {v}) must be at least 1")]
    ZeroMultiplicity { u: usize, v: usize },
    #[error("sequence of length {len} is not a permutation of 0..{n}: {reason}")]
    NotAPermutation { len: usize, n: usize, reason: String },
}

/// Normalizes an unordered pair to `(min, max)`.
#[inline]
fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl SimpleGraph {
    #[must_use]
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Fails on loops or out-of-range
    /// endpoints; repeated edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Adds an edge. Adding an edge that is already present is a no-op;
    /// loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
        }
        Ok(())
    }

    /// Removes an edge if present; returns whether it was there.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u < self.n && v < self.n && self.adj[u].remove(&v) {
            self.adj[v].remove(&u);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    #[inline]
    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    #[must_use]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    #[inline]
    #[must_use]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Maximum degree; 0 for the empty graph.
    #[must_use]
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    #[must_use]
    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    /// All edges as ordered pairs `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Complement on the same vertex set.
    #[must_use]
    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("complement edge in range");
                }
            }
        }
        g
    }

    /// Replaces every edge by a path of length two. The new midpoint vertices
    /// are appended after the original ones, one per edge in lexicographic
    /// edge order, and returned as a set.
    #[must_use]
    pub fn subdivide_all_edges(&self) -> (SimpleGraph, VertexSet) {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let mut g = SimpleGraph::new(self.n + edges.len());
        let mut mids = VertexSet::new();
        for (k, &(u, v)) in edges.iter().enumerate() {
            let mid = self.n + k;
            g.add_edge(u, mid).expect("subdivision edge in range");
            g.add_edge(mid, v).expect("subdivision edge in range");
            mids.insert(mid);
        }
        (g, mids)
    }

    /// Contracts edge `(u, v)` keeping the result simple: parallel images
    /// collapse. The merged vertex takes the smaller of the two labels and
    /// vertices above the larger label shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<SimpleGraph, GraphError> {
        Ok(self.contract_edge_multi(u, v)?.underlying_simple())
    }

    /// Contracts edge `(u, v)` keeping parallel images as multiplicities.
    pub fn contract_edge_multi(&self, u: usize, v: usize) -> Result<Multigraph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::AbsentEdge { u, v });
        }
        let (keep, gone) = ordered(u, v);
        // Old label -> new label; `gone` merges into `keep`.
        let relabel = |w: usize| -> usize {
            if w == gone {
                keep
            } else if w > gone {
                w - 1
            } else {
                w
            }
        };
        let mut h = Multigraph::new(self.n - 1);
        for (a, b) in self.edges() {
            if (a, b) == (keep, gone) || (a, b) == (gone, keep) {
                continue;
            }
            let (x, y) = (relabel(a), relabel(b));
            h.add_edge_with_multiplicity(x, y, 1)
                .expect("contracted edge in range");
        }
        Ok(h)
    }
}

/// An undirected multigraph: unordered pairs with positive multiplicities.
/// No loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    mult: BTreeMap<(usize, usize), usize>,
}

impl Multigraph {
    #[must_use]
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            mult: BTreeMap::new(),
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Adds `m` parallel copies of edge `(u, v)`.
    pub fn add_edge_with_multiplicity(
        &mut self,
        u: usize,
        v: usize,
        m: usize,
    ) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if m == 0 {
            return Err(GraphError::ZeroMultiplicity { u, v });
        }
        *self.mult.entry(ordered(u, v)).or_insert(0) += m;
        Ok(())
    }

    /// Sets the multiplicity of `(u, v)` exactly; 0 removes the pair.
    pub fn set_multiplicity(&mut self, u: usize, v: usize, m: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if m == 0 {
            self.mult.remove(&ordered(u, v));
        } else {
            self.mult.insert(ordered(u, v), m);
        }
        Ok(())
    }

    #[inline]
    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.mult.values().sum()
    }

    /// Number of distinct adjacent pairs.
    #[must_use]
    pub fn pair_count(&self) -> usize {
        self.mult.len()
    }

    #[must_use]
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.mult.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    /// Degree of `v` counted with multiplicity.
    #[must_use]
    pub fn degree(&self, v: usize) -> usize {
        self.mult
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &m)| m)
            .sum()
    }

    #[must_use]
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Distinct pairs `(u, v, multiplicity)` with `u < v`, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.mult.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Forgets multiplicities.
    #[must_use]
    pub fn underlying_simple(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for &(u, v) in self.mult.keys() {
            g.add_edge(u, v).expect("pair in range");
        }
        g
    }

    /// Contracts one copy of edge `(u, v)`; remaining parallel copies of the
    /// contracted pair vanish with the merge (they would become loops).
    /// Images of other edges accumulate as multiplicities.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Multigraph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.multiplicity(u, v) == 0 {
            return Err(GraphError::AbsentEdge { u, v });
        }
        let (keep, gone) = ordered(u, v);
        let relabel = |w: usize| -> usize {
            if w == gone {
                keep
            } else if w > gone {
                w - 1
            } else {
                w
            }
        };
        let mut h = Multigraph::new(self.n - 1);
        for (a, b, m) in self.pairs() {
            if (a, b) == (keep, gone) {
                continue;
            }
            h.add_edge_with_multiplicity(relabel(a), relabel(b), m)
                .expect("contracted pair in range");
        }
        Ok(h)
    }
}

/// A set of vertex indices with sorted iteration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    #[must_use]
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    #[must_use]
    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    #[must_use]
    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    #[must_use]
    pub fn max(&self) -> Option<usize> {
        self.0.iter().next_back().copied()
    }

    /// All members strictly below `n`?
    #[must_use]
    pub fn within(&self, n: usize) -> bool {
        self.max().is_none_or(|v| v < n)
    }

    #[must_use]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, usize>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// A permutation of `0..n` with O(1) position lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl VertexOrder {
    /// Validates that `seq` is a permutation of `0..seq.len()`.
    pub fn from_seq(seq: Vec<usize>) -> Result<Self, GraphError> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n {
                return Err(GraphError::NotAPermutation {
                    len: n,
                    n,
                    reason: format!("entry {v} out of range"),
                });
            }
            if pos[v] != usize::MAX {
                return Err(GraphError::NotAPermutation {
                    len: n,
                    n,
                    reason: format!("entry {v} repeated"),
                });
            }
            pos[v] = i;
        }
        Ok(VertexOrder { seq, pos })
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        VertexOrder {
            seq: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    #[inline]
    #[must_use]
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Position of vertex `v` in the order.
    #[inline]
    #[must_use]
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Vertex at position `i`.
    #[inline]
    #[must_use]
    pub fn at(&self, i: usize) -> usize {
        self.seq[i]
    }

    #[must_use]
    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    #[inline]
    #[must_use]
    pub fn comes_before(&self, u: usize, v: usize) -> bool {
        self.pos[u] < self.pos[v]
    }
}
