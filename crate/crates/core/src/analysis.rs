//! Exact measurements: graph square, degeneracy, maximum clique, maximum
//! average degree — plus small-instance brute-force oracles for each, so the
//! fast implementations can be cross-checked independently.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{SimpleGraph, VertexOrder, VertexSet};

/// Exact rational value (reduced, positive denominator — maintained by the
/// underlying ratio type).
pub type Rational = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("operation requires a nonempty graph")]
    EmptyGraph,
    #[error("{what} supports at most {cap} vertices, got {n}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("order has length {order_len} but the graph has {n} vertices")]
    OrderLengthMismatch { order_len: usize, n: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
}

// ---------------------------------------------------------------------------
// Square
// ---------------------------------------------------------------------------

/// The square of `g`: same vertices, edges between every pair at distance 1
/// or 2.
#[must_use]
pub fn square(g: &SimpleGraph) -> SimpleGraph {
    let n = g.vertex_count();
    let mut sq = SimpleGraph::new(n);
    for u in 0..n {
        let mut reach: BTreeSet<usize> = BTreeSet::new();
        for w in g.neighbors(u) {
            reach.insert(w);
            reach.extend(g.neighbors(w));
        }
        for v in reach {
            if v > u {
                sq.add_edge(u, v).expect("square edge in range");
            }
        }
    }
    sq
}

// ---------------------------------------------------------------------------
// Degeneracy
// ---------------------------------------------------------------------------

/// A degeneracy value together with an order witnessing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyCertificate {
    pub degeneracy: usize,
    /// Deletion order: every vertex has at most `degeneracy` neighbors later
    /// in this order.
    pub order: VertexOrder,
    /// Per vertex, the number of its neighbors appearing later in `order`.
    pub back_degrees: Vec<usize>,
}

/// Computes the exact degeneracy and a witnessing order by repeatedly
/// deleting a vertex of minimum remaining degree (ties: smallest index).
/// The order lists vertices in deletion sequence, so each vertex's later
/// neighbors are exactly the neighbors it still had when deleted.
#[must_use]
pub fn degeneracy_order(g: &SimpleGraph) -> DegeneracyCertificate {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n.max(1)];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    let mut back = vec![0usize; n];
    let mut degeneracy = 0;
    let mut floor = 0usize;
    for _ in 0..n {
        while buckets[floor].is_empty() {
            floor += 1;
        }
        let v = *buckets[floor].iter().next().expect("nonempty bucket");
        buckets[floor].remove(&v);
        removed[v] = true;
        back[v] = deg[v];
        degeneracy = degeneracy.max(deg[v]);
        seq.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                buckets[deg[u]].remove(&u);
                deg[u] -= 1;
                buckets[deg[u]].insert(u);
            }
        }
        // Neighbor degrees dropped by at most one.
        floor = floor.saturating_sub(1);
    }
    DegeneracyCertificate {
        degeneracy,
        order: VertexOrder::from_seq(seq).expect("deletion sequence is a permutation"),
        back_degrees: back,
    }
}

/// True iff every vertex has at most `k` neighbors later in `order`.
pub fn is_k_degeneracy_order(
    g: &SimpleGraph,
    order: &VertexOrder,
    k: usize,
) -> Result<bool, AnalysisError> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(AnalysisError::OrderLengthMismatch {
            order_len: order.len(),
            n,
        });
    }
    for v in 0..n {
        let later = g.neighbors(v).filter(|&u| order.comes_before(v, u)).count();
        if later > k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive-minimax degeneracy oracle: minimizes, over all deletion
/// orders, the maximum degree at deletion time. Exponential; capped.
pub fn brute_force_degeneracy(g: &SimpleGraph) -> Result<usize, AnalysisError> {
    const CAP: usize = 16;
    let n = g.vertex_count();
    if n > CAP {
        return Err(AnalysisError::CapExceeded {
            what: "brute_force_degeneracy",
            n,
            cap: CAP,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let full = (1u32 << n) - 1;
    let mut f = vec![0u8; (full as usize) + 1];
    for mask in 1..=full {
        let mut best = u8::MAX;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cost = (masks[v] & mask).count_ones() as u8;
            let tail = f[(mask & !(1 << v)) as usize];
            best = best.min(cost.max(tail));
        }
        f[mask as usize] = best;
    }
    Ok(f[full as usize] as usize)
}

// ---------------------------------------------------------------------------
// Maximum clique
// ---------------------------------------------------------------------------

/// A set of pairwise-adjacent vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueWitness {
    pub members: VertexSet,
    pub size: usize,
}

impl CliqueWitness {
    fn from_vec(members: Vec<usize>) -> Self {
        let set: VertexSet = members.into_iter().collect();
        CliqueWitness {
            size: set.len(),
            members: set,
        }
    }
}

/// Result of the branch-and-bound clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOutcome {
    pub witness: CliqueWitness,
    /// True when the search completed: `witness.size` is the exact maximum
    /// and `witness` is the lexicographically least maximum clique. False
    /// when the time budget ran out first; the witness is then only a lower
    /// bound.
    pub exact: bool,
}

pub const DEFAULT_CLIQUE_BUDGET: Duration = Duration::from_secs(60);

/// True iff `set` is a clique of `g` (empty and singleton sets count).
#[must_use]
pub fn is_clique(g: &SimpleGraph, set: &VertexSet) -> bool {
    if !set.within(g.vertex_count()) {
        return false;
    }
    let members = set.to_vec();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// Fixed-width bitset over vertex indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits {
    w: Vec<u64>,
}

impl Bits {
    fn empty(n: usize) -> Self {
        Bits {
            w: vec![0; n.div_ceil(64)],
        }
    }
    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }
    #[inline]
    fn set(&mut self, i: usize) {
        self.w[i / 64] |= 1 << (i % 64);
    }
    #[inline]
    fn clear(&mut self, i: usize) {
        self.w[i / 64] &= !(1 << (i % 64));
    }
    #[inline]
    fn test(&self, i: usize) -> bool {
        self.w[i / 64] >> (i % 64) & 1 == 1
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits {
            w: self.w.iter().zip(&other.w).map(|(a, b)| a & b).collect(),
        }
    }
    fn intersects(&self, other: &Bits) -> bool {
        self.w.iter().zip(&other.w).any(|(a, b)| a & b != 0)
    }
    fn any(&self) -> bool {
        self.w.iter().any(|&x| x != 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.w.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

struct CliqueSearcher {
    adj: Vec<Bits>,
    /// Global candidate scan order: descending degree, then ascending index.
    scan: Vec<usize>,
    deadline: Instant,
    tick: u32,
    timed_out: bool,
    best: Vec<usize>,
    current: Vec<usize>,
    /// When set, the search may stop as soon as `best` reaches this size.
    target: Option<usize>,
}

impl CliqueSearcher {
    fn new(g: &SimpleGraph, deadline: Instant) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![Bits::empty(n); n];
        for (u, v) in g.edges() {
            adj[u].set(v);
            adj[v].set(u);
        }
        let mut scan: Vec<usize> = (0..n).collect();
        scan.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        CliqueSearcher {
            adj,
            scan,
            deadline,
            tick: 0,
            timed_out: false,
            best: Vec::new(),
            current: Vec::new(),
            target: None,
        }
    }

    fn halted(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if let Some(t) = self.target {
            if self.best.len() >= t {
                return true;
            }
        }
        self.tick += 1;
        if self.tick.is_multiple_of(4096) && Instant::now() >= self.deadline {
            self.timed_out = true;
            return true;
        }
        false
    }

    fn expand(&mut self, cand: &Bits) {
        if self.halted() {
            return;
        }
        // Greedy coloring of the candidates: the class index is an upper
        // bound on any clique using that vertex and the earlier classes.
        let mut classes: Vec<Bits> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for idx in 0..self.scan.len() {
            let v = self.scan[idx];
            if !cand.test(v) {
                continue;
            }
            let slot = classes
                .iter()
                .position(|cl| !cl.intersects(&self.adj[v]))
                .unwrap_or(classes.len());
            if slot == classes.len() {
                classes.push(Bits::empty(self.adj.len()));
                members.push(Vec::new());
            }
            classes[slot].set(v);
            members[slot].push(v);
        }
        let mut remaining = cand.clone();
        let needed = |search: &Self| {
            search
                .target
                .unwrap_or(usize::MAX)
                .min(search.best.len() + 1)
        };
        for bound in (1..=members.len()).rev() {
            for mi in (0..members[bound - 1].len()).rev() {
                let v = members[bound - 1][mi];
                if self.current.len() + bound < needed(self) {
                    return;
                }
                self.current.push(v);
                let next = remaining.and(&self.adj[v]);
                if next.any() {
                    self.expand(&next);
                } else if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
                self.current.pop();
                if self.halted() {
                    return;
                }
                remaining.clear(v);
            }
        }
    }

    /// Is there a clique of size ≥ `need` inside `cand`?
    fn exists(&mut self, cand: &Bits, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        self.best.clear();
        self.current.clear();
        self.target = Some(need);
        self.expand(cand);
        self.target = None;
        self.best.len() >= need
    }
}

/// Exact maximum clique by branch and bound with a greedy-coloring upper
/// bound. On success the witness is the lexicographically least maximum
/// clique (ascending vertex order); if the wall-clock budget runs out the
/// outcome is marked inexact and carries the best clique found so far.
#[must_use]
pub fn max_clique(g: &SimpleGraph, budget: Duration) -> CliqueOutcome {
    let n = g.vertex_count();
    let deadline = Instant::now() + budget;
    if n == 0 {
        return CliqueOutcome {
            witness: CliqueWitness::from_vec(vec![]),
            exact: true,
        };
    }
    let mut search = CliqueSearcher::new(g, deadline);
    let all = Bits::full(n);
    search.expand(&all);
    if search.timed_out {
        return CliqueOutcome {
            witness: CliqueWitness::from_vec(search.best),
            exact: false,
        };
    }
    let omega = search.best.len();
    let found = search.best.clone();

    // Canonicalize: rebuild the lexicographically least maximum clique by
    // greedy prefix extension.
    let mut prefix: Vec<usize> = Vec::with_capacity(omega);
    let mut cand = all;
    'outer: while prefix.len() < omega {
        let need = omega - prefix.len();
        for v in cand.clone().iter() {
            let rest = cand.and(&search.adj[v]);
            if search.exists(&rest, need - 1) {
                prefix.push(v);
                cand = rest;
                continue 'outer;
            }
            if search.timed_out {
                break 'outer;
            }
        }
        break; // unreachable for a correct solver; guards against looping
    }
    if prefix.len() == omega {
        CliqueOutcome {
            witness: CliqueWitness::from_vec(prefix),
            exact: true,
        }
    } else {
        // Budget died during canonicalization: the size is still exact.
        CliqueOutcome {
            witness: CliqueWitness::from_vec(found),
            exact: true,
        }
    }
}

/// Exhaustive clique search; enumerates all cliques in lexicographic order
/// and keeps the first one of each record size, which makes the winner the
/// lexicographically least maximum clique. Capped.
pub fn brute_force_max_clique(g: &SimpleGraph) -> Result<CliqueWitness, AnalysisError> {
    const CAP: usize = 25;
    let n = g.vertex_count();
    if n > CAP {
        return Err(AnalysisError::CapExceeded {
            what: "brute_force_max_clique",
            n,
            cap: CAP,
        });
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn walk(
        masks: &[u32],
        cand: u32,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            current.push(v);
            walk(masks, rest & masks[v], current, best);
            current.pop();
        }
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    walk(&masks, full, &mut current, &mut best);
    Ok(CliqueWitness::from_vec(best))
}

// ---------------------------------------------------------------------------
// Maximum average degree
// ---------------------------------------------------------------------------

/// Dinic max-flow on integer capacities.
struct Flow {
    to: Vec<usize>,
    cap: Vec<i64>,
    head: Vec<Vec<usize>>,
}

impl Flow {
    fn new(nodes: usize) -> Self {
        Flow {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn levels(&self, s: usize) -> Vec<i32> {
        let mut level = vec![-1; self.head.len()];
        let mut queue = std::collections::VecDeque::new();
        level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(
        &mut self,
        u: usize,
        t: usize,
        limit: i64,
        level: &[i32],
        it: &mut [usize],
    ) -> i64 {
        if u == t {
            return limit;
        }
        while it[u] < self.head[u].len() {
            let e = self.head[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let sent = self.push(v, t, limit.min(self.cap[e]), level, it);
                if sent > 0 {
                    self.cap[e] -= sent;
                    self.cap[e ^ 1] += sent;
                    return sent;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return total;
            }
            let mut it = vec![0usize; self.head.len()];
            loop {
                let sent = self.push(s, t, i64::MAX, &level, &mut it);
                if sent == 0 {
                    break;
                }
                total += sent;
            }
        }
    }

    /// Nodes reachable from `s` in the residual graph (the source side of a
    /// minimum cut).
    fn source_side(&self, s: usize) -> Vec<bool> {
        let level = self.levels(s);
        level.iter().map(|&l| l >= 0).collect()
    }
}

/// Exact maximum average degree max over nonempty U of 2|E(G[U])| / |U|,
/// with a witnessing vertex set. Density is maximized by iterating: test the
/// current best density p/q with a min-cut (all capacities integer, scaled by
/// q), and while some subset beats it, jump to that subset's exact density.
pub fn mad(g: &SimpleGraph) -> Result<(Rational, VertexSet), AnalysisError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(AnalysisError::EmptyGraph);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    if m == 0 {
        return Ok((Rational::from_integer(0), [0].into_iter().collect()));
    }
    let edges_within = |set: &[bool]| -> i64 {
        edges.iter().filter(|&&(u, v)| set[u] && set[v]).count() as i64
    };

    let mut density = Rational::new(m as i64, n as i64);
    let mut witness: Vec<bool> = vec![true; n];
    for _round in 0..=(n + 1) {
        let (p, q) = (*density.numer(), *density.denom());
        // Nodes: 0 = source, 1 = sink, 2.. edge nodes, 2+m.. vertex nodes.
        let source = 0;
        let sink = 1;
        let edge_node = |e: usize| 2 + e;
        let vertex_node = |v: usize| 2 + m + v;
        let inf = q * m as i64 + p * n as i64 + 1;
        let mut flow = Flow::new(2 + m + n);
        for (e, &(u, v)) in edges.iter().enumerate() {
            flow.add(source, edge_node(e), q);
            flow.add(edge_node(e), vertex_node(u), inf);
            flow.add(edge_node(e), vertex_node(v), inf);
        }
        for v in 0..n {
            flow.add(vertex_node(v), sink, p);
        }
        let cut = flow.max_flow(source, sink);
        // max over U of q|E(U)| − p|U|, attained by the source side.
        let surplus = q * m as i64 - cut;
        if surplus <= 0 {
            break;
        }
        let side = flow.source_side(source);
        let u_set: Vec<bool> = (0..n).map(|v| side[vertex_node(v)]).collect();
        let size = u_set.iter().filter(|&&b| b).count() as i64;
        assert!(size > 0, "positive surplus needs a nonempty subset");
        let improved = Rational::new(edges_within(&u_set), size);
        assert!(improved > density, "density iteration must strictly improve");
        density = improved;
        witness = u_set;
    }
    let members: VertexSet = (0..n).filter(|&v| witness[v]).collect();
    let check = Rational::new(edges_within(&witness), members.len() as i64);
    assert_eq!(check, density, "witness must achieve the reported density");
    Ok((density * 2, members))
}

/// Exhaustive maximum-average-degree oracle over all nonempty subsets. Capped.
pub fn brute_force_mad(g: &SimpleGraph) -> Result<Rational, AnalysisError> {
    const CAP: usize = 14;
    let n = g.vertex_count();
    if n > CAP {
        return Err(AnalysisError::CapExceeded {
            what: "brute_force_mad",
            n,
            cap: CAP,
        });
    }
    if n == 0 {
        return Err(AnalysisError::EmptyGraph);
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let mut best = Rational::from_integer(0);
    for mask in 1u32..(1 << n) {
        let edges2: i64 = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| i64::from((masks[v] & mask).count_ones()))
            .sum();
        let value = Rational::new(edges2, i64::from(mask.count_ones()));
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Square degeneracy report
// ---------------------------------------------------------------------------

/// Measured degeneracy of the square next to the claimed upper bounds it is
/// expected to satisfy. Bounds are reported and flagged, not asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDegeneracyReport {
    pub d: usize,
    pub k: usize,
    pub square_degeneracy: usize,
    /// k(D−1) + (D−k)(k−1), applicable to every k-degenerate graph with
    /// maximum degree ≤ D.
    pub general_bound: usize,
    pub general_ok: bool,
    /// 3D−4, the k = 2 specialization.
    pub two_degenerate_bound: Option<usize>,
    pub two_degenerate_ok: Option<bool>,
    pub mad_value: Rational,
    /// 3D, applicable when mad < 4.
    pub mad_bound: Option<usize>,
    pub mad_ok: Option<bool>,
    pub any_violation: bool,
}

/// Measures degeneracy(square(g)) and compares it against the bounds implied
/// by `g` being `k`-degenerate with maximum degree ≤ `d` (and, when mad < 4,
/// the 3D bound). Preconditions are checked; bound violations are flagged in
/// the report rather than treated as errors.
pub fn square_degeneracy_report(
    g: &SimpleGraph,
    d: usize,
    k: usize,
) -> Result<SquareDegeneracyReport, AnalysisError> {
    if g.vertex_count() == 0 {
        return Err(AnalysisError::EmptyGraph);
    }
    if g.max_degree() > d {
        return Err(AnalysisError::HypothesisFailed(format!(
            "maximum degree {} exceeds D = {d}",
            g.max_degree()
        )));
    }
    if k == 0 || k > d {
        return Err(AnalysisError::HypothesisFailed(format!(
            "degeneracy parameter k = {k} must satisfy 1 <= k <= D = {d}"
        )));
    }
    let cert = degeneracy_order(g);
    if cert.degeneracy > k {
        return Err(AnalysisError::HypothesisFailed(format!(
            "graph has degeneracy {} and is not {k}-degenerate",
            cert.degeneracy
        )));
    }
    let sq_deg = degeneracy_order(&square(g)).degeneracy;
    let general_bound = k * (d - 1) + (d - k) * (k - 1);
    let general_ok = sq_deg <= general_bound;
    let (two_degenerate_bound, two_degenerate_ok) = if k == 2 {
        let b = 3 * d - 4;
        (Some(b), Some(sq_deg <= b))
    } else {
        (None, None)
    };
    let (mad_value, _) = mad(g)?;
    let (mad_bound, mad_ok) = if mad_value < Rational::from_integer(4) {
        let b = 3 * d;
        (Some(b), Some(sq_deg <= b))
    } else {
        (None, None)
    };
    let any_violation =
        !general_ok || two_degenerate_ok == Some(false) || mad_ok == Some(false);
    Ok(SquareDegeneracyReport {
        d,
        k,
        square_degeneracy: sq_deg,
        general_bound,
        general_ok,
        two_degenerate_bound,
        two_degenerate_ok,
        mad_value,
        mad_bound,
        mad_ok,
        any_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn cycle(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n).unwrap();
        }
        g
    }

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn path(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for v in 0..n.saturating_sub(1) {
            g.add_edge(v, v + 1).unwrap();
        }
        g
    }

    fn petersen() -> SimpleGraph {
        let mut g = SimpleGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, 5 + i).unwrap();
        }
        g
    }

    #[test]
    fn square_of_five_cycle_is_complete() {
        assert_eq!(square(&cycle(5)), complete(5));
    }

    #[test]
    fn square_of_three_path_is_triangle() {
        assert_eq!(square(&path(3)), complete(3));
    }

    #[test]
    fn square_of_petersen_is_complete() {
        let sq = square(&petersen());
        assert!((0..10).all(|v| sq.degree(v) == 9));
    }

    #[test]
    fn square_contains_original_edges() {
        let g = petersen();
        let sq = square(&g);
        for (u, v) in g.edges() {
            assert!(sq.has_edge(u, v));
        }
    }

    #[test]
    fn degeneracy_frozen_values() {
        assert_eq!(degeneracy_order(&path(7)).degeneracy, 1);
        assert_eq!(degeneracy_order(&cycle(9)).degeneracy, 2);
        assert_eq!(degeneracy_order(&complete(5)).degeneracy, 4);
        assert_eq!(degeneracy_order(&petersen()).degeneracy, 3);
        assert_eq!(degeneracy_order(&SimpleGraph::new(4)).degeneracy, 0);
    }

    #[test]
    fn degeneracy_order_is_consistent() {
        let g = petersen();
        let cert = degeneracy_order(&g);
        assert!(is_k_degeneracy_order(&g, &cert.order, cert.degeneracy).unwrap());
        assert!(!is_k_degeneracy_order(&g, &cert.order, cert.degeneracy - 1).unwrap());
        // Recompute back degrees from scratch.
        for v in 0..10 {
            let later = g
                .neighbors(v)
                .filter(|&u| cert.order.comes_before(v, u))
                .count();
            assert_eq!(later, cert.back_degrees[v]);
        }
        assert_eq!(
            cert.degeneracy,
            *cert.back_degrees.iter().max().unwrap()
        );
    }

    #[test]
    fn star_with_center_first_is_not_a_one_degeneracy_order() {
        let mut g = SimpleGraph::new(4);
        for leaf in 1..4 {
            g.add_edge(0, leaf).unwrap();
        }
        let center_first = VertexOrder::from_seq(vec![0, 1, 2, 3]).unwrap();
        assert!(!is_k_degeneracy_order(&g, &center_first, 1).unwrap());
        let center_last = VertexOrder::from_seq(vec![1, 2, 3, 0]).unwrap();
        assert!(is_k_degeneracy_order(&g, &center_last, 1).unwrap());
        // Any order of a 4-cycle works for k = 2.
        let c4 = cycle(4);
        assert!(is_k_degeneracy_order(&c4, &VertexOrder::identity(4), 2).unwrap());
        assert!(
            is_k_degeneracy_order(&c4, &VertexOrder::from_seq(vec![3, 1, 0, 2]).unwrap(), 2)
                .unwrap()
        );
    }

    #[test]
    fn order_length_mismatch_is_an_error() {
        let g = cycle(4);
        let short = VertexOrder::from_seq(vec![0, 1, 2]).unwrap();
        assert!(matches!(
            is_k_degeneracy_order(&g, &short, 2),
            Err(AnalysisError::OrderLengthMismatch { order_len: 3, n: 4 })
        ));
    }

    #[test]
    fn brute_degeneracy_matches_fast_on_small_graphs() {
        for g in [path(6), cycle(8), complete(6), petersen()] {
            assert_eq!(
                brute_force_degeneracy(&g).unwrap(),
                degeneracy_order(&g).degeneracy
            );
        }
    }

    #[test]
    fn clique_frozen_values() {
        let b = Duration::from_secs(10);
        assert_eq!(max_clique(&complete(5), b).witness.size, 5);
        assert_eq!(max_clique(&cycle(5), b).witness.size, 2);
        let mut k4_minus = complete(4);
        k4_minus.remove_edge(1, 2);
        assert_eq!(max_clique(&k4_minus, b).witness.size, 3);
        assert_eq!(max_clique(&petersen(), b).witness.size, 2);
        assert_eq!(max_clique(&SimpleGraph::new(3), b).witness.size, 1);
        assert_eq!(max_clique(&SimpleGraph::new(0), b).witness.size, 0);
    }

    #[test]
    fn clique_witness_is_lexicographically_least() {
        // Two disjoint triangles; {0, 4, 5} beats {1, 2, 3} lexicographically.
        let g = SimpleGraph::from_edges(
            6,
            &[(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)],
        )
        .unwrap();
        let out = max_clique(&g, Duration::from_secs(5));
        assert!(out.exact);
        assert_eq!(out.witness.members.to_vec(), vec![0, 4, 5]);
        let brute = brute_force_max_clique(&g).unwrap();
        assert_eq!(brute.members.to_vec(), vec![0, 4, 5]);
    }

    #[test]
    fn brute_clique_frozen_values() {
        assert_eq!(brute_force_max_clique(&cycle(5)).unwrap().size, 2);
        let mut k4_minus = complete(4);
        k4_minus.remove_edge(0, 3);
        let w = brute_force_max_clique(&k4_minus).unwrap();
        assert_eq!(w.size, 3);
        assert_eq!(w.members.to_vec(), vec![0, 1, 2]);
        assert!(brute_force_max_clique(&SimpleGraph::new(26)).is_err());
    }

    #[test]
    fn clique_members_are_pairwise_adjacent() {
        let g = petersen();
        let out = max_clique(&g, Duration::from_secs(5));
        assert!(is_clique(&g, &out.witness.members));
    }

    #[test]
    fn mad_frozen_values() {
        let (v, w) = mad(&cycle(5)).unwrap();
        assert_eq!(v, Rational::from_integer(2));
        assert_eq!(w.len(), 5);
        let (v, _) = mad(&complete(4)).unwrap();
        assert_eq!(v, Rational::from_integer(3));
        // K4 plus a pendant vertex: the clique is the densest part.
        let mut g = complete(4);
        let mut h = SimpleGraph::new(5);
        for (a, b) in g.edges() {
            h.add_edge(a, b).unwrap();
        }
        h.add_edge(3, 4).unwrap();
        g = h;
        let (v, w) = mad(&g).unwrap();
        assert_eq!(v, Rational::from_integer(3));
        assert_eq!(w.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn mad_handles_edge_cases() {
        assert_eq!(mad(&SimpleGraph::new(0)).unwrap_err(), AnalysisError::EmptyGraph);
        let (v, w) = mad(&SimpleGraph::new(3)).unwrap();
        assert_eq!(v, Rational::from_integer(0));
        assert_eq!(w.len(), 1);
        let (v, _) = mad(&complete(2)).unwrap();
        assert_eq!(v, Rational::from_integer(1));
    }

    #[test]
    fn mad_matches_brute_force_on_paw_with_tail() {
        // Paw (triangle + pendant) + longer tail: mad = 2 with fractional
        // candidates competing.
        let g = SimpleGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)],
        )
        .unwrap();
        let (v, _) = mad(&g).unwrap();
        assert_eq!(v, brute_force_mad(&g).unwrap());
    }

    #[test]
    fn mad_is_at_least_average_degree() {
        let g = petersen();
        let (v, _) = mad(&g).unwrap();
        assert_eq!(v, Rational::from_integer(3)); // 3-regular, connected
        assert!(brute_force_mad(&g).is_ok());
        assert_eq!(brute_force_mad(&g).unwrap(), v);
    }

    #[test]
    fn square_degeneracy_report_on_petersen() {
        // Petersen: 3-degenerate, Δ = 3, square = K10 with degeneracy 9.
        let r = square_degeneracy_report(&petersen(), 3, 3).unwrap();
        assert_eq!(r.square_degeneracy, 9);
        assert_eq!(r.general_bound, 3 * 2); // k(D−1) + 0
        assert!(!r.general_ok);
        assert!(r.any_violation);
        assert_eq!(r.two_degenerate_bound, None);
        assert_eq!(r.mad_value, Rational::from_integer(3));
        assert_eq!(r.mad_bound, Some(9));
        assert_eq!(r.mad_ok, Some(true)); // 9 ≤ 9
    }

    #[test]
    fn square_degeneracy_report_on_long_path() {
        // P8: 1-degenerate, Δ = 2; square degeneracy 2; k = 2 bounds apply
        // when we declare k = 2.
        let r = square_degeneracy_report(&path(8), 2, 2).unwrap();
        assert_eq!(r.square_degeneracy, 2);
        assert_eq!(r.two_degenerate_bound, Some(2));
        assert_eq!(r.two_degenerate_ok, Some(true));
        assert!(!r.any_violation);
    }

    #[test]
    fn square_degeneracy_report_checks_hypotheses() {
        assert!(matches!(
            square_degeneracy_report(&complete(5), 3, 2),
            Err(AnalysisError::HypothesisFailed(_))
        ));
        assert!(matches!(
            square_degeneracy_report(&complete(5), 4, 2),
            Err(AnalysisError::HypothesisFailed(_))
        ));
        assert!(square_degeneracy_report(&complete(5), 4, 4).is_ok());
    }
}
