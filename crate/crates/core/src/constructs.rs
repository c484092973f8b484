//! Generators for the extremal families whose squares carry large cliques,
//! together with the combinatorial subroutines they need: circulants, Dirac
//! Hamiltonian cycles, edge-disjoint Hamiltonian decompositions, equitable
//! partitions, and a random k-degenerate sampler for empirical searches.
//!
//! Every generator is deterministic in its inputs; randomized subroutines own
//! a private seeded RNG.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::graph::{Multigraph, SimpleGraph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("minimum degree {min_degree} is below half the vertex count {n}")]
    DiracViolated { min_degree: usize, n: usize },
    #[error(
        "round {round}: minimum degree {min_degree} fell below half the vertex count {n}"
    )]
    DiracRoundFailed {
        round: usize,
        min_degree: usize,
        n: usize,
    },
    #[error("{parts} parts cannot satisfy the partition hypothesis (need at least {need})")]
    PartitionHypothesis { parts: usize, need: usize },
    #[error("equitable partition search failed after {attempts} attempts (internal error)")]
    PartitionInternal { attempts: usize },
    #[error("thinning edge ({u}, {v}) would drop its multiplicity below zero")]
    ThinningNegative { u: usize, v: usize },
    #[error("offset {offset} invalid for a circulant on {n} vertices")]
    InvalidOffset { offset: usize, n: usize },
    #[error("cycle of odd length {0} has no perfect matching of alternate edges")]
    OddCycle(usize),
}

/// A generated graph with its named special vertex sets and the parameters
/// that produced it.
#[derive(Debug, Clone)]
pub struct LabeledConstruction {
    pub graph: SimpleGraph,
    pub sets: BTreeMap<String, VertexSet>,
    pub params: BTreeMap<String, i64>,
    /// Partition rounds (hub-family construction only).
    pub rounds: Vec<PartitionRound>,
    /// Final conflict graph over S (hub-family construction only).
    pub conflict: Option<SimpleGraph>,
}

impl LabeledConstruction {
    fn new(graph: SimpleGraph) -> Self {
        LabeledConstruction {
            graph,
            sets: BTreeMap::new(),
            params: BTreeMap::new(),
            rounds: Vec::new(),
            conflict: None,
        }
    }

    #[must_use]
    pub fn set(&self, name: &str) -> &VertexSet {
        self.sets
            .get(name)
            .unwrap_or_else(|| panic!("construction has no set named {name:?}"))
    }
}

/// One round of partitioning a ground set into equal independent parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRound {
    pub round_index: usize,
    pub part_size: usize,
    pub parts: Vec<VertexSet>,
}

// ---------------------------------------------------------------------------
// Subroutines
// ---------------------------------------------------------------------------

/// Circulant graph: vertex `i` is adjacent to `i ± o (mod n)` for each
/// offset `o`. Offsets must be distinct and lie in `1..=n/2`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<SimpleGraph, ConstructError> {
    if offsets.is_empty() {
        return Err(ConstructError::BadParameter(
            "circulant needs at least one offset".into(),
        ));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &o in offsets {
        if o == 0 || o > n / 2 || !seen.insert(o) {
            return Err(ConstructError::InvalidOffset { offset: o, n });
        }
    }
    let mut g = SimpleGraph::new(n);
    for i in 0..n {
        for &o in offsets {
            g.add_edge(i, (i + o) % n).expect("circulant edge in range");
        }
    }
    Ok(g)
}

fn min_degree(g: &SimpleGraph) -> usize {
    (0..g.vertex_count()).map(|v| g.degree(v)).min().unwrap_or(0)
}

fn validate_cycle(g: &SimpleGraph, cycle: &[usize]) {
    let n = g.vertex_count();
    assert_eq!(cycle.len(), n, "cycle must visit every vertex");
    let mut seen = vec![false; n];
    for &v in cycle {
        assert!(!seen[v], "cycle repeats vertex {v}");
        seen[v] = true;
    }
    for i in 0..n {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        assert!(g.has_edge(a, b), "cycle uses missing edge ({a}, {b})");
    }
}

/// Rotates the cycle so its minimum vertex comes first and the smaller of
/// that vertex's two cycle-neighbors comes second.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let min_pos = (0..n)
        .min_by_key(|&i| cycle[i])
        .expect("cycle is nonempty");
    let mut rot: Vec<usize> = (0..n).map(|i| cycle[(min_pos + i) % n]).collect();
    if rot[n - 1] < rot[1] {
        rot[1..].reverse();
    }
    rot
}

/// Finds a Hamiltonian cycle in a graph satisfying the minimum-degree
/// hypothesis 2·δ(g) ≥ |V| (|V| ≥ 3), by longest-path rotation–extension.
/// The output starts at its minimum vertex and runs toward the smaller
/// neighbor, so the result is canonical.
pub fn dirac_hamiltonian_cycle(g: &SimpleGraph) -> Result<Vec<usize>, ConstructError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(ConstructError::BadParameter(format!(
            "Hamiltonian cycle needs at least 3 vertices, got {n}"
        )));
    }
    let dmin = min_degree(g);
    if 2 * dmin < n {
        return Err(ConstructError::DiracViolated {
            min_degree: dmin,
            n,
        });
    }

    let mut in_path = vec![false; n];
    let mut path = vec![0usize];
    in_path[0] = true;
    loop {
        // Greedy extension at the tail, then the head; each marks vertices
        // visited, so one pass per end suffices.
        loop {
            let tail = *path.last().expect("path nonempty");
            match g.neighbors(tail).find(|&u| !in_path[u]) {
                Some(u) => {
                    path.push(u);
                    in_path[u] = true;
                }
                None => break,
            }
        }
        loop {
            let head = path[0];
            match g.neighbors(head).find(|&u| !in_path[u]) {
                Some(u) => {
                    path.insert(0, u);
                    in_path[u] = true;
                }
                None => break,
            }
        }
        let q = path.len();
        // Both ends are now saturated: every neighbor of either endpoint is
        // on the path, so a crossing pair closes the path into a cycle.
        let cycle: Vec<usize> = if g.has_edge(path[0], path[q - 1]) {
            path.clone()
        } else {
            let i = (1..q - 1)
                .find(|&i| g.has_edge(path[i], path[q - 1]) && g.has_edge(path[i + 1], path[0]))
                .expect("degree hypothesis guarantees a crossing pair");
            let mut c = path[..=i].to_vec();
            c.extend(path[i + 1..].iter().rev().copied());
            c
        };
        if q == n {
            let canonical = canonical_cycle(&cycle);
            validate_cycle(g, &canonical);
            return Ok(canonical);
        }
        // The cycle misses some vertex; the degree hypothesis makes the
        // graph connected, so some cycle vertex sees an unvisited one.
        // Reopen the cycle there and grow again.
        let (j, u) = cycle
            .iter()
            .enumerate()
            .find_map(|(j, &v)| {
                g.neighbors(v).find(|&u| !in_path[u]).map(|u| (j, u))
            })
            .expect("degree hypothesis guarantees connectivity");
        let mut reopened = Vec::with_capacity(q + 1);
        reopened.push(u);
        in_path[u] = true;
        reopened.extend(cycle[j..].iter().copied());
        reopened.extend(cycle[..j].iter().copied());
        path = reopened;
    }
}

/// If the whole graph is one spanning cycle, returns it (canonicalized).
fn as_single_cycle(g: &SimpleGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n < 3 || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let mut cycle = vec![0usize];
    let mut prev = 0;
    let mut here = g.neighbors(0).next().expect("degree 2");
    while here != 0 {
        cycle.push(here);
        let next = g
            .neighbors(here)
            .find(|&u| u != prev)
            .expect("degree 2 gives a way forward");
        prev = here;
        here = next;
    }
    if cycle.len() == n {
        Some(canonical_cycle(&cycle))
    } else {
        None // 2-regular but disconnected
    }
}

/// Finds `count` pairwise edge-disjoint Hamiltonian cycles, re-checking the
/// minimum-degree hypothesis before each round on the graph with the
/// previous cycles' edges removed. The final round may instead consume a
/// remaining single spanning cycle outright (completing a decomposition,
/// where the degree hypothesis no longer holds but no search is needed).
/// Rounds are numbered from 1 in errors.
pub fn edge_disjoint_hamiltonian_cycles(
    g: &SimpleGraph,
    count: usize,
) -> Result<Vec<Vec<usize>>, ConstructError> {
    let mut work = g.clone();
    let mut cycles = Vec::with_capacity(count);
    for round in 1..=count {
        let n = work.vertex_count();
        let dmin = min_degree(&work);
        let cycle = if n >= 3 && 2 * dmin >= n {
            dirac_hamiltonian_cycle(&work)?
        } else if let Some(c) = (round == count).then(|| as_single_cycle(&work)).flatten() {
            c
        } else {
            return Err(ConstructError::DiracRoundFailed {
                round,
                min_degree: dmin,
                n,
            });
        };
        for i in 0..cycle.len() {
            let removed = work.remove_edge(cycle[i], cycle[(i + 1) % cycle.len()]);
            assert!(removed, "cycle edges must be present");
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Alternate edges of an even cycle: a perfect matching on its vertices.
/// The cycle is canonicalized first so the choice of alternate edges is
/// deterministic.
pub fn matching_from_even_cycle(
    cycle: &[usize],
) -> Result<Vec<(usize, usize)>, ConstructError> {
    if !cycle.len().is_multiple_of(2) || cycle.is_empty() {
        return Err(ConstructError::OddCycle(cycle.len()));
    }
    let canonical = canonical_cycle(cycle);
    let mut matching = Vec::with_capacity(canonical.len() / 2);
    for i in (0..canonical.len()).step_by(2) {
        let (a, b) = (canonical[i], canonical[i + 1]);
        matching.push(if a < b { (a, b) } else { (b, a) });
    }
    Ok(matching)
}

/// Partitions the vertices of `j` into independent parts of exactly
/// `part_size`, under the hypothesis #parts ≥ Δ(j)+1 which guarantees such a
/// partition exists. Greedy placement with single-vertex evictions and
/// seeded-restart shuffles; deterministic.
pub fn equitable_partition(
    j: &SimpleGraph,
    part_size: usize,
) -> Result<PartitionRound, ConstructError> {
    let n = j.vertex_count();
    if part_size == 0 || n == 0 || !n.is_multiple_of(part_size) {
        return Err(ConstructError::BadParameter(format!(
            "part size {part_size} must be positive and divide the vertex count {n}"
        )));
    }
    let parts_count = n / part_size;
    let need = j.max_degree() + 1;
    if parts_count < need {
        return Err(ConstructError::PartitionHypothesis {
            parts: parts_count,
            need,
        });
    }

    const ATTEMPTS: usize = 64;
    for attempt in 0..ATTEMPTS {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(j.degree(v)), v));
        if attempt > 0 {
            let mut rng = ChaCha20Rng::seed_from_u64(attempt as u64);
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
        }
        if let Some(parts) = try_partition(j, part_size, parts_count, &order) {
            let round = PartitionRound {
                round_index: 0,
                part_size,
                parts: parts
                    .into_iter()
                    .map(|p| p.into_iter().collect())
                    .collect(),
            };
            validate_partition(j, &round);
            return Ok(round);
        }
    }
    Err(ConstructError::PartitionInternal { attempts: ATTEMPTS })
}

fn try_partition(
    j: &SimpleGraph,
    part_size: usize,
    parts_count: usize,
    order: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); parts_count];
    let independent_of =
        |parts: &Vec<Vec<usize>>, p: usize, v: usize| parts[p].iter().all(|&u| !j.has_edge(u, v));
    for &v in order {
        let open = (0..parts_count)
            .find(|&p| parts[p].len() < part_size && independent_of(&parts, p, v));
        if let Some(p) = open {
            parts[p].push(v);
            continue;
        }
        // Every compatible part is full: evict one member elsewhere.
        let mut placed = false;
        'evict: for p in 0..parts_count {
            if !independent_of(&parts, p, v) {
                continue;
            }
            for slot in 0..parts[p].len() {
                let u = parts[p][slot];
                let target = (0..parts_count).find(|&q| {
                    q != p && parts[q].len() < part_size && independent_of(&parts, q, u)
                });
                if let Some(q) = target {
                    parts[p].remove(slot);
                    parts[q].push(u);
                    parts[p].push(v);
                    placed = true;
                    break 'evict;
                }
            }
        }
        if !placed {
            return None;
        }
    }
    Some(parts)
}

fn validate_partition(j: &SimpleGraph, round: &PartitionRound) {
    let n = j.vertex_count();
    let mut covered = vec![false; n];
    for part in &round.parts {
        assert_eq!(part.len(), round.part_size, "parts must be equal-sized");
        let members = part.to_vec();
        for (i, &u) in members.iter().enumerate() {
            assert!(!covered[u], "partition repeats vertex {u}");
            covered[u] = true;
            for &v in &members[i + 1..] {
                assert!(!j.has_edge(u, v), "part is not independent at ({u}, {v})");
            }
        }
    }
    assert!(covered.iter().all(|&b| b), "partition must cover all vertices");
}

/// Random k-degenerate graph with maximum degree ≤ D: vertices are added one
/// at a time, each choosing up to `k` distinct earlier neighbors uniformly
/// among those whose degree is still below `d`.
pub fn random_k_degenerate(
    n: usize,
    k: usize,
    d: usize,
    seed: u64,
) -> Result<SimpleGraph, ConstructError> {
    if n == 0 || k == 0 || d < k {
        return Err(ConstructError::BadParameter(format!(
            "need n ≥ 1, k ≥ 1 and D ≥ k; got n = {n}, k = {k}, D = {d}"
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut g = SimpleGraph::new(n);
    for v in 1..n {
        let mut pool: Vec<usize> = (0..v).filter(|&u| g.degree(u) < d).collect();
        let take = k.min(pool.len());
        for i in 0..take {
            let pick = rng.gen_range(i..pool.len());
            pool.swap(i, pick);
            g.add_edge(v, pool[i]).expect("sampled edge in range");
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// The bundled-hub family (pentagon core)
// ---------------------------------------------------------------------------

/// The five hub pairs, lexicographically. Pairs of cyclically consecutive
/// hubs ("outer" pentagon edges) get smaller bundles in the D ≡ 2 (mod 4)
/// variant.
fn hub_pairs() -> Vec<(usize, usize)> {
    (0..5)
        .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
        .collect()
}

fn is_outer(a: usize, b: usize) -> bool {
    b == (a + 1) % 5 || a == (b + 1) % 5
}

/// Hub-bundle construction: five hubs, each hub pair joined through a bundle
/// of middle vertices (the set S), and an extra degree-2 vertex attached to
/// every pair of middles that has no common neighbor (the "gray" set).
///
/// For D divisible by 4 every bundle has D/4 middles. For D ≡ 2 (mod 4) the
/// bundles are sized as in the D+2 construction with one middle removed from
/// each outer-pentagon bundle, i.e. outer bundles get (D−2)/4 middles and
/// inner ones (D+2)/4.
///
/// Layout: hubs 0..5, then the bundles in lexicographic hub-pair order, then
/// the gray vertices in lexicographic middle-pair order.
pub fn example1(d: usize) -> Result<LabeledConstruction, ConstructError> {
    if !d.is_multiple_of(2) || d < 4 {
        return Err(ConstructError::BadParameter(format!(
            "bundle construction needs even D ≥ 4, got {d}"
        )));
    }
    let pairs = hub_pairs();
    let bundle_size = |a: usize, b: usize| -> usize {
        if d.is_multiple_of(4) {
            d / 4
        } else if is_outer(a, b) {
            (d - 2) / 4
        } else {
            (d + 2) / 4
        }
    };

    let mut middles: Vec<(usize, usize)> = Vec::new(); // middle index -> hub pair
    for &(a, b) in &pairs {
        for _ in 0..bundle_size(a, b) {
            middles.push((a, b));
        }
    }
    let s_count = middles.len();
    let first_middle = 5;
    // Gray vertices join middle pairs from disjoint bundles (those are
    // exactly the middle pairs with no common neighbor).
    let mut gray_pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..s_count {
        for y in (x + 1)..s_count {
            let (a, b) = middles[x];
            let (c, e) = middles[y];
            if a != c && a != e && b != c && b != e {
                gray_pairs.push((first_middle + x, first_middle + y));
            }
        }
    }
    let first_gray = first_middle + s_count;
    let n = first_gray + gray_pairs.len();

    let mut g = SimpleGraph::new(n);
    for (x, &(a, b)) in middles.iter().enumerate() {
        g.add_edge(a, first_middle + x).expect("hub edge in range");
        g.add_edge(b, first_middle + x).expect("hub edge in range");
    }
    for (z, &(x, y)) in gray_pairs.iter().enumerate() {
        g.add_edge(first_gray + z, x).expect("gray edge in range");
        g.add_edge(first_gray + z, y).expect("gray edge in range");
    }

    let mut lc = LabeledConstruction::new(g);
    lc.sets
        .insert("K5".into(), (0..5).collect());
    lc.sets
        .insert("S".into(), (first_middle..first_gray).collect());
    lc.sets.insert("gray".into(), (first_gray..n).collect());
    lc.params.insert("D".into(), d as i64);
    Ok(lc)
}

// ---------------------------------------------------------------------------
// The subdivision family (circulant core)
// ---------------------------------------------------------------------------

/// Subdivision construction: a D-regular circulant on 4s vertices (the set
/// T) has every edge subdivided (the midpoints form S, |S| = 2sD); a
/// conflict graph on S joins midpoints with no common neighbor; a
/// (D−2)-regular subgraph of it is realized through fresh degree-2 vertices
/// (the set Z), one per chosen conflict edge. The subgraph is a union of
/// edge-disjoint Hamiltonian cycles (the last replaced by a perfect matching
/// when D is odd).
///
/// Layout: T = 0..4s, then S in lexicographic subdivided-edge order, then Z
/// in lexicographic conflict-pair order.
pub fn example2(d: usize, s: usize) -> Result<LabeledConstruction, ConstructError> {
    if s < 3 {
        return Err(ConstructError::BadParameter(format!(
            "subdivision construction needs s ≥ 3, got {s}"
        )));
    }
    if d < 2 {
        return Err(ConstructError::BadParameter(format!(
            "subdivision construction needs D ≥ 2, got {d}"
        )));
    }
    if d >= 4 * s {
        return Err(ConstructError::BadParameter(format!(
            "no D-regular graph on 4s = {} vertices with D = {d}",
            4 * s
        )));
    }
    let t_count = 4 * s;
    let mut offsets: Vec<usize> = (1..=d / 2).collect();
    if d % 2 == 1 {
        offsets.push(2 * s);
    }
    let base = circulant(t_count, &offsets)?;
    debug_assert!((0..t_count).all(|v| base.degree(v) == d));

    let (subdivided, mids) = base.subdivide_all_edges();
    let s_count = mids.len();
    assert_eq!(s_count, 2 * s * d);

    // Conflict graph on S (local indices 0..s_count): midpoints of
    // vertex-disjoint base edges, i.e. pairs with no common neighbor.
    let mut conflict = SimpleGraph::new(s_count);
    for x in 0..s_count {
        for y in (x + 1)..s_count {
            let gx = t_count + x;
            let gy = t_count + y;
            let disjoint = subdivided
                .neighbors(gx)
                .all(|w| !subdivided.has_edge(gy, w));
            if disjoint {
                conflict.add_edge(x, y).expect("conflict edge in range");
            }
        }
    }
    let expected_conflict_degree = 2 * s * d - (2 * d - 1);
    assert!((0..s_count).all(|v| conflict.degree(v) == expected_conflict_degree));

    let rounds = (d - 2).div_ceil(2);
    let cycles = edge_disjoint_hamiltonian_cycles(&conflict, rounds)?;
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for (idx, cycle) in cycles.iter().enumerate() {
        let replace_by_matching = d % 2 == 1 && idx + 1 == cycles.len();
        if replace_by_matching {
            chosen.extend(matching_from_even_cycle(cycle)?);
        } else {
            for i in 0..cycle.len() {
                let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                chosen.push(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    chosen.sort_unstable();
    let before_dedup = chosen.len();
    chosen.dedup();
    assert_eq!(before_dedup, chosen.len(), "chosen conflict edges must be distinct");
    // The union must be exactly (D−2)-regular on S.
    let mut z_degree = vec![0usize; s_count];
    for &(a, b) in &chosen {
        z_degree[a] += 1;
        z_degree[b] += 1;
    }
    assert!(z_degree.iter().all(|&x| x == d - 2));

    let first_z = t_count + s_count;
    let n = first_z + chosen.len();
    let mut g = SimpleGraph::new(n);
    for (u, v) in subdivided.edges() {
        g.add_edge(u, v).expect("subdivided edge in range");
    }
    for (zi, &(x, y)) in chosen.iter().enumerate() {
        g.add_edge(first_z + zi, t_count + x).expect("z edge in range");
        g.add_edge(first_z + zi, t_count + y).expect("z edge in range");
    }

    let mut lc = LabeledConstruction::new(g);
    lc.sets.insert("T".into(), (0..t_count).collect());
    lc.sets
        .insert("S".into(), (t_count..first_z).collect());
    lc.sets.insert("Z".into(), (first_z..n).collect());
    lc.params.insert("D".into(), d as i64);
    lc.params.insert("s".into(), s as i64);
    Ok(lc)
}

// ---------------------------------------------------------------------------
// The hub family (repeated equitable partitions)
// ---------------------------------------------------------------------------

/// Hub construction: a ground set S is partitioned k times into independent
/// parts of size D and then D−k times into independent parts of size k
/// (independence is with respect to the running conflict graph, so no pair
/// of S-vertices ever shares two parts); every part gets a private hub
/// vertex adjacent to exactly that part.
///
/// Layout: S = 0..|S|, then hubs in round/part order.
pub fn example3(
    k: usize,
    d: usize,
    s_size: Option<usize>,
) -> Result<LabeledConstruction, ConstructError> {
    if k < 2 {
        return Err(ConstructError::BadParameter(format!(
            "hub construction needs k ≥ 2, got {k}"
        )));
    }
    if d < k {
        return Err(ConstructError::BadParameter(format!(
            "hub construction needs D ≥ k, got D = {d} < k = {k}"
        )));
    }
    let default_size = 2 * k * d * d;
    let size = s_size.unwrap_or(default_size);
    if size < default_size {
        return Err(ConstructError::BadParameter(format!(
            "ground set size {size} is below the minimum {default_size}"
        )));
    }
    if !size.is_multiple_of(k * d) {
        return Err(ConstructError::BadParameter(format!(
            "ground set size {size} is not divisible by k·D = {}",
            k * d
        )));
    }

    let mut conflict = SimpleGraph::new(size);
    let mut rounds: Vec<PartitionRound> = Vec::new();
    let sizes: Vec<usize> = std::iter::repeat_n(d, k)
        .chain(std::iter::repeat_n(k, d - k))
        .collect();
    for (round_index, &part_size) in sizes.iter().enumerate() {
        let mut round = equitable_partition(&conflict, part_size)?;
        round.round_index = round_index;
        for part in &round.parts {
            let members = part.to_vec();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    assert!(
                        !conflict.has_edge(u, v),
                        "pair ({u}, {v}) would share two parts"
                    );
                    conflict.add_edge(u, v).expect("conflict edge in range");
                }
            }
        }
        rounds.push(round);
    }

    let total_parts: usize = rounds.iter().map(|r| r.parts.len()).sum();
    let n = size + total_parts;
    let mut g = SimpleGraph::new(n);
    let mut hub = size;
    for round in &rounds {
        for part in &round.parts {
            for v in part {
                g.add_edge(hub, v).expect("hub edge in range");
            }
            hub += 1;
        }
    }
    assert!((0..size).all(|v| g.degree(v) == d));

    let mut lc = LabeledConstruction::new(g);
    lc.sets.insert("S".into(), (0..size).collect());
    lc.sets.insert("hub".into(), (size..n).collect());
    lc.params.insert("k".into(), k as i64);
    lc.params.insert("D".into(), d as i64);
    lc.params.insert("S_size".into(), size as i64);
    lc.rounds = rounds;
    lc.conflict = Some(conflict);
    Ok(lc)
}

// ---------------------------------------------------------------------------
// Uniform multigraph cliques
// ---------------------------------------------------------------------------

/// Complete multigraph on `h_order` vertices with uniform edge multiplicity,
/// optionally "thinned" by removing two copies of every edge along a given
/// Hamiltonian cycle of the vertex set.
pub fn fat_clique(
    h_order: usize,
    multiplicity: usize,
    thinned_cycle: Option<&[usize]>,
) -> Result<Multigraph, ConstructError> {
    if h_order < 3 {
        return Err(ConstructError::BadParameter(format!(
            "clique order must be at least 3, got {h_order}"
        )));
    }
    if multiplicity == 0 {
        return Err(ConstructError::BadParameter(
            "multiplicity must be at least 1".into(),
        ));
    }
    let mut g = Multigraph::new(h_order);
    for u in 0..h_order {
        for v in (u + 1)..h_order {
            g.add_edge_with_multiplicity(u, v, multiplicity)
                .expect("clique edge in range");
        }
    }
    if let Some(cycle) = thinned_cycle {
        if cycle.len() != h_order {
            return Err(ConstructError::BadParameter(format!(
                "thinning cycle has length {}, expected {h_order}",
                cycle.len()
            )));
        }
        let mut seen = vec![false; h_order];
        for &v in cycle {
            if v >= h_order || seen[v] {
                return Err(ConstructError::BadParameter(format!(
                    "thinning cycle is not a permutation of 0..{h_order}"
                )));
            }
            seen[v] = true;
        }
        for i in 0..h_order {
            let (u, v) = (cycle[i], cycle[(i + 1) % h_order]);
            if multiplicity < 2 {
                return Err(ConstructError::ThinningNegative { u, v });
            }
            g.set_multiplicity(u, v, multiplicity - 2)
                .expect("thinned pair in range");
        }
    }
    Ok(g)
}
