//! Witness-extraction pipeline.
//!
//! Given a graph `G`, a set `S` that induces a clique in `G²`, and a vertex
//! deletion order, this module simulates an amortized token-passing scheme
//! along the order, classifies vertices by the tokens they accumulate, and
//! reduces `(G, S)` to a smaller instance `(G′, S′, σ′)` that satisfies a
//! strong normal form ("nice" witnesses).  It also provides a contraction
//! from a nice witness to a multigraph, plus audits for the counting
//! inequalities the pipeline relies on.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::analysis::{is_k_degeneracy_order, mad, Rational};
use crate::graph::{Multigraph, SimpleGraph, VertexOrder, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {vertex} lies outside the graph (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("order has length {order_len} but the graph has {n} vertices")]
    OrderLengthMismatch { order_len: usize, n: usize },
    #[error("order is not a {k}-degeneracy order: vertex {vertex} has {found} later neighbors")]
    NotDegeneracyOrder {
        k: usize,
        vertex: usize,
        found: usize,
    },
    #[error("the distinguished set is not consecutive in the order")]
    NotConsecutive,
}

/// Which token scheme to run: the scheme for 2-degenerate graphs or the
/// scheme for graphs of maximum average degree below four.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenVariant {
    TwoDegenerate,
    MadFour,
}

impl TokenVariant {
    /// Back-degree bound the deletion order must satisfy.
    pub fn order_bound(self) -> usize {
        match self {
            TokenVariant::TwoDegenerate => 2,
            TokenVariant::MadFour => 3,
        }
    }

    /// Additive slack in the per-vertex counting inequality.
    pub fn inequality_slack(self) -> usize {
        match self {
            TokenVariant::TwoDegenerate => 6,
            TokenVariant::MadFour => 12,
        }
    }

    /// `primary(v) > D / big_denominator()` marks `v` as Big.
    pub fn big_denominator(self) -> usize {
        match self {
            TokenVariant::TwoDegenerate => 4,
            TokenVariant::MadFour => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TokenVariant::TwoDegenerate => "two_degenerate",
            TokenVariant::MadFour => "mad_four",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Primary,
    Secondary,
    Tertiary,
}

/// One pass event: `from` hands `count` tokens of `kind` to `to` at the
/// moment `from` is deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenEvent {
    pub from: usize,
    pub to: usize,
    pub kind: TokenKind,
    pub count: usize,
}

/// Per-vertex token counts held immediately before deletion.
#[derive(Debug, Clone)]
pub struct TokenLedger {
    pub variant: TokenVariant,
    pub tokens: Vec<usize>,
    pub primary: Vec<usize>,
    pub secondary: Vec<usize>,
    pub tertiary: Vec<usize>,
    /// Vertices outside `S` with at least three neighbors in `S`.
    pub r3: VertexSet,
    pub trace: Vec<TokenEvent>,
}

fn check_set_in_range(s: &VertexSet, n: usize) -> Result<(), ExtractionError> {
    match s.max() {
        Some(v) if v >= n => Err(ExtractionError::VertexOutOfRange { vertex: v, n }),
        _ => Ok(()),
    }
}

/// Neighbors of `v` that come later in `order`, sorted by position.
fn later_neighbors(g: &SimpleGraph, order: &VertexOrder, v: usize) -> Vec<usize> {
    let mut later: Vec<usize> = g
        .neighbors(v)
        .filter(|&u| order.comes_before(v, u))
        .collect();
    later.sort_by_key(|&u| order.position(u));
    later
}

fn r3_set(g: &SimpleGraph, s: &VertexSet) -> VertexSet {
    (0..g.vertex_count())
        .filter(|&v| !s.contains(v) && g.neighbors(v).filter(|&u| s.contains(u)).count() >= 3)
        .collect()
}

/// Deletes vertices in `order` and tracks token movement.
///
/// When a vertex `v ∈ S` is deleted it hands one primary token to each
/// neighbor later in the order.  When any deleted vertex holds `s ≥ 1`
/// primary tokens, it hands `s` secondary tokens to each later neighbor.
/// Under [`TokenVariant::MadFour`], a deleted vertex outside `S` with at
/// least three `S`-neighbors in total and at least three of them later in
/// the order additionally hands one tertiary token to each of the three
/// earliest such neighbors.
///
/// The order must have back-degree at most 2 (`TwoDegenerate`) or 3
/// (`MadFour`).
pub fn simulate_tokens(
    g: &SimpleGraph,
    s: &VertexSet,
    order: &VertexOrder,
    variant: TokenVariant,
) -> Result<TokenLedger, ExtractionError> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(ExtractionError::OrderLengthMismatch {
            order_len: order.len(),
            n,
        });
    }
    check_set_in_range(s, n)?;
    let k = variant.order_bound();
    for &v in order.seq() {
        let later = later_neighbors(g, order, v);
        if later.len() > k {
            return Err(ExtractionError::NotDegeneracyOrder {
                k,
                vertex: v,
                found: later.len(),
            });
        }
    }

    let r3 = r3_set(g, s);
    let mut primary = vec![0usize; n];
    let mut secondary = vec![0usize; n];
    let mut tertiary = vec![0usize; n];
    let mut trace = Vec::new();

    for &v in order.seq() {
        let later = later_neighbors(g, order, v);
        if s.contains(v) {
            for &w in &later {
                primary[w] += 1;
                trace.push(TokenEvent {
                    from: v,
                    to: w,
                    kind: TokenKind::Primary,
                    count: 1,
                });
            }
        }
        let held = primary[v];
        if held >= 1 {
            for &w in &later {
                secondary[w] += held;
                trace.push(TokenEvent {
                    from: v,
                    to: w,
                    kind: TokenKind::Secondary,
                    count: held,
                });
            }
        }
        if variant == TokenVariant::MadFour && r3.contains(v) {
            let later_s: Vec<usize> = later.iter().copied().filter(|&u| s.contains(u)).collect();
            if later_s.len() >= 3 {
                for &w in &later_s[..3] {
                    tertiary[w] += 1;
                    trace.push(TokenEvent {
                        from: v,
                        to: w,
                        kind: TokenKind::Tertiary,
                        count: 1,
                    });
                }
            }
        }
    }

    let tokens: Vec<usize> = (0..n)
        .map(|v| primary[v] + secondary[v] + tertiary[v])
        .collect();

    // Conservation: each S-deletion emits at most k primaries, each primary
    // spawns at most k secondaries, each R3-deletion emits at most 3
    // tertiaries.
    let total_ps: usize = primary.iter().sum::<usize>() + secondary.iter().sum::<usize>();
    match variant {
        TokenVariant::TwoDegenerate => {
            assert!(
                tokens.iter().sum::<usize>() <= 6 * s.len(),
                "token conservation failed: more than 6|S| tokens in play"
            );
        }
        TokenVariant::MadFour => {
            assert!(
                total_ps <= 12 * s.len(),
                "token conservation failed: more than 12|S| primary+secondary tokens"
            );
            assert!(
                tertiary.iter().sum::<usize>() <= 3 * r3.len(),
                "token conservation failed: more than 3|R3| tertiary tokens"
            );
        }
    }

    Ok(TokenLedger {
        variant,
        tokens,
        primary,
        secondary,
        tertiary,
        r3,
        trace,
    })
}

/// Vertex classes induced by a token ledger and a degree bound `d`.
///
/// `big` holds every vertex with `primary > d / den` where `den` is 4 for
/// the 2-degenerate scheme and 8 for the mad-below-four scheme; `basic`
/// holds every `v ∈ S` with `tokens < d / 4`; `nonbasic = S ∖ basic`; and
/// `w_set` holds the later neighbors of nonbasic vertices.  All threshold
/// comparisons are exact integer comparisons.
#[derive(Debug, Clone)]
pub struct Classification {
    pub variant: TokenVariant,
    pub d: usize,
    pub big: VertexSet,
    pub basic: VertexSet,
    pub nonbasic: VertexSet,
    pub w_set: VertexSet,
    pub r3: VertexSet,
}

pub fn classify(
    g: &SimpleGraph,
    s: &VertexSet,
    order: &VertexOrder,
    ledger: &TokenLedger,
    d: usize,
) -> Classification {
    let n = g.vertex_count();
    let den = ledger.variant.big_denominator();
    let big: VertexSet = (0..n).filter(|&v| den * ledger.primary[v] > d).collect();
    let basic: VertexSet = s.iter().filter(|&v| 4 * ledger.tokens[v] < d).collect();
    let nonbasic: VertexSet = s.iter().filter(|&v| !basic.contains(v)).collect();
    let mut w_set = VertexSet::new();
    for v in nonbasic.iter() {
        for w in later_neighbors(g, order, v) {
            w_set.insert(w);
        }
    }
    Classification {
        variant: ledger.variant,
        d,
        big,
        basic,
        nonbasic,
        w_set,
        r3: ledger.r3.clone(),
    }
}

/// Per-vertex audit of the counting inequality
/// `1 + tokens(v) + D + Σ primary(w_i) + slack ≥ |S|`, where the `w_i`
/// range over the later neighbors of `v` and the slack is 6 for the
/// 2-degenerate scheme and 12 for the mad-below-four scheme.
#[derive(Debug, Clone)]
pub struct KeyInequalityReport {
    pub variant: TokenVariant,
    pub d: usize,
    pub checked: usize,
    pub premise_held: bool,
    /// Vertices of `S` whose left-hand side falls short of `|S|`.
    pub violations: Vec<usize>,
    /// Only populated for the 2-degenerate scheme when the size premise
    /// holds: basic vertices that do not have two Big later neighbors even
    /// though their inequality holds.
    pub later_big_failures: Vec<usize>,
}

/// The instance-size premise `|S| ≥ 5D/2 + 60`, checked exactly.
pub fn size_premise(s_len: usize, d: usize) -> bool {
    2 * s_len >= 5 * d + 120
}

pub fn key_inequality_audit(
    g: &SimpleGraph,
    s: &VertexSet,
    order: &VertexOrder,
    ledger: &TokenLedger,
    d: usize,
) -> KeyInequalityReport {
    let slack = ledger.variant.inequality_slack();
    let premise_held = size_premise(s.len(), d);
    let mut violations = Vec::new();
    let mut later_big_failures = Vec::new();
    for v in s.iter() {
        let later = later_neighbors(g, order, v);
        let later_primary: usize = later.iter().map(|&w| ledger.primary[w]).sum();
        let left = 1 + ledger.tokens[v] + d + later_primary + slack;
        if left < s.len() {
            violations.push(v);
        } else if premise_held
            && ledger.variant == TokenVariant::TwoDegenerate
            && 4 * ledger.tokens[v] < d
        {
            let den = ledger.variant.big_denominator();
            let both_big =
                later.len() == 2 && later.iter().all(|&w| den * ledger.primary[w] > d);
            if !both_big {
                later_big_failures.push(v);
            }
        }
    }
    KeyInequalityReport {
        variant: ledger.variant,
        d,
        checked: s.len(),
        premise_held,
        violations,
        later_big_failures,
    }
}

/// Deletion order with back-degree at most `k`, tuned for the token
/// scheme.  Among vertices of current degree at most `k` it prefers the
/// one currently holding the fewest primary tokens (deferring accumulators
/// keeps secondary spill out of `s`), then vertices outside `s`, then
/// smaller degree, then ascending index.  No primary tokens exist before
/// the first `s`-deletion, so up to that point this is exactly the
/// "delete non-`s` vertices first" rule: the first member of `s` appears
/// as late as the greedy peel allows.
pub fn order_preferring_non_s(g: &SimpleGraph, s: &VertexSet, k: usize) -> VertexOrder {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut held = vec![0usize; n];
    let mut alive = vec![true; n];
    let key = |deg: &[usize], held: &[usize], v: usize, s: &VertexSet| {
        (deg[v] > k, held[v], s.contains(v), deg[v], v)
    };
    let mut queue: BTreeSet<(bool, usize, bool, usize, usize)> =
        (0..n).map(|v| key(&deg, &held, v, s)).collect();
    let mut seq = Vec::with_capacity(n);
    while let Some(&entry) = queue.iter().next() {
        let (_, _, _, _, v) = entry;
        queue.remove(&entry);
        alive[v] = false;
        seq.push(v);
        for u in g.neighbors(v) {
            if alive[u] {
                assert!(queue.remove(&key(&deg, &held, u, s)));
                deg[u] -= 1;
                if s.contains(v) {
                    held[u] += 1;
                }
                queue.insert(key(&deg, &held, u, s));
            }
        }
    }
    VertexOrder::from_seq(seq).expect("greedy peel visits every vertex exactly once")
}

/// True iff every two members of `set` are adjacent or share a neighbor.
pub fn is_clique_in_square(g: &SimpleGraph, set: &VertexSet) -> bool {
    let members: Vec<usize> = set.to_vec();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.has_edge(a, b) {
                continue;
            }
            let common = g
                .neighbor_set(a)
                .intersection(g.neighbor_set(b))
                .next()
                .is_some();
            if !common {
                return false;
            }
        }
    }
    true
}

fn is_independent(g: &SimpleGraph, set: &VertexSet) -> bool {
    let members: Vec<usize> = set.to_vec();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.has_edge(a, b) {
                return false;
            }
        }
    }
    true
}

fn is_consecutive(order: &VertexOrder, set: &VertexSet) -> bool {
    if set.is_empty() {
        return true;
    }
    let positions: Vec<usize> = set.iter().map(|v| order.position(v)).collect();
    let lo = *positions.iter().min().expect("nonempty");
    let hi = *positions.iter().max().expect("nonempty");
    hi - lo + 1 == positions.len()
}

/// Repeatedly applies the reduction rules until none fires:
/// - delete every edge with neither endpoint in `S′`;
/// - a vertex outside `S′ ∪ Big` with more than two remaining edges keeps
///   the two whose endpoints come earliest in `sigma` and deletes the rest,
///   and every deleted edge's `S′`-endpoint leaves `S′`;
/// - with `trim_inside` (the mad-below-four pipeline), a member of `S′`
///   with more than two neighbors that come later once Big moves to the
///   end of the order leaves `S′`.
fn run_reduction(
    g: &SimpleGraph,
    sigma: &VertexOrder,
    big: &VertexSet,
    mut s_prime: BTreeSet<usize>,
    trim_inside: bool,
) -> (SimpleGraph, BTreeSet<usize>) {
    let mut work = g.clone();
    loop {
        let mut changed = false;

        let doomed: Vec<(usize, usize)> = work
            .edges()
            .filter(|&(u, v)| !s_prime.contains(&u) && !s_prime.contains(&v))
            .collect();
        for (u, v) in doomed {
            work.remove_edge(u, v);
            changed = true;
        }

        for u in 0..work.vertex_count() {
            if s_prime.contains(&u) || big.contains(u) {
                continue;
            }
            let mut nbrs: Vec<usize> = work.neighbors(u).collect();
            if nbrs.len() <= 2 {
                continue;
            }
            nbrs.sort_by_key(|&w| sigma.position(w));
            for &w in &nbrs[2..] {
                work.remove_edge(u, w);
                s_prime.remove(&w);
            }
            changed = true;
        }

        if trim_inside {
            let members: Vec<usize> = s_prime.iter().copied().collect();
            for v in members {
                let later = work
                    .neighbors(v)
                    .filter(|&u| big.contains(u) || sigma.comes_before(v, u))
                    .count();
                if later > 2 {
                    s_prime.remove(&v);
                    changed = true;
                }
            }
        }

        if !changed {
            return (work, s_prime);
        }
    }
}

/// Rebuilds the order as blocks.  With `separate_s_prime` the layout is
/// `[rest][S′][Big]`; otherwise `[non-Big][Big]`.  Each block keeps the
/// relative order of `sigma`.
fn block_order(
    sigma: &VertexOrder,
    s_prime: &BTreeSet<usize>,
    big: &VertexSet,
    separate_s_prime: bool,
) -> VertexOrder {
    let mut front = Vec::new();
    let mut mid = Vec::new();
    let mut back = Vec::new();
    for &v in sigma.seq() {
        if big.contains(v) {
            back.push(v);
        } else if separate_s_prime && s_prime.contains(&v) {
            mid.push(v);
        } else {
            front.push(v);
        }
    }
    front.extend(mid);
    front.extend(back);
    VertexOrder::from_seq(front).expect("blocks partition the vertex set")
}

#[derive(Debug, Clone)]
pub struct ExtractionStats {
    pub s_len: usize,
    pub s_prime_len: usize,
    pub big_len: usize,
    pub basic_len: usize,
    pub nonbasic_len: usize,
    pub w_len: usize,
    pub r3_len: usize,
    pub audit_violations: usize,
    pub s_prime_independent: bool,
    pub s_prime_consecutive: bool,
}

/// Output of the extraction pipelines.
///
/// `nice` records whether the full normal form holds on the output triple:
/// `s_prime` induces a clique in `graph_prime²`, is independent in
/// `graph_prime`, and appears consecutively in `order_prime`, which is a
/// 2-degeneracy order.  The 2-degenerate pipeline guarantees all four; the
/// mad-below-four pipeline guarantees the clique and order conditions and
/// reports the rest honestly.
#[derive(Debug, Clone)]
pub struct ExtractionResult {
    pub graph_prime: SimpleGraph,
    pub s_prime: VertexSet,
    pub order_prime: VertexOrder,
    pub removed_count: usize,
    pub premise_held: bool,
    pub nice: bool,
    pub stats: ExtractionStats,
}

fn validate_extraction_input(
    g: &SimpleGraph,
    s: &VertexSet,
    d: usize,
) -> Result<(), ExtractionError> {
    check_set_in_range(s, g.vertex_count())?;
    if g.max_degree() > d {
        return Err(ExtractionError::Precondition(format!(
            "maximum degree {} exceeds the bound D = {d}",
            g.max_degree()
        )));
    }
    if !is_clique_in_square(g, s) {
        return Err(ExtractionError::Precondition(
            "the distinguished set is not a clique in the square".into(),
        ));
    }
    Ok(())
}

/// Extraction pipeline for 2-degenerate graphs.
///
/// Chooses a 2-degeneracy order whose first `S`-vertex appears as late as
/// the greedy rule allows, simulates tokens, classifies, seeds
/// `S′ = Basic ∖ W`, sweeps `S′` down to an independent set, reduces, and
/// reorders into `[rest][S′][Big]`.  The returned witness always satisfies
/// the full normal form; when the size premise `|S| ≥ 5D/2 + 60` holds the
/// pipeline additionally asserts that at most 72 vertices were removed.
pub fn extract_nice_2deg(
    g: &SimpleGraph,
    s: &VertexSet,
    d: usize,
) -> Result<ExtractionResult, ExtractionError> {
    validate_extraction_input(g, s, d)?;
    let cert = crate::analysis::degeneracy_order(g);
    if cert.degeneracy > 2 {
        return Err(ExtractionError::Precondition(format!(
            "graph has degeneracy {} > 2",
            cert.degeneracy
        )));
    }

    let sigma = order_preferring_non_s(g, s, 2);
    let ledger = simulate_tokens(g, s, &sigma, TokenVariant::TwoDegenerate)?;
    let class = classify(g, s, &sigma, &ledger, d);

    if s.len() <= 3 * d {
        let union: BTreeSet<usize> = class.nonbasic.iter().chain(class.big.iter()).collect();
        assert!(
            union.len() <= 72,
            "small-class bound failed: |NonBasic ∪ Big| = {} > 72 with |S| ≤ 3D",
            union.len()
        );
    }

    // Seed S′ = Basic ∖ W, then sweep to an independent subset, keeping the
    // sigma-earliest member of every adjacent pair.
    let seeded: Vec<usize> = {
        let mut v: Vec<usize> = class
            .basic
            .iter()
            .filter(|&x| !class.w_set.contains(x))
            .collect();
        v.sort_by_key(|&x| sigma.position(x));
        v
    };
    let mut s_prime: BTreeSet<usize> = BTreeSet::new();
    for &v in &seeded {
        if s_prime.iter().all(|&u| !g.has_edge(u, v)) {
            s_prime.insert(v);
        }
    }

    let (work, s_final) = run_reduction(g, &sigma, &class.big, s_prime, false);

    // Members of S′ never have earlier Big neighbors (a Big vertex deleted
    // first would have handed them more than D/4 secondary tokens), so all
    // their Big neighbors sit among their at most two later neighbors.
    for &v in &s_final {
        let big_nbrs = work.neighbors(v).filter(|&u| class.big.contains(u)).count();
        assert!(
            big_nbrs <= 2,
            "vertex {v} kept {big_nbrs} Big neighbors; the secondary-token bound failed"
        );
    }

    let order_prime = block_order(&sigma, &s_final, &class.big, true);
    finish_extraction(
        g, s, d, work, s_final, order_prime, &class, &ledger, &sigma, true,
    )
}

/// Extraction pipeline for graphs with maximum average degree below four.
///
/// Uses a 3-degeneracy order chosen by the same greedy rule, the
/// mad-below-four token scheme (with tertiary tokens), seeds
/// `S′ = Basic ∖ Big`, reduces (including the inside trim), and moves Big
/// to the end of the order.  The output order is asserted to be a
/// 2-degeneracy order of the reduced graph and `S′` a clique in its
/// square.  When the size premise holds the pipeline asserts
/// `removed ≤ |NonBasic| + 3|Big| ≤ 460`.
pub fn extract_nice_mad4(
    g: &SimpleGraph,
    s: &VertexSet,
    d: usize,
) -> Result<ExtractionResult, ExtractionError> {
    validate_extraction_input(g, s, d)?;
    if g.vertex_count() == 0 {
        return Err(ExtractionError::Precondition("graph has no vertices".into()));
    }
    let (mad_value, _) = mad(g).expect("nonempty graph has a densest subgraph");
    if mad_value >= Rational::from_integer(4) {
        return Err(ExtractionError::Precondition(format!(
            "maximum average degree {mad_value} is not below 4"
        )));
    }

    let sigma = order_preferring_non_s(g, s, 3);
    let ledger = simulate_tokens(g, s, &sigma, TokenVariant::MadFour)?;
    let class = classify(g, s, &sigma, &ledger, d);

    // Sparsity forces few vertices with three or more S-neighbors.
    if !s.is_empty() {
        assert!(
            class.r3.len() < 2 * s.len(),
            "|R3| = {} is not below 2|S| = {} despite mad < 4",
            class.r3.len(),
            2 * s.len()
        );
    }

    let s_prime: BTreeSet<usize> = class
        .basic
        .iter()
        .filter(|&x| !class.big.contains(x))
        .collect();
    let (work, s_final) = run_reduction(g, &sigma, &class.big, s_prime, true);
    let order_prime = block_order(&sigma, &s_final, &class.big, false);

    if size_premise(s.len(), d) {
        let removed = s.len() - s_final.len();
        let budget = class.nonbasic.len() + 3 * class.big.len();
        assert!(
            removed <= budget && removed <= 460,
            "removed {removed} vertices, exceeding the budget min({budget}, 460)"
        );
    }

    finish_extraction(
        g, s, d, work, s_final, order_prime, &class, &ledger, &sigma, false,
    )
}

#[allow(clippy::too_many_arguments)]
fn finish_extraction(
    g: &SimpleGraph,
    s: &VertexSet,
    d: usize,
    work: SimpleGraph,
    s_final: BTreeSet<usize>,
    order_prime: VertexOrder,
    class: &Classification,
    ledger: &TokenLedger,
    sigma: &VertexOrder,
    two_degenerate: bool,
) -> Result<ExtractionResult, ExtractionError> {
    let s_prime: VertexSet = s_final.iter().copied().collect();

    let order_ok = is_k_degeneracy_order(&work, &order_prime, 2)
        .expect("order_prime covers every vertex");
    assert!(
        order_ok,
        "reduction produced an order that is not a 2-degeneracy order"
    );
    assert!(
        is_clique_in_square(&work, &s_prime),
        "reduction broke the clique-in-square property of S′"
    );

    let independent = is_independent(&work, &s_prime);
    let consecutive = is_consecutive(&order_prime, &s_prime);
    if two_degenerate {
        assert!(independent, "sweep left an edge inside S′");
        assert!(consecutive, "block layout failed to make S′ consecutive");
    }

    let removed_count = s.len() - s_prime.len();
    let premise_held = size_premise(s.len(), d);
    if two_degenerate && premise_held {
        assert!(
            removed_count <= 72,
            "removed {removed_count} vertices under the size premise (budget 72)"
        );
    }

    let audit = key_inequality_audit(g, s, sigma, ledger, d);
    if two_degenerate && premise_held {
        assert!(
            audit.later_big_failures.is_empty(),
            "basic vertices without two Big later neighbors under the premise: {:?}",
            audit.later_big_failures
        );
    }

    let stats = ExtractionStats {
        s_len: s.len(),
        s_prime_len: s_prime.len(),
        big_len: class.big.len(),
        basic_len: class.basic.len(),
        nonbasic_len: class.nonbasic.len(),
        w_len: class.w_set.len(),
        r3_len: class.r3.len(),
        audit_violations: audit.violations.len(),
        s_prime_independent: independent,
        s_prime_consecutive: consecutive,
    };
    let nice = independent && consecutive;
    Ok(ExtractionResult {
        graph_prime: work,
        s_prime,
        order_prime,
        removed_count,
        premise_held,
        nice,
        stats,
    })
}

/// Verdict of [`verify_nice`]: when `nice` is true, `order` holds a
/// witnessing 2-degeneracy order with `s` consecutive; otherwise `failure`
/// names the first condition that failed.
#[derive(Debug, Clone)]
pub struct NiceVerdict {
    pub nice: bool,
    pub order: Option<VertexOrder>,
    pub failure: Option<String>,
}

/// Checks whether `(g, s)` is a nice instance: (a) `s` induces a clique in
/// `g²`, (b) `s` is independent, and (c) some 2-degeneracy order places the
/// non-neighbors of `s` first, then `s` consecutively, then the rest.
///
/// The search for (c) is constructive: vertices with at least three
/// `S`-neighbors must follow `S`, the remainder is peeled greedily in
/// front of `S`, and stalled front vertices are promoted past `S` when
/// no `S`-member exceeds two later neighbors.  The search is sound (any
/// order it returns is validated) but not exhaustive; a `false` answer
/// for (c) reports that no witnessing order was found.
pub fn verify_nice(g: &SimpleGraph, s: &VertexSet) -> Result<NiceVerdict, ExtractionError> {
    let n = g.vertex_count();
    check_set_in_range(s, n)?;

    if !is_clique_in_square(g, s) {
        return Ok(NiceVerdict {
            nice: false,
            order: None,
            failure: Some("(a) the set is not a clique in the square".into()),
        });
    }
    if !is_independent(g, s) {
        return Ok(NiceVerdict {
            nice: false,
            order: None,
            failure: Some("(b) the set is not independent".into()),
        });
    }

    let mut tail: BTreeSet<usize> = (0..n)
        .filter(|&v| !s.contains(v) && g.neighbors(v).filter(|&u| s.contains(u)).count() >= 3)
        .collect();

    for _ in 0..=n {
        match try_nice_order(g, s, &tail) {
            Ok(order) => {
                return Ok(NiceVerdict {
                    nice: true,
                    order: Some(order),
                    failure: None,
                });
            }
            Err(stalled) => {
                let promoted = stalled.into_iter().find(|&a| {
                    g.neighbors(a).filter(|&u| s.contains(u)).all(|u| {
                        let later = g
                            .neighbors(u)
                            .filter(|&w| tail.contains(&w) || w == a)
                            .count();
                        later <= 2
                    })
                });
                match promoted {
                    Some(a) => {
                        tail.insert(a);
                    }
                    None => break,
                }
            }
        }
    }
    Ok(NiceVerdict {
        nice: false,
        order: None,
        failure: Some("(c) no witnessing 2-degeneracy order was found (search incomplete)".into()),
    })
}

/// Builds `[front][s][tail]` with a greedy peel of the front and of the
/// tail-induced subgraph.  On failure, returns the stalled front vertices.
fn try_nice_order(
    g: &SimpleGraph,
    s: &VertexSet,
    tail: &BTreeSet<usize>,
) -> Result<VertexOrder, Vec<usize>> {
    let n = g.vertex_count();

    for v in s.iter() {
        let later = g.neighbors(v).filter(|&u| tail.contains(&u)).count();
        if later > 2 {
            return Err(Vec::new());
        }
    }

    let mut front_remaining: BTreeSet<usize> =
        (0..n).filter(|&v| !s.contains(v) && !tail.contains(&v)).collect();
    let fixed: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .filter(|&u| s.contains(u) || tail.contains(&u))
                .count()
        })
        .collect();
    let mut seq = Vec::with_capacity(n);
    while !front_remaining.is_empty() {
        let pick = front_remaining.iter().copied().find(|&a| {
            let inner = g.neighbors(a).filter(|&u| front_remaining.contains(&u)).count();
            inner + fixed[a] <= 2
        });
        match pick {
            Some(a) => {
                front_remaining.remove(&a);
                seq.push(a);
            }
            None => return Err(front_remaining.iter().copied().collect()),
        }
    }

    seq.extend(s.iter());

    let mut tail_remaining = tail.clone();
    while !tail_remaining.is_empty() {
        let pick = tail_remaining.iter().copied().find(|&t| {
            g.neighbors(t).filter(|&u| tail_remaining.contains(&u)).count() <= 2
        });
        match pick {
            Some(t) => {
                tail_remaining.remove(&t);
                seq.push(t);
            }
            None => return Err(Vec::new()),
        }
    }

    let order = VertexOrder::from_seq(seq).expect("blocks partition the vertex set");
    match is_k_degeneracy_order(g, &order, 2) {
        Ok(true) => Ok(order),
        _ => Err(Vec::new()),
    }
}

/// Result of [`contract_to_multigraph`]: either the contracted multigraph
/// on the tail vertices, or the observation that some `S`-vertex has fewer
/// than two tail neighbors (which caps `|S|` at `2D`).
#[derive(Debug, Clone)]
pub enum ContractOutcome {
    Contracted {
        h: Multigraph,
        /// Original labels of the multigraph's vertices, ascending.
        t_vertices: Vec<usize>,
    },
    FewTailNeighbors {
        vertex: usize,
        t_neighbors: usize,
        s_len: usize,
    },
}

/// Contracts a nice instance to a multigraph: with `S` consecutive in
/// `order`, every `v ∈ S` with tail neighbors `w₁` (earlier) and `w₂`
/// is replaced by the edge `w₁w₂`; vertices before `S` are discarded.
/// The result has maximum degree at most `Δ(g)` and exactly `|S|` edges.
pub fn contract_to_multigraph(
    g: &SimpleGraph,
    s: &VertexSet,
    order: &VertexOrder,
) -> Result<ContractOutcome, ExtractionError> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(ExtractionError::OrderLengthMismatch {
            order_len: order.len(),
            n,
        });
    }
    check_set_in_range(s, n)?;
    if !is_consecutive(order, s) {
        return Err(ExtractionError::NotConsecutive);
    }

    let first_s_pos = s
        .iter()
        .map(|v| order.position(v))
        .min()
        .unwrap_or(n);
    let t_block: BTreeSet<usize> = order.seq()[first_s_pos..]
        .iter()
        .copied()
        .filter(|&v| !s.contains(v))
        .collect();
    let t_vertices: Vec<usize> = t_block.iter().copied().collect();
    let index_of: std::collections::BTreeMap<usize, usize> = t_vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    let mut h = Multigraph::new(t_vertices.len());
    for v in s.iter() {
        let mut t_nbrs: Vec<usize> = g
            .neighbors(v)
            .filter(|&u| t_block.contains(&u))
            .collect();
        t_nbrs.sort_by_key(|&u| order.position(u));
        if t_nbrs.len() < 2 {
            return Ok(ContractOutcome::FewTailNeighbors {
                vertex: v,
                t_neighbors: t_nbrs.len(),
                s_len: s.len(),
            });
        }
        if t_nbrs.len() > 2 {
            return Err(ExtractionError::NotDegeneracyOrder {
                k: 2,
                vertex: v,
                found: t_nbrs.len(),
            });
        }
        let (w1, w2) = (index_of[&t_nbrs[0]], index_of[&t_nbrs[1]]);
        let current = h.multiplicity(w1, w2);
        h.set_multiplicity(w1, w2, current + 1)
            .expect("tail neighbors are distinct");
    }

    assert!(
        h.max_degree() <= g.max_degree(),
        "contraction increased the maximum degree"
    );
    assert_eq!(h.edge_count(), s.len(), "contraction must yield |S| edges");
    Ok(ContractOutcome::Contracted { h, t_vertices })
}

/// Report on the multigraph degree/disjointness hypothesis: every vertex
/// has degree at most `d` and every edge is disjoint from at most `d − 2`
/// other edges (counted with multiplicity); under the hypothesis the edge
/// count should be at most `5d/2`.
#[derive(Debug, Clone)]
pub struct MultigraphBoundReport {
    pub d: usize,
    pub max_degree: usize,
    pub edge_count: usize,
    pub max_disjoint: usize,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

/// Never asserts: measures and reports.
pub fn thm1_check(h: &Multigraph, d: usize) -> MultigraphBoundReport {
    let pairs: Vec<(usize, usize, usize)> = h.pairs().collect();
    let mut max_disjoint = 0usize;
    for &(u, v, _) in &pairs {
        let disjoint: usize = pairs
            .iter()
            .filter(|&&(x, y, _)| x != u && x != v && y != u && y != v)
            .map(|&(_, _, m)| m)
            .sum();
        max_disjoint = max_disjoint.max(disjoint);
    }
    let max_degree = h.max_degree();
    let hypothesis_holds = max_degree <= d && max_disjoint + 2 <= d;
    let conclusion_holds = 2 * h.edge_count() <= 5 * d;
    MultigraphBoundReport {
        d,
        max_degree,
        edge_count: h.edge_count(),
        max_disjoint,
        hypothesis_holds,
        conclusion_holds,
    }
}
