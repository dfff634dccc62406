//! Polynomial-time matching solvers: feasibility, minimum-weight perfect
//! matching, most-distant matching via weight modification, fully disjoint
//! completion, and simultaneous disjoint pairs via the 2-factor reduction.
//!
//! All solvers are deterministic and break ties toward the
//! lexicographically smallest assignment (by U-index, then V-index) where
//! a matching is returned; integer arithmetic throughout.

mod dinic;
mod hopcroft_karp;
mod hungarian;

use crate::error::Error;
use crate::graph::{validate_matching, BipartiteGraph, EdgeWeighting, Matching};

use dinic::FlowNetwork;
use hopcroft_karp::maximum_matching;
use hungarian::solve_assignment;

const UNMATCHED: usize = usize::MAX;

/// Result of a feasibility-style solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible(Matching),
    Infeasible,
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible(_))
    }

    pub fn matching(&self) -> Option<&Matching> {
        match self {
            SolveOutcome::Feasible(m) => Some(m),
            SolveOutcome::Infeasible => None,
        }
    }

    pub fn into_matching(self) -> Option<Matching> {
        match self {
            SolveOutcome::Feasible(m) => Some(m),
            SolveOutcome::Infeasible => None,
        }
    }
}

/// Result of a weighted solve, carrying the achieved total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightedOutcome {
    Feasible { matching: Matching, weight: u64 },
    Infeasible,
}

impl WeightedOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, WeightedOutcome::Feasible { .. })
    }

    pub fn into_parts(self) -> Option<(Matching, u64)> {
        match self {
            WeightedOutcome::Feasible { matching, weight } => Some((matching, weight)),
            WeightedOutcome::Infeasible => None,
        }
    }
}

/// Answer to the distant-matching decision problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistantDecision {
    Yes { witness: Matching },
    No,
}

/// A spanning subgraph in which every vertex has degree exactly 2. In a
/// bipartite graph it decomposes into vertex-disjoint even cycles of
/// length >= 4 and hence into two edge-disjoint perfect matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    edges: Vec<(usize, usize)>,
    n: usize,
}

impl TwoFactor {
    /// Edges of the 2-factor, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Deterministic cycle decomposition: each cycle starts at its
    /// lowest-numbered U-vertex and walks along that vertex's
    /// lexicographically smaller incident edge first. Edges are listed in
    /// walk order, so they alternate between the two matchings of the
    /// cycle.
    pub fn cycles(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.n;
        let mut u_adj = vec![Vec::with_capacity(2); n];
        let mut v_adj = vec![Vec::with_capacity(2); n];
        for &(u, v) in &self.edges {
            u_adj[u].push(v);
            v_adj[v].push(u);
        }
        // Sorted-edge input keeps these ascending per vertex.
        let other = |pair: &[usize], not: usize| {
            if pair[0] == not {
                pair[1]
            } else {
                pair[0]
            }
        };

        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = u_adj[start][0];
            cycle.push((start, v));
            visited[start] = true;
            loop {
                let u = other(&v_adj[v], cycle.last().unwrap().0);
                cycle.push((u, v));
                if u == start {
                    break;
                }
                visited[u] = true;
                v = other(&u_adj[u], v);
                cycle.push((u, v));
            }
            cycles.push(cycle);
        }
        cycles
    }
}

/// Finds a perfect matching if one exists; deterministic, returning the
/// lexicographically smallest one.
pub fn find_perfect_matching(g: &BipartiteGraph) -> SolveOutcome {
    match lex_smallest_perfect_matching(g) {
        Some(assign) => SolveOutcome::Feasible(Matching::from_assign(assign)),
        None => SolveOutcome::Infeasible,
    }
}

fn lex_smallest_perfect_matching(g: &BipartiteGraph) -> Option<Vec<usize>> {
    let n = g.n();
    let mm = maximum_matching(g);
    if !mm.is_perfect(n) {
        return None;
    }
    let mut u_match = mm.u_match;
    let mut v_match = mm.v_match;
    let mut fixed_v = vec![false; n];
    let mut visited = vec![false; n];

    // Fix U-vertices in index order, each to the smallest neighbor that
    // still leaves the rest perfectly matchable. A candidate below the
    // current partner is viable iff the displaced owner can be rerouted
    // to the partner this vertex frees up.
    for u in 0..n {
        for &v in g.neighbors(u) {
            if v >= u_match[u] {
                break;
            }
            if fixed_v[v] {
                continue;
            }
            let freed = u_match[u];
            let displaced = v_match[v];
            u_match[u] = v;
            v_match[v] = u;
            u_match[displaced] = UNMATCHED;
            v_match[freed] = UNMATCHED;
            visited.fill(false);
            visited[u] = true;
            visited[displaced] = true;
            if reroute(g, displaced, &mut u_match, &mut v_match, &fixed_v, &mut visited) {
                break;
            }
            u_match[displaced] = v;
            v_match[v] = displaced;
            u_match[u] = freed;
            v_match[freed] = u;
        }
        fixed_v[u_match[u]] = true;
    }
    Some(u_match)
}

fn reroute(
    g: &BipartiteGraph,
    u: usize,
    u_match: &mut [usize],
    v_match: &mut [usize],
    fixed_v: &[bool],
    visited: &mut [bool],
) -> bool {
    for &v in g.neighbors(u) {
        if fixed_v[v] {
            continue;
        }
        let owner = v_match[v];
        if owner == UNMATCHED {
            u_match[u] = v;
            v_match[v] = u;
            return true;
        }
        if !visited[owner] {
            visited[owner] = true;
            if reroute(g, owner, u_match, v_match, fixed_v, visited) {
                u_match[u] = v;
                v_match[v] = u;
                return true;
            }
        }
    }
    false
}

/// Among all perfect matchings, returns one of minimum total weight (and
/// the weight), breaking ties toward the lexicographically smallest
/// assignment. Maximum-weight queries are served by complementing weights
/// against their maximum.
pub fn min_weight_perfect_matching(g: &BipartiteGraph, w: &EdgeWeighting) -> WeightedOutcome {
    let n = g.n();
    assert_eq!(
        w.len(),
        g.edge_count(),
        "weighting domain must equal the edge set"
    );
    if n == 0 {
        return WeightedOutcome::Feasible {
            matching: Matching::from_assign(Vec::new()),
            weight: 0,
        };
    }
    if !maximum_matching(g).is_perfect(n) {
        return WeightedOutcome::Infeasible;
    }

    // Dense matrix with a sentinel on non-edges large enough that any
    // matching through one costs more than every real matching.
    let max_w = w.max_weight();
    let big: i64 = (n as u64)
        .checked_mul(max_w)
        .and_then(|x| x.checked_add(1))
        .and_then(|x| i64::try_from(x).ok())
        .expect("edge weights too large for exact arithmetic");
    let mut cost = vec![vec![big; n]; n];
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        cost[u][v] = w.get(idx) as i64;
    }

    let (mut current, total) = solve_assignment(&cost);
    debug_assert!(total < big, "feasible instance must avoid the sentinel");

    // Lexicographic refinement: fix each U-vertex, in order, to the
    // smallest neighbor through which the optimal total is still
    // attainable.
    let mut col_active = vec![true; n];
    let mut remaining = total;
    for u in 0..n {
        for &v in g.neighbors(u) {
            if v >= current[u] {
                break;
            }
            if !col_active[v] {
                continue;
            }
            let sub_cols: Vec<usize> = (0..n)
                .filter(|&c| col_active[c] && c != v)
                .collect();
            let sub: Vec<Vec<i64>> = ((u + 1)..n)
                .map(|r| sub_cols.iter().map(|&c| cost[r][c]).collect())
                .collect();
            let (sub_assign, sub_total) = solve_assignment(&sub);
            if sub_total + cost[u][v] == remaining {
                current[u] = v;
                for (r, &c) in sub_assign.iter().enumerate() {
                    current[u + 1 + r] = sub_cols[*&c];
                }
                break;
            }
        }
        col_active[current[u]] = false;
        remaining -= cost[u][current[u]];
    }

    let matching = Matching::from_assign(current);
    let weight = w.matching_weight(g, &matching);
    debug_assert_eq!(weight as i64, total);
    WeightedOutcome::Feasible { matching, weight }
}

/// Most distant perfect matching from `m1`: weights edges of `m1` with 1,
/// everything else 0, and minimizes the overlap. Returns the matching and
/// `d_star = n - |m1 ∩ m2|`, the maximum achievable distance from `m1`.
pub fn most_distant_matching(
    g: &BipartiteGraph,
    m1: &Matching,
) -> Result<(Matching, usize), Error> {
    require_valid(g, m1)?;
    let w = EdgeWeighting::matching_indicator(g, m1);
    match min_weight_perfect_matching(g, &w) {
        WeightedOutcome::Feasible { matching, weight } => {
            Ok((matching, g.n() - weight as usize))
        }
        // m1 itself is a perfect matching, so this cannot happen.
        WeightedOutcome::Infeasible => Err(Error::Infeasible),
    }
}

/// Does a perfect matching differing from `m1` on at least `d` assignments
/// exist? Yes-answers carry a witness.
pub fn distant_matching_decision(
    g: &BipartiteGraph,
    m1: &Matching,
    d: usize,
) -> Result<DistantDecision, Error> {
    if d > g.n() {
        return Err(Error::DistanceOutOfRange { d, n: g.n() });
    }
    require_valid(g, m1)?;
    if d == 0 {
        return Ok(DistantDecision::Yes {
            witness: m1.clone(),
        });
    }
    let (witness, d_star) = most_distant_matching(g, m1)?;
    if d_star >= d {
        Ok(DistantDecision::Yes { witness })
    } else {
        Ok(DistantDecision::No)
    }
}

/// A perfect matching sharing no edge with `m1`, found by removing the
/// edges of `m1` and solving feasibility on the residual graph.
/// Equivalent to the distance-n decision problem for this `m1`.
pub fn fully_disjoint_from(g: &BipartiteGraph, m1: &Matching) -> Result<SolveOutcome, Error> {
    require_valid(g, m1)?;
    Ok(find_perfect_matching(&g.without_matching(m1)))
}

/// Degree-constrained subgraph computation: a spanning subgraph with every
/// vertex of degree exactly 2, or `None` if none exists. Realized as a
/// flow problem: source -> U with capacity 2, unit edges, V -> sink with
/// capacity 2; feasible iff the max flow saturates at `2n`.
pub fn two_factor(g: &BipartiteGraph) -> Option<TwoFactor> {
    let n = g.n();
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2);
    for u in 0..n {
        net.add_edge(source, u, 2);
    }
    let edge_ids: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| net.add_edge(u, n + v, 1))
        .collect();
    for v in 0..n {
        net.add_edge(n + v, sink, 2);
    }
    if net.max_flow(source, sink) as usize != 2 * n {
        return None;
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .zip(&edge_ids)
        .filter(|(_, &id)| net.flow_on(id) == 1)
        .map(|(&e, _)| e)
        .collect();
    Some(TwoFactor { edges, n })
}

/// Two perfect matchings with no shared edge (distance exactly n), or
/// `None` iff no such pair exists. The 2-factor is decomposed into even
/// cycles and each cycle's edges are 2-colored alternately.
pub fn disjoint_pair(g: &BipartiteGraph) -> Option<(Matching, Matching)> {
    let factor = two_factor(g)?;
    let n = g.n();
    let mut first = vec![UNMATCHED; n];
    let mut second = vec![UNMATCHED; n];
    for cycle in factor.cycles() {
        for (pos, &(u, v)) in cycle.iter().enumerate() {
            if pos % 2 == 0 {
                first[u] = v;
            } else {
                second[u] = v;
            }
        }
    }
    Some((
        Matching::from_assign(first),
        Matching::from_assign(second),
    ))
}

fn require_valid(g: &BipartiteGraph, m: &Matching) -> Result<(), Error> {
    let violations = validate_matching(g, m);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidMatching { violations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::distance;
    use crate::instances;
    use crate::sampling::enumerate_matchings;

    fn matching(assign: &[usize]) -> Matching {
        Matching::from_assign(assign.to_vec())
    }

    #[test]
    fn find_matching_prefers_lexicographic_order() {
        let out = find_perfect_matching(&instances::complete(2));
        assert_eq!(out.matching().unwrap().assign(), &[0, 1]);
        let out = find_perfect_matching(&instances::complete(4));
        assert_eq!(out.matching().unwrap().assign(), &[0, 1, 2, 3]);
    }

    #[test]
    fn find_matching_on_unique_instance() {
        let out = find_perfect_matching(&instances::path(2));
        assert_eq!(out.matching().unwrap().assign(), &[0, 1]);
    }

    #[test]
    fn find_matching_infeasible_star() {
        let g = BipartiteGraph::new(2, [(0, 0), (1, 0)]).unwrap();
        assert_eq!(find_perfect_matching(&g), SolveOutcome::Infeasible);
    }

    #[test]
    fn find_matching_agrees_with_enumeration_head() {
        // Lexicographically smallest matching == first enumerated one.
        for g in [
            instances::complete(3),
            instances::skewed_triple(),
            instances::even_cycle(4),
        ] {
            let first = &enumerate_matchings(&g, 1000).matchings[0];
            assert_eq!(find_perfect_matching(&g).matching().unwrap(), first);
        }
    }

    #[test]
    fn min_weight_uniform_zero() {
        let g = instances::complete(3);
        let out = min_weight_perfect_matching(&g, &EdgeWeighting::zero(&g));
        let (m, weight) = out.into_parts().unwrap();
        assert_eq!(weight, 0);
        assert_eq!(m.assign(), &[0, 1, 2]); // lex tie-break among all-zero
    }

    #[test]
    fn min_weight_avoids_heavy_diagonal() {
        let g = instances::complete(2);
        let w = EdgeWeighting::from_fn(&g, |u, v| u64::from(u == v));
        let (m, weight) = min_weight_perfect_matching(&g, &w).into_parts().unwrap();
        assert_eq!(weight, 0);
        assert_eq!(m.assign(), &[1, 0]);
    }

    #[test]
    fn min_weight_brute_force_confirms_overlap() {
        let g = instances::skewed_triple();
        let diag = matching(&[0, 1, 2]);
        let w = EdgeWeighting::matching_indicator(&g, &diag);
        let (m, weight) = min_weight_perfect_matching(&g, &w).into_parts().unwrap();
        // Brute force over the 3 matchings: minimum overlap with the
        // diagonal is 1, achieved by both others.
        let best = enumerate_matchings(&g, 10)
            .matchings
            .iter()
            .map(|c| w.matching_weight(&g, c))
            .min()
            .unwrap();
        assert_eq!(weight, best);
        assert_eq!(weight, 1);
        assert_eq!(m.assign(), &[0, 2, 1]); // lex-smaller of the two optima
    }

    #[test]
    fn min_weight_infeasible_is_a_status() {
        let g = BipartiteGraph::new(2, [(0, 0), (1, 0)]).unwrap();
        let w = EdgeWeighting::zero(&g);
        assert_eq!(
            min_weight_perfect_matching(&g, &w),
            WeightedOutcome::Infeasible
        );
    }

    #[test]
    fn most_distant_on_unique_matching() {
        let g = instances::path(2);
        let m1 = matching(&[0, 1]);
        let (m2, d_star) = most_distant_matching(&g, &m1).unwrap();
        assert_eq!(m2, m1);
        assert_eq!(d_star, 0);
    }

    #[test]
    fn most_distant_on_k22() {
        let g = instances::complete(2);
        let (m2, d_star) = most_distant_matching(&g, &matching(&[0, 1])).unwrap();
        assert_eq!(m2.assign(), &[1, 0]);
        assert_eq!(d_star, 2);
    }

    #[test]
    fn most_distant_from_diagonal_of_skewed_triple() {
        let g = instances::skewed_triple();
        let (m2, d_star) = most_distant_matching(&g, &matching(&[0, 1, 2])).unwrap();
        assert_eq!(d_star, 2);
        // Both non-diagonal matchings are at distance 2; tie-breaking
        // picks the lexicographically smaller.
        assert_eq!(m2.assign(), &[0, 2, 1]);
    }

    #[test]
    fn most_distant_rejects_invalid_m1() {
        let g = instances::path(2);
        let err = most_distant_matching(&g, &matching(&[1, 0])).unwrap_err();
        assert!(matches!(err, Error::InvalidMatching { .. }));
    }

    #[test]
    fn weight_trick_invariant() {
        // Total indicator weight of the result equals the overlap.
        let g = instances::skewed_triple();
        for m1 in enumerate_matchings(&g, 10).matchings {
            let (m2, d_star) = most_distant_matching(&g, &m1).unwrap();
            let overlap = m1
                .pairs()
                .filter(|&(u, v)| m2.contains(u, v))
                .count();
            assert_eq!(d_star, g.n() - overlap);
            assert_eq!(distance(&m1, &m2).unwrap(), d_star);
        }
    }

    #[test]
    fn decision_zero_threshold_is_trivially_yes() {
        let g = instances::path(2);
        let m1 = matching(&[0, 1]);
        assert_eq!(
            distant_matching_decision(&g, &m1, 0).unwrap(),
            DistantDecision::Yes {
                witness: m1.clone()
            }
        );
    }

    #[test]
    fn decision_thresholds_on_skewed_triple() {
        let g = instances::skewed_triple();
        let diag = matching(&[0, 1, 2]);
        assert_eq!(
            distant_matching_decision(&g, &diag, 3).unwrap(),
            DistantDecision::No
        );
        match distant_matching_decision(&g, &matching(&[0, 2, 1]), 3).unwrap() {
            DistantDecision::Yes { witness } => assert_eq!(witness.assign(), &[1, 0, 2]),
            DistantDecision::No => panic!("expected a witness"),
        }
    }

    #[test]
    fn decision_rejects_out_of_range_threshold() {
        let g = instances::complete(2);
        let err = distant_matching_decision(&g, &matching(&[0, 1]), 3).unwrap_err();
        assert_eq!(err, Error::DistanceOutOfRange { d: 3, n: 2 });
    }

    #[test]
    fn fully_disjoint_examples() {
        let g = instances::complete(2);
        let out = fully_disjoint_from(&g, &matching(&[0, 1])).unwrap();
        assert_eq!(out.matching().unwrap().assign(), &[1, 0]);

        let g = instances::path(2);
        let out = fully_disjoint_from(&g, &matching(&[0, 1])).unwrap();
        assert_eq!(out, SolveOutcome::Infeasible);

        // Removing the diagonal leaves two U-vertices competing for one V.
        let g = instances::skewed_triple();
        let out = fully_disjoint_from(&g, &matching(&[0, 1, 2])).unwrap();
        assert_eq!(out, SolveOutcome::Infeasible);
    }

    #[test]
    fn two_factor_on_k22_uses_all_edges() {
        let f = two_factor(&instances::complete(2)).unwrap();
        assert_eq!(f.edges(), instances::complete(2).edges());
    }

    #[test]
    fn two_factor_on_cycle_is_the_cycle() {
        let g = instances::even_cycle(4);
        let f = two_factor(&g).unwrap();
        assert_eq!(f.edges(), g.edges());
        let cycles = f.cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 8);
    }

    #[test]
    fn two_factor_infeasible_on_degree_one_vertex() {
        assert!(two_factor(&instances::path(2)).is_none());
    }

    #[test]
    fn two_factor_degrees_are_exactly_two() {
        let f = two_factor(&instances::complete(4)).unwrap();
        let mut du = vec![0usize; 4];
        let mut dv = vec![0usize; 4];
        for &(u, v) in f.edges() {
            du[u] += 1;
            dv[v] += 1;
        }
        assert!(du.iter().chain(&dv).all(|&d| d == 2));
    }

    #[test]
    fn disjoint_pair_on_k22_matches_expected_orientation() {
        let (m1, m2) = disjoint_pair(&instances::complete(2)).unwrap();
        assert_eq!(m1.assign(), &[0, 1]);
        assert_eq!(m2.assign(), &[1, 0]);
    }

    #[test]
    fn disjoint_pair_on_cycle_has_distance_n() {
        let g = instances::even_cycle(4);
        let (m1, m2) = disjoint_pair(&g).unwrap();
        assert_eq!(distance(&m1, &m2).unwrap(), 4);
    }

    #[test]
    fn disjoint_pair_on_skewed_triple() {
        let g = instances::skewed_triple();
        let (m1, m2) = disjoint_pair(&g).unwrap();
        let mut pair = [m1.assign().to_vec(), m2.assign().to_vec()];
        pair.sort();
        assert_eq!(pair, [vec![0, 2, 1], vec![1, 0, 2]]);
    }

    #[test]
    fn disjoint_pair_infeasible_when_unique_matching() {
        assert!(disjoint_pair(&instances::path(2)).is_none());
    }

    #[test]
    fn empty_graph_edge_cases() {
        let g = instances::complete(0);
        assert!(find_perfect_matching(&g).is_feasible());
        let f = two_factor(&g).unwrap();
        assert!(f.edges().is_empty());
        let (m1, m2) = disjoint_pair(&g).unwrap();
        assert!(m1.is_empty() && m2.is_empty());
    }
}
