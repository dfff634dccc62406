//! Hopcroft-Karp maximum bipartite matching.

use std::collections::VecDeque;

use crate::graph::BipartiteGraph;

const UNMATCHED: usize = usize::MAX;

pub(crate) struct MaxMatching {
    pub size: usize,
    /// U-index -> V-index, `usize::MAX` when unmatched.
    pub u_match: Vec<usize>,
    /// V-index -> U-index, `usize::MAX` when unmatched.
    pub v_match: Vec<usize>,
}

impl MaxMatching {
    pub fn is_perfect(&self, n: usize) -> bool {
        self.size == n
    }
}

/// Maximum matching via repeated BFS layering and shortest augmenting
/// paths. Deterministic: adjacency lists are sorted, so ties resolve the
/// same way on every run.
pub(crate) fn maximum_matching(g: &BipartiteGraph) -> MaxMatching {
    let n = g.n();
    let mut u_match = vec![UNMATCHED; n];
    let mut v_match = vec![UNMATCHED; n];
    let mut size = 0;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();

    loop {
        // BFS from all exposed U-vertices to build the layer graph.
        queue.clear();
        for u in 0..n {
            if u_match[u] == UNMATCHED {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found_free_v = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let u2 = v_match[v];
                if u2 == UNMATCHED {
                    found_free_v = true;
                } else if dist[u2] == usize::MAX {
                    dist[u2] = dist[u] + 1;
                    queue.push_back(u2);
                }
            }
        }
        if !found_free_v {
            break;
        }
        for u in 0..n {
            if u_match[u] == UNMATCHED && augment(g, u, &mut u_match, &mut v_match, &mut dist) {
                size += 1;
            }
        }
    }

    MaxMatching {
        size,
        u_match,
        v_match,
    }
}

fn augment(
    g: &BipartiteGraph,
    u: usize,
    u_match: &mut [usize],
    v_match: &mut [usize],
    dist: &mut [usize],
) -> bool {
    let d = std::mem::replace(&mut dist[u], usize::MAX);
    for &v in g.neighbors(u) {
        let u2 = v_match[v];
        let reachable = u2 == UNMATCHED
            || (dist[u2] == d + 1 && augment(g, u2, u_match, v_match, dist));
        if reachable {
            u_match[u] = v;
            v_match[v] = u;
            return true;
        }
    }
    false
}
