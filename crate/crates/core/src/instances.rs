//! Generators for standard test instances.

use rand::Rng;

use crate::graph::BipartiteGraph;

/// Complete bipartite graph `K_{n,n}`: `n!` perfect matchings.
pub fn complete(n: usize) -> BipartiteGraph {
    BipartiteGraph::new(n, (0..n).flat_map(|u| (0..n).map(move |v| (u, v))))
        .expect("complete graph edges are valid")
}

/// The cycle `C_{2n}` as a bipartite instance on `(n, n)` vertices with
/// edges `(u_i, v_i)` and `(u_{i+1 mod n}, v_i)`. Exactly two perfect
/// matchings for `n >= 2`.
pub fn even_cycle(n: usize) -> BipartiteGraph {
    assert!(n >= 2, "a cycle needs at least 4 vertices");
    BipartiteGraph::new(n, (0..n).flat_map(|i| [(i, i), ((i + 1) % n, i)]))
        .expect("cycle edges are valid")
}

/// Path on `2n` vertices: edges `(u_i, v_i)` plus `(u_{i+1}, v_i)`.
/// Has exactly one perfect matching (the diagonal).
pub fn path(n: usize) -> BipartiteGraph {
    BipartiteGraph::new(
        n,
        (0..n).flat_map(|i| {
            std::iter::once((i, i)).chain((i + 1 < n).then_some((i + 1, i)))
        }),
    )
    .expect("path edges are valid")
}

/// `K_{3,3}` minus the edges `(u1, v3)` and `(u3, v1)`. It has exactly
/// three perfect matchings: the diagonal, which shares one edge with each
/// of the other two, and a fully disjoint pair. The smallest instance
/// where the most-distant iteration needs two improving steps and where a
/// badly chosen first matching blocks full disjointness even though a
/// disjoint pair exists.
pub fn skewed_triple() -> BipartiteGraph {
    BipartiteGraph::new(
        3,
        [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)],
    )
    .expect("fixture edges are valid")
}

/// Random bipartite graph: each of the `n^2` possible edges is included
/// independently with probability `p`.
pub fn random(n: usize, p: f64, rng: &mut impl Rng) -> BipartiteGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    BipartiteGraph::new(n, edges).expect("random edges are valid")
}
