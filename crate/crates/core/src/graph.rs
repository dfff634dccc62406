//! Instance and solution data model: bipartite graphs, perfect matchings,
//! edge weightings, the separation distance and file (de)serialization.
//!
//! Vertex indices are 0-based in memory and 1-based in files.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An unweighted bipartite graph on `(n, n)` vertices.
///
/// Edges are stored lexicographically sorted and duplicate-free, so two
/// graphs compare equal iff they have the same vertex count and edge set.
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from 0-based `(u, v)` pairs. Rejects out-of-range
    /// endpoints and duplicate edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        let mut sorted: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("edge ({}, {}) out of range for n = {}", u + 1, v + 1, n),
                });
            }
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line: 0,
                message: format!("duplicate edge ({}, {})", w[0].0 + 1, w[0].1 + 1),
            });
        }
        Ok(Self::from_sorted(n, sorted))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
        }
        BipartiteGraph { n, edges, adj }
    }

    /// Vertex count per side.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of U-vertex `u`, ascending.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `(u, v)` in the sorted edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u, v)).ok()
    }

    /// The graph with the edges of `m` removed.
    pub fn without_matching(&self, m: &Matching) -> BipartiteGraph {
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| m.assign().get(u) != Some(&v))
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Parses the plain-text graph format.
    ///
    /// Lines starting with `#` are comments. The first data line is
    /// `n m`, followed by `m` lines `u v` with 1-based endpoints.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut data_lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = data_lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(header, line_no, "header must be \"n m\"")?;

        let mut edges: Vec<(usize, usize, usize)> = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = data_lines.next().ok_or(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {} edge lines, found {}", m, edges.len()),
            })?;
            let (u, v) = parse_pair(line, line_no, "edge line must be \"u v\"")?;
            if u == 0 || u > n || v == 0 || v > n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("edge ({}, {}) out of range for n = {}", u, v, n),
                });
            }
            edges.push((u - 1, v - 1, line_no));
        }
        if let Some((line_no, _)) = data_lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: "trailing data after the declared edge list".into(),
            });
        }

        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &(u, v, line_no) in &edges {
            if !seen.insert((u, v)) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate edge ({}, {})", u + 1, v + 1),
                });
            }
        }
        let mut sorted: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        sorted.sort_unstable();
        Ok(Self::from_sorted(n, sorted))
    }

    /// Renders the graph in the format accepted by [`BipartiteGraph::parse`].
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

fn parse_pair(line: &str, line_no: usize, what: &str) -> Result<(usize, usize), Error> {
    let mut it = line.split_whitespace();
    let err = || Error::Parse {
        line: line_no,
        message: format!("{}, got {:?}", what, line),
    };
    let a = it.next().ok_or_else(err)?.parse().map_err(|_| err())?;
    let b = it.next().ok_or_else(err)?.parse().map_err(|_| err())?;
    if it.next().is_some() {
        return Err(err());
    }
    Ok((a, b))
}

/// A candidate perfect matching, stored as a total map from U-indices to
/// V-indices.
///
/// The type itself only fixes the shape (one V-index per U-index); whether
/// it is a valid perfect matching of a particular graph is checked by
/// [`validate_matching`]. Lexicographic comparison of the underlying
/// assignment arrays gives the canonical order used for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    assign: Vec<usize>,
}

impl Matching {
    pub fn from_assign(assign: Vec<usize>) -> Self {
        Matching { assign }
    }

    /// Builds a matching from 0-based `(u, v)` pairs; every U-index in
    /// `[0, n)` must appear exactly once.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Option<Self> {
        let mut assign = vec![usize::MAX; n];
        for (u, v) in pairs {
            if u >= n || assign[u] != usize::MAX {
                return None;
            }
            assign[u] = v;
        }
        assign
            .iter()
            .all(|&v| v != usize::MAX)
            .then_some(Matching { assign })
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    /// `(u, v)` pairs in U-index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.assign.iter().copied().enumerate()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.assign.get(u) == Some(&v)
    }
}

/// On-disk form of a matching: `{"n": 3, "pairs": [[1, 2], ...]}` with
/// 1-based vertex indices.
#[derive(Debug, Serialize, Deserialize)]
struct MatchingFile {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Parses the JSON matching format. Every U-index must appear exactly
    /// once; V-indices must be in range (collisions are left to
    /// [`validate_matching`]).
    pub fn parse(text: &str) -> Result<Self, Error> {
        let file: MatchingFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let bad = |message: String| Error::Parse { line: 0, message };
        if file.pairs.len() != file.n {
            return Err(bad(format!(
                "expected {} pairs, found {}",
                file.n,
                file.pairs.len()
            )));
        }
        let mut assign = vec![usize::MAX; file.n];
        for &(u, v) in &file.pairs {
            if u == 0 || u > file.n || v == 0 || v > file.n {
                return Err(bad(format!("pair [{}, {}] out of range", u, v)));
            }
            if assign[u - 1] != usize::MAX {
                return Err(bad(format!("vertex u{} assigned twice", u)));
            }
            assign[u - 1] = v - 1;
        }
        Ok(Matching { assign })
    }

    /// Renders the matching in the format accepted by [`Matching::parse`].
    pub fn serialize(&self) -> String {
        let file = MatchingFile {
            n: self.assign.len(),
            pairs: self.pairs().map(|(u, v)| (u + 1, v + 1)).collect(),
        };
        serde_json::to_string(&file).expect("matching serialization cannot fail")
    }
}

/// A single way a candidate matching fails to be a perfect matching of a
/// graph. Violations are diagnostics, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The assignment array length differs from the graph's `n`.
    WrongSize { expected: usize, got: usize },
    /// `assign[u]` is not a vertex of the graph.
    TargetOutOfRange { u: usize, v: usize },
    /// `(u, v)` is not an edge of the graph.
    NonEdge { u: usize, v: usize },
    /// Two U-vertices share the V-vertex `v`.
    DuplicateTarget { v: usize, first_u: usize, second_u: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::WrongSize { expected, got } => {
                write!(f, "matching covers {} U-vertices, graph has {}", got, expected)
            }
            Violation::TargetOutOfRange { u, v } => {
                write!(f, "u{} is assigned to v{} which is out of range", u + 1, v + 1)
            }
            Violation::NonEdge { u, v } => {
                write!(f, "(u{}, v{}) is not an edge", u + 1, v + 1)
            }
            Violation::DuplicateTarget { v, first_u, second_u } => {
                write!(f, "v{} used by both u{} and u{}", v + 1, first_u + 1, second_u + 1)
            }
        }
    }
}

/// Checks all perfect-matching invariants of `m` against `g` and lists
/// every violation. An empty list means `m` is a perfect matching of `g`.
pub fn validate_matching(g: &BipartiteGraph, m: &Matching) -> Vec<Violation> {
    let mut violations = Vec::new();
    if m.len() != g.n() {
        violations.push(Violation::WrongSize {
            expected: g.n(),
            got: m.len(),
        });
        return violations;
    }
    let mut used_by = vec![usize::MAX; g.n()];
    for (u, v) in m.pairs() {
        if v >= g.n() {
            violations.push(Violation::TargetOutOfRange { u, v });
            continue;
        }
        if !g.has_edge(u, v) {
            violations.push(Violation::NonEdge { u, v });
        }
        if used_by[v] != usize::MAX {
            violations.push(Violation::DuplicateTarget {
                v,
                first_u: used_by[v],
                second_u: u,
            });
        } else {
            used_by[v] = u;
        }
    }
    violations
}

/// True iff `m` is a valid perfect matching of `g`.
pub fn is_perfect_matching(g: &BipartiteGraph, m: &Matching) -> bool {
    validate_matching(g, m).is_empty()
}

/// Separation distance: the number of U-vertices whose assigned partner
/// differs between the two matchings. For perfect matchings of the same
/// graph this lies in `{0, 2, 3, ..., n}` and equals `n` minus the number
/// of shared edges.
pub fn distance(a: &Matching, b: &Matching) -> Result<usize, Error> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.assign
        .iter()
        .zip(&b.assign)
        .filter(|(x, y)| x != y)
        .count())
}

/// A non-negative integer weight per edge, aligned with the graph's sorted
/// edge list. Used by the weight-modification reductions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    weights: Vec<u64>,
}

impl EdgeWeighting {
    /// Weight each edge of `g` with `f(u, v)`.
    pub fn from_fn(g: &BipartiteGraph, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        EdgeWeighting {
            weights: g.edges().iter().map(|&(u, v)| f(u, v)).collect(),
        }
    }

    pub fn zero(g: &BipartiteGraph) -> Self {
        Self::from_fn(g, |_, _| 0)
    }

    /// Weight 1 on the edges of `m`, 0 elsewhere.
    pub fn matching_indicator(g: &BipartiteGraph, m: &Matching) -> Self {
        Self::from_fn(g, |u, v| u64::from(m.contains(u, v)))
    }

    /// Weight of each edge = number of pool members that contain it.
    pub fn pool_overlap(g: &BipartiteGraph, members: &[Matching]) -> Self {
        Self::from_fn(g, |u, v| {
            members.iter().filter(|m| m.contains(u, v)).count() as u64
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of the edge at position `edge_index` in the graph's edge list.
    pub fn get(&self, edge_index: usize) -> u64 {
        self.weights[edge_index]
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Total weight of a matching (edges absent from the graph count 0).
    pub fn matching_weight(&self, g: &BipartiteGraph, m: &Matching) -> u64 {
        m.pairs()
            .filter_map(|(u, v)| g.edge_index(u, v))
            .map(|i| self.weights[i])
            .sum()
    }
}
