//! Dinic max-flow on small integer-capacity networks.

use std::collections::VecDeque;

struct Edge {
    to: usize,
    cap: u32,
}

pub(crate) struct FlowNetwork {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl FlowNetwork {
    pub fn new(node_count: usize) -> Self {
        FlowNetwork {
            adjacency: vec![Vec::new(); node_count],
            edges: Vec::new(),
        }
    }

    /// Adds a directed edge and its zero-capacity reverse; returns the
    /// edge id for later flow inspection.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: u32) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.edges.push(Edge { to: from, cap: 0 });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }

    /// Flow pushed through the forward edge `id`.
    pub fn flow_on(&self, id: usize) -> u32 {
        self.edges[id ^ 1].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> u32 {
        let mut total = 0;
        let mut level = vec![usize::MAX; self.adjacency.len()];
        let mut iter = vec![0usize; self.adjacency.len()];
        while self.bfs(source, sink, &mut level) {
            iter.fill(0);
            loop {
                let pushed = self.dfs(source, sink, u32::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
            level.fill(usize::MAX);
        }
        total
    }

    fn bfs(&self, source: usize, sink: usize, level: &mut [usize]) -> bool {
        level.fill(usize::MAX);
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.adjacency[v] {
                let e = &self.edges[id];
                if e.cap > 0 && level[e.to] == usize::MAX {
                    level[e.to] = level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        level[sink] != usize::MAX
    }

    fn dfs(
        &mut self,
        v: usize,
        sink: usize,
        budget: u32,
        level: &[usize],
        iter: &mut [usize],
    ) -> u32 {
        if v == sink {
            return budget;
        }
        while iter[v] < self.adjacency[v].len() {
            let id = self.adjacency[v][iter[v]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && level[to] == level[v] + 1 {
                let pushed = self.dfs(to, sink, budget.min(cap), level, iter);
                if pushed > 0 {
                    self.edges[id].cap -= pushed;
                    self.edges[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            iter[v] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_maxflow_instance() {
        let mut net = FlowNetwork::new(6);
        net.add_edge(0, 1, 16);
        net.add_edge(0, 2, 13);
        net.add_edge(1, 2, 10);
        net.add_edge(1, 3, 12);
        net.add_edge(2, 1, 4);
        net.add_edge(2, 4, 14);
        net.add_edge(3, 2, 9);
        net.add_edge(3, 5, 20);
        net.add_edge(4, 3, 7);
        net.add_edge(4, 5, 4);
        assert_eq!(net.max_flow(0, 5), 23);
    }

    #[test]
    fn disconnected_sink_gets_no_flow() {
        let mut net = FlowNetwork::new(3);
        net.add_edge(0, 1, 5);
        assert_eq!(net.max_flow(0, 2), 0);
    }
}
