//! Solution-space exploration: exhaustive enumeration on small instances
//! (the testing oracle for every solver), a Markov-chain sampler for
//! near-uniform draws, and the final random selection of a secret solution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diversity::MatchingPool;
use crate::error::Error;
use crate::graph::{BipartiteGraph, Matching};

/// All perfect matchings of a graph, or the first `limit` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Matchings in strictly increasing lexicographic order of their
    /// assignment arrays.
    pub matchings: Vec<Matching>,
    /// True iff the enumeration never exceeded the limit, i.e. the list is
    /// exhaustive.
    pub complete: bool,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.matchings.len()
    }
}

/// Enumerates perfect matchings by backtracking over U-vertices in index
/// order, trying V-candidates in index order. The output is complete iff
/// the count never exceeds `limit`; otherwise the first `limit` matchings
/// are returned with the complete flag unset.
///
/// Counting perfect matchings is #P-hard in general, hence the hard limit.
pub fn enumerate_matchings(g: &BipartiteGraph, limit: usize) -> EnumerationResult {
    let n = g.n();
    let mut used = vec![false; n];
    let mut assign = vec![0usize; n];
    let mut out = Vec::new();
    let mut complete = true;

    fn rec(
        g: &BipartiteGraph,
        u: usize,
        used: &mut [bool],
        assign: &mut [usize],
        out: &mut Vec<Matching>,
        limit: usize,
    ) -> bool {
        if u == g.n() {
            if out.len() == limit {
                return false;
            }
            out.push(Matching::from_assign(assign.to_vec()));
            return true;
        }
        for &v in g.neighbors(u) {
            if used[v] {
                continue;
            }
            used[v] = true;
            assign[u] = v;
            let keep_going = rec(g, u + 1, used, assign, out, limit);
            used[v] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }

    if !rec(g, 0, &mut used, &mut assign, &mut out, limit) {
        complete = false;
    }
    EnumerationResult {
        matchings: out,
        complete,
    }
}

/// Number of perfect matchings, or `OverLimit` once the count exceeds `limit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingCount {
    Exact(usize),
    OverLimit { limit: usize },
}

pub fn count_matchings(g: &BipartiteGraph, limit: usize) -> MatchingCount {
    let res = enumerate_matchings(g, limit);
    if res.complete {
        MatchingCount::Exact(res.count())
    } else {
        MatchingCount::OverLimit { limit }
    }
}

/// Hyperparameters of the sampling chain. The chain itself does not fix
/// them; the defaults are chosen so that desk-scale instances pass the
/// uniformity checks with margin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainConfig {
    pub seed: u64,
    pub burn_in_steps: u64,
    pub thinning_interval: u64,
    pub sample_count: usize,
}

impl ChainConfig {
    /// Defaults for a graph on `(n, n)` vertices:
    /// `burn_in = max(10000, n^4)`, `thinning = max(50, n^2)`.
    pub fn for_graph_size(n: usize, seed: u64) -> Self {
        let n = n as u64;
        ChainConfig {
            seed,
            burn_in_steps: 10_000u64.max(n.pow(4)),
            thinning_interval: 50u64.max(n.pow(2)),
            sample_count: 1,
        }
    }

    pub fn with_sample_count(mut self, sample_count: usize) -> Self {
        self.sample_count = sample_count;
        self
    }
}

/// Random walk over perfect and near-perfect matchings.
///
/// Each step picks an edge `(u, v)` uniformly at random:
/// from a perfect state, an edge of the matching is dropped; from a
/// near-perfect state, the edge is added when both endpoints are exposed,
/// rotated in when exactly one endpoint is exposed, and the step holds
/// otherwise. Every transition has probability `1/m` and is its own
/// reverse, so the stationary distribution is uniform over the state
/// space; conditioning on perfect states yields the uniform distribution
/// over perfect matchings. Mixing is only guaranteed fast on dense graphs.
struct Chain<'g> {
    g: &'g BipartiteGraph,
    assign: Vec<Option<usize>>,
    rassign: Vec<Option<usize>>,
    size: usize,
}

impl<'g> Chain<'g> {
    fn start_from(g: &'g BipartiteGraph, m: &Matching) -> Self {
        let mut rassign = vec![None; g.n()];
        for (u, v) in m.pairs() {
            rassign[v] = Some(u);
        }
        Chain {
            g,
            assign: m.assign().iter().map(|&v| Some(v)).collect(),
            rassign,
            size: g.n(),
        }
    }

    fn is_perfect(&self) -> bool {
        self.size == self.g.n()
    }

    fn step(&mut self, rng: &mut impl Rng) {
        let (u, v) = self.g.edges()[rng.gen_range(0..self.g.edge_count())];
        if self.is_perfect() {
            if self.assign[u] == Some(v) {
                self.assign[u] = None;
                self.rassign[v] = None;
                self.size -= 1;
            }
        } else {
            match (self.assign[u], self.rassign[v]) {
                (None, None) => {
                    self.assign[u] = Some(v);
                    self.rassign[v] = Some(u);
                    self.size += 1;
                }
                (None, Some(u2)) => {
                    // u exposed, v matched to u2: rotate.
                    self.assign[u2] = None;
                    self.assign[u] = Some(v);
                    self.rassign[v] = Some(u);
                }
                (Some(v2), None) => {
                    // v exposed, u matched to v2: rotate.
                    self.rassign[v2] = None;
                    self.assign[u] = Some(v);
                    self.rassign[v] = Some(u);
                }
                (Some(_), Some(_)) => {} // hold
            }
        }
        debug_assert!(self.state_invariant_holds());
    }

    /// Perfect, or near-perfect with exactly one exposed vertex per side,
    /// with consistent forward/backward maps over actual edges.
    fn state_invariant_holds(&self) -> bool {
        let n = self.g.n();
        let exposed_u = self.assign.iter().filter(|a| a.is_none()).count();
        let exposed_v = self.rassign.iter().filter(|a| a.is_none()).count();
        if self.size + exposed_u != n || exposed_u != exposed_v || exposed_u > 1 {
            return false;
        }
        self.assign.iter().enumerate().all(|(u, a)| match a {
            Some(v) => self.g.has_edge(u, *v) && self.rassign[*v] == Some(u),
            None => true,
        })
    }

    fn matching(&self) -> Matching {
        debug_assert!(self.is_perfect());
        Matching::from_assign(self.assign.iter().map(|v| v.unwrap()).collect())
    }
}

/// Draws `cfg.sample_count` perfect matchings from the chain: after
/// `burn_in_steps`, the state is recorded at every `thinning_interval`-th
/// step whenever it is perfect. Deterministic given the seed.
///
/// Fails with [`Error::SampleBudgetExhausted`] when fewer than
/// `sample_count` matchings were collected within
/// `1000 * sample_count * thinning_interval` post-burn-in steps.
pub fn mcmc_sample(g: &BipartiteGraph, cfg: &ChainConfig) -> Result<Vec<Matching>, Error> {
    let start = crate::solve::find_perfect_matching(g)
        .into_matching()
        .ok_or(Error::Infeasible)?;
    if g.n() == 0 || g.edge_count() == 0 {
        // No edges to walk on; the unique (empty) matching is the only state.
        return Ok(vec![start; cfg.sample_count]);
    }

    let mut chain = Chain::start_from(g, &start);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.burn_in_steps {
        chain.step(&mut rng);
    }

    let budget = 1000u64
        .saturating_mul(cfg.sample_count as u64)
        .saturating_mul(cfg.thinning_interval);
    let mut samples = Vec::with_capacity(cfg.sample_count);
    let mut steps_used = 0u64;
    while samples.len() < cfg.sample_count {
        if steps_used + cfg.thinning_interval > budget {
            return Err(Error::SampleBudgetExhausted {
                collected: samples.len(),
                requested: cfg.sample_count,
                budget,
            });
        }
        for _ in 0..cfg.thinning_interval {
            chain.step(&mut rng);
        }
        steps_used += cfg.thinning_interval;
        if chain.is_perfect() {
            samples.push(chain.matching());
        }
    }
    Ok(samples)
}

/// Uniform choice over the pool members, deterministic given the seed.
pub fn select_secret(pool: &MatchingPool, seed: u64) -> Result<Matching, Error> {
    if pool.members().is_empty() {
        return Err(Error::EmptyPool);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = rng.gen_range(0..pool.members().len());
    Ok(pool.members()[idx].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{distance, is_perfect_matching, validate_matching};
    use crate::instances;

    #[test]
    fn enumerate_k33_is_complete() {
        let res = enumerate_matchings(&instances::complete(3), 10);
        assert!(res.complete);
        assert_eq!(res.count(), 6);
    }

    #[test]
    fn enumerate_skewed_triple() {
        let g = instances::skewed_triple();
        let res = enumerate_matchings(&g, 10);
        assert!(res.complete);
        let assigns: Vec<&[usize]> = res.matchings.iter().map(|m| m.assign()).collect();
        assert_eq!(assigns, vec![&[0, 1, 2][..], &[0, 2, 1], &[1, 0, 2]]);
    }

    #[test]
    fn enumerate_truncates_at_limit() {
        let res = enumerate_matchings(&instances::complete(4), 10);
        assert!(!res.complete);
        assert_eq!(res.count(), 10);
    }

    #[test]
    fn enumerate_exactly_at_limit_is_complete() {
        let res = enumerate_matchings(&instances::complete(3), 6);
        assert!(res.complete);
        assert_eq!(res.count(), 6);
    }

    #[test]
    fn enumeration_is_lexicographically_increasing() {
        let res = enumerate_matchings(&instances::complete(4), 100);
        assert!(res.matchings.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_graph_has_one_empty_matching() {
        let g = instances::complete(0);
        let res = enumerate_matchings(&g, 10);
        assert!(res.complete);
        assert_eq!(res.count(), 1);
        assert!(res.matchings[0].is_empty());
    }

    #[test]
    fn count_matchings_small_instances() {
        assert_eq!(
            count_matchings(&instances::complete(2), 10),
            MatchingCount::Exact(2)
        );
        assert_eq!(
            count_matchings(&instances::path(2), 10),
            MatchingCount::Exact(1)
        );
        assert_eq!(
            count_matchings(&instances::even_cycle(4), 10),
            MatchingCount::Exact(2)
        );
        assert_eq!(
            count_matchings(&instances::complete(4), 10),
            MatchingCount::OverLimit { limit: 10 }
        );
    }

    #[test]
    fn unique_matching_sampled_every_time() {
        let g = instances::path(2);
        let cfg = ChainConfig::for_graph_size(2, 3).with_sample_count(25);
        let samples = mcmc_sample(&g, &cfg).unwrap();
        assert_eq!(samples.len(), 25);
        let only = &enumerate_matchings(&g, 10).matchings[0];
        assert!(samples.iter().all(|s| s == only));
    }

    #[test]
    fn samples_are_valid_matchings() {
        let g = instances::complete(3);
        let cfg = ChainConfig::for_graph_size(3, 5).with_sample_count(200);
        for s in mcmc_sample(&g, &cfg).unwrap() {
            assert!(validate_matching(&g, &s).is_empty());
        }
    }

    #[test]
    fn sampler_rejects_infeasible_graph() {
        let g = BipartiteGraph::new(2, [(0, 0), (1, 0)]).unwrap();
        let cfg = ChainConfig::for_graph_size(2, 1);
        assert_eq!(mcmc_sample(&g, &cfg).unwrap_err(), Error::Infeasible);
    }

    #[test]
    fn sampler_is_deterministic_given_seed() {
        let g = instances::complete(4);
        let cfg = ChainConfig::for_graph_size(4, 11).with_sample_count(50);
        assert_eq!(mcmc_sample(&g, &cfg).unwrap(), mcmc_sample(&g, &cfg).unwrap());
    }

    #[test]
    fn k22_sampling_is_near_uniform() {
        let g = instances::complete(2);
        let cfg = ChainConfig::for_graph_size(2, 1).with_sample_count(10_000);
        let samples = mcmc_sample(&g, &cfg).unwrap();
        let identity = Matching::from_assign(vec![0, 1]);
        let hits = samples.iter().filter(|s| **s == identity).count() as f64;
        let freq = hits / samples.len() as f64;
        // TV distance to uniform over the two matchings.
        assert!((freq - 0.5).abs() <= 0.05, "freq = {}", freq);
    }

    #[test]
    fn select_secret_uniform_and_deterministic() {
        let g = instances::skewed_triple();
        let members = enumerate_matchings(&g, 10).matchings;
        let pool = MatchingPool::new(&g, members.clone()).unwrap();

        assert_eq!(
            select_secret(&pool, 9).unwrap(),
            select_secret(&pool, 9).unwrap()
        );

        let mut counts = [0usize; 3];
        for seed in 0..3000u64 {
            let chosen = select_secret(&pool, seed).unwrap();
            let idx = members.iter().position(|m| *m == chosen).unwrap();
            counts[idx] += 1;
        }
        assert_eq!(counts.iter().sum::<usize>(), 3000);
        for &c in &counts {
            assert!((850..=1150).contains(&c), "counts = {:?}", counts);
        }
    }

    #[test]
    fn select_secret_rejects_empty_pool() {
        let g = instances::complete(0);
        let pool = MatchingPool::new(&g, vec![]).unwrap();
        assert_eq!(select_secret(&pool, 0).unwrap_err(), Error::EmptyPool);
    }

    #[test]
    fn singleton_pool_always_selected() {
        let g = instances::path(2);
        let m = enumerate_matchings(&g, 10).matchings.remove(0);
        let pool = MatchingPool::new(&g, vec![m.clone()]).unwrap();
        for seed in [0, 1, 99] {
            assert_eq!(select_secret(&pool, seed).unwrap(), m);
        }
    }

    #[test]
    fn chain_distance_between_consecutive_samples_valid() {
        // Sanity: distances between sampled matchings are never 1.
        let g = instances::complete(3);
        let cfg = ChainConfig::for_graph_size(3, 2).with_sample_count(100);
        let samples = mcmc_sample(&g, &cfg).unwrap();
        for w in samples.windows(2) {
            let d = distance(&w[0], &w[1]).unwrap();
            assert!(d != 1);
        }
        assert!(samples.iter().all(|s| is_perfect_matching(&g, s)));
    }
}
