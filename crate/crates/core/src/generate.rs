//! Reproducible random block graphs and independent sets.
//!
//! All randomness comes from xoshiro256** seeded through SplitMix64, and
//! bounded draws use plain rejection on the top bits, so a seed replays the
//! same instance in any language that implements those two generators.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{Error, Result};
use crate::graph::{Graph, TokenSet};

/// Restarts of the greedy packing before [`gen_independent_set`] gives up.
pub const PACKING_RESTARTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub num_blocks: usize,
    pub max_clique: usize,
    pub token_count: usize,
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.num_blocks == 0 {
            return Err(Error::InvalidParams("num_blocks must be positive"));
        }
        if self.max_clique < 2 {
            return Err(Error::InvalidParams("max_clique must be at least 2"));
        }
        if self.token_count > self.num_blocks * (self.max_clique - 1) + 1 {
            return Err(Error::InvalidParams(
                "token_count exceeds any possible vertex count",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Rng(Xoshiro256StarStar);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let bits = 64 - (n - 1).leading_zeros();
        if bits == 0 {
            return 0;
        }
        loop {
            let x = self.next_u64() >> (64 - bits);
            if x < n {
                return x;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo + 1) as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Builds a connected block graph with exactly `num_blocks` blocks. The first
/// block is a clique on `2..=max_clique` vertices; every later one is a fresh
/// clique of the same size range sharing one uniformly chosen old vertex.
pub fn gen_block_graph(params: &GenParams) -> Result<Graph> {
    params.validate()?;
    let mut rng = Rng::new(params.seed);
    let mut n = 0usize;
    let mut edges = Vec::new();
    for b in 0..params.num_blocks {
        let size = rng.range(2, params.max_clique);
        let mut members = Vec::with_capacity(size);
        if b > 0 {
            members.push(rng.below(n as u64) as usize);
        }
        while members.len() < size {
            members.push(n);
            n += 1;
        }
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Shuffles the vertices and packs them greedily, retrying with a fresh
/// order up to [`PACKING_RESTARTS`] times.
pub fn gen_independent_set(seed: u64, g: &Graph, size: usize) -> Option<TokenSet> {
    let n = g.vertex_count();
    if size > n {
        return None;
    }
    let mut rng = Rng::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut blocked = alloc::vec![false; n];
    for _ in 0..PACKING_RESTARTS {
        rng.shuffle(&mut order);
        blocked.iter_mut().for_each(|b| *b = false);
        let mut chosen = Vec::with_capacity(size);
        for &v in &order {
            if chosen.len() == size {
                break;
            }
            if blocked[v] {
                continue;
            }
            chosen.push(v);
            blocked[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
        if chosen.len() == size {
            chosen.sort_unstable();
            return Some(TokenSet::from_sorted(n, chosen));
        }
    }
    None
}

/// A source and target token set on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub source: TokenSet,
    pub target: TokenSet,
}

/// Envelope for [`sample_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Envelope {
    pub max_blocks: usize,
    pub max_clique: usize,
    pub max_tokens: usize,
    pub max_vertices: usize,
}

impl Default for Envelope {
    fn default() -> Self {
        Self {
            max_blocks: 6,
            max_clique: 4,
            max_tokens: 4,
            max_vertices: 12,
        }
    }
}

/// Slides tokens of `c` along random edges for up to `steps` moves.
pub fn random_walk(seed: u64, g: &Graph, c: &TokenSet, steps: usize) -> TokenSet {
    let mut rng = Rng::new(seed);
    let mut current = c.clone();
    for _ in 0..steps {
        let moves = crate::oracle::successors(g, &current);
        if moves.is_empty() {
            break;
        }
        current = moves[rng.below(moves.len() as u64) as usize].clone();
    }
    current
}

/// The `index`-th instance of the fuzz corpus rooted at `seed`. Odd indices
/// take the target from a random walk of a random-size source; even indices
/// use `max_blocks` blocks and sample both sets independently.
pub fn sample_instance(seed: u64, index: u64, env: &Envelope) -> Result<Instance> {
    if env.max_blocks == 0 || env.max_clique < 2 || env.max_vertices <= env.max_blocks {
        return Err(Error::InvalidParams("envelope admits no graph"));
    }
    let mut rng = Rng::new(seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let graph = loop {
        let params = GenParams {
            seed: rng.next_u64(),
            num_blocks: if index % 2 == 1 {
                rng.range(1, env.max_blocks)
            } else {
                env.max_blocks
            },
            max_clique: env.max_clique,
            token_count: 0,
        };
        let g = gen_block_graph(&params)?;
        if g.vertex_count() <= env.max_vertices {
            break g;
        }
    };
    // Independent pairs use the largest graphs and pack as many tokens as
    // fit: tight packings are where frozen tokens and negative answers live.
    let mut size = if index % 2 == 1 {
        rng.range(1, env.max_tokens.max(1))
    } else {
        env.max_tokens.max(1)
    }
    .min(graph.vertex_count());
    let source = loop {
        if let Some(s) = gen_independent_set(rng.next_u64(), &graph, size) {
            break s;
        }
        size -= 1;
    };
    let target = if index % 2 == 1 {
        let steps = rng.range(0, 4 * graph.vertex_count());
        random_walk(rng.next_u64(), &graph, &source, steps)
    } else {
        gen_independent_set(rng.next_u64(), &graph, size).unwrap_or_else(|| source.clone())
    };
    Ok(Instance {
        graph,
        source,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{decompose, is_block_graph};
    use crate::graph::{connected_components, is_independent};

    fn params(seed: u64, num_blocks: usize, max_clique: usize) -> GenParams {
        GenParams {
            seed,
            num_blocks,
            max_clique,
            token_count: 0,
        }
    }

    #[test]
    fn small_examples() {
        let g = gen_block_graph(&params(7, 1, 2)).unwrap();
        assert_eq!((g.vertex_count(), g.edges()), (2, &[(0, 1)][..]));
        for seed in 0..20 {
            let g = gen_block_graph(&params(seed, 3, 2)).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
            assert_eq!(connected_components(&g).len(), 1);
        }
    }

    #[test]
    fn invalid_params() {
        assert!(gen_block_graph(&params(0, 0, 3)).is_err());
        assert!(gen_block_graph(&params(0, 2, 1)).is_err());
        let too_many = GenParams {
            token_count: 4,
            ..params(0, 1, 3)
        };
        assert_eq!(
            gen_block_graph(&too_many),
            Err(Error::InvalidParams(
                "token_count exceeds any possible vertex count"
            ))
        );
    }

    #[test]
    fn outputs_are_connected_block_graphs() {
        for seed in 0..300 {
            let p = params(seed, 1 + (seed % 7) as usize, 2 + (seed % 4) as usize);
            let g = gen_block_graph(&p).unwrap();
            assert!(is_block_graph(&g));
            assert_eq!(connected_components(&g).len(), 1);
            assert_eq!(decompose(&g).block_count(), p.num_blocks);
        }
    }

    #[test]
    fn reproducible() {
        let p = params(12345, 6, 4);
        assert_eq!(gen_block_graph(&p), gen_block_graph(&p));
        let g = gen_block_graph(&p).unwrap();
        assert_eq!(gen_independent_set(9, &g, 2), gen_independent_set(9, &g, 2));
        let mut a = Rng::new(1);
        let mut b = Rng::new(1);
        assert!((0..100).all(|_| a.next_u64() == b.next_u64()));
    }

    #[test]
    fn known_stream() {
        // xoshiro256** seeded through SplitMix64 from 0.
        let mut rng = Rng::new(0);
        let mut again = Xoshiro256StarStar::seed_from_u64(0);
        assert_eq!(rng.next_u64(), again.next_u64());
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = Rng::new(3);
        let mut seen = [0usize; 5];
        for _ in 0..5000 {
            seen[rng.below(5) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| c > 800));
        assert_eq!(rng.below(1), 0);
    }

    #[test]
    fn sampled_instances_fit_the_envelope() {
        let env = Envelope::default();
        for i in 0..200 {
            let inst = sample_instance(5, i, &env).unwrap();
            assert!(inst.graph.vertex_count() <= env.max_vertices);
            assert!(is_block_graph(&inst.graph));
            assert!((1..=env.max_tokens).contains(&inst.source.len()));
            assert_eq!(inst.source.len(), inst.target.len());
            assert!(is_independent(&inst.graph, inst.target.as_slice()).unwrap());
        }
        assert_eq!(sample_instance(5, 17, &env), sample_instance(5, 17, &env));
        let cramped = Envelope {
            max_vertices: 6,
            ..env
        };
        assert!(sample_instance(5, 0, &cramped).is_err());
    }

    #[test]
    fn independent_set_examples() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(gen_independent_set(1, &k4, 1).map(|s| s.len()), Some(1));
        assert_eq!(gen_independent_set(1, &k4, 2), None);
        assert_eq!(gen_independent_set(1, &k4, 0), Some(TokenSet::empty(4)));
        assert_eq!(gen_independent_set(1, &k4, 9), None);
        for seed in 0..100 {
            let g = gen_block_graph(&params(seed, 5, 3)).unwrap();
            if let Some(s) = gen_independent_set(seed, &g, 3) {
                assert!(is_independent(&g, s.as_slice()).unwrap());
                assert_eq!(s.len(), 3);
            }
        }
    }
}
