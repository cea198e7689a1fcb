//! Slow reference implementations straight from the definitions: each side
//! graph is materialized by deleting edges and searching from the base, blocks
//! are maximal cliques, and cut vertices are found by deleting vertices.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use blockslide_core::generate::{gen_block_graph, gen_independent_set, GenParams};
use blockslide_core::{Graph, PairKind, TokenSet};

pub type Block = BTreeSet<usize>;

/// A pair spelled out with the block's vertex set instead of an id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DefPair {
    pub kind: PairKind,
    pub base: usize,
    pub block: Block,
}

pub fn components_within(g: &Graph, alive: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in alive {
        if !seen.insert(s) {
            continue;
        }
        let mut part = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if alive.contains(&w) && seen.insert(w) {
                    part.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(part);
    }
    out
}

pub fn all_vertices(g: &Graph) -> BTreeSet<usize> {
    (0..g.vertex_count()).collect()
}

/// Cut vertices of the subgraph induced by `within`.
pub fn cut_vertices_in(g: &Graph, within: &BTreeSet<usize>) -> BTreeSet<usize> {
    let base = components_within(g, within).len();
    within
        .iter()
        .copied()
        .filter(|&v| {
            let mut rest = within.clone();
            rest.remove(&v);
            components_within(g, &rest).len() > base
        })
        .collect()
}

fn is_clique(g: &Graph, vs: &BTreeSet<usize>) -> bool {
    vs.iter()
        .all(|&a| vs.iter().all(|&b| a == b || g.has_edge(a, b)))
}

/// Maximal cliques inside `within` with at least two vertices, plus isolated
/// vertices. In a block graph these are exactly the blocks.
pub fn blocks_in(g: &Graph, within: &BTreeSet<usize>) -> Vec<Block> {
    let list: Vec<usize> = within.iter().copied().collect();
    assert!(list.len() <= 20, "brute force needs a small graph");
    let mut cliques: Vec<Block> = Vec::new();
    for mask in 1u32..(1 << list.len()) {
        let vs: Block = (0..list.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| list[i])
            .collect();
        if is_clique(g, &vs) {
            cliques.push(vs);
        }
    }
    let mut maximal: Vec<Block> = cliques
        .iter()
        .filter(|c| !cliques.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
        .cloned()
        .collect();
    maximal.sort();
    maximal
}

pub fn blocks(g: &Graph) -> Vec<Block> {
    blocks_in(g, &all_vertices(g))
}

/// Vertex set of the side graph: the component of the base after deleting
/// the base's edges into the block (toward-block) or out of it (toward-vertex).
pub fn side(g: &Graph, p: &DefPair) -> BTreeSet<usize> {
    let u = p.base;
    let keep = |a: usize, b: usize| {
        if a != u && b != u {
            return true;
        }
        let other = if a == u { b } else { a };
        match p.kind {
            PairKind::ToBlock => !p.block.contains(&other),
            PairKind::ToVertex => p.block.contains(&other),
        }
    };
    let mut seen = BTreeSet::from([u]);
    let mut queue = VecDeque::from([u]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if keep(v, w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Every directed pair of the block-cut tree.
pub fn pairs(g: &Graph) -> Vec<DefPair> {
    let bs = blocks(g);
    let cuts = cut_vertices_in(g, &all_vertices(g));
    let mut out = Vec::new();
    for &u in &cuts {
        for b in bs.iter().filter(|b| b.contains(&u)) {
            for kind in [PairKind::ToVertex, PairKind::ToBlock] {
                out.push(DefPair {
                    kind,
                    base: u,
                    block: b.clone(),
                });
            }
        }
    }
    out
}

pub fn kappa(g: &Graph, block: &Block, u: usize) -> BTreeSet<usize> {
    let p = DefPair {
        kind: PairKind::ToVertex,
        base: u,
        block: block.clone(),
    };
    let within = side(g, &p);
    cut_vertices_in(g, &within)
        .intersection(block)
        .copied()
        .collect()
}

pub fn beta(g: &Graph, u: usize, block: &Block) -> Vec<Block> {
    let p = DefPair {
        kind: PairKind::ToBlock,
        base: u,
        block: block.clone(),
    };
    let within = side(g, &p);
    blocks_in(g, &within)
        .into_iter()
        .filter(|b| b.contains(&u))
        .collect()
}

/// Depth, ua and the block count of the side, memoized per pair.
#[derive(Default)]
pub struct Tables {
    depth: BTreeMap<DefPair, usize>,
    ua: BTreeMap<DefPair, bool>,
}

impl Tables {
    pub fn depth(&mut self, g: &Graph, p: &DefPair) -> usize {
        if let Some(&d) = self.depth.get(p) {
            return d;
        }
        let d = match p.kind {
            PairKind::ToVertex => {
                let k = kappa(g, &p.block, p.base);
                if k.is_empty() {
                    0
                } else {
                    1 + k
                        .iter()
                        .map(|&v| self.depth(g, &to_block(v, &p.block)))
                        .max()
                        .unwrap()
                }
            }
            PairKind::ToBlock => {
                1 + beta(g, p.base, &p.block)
                    .iter()
                    .map(|b| self.depth(g, &to_vertex(b, p.base)))
                    .max()
                    .unwrap()
            }
        };
        self.depth.insert(p.clone(), d);
        d
    }

    pub fn ua(&mut self, g: &Graph, p: &DefPair) -> bool {
        if let Some(&a) = self.ua.get(p) {
            return a;
        }
        let a = if self.depth(g, p) == 0 {
            true
        } else {
            match p.kind {
                PairKind::ToVertex => {
                    let k = kappa(g, &p.block, p.base);
                    let all = k.iter().all(|&v| self.ua(g, &to_block(v, &p.block)));
                    let mut union = k.clone();
                    union.insert(p.base);
                    !(all && union == p.block)
                }
                PairKind::ToBlock => beta(g, p.base, &p.block)
                    .iter()
                    .any(|b| self.ua(g, &to_vertex(b, p.base))),
            }
        };
        self.ua.insert(p.clone(), a);
        a
    }

    /// Capacity of `c` restricted to the side of `p`.
    pub fn cap(&mut self, g: &Graph, c: &BTreeSet<usize>, p: &DefPair) -> i64 {
        let within = side(g, p);
        match p.kind {
            PairKind::ToVertex => {
                let sum: i64 = kappa(g, &p.block, p.base)
                    .iter()
                    .map(|&v| self.cap(g, c, &to_block(v, &p.block)))
                    .sum();
                let interior_in_block = p
                    .block
                    .iter()
                    .filter(|&&v| v != p.base && within.contains(&v) && c.contains(&v))
                    .count() as i64;
                sum + self.ua(g, p) as i64 - interior_in_block
            }
            PairKind::ToBlock => {
                let bs = beta(g, p.base, &p.block);
                let parts: Vec<(i64, bool)> = bs
                    .iter()
                    .map(|b| {
                        let q = to_vertex(b, p.base);
                        (self.cap(g, c, &q), self.ua(g, &q))
                    })
                    .collect();
                if parts.iter().any(|&(cap, ua)| cap == 0 && ua) {
                    0
                } else {
                    parts.iter().map(|&(cap, ua)| cap - ua as i64).sum::<i64>()
                        + self.ua(g, p) as i64
                }
            }
        }
    }
}

pub fn to_block(v: usize, block: &Block) -> DefPair {
    DefPair {
        kind: PairKind::ToBlock,
        base: v,
        block: block.clone(),
    }
}

pub fn to_vertex(block: &Block, u: usize) -> DefPair {
    DefPair {
        kind: PairKind::ToVertex,
        base: u,
        block: block.clone(),
    }
}

/// Block graph plus token set drawn from a seed, for property tests.
pub fn instance(
    seed: u64,
    num_blocks: usize,
    max_clique: usize,
    tokens: usize,
) -> (Graph, TokenSet) {
    let g = gen_block_graph(&GenParams {
        seed,
        num_blocks,
        max_clique,
        token_count: 0,
    })
    .unwrap();
    let mut size = tokens.min(g.vertex_count());
    loop {
        if let Some(c) = gen_independent_set(seed.wrapping_add(1), &g, size) {
            return (g, c);
        }
        size -= 1;
    }
}

/// Relabels `g` by `perm` (old vertex `v` becomes `perm[v]`).
pub fn permute(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::new(g.vertex_count(), &edges).unwrap()
}
