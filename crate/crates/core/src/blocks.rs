//! Blocks, cut vertices and the block-cut tree.
//!
//! A [`BlockDecomposition`] assigns canonical ids to the blocks of a graph
//! (blocks sorted lexicographically by their sorted member lists) and
//! enumerates the directed edges of the block-cut tree as [`Pair`]s. Each
//! pair `p` has a *side* `G[p]`, the part of the graph hanging off its base
//! vertex in the direction of `p`. Side membership is answered in O(1) from
//! an Euler tour of the rooted block-cut tree.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{component_labels, Graph};

/// Index into [`BlockDecomposition::blocks`].
pub type BlockId = usize;
/// Index into [`BlockDecomposition::pairs`].
pub type PairId = usize;

/// Orientation of a block-cut tree edge. `ToVertex` is the pair `(B, u)`
/// and `ToBlock` the pair `(u, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    ToVertex,
    ToBlock,
}

/// A directed edge of the block-cut tree between the cut vertex `base` and
/// one of its blocks.
///
/// The derived ordering (base, then block, then `ToVertex` before
/// `ToBlock`) is the canonical pair order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub base: usize,
    pub block: BlockId,
    pub kind: PairKind,
}

impl Pair {
    pub fn reverse(self) -> Pair {
        let kind = match self.kind {
            PairKind::ToVertex => PairKind::ToBlock,
            PairKind::ToBlock => PairKind::ToVertex,
        };
        Pair { kind, ..self }
    }
}

/// The vertex set of `G[p]` for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideView {
    pub pair: Pair,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    blocks: Vec<Vec<usize>>,
    blocks_of: Vec<Vec<BlockId>>,
    is_cut: Vec<bool>,
    cut_vertices: Vec<usize>,
    /// Cut vertices of each block, ascending.
    block_cuts: Vec<Vec<usize>>,
    /// `[ToVertex, ToBlock]` pair ids, aligned with `block_cuts`.
    block_pairs: Vec<Vec<[PairId; 2]>>,
    pairs: Vec<Pair>,
    component: Vec<usize>,
    component_count: usize,
    component_blocks: Vec<usize>,
    // Euler tour of the rooted block-cut forest. Block `b` is tree node `b`,
    // cut vertex `cut_vertices[i]` is node `blocks.len() + i`.
    cut_index: Vec<usize>,
    parent: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    subtree_blocks: Vec<usize>,
}

/// Computes blocks, cut vertices and the block-cut tree of `g` in
/// `O(|V| + |E|)` plus the cost of sorting blocks canonically.
pub fn decompose(g: &Graph) -> BlockDecomposition {
    BlockDecomposition::new(g)
}

/// True iff every block of `g` induces a complete subgraph.
pub fn is_block_graph(g: &Graph) -> bool {
    decompose(g).first_non_clique_block(g).is_none()
}

impl BlockDecomposition {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut blocks = raw_blocks(g);
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable();

        let mut blocks_of = vec![Vec::new(); n];
        for (id, b) in blocks.iter().enumerate() {
            for &v in b {
                blocks_of[v].push(id);
            }
        }
        let is_cut: Vec<bool> = blocks_of.iter().map(|bs| bs.len() >= 2).collect();
        let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
        let mut cut_index = vec![usize::MAX; n];
        for (i, &u) in cut_vertices.iter().enumerate() {
            cut_index[u] = i;
        }
        let block_cuts: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| b.iter().copied().filter(|&v| is_cut[v]).collect())
            .collect();

        let mut pairs = Vec::new();
        let mut block_pairs: Vec<Vec<[PairId; 2]>> = block_cuts
            .iter()
            .map(|cuts| vec![[0; 2]; cuts.len()])
            .collect();
        for &u in &cut_vertices {
            for &b in &blocks_of[u] {
                let slot = block_cuts[b]
                    .binary_search(&u)
                    .expect("cut vertex of block");
                block_pairs[b][slot] = [pairs.len(), pairs.len() + 1];
                pairs.push(Pair {
                    base: u,
                    block: b,
                    kind: PairKind::ToVertex,
                });
                pairs.push(Pair {
                    base: u,
                    block: b,
                    kind: PairKind::ToBlock,
                });
            }
        }
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));

        let (component, component_count) = component_labels(g);
        let mut component_blocks = vec![0; component_count];
        for b in &blocks {
            component_blocks[component[b[0]]] += 1;
        }

        let mut bd = BlockDecomposition {
            blocks,
            blocks_of,
            is_cut,
            cut_vertices,
            block_cuts,
            block_pairs,
            pairs,
            component,
            component_count,
            component_blocks,
            cut_index,
            parent: Vec::new(),
            tin: Vec::new(),
            tout: Vec::new(),
            subtree_blocks: Vec::new(),
        };
        bd.build_euler_tour();
        bd
    }

    fn node_count(&self) -> usize {
        self.blocks.len() + self.cut_vertices.len()
    }

    // Forest nodes: block b is node b, cut vertex u follows all blocks.
    fn cut_node(&self, u: usize) -> usize {
        self.blocks.len() + self.cut_index[u]
    }

    fn node_of_vertex(&self, v: usize) -> usize {
        if self.is_cut[v] {
            self.cut_node(v)
        } else {
            self.blocks_of[v][0]
        }
    }

    fn tree_neighbors(&self, node: usize) -> Vec<usize> {
        if node < self.blocks.len() {
            self.block_cuts[node]
                .iter()
                .map(|&u| self.cut_node(u))
                .collect()
        } else {
            let u = self.cut_vertices[node - self.blocks.len()];
            self.blocks_of[u].clone()
        }
    }

    fn build_euler_tour(&mut self) {
        let total = self.node_count();
        let nb = self.blocks.len();
        self.parent = vec![usize::MAX; total];
        self.tin = vec![0; total];
        self.tout = vec![0; total];
        self.subtree_blocks = vec![0; total];
        let mut seen = vec![false; total];
        let mut clock = 0;
        // Roots are blocks in id order, so each component is rooted at its
        // smallest block.
        for root in 0..nb {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            self.tin[root] = clock;
            clock += 1;
            let mut stack = vec![(root, self.tree_neighbors(root), 0usize)];
            while let Some((node, nbrs, idx)) = stack.last_mut() {
                if *idx < nbrs.len() {
                    let next = nbrs[*idx];
                    *idx += 1;
                    if !seen[next] {
                        seen[next] = true;
                        self.parent[next] = *node;
                        self.tin[next] = clock;
                        clock += 1;
                        let nn = self.tree_neighbors(next);
                        stack.push((next, nn, 0));
                    }
                } else {
                    let node = *node;
                    stack.pop();
                    self.tout[node] = clock;
                    let own = usize::from(node < nb);
                    self.subtree_blocks[node] += own;
                    if let Some(&(up, _, _)) = stack.last() {
                        self.subtree_blocks[up] += self.subtree_blocks[node];
                    }
                }
            }
        }
    }

    fn in_subtree(&self, root: usize, node: usize) -> bool {
        self.tin[root] <= self.tin[node] && self.tin[node] < self.tout[root]
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks_of.len()
    }

    /// Blocks in canonical order, each sorted ascending.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: BlockId) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn cut_vertices(&self) -> &[usize] {
        &self.cut_vertices
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.is_cut[v]
    }

    /// Blocks containing `v`, ascending.
    pub fn blocks_of(&self, v: usize) -> &[BlockId] {
        &self.blocks_of[v]
    }

    /// Cut vertices inside block `b`, ascending.
    pub fn cuts_of_block(&self, b: BlockId) -> &[usize] {
        &self.block_cuts[b]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    /// Edges of the block-cut tree as `(cut vertex, block)`.
    pub fn tree_edges(&self) -> impl Iterator<Item = (usize, BlockId)> + '_ {
        self.cut_vertices
            .iter()
            .flat_map(move |&u| self.blocks_of[u].iter().map(move |&b| (u, b)))
    }

    /// All pairs in canonical order.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn pair(&self, id: PairId) -> Pair {
        self.pairs[id]
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Id of `(u, B)` or `(B, u)`.
    pub fn pair_id(&self, kind: PairKind, base: usize, block: BlockId) -> Result<PairId> {
        let cuts = self.block_cuts.get(block).ok_or(Error::InvalidPair)?;
        let slot = cuts.binary_search(&base).map_err(|_| Error::InvalidPair)?;
        Ok(self.block_pairs[block][slot][kind as usize])
    }

    pub fn find(&self, p: Pair) -> Result<PairId> {
        self.pair_id(p.kind, p.base, p.block)
    }

    pub fn reverse_id(&self, id: PairId) -> PairId {
        // Both orientations are pushed next to each other.
        id ^ 1
    }

    /// `κ(B, u)`: the cut vertices of `G[B, u]` lying in `B`, which is
    /// `(B ∩ V_cut) \ {u}`.
    pub fn kappa(&self, block: BlockId, u: usize) -> Result<Vec<usize>> {
        self.pair_id(PairKind::ToVertex, u, block)?;
        Ok(self.block_cuts[block]
            .iter()
            .copied()
            .filter(|&v| v != u)
            .collect())
    }

    /// `β(u, B)`: the blocks of `G[u, B]` containing `u`, which is
    /// `B_u \ {B}`.
    pub fn beta(&self, u: usize, block: BlockId) -> Result<Vec<BlockId>> {
        self.pair_id(PairKind::ToBlock, u, block)?;
        Ok(self.blocks_of[u]
            .iter()
            .copied()
            .filter(|&b| b != block)
            .collect())
    }

    /// The pairs whose values a pair's recursive definitions read: for
    /// `(B, u)` the pairs `(v, B)` with `v ∈ κ(B, u)`; for `(u, B)` the
    /// pairs `(B', u)` with `B' ∈ β(u, B)`.
    pub fn children(&self, id: PairId) -> impl Iterator<Item = PairId> + '_ {
        let p = self.pairs[id];
        let (via_block, via_vertex) = match p.kind {
            PairKind::ToVertex => (Some(p.block), None),
            PairKind::ToBlock => (None, Some(p.base)),
        };
        let block_side = via_block.into_iter().flat_map(move |b| {
            self.block_cuts[b]
                .iter()
                .zip(&self.block_pairs[b])
                .filter(move |&(&v, _)| v != p.base)
                .map(|(_, ids)| ids[PairKind::ToBlock as usize])
        });
        let vertex_side = via_vertex.into_iter().flat_map(move |u| {
            self.to_vertex_pairs(u)
                .filter(move |&(b, _)| b != p.block)
                .map(|(_, id)| id)
        });
        block_side.chain(vertex_side)
    }

    /// `(B, id of (B, u))` for every block `B` containing the cut vertex `u`.
    pub fn to_vertex_pairs(&self, u: usize) -> impl Iterator<Item = (BlockId, PairId)> + '_ {
        self.blocks_of[u].iter().map(move |&b| {
            let slot = self.block_cuts[b].binary_search(&u).unwrap_or(usize::MAX);
            (b, self.block_pairs[b][slot][PairKind::ToVertex as usize])
        })
    }

    /// `(u, id of (u, B))` for every cut vertex `u` of block `b`.
    pub fn to_block_pairs(&self, b: BlockId) -> impl Iterator<Item = (usize, PairId)> + '_ {
        self.block_cuts[b]
            .iter()
            .zip(&self.block_pairs[b])
            .map(|(&u, ids)| (u, ids[PairKind::ToBlock as usize]))
    }

    /// The subtree root that separates the two sides of `p`, and whether
    /// that subtree lies on the side of `p`.
    fn split(&self, p: Pair) -> (usize, bool) {
        let nb = p.block;
        let nu = self.cut_node(p.base);
        if self.parent[nb] == nu {
            (nb, p.kind == PairKind::ToVertex)
        } else {
            debug_assert_eq!(self.parent[nu], nb);
            (nu, p.kind == PairKind::ToBlock)
        }
    }

    /// Whether `v` is a vertex of `G[p]`.
    pub fn side_contains(&self, id: PairId, v: usize) -> bool {
        let p = self.pairs[id];
        if v == p.base {
            return true;
        }
        if self.component[v] != self.component[p.base] {
            return false;
        }
        let (root, inside) = self.split(p);
        self.in_subtree(root, self.node_of_vertex(v)) == inside
    }

    /// Vertices of `G[p]`, ascending.
    pub fn side_vertices(&self, p: Pair) -> Result<SideView> {
        let id = self.find(p)?;
        let vertices = (0..self.vertex_count())
            .filter(|&v| self.side_contains(id, v))
            .collect();
        Ok(SideView { pair: p, vertices })
    }

    /// `|B(G[p])|`, the number of blocks of the side of `p`.
    pub fn side_block_count(&self, id: PairId) -> usize {
        let p = self.pairs[id];
        let (root, inside) = self.split(p);
        let below = self.subtree_blocks[root];
        if inside {
            below
        } else {
            self.component_blocks[self.component[p.base]] - below
        }
    }

    /// A block whose vertices do not form a clique in `g`, if any.
    pub fn first_non_clique_block(&self, g: &Graph) -> Option<BlockId> {
        let mut inner = vec![0usize; self.blocks.len()];
        for &(u, v) in g.edges() {
            let b = common_block(&self.blocks_of[u], &self.blocks_of[v])
                .expect("every edge lies in a block");
            inner[b] += 1;
        }
        (0..self.blocks.len()).find(|&b| {
            let k = self.blocks[b].len();
            inner[b] != k * (k - 1) / 2
        })
    }
}

fn common_block(a: &[BlockId], b: &[BlockId]) -> Option<BlockId> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

/// Biconnected components as vertex sets, via an iterative lowpoint DFS.
/// Isolated vertices come out as singleton blocks.
fn raw_blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut clock = 0;
    let mut out = Vec::new();
    let mut vertex_stack = Vec::new();
    // (vertex, next neighbour index, parent)
    let mut call: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        if g.degree(root) == 0 {
            out.push(vec![root]);
            continue;
        }
        vertex_stack.push(root);
        call.push((root, 0, usize::MAX));
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.1 < g.degree(v) {
                let w = g.neighbors(v)[frame.1];
                frame.1 += 1;
                if disc[w] == usize::MAX {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    vertex_stack.push(w);
                    call.push((w, 0, v));
                } else if w != frame.2 {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = vec![p];
                        loop {
                            let x = vertex_stack.pop().expect("vertex stack underflow");
                            block.push(x);
                            if x == v {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
        let last = vertex_stack.pop();
        debug_assert_eq!(last, Some(root));
    }
    out
}
