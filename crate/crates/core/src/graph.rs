//! Simple undirected graphs on dense vertex ids and independent token sets.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..vertex_count`.
///
/// Adjacency lists are kept sorted ascending, so every traversal of the
/// graph is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, repeated
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn new(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange(w));
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { adjacency, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// The subgraph induced by `vertices`; local vertex `i` corresponds to
    /// `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            local[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        Graph::new(vertices.len(), &edges)
    }

    /// The graph with the given vertices deleted, relabelled so the
    /// remaining vertices keep their relative order. Returns the kept
    /// vertices alongside.
    pub fn without_vertices(&self, removed: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut drop = vec![false; self.vertex_count()];
        for &v in removed {
            self.check_vertex(v)?;
            drop[v] = true;
        }
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|&v| !drop[v]).collect();
        Ok((self.induced_subgraph(&kept)?, kept))
    }
}

/// Returns true iff no edge of `g` has both endpoints in `s`.
pub fn is_independent(g: &Graph, s: &[usize]) -> Result<bool> {
    let mut member = vec![false; g.vertex_count()];
    for &v in s {
        g.check_vertex(v)?;
        member[v] = true;
    }
    Ok(first_conflict(g, &member).is_none())
}

fn first_conflict(g: &Graph, member: &[bool]) -> Option<(usize, usize)> {
    g.edges
        .iter()
        .copied()
        .find(|&(u, v)| member[u] && member[v])
}

/// True iff some neighbour of `v` carries a token. A vertex holding a token
/// is never under attack, since the set is independent.
pub fn is_under_attack(g: &Graph, c: &TokenSet, v: usize) -> Result<bool> {
    g.check_vertex(v)?;
    Ok(g.neighbors(v).iter().any(|&w| c.contains(w)))
}

/// Connected components, each sorted, ordered by their minimum vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let (labels, count) = component_labels(g);
    let mut out = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        out[c].push(v);
    }
    out
}

/// Component index per vertex (numbered by minimum vertex) and the number
/// of components.
pub fn component_labels(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// An independent set of a particular graph: the positions of the tokens.
///
/// Keeps a sorted vertex list together with a membership bitset over the
/// host graph's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenSet {
    vertices: Vec<usize>,
    bits: Vec<u64>,
    universe: usize,
}

impl TokenSet {
    /// Validates `vertices` against `g`. Repeated vertices are collapsed.
    pub fn new(g: &Graph, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut list: Vec<usize> = vertices.into_iter().collect();
        for &v in &list {
            g.check_vertex(v)?;
        }
        list.sort_unstable();
        list.dedup();
        let set = Self::from_sorted(g.vertex_count(), list);
        for &v in &set.vertices {
            if let Some(&w) = g.neighbors(v).iter().find(|&&w| set.contains(w)) {
                return Err(Error::NotIndependent(v.min(w), v.max(w)));
            }
        }
        Ok(set)
    }

    /// The empty token set over a universe of `universe` vertices.
    pub fn empty(universe: usize) -> Self {
        Self::from_sorted(universe, Vec::new())
    }

    /// Builds a set from a strictly increasing list without checking
    /// independence.
    pub(crate) fn from_sorted(universe: usize, vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut bits = vec![0u64; universe.div_ceil(64)];
        for &v in &vertices {
            bits[v / 64] |= 1 << (v % 64);
        }
        Self {
            vertices,
            bits,
            universe,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of vertices of the host graph.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.vertices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    /// Tokens lying in `vertices`, given in the local numbering of
    /// `g.induced_subgraph(vertices)`.
    pub fn restrict_to(&self, vertices: &[usize]) -> TokenSet {
        let local: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|&(_, &v)| self.contains(v))
            .map(|(i, _)| i)
            .collect();
        let mut sorted = local;
        sorted.sort_unstable();
        TokenSet::from_sorted(vertices.len(), sorted)
    }
}
