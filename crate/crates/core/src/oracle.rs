//! Brute-force ground truth: breadth-first search over the token-sliding
//! reconfiguration graph.
//!
//! States are stored as sorted vertex tuples; the visited set keys them by a
//! `u128` bitmask when the graph has at most 128 vertices.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::{BlockDecomposition, Pair};
use crate::error::{Error, Result};
use crate::graph::{Graph, TokenSet};
use crate::potential::capacity_table_signed;
use crate::structure::UaTable;

/// Limits on one exhaustive search. `max_millis` is only enforced when the
/// `std` feature is enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_states: usize,
    pub max_millis: u64,
}

impl OracleLimits {
    pub fn new(max_states: usize, max_millis: u64) -> Result<Self> {
        if max_states == 0 || max_millis == 0 {
            return Err(Error::InvalidParams("oracle limits must be positive"));
        }
        Ok(Self {
            max_states,
            max_millis,
        })
    }
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_states: 2_000_000,
            max_millis: 30_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone)]
enum Visited {
    Small(BTreeSet<u128>),
    Large(BTreeSet<Vec<u32>>),
}

impl Visited {
    fn new(universe: usize) -> Self {
        if universe <= 128 {
            Visited::Small(BTreeSet::new())
        } else {
            Visited::Large(BTreeSet::new())
        }
    }

    fn insert(&mut self, state: &[u32]) -> bool {
        match self {
            Visited::Small(set) => set.insert(state.iter().fold(0u128, |m, &v| m | 1 << v)),
            Visited::Large(set) => set.insert(state.to_vec()),
        }
    }

    fn contains(&self, state: &[u32]) -> bool {
        match self {
            Visited::Small(set) => set.contains(&state.iter().fold(0u128, |m, &v| m | 1 << v)),
            Visited::Large(set) => set.contains(state),
        }
    }
}

/// The states reachable from `start`, in breadth-first order.
#[derive(Debug, Clone)]
pub struct StateSpace {
    start: TokenSet,
    flat: Vec<u32>,
    visited: Visited,
    /// Set when a limit stopped the search before the closure was complete.
    pub truncated: bool,
    /// Number of BFS layers fully or partially explored beyond the start.
    pub depth: usize,
    pub max_frontier: usize,
}

impl StateSpace {
    pub fn start(&self) -> &TokenSet {
        &self.start
    }

    pub fn len(&self) -> usize {
        if self.start.is_empty() {
            1
        } else {
            self.flat.len() / self.start.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `i`-th visited state as a sorted vertex list.
    pub fn state(&self, i: usize) -> Vec<usize> {
        let k = self.start.len();
        self.flat[i * k..(i + 1) * k]
            .iter()
            .map(|&v| v as usize)
            .collect()
    }

    pub fn states(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(|i| self.state(i))
    }

    pub fn contains(&self, c: &TokenSet) -> bool {
        if c.len() != self.start.len() || c.universe() != self.start.universe() {
            return false;
        }
        let key: Vec<u32> = c.iter().map(|v| v as u32).collect();
        self.visited.contains(&key)
    }
}

/// Calls `f` with every independent set obtained from `state` by sliding one
/// token along one edge, in order of (moved token, destination).
fn for_each_successor(g: &Graph, state: &[usize], mut f: impl FnMut(&[usize])) {
    let mut next = Vec::with_capacity(state.len());
    for (i, &u) in state.iter().enumerate() {
        for &v in g.neighbors(u) {
            if state.contains(&v) {
                continue;
            }
            let blocked = g
                .neighbors(v)
                .iter()
                .any(|&w| w != u && state.binary_search(&w).is_ok());
            if blocked {
                continue;
            }
            next.clear();
            next.extend(
                state
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &w)| w),
            );
            let at = next.partition_point(|&w| w < v);
            next.insert(at, v);
            f(&next);
        }
    }
}

pub fn successors(g: &Graph, c: &TokenSet) -> Vec<TokenSet> {
    let mut out = Vec::new();
    for_each_successor(g, c.as_slice(), |s| {
        out.push(TokenSet::from_sorted(g.vertex_count(), s.to_vec()))
    });
    out
}

#[cfg(feature = "std")]
struct Clock(std::time::Instant, u64);

#[cfg(feature = "std")]
impl Clock {
    fn start(millis: u64) -> Self {
        Clock(std::time::Instant::now(), millis)
    }

    fn expired(&self) -> bool {
        self.0.elapsed().as_millis() >= u128::from(self.1)
    }
}

#[cfg(not(feature = "std"))]
struct Clock;

#[cfg(not(feature = "std"))]
impl Clock {
    fn start(_millis: u64) -> Self {
        Clock
    }

    fn expired(&self) -> bool {
        false
    }
}

fn search(g: &Graph, c: &TokenSet, lim: OracleLimits, goal: Option<&[u32]>) -> (StateSpace, bool) {
    let k = c.len();
    let mut space = StateSpace {
        start: c.clone(),
        flat: c.iter().map(|v| v as u32).collect(),
        visited: Visited::new(g.vertex_count()),
        truncated: false,
        depth: 0,
        max_frontier: 1,
    };
    let first: Vec<u32> = c.iter().map(|v| v as u32).collect();
    space.visited.insert(&first);
    if goal == Some(first.as_slice()) {
        return (space, true);
    }
    let clock = Clock::start(lim.max_millis);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    let mut current = Vec::with_capacity(k);
    let mut key = Vec::with_capacity(k);
    let mut expansions = 0usize;
    while let Some((index, depth)) = queue.pop_front() {
        expansions += 1;
        if expansions % 1024 == 0 && clock.expired() {
            space.truncated = true;
            break;
        }
        current.clear();
        current.extend(
            space.flat[index * k..(index + 1) * k]
                .iter()
                .map(|&v| v as usize),
        );
        let mut found = false;
        let mut full = false;
        for_each_successor(g, &current, |s| {
            if found || full {
                return;
            }
            key.clear();
            key.extend(s.iter().map(|&v| v as u32));
            if space.visited.contains(&key) {
                return;
            }
            if space.len() >= lim.max_states {
                full = true;
                return;
            }
            space.visited.insert(&key);
            space.flat.extend_from_slice(&key);
            queue.push_back((space.len() - 1, depth + 1));
            space.depth = space.depth.max(depth + 1);
            if goal == Some(key.as_slice()) {
                found = true;
            }
        });
        space.max_frontier = space.max_frontier.max(queue.len());
        if found {
            return (space, true);
        }
        if full {
            space.truncated = true;
            break;
        }
    }
    (space, false)
}

/// Breadth-first closure of [`successors`] from `c`.
pub fn enumerate_reachable(g: &Graph, c: &TokenSet, lim: OracleLimits) -> StateSpace {
    search(g, c, lim, None).0
}

/// Whether `c2` is reachable from `c1`; `Unknown` if a limit stopped the
/// search first.
pub fn oracle_reachable(g: &Graph, c1: &TokenSet, c2: &TokenSet, lim: OracleLimits) -> Answer {
    if c1.len() != c2.len() {
        return Answer::No;
    }
    let goal: Vec<u32> = c2.iter().map(|v| v as u32).collect();
    let (space, found) = search(g, c1, lim, Some(&goal));
    if found {
        Answer::Yes
    } else if space.truncated {
        Answer::Unknown
    } else {
        Answer::No
    }
}

/// The potential of every pair by its definition: the maximum over all
/// reachable `C'` of `cap(C'[p]) + |interior(C'[p])| - |interior(C[p])|`.
/// `None` when the space is truncated.
pub fn potentials_from_space(
    space: &StateSpace,
    bd: &BlockDecomposition,
    ua: &UaTable,
) -> Option<Vec<i64>> {
    if space.truncated {
        return None;
    }
    let pairs = bd.pairs();
    let interior = |state: &[usize], id: usize| {
        state
            .iter()
            .filter(|&&v| v != pairs[id].base && bd.side_contains(id, v))
            .count() as i64
    };
    let start = space.start().as_slice();
    let base: Vec<i64> = (0..pairs.len()).map(|id| interior(start, id)).collect();
    let mut best = vec![i64::MIN; pairs.len()];
    for state in space.states() {
        let c = TokenSet::from_sorted(space.start().universe(), state);
        let caps = capacity_table_signed(bd, ua, &c);
        for id in 0..pairs.len() {
            let value = caps[id] + interior(c.as_slice(), id) - base[id];
            best[id] = best[id].max(value);
        }
    }
    Some(best)
}

/// The potential of one pair by its definition, or `None` on truncation.
pub fn oracle_potential(
    g: &Graph,
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    p: Pair,
    lim: OracleLimits,
) -> Result<Option<i64>> {
    let id = bd.find(p)?;
    let space = enumerate_reachable(g, c, lim);
    Ok(potentials_from_space(&space, bd, ua).map(|all| all[id]))
}

/// Vertices that carry a token in no reachable state.
pub fn never_token_vertices(space: &StateSpace) -> Result<Vec<usize>> {
    if space.truncated {
        return Err(Error::TruncatedSpace);
    }
    let universe = space.start().universe();
    let mut seen = vec![false; universe];
    for &v in &space.flat {
        seen[v as usize] = true;
    }
    Ok((0..universe).filter(|&v| !seen[v]).collect())
}
