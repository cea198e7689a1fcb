//! Token-independent per-pair tables: depth and `ua`.
//!
//! Both are defined by recursion over [`BlockDecomposition::children`], which
//! always moves strictly away from the base, so a post-order walk of the
//! pair DAG evaluates them. The walk uses an explicit stack so long paths do
//! not exhaust the call stack.

use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::{BlockDecomposition, PairId, PairKind};

/// `d(p)` for every pair, indexed by [`PairId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthTable {
    values: Vec<usize>,
}

impl DepthTable {
    pub fn get(&self, p: PairId) -> usize {
        self.values[p]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }
}

/// `ua(p)` for every pair, indexed by [`PairId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UaTable {
    values: Vec<bool>,
}

impl UaTable {
    pub fn get(&self, p: PairId) -> bool {
        self.values[p]
    }

    /// `ua(p)` as 0 or 1, for use inside the capacity formulas.
    pub fn bit(&self, p: PairId) -> i64 {
        i64::from(self.values[p])
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.values
    }
}

/// Evaluates `f` on every pair reachable from `root` through
/// [`BlockDecomposition::children`], children first. Values already in
/// `memo` are reused.
pub(crate) fn evaluate_from<T: Copy>(
    bd: &BlockDecomposition,
    root: PairId,
    memo: &mut [Option<T>],
    f: &mut impl FnMut(PairId, &[Option<T>]) -> T,
) {
    if memo[root].is_some() {
        return;
    }
    let mut stack = vec![(root, false)];
    while let Some((id, expanded)) = stack.pop() {
        if memo[id].is_some() {
            continue;
        }
        if expanded {
            memo[id] = Some(f(id, memo));
        } else {
            stack.push((id, true));
            stack.extend(
                bd.children(id)
                    .filter(|&c| memo[c].is_none())
                    .map(|c| (c, false)),
            );
        }
    }
}

fn evaluate_all<T: Copy>(
    bd: &BlockDecomposition,
    mut f: impl FnMut(PairId, &[Option<T>]) -> T,
) -> Vec<T> {
    let mut memo = vec![None; bd.pair_count()];
    for id in 0..bd.pair_count() {
        evaluate_from(bd, id, &mut memo, &mut f);
    }
    memo.into_iter()
        .map(|v| v.expect("every pair evaluated"))
        .collect()
}

pub fn compute_depths(bd: &BlockDecomposition) -> DepthTable {
    let values = evaluate_all(bd, |id, memo: &[Option<usize>]| {
        let deepest = bd.children(id).map(|c| memo[c].expect("child first")).max();
        match (bd.pair(id).kind, deepest) {
            (PairKind::ToVertex, None) => 0,
            (_, Some(d)) => d + 1,
            // A cut vertex lies in at least two blocks, so β(u, B) is never
            // empty.
            (PairKind::ToBlock, None) => unreachable!("cut vertex with a single block"),
        }
    });
    DepthTable { values }
}

pub fn compute_ua(bd: &BlockDecomposition, depths: &DepthTable) -> UaTable {
    let values = evaluate_all(bd, |id, memo: &[Option<bool>]| {
        let p = bd.pair(id);
        let child = |c: PairId| memo[c].expect("child first");
        if depths.get(id) == 0 {
            return true;
        }
        match p.kind {
            PairKind::ToVertex => {
                let kappa_len = bd.cuts_of_block(p.block).len() - 1;
                let saturated = bd.block(p.block).len() == kappa_len + 1;
                !(bd.children(id).all(child) && saturated)
            }
            PairKind::ToBlock => bd.children(id).any(child),
        }
    });
    UaTable { values }
}
