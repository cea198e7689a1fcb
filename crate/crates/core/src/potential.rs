//! Capacities of restricted token sets and the fixed-point potential
//! computation.
//!
//! Booleans enter the arithmetic as `True = 1`, `False = 0`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::{BlockDecomposition, Pair, PairId, PairKind};
use crate::error::{Error, Result};
use crate::graph::TokenSet;
use crate::structure::{evaluate_from, UaTable};

/// `C[p]` and its interior `C[p] \ {base}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub pair: Pair,
    pub tokens_in_side: Vec<usize>,
    pub interior: Vec<usize>,
}

pub fn restrict(bd: &BlockDecomposition, c: &TokenSet, p: Pair) -> Result<Restriction> {
    let id = bd.find(p)?;
    let tokens_in_side: Vec<usize> = c.iter().filter(|&v| bd.side_contains(id, v)).collect();
    let interior = tokens_in_side
        .iter()
        .copied()
        .filter(|&v| v != p.base)
        .collect();
    Ok(Restriction {
        pair: p,
        tokens_in_side,
        interior,
    })
}

/// `|B ∩ (C \ {u})|` for the pair `(B, u)` or `(u, B)`.
fn tokens_in_block_off_base(bd: &BlockDecomposition, c: &TokenSet, p: Pair) -> i64 {
    bd.block(p.block)
        .iter()
        .filter(|&&v| v != p.base && c.contains(v))
        .count() as i64
}

fn capacity_step(
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    id: PairId,
    child: impl Fn(PairId) -> i64,
) -> i64 {
    let p = bd.pair(id);
    let value = match p.kind {
        PairKind::ToVertex => {
            bd.children(id).map(&child).sum::<i64>() + ua.bit(id)
                - tokens_in_block_off_base(bd, c, p)
        }
        PairKind::ToBlock => {
            if bd.children(id).any(|b| child(b) == 0 && ua.get(b)) {
                0
            } else {
                bd.children(id).map(|b| child(b) - ua.bit(b)).sum::<i64>() + ua.bit(id)
            }
        }
    };
    value
}

fn non_negative(value: i64, p: Pair) -> usize {
    usize::try_from(value).unwrap_or_else(|_| panic!("negative capacity {value} at {p:?}"))
}

/// `cap(C[p])`. Only the tokens of `c` inside `G[p]` matter.
pub fn capacity(bd: &BlockDecomposition, ua: &UaTable, c: &TokenSet, p: Pair) -> Result<usize> {
    let id = bd.find(p)?;
    let mut memo = vec![None; bd.pair_count()];
    fill_capacity(bd, ua, c, id, &mut memo);
    Ok(non_negative(memo[id].expect("evaluated"), p))
}

/// `cap(C[p])` for every pair at once. Restrictions of `C` to nested sides
/// coincide, so a single memo serves all pairs.
pub fn capacity_table(bd: &BlockDecomposition, ua: &UaTable, c: &TokenSet) -> Vec<usize> {
    capacity_table_signed(bd, ua, c)
        .into_iter()
        .enumerate()
        .map(|(id, v)| non_negative(v, bd.pair(id)))
        .collect()
}

/// As [`capacity_table`], but reports a negative capacity instead of
/// panicking on it.
pub fn capacity_table_signed(bd: &BlockDecomposition, ua: &UaTable, c: &TokenSet) -> Vec<i64> {
    let mut memo = vec![None; bd.pair_count()];
    for id in 0..bd.pair_count() {
        fill_capacity(bd, ua, c, id, &mut memo);
    }
    memo.into_iter().map(|v| v.expect("evaluated")).collect()
}

fn fill_capacity(
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    id: PairId,
    memo: &mut [Option<i64>],
) {
    evaluate_from(bd, id, memo, &mut |id, memo: &[Option<i64>]| {
        capacity_step(bd, ua, c, id, |k| memo[k].expect("child first"))
    });
}

/// How [`compute_potentials`] searches for the next pair to raise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Every pass rescans the pairs in canonical order and stops at the
    /// first strict increase.
    #[default]
    Faithful,
    /// Keeps the set of currently improvable pairs and re-examines only the
    /// pairs reading an updated value. Performs the same updates in the same
    /// order as `Faithful`, hence the same table and pass count.
    Worklist,
}

/// Final values `x[p]`, equal to the potentials of the token set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialTable {
    values: Vec<usize>,
    /// Number of passes of the outer loop, including the final pass that
    /// changes nothing. Depends on the pair order.
    pub iteration_count: usize,
}

impl PotentialTable {
    pub fn get(&self, p: PairId) -> usize {
        self.values[p]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }
}

/// One raise of `y[pair]` during the fixed-point loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Update {
    pub pass: usize,
    pub pair: PairId,
    pub from: usize,
    pub to: usize,
}

struct Iteration<'a> {
    bd: &'a BlockDecomposition,
    ua: &'a UaTable,
    /// `|B ∩ interior(C[B, u])|` for `(B, u)` pairs.
    in_block: Vec<i64>,
    y: Vec<i64>,
}

impl<'a> Iteration<'a> {
    fn new(bd: &'a BlockDecomposition, ua: &'a UaTable, c: &TokenSet) -> Self {
        let in_block = bd
            .pairs()
            .iter()
            .map(|&p| match p.kind {
                PairKind::ToVertex => tokens_in_block_off_base(bd, c, p),
                PairKind::ToBlock => 0,
            })
            .collect();
        Iteration {
            bd,
            ua,
            in_block,
            y: vec![0; bd.pair_count()],
        }
    }

    /// The value `y'` the loop body computes for `id`; `None` when the
    /// guard of the `(u, B)` branch fails and `y'` keeps `y[id]`.
    fn proposal(&self, id: PairId) -> Option<i64> {
        let p = self.bd.pair(id);
        let y = &self.y;
        match p.kind {
            PairKind::ToVertex => Some(
                self.bd.children(id).map(|c| y[c]).sum::<i64>() + self.ua.bit(id)
                    - self.in_block[id],
            ),
            PairKind::ToBlock => {
                let stuck = self
                    .bd
                    .to_vertex_pairs(p.base)
                    .filter(|&(_, q)| y[q] == 0 && self.ua.get(q))
                    .count();
                if stuck >= 2 {
                    None
                } else {
                    Some(
                        self.bd
                            .children(id)
                            .map(|c| y[c] - self.ua.bit(c))
                            .sum::<i64>()
                            + self.ua.bit(id),
                    )
                }
            }
        }
    }

    fn improvable(&self, id: PairId) -> bool {
        self.proposal(id).is_some_and(|v| v > self.y[id])
    }

    fn raise(&mut self, id: PairId, pass: usize, trace: &mut Option<Vec<Update>>) {
        let v = self.proposal(id).expect("improvable pair has a proposal");
        debug_assert!(v > self.y[id], "values only increase");
        if let Some(t) = trace {
            t.push(Update {
                pass,
                pair: id,
                from: self.y[id] as usize,
                to: v as usize,
            });
        }
        self.y[id] = v;
    }

    /// Pairs whose proposal reads `y[id]`.
    fn readers(&self, id: PairId) -> impl Iterator<Item = PairId> + '_ {
        let p = self.bd.pair(id);
        let (by_vertex, by_block) = match p.kind {
            PairKind::ToVertex => (Some(p.base), None),
            PairKind::ToBlock => (None, Some(p.block)),
        };
        let a = by_vertex.into_iter().flat_map(move |u| {
            self.bd
                .blocks_of(u)
                .iter()
                .map(move |&b| self.bd.pair_id(PairKind::ToBlock, u, b).expect("pair"))
        });
        let b = by_block.into_iter().flat_map(move |b| {
            self.bd
                .cuts_of_block(b)
                .iter()
                .filter(move |&&u| u != p.base)
                .map(move |&u| self.bd.pair_id(PairKind::ToVertex, u, b).expect("pair"))
        });
        a.chain(b)
    }

    fn run_faithful(&mut self, trace: &mut Option<Vec<Update>>) -> usize {
        let mut passes = 0;
        loop {
            passes += 1;
            let Some(id) = (0..self.bd.pair_count()).find(|&id| self.improvable(id)) else {
                return passes;
            };
            self.raise(id, passes, trace);
        }
    }

    fn run_worklist(&mut self, trace: &mut Option<Vec<Update>>) -> usize {
        let mut pending: BTreeSet<PairId> = (0..self.bd.pair_count())
            .filter(|&id| self.improvable(id))
            .collect();
        let mut passes = 0;
        loop {
            passes += 1;
            let Some(id) = pending.pop_first() else {
                return passes;
            };
            self.raise(id, passes, trace);
            let touched: Vec<PairId> = self.readers(id).chain([id]).collect();
            for r in touched {
                if self.improvable(r) {
                    pending.insert(r);
                } else {
                    pending.remove(&r);
                }
            }
        }
    }
}

/// Runs the potential fixed-point loop for the token set `c` on a connected
/// block graph.
pub fn compute_potentials(
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    strategy: Strategy,
) -> Result<PotentialTable> {
    compute(bd, ua, c, strategy, &mut None)
}

/// As [`compute_potentials`], also returning every update performed.
pub fn compute_potentials_traced(
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    strategy: Strategy,
) -> Result<(PotentialTable, Vec<Update>)> {
    let mut trace = Some(Vec::new());
    let table = compute(bd, ua, c, strategy, &mut trace)?;
    Ok((table, trace.unwrap_or_default()))
}

fn compute(
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    strategy: Strategy,
    trace: &mut Option<Vec<Update>>,
) -> Result<PotentialTable> {
    if bd.component_count() > 1 {
        return Err(Error::NotConnected);
    }
    if c.universe() != bd.vertex_count() {
        return Err(Error::PreconditionViolated(
            "token set belongs to a different graph",
        ));
    }
    let mut it = Iteration::new(bd, ua, c);
    let iteration_count = match strategy {
        Strategy::Faithful => it.run_faithful(trace),
        Strategy::Worklist => it.run_worklist(trace),
    };
    let values = it.y.into_iter().map(|v| v as usize).collect();
    Ok(PotentialTable {
        values,
        iteration_count,
    })
}

/// `2m(n + m - 1) + 1` with `n` cut vertices and `m` blocks: the most
/// passes the fixed-point loop can take.
pub fn iteration_bound(bd: &BlockDecomposition) -> usize {
    let n = bd.cut_vertices().len();
    let m = bd.block_count();
    if m == 0 {
        return 1;
    }
    2 * m * (n + m - 1) + 1
}

/// Pairs at which `table` violates the fixed-point equations. Written
/// against [`BlockDecomposition::kappa`] / [`BlockDecomposition::beta`]
/// rather than the loop's internal accessors.
pub fn fixed_point_violations(
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    table: &PotentialTable,
) -> Vec<PairId> {
    let x = |k: Pair| table.get(bd.find(k).expect("pair")) as i64;
    let ua_of = |k: Pair| ua.get(bd.find(k).expect("pair"));
    let mut bad = Vec::new();
    for (id, &p) in bd.pairs().iter().enumerate() {
        let expected = match p.kind {
            PairKind::ToVertex => {
                let sum: i64 = bd
                    .kappa(p.block, p.base)
                    .expect("pair")
                    .into_iter()
                    .map(|v| {
                        x(Pair {
                            base: v,
                            block: p.block,
                            kind: PairKind::ToBlock,
                        })
                    })
                    .sum();
                let off_base = bd
                    .block(p.block)
                    .iter()
                    .filter(|&&v| v != p.base && c.contains(v))
                    .count() as i64;
                sum + i64::from(ua.get(id)) - off_base
            }
            PairKind::ToBlock => {
                let towards = |b| Pair {
                    base: p.base,
                    block: b,
                    kind: PairKind::ToVertex,
                };
                let stuck = bd
                    .blocks_of(p.base)
                    .iter()
                    .filter(|&&b| x(towards(b)) == 0 && ua_of(towards(b)))
                    .count();
                if stuck >= 2 {
                    0
                } else {
                    bd.beta(p.base, p.block)
                        .expect("pair")
                        .into_iter()
                        .map(|b| x(towards(b)) - i64::from(ua_of(towards(b))))
                        .sum::<i64>()
                        + i64::from(ua.get(id))
                }
            }
        };
        if expected != table.get(id) as i64 {
            bad.push(id);
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::decompose;
    use crate::graph::Graph;
    use crate::structure::{compute_depths, compute_ua};

    struct Fixture {
        g: Graph,
        bd: BlockDecomposition,
        ua: UaTable,
    }

    fn fixture(n: usize, edges: &[(usize, usize)]) -> Fixture {
        let g = Graph::new(n, edges).unwrap();
        let bd = decompose(&g);
        let ua = compute_ua(&bd, &compute_depths(&bd));
        Fixture { g, bd, ua }
    }

    fn p3() -> Fixture {
        fixture(3, &[(0, 1), (1, 2)])
    }

    fn star() -> Fixture {
        fixture(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn pair(base: usize, block: usize, kind: PairKind) -> Pair {
        Pair { base, block, kind }
    }

    #[test]
    fn restrict_examples() {
        let f = p3();
        let to_b0 = pair(1, 0, PairKind::ToVertex);
        let c = TokenSet::new(&f.g, [0, 2]).unwrap();
        let r = restrict(&f.bd, &c, to_b0).unwrap();
        assert_eq!((r.tokens_in_side, r.interior), (vec![0], vec![0]));
        let c = TokenSet::new(&f.g, [1]).unwrap();
        let r = restrict(&f.bd, &c, to_b0).unwrap();
        assert_eq!((r.tokens_in_side, r.interior), (vec![1], vec![]));
        let c = TokenSet::empty(3);
        for &p in f.bd.pairs() {
            let r = restrict(&f.bd, &c, p).unwrap();
            assert!(r.tokens_in_side.is_empty() && r.interior.is_empty());
        }
        assert_eq!(
            restrict(&f.bd, &c, pair(0, 0, PairKind::ToBlock)),
            Err(Error::InvalidPair)
        );
    }

    #[test]
    fn capacity_of_complete_side() {
        // A depth-0 pair has capacity 1 - |interior|.
        let f = p3();
        for (tokens, expected) in [(vec![], 1), (vec![0], 0), (vec![1], 1)] {
            let c = TokenSet::new(&f.g, tokens).unwrap();
            let cap = capacity(&f.bd, &f.ua, &c, pair(1, 0, PairKind::ToVertex)).unwrap();
            assert_eq!(cap, expected);
        }
    }

    #[test]
    fn capacity_examples() {
        let f = p3();
        let c = TokenSet::new(&f.g, [0]).unwrap();
        let cap = |p| capacity(&f.bd, &f.ua, &c, p).unwrap();
        assert_eq!(cap(pair(1, 0, PairKind::ToVertex)), 0);
        assert_eq!(cap(pair(1, 1, PairKind::ToVertex)), 1);
        assert_eq!(cap(pair(1, 0, PairKind::ToBlock)), 1);

        let f = star();
        let c = TokenSet::new(&f.g, [1, 2]).unwrap();
        let cap = |p| capacity(&f.bd, &f.ua, &c, p).unwrap();
        assert_eq!(cap(pair(0, 0, PairKind::ToVertex)), 0);
        assert_eq!(cap(pair(0, 2, PairKind::ToVertex)), 1);
        assert_eq!(cap(pair(0, 2, PairKind::ToBlock)), 0);
        let table = capacity_table(&f.bd, &f.ua, &c);
        for (id, &p) in f.bd.pairs().iter().enumerate() {
            assert_eq!(table[id], cap(p));
        }
    }

    fn potentials(f: &Fixture, tokens: &[usize]) -> PotentialTable {
        let c = TokenSet::new(&f.g, tokens.iter().copied()).unwrap();
        let faithful = compute_potentials(&f.bd, &f.ua, &c, Strategy::Faithful).unwrap();
        let worklist = compute_potentials(&f.bd, &f.ua, &c, Strategy::Worklist).unwrap();
        assert_eq!(faithful, worklist);
        assert!(fixed_point_violations(&f.bd, &f.ua, &c, &faithful).is_empty());
        faithful
    }

    #[test]
    fn potentials_of_path() {
        let f = p3();
        let t = potentials(&f, &[0]);
        let pot = |p| t.get(f.bd.find(p).unwrap());
        assert_eq!(pot(pair(1, 0, PairKind::ToVertex)), 0);
        assert_eq!(pot(pair(1, 1, PairKind::ToVertex)), 1);
        assert_eq!(pot(pair(1, 0, PairKind::ToBlock)), 1);
        assert_eq!(pot(pair(1, 1, PairKind::ToBlock)), 0);
    }

    #[test]
    fn potentials_of_blocked_star() {
        let f = star();
        let t = potentials(&f, &[1, 2]);
        let pot = |p| t.get(f.bd.find(p).unwrap());
        assert_eq!(pot(pair(0, 0, PairKind::ToVertex)), 0);
        assert_eq!(pot(pair(0, 1, PairKind::ToVertex)), 0);
        assert_eq!(pot(pair(0, 2, PairKind::ToVertex)), 1);
        for b in 0..3 {
            assert_eq!(pot(pair(0, b, PairKind::ToBlock)), 0);
        }
    }

    #[test]
    fn clique_has_no_pairs() {
        let f = fixture(3, &[(0, 1), (0, 2), (1, 2)]);
        let t = potentials(&f, &[2]);
        assert!(t.as_slice().is_empty());
        assert_eq!(t.iteration_count, 1);
    }

    #[test]
    fn rejects_disconnected_graph() {
        let f = fixture(4, &[(0, 1), (2, 3)]);
        let c = TokenSet::empty(4);
        assert_eq!(
            compute_potentials(&f.bd, &f.ua, &c, Strategy::Faithful),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn trace_is_monotone_with_one_update_per_pass() {
        let f = fixture(7, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6)]);
        let c = TokenSet::new(&f.g, [0, 5]).unwrap();
        for strategy in [Strategy::Faithful, Strategy::Worklist] {
            let (table, trace) = compute_potentials_traced(&f.bd, &f.ua, &c, strategy).unwrap();
            assert_eq!(trace.len() + 1, table.iteration_count);
            for (i, u) in trace.iter().enumerate() {
                assert_eq!(u.pass, i + 1);
                assert!(u.to > u.from);
            }
            assert!(table.iteration_count <= iteration_bound(&f.bd));
        }
    }
}
