//! Rigid cut vertices and the reachability decision.
//!
//! A cut vertex `u` is *rigid* for `C` when two distinct blocks `B, B'`
//! containing it have `pot(C, (B, u)) = pot(C, (B', u)) = 0` and
//! `ua(B, u) = ua(B', u) = True`. No token can ever reach a rigid vertex.
//! Two equal-size token sets of a connected block graph are reachable from
//! each other exactly when their rigid sets agree and every component left
//! after deleting the rigid vertices holds the same number of tokens of
//! each.

use alloc::vec::Vec;
use core::fmt;

use crate::blocks::{decompose, BlockDecomposition, PairKind};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, TokenSet};
use crate::potential::{compute_potentials, PotentialTable, Strategy};
use crate::structure::{compute_depths, compute_ua, UaTable};

/// Cut vertices rigid for one token set, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RigidSet {
    pub vertices: Vec<usize>,
}

impl RigidSet {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn rigid_vertices(bd: &BlockDecomposition, ua: &UaTable, pot: &PotentialTable) -> RigidSet {
    let vertices = bd
        .cut_vertices()
        .iter()
        .copied()
        .filter(|&u| {
            let stuck = bd
                .to_vertex_pairs(u)
                .filter(|&(_, id)| pot.get(id) == 0 && ua.get(id))
                .count();
            let rigid = stuck >= 2;
            if rigid {
                debug_assert!(bd.blocks_of(u).iter().all(|&b| {
                    let id = bd.pair_id(PairKind::ToBlock, u, b).expect("pair");
                    ua.get(id) && pot.get(id) == 0
                }));
            }
            rigid
        })
        .collect();
    RigidSet { vertices }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    UnequalSize,
    RigidMismatch,
    ComponentCountMismatch,
    Reachable,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::UnequalSize => "unequal-size",
            Reason::RigidMismatch => "rigid-mismatch",
            Reason::ComponentCountMismatch => "component-count-mismatch",
            Reason::Reachable => "reachable",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Diagnostics for one connected component of the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub source_tokens: usize,
    pub target_tokens: usize,
    pub rigid_source: Vec<usize>,
    pub rigid_target: Vec<usize>,
    /// `(source, target)` token counts per component of the component with
    /// its rigid vertices deleted. Empty when the rigid sets differ or the
    /// pipeline did not run.
    pub split_counts: Vec<(usize, usize)>,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub reachable: bool,
    pub reason: Reason,
    pub components: Vec<ComponentReport>,
}

impl Verdict {
    fn from_reports(components: Vec<ComponentReport>) -> Self {
        let reason = components
            .iter()
            .map(|r| r.reason)
            .find(|&r| r != Reason::Reachable)
            .unwrap_or(Reason::Reachable);
        Verdict {
            reachable: reason == Reason::Reachable,
            reason,
            components,
        }
    }
}

/// Depth, `ua` and potentials of both token sets for one connected graph.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub ua: UaTable,
    pub source: PotentialTable,
    pub target: PotentialTable,
    pub rigid_source: RigidSet,
    pub rigid_target: RigidSet,
}

pub fn analyze(
    bd: &BlockDecomposition,
    c1: &TokenSet,
    c2: &TokenSet,
    strategy: Strategy,
) -> Result<Analysis> {
    let ua = compute_ua(bd, &compute_depths(bd));
    let source = compute_potentials(bd, &ua, c1, strategy)?;
    let target = compute_potentials(bd, &ua, c2, strategy)?;
    let rigid_source = rigid_vertices(bd, &ua, &source);
    let rigid_target = rigid_vertices(bd, &ua, &target);
    Ok(Analysis {
        ua,
        source,
        target,
        rigid_source,
        rigid_target,
    })
}

/// Decides reachability on a connected block graph for token sets of equal
/// size. The report is in the vertex numbering of `g`.
pub fn decide_connected(
    g: &Graph,
    bd: &BlockDecomposition,
    c1: &TokenSet,
    c2: &TokenSet,
    strategy: Strategy,
) -> Result<Verdict> {
    if bd.component_count() > 1 {
        return Err(Error::PreconditionViolated("graph is not connected"));
    }
    if c1.len() != c2.len() {
        return Err(Error::PreconditionViolated("token sets differ in size"));
    }
    if c1.universe() != g.vertex_count() || c2.universe() != g.vertex_count() {
        return Err(Error::PreconditionViolated(
            "token set belongs to a different graph",
        ));
    }
    if let Some(b) = bd.first_non_clique_block(g) {
        return Err(Error::NotABlockGraph(b));
    }
    let a = analyze(bd, c1, c2, strategy)?;
    let mut report = ComponentReport {
        vertices: (0..g.vertex_count()).collect(),
        source_tokens: c1.len(),
        target_tokens: c2.len(),
        rigid_source: a.rigid_source.vertices.clone(),
        rigid_target: a.rigid_target.vertices.clone(),
        split_counts: Vec::new(),
        reason: Reason::RigidMismatch,
    };
    if a.rigid_source == a.rigid_target {
        let (rest, kept) = g.without_vertices(&a.rigid_source.vertices)?;
        report.split_counts = connected_components(&rest)
            .into_iter()
            .map(|comp| {
                let count = |c: &TokenSet| comp.iter().filter(|&&v| c.contains(kept[v])).count();
                (count(c1), count(c2))
            })
            .collect();
        report.reason = if report.split_counts.iter().all(|&(a, b)| a == b) {
            Reason::Reachable
        } else {
            Reason::ComponentCountMismatch
        };
    }
    Ok(Verdict::from_reports(alloc::vec![report]))
}

/// Decides whether `c2` is reachable from `c1` in the block graph `g` by
/// token sliding, one connected component at a time.
pub fn decide(g: &Graph, c1: &TokenSet, c2: &TokenSet) -> Result<Verdict> {
    decide_with(g, c1, c2, Strategy::default())
}

pub fn decide_with(g: &Graph, c1: &TokenSet, c2: &TokenSet, strategy: Strategy) -> Result<Verdict> {
    let n = g.vertex_count();
    if c1.universe() != n || c2.universe() != n {
        return Err(Error::PreconditionViolated(
            "token set belongs to a different graph",
        ));
    }
    for c in [c1, c2] {
        for v in c.iter() {
            if let Some(&w) = g.neighbors(v).iter().find(|&&w| c.contains(w)) {
                return Err(Error::NotIndependent(v.min(w), v.max(w)));
            }
        }
    }
    let bd = decompose(g);
    if let Some(b) = bd.first_non_clique_block(g) {
        return Err(Error::NotABlockGraph(b));
    }

    let components = connected_components(g);
    let counted: Vec<(usize, usize)> = components
        .iter()
        .map(|comp| {
            let count = |c: &TokenSet| comp.iter().filter(|&&v| c.contains(v)).count();
            (count(c1), count(c2))
        })
        .collect();
    let sizes_match = c1.len() == c2.len() && counted.iter().all(|&(a, b)| a == b);

    let mut reports = Vec::with_capacity(components.len());
    for (comp, &(s, t)) in components.into_iter().zip(&counted) {
        let trivial = |reason| ComponentReport {
            vertices: comp.clone(),
            source_tokens: s,
            target_tokens: t,
            rigid_source: Vec::new(),
            rigid_target: Vec::new(),
            split_counts: Vec::new(),
            reason,
        };
        if s != t {
            reports.push(trivial(Reason::UnequalSize));
            continue;
        }
        if !sizes_match || s == 0 {
            reports.push(trivial(Reason::Reachable));
            continue;
        }
        let sub = g.induced_subgraph(&comp)?;
        let sub_bd = decompose(&sub);
        let local = decide_connected(
            &sub,
            &sub_bd,
            &c1.restrict_to(&comp),
            &c2.restrict_to(&comp),
            strategy,
        )?;
        let mut r = local.components.into_iter().next().expect("one report");
        let global = |vs: &[usize]| vs.iter().map(|&v| comp[v]).collect::<Vec<_>>();
        r.rigid_source = global(&r.rigid_source);
        r.rigid_target = global(&r.rigid_target);
        r.vertices = comp;
        reports.push(r);
    }
    if !sizes_match {
        return Ok(Verdict {
            reachable: false,
            reason: Reason::UnequalSize,
            components: reports,
        });
    }
    Ok(Verdict::from_reports(reports))
}
