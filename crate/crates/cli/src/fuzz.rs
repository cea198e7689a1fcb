//! Differential fuzzing of the solver against the exhaustive oracle.

use std::collections::BTreeSet;
use std::fmt;

use blockslide_core::blocks::decompose;
use blockslide_core::decision::decide_with;
use blockslide_core::generate::{sample_instance, Envelope};
use blockslide_core::graph::is_under_attack;
use blockslide_core::oracle::{
    enumerate_reachable, never_token_vertices, oracle_reachable, potentials_from_space, Answer,
    OracleLimits,
};
use blockslide_core::potential::{capacity_table_signed, fixed_point_violations, iteration_bound};
use blockslide_core::{
    compute_depths, compute_potentials, compute_ua, rigid_vertices, BlockDecomposition, Graph,
    PotentialTable, Strategy, TokenSet, UaTable, Verdict,
};

use crate::instance::Instance;

/// The computation under test.
pub trait Solver {
    fn decide(&self, g: &Graph, c1: &TokenSet, c2: &TokenSet) -> blockslide_core::Result<Verdict>;

    fn potentials(
        &self,
        bd: &BlockDecomposition,
        ua: &UaTable,
        c: &TokenSet,
    ) -> blockslide_core::Result<PotentialTable>;
}

/// The library's own solver.
#[derive(Debug, Clone, Copy, Default)]
pub struct Reference(pub Strategy);

impl Solver for Reference {
    fn decide(&self, g: &Graph, c1: &TokenSet, c2: &TokenSet) -> blockslide_core::Result<Verdict> {
        decide_with(g, c1, c2, self.0)
    }

    fn potentials(
        &self,
        bd: &BlockDecomposition,
        ua: &UaTable,
        c: &TokenSet,
    ) -> blockslide_core::Result<PotentialTable> {
        compute_potentials(bd, ua, c, self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Decision,
    Potential,
    Capacity,
    FixedPoint,
    IterationBound,
    Rigidity,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Decision,
        Check::Potential,
        Check::Capacity,
        Check::FixedPoint,
        Check::IterationBound,
        Check::Rigidity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Decision => "decision",
            Check::Potential => "potential",
            Check::Capacity => "capacity",
            Check::FixedPoint => "fixed-point",
            Check::IterationBound => "iteration-bound",
            Check::Rigidity => "rigidity",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub count: u64,
    pub seed: u64,
    pub envelope: Envelope,
    pub limits: OracleLimits,
    /// Stop after the first instance with a violation.
    pub stop_at_first: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            count: 1000,
            seed: 0,
            envelope: Envelope::default(),
            limits: OracleLimits::default(),
            stop_at_first: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub index: u64,
    pub check: Check,
    pub detail: String,
    pub instance: Instance,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    /// Instances generated.
    pub run: u64,
    /// Instances with no violation.
    pub ok: u64,
    /// Instances the oracle could not finish.
    pub skipped: u64,
    pub yes: u64,
    pub no: u64,
    /// Individual checks performed, per kind.
    pub checked: [u64; 6],
    /// Violations found, per kind.
    pub violations: [u64; 6],
    pub first_failure: Option<Failure>,
}

impl Report {
    pub fn violations_of(&self, check: Check) -> u64 {
        self.violations[check as usize]
    }

    pub fn checked_of(&self, check: Check) -> u64 {
        self.checked[check as usize]
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}/{} ok", self.ok, self.run);
        if self.skipped > 0 {
            s.push_str(&format!(", {} skipped", self.skipped));
        }
        s
    }
}

struct Recorder<'a> {
    report: &'a mut Report,
    index: u64,
    instance: &'a Instance,
    failed: bool,
}

impl Recorder<'_> {
    fn check(&mut self, check: Check, ok: bool, detail: impl FnOnce() -> String) {
        self.report.checked[check as usize] += 1;
        if ok {
            return;
        }
        self.report.violations[check as usize] += 1;
        self.failed = true;
        if self.report.first_failure.is_none() {
            self.report.first_failure = Some(Failure {
                index: self.index,
                check,
                detail: detail(),
                instance: self.instance.clone(),
            });
        }
    }
}

fn check_set(
    rec: &mut Recorder<'_>,
    solver: &dyn Solver,
    bd: &BlockDecomposition,
    ua: &UaTable,
    c: &TokenSet,
    limits: OracleLimits,
    label: &str,
) -> Option<()> {
    let g = &rec.instance.graph;
    let space = enumerate_reachable(g, c, limits);
    if space.truncated {
        return None;
    }
    let table = match solver.potentials(bd, ua, c) {
        Ok(t) => t,
        Err(e) => {
            rec.check(Check::Potential, false, || {
                format!("{label}: solver error {e}")
            });
            return Some(());
        }
    };
    let expected = potentials_from_space(&space, bd, ua)?;
    let got: Vec<i64> = table.as_slice().iter().map(|&v| v as i64).collect();
    rec.check(Check::Potential, got == expected, || {
        format!("{label}: potentials {got:?}, oracle {expected:?}")
    });

    let caps = capacity_table_signed(bd, ua, c);
    for (id, p) in bd.pairs().iter().enumerate() {
        let side = bd.side_vertices(*p).expect("pair").vertices;
        let restricted = TokenSet::new(g, c.iter().filter(|v| side.contains(v))).expect("subset");
        let attacked = is_under_attack(g, &restricted, p.base).expect("vertex");
        let ok = caps[id] >= 0 && (!(ua.get(id) && !attacked) || caps[id] > 0);
        rec.check(Check::Capacity, ok, || {
            format!("{label}: cap {} at pair {p:?}", caps[id])
        });
    }

    let bad = fixed_point_violations(bd, ua, c, &table);
    let over: Vec<usize> = (0..bd.pair_count())
        .filter(|&id| table.get(id) > bd.side_block_count(id))
        .collect();
    rec.check(Check::FixedPoint, bad.is_empty() && over.is_empty(), || {
        format!("{label}: equations fail at {bad:?}, bound fails at {over:?}")
    });

    let bound = iteration_bound(bd);
    rec.check(
        Check::IterationBound,
        table.iteration_count <= bound,
        || format!("{label}: {} passes, bound {bound}", table.iteration_count),
    );

    let rigid = rigid_vertices(bd, ua, &table);
    let never: BTreeSet<usize> = never_token_vertices(&space).ok()?.into_iter().collect();
    let escaped: Vec<usize> = rigid
        .vertices
        .iter()
        .copied()
        .filter(|v| !never.contains(v))
        .collect();
    rec.check(Check::Rigidity, escaped.is_empty(), || {
        format!("{label}: rigid vertices {escaped:?} receive tokens")
    });
    Some(())
}

/// Checks one instance, adding its outcome to `report`.
pub fn check_instance(
    report: &mut Report,
    solver: &dyn Solver,
    index: u64,
    instance: &Instance,
    limits: OracleLimits,
) {
    report.run += 1;
    let truth = oracle_reachable(&instance.graph, &instance.source, &instance.target, limits);
    if truth == Answer::Unknown {
        report.skipped += 1;
        return;
    }
    let mut rec = Recorder {
        report,
        index,
        instance,
        failed: false,
    };
    let answer = solver.decide(&instance.graph, &instance.source, &instance.target);
    match &answer {
        Ok(v) => rec.check(
            Check::Decision,
            v.reachable == (truth == Answer::Yes),
            || {
                format!(
                    "solver says {}, oracle says {truth:?}",
                    if v.reachable { "YES" } else { "NO" }
                )
            },
        ),
        Err(e) => rec.check(Check::Decision, false, || format!("solver error: {e}")),
    }
    let bd = decompose(&instance.graph);
    let mut complete = bd.component_count() == 1;
    if complete {
        let ua = compute_ua(&bd, &compute_depths(&bd));
        for (c, label) in [(&instance.source, "source"), (&instance.target, "target")] {
            complete &= check_set(&mut rec, solver, &bd, &ua, c, limits, label).is_some();
        }
    }
    let failed = rec.failed;
    if truth == Answer::Yes {
        report.yes += 1;
    } else {
        report.no += 1;
    }
    if !complete && !failed {
        report.skipped += 1;
    } else if !failed {
        report.ok += 1;
    }
}

pub fn run(cfg: &FuzzConfig, solver: &dyn Solver) -> blockslide_core::Result<Report> {
    let mut report = Report::default();
    for index in 0..cfg.count {
        let instance = sample_instance(cfg.seed, index, &cfg.envelope)?.into();
        check_instance(&mut report, solver, index, &instance, cfg.limits);
        if cfg.stop_at_first && !report.passed() {
            break;
        }
    }
    Ok(report)
}
