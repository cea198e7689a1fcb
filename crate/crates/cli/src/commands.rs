//! Subcommand bodies. Each returns the text for standard output or an error
//! carrying the process exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use blockslide_core::blocks::decompose;
use blockslide_core::decision::decide_with;
use blockslide_core::generate::{gen_block_graph, gen_independent_set, GenParams};
use blockslide_core::graph::connected_components;
use blockslide_core::oracle::{enumerate_reachable, oracle_reachable, Answer, OracleLimits};
use blockslide_core::{compute_depths, compute_potentials, compute_ua, Error, PairKind, Strategy};
use thiserror::Error;

use crate::fuzz::{self, FuzzConfig, Report};
use crate::instance::{self, Instance, ParseError, Which};

pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_BLOCK_GRAPH: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Solver(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(Error::NotABlockGraph(_)) => EXIT_NOT_BLOCK_GRAPH,
            _ => EXIT_INPUT,
        }
    }
}

pub fn read_instance(path: &str) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    Ok(instance::parse(&text)?)
}

fn one_based(vs: &[usize]) -> String {
    let list: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", list.join(","))
}

pub fn decide(inst: &Instance, strategy: Strategy, verbose: bool) -> Result<String, CliError> {
    let verdict = decide_with(&inst.graph, &inst.source, &inst.target, strategy)?;
    let mut out = format!(
        "{}\nreason: {}\n",
        if verdict.reachable { "YES" } else { "NO" },
        verdict.reason
    );
    if verbose {
        for (i, c) in verdict.components.iter().enumerate() {
            let _ = writeln!(
                out,
                "component {}: vertices {} tokens {}/{} rigid {} / {} reason {}",
                i + 1,
                one_based(&c.vertices),
                c.source_tokens,
                c.target_tokens,
                one_based(&c.rigid_source),
                one_based(&c.rigid_target),
                c.reason
            );
        }
    }
    Ok(out)
}

/// One line per pair: potential, `ua` and depth, in canonical pair order
/// (with a `#` header per connected component when there are several).
pub fn potentials(inst: &Instance, which: Which, strategy: Strategy) -> Result<String, CliError> {
    let g = &inst.graph;
    let c = match which {
        Which::Source => &inst.source,
        Which::Target => &inst.target,
    };
    let bd = decompose(g);
    if let Some(b) = bd.first_non_clique_block(g) {
        return Err(Error::NotABlockGraph(b).into());
    }
    let block_ids: BTreeMap<&[usize], usize> =
        (0..bd.block_count()).map(|b| (bd.block(b), b)).collect();
    let parts = connected_components(g);
    let mut out = String::new();
    for (k, part) in parts.iter().enumerate() {
        if parts.len() > 1 {
            let _ = writeln!(out, "# component {}: vertices {}", k + 1, one_based(part));
        }
        let h = g.induced_subgraph(part)?;
        let hd = decompose(&h);
        let depths = compute_depths(&hd);
        let ua = compute_ua(&hd, &depths);
        let pot = compute_potentials(&hd, &ua, &c.restrict_to(part), strategy)?;
        let mut lines = Vec::with_capacity(hd.pair_count());
        for (id, p) in hd.pairs().iter().enumerate() {
            let members: Vec<usize> = hd.block(p.block).iter().map(|&v| part[v]).collect();
            let block = block_ids[members.as_slice()];
            let base = part[p.base];
            let arrow = match p.kind {
                PairKind::ToBlock => format!("{}->B{}", base + 1, block),
                PairKind::ToVertex => format!("B{}->{}", block, base + 1),
            };
            let line = format!(
                "pot {arrow} = {} ua={} d={}",
                pot.get(id),
                ua.bit(id),
                depths.get(id)
            );
            lines.push(((base, block, p.kind), line));
        }
        lines.sort();
        for (_, line) in lines {
            out.push_str(&line);
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn oracle(inst: &Instance, limits: OracleLimits) -> String {
    let answer = oracle_reachable(&inst.graph, &inst.source, &inst.target, limits);
    let space = enumerate_reachable(&inst.graph, &inst.source, limits);
    let word = match answer {
        Answer::Yes => "YES",
        Answer::No => "NO",
        Answer::Unknown => "UNKNOWN",
    };
    format!(
        "{word}\nstates: {}{}\n",
        space.len(),
        if space.truncated { " (truncated)" } else { "" }
    )
}

pub fn gen(params: &GenParams) -> Result<String, CliError> {
    let graph = gen_block_graph(params)?;
    let sample = |offset: u64| {
        gen_independent_set(params.seed.wrapping_add(offset), &graph, params.token_count)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "could not place {} independent tokens on the generated graph",
                    params.token_count
                ))
            })
    };
    let source = sample(1)?;
    let target = sample(2)?;
    let inst = Instance {
        graph,
        source,
        target,
    };
    let comment = format!(
        "blocks {} max-clique {} tokens {} seed {}",
        params.num_blocks, params.max_clique, params.token_count, params.seed
    );
    Ok(instance::render(&inst, &[comment]))
}

pub fn fuzz(cfg: &FuzzConfig, solver: &dyn fuzz::Solver) -> Result<Report, CliError> {
    Ok(fuzz::run(cfg, solver)?)
}

/// Instance file text for a fuzz failure, with the failure as comments.
pub fn failure_dump(cfg: &FuzzConfig, report: &Report) -> Option<String> {
    let f = report.first_failure.as_ref()?;
    let comments = [
        format!("fuzz seed {} index {}", cfg.seed, f.index),
        format!("check {}: {}", f.check, f.detail),
    ];
    Some(instance::render(&f.instance, &comments))
}
