//! Experiment grid: every combination of family, size, weights, k, ε and seed
//! index is generated, built and verified independently.

use std::fmt::Write as _;

use clap::ValueEnum;
use hopset_core::rng::derive_seed;
use hopset_core::verify::REPORT_SCHEMA_VERSION;
use hopset_core::{
    build_hopset, derive_params, generate_graph, verify_hopset, Error, Family, PairSpec, WeightDist,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::Outcome;
use crate::config::{Command, FamilyName, MatrixArgs};
use crate::{write_file, Failure};

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub index: usize,
    pub family: FamilyName,
    pub n: usize,
    pub weights: WeightDist,
    pub k: u32,
    pub epsilon: f64,
    pub seed_index: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CellResult {
    pub vertices: usize,
    pub edges: usize,
    pub hopset_edges: usize,
    pub size_ratio: f64,
    pub beta: u64,
    pub pairs_checked: usize,
    pub violations: usize,
    pub below_exact: usize,
    pub max_stretch: Option<f64>,
    pub max_hops_used: Option<u64>,
    pub audit_mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    #[serde(flatten)]
    pub cell: Cell,
    #[serde(flatten)]
    pub result: Option<CellResult>,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Summary<'a> {
    pub schema_version: u32,
    pub config: &'a Command,
    pub cells: usize,
    pub failed: usize,
    pub rows: Vec<Row>,
}

/// Enumerates cells in family × n × weights × k × ε × seed order. A cell's
/// seed depends only on the base seed and its seed index, so cells that
/// differ only in k or ε share the same graph.
pub fn cells(args: &MatrixArgs) -> Vec<Cell> {
    let mut out = Vec::new();
    for &family in &args.families {
        for &n in &args.sizes {
            for &weights in &args.weights {
                for &k in &args.k {
                    for &epsilon in &args.epsilon {
                        for seed_index in 0..args.seeds {
                            out.push(Cell {
                                index: out.len(),
                                family,
                                n,
                                weights,
                                k,
                                epsilon,
                                seed_index,
                                seed: derive_seed(args.seed, seed_index),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn family_for(cell: &Cell, args: &MatrixArgs) -> Result<(Family, usize), Error> {
    Ok(match cell.family {
        FamilyName::Path => (Family::Path, cell.n),
        FamilyName::Grid => {
            let side = ((cell.n as f64).sqrt().round() as usize).max(1);
            (
                Family::Grid {
                    rows: side,
                    cols: side,
                },
                side * side,
            )
        }
        FamilyName::ErdosRenyi => (
            Family::ErdosRenyi {
                m: args.density * cell.n,
            },
            cell.n,
        ),
        FamilyName::RandomGeometric => (Family::geometric_with_degree(cell.n, args.degree), cell.n),
    })
}

pub fn run_cell(cell: &Cell, args: &MatrixArgs) -> Result<CellResult, Error> {
    let (family, n) = family_for(cell, args)?;
    let g = generate_graph(family, n, cell.weights, cell.seed)?;
    let built = build_hopset(&g, cell.k, cell.seed)?;
    let params = derive_params(cell.k, cell.epsilon)?;
    let report = verify_hopset(
        &g,
        &built.hopset,
        &params,
        &PairSpec::uniform(args.pairs, cell.seed),
    )?;
    let a = &report.aggregate;
    Ok(CellResult {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        hopset_edges: built.hopset.len(),
        size_ratio: report.size.total_ratio,
        beta: params.beta,
        pairs_checked: a.pairs_checked,
        violations: a.violations,
        below_exact: a.below_exact,
        max_stretch: a.max_stretch,
        max_hops_used: a.max_hops_used,
        audit_mismatches: report.weight_audit.mismatches,
    })
}

pub fn run_rows(args: &MatrixArgs) -> Result<Vec<Row>, Failure> {
    let cells = cells(args);
    let work = || {
        cells
            .par_iter()
            .map(|cell| {
                let (result, error) = match run_cell(cell, args) {
                    Ok(r) => (Some(r), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                let passed = result.as_ref().is_some_and(|r| {
                    r.violations == 0 && r.below_exact == 0 && r.audit_mismatches == 0
                });
                Row {
                    cell: cell.clone(),
                    result,
                    passed,
                    error,
                }
            })
            .collect::<Vec<_>>()
    };
    match args.workers {
        Some(0) => Err(Error::Usage("--workers must be at least 1".into()).into()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

fn table(rows: &[Row]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:>4} {:<17} {:>6} {:<16} {:>2} {:>5} {:>4} {:>8} {:>6} {:>8} {:>5} {:>4} {:>5} {:>9} {:>5}  status",
        "cell", "family", "n", "weights", "k", "eps", "seed", "|E|", "ratio", "|H|", "pairs", "viol", "below", "stretch", "hops"
    )
    .unwrap();
    for row in rows {
        let c = &row.cell;
        let family = c.family.to_possible_value().expect("named family");
        write!(
            s,
            "{:>4} {:<17} {:>6} {:<16} {:>2} {:>5} {:>4}",
            c.index,
            family.get_name(),
            c.n,
            c.weights.to_string(),
            c.k,
            c.epsilon,
            c.seed_index
        )
        .unwrap();
        match &row.result {
            Some(r) => writeln!(
                s,
                " {:>8} {:>6.3} {:>8} {:>5} {:>4} {:>5} {:>9} {:>5}  {}",
                r.edges,
                r.size_ratio,
                r.hopset_edges,
                r.pairs_checked,
                r.violations,
                r.below_exact,
                r.max_stretch.map_or("-".into(), |x| format!("{x:.6}")),
                r.max_hops_used.map_or("-".into(), |h| h.to_string()),
                if row.passed { "PASS" } else { "FAIL" }
            )
            .unwrap(),
            None => writeln!(s, "  ERROR {}", row.error.as_deref().unwrap_or("")).unwrap(),
        }
    }
    s
}

pub(crate) fn run(args: &MatrixArgs, command: &Command) -> Result<String, Outcome> {
    let rows = run_rows(args)?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    let mut text = table(&rows);
    writeln!(text, "{} cells, {} failed", rows.len(), failed).unwrap();
    if let Some(path) = &args.out {
        let summary = Summary {
            schema_version: REPORT_SCHEMA_VERSION,
            config: command,
            cells: rows.len(),
            failed,
            rows,
        };
        let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
        json.push('\n');
        write_file(path, &json)?;
    }
    if failed == 0 {
        Ok(text)
    } else {
        Err(Outcome::Failed(
            text,
            Failure::Verification(format!("{failed} matrix cells failed")),
        ))
    }
}
