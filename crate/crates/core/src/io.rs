//! Edge-list and DIMACS readers, edge-list writer.
//!
//! Edge-list files hold one `u v w` triple per line; `#` starts a comment. A
//! `# vertices=N` header pins the vertex count and disables id remapping, which
//! is what [`write_edge_list`] emits. Without it, the distinct ids are sorted
//! numerically and renumbered densely; the original ids are kept in
//! [`LoadedGraph::original_ids`].
//!
//! DIMACS files use the shortest-path challenge layout: `c` comments, one
//! `p sp n m` header and `a u v w` arcs with 1-based ids. Arcs in both
//! directions collapse to a single undirected edge.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Cleanup, Vertex, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// `.gr` and `.dimacs` files are DIMACS; everything else is an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("gr") | Some("dimacs") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "dimacs" | "gr" => Ok(GraphFormat::Dimacs),
            other => Err(Error::usage(format!("unknown graph format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: WeightedGraph,
    pub cleanup: Cleanup,
    /// Original id of each dense vertex, when the loader renumbered.
    pub original_ids: Option<Vec<u64>>,
}

pub fn load_graph(path: &Path, format: GraphFormat) -> Result<LoadedGraph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    match format {
        GraphFormat::EdgeList => parse_edge_list(reader),
        GraphFormat::Dimacs => parse_dimacs(reader),
    }
}

fn parse_weight(token: &str, line: usize) -> Result<f64> {
    let w: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("weight '{token}' is not a decimal number"),
    })?;
    if !w.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("weight '{token}' is not finite"),
        });
    }
    if w < 0.0 {
        return Err(Error::NegativeWeight { line, weight: w });
    }
    Ok(w)
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("vertex id '{token}' is not a nonnegative integer"),
    })
}

fn read_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().map(|(i, line)| {
        line.map(|l| (i + 1, l))
            .map_err(|e| Error::io("<input>", e))
    })
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut declared: Option<usize> = None;
    let mut raw: Vec<(u64, u64, f64)> = Vec::new();
    for item in read_lines(reader) {
        let (line_no, line) = item?;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("vertices=") {
                declared = Some(value.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex count '{}'", value.trim()),
                })?);
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 'u v w', found {} fields", tokens.len()),
            });
        }
        let u = parse_id(tokens[0], line_no)?;
        let v = parse_id(tokens[1], line_no)?;
        let w = parse_weight(tokens[2], line_no)?;
        raw.push((u, v, w));
    }

    if let Some(n) = declared {
        if let Some(&(u, v, _)) = raw
            .iter()
            .find(|&&(u, v, _)| u as usize >= n || v as usize >= n)
        {
            return Err(Error::usage(format!(
                "edge ({u}, {v}) exceeds declared vertex count {n}"
            )));
        }
        let (graph, cleanup) = WeightedGraph::from_edges(
            n,
            raw.into_iter()
                .map(|(u, v, w)| (u as Vertex, v as Vertex, w)),
        )?;
        return Ok(LoadedGraph {
            graph,
            cleanup,
            original_ids: None,
        });
    }

    let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let dense = ids.iter().enumerate().all(|(i, &id)| i as u64 == id);
    let index = |id: u64| ids.binary_search(&id).expect("id collected above");
    let (graph, cleanup) = WeightedGraph::from_edges(
        ids.len(),
        raw.iter().map(|&(u, v, w)| (index(u), index(v), w)),
    )?;
    Ok(LoadedGraph {
        graph,
        cleanup,
        original_ids: if dense { None } else { Some(ids) },
    })
}

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut n: Option<usize> = None;
    let mut raw = Vec::new();
    for item in read_lines(reader) {
        let (line_no, line) = item?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "duplicate problem line".into(),
                    });
                }
                if tokens.len() != 4 || tokens[1] != "sp" {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected 'p sp n m'".into(),
                    });
                }
                n = Some(parse_id(tokens[2], line_no)? as usize);
                parse_id(tokens[3], line_no)?;
            }
            Some("a") => {
                let Some(count) = n else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "arc before problem line".into(),
                    });
                };
                if tokens.len() != 4 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected 'a u v w'".into(),
                    });
                }
                let u = parse_id(tokens[1], line_no)? as usize;
                let v = parse_id(tokens[2], line_no)? as usize;
                if u == 0 || v == 0 || u > count || v > count {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("arc ({u}, {v}) outside 1..={count}"),
                    });
                }
                let w = parse_weight(tokens[3], line_no)?;
                raw.push((u - 1, v - 1, w));
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown line type '{other}'"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing 'p sp n m' line".into(),
    })?;
    let (graph, cleanup) = WeightedGraph::from_edges(n, raw)?;
    Ok(LoadedGraph {
        graph,
        cleanup,
        original_ids: None,
    })
}

pub fn write_edge_list<W: Write>(g: &WeightedGraph, mut out: W) -> std::io::Result<()> {
    out.write_all(g.to_edge_list_string().as_bytes())
}

pub fn save_graph(g: &WeightedGraph, path: &Path) -> Result<()> {
    std::fs::write(path, g.to_edge_list_string()).map_err(|e| Error::io(path, e))
}
