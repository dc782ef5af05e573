//! Seeded graph families for tests and experiments.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::rng;

/// Uniform weights are snapped to multiples of this step. Path sums of such
/// weights stay exact in `f64` for any realistic path length, so distances do
/// not depend on summation order.
pub const WEIGHT_STEP: f64 = 1.0 / (1u64 << 20) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Path,
    /// `rows * cols` must equal the vertex count.
    Grid {
        rows: usize,
        cols: usize,
    },
    /// `G(n, m)`: exactly `m` distinct edges chosen uniformly.
    ErdosRenyi {
        m: usize,
    },
    /// Points uniform in the unit square, joined when within `radius`.
    RandomGeometric {
        radius: f64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Grid { .. } => "grid",
            Family::ErdosRenyi { .. } => "erdos-renyi",
            Family::RandomGeometric { .. } => "random-geometric",
        }
    }

    /// Square grid when `n` is a perfect square.
    pub fn square_grid(n: usize) -> Result<Self> {
        let side = (n as f64).sqrt().round() as usize;
        if side * side != n {
            return Err(Error::usage(format!("{n} is not a perfect square")));
        }
        Ok(Family::Grid {
            rows: side,
            cols: side,
        })
    }

    /// Radius giving expected degree about `degree` away from the border.
    pub fn geometric_with_degree(n: usize, degree: f64) -> Self {
        Family::RandomGeometric {
            radius: (degree / (std::f64::consts::PI * n as f64)).sqrt(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path => write!(f, "path"),
            Family::Grid { rows, cols } => write!(f, "grid({rows}x{cols})"),
            Family::ErdosRenyi { m } => write!(f, "erdos-renyi(m={m})"),
            Family::RandomGeometric { radius } => write!(f, "random-geometric(r={radius})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "kebab-case")]
pub enum WeightDist {
    Unit,
    Uniform { lo: f64, hi: f64 },
}

impl WeightDist {
    fn validate(&self) -> Result<()> {
        match *self {
            WeightDist::Unit => Ok(()),
            WeightDist::Uniform { lo, hi } if lo >= 0.0 && hi >= lo && hi.is_finite() => Ok(()),
            WeightDist::Uniform { lo, hi } => Err(Error::usage(format!(
                "uniform weights need 0 <= lo <= hi < inf, got ({lo}, {hi})"
            ))),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            WeightDist::Unit => 1.0,
            WeightDist::Uniform { lo, hi } => {
                let x = if hi > lo {
                    rng.random_range(lo..hi)
                } else {
                    lo
                };
                ((x / WEIGHT_STEP).round() * WEIGHT_STEP).clamp(lo, hi)
            }
        }
    }
}

impl fmt::Display for WeightDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightDist::Unit => write!(f, "unit"),
            WeightDist::Uniform { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
        }
    }
}

impl FromStr for WeightDist {
    type Err = Error;

    /// `unit` or `uniform:LO:HI`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "unit" {
            return Ok(WeightDist::Unit);
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["uniform", lo, hi] => {
                let parse = |t: &str| {
                    t.parse::<f64>()
                        .map_err(|_| Error::usage(format!("bad weight bound '{t}'")))
                };
                let dist = WeightDist::Uniform {
                    lo: parse(lo)?,
                    hi: parse(hi)?,
                };
                dist.validate()?;
                Ok(dist)
            }
            _ => Err(Error::usage(format!(
                "weights must be 'unit' or 'uniform:LO:HI', got '{s}'"
            ))),
        }
    }
}

/// Deterministic for fixed arguments. Edge weights are drawn after the
/// topology, in canonical `(u, v)` order.
pub fn generate_graph(
    family: Family,
    n: usize,
    weights: WeightDist,
    seed: u64,
) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::usage("graph needs at least one vertex"));
    }
    weights.validate()?;
    let mut rng = rng::stream(seed, rng::GRAPH_STREAM);
    let pairs = match family {
        Family::Path => (1..n).map(|v| (v - 1, v)).collect(),
        Family::Grid { rows, cols } => grid(rows, cols, n)?,
        Family::ErdosRenyi { m } => erdos_renyi(n, m, &mut rng)?,
        Family::RandomGeometric { radius } => random_geometric(n, radius, &mut rng)?,
    };
    let mut pairs: Vec<(Vertex, Vertex)> = pairs;
    pairs.sort_unstable();
    let raw: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, weights.sample(&mut rng)))
        .collect();
    Ok(WeightedGraph::from_edges(n, raw)?.0)
}

fn grid(rows: usize, cols: usize, n: usize) -> Result<Vec<(Vertex, Vertex)>> {
    if rows * cols != n {
        return Err(Error::usage(format!(
            "grid {rows}x{cols} does not have {n} vertices"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut pairs = Vec::with_capacity(2 * n);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(pairs)
}

fn erdos_renyi(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(Vertex, Vertex)>> {
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(Error::usage(format!(
            "{m} edges exceed the {max} pairs on {n} vertices"
        )));
    }
    // Sample the complement when dense so rejection stays cheap.
    let complement = m > max / 2;
    let target = if complement { max - m } else { m };
    let mut chosen = HashSet::with_capacity(target);
    while chosen.len() < target {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            chosen.insert((a.min(b), a.max(b)));
        }
    }
    if !complement {
        let mut out: Vec<_> = chosen.into_iter().collect();
        out.sort_unstable();
        return Ok(out);
    }
    let mut out = Vec::with_capacity(m);
    for u in 0..n {
        for v in u + 1..n {
            if !chosen.contains(&(u, v)) {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}

fn random_geometric(n: usize, radius: f64, rng: &mut ChaCha8Rng) -> Result<Vec<(Vertex, Vertex)>> {
    if !(radius.is_finite() && radius >= 0.0) {
        return Err(Error::usage(format!(
            "radius must be finite and nonnegative, got {radius}"
        )));
    }
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| points[a].0.total_cmp(&points[b].0).then(a.cmp(&b)));
    let r2 = radius * radius;
    let mut pairs = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            let dx = points[b].0 - points[a].0;
            if dx > radius {
                break;
            }
            let dy = points[b].1 - points[a].1;
            if dx * dx + dy * dy <= r2 {
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    Ok(pairs)
}
