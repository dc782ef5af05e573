//! Sampling probabilities and the nested level sets `V_0 ⊇ V_1 ⊇ … ⊇ V_k`.

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::rng;

/// Probability that a vertex reaches level `i`:
///
/// `q_i = n^(-(2^i - 1) / (2^(k+1) - 1)) * 2^(-2^i - i + 1)`.
///
/// Evaluated as a single power of two so that exact cases (powers of two for
/// `n`) come out exact.
pub fn sampling_probability(i: u32, k: u32, n: usize) -> Result<f64> {
    if i > k {
        return Err(Error::usage(format!("level {i} exceeds top level {k}")));
    }
    if n < 2 {
        return Err(Error::usage(format!("sampling needs n >= 2, got {n}")));
    }
    if k >= 62 {
        return Err(Error::usage(format!("top level {k} is too large")));
    }
    let two_i = (1u64 << i) as f64;
    let denom = ((1u64 << (k + 1)) - 1) as f64;
    let exponent = -((two_i - 1.0) * (n as f64).log2()) / denom - two_i - i as f64 + 1.0;
    Ok(exponent.exp2())
}

/// `q_0..=q_k`.
pub fn sampling_probabilities(k: u32, n: usize) -> Result<Vec<f64>> {
    (0..=k).map(|i| sampling_probability(i, k, n)).collect()
}

/// Level count giving linear-size hopsets: `max(1, floor(log2 log2 n) - offset)`.
pub fn auto_k(n: u64, offset: u32) -> Result<u32> {
    if n < 4 {
        return Err(Error::usage(format!("auto k needs n >= 4, got {n}")));
    }
    Ok(auto_k_from_log2(n.ilog2(), offset))
}

/// [`auto_k`] given `floor(log2 n)`, for sizes beyond `u64`.
pub fn auto_k_from_log2(log2_n: u32, offset: u32) -> u32 {
    // floor(log2 x) == floor(log2 floor(x)) for x >= 1
    let levels = log2_n.max(1).ilog2() as i64 - offset as i64;
    levels.max(1) as u32
}

/// Per-vertex levels, with `members[i] = V_i = { v : level[v] >= i }`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelAssignment {
    k: u32,
    seed: Option<u64>,
    probabilities: Vec<f64>,
    level: Vec<u32>,
    members: Vec<Vec<Vertex>>,
}

impl LevelAssignment {
    /// Draws `level[v]` directly from `P[level >= i] = q_i`, one uniform draw
    /// per vertex from the level stream of `seed`.
    pub fn sample(n: usize, k: u32, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("k must be at least 1"));
        }
        let q = sampling_probabilities(k, n)?;
        let mut rng = rng::stream(seed, rng::LEVEL_STREAM);
        let level = (0..n)
            .map(|_| {
                let x: f64 = rng.random();
                q[1..].iter().take_while(|&&qi| x < qi).count() as u32
            })
            .collect();
        let mut out = Self::from_levels(k, level)?;
        out.seed = Some(seed);
        out.probabilities = q;
        Ok(out)
    }

    /// Wraps an explicit assignment (tests and replays).
    pub fn from_levels(k: u32, level: Vec<u32>) -> Result<Self> {
        if let Some((v, &l)) = level.iter().enumerate().find(|(_, &l)| l > k) {
            return Err(Error::usage(format!(
                "vertex {v} has level {l} above k={k}"
            )));
        }
        let mut members = vec![Vec::new(); k as usize + 1];
        for (v, &l) in level.iter().enumerate() {
            for set in &mut members[..=l as usize] {
                set.push(v);
            }
        }
        Ok(LevelAssignment {
            k,
            seed: None,
            probabilities: Vec::new(),
            level,
            members,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The `q_i` used to sample, empty for explicit assignments.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn vertex_count(&self) -> usize {
        self.level.len()
    }

    pub fn level(&self, v: Vertex) -> u32 {
        self.level[v]
    }

    pub fn levels(&self) -> &[u32] {
        &self.level
    }

    /// `V_i`, sorted; empty for `i > k`.
    pub fn members(&self, i: u32) -> &[Vertex] {
        self.members.get(i as usize).map_or(&[], Vec::as_slice)
    }

    /// `V_i \ V_{i+1}`, sorted.
    pub fn exact_level(&self, i: u32) -> impl Iterator<Item = Vertex> + '_ {
        self.members(i)
            .iter()
            .copied()
            .filter(move |&v| self.level[v] == i)
    }

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.members(0).len() != self.level.len() {
            return Err("V_0 is not the full vertex set".into());
        }
        for i in 0..=self.k {
            let expect: Vec<Vertex> = (0..self.level.len())
                .filter(|&v| self.level[v] >= i)
                .collect();
            if expect != self.members(i) {
                return Err(format!("V_{i} disagrees with the level array"));
            }
            if i > 0
                && !self
                    .members(i)
                    .iter()
                    .all(|v| self.members(i - 1).binary_search(v).is_ok())
            {
                return Err(format!("V_{i} is not nested in V_{}", i - 1));
            }
        }
        Ok(())
    }

    /// Audit format: a header with `(n, k, seed)` and the `q_i`, then `v level`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seed = self
            .seed
            .map_or_else(|| "none".to_string(), |s| s.to_string());
        writeln!(
            out,
            "# levels n={} k={} seed={}",
            self.level.len(),
            self.k,
            seed
        )
        .unwrap();
        let q: Vec<String> = self.probabilities.iter().map(f64::to_string).collect();
        writeln!(out, "# q={}", q.join(" ")).unwrap();
        for (v, l) in self.level.iter().enumerate() {
            writeln!(out, "{v} {l}").unwrap();
        }
        out
    }
}
