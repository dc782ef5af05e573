//! Hopset size accounting against the expected per-level sizes.

use serde::{Deserialize, Serialize};

use crate::construct::Hopset;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSize {
    pub level: u32,
    pub edges: usize,
    /// `n^(1 + 1/(2^(k+1) - 1)) * 2^(2 - level)`.
    pub expected_bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeStats {
    pub n: usize,
    pub k: u32,
    /// `n^(1 + 1/(2^(k+1) - 1))`.
    pub unit: f64,
    pub levels: Vec<LevelSize>,
    pub total: usize,
    /// `total / unit`.
    pub total_ratio: f64,
}

/// `n^(1 + 1/(2^(k+1) - 1))`, the size scale of a `k`-level hopset.
pub fn size_unit(n: usize, k: u32) -> f64 {
    let denom = ((1u64 << (k + 1)) - 1) as f64;
    (n as f64).powf(1.0 + 1.0 / denom)
}

pub fn size_stats(h: &Hopset, n: usize, k: u32) -> SizeStats {
    let unit = size_unit(n, k);
    let mut counts = vec![0usize; k as usize + 1];
    for e in &h.edges {
        if let Some(c) = counts.get_mut(e.level as usize) {
            *c += 1;
        }
    }
    let levels = counts
        .iter()
        .enumerate()
        .map(|(i, &edges)| {
            let expected_bound = unit * (2.0 - i as f64).exp2();
            LevelSize {
                level: i as u32,
                edges,
                expected_bound,
                ratio: edges as f64 / expected_bound,
            }
        })
        .collect();
    let total = counts.iter().sum();
    SizeStats {
        n,
        k,
        unit,
        levels,
        total,
        total_ratio: total as f64 / unit,
    }
}
