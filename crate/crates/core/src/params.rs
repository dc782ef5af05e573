//! Hopbound parameters derived from `(k, ε)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Window in which `4k/ε'` is treated as the nearby integer before taking
/// the ceiling.
const CEIL_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopsetParams {
    pub k: u32,
    pub epsilon: f64,
    /// `ln(1 + ε)`.
    pub epsilon_prime: f64,
    /// `ceil(4k / ε')`.
    pub r: u64,
    /// `h_0..=h_k`.
    pub hop_sequence: Vec<u64>,
    /// Hopbound, `h_k`.
    pub beta: u64,
}

/// The `(β, 1+ε)` pair a verifier enforces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub hopbound: u64,
    pub stretch: f64,
}

impl HopsetParams {
    pub fn budget(&self) -> Budget {
        Budget {
            hopbound: self.beta,
            stretch: 1.0 + self.epsilon,
        }
    }

    /// Space-separated `k ε ε' r h_0..h_k β`, as printed in report headers.
    pub fn summary_line(&self) -> String {
        let hops: Vec<String> = self.hop_sequence.iter().map(u64::to_string).collect();
        format!(
            "{} {} {} {} {} {}",
            self.k,
            self.epsilon,
            self.epsilon_prime,
            self.r,
            hops.join(" "),
            self.beta
        )
    }
}

/// `h_0 = 1`, `h_i = (r+1) h_{i-1} + r`, with overflow detection.
pub fn hop_sequence(r: u64, k: u32) -> Result<Vec<u64>> {
    let mut seq = Vec::with_capacity(k as usize + 1);
    let mut h: u64 = 1;
    seq.push(h);
    for _ in 0..k {
        h = r
            .checked_add(1)
            .and_then(|step| step.checked_mul(h))
            .and_then(|x| x.checked_add(r))
            .ok_or(Error::Overflow { k, r })?;
        seq.push(h);
    }
    Ok(seq)
}

fn guarded_ceil(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= CEIL_GUARD {
        nearest
    } else {
        x.ceil()
    }
}

pub fn derive_params(k: u32, epsilon: f64) -> Result<HopsetParams> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::usage(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    let epsilon_prime = epsilon.ln_1p();
    let quotient = 4.0 * k as f64 / epsilon_prime;
    let r = guarded_ceil(quotient);
    if r.is_nan() || r >= u64::MAX as f64 {
        return Err(Error::Overflow { k, r: u64::MAX });
    }
    let r = (r as u64).max(1);
    let hop_sequence = hop_sequence(r, k)?;
    let beta = *hop_sequence.last().expect("sequence has k+1 entries");
    Ok(HopsetParams {
        k,
        epsilon,
        epsilon_prime,
        r,
        hop_sequence,
        beta,
    })
}

/// Hopbound and stretch for `(k, ε)`; the hopbound is the exact `h_k`.
pub fn stretch_budget(k: u32, epsilon: f64) -> Result<Budget> {
    derive_params(k, epsilon).map(|p| p.budget())
}
