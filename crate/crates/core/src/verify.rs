//! Checks the Rankin bound on concrete families and replays its proof as a
//! numerical decomposition.
//!
//! The proof rests on a single identity. For the indicator `χ_Ω`,
//!
//! ```text
//! 0 ≤ ‖θ*χ_Ω‖² = Σ_{i,j} w_i w_j ⟨τ_i, τ_j⟩
//!             = Σ_i w_i² ⟨τ_i, τ_i⟩ + Σ_{i≠j} w_i w_j ⟨τ_i, τ_j⟩
//!             ≤ D + 𝓜 · O
//! ```
//!
//! [`proof_decomposition`] evaluates each side independently so a broken
//! kernel shows up as a nonzero residual. Everything is recomputed from the
//! raw vectors.

use serde::{Deserialize, Serialize};

use crate::bounds::rankin_bound;
use crate::error::{Error, Result};
use crate::family::{CoefficientFunction, VectorFamily, NORM_TOLERANCE};
use crate::numeric::{self, CompensatedSum};

/// Pass/fail tolerance on the bound slack.
pub const SLACK_TOLERANCE: f64 = 1e-9;
/// Tolerance for decomposition residuals.
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub coherence: f64,
    pub min_distance_sq: f64,
    pub coherence_bound: f64,
    pub distance_bound: f64,
    /// `coherence − coherence_bound`; nonnegative whenever the bound holds.
    pub slack: f64,
    /// `distance_bound − min_distance_sq`.
    pub distance_slack: f64,
    pub witness_pair: (usize, usize),
    pub tolerance: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    /// `‖θ*χ_Ω‖²`, evaluated as the weighted Gram double sum.
    pub total: f64,
    /// `Σ_i w_i² ⟨τ_i, τ_i⟩`.
    pub diag_part: f64,
    /// `Σ_{i≠j} w_i w_j ⟨τ_i, τ_j⟩`.
    pub offdiag_part: f64,
    pub residual: f64,
}

/// Checks `𝓜 ≥ −D/O` and `𝓝 ≤ 2(1 + D/O)` with the default slack tolerance.
pub fn check_rankin(fam: &VectorFamily) -> Result<CoherenceReport> {
    check_rankin_with_tolerance(fam, SLACK_TOLERANCE)
}

pub fn check_rankin_with_tolerance(fam: &VectorFamily, tolerance: f64) -> Result<CoherenceReport> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be >= 0, got {tolerance}"
        )));
    }
    let bound = rankin_bound(fam.space())?;
    fam.ensure_normalized(NORM_TOLERANCE)?;
    let coherence = fam.coherence()?;
    let distance = fam.min_pairwise_distance_sq()?;
    let slack = coherence.value - bound.coherence_bound;
    let distance_slack = bound.distance_bound - distance.value;
    Ok(CoherenceReport {
        coherence: coherence.value,
        min_distance_sq: distance.value,
        coherence_bound: bound.coherence_bound,
        distance_bound: bound.distance_bound,
        slack,
        distance_slack,
        witness_pair: coherence.pair,
        tolerance,
        satisfied: slack >= -tolerance && distance_slack >= -tolerance,
    })
}

/// Splits `Σ_{i,j} w_i w_j ⟨τ_i, τ_j⟩` into its diagonal and off-diagonal parts.
pub fn proof_decomposition(fam: &VectorFamily) -> Result<DecompositionReport> {
    fam.ensure_normalized(NORM_TOLERANCE)?;
    let total = fam.weighted_gram_total();
    let w: Vec<f64> = fam.space().weights().collect();
    let mut diag = CompensatedSum::new();
    let mut off = CompensatedSum::new();
    for i in 0..fam.len() {
        diag.add_triple_product(w[i], w[i], fam.inner(i, i));
        for j in (0..fam.len()).filter(|&j| j != i) {
            off.add_triple_product(w[i], w[j], fam.inner(i, j));
        }
    }
    let (diag_part, offdiag_part) = (diag.value(), off.value());
    Ok(DecompositionReport {
        total,
        diag_part,
        offdiag_part,
        residual: total - diag_part - offdiag_part,
    })
}

/// The weighted mean of the off-diagonal Gram entries,
/// `(total − diag_part) / O`.
///
/// It is the sharpest lower bound on `𝓜` the proof yields for this particular
/// family; since `total ≥ 0` it never falls below the closed-form bound.
pub fn implied_coherence_floor(fam: &VectorFamily) -> Result<f64> {
    let bound = rankin_bound(fam.space())?;
    let d = proof_decomposition(fam)?;
    Ok((d.total - d.diag_part) / bound.offdiagonal_mass)
}

/// `‖θ*χ_Ω‖`, the norm of the weighted vector sum.
pub fn synthesis_norm(fam: &VectorFamily) -> f64 {
    let s = fam
        .synthesis(&CoefficientFunction::indicator(fam.len()))
        .expect("indicator matches the family length");
    numeric::norm2(&s)
}

/// Largest spread `max − min` among off-diagonal Gram entries.
pub fn offdiagonal_spread(fam: &VectorFamily) -> f64 {
    let gram = fam.gram();
    let (lo, hi) = gram
        .upper_pairs()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, g)| {
            (lo.min(g), hi.max(g))
        });
    if lo > hi {
        0.0
    } else {
        hi - lo
    }
}
