//! Closed-form Rankin bounds.
//!
//! For a normalized family over an atomic space with diagonal mass `D` and
//! off-diagonal mass `O`,
//!
//! ```text
//! sup_{α≠β} ⟨τ_α, τ_β⟩      ≥ −D / O
//! inf_{α≠β} ‖τ_α − τ_β‖²   ≤ 2 (1 + D / O)
//! ```
//!
//! Under the counting measure on `n` points `D / O = 1/(n−1)`, recovering the
//! classical bounds `−1/(n−1)` and `2n/(n−1)`. Neither bound depends on the
//! ambient dimension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::MeasureSpace;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Lower bound on the coherence `𝓜`.
    pub coherence_bound: f64,
    /// Upper bound on the minimum squared distance `𝓝`.
    pub distance_bound: f64,
    pub diagonal_mass: f64,
    pub offdiagonal_mass: f64,
}

pub fn rankin_bound(space: &MeasureSpace) -> Result<BoundReport> {
    let ratio = space.mass_ratio().ok_or_else(|| {
        Error::UndefinedSupremum(
            "the bound needs at least 2 atoms; the supremum ranges over an empty set".into(),
        )
    })?;
    let coherence_bound = -ratio;
    Ok(BoundReport {
        coherence_bound,
        distance_bound: distance_from_coherence(coherence_bound),
        diagonal_mass: space.diagonal_mass(),
        offdiagonal_mass: space.offdiagonal_mass(),
    })
}

/// `(−1/(n−1), 2n/(n−1))` for `n` unit vectors.
pub fn classical_rankin_bound(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the classical bound needs n >= 2, got {n}"
        )));
    }
    let coherence_bound = -1.0 / (n - 1) as f64;
    Ok((coherence_bound, distance_from_coherence(coherence_bound)))
}

/// `𝓝 = 2(1 − 𝓜)` for unit vectors.
fn distance_from_coherence(coherence: f64) -> f64 {
    2.0 * (1.0 - coherence)
}
