//! Continuous Rankin bounds for unit-vector families indexed by finite
//! atomic measure spaces.
//!
//! For a normalized family `{τ_α}` over `(Ω, μ)` with diagonal mass
//! `D = (μ×μ)(Δ)` and off-diagonal mass `O = (μ×μ)((Ω×Ω)∖Δ)`,
//!
//! ```text
//! sup_{α≠β} ⟨τ_α, τ_β⟩ ≥ −D/O,     inf_{α≠β} ‖τ_α − τ_β‖² ≤ 2(1 + D/O).
//! ```
//!
//! The crate computes these bounds ([`bounds`]), checks them on concrete
//! families and replays the underlying identity ([`verify`]), handles the
//! functional variant on `ℓp` spaces ([`banach`]), and searches for families
//! that attain them ([`optimizer`]).
//!
//! ```
//! use rankin::{bounds::rankin_bound, measure::MeasureSpace, optimizer::simplex_family, verify::check_rankin};
//!
//! let bound = rankin_bound(&MeasureSpace::counting(4).unwrap()).unwrap();
//! assert_eq!(bound.coherence_bound, -1.0 / 3.0);
//!
//! let tetrahedron = simplex_family(4, 3).unwrap();
//! let report = check_rankin(&tetrahedron).unwrap();
//! assert!(report.satisfied && report.slack.abs() < 1e-12);
//! ```

pub mod banach;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod family;
pub mod format;
pub mod measure;
pub mod numeric;
pub mod optimizer;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
