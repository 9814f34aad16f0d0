//! Finite atomic measure spaces and the product-measure masses of the
//! diagonal `Δ = {(α, α)}` and of its complement in `Ω × Ω`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// A point of positive mass. Labels are opaque and need not be unique;
/// atoms are identified by position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub label: String,
    pub weight: f64,
}

/// A finite, nonempty list of atoms with strictly positive weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureSpace {
    atoms: Vec<Atom>,
}

impl MeasureSpace {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidArgument(
                "a measure space needs at least one atom".into(),
            ));
        }
        for (i, atom) in atoms.iter().enumerate() {
            // rejects NaN as well
            if !(atom.weight > 0.0 && atom.weight.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "atom {i} has weight {}, weights must be finite and > 0",
                    atom.weight
                )));
            }
        }
        Ok(Self { atoms })
    }

    /// Atoms labelled `1..=n` carrying the given weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, &weight)| Atom {
                    label: (i + 1).to_string(),
                    weight,
                })
                .collect(),
        )
    }

    /// Counting measure on `{1, …, n}`.
    pub fn counting(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("counting space needs n >= 1".into()));
        }
        Self::from_weights(&vec![1.0; n])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.atoms[i].weight
    }

    pub fn weights(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.weight)
    }

    pub fn total_mass(&self) -> f64 {
        self.weights().collect::<CompensatedSum>().value()
    }

    /// `(μ×μ)(Δ) = Σ w_i²`.
    pub fn diagonal_mass(&self) -> f64 {
        diagonal(self.weights())
    }

    /// `(μ×μ)((Ω×Ω)∖Δ) = (Σ w_i)² − Σ w_i²`, evaluated as `Σ w_i (W − w_i)`
    /// so that a single atom gives exactly zero.
    pub fn offdiagonal_mass(&self) -> f64 {
        offdiagonal(self.weights(), self.total_mass())
    }

    /// `diagonal_mass / offdiagonal_mass`, computed on weights rescaled by
    /// the largest weight. The ratio is scale free, and for equal weights
    /// the rescaled masses are the integers `n` and `n(n−1)`, so the ratio
    /// is the correctly rounded `1/(n−1)`.
    ///
    /// Returns `None` for a single atom.
    pub fn mass_ratio(&self) -> Option<f64> {
        if self.len() < 2 {
            return None;
        }
        let max = self.weights().fold(0.0_f64, f64::max);
        let scaled = || self.weights().map(move |w| w / max);
        let total = scaled().collect::<CompensatedSum>().value();
        Some(diagonal(scaled()) / offdiagonal(scaled(), total))
    }
}

fn diagonal(weights: impl Iterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::new();
    for w in weights {
        acc.add_product(w, w);
    }
    acc.value()
}

fn offdiagonal(weights: impl Iterator<Item = f64>, total: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for w in weights {
        acc.add_product(w, total - w);
    }
    acc.value().max(0.0)
}

impl<'de> Deserialize<'de> for MeasureSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            atoms: Vec<Atom>,
        }
        let raw = Raw::deserialize(d)?;
        MeasureSpace::new(raw.atoms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: enumerate every ordered pair of atoms.
    fn pair_masses(weights: &[f64]) -> (f64, f64) {
        let (mut diag, mut off) = (0.0, 0.0);
        for (i, wi) in weights.iter().enumerate() {
            for (j, wj) in weights.iter().enumerate() {
                if i == j {
                    diag += wi * wj;
                } else {
                    off += wi * wj;
                }
            }
        }
        (diag, off)
    }

    #[test]
    fn counting_space_weights() {
        let s = MeasureSpace::counting(3).unwrap();
        assert_eq!(s.weights().collect::<Vec<_>>(), vec![1.0, 1.0, 1.0]);
        assert_eq!(s.total_mass(), 3.0);
        let one = MeasureSpace::counting(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.total_mass(), 1.0);
    }

    #[test]
    fn counting_space_rejects_zero() {
        assert!(matches!(
            MeasureSpace::counting(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn counting_five_masses() {
        let s = MeasureSpace::counting(5).unwrap();
        let (d, o) = pair_masses(&[1.0; 5]);
        assert_eq!((d, o), (5.0, 20.0));
        assert_eq!(s.diagonal_mass(), d);
        assert_eq!(s.offdiagonal_mass(), o);
    }

    #[test]
    fn masses_match_pair_enumeration() {
        let cases: [(&[f64], f64, f64); 3] = [
            (&[1.0, 1.0, 1.0], 3.0, 6.0),
            (&[1.0, 1.0, 2.0], 6.0, 10.0),
            (&[0.5], 0.25, 0.0),
        ];
        for (w, diag, off) in cases {
            assert_eq!(pair_masses(w), (diag, off));
            let s = MeasureSpace::from_weights(w).unwrap();
            assert_eq!(s.diagonal_mass(), diag);
            assert_eq!(s.offdiagonal_mass(), off);
        }
    }

    #[test]
    fn rejects_nonpositive_weights() {
        for w in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(MeasureSpace::from_weights(&[1.0, w]).is_err(), "{w}");
        }
        assert!(MeasureSpace::new(vec![]).is_err());
    }

    #[test]
    fn counting_masses_are_exact_integers() {
        for n in 1..=300usize {
            let s = MeasureSpace::counting(n).unwrap();
            assert_eq!(s.diagonal_mass(), n as f64);
            assert_eq!(s.offdiagonal_mass(), (n * (n - 1)) as f64);
        }
    }

    #[test]
    fn mass_ratio_single_atom() {
        assert_eq!(MeasureSpace::counting(1).unwrap().mass_ratio(), None);
    }

    mod props {
        use super::super::*;
        use super::pair_masses;
        use proptest::prelude::*;

        fn weights() -> impl Strategy<Value = Vec<f64>> {
            prop::collection::vec(1e-3f64..1e3, 1..60)
        }

        proptest! {
            #[test]
            fn masses_sum_to_total_squared(w in weights()) {
                let s = MeasureSpace::from_weights(&w).unwrap();
                let total = s.total_mass();
                let lhs = s.diagonal_mass() + s.offdiagonal_mass();
                prop_assert!((lhs - total * total).abs() <= 1e-12 * total * total);
            }

            #[test]
            fn masses_match_oracle(w in weights()) {
                let s = MeasureSpace::from_weights(&w).unwrap();
                let (d, o) = pair_masses(&w);
                prop_assert!((s.diagonal_mass() - d).abs() <= 1e-12 * d);
                prop_assert!((s.offdiagonal_mass() - o).abs() <= 1e-12 * (d + o));
            }

            #[test]
            fn positivity(w in weights()) {
                let s = MeasureSpace::from_weights(&w).unwrap();
                prop_assert!(s.diagonal_mass() > 0.0);
                if w.len() >= 2 {
                    prop_assert!(s.offdiagonal_mass() > 0.0);
                } else {
                    prop_assert_eq!(s.offdiagonal_mass(), 0.0);
                }
            }

            #[test]
            fn scaling_multiplies_masses_by_c_squared(w in weights(), c in 1e-3f64..1e3) {
                let s = MeasureSpace::from_weights(&w).unwrap();
                let scaled: Vec<f64> = w.iter().map(|x| x * c).collect();
                let t = MeasureSpace::from_weights(&scaled).unwrap();
                let c2 = c * c;
                prop_assert!((t.diagonal_mass() - c2 * s.diagonal_mass()).abs()
                    <= 1e-12 * t.diagonal_mass());
                prop_assert!((t.offdiagonal_mass() - c2 * s.offdiagonal_mass()).abs()
                    <= 1e-12 * (t.diagonal_mass() + t.offdiagonal_mass()));
            }
        }
    }
}
