//! Vector families indexed by an atomic measure space, together with the
//! analysis, synthesis and frame operators.
//!
//! A family `{τ_α}` lives in `R^d`. Its analysis operator maps `h` to the
//! coefficient function `α ↦ ⟨h, τ_α⟩` in `L²(Ω, μ)`; the synthesis operator
//! is the adjoint `f ↦ Σ_α μ(α) f(α) τ_α`; the frame operator is their
//! composition. Scalars are real throughout.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::MeasureSpace;
use crate::numeric::{self, CompensatedSum};

/// Largest tolerated deviation `| ‖τ‖ − 1 |` for a normalized family.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// How a constructor treats vectors that are not exactly unit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Reject any vector whose norm deviates from 1 by more than [`NORM_TOLERANCE`].
    Strict,
    /// Divide every vector by its norm; zero vectors are rejected.
    Renormalize,
    /// Accept the vectors as given (a general Bessel family).
    Unchecked,
}

/// A value attained at a pair of atom indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairValue {
    pub value: f64,
    pub pair: (usize, usize),
}

/// An element of `L²(Ω, μ)` supported on the atoms, stored as one value per
/// atom. The measure enters only through [`CoefficientFunction::pairing`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFunction {
    pub values: Vec<f64>,
}

impl CoefficientFunction {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    /// The indicator `χ_Ω`.
    pub fn indicator(n: usize) -> Self {
        Self {
            values: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `⟨a, b⟩_{L²(μ)} = Σ_i w_i a_i b_i`.
    pub fn pairing(&self, other: &Self, space: &MeasureSpace) -> Result<f64> {
        check_len(space.len(), self.len())?;
        check_len(space.len(), other.len())?;
        let mut acc = CompensatedSum::new();
        for ((w, a), b) in space.weights().zip(&self.values).zip(&other.values) {
            acc.add_triple_product(w, *a, *b);
        }
        Ok(acc.value())
    }
}

/// Dense symmetric `n × n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    n: usize,
    data: Vec<f64>,
}

impl Gram {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Off-diagonal entries over unordered pairs `i < j`, in lexicographic order.
    pub fn upper_pairs(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| ((i, j), self.get(i, j))))
    }
}

/// Continuous shapes available to [`VectorFamily::discretize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// Unit circle in `R²` with arc-length measure (total mass `2π`).
    Circle,
    /// Unit sphere in `R³` with surface measure (total mass `4π`).
    Sphere,
}

/// Vectors in `R^d` aligned one-to-one with the atoms of a measure space.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    space: MeasureSpace,
    dim: usize,
    data: Vec<f64>,
}

impl VectorFamily {
    /// Builds a family from row-major vector entries (`n * dim` values).
    pub fn new(
        space: MeasureSpace,
        dim: usize,
        mut data: Vec<f64>,
        mode: Normalization,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        check_len(space.len() * dim, data.len())?;
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "vector {} has a non-finite entry",
                k / dim
            )));
        }
        match mode {
            Normalization::Strict => {
                for (index, v) in data.chunks_exact(dim).enumerate() {
                    let norm = numeric::norm2(v);
                    if (norm - 1.0).abs() > NORM_TOLERANCE {
                        return Err(Error::NotNormalized {
                            index,
                            norm,
                            tolerance: NORM_TOLERANCE,
                        });
                    }
                }
            }
            Normalization::Renormalize => {
                for (index, v) in data.chunks_exact_mut(dim).enumerate() {
                    let norm = numeric::norm2(v);
                    if norm == 0.0 {
                        return Err(Error::ZeroVector { index });
                    }
                    v.iter_mut().for_each(|x| *x /= norm);
                }
            }
            Normalization::Unchecked => {}
        }
        Ok(Self { space, dim, data })
    }

    pub fn from_rows(space: MeasureSpace, rows: &[Vec<f64>], mode: Normalization) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        for row in rows {
            check_len(dim, row.len())?;
        }
        Self::new(space, dim, rows.concat(), mode)
    }

    /// Family over the counting measure.
    pub fn counting(rows: &[Vec<f64>], mode: Normalization) -> Result<Self> {
        Self::from_rows(MeasureSpace::counting(rows.len())?, rows, mode)
    }

    /// Finite-resolution family sampling a continuous shape with equal weights.
    ///
    /// The circle uses the angles `2πk/n`, each with weight `2π/n`; the
    /// sphere uses a Fibonacci lattice, each point with weight `4π/n`.
    pub fn discretize(shape: Shape, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "discretization needs at least 2 atoms".into(),
            ));
        }
        match shape {
            Shape::Circle => {
                let space = MeasureSpace::from_weights(&vec![2.0 * PI / n as f64; n])?;
                let mut data = Vec::with_capacity(2 * n);
                for k in 0..n {
                    data.extend_from_slice(&circle_point(k, n));
                }
                Self::new(space, 2, data, Normalization::Strict)
            }
            Shape::Sphere => {
                let space = MeasureSpace::from_weights(&vec![4.0 * PI / n as f64; n])?;
                let golden_angle = PI * (3.0 - 5.0_f64.sqrt());
                let mut data = Vec::with_capacity(3 * n);
                for k in 0..n {
                    let z = 1.0 - (2 * k + 1) as f64 / n as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden_angle * k as f64;
                    data.extend_from_slice(&[r * phi.cos(), r * phi.sin(), z]);
                }
                Self::new(space, 3, data, Normalization::Renormalize)
            }
        }
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vectors(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// The vector whose norm is furthest from 1, as `(index, norm)`.
    pub fn worst_norm(&self) -> (usize, f64) {
        self.vectors()
            .map(numeric::norm2)
            .enumerate()
            .fold((0, 1.0), |best, (i, norm)| {
                if (norm - 1.0).abs() > (best.1 - 1.0).abs() {
                    (i, norm)
                } else {
                    best
                }
            })
    }

    /// Recomputes every norm and fails if one deviates from 1 by more than `tolerance`.
    pub fn ensure_normalized(&self, tolerance: f64) -> Result<()> {
        let (index, norm) = self.worst_norm();
        if (norm - 1.0).abs() > tolerance {
            return Err(Error::NotNormalized {
                index,
                norm,
                tolerance,
            });
        }
        Ok(())
    }

    pub fn inner(&self, i: usize, j: usize) -> f64 {
        numeric::dot(self.vector(i), self.vector(j))
    }

    pub fn distance_sq(&self, i: usize, j: usize) -> f64 {
        let mut acc = CompensatedSum::new();
        for (a, b) in self.vector(i).iter().zip(self.vector(j)) {
            let d = a - b;
            acc.add_product(d, d);
        }
        acc.value()
    }

    /// `𝓜 = max_{i≠j} ⟨τ_i, τ_j⟩`, signed. Ties go to the lexicographically
    /// smallest pair.
    pub fn coherence(&self) -> Result<PairValue> {
        self.extreme_pair(|i, j| self.inner(i, j), |a, b| a > b)
    }

    /// `max_{i≠j} |⟨τ_i, τ_j⟩|`, the absolute coherence used in line-packing
    /// literature. The Rankin bounds concern the signed [`coherence`](Self::coherence).
    pub fn abs_coherence(&self) -> Result<PairValue> {
        self.extreme_pair(|i, j| self.inner(i, j).abs(), |a, b| a > b)
    }

    /// `𝓝 = min_{i≠j} ‖τ_i − τ_j‖²`.
    pub fn min_pairwise_distance_sq(&self) -> Result<PairValue> {
        self.extreme_pair(|i, j| self.distance_sq(i, j), |a, b| a < b)
    }

    fn extreme_pair(
        &self,
        value: impl Fn(usize, usize) -> f64,
        better: impl Fn(f64, f64) -> bool,
    ) -> Result<PairValue> {
        let n = self.len();
        if n < 2 {
            return Err(Error::UndefinedSupremum(
                "a family with fewer than 2 atoms has no distinct pairs".into(),
            ));
        }
        let mut best = PairValue {
            value: value(0, 1),
            pair: (0, 1),
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let v = value(i, j);
                if better(v, best.value) {
                    best = PairValue {
                        value: v,
                        pair: (i, j),
                    };
                }
            }
        }
        Ok(best)
    }

    pub fn gram(&self) -> Gram {
        let n = self.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let g = self.inner(i, j);
                data[i * n + j] = g;
                data[j * n + i] = g;
            }
        }
        Gram { n, data }
    }

    /// Analysis operator: `h ↦ (⟨h, τ_i⟩)_i`.
    pub fn analysis(&self, h: &[f64]) -> Result<CoefficientFunction> {
        check_dim(self.dim, h.len())?;
        Ok(CoefficientFunction::new(
            self.vectors().map(|v| numeric::dot(h, v)).collect(),
        ))
    }

    /// Synthesis operator: `f ↦ Σ_i w_i f_i τ_i`.
    pub fn synthesis(&self, f: &CoefficientFunction) -> Result<Vec<f64>> {
        check_len(self.len(), f.len())?;
        Ok(self.weighted_sum(|i| f.values[i]))
    }

    /// Frame operator `S h = Σ_i w_i ⟨h, τ_i⟩ τ_i`, evaluated directly.
    pub fn frame_operator_apply(&self, h: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, h.len())?;
        Ok(self.weighted_sum(|i| numeric::dot(h, self.vector(i))))
    }

    fn weighted_sum(&self, coefficient: impl Fn(usize) -> f64) -> Vec<f64> {
        let mut acc = vec![CompensatedSum::new(); self.dim];
        for (i, (w, v)) in self.space.weights().zip(self.vectors()).enumerate() {
            let c = coefficient(i);
            for (a, x) in acc.iter_mut().zip(v) {
                a.add_triple_product(w, c, *x);
            }
        }
        acc.iter().map(CompensatedSum::value).collect()
    }

    /// `Σ_{i,j} w_i w_j ⟨τ_i, τ_j⟩`, the double integral of the Gram kernel
    /// over `Ω × Ω`. Equals `‖synthesis(χ_Ω)‖²`, hence is nonnegative.
    pub fn weighted_gram_total(&self) -> f64 {
        let gram = self.gram();
        let w: Vec<f64> = self.space.weights().collect();
        let mut acc = CompensatedSum::new();
        for i in 0..self.len() {
            for (j, g) in gram.row(i).iter().enumerate() {
                acc.add_triple_product(w[i], w[j], *g);
            }
        }
        acc.value()
    }
}

/// Point `k` of `n` equally spaced points on the unit circle. Multiples of a
/// quarter turn are emitted exactly.
fn circle_point(k: usize, n: usize) -> [f64; 2] {
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => [1.0, 0.0],
            1 => [0.0, 1.0],
            2 => [-1.0, 0.0],
            _ => [0.0, -1.0],
        };
    }
    let theta = 2.0 * PI * k as f64 / n as f64;
    [theta.cos(), theta.sin()]
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    check_len(expected, actual)
}
