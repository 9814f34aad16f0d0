//! Functional Rankin bound on finite-dimensional `ℓp` spaces.
//!
//! A functional family pairs vectors `τ_j ∈ ℓp` with functionals
//! `f_j ∈ ℓq = (ℓp)*`. When
//!
//! 1. `f_j(τ_j) = 1` for every `j`,
//! 2. `‖f_j‖_q ≤ 1` and `‖τ_j‖_p ≤ 1`,
//! 3. `Σ_{j,k} w_j w_k f_j(τ_k) ≥ 0`,
//!
//! the functional coherence `max_{j≠k} f_j(τ_k)` is at least `−D/O`, with the
//! same diagonal and off-diagonal masses as the Hilbert bound. Condition 3 is
//! checked in its integrated form; the pointwise form
//! `f_j(Σ_k w_k τ_k) ≥ 0 ∀j` is reported but not required.
//!
//! Duality maps for `p = 1` and `p = ∞` are multivalued. The canonical choices
//! here are the sign vector (with `sign(0) = 0`) for `p = 1` and the signed
//! coordinate functional at the first index of maximal modulus for `p = ∞`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::rankin_bound;
use crate::error::{Error, Result};
use crate::family::{PairValue, VectorFamily};
use crate::measure::MeasureSpace;
use crate::numeric::{self, CompensatedSum};

/// Tolerance for the hypotheses of the functional bound.
pub const CONDITION_TOLERANCE: f64 = 1e-9;

/// A Hölder exponent in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p >= 1.0 && p.is_finite() {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::InvalidArgument(format!(
                "exponent must lie in [1, inf], got {p}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// The conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    pub fn norm(self, v: &[f64]) -> f64 {
        let max = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        match self {
            Exponent::Infinity => max,
            Exponent::Finite(1.0) => v
                .iter()
                .map(|x| x.abs())
                .collect::<CompensatedSum>()
                .value(),
            Exponent::Finite(2.0) => numeric::norm2(v),
            Exponent::Finite(p) => {
                if max == 0.0 {
                    return 0.0;
                }
                let s = v
                    .iter()
                    .map(|x| (x.abs() / max).powf(p))
                    .collect::<CompensatedSum>()
                    .value();
                max * s.powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|e| Error::InvalidArgument(format!("bad exponent {other:?}: {e}")))
                .and_then(Exponent::new),
        }
    }
}

// Finite exponents are plain numbers; infinity is the string "inf".
impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(p) => Exponent::new(p),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// The duality between a Banach space and its dual as seen by the bound:
/// evaluation `f(x)` and the two norms. [`Exponent`] implements it for `ℓp`;
/// other spaces plug in their own.
pub trait DualPairing {
    fn evaluate(&self, functional: &[f64], vector: &[f64]) -> f64;
    fn vector_norm(&self, vector: &[f64]) -> f64;
    fn functional_norm(&self, functional: &[f64]) -> f64;
}

impl DualPairing for Exponent {
    fn evaluate(&self, functional: &[f64], vector: &[f64]) -> f64 {
        numeric::dot(functional, vector)
    }

    fn vector_norm(&self, vector: &[f64]) -> f64 {
        self.norm(vector)
    }

    fn functional_norm(&self, functional: &[f64]) -> f64 {
        self.conjugate().norm(functional)
    }
}

/// The norming functional of a unit vector `v ∈ ℓp`: `f(v) = 1`, `‖f‖_q = 1`.
pub fn duality_functional(v: &[f64], p: Exponent) -> Result<Vec<f64>> {
    let norm = p.norm(v);
    if (norm - 1.0).abs() > CONDITION_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "duality functional needs a unit vector, got l{p} norm {norm}"
        )));
    }
    let sign = |x: f64| {
        if x > 0.0 {
            1.0
        } else if x < 0.0 {
            -1.0
        } else {
            0.0
        }
    };
    Ok(match p {
        Exponent::Finite(1.0) => v.iter().map(|&x| sign(x)).collect(),
        Exponent::Finite(2.0) => v.to_vec(),
        Exponent::Finite(p) => v.iter().map(|&x| sign(x) * x.abs().powf(p - 1.0)).collect(),
        Exponent::Infinity => {
            let mut m = 0;
            for (k, x) in v.iter().enumerate() {
                if x.abs() > v[m].abs() {
                    m = k;
                }
            }
            let mut f = vec![0.0; v.len()];
            f[m] = sign(v[m]);
            f
        }
    })
}

/// Which hypothesis of the functional bound failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `f_j(τ_j) = 1`.
    UnitPairing,
    /// `‖τ_j‖_p ≤ 1`.
    VectorNorm,
    /// `‖f_j‖_q ≤ 1`.
    FunctionalNorm,
    /// `Σ w_j w_k f_j(τ_k) ≥ 0`.
    GramSum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionFailure {
    pub condition: Condition,
    /// Offending atom, when the condition is per-atom.
    pub index: Option<usize>,
    /// Observed value.
    pub value: f64,
    /// Amount by which the tolerance is exceeded.
    pub excess: f64,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.condition {
            Condition::UnitPairing => "unit pairing f_j(tau_j) = 1",
            Condition::VectorNorm => "vector norm |tau_j|_p <= 1",
            Condition::FunctionalNorm => "functional norm |f_j|_q <= 1",
            Condition::GramSum => "gram sum w_j w_k f_j(tau_k) >= 0",
        };
        write!(f, "{what} fails")?;
        if let Some(i) = self.index {
            write!(f, " at atom {i}")?;
        }
        write!(f, ": value {}, off by {:e}", self.value, self.excess)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalReport {
    /// `max_{j≠k} f_j(τ_k)` over ordered pairs.
    pub coherence: f64,
    pub coherence_bound: f64,
    pub slack: f64,
    pub witness_pair: (usize, usize),
    /// `Σ_{j,k} w_j w_k f_j(τ_k)`.
    pub gram_sum: f64,
    /// `min_j f_j(Σ_k w_k τ_k)`; the pointwise form of the gram-sum condition.
    pub pointwise_min: f64,
    pub pointwise_condition_holds: bool,
    pub tolerance: f64,
    pub satisfied: bool,
}

/// Vectors and functionals over an atomic space, both stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalFamily {
    space: MeasureSpace,
    dim: usize,
    p: Exponent,
    vectors: Vec<f64>,
    functionals: Vec<f64>,
}

impl FunctionalFamily {
    /// Checks only shapes and finiteness; the hypotheses are
    /// examined by [`check_functional_rankin`](Self::check_functional_rankin).
    pub fn new(
        space: MeasureSpace,
        dim: usize,
        p: Exponent,
        vectors: Vec<f64>,
        functionals: Vec<f64>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        for block in [&vectors, &functionals] {
            if block.len() != space.len() * dim {
                return Err(Error::DimensionMismatch {
                    expected: space.len() * dim,
                    actual: block.len(),
                });
            }
            if block.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument("non-finite entry".into()));
            }
        }
        Ok(Self {
            space,
            dim,
            p,
            vectors,
            functionals,
        })
    }

    /// Pairs each unit `ℓp` vector with its norming functional.
    pub fn from_vectors(
        space: MeasureSpace,
        dim: usize,
        p: Exponent,
        vectors: Vec<f64>,
    ) -> Result<Self> {
        if dim == 0 || !vectors.len().is_multiple_of(dim) {
            return Err(Error::InvalidArgument(
                "vector block does not match dimension".into(),
            ));
        }
        let mut functionals = Vec::with_capacity(vectors.len());
        for v in vectors.chunks_exact(dim) {
            functionals.extend(duality_functional(v, p)?);
        }
        Self::new(space, dim, p, vectors, functionals)
    }

    /// The Hilbert special case: `p = 2` with `f_j = τ_j`.
    pub fn from_hilbert(fam: &VectorFamily) -> Result<Self> {
        Self::from_vectors(
            fam.space().clone(),
            fam.dim(),
            Exponent::Finite(2.0),
            fam.as_slice().to_vec(),
        )
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponent(&self) -> Exponent {
        self.p
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }

    pub fn functional(&self, j: usize) -> &[f64] {
        &self.functionals[j * self.dim..(j + 1) * self.dim]
    }

    pub fn vectors(&self) -> &[f64] {
        &self.vectors
    }

    pub fn functionals(&self) -> &[f64] {
        &self.functionals
    }

    pub fn gram_sum_condition(&self) -> f64 {
        self.gram_sum_with(&self.p)
    }

    pub fn gram_sum_with(&self, pairing: &impl DualPairing) -> f64 {
        let w: Vec<f64> = self.space.weights().collect();
        let mut acc = CompensatedSum::new();
        for j in 0..self.len() {
            for k in 0..self.len() {
                acc.add_triple_product(
                    w[j],
                    w[k],
                    pairing.evaluate(self.functional(j), self.vector(k)),
                );
            }
        }
        acc.value()
    }

    /// `min_j f_j(Σ_k w_k τ_k)`.
    pub fn pointwise_min_with(&self, pairing: &impl DualPairing) -> f64 {
        let mut sum = vec![CompensatedSum::new(); self.dim];
        for (w, k) in self.space.weights().zip(0..self.len()) {
            for (acc, x) in sum.iter_mut().zip(self.vector(k)) {
                acc.add_product(w, *x);
            }
        }
        let sum: Vec<f64> = sum.iter().map(CompensatedSum::value).collect();
        (0..self.len())
            .map(|j| pairing.evaluate(self.functional(j), &sum))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn functional_coherence(&self) -> Result<PairValue> {
        self.functional_coherence_with(&self.p)
    }

    /// `max_{j≠k} f_j(τ_k)` over ordered pairs; ties go to the
    /// lexicographically smallest `(j, k)`.
    pub fn functional_coherence_with(&self, pairing: &impl DualPairing) -> Result<PairValue> {
        let n = self.len();
        if n < 2 {
            return Err(Error::UndefinedSupremum(
                "a family with fewer than 2 atoms has no distinct pairs".into(),
            ));
        }
        let mut best: Option<PairValue> = None;
        for j in 0..n {
            for k in (0..n).filter(|&k| k != j) {
                let value = pairing.evaluate(self.functional(j), self.vector(k));
                if best.is_none_or(|b| value > b.value) {
                    best = Some(PairValue {
                        value,
                        pair: (j, k),
                    });
                }
            }
        }
        Ok(best.expect("n >= 2"))
    }

    /// Every failed hypothesis, listed.
    pub fn condition_failures_with(&self, pairing: &impl DualPairing) -> Vec<ConditionFailure> {
        let tol = CONDITION_TOLERANCE;
        let mut failures = Vec::new();
        for j in 0..self.len() {
            let pair = pairing.evaluate(self.functional(j), self.vector(j));
            if (pair - 1.0).abs() > tol {
                failures.push(ConditionFailure {
                    condition: Condition::UnitPairing,
                    index: Some(j),
                    value: pair,
                    excess: (pair - 1.0).abs() - tol,
                });
            }
            let vn = pairing.vector_norm(self.vector(j));
            if vn > 1.0 + tol {
                failures.push(ConditionFailure {
                    condition: Condition::VectorNorm,
                    index: Some(j),
                    value: vn,
                    excess: vn - 1.0 - tol,
                });
            }
            let fnorm = pairing.functional_norm(self.functional(j));
            if fnorm > 1.0 + tol {
                failures.push(ConditionFailure {
                    condition: Condition::FunctionalNorm,
                    index: Some(j),
                    value: fnorm,
                    excess: fnorm - 1.0 - tol,
                });
            }
        }
        let gram_sum = self.gram_sum_with(pairing);
        if gram_sum < -tol {
            failures.push(ConditionFailure {
                condition: Condition::GramSum,
                index: None,
                value: gram_sum,
                excess: -gram_sum - tol,
            });
        }
        failures
    }

    pub fn check_functional_rankin(&self) -> Result<FunctionalReport> {
        self.check_functional_rankin_with(&self.p)
    }

    /// Verifies `max_{j≠k} f_j(τ_k) ≥ −D/O`. Invalid inputs produce
    /// [`Error::Precondition`] and never a verdict.
    pub fn check_functional_rankin_with(
        &self,
        pairing: &impl DualPairing,
    ) -> Result<FunctionalReport> {
        let bound = rankin_bound(&self.space)?;
        let failures = self.condition_failures_with(pairing);
        if !failures.is_empty() {
            return Err(Error::Precondition(failures));
        }
        let coherence = self.functional_coherence_with(pairing)?;
        let pointwise_min = self.pointwise_min_with(pairing);
        let slack = coherence.value - bound.coherence_bound;
        Ok(FunctionalReport {
            coherence: coherence.value,
            coherence_bound: bound.coherence_bound,
            slack,
            witness_pair: coherence.pair,
            gram_sum: self.gram_sum_with(pairing),
            pointwise_min,
            pointwise_condition_holds: pointwise_min >= -CONDITION_TOLERANCE,
            tolerance: CONDITION_TOLERANCE,
            satisfied: slack >= -CONDITION_TOLERANCE,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Normalization;
    use std::f64::consts::PI;

    fn counting(n: usize) -> MeasureSpace {
        MeasureSpace::counting(n).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(Exponent::Finite(3.0).conjugate(), Exponent::Finite(1.5));
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("1.5".parse::<Exponent>().unwrap(), Exponent::Finite(1.5));
    }

    #[test]
    fn norms() {
        let v = [3.0, -4.0];
        assert_eq!(Exponent::Finite(1.0).norm(&v), 7.0);
        assert_eq!(Exponent::Finite(2.0).norm(&v), 5.0);
        assert_eq!(Exponent::Infinity.norm(&v), 4.0);
        let n3 = Exponent::Finite(3.0).norm(&v);
        assert!((n3 - (27.0_f64 + 64.0).powf(1.0 / 3.0)).abs() < 1e-14);
        assert_eq!(Exponent::Finite(3.0).norm(&[0.0, 0.0]), 0.0);
    }

    #[test]
    fn duality_examples() {
        let p2 = Exponent::Finite(2.0);
        assert_eq!(
            duality_functional(&[1.0, 0.0, 0.0], p2).unwrap(),
            vec![1.0, 0.0, 0.0]
        );

        let p3 = Exponent::Finite(3.0);
        let a = 2.0_f64.powf(-1.0 / 3.0);
        let v = [a, a, 0.0, 0.0];
        let f = duality_functional(&v, p3).unwrap();
        let b = 2.0_f64.powf(-2.0 / 3.0);
        for (x, y) in f.iter().zip([b, b, 0.0, 0.0]) {
            assert!((x - y).abs() < 1e-15);
        }
        assert!((numeric::dot(&f, &v) - 1.0).abs() < 1e-15);
        assert!((Exponent::Finite(1.5).norm(&f) - 1.0).abs() < 1e-15);

        let f = duality_functional(&[0.5, -0.5], Exponent::Finite(1.0)).unwrap();
        assert_eq!(f, vec![1.0, -1.0]);
        assert_eq!(numeric::dot(&f, &[0.5, -0.5]), 1.0);
        assert_eq!(Exponent::Infinity.norm(&f), 1.0);
    }

    #[test]
    fn duality_canonical_selections() {
        // p = 1: sign(0) = 0
        let f = duality_functional(&[0.25, 0.0, -0.75], Exponent::Finite(1.0)).unwrap();
        assert_eq!(f, vec![1.0, 0.0, -1.0]);
        // p = ∞: first index of maximal modulus
        let f = duality_functional(&[0.5, -1.0, 1.0], Exponent::Infinity).unwrap();
        assert_eq!(f, vec![0.0, -1.0, 0.0]);
    }

    #[test]
    fn duality_rejects_non_unit() {
        assert!(duality_functional(&[2.0, 0.0], Exponent::Finite(2.0)).is_err());
        assert!(duality_functional(&[0.0, 0.0], Exponent::Infinity).is_err());
    }

    #[test]
    fn gram_sum_examples() {
        let one = FunctionalFamily::from_vectors(counting(1), 1, Exponent::Finite(2.0), vec![1.0])
            .unwrap();
        assert_eq!(one.gram_sum_condition(), 1.0);

        let anti =
            FunctionalFamily::from_vectors(counting(2), 1, Exponent::Finite(2.0), vec![1.0, -1.0])
                .unwrap();
        assert_eq!(anti.gram_sum_condition(), 0.0);
    }

    #[test]
    fn gram_sum_matches_hilbert_total() {
        let space = MeasureSpace::from_weights(&[0.3, 1.7, 2.0]).unwrap();
        let fam = VectorFamily::from_rows(
            space,
            &[vec![1.0, 2.0], vec![-0.5, 0.1], vec![0.0, 1.0]],
            Normalization::Renormalize,
        )
        .unwrap();
        let ff = FunctionalFamily::from_hilbert(&fam).unwrap();
        assert!((ff.gram_sum_condition() - fam.weighted_gram_total()).abs() < 1e-14);
    }

    #[test]
    fn functional_coherence_examples() {
        let anti =
            FunctionalFamily::from_vectors(counting(2), 1, Exponent::Finite(2.0), vec![1.0, -1.0])
                .unwrap();
        assert_eq!(anti.functional_coherence().unwrap().value, -1.0);

        let mut v = Vec::new();
        for k in 0..3 {
            let t = 2.0 * PI * k as f64 / 3.0;
            v.extend([t.cos(), t.sin()]);
        }
        let tri = FunctionalFamily::from_vectors(counting(3), 2, Exponent::Finite(2.0), v).unwrap();
        assert!((tri.functional_coherence().unwrap().value + 0.5).abs() < 1e-15);

        let l1 = FunctionalFamily::new(
            counting(2),
            2,
            Exponent::Finite(1.0),
            vec![1.0, 0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        assert_eq!(
            l1.functional_coherence().unwrap(),
            PairValue {
                value: 0.0,
                pair: (0, 1)
            }
        );
        let one = FunctionalFamily::from_vectors(counting(1), 1, Exponent::Finite(2.0), vec![1.0])
            .unwrap();
        assert!(one.functional_coherence().is_err());
    }

    #[test]
    fn functional_coherence_is_ordered() {
        // f_0(τ_1) = 0.5 but f_1(τ_0) = 0.9
        let fam = FunctionalFamily::new(
            counting(2),
            2,
            Exponent::Infinity,
            vec![1.0, 0.9, 0.5, 1.0],
            vec![1.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        let c = fam.functional_coherence().unwrap();
        assert_eq!(
            c,
            PairValue {
                value: 0.9,
                pair: (1, 0)
            }
        );
    }

    #[test]
    fn check_simplex_triple() {
        let mut v = Vec::new();
        for k in 0..3 {
            let t = 2.0 * PI * k as f64 / 3.0;
            v.extend([t.cos(), t.sin()]);
        }
        let fam = FunctionalFamily::from_vectors(counting(3), 2, Exponent::Finite(2.0), v).unwrap();
        let r = fam.check_functional_rankin().unwrap();
        assert!((r.coherence + 0.5).abs() < 1e-15);
        assert_eq!(r.coherence_bound, -0.5);
        assert!(r.satisfied);
        assert!(r.pointwise_condition_holds);
    }

    #[test]
    fn gram_sum_violation_gives_no_verdict() {
        // l1, τ = (e₁, −e₁): the Gram sum is exactly zero, which passes
        let fam = FunctionalFamily::new(
            counting(2),
            2,
            Exponent::Finite(1.0),
            vec![1.0, 0.0, -1.0, 0.0],
            vec![1.0, 0.0, -1.0, 0.0],
        )
        .unwrap();
        assert_eq!(fam.gram_sum_condition(), 0.0);
        assert!(fam.check_functional_rankin().is_ok());

        // l_inf corners with their canonical norming functionals;
        // rows of f_j(τ_k): [1,-1,0], [-1,1,0], [-1,-1,1], total -1
        let bad = FunctionalFamily::from_vectors(
            counting(3),
            2,
            Exponent::Infinity,
            vec![1.0, 1.0, -1.0, 1.0, 0.0, -1.0],
        )
        .unwrap();
        assert_eq!(bad.functionals(), &[1.0, 0.0, -1.0, 0.0, 0.0, -1.0]);
        assert_eq!(bad.gram_sum_condition(), -1.0);
        match bad.check_functional_rankin() {
            Err(Error::Precondition(f)) => {
                assert_eq!(f.len(), 1);
                assert_eq!(f[0].condition, Condition::GramSum);
                assert_eq!(f[0].value, -1.0);
            }
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn unit_and_norm_violations_are_listed() {
        let fam = FunctionalFamily::new(
            counting(2),
            1,
            Exponent::Finite(2.0),
            vec![2.0, 1.0],
            vec![0.5, 0.5],
        )
        .unwrap();
        let Err(Error::Precondition(f)) = fam.check_functional_rankin() else {
            panic!("expected precondition failure");
        };
        let kinds: Vec<_> = f.iter().map(|x| (x.condition, x.index)).collect();
        assert!(kinds.contains(&(Condition::VectorNorm, Some(0))));
        assert!(kinds.contains(&(Condition::UnitPairing, Some(1))));
        assert!(!kinds.contains(&(Condition::UnitPairing, Some(0))));
    }

    #[test]
    fn pointwise_failure_is_flagged_not_rejected() {
        // l_inf, τ_0 = (1, 1), τ_1 = (1, -1), τ_2 = (-1, 0.5)
        // sum s = (1, 0.5); f_2 = (-1, 0) gives f_2(s) = -1 < 0.
        let vectors = vec![1.0, 1.0, 1.0, -1.0, -1.0, 0.5];
        let fam =
            FunctionalFamily::from_vectors(counting(3), 2, Exponent::Infinity, vectors).unwrap();
        assert!(fam.gram_sum_condition() >= 0.0);
        let r = fam.check_functional_rankin().unwrap();
        assert!(!r.pointwise_condition_holds);
        assert_eq!(r.pointwise_min, -1.0);
        assert!(r.satisfied);
    }

    #[test]
    fn exponent_serde() {
        let s = serde_json::to_string(&[Exponent::Finite(1.5), Exponent::Infinity]).unwrap();
        assert_eq!(s, r#"[1.5,"inf"]"#);
        let back: Vec<Exponent> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![Exponent::Finite(1.5), Exponent::Infinity]);
        assert!(serde_json::from_str::<Exponent>("0.2").is_err());
    }

    /// Custom pairing: ℓ2 with the pairing scaled by a constant.
    struct Scaled(f64);

    impl DualPairing for Scaled {
        fn evaluate(&self, f: &[f64], x: &[f64]) -> f64 {
            self.0 * numeric::dot(f, x)
        }
        fn vector_norm(&self, v: &[f64]) -> f64 {
            numeric::norm2(v)
        }
        fn functional_norm(&self, f: &[f64]) -> f64 {
            self.0 * numeric::norm2(f)
        }
    }

    #[test]
    fn custom_pairing_extension_point() {
        let fam = FunctionalFamily::new(
            counting(2),
            1,
            Exponent::Finite(2.0),
            vec![1.0, -1.0],
            vec![0.5, -0.5],
        )
        .unwrap();
        assert!(fam.check_functional_rankin().is_err());
        let r = fam.check_functional_rankin_with(&Scaled(2.0)).unwrap();
        assert_eq!(r.coherence, -1.0);
        assert!(r.satisfied);
    }
}
