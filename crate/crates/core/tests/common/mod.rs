//! Random instance generators and brute-force oracles shared by the
//! integration tests. The oracles use plain loops and naive arithmetic and
//! never call into the library's kernels.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use rankin::banach::Exponent;
use rankin::family::{Normalization, VectorFamily};
use rankin::measure::MeasureSpace;

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Seed for randomized suites; override with `RANKIN_TEST_SEED`.
pub fn test_seed() -> u64 {
    std::env::var("RANKIN_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(test_seed().wrapping_add(offset))
}

pub fn gaussian_vector(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn unit_vector(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vector(rng, d);
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-9 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Log-uniform weight in `[lo, hi]`.
pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

pub fn random_space(rng: &mut impl Rng, n: usize) -> MeasureSpace {
    let w: Vec<f64> = (0..n).map(|_| log_uniform(rng, 0.1, 10.0)).collect();
    MeasureSpace::from_weights(&w).unwrap()
}

/// A normalized family with `n` atoms in `R^d`, log-uniform weights in
/// `[0.1, 10]` and vectors uniform on the sphere.
pub fn random_family(rng: &mut impl Rng, n: usize, d: usize) -> VectorFamily {
    let space = random_space(rng, n);
    let data: Vec<f64> = (0..n).flat_map(|_| unit_vector(rng, d)).collect();
    VectorFamily::new(space, d, data, Normalization::Renormalize).unwrap()
}

/// A random unit vector of the given `ℓp` norm.
pub fn lp_unit_vector(rng: &mut impl Rng, d: usize, p: Exponent) -> Vec<f64> {
    loop {
        let v = gaussian_vector(rng, d);
        let n = naive_lp_norm(&v, p);
        if n > 1e-9 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn naive_lp_norm(v: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => v.iter().fold(0.0, |m: f64, x| m.max(x.abs())),
        Exponent::Finite(p) => v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p),
    }
}

pub fn naive_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rows(fam: &VectorFamily) -> Vec<Vec<f64>> {
    fam.vectors().map(<[f64]>::to_vec).collect()
}

/// Brute-force `(max ⟨τ_i, τ_j⟩, argmax)` over `i < j`.
pub fn oracle_coherence(rows: &[Vec<f64>]) -> (f64, (usize, usize)) {
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            if i < j {
                let g = naive_dot(&rows[i], &rows[j]);
                if g > best.0 {
                    best = (g, (i, j));
                }
            }
        }
    }
    best
}

/// Brute-force `min ‖τ_i − τ_j‖²` over `i ≠ j`.
pub fn oracle_min_distance_sq(rows: &[Vec<f64>]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            if i != j {
                let d: f64 = rows[i]
                    .iter()
                    .zip(&rows[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                best = best.min(d);
            }
        }
    }
    best
}

/// Enumerates ordered atom pairs and accumulates `w_i w_j` on and off the diagonal.
pub fn oracle_masses(weights: &[f64]) -> (f64, f64) {
    let (mut diag, mut off) = (0.0, 0.0);
    for (i, a) in weights.iter().enumerate() {
        for (j, b) in weights.iter().enumerate() {
            if i == j {
                diag += a * b;
            } else {
                off += a * b;
            }
        }
    }
    (diag, off)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// A finite float drawn from the whole bit space, subnormals and `-0.0` included.
pub fn any_finite(rng: &mut impl Rng) -> f64 {
    loop {
        let x = f64::from_bits(rng.random());
        if x.is_finite() {
            return x;
        }
    }
}

pub fn any_positive(rng: &mut impl Rng) -> f64 {
    loop {
        let x = any_finite(rng).abs();
        if x > 0.0 {
            return x;
        }
    }
}

fn finite_block(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| any_finite(rng)).collect()
}

fn random_exponent(rng: &mut impl Rng) -> Exponent {
    match rng.random_range(0..4) {
        0 => Exponent::Infinity,
        1 => Exponent::Finite(1.0),
        2 => Exponent::Finite(1.0 + any_positive(rng).min(f64::MAX - 1.0)),
        _ => Exponent::Finite(rng.random_range(1.0..8.0)),
    }
}

/// A random document of a random kind. Entries use arbitrary bit patterns,
/// so the vectors are generally not normalized.
pub fn random_document(rng: &mut impl Rng) -> rankin::format::Document {
    use rankin::banach::FunctionalFamily;
    use rankin::format::Document;
    use rankin::measure::Atom;

    let n = rng.random_range(1..=8);
    let d = rng.random_range(1..=5);
    let atoms: Vec<Atom> = (0..n)
        .map(|i| Atom {
            label: format!("a{i}"),
            weight: any_positive(rng),
        })
        .collect();
    let space = MeasureSpace::new(atoms).unwrap();
    match rng.random_range(0..3) {
        0 => Document::from_space(&space),
        1 => {
            let data = finite_block(rng, n * d);
            Document::from_family(
                &VectorFamily::new(space, d, data, Normalization::Unchecked).unwrap(),
            )
        }
        _ => {
            let p = random_exponent(rng);
            let (v, f) = (finite_block(rng, n * d), finite_block(rng, n * d));
            Document::from_functional(&FunctionalFamily::new(space, d, p, v, f).unwrap())
        }
    }
}

/// Compares two serializable values float by float on their bit patterns.
pub fn bit_identical<T: serde::Serialize>(a: &T, b: &T) -> bool {
    fn walk(a: &serde_json::Value, b: &serde_json::Value) -> bool {
        use serde_json::Value;
        match (a, b) {
            (Value::Number(x), Value::Number(y)) => match (x.as_f64(), y.as_f64()) {
                _ if x.is_u64() || x.is_i64() => x == y,
                (Some(p), Some(q)) => p.to_bits() == q.to_bits(),
                _ => false,
            },
            (Value::Array(x), Value::Array(y)) => {
                x.len() == y.len() && x.iter().zip(y).all(|(p, q)| walk(p, q))
            }
            (Value::Object(x), Value::Object(y)) => {
                x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| walk(v, w)))
            }
            _ => a == b,
        }
    }
    walk(
        &serde_json::to_value(a).unwrap(),
        &serde_json::to_value(b).unwrap(),
    )
}
