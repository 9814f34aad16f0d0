//! Numerical search for families of minimal coherence over a fixed space.
//!
//! Each restart runs projected gradient descent on the product of unit
//! spheres `(S^{d−1})^n`. The nonsmooth objective `max_{i<j} ⟨τ_i, τ_j⟩` is
//! replaced by its log-sum-exp smoothing at temperature `T`,
//!
//! ```text
//! F_T(τ) = T · log Σ_{i<j} exp(⟨τ_i, τ_j⟩ / T),
//! ```
//!
//! and `T` decays geometrically. After every step the Euclidean gradient is
//! projected onto each tangent space and the vectors are retracted to the
//! sphere by renormalization. Final families are scored with the exact max.
//!
//! Weights do not enter the objective: they only fix the bound being
//! targeted.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::rankin_bound;
use crate::error::{Error, Result};
use crate::family::{Normalization, VectorFamily};
use crate::measure::MeasureSpace;
use crate::numeric;
use crate::verify::synthesis_norm;

/// Gap below which a result counts as attaining the bound.
pub const CERTIFICATE_GAP: f64 = 1e-6;
/// Maximal off-diagonal Gram deviation from the bound in a certified result.
pub const CERTIFICATE_GRAM: f64 = 1e-5;
/// Maximal `‖Σ w_i τ_i‖` in a certified result.
pub const CERTIFICATE_SYNTHESIS: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub initial_temperature: f64,
    /// Multiplies the temperature at the end of every stage.
    pub temperature_decay: f64,
    /// Iterations per temperature stage.
    pub stage_length: usize,
    pub step_size: f64,
    /// A stage ends early once a step changes the smoothed objective by less
    /// than this. Once the smoothing itself is within this of the exact max,
    /// a last stage runs until the iterate stops moving.
    pub tolerance: f64,
    pub seed: u64,
    /// Worker threads for restarts; 1 runs them sequentially on the caller.
    pub threads: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iters: 5000,
            initial_temperature: 1.0,
            temperature_decay: 0.85,
            stage_length: 200,
            step_size: 0.05,
            tolerance: 1e-10,
            seed: 0,
            threads: 1,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.restarts == 0 {
            return bad("restarts must be >= 1");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be >= 1");
        }
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return bad("initial temperature must be finite and > 0");
        }
        if !(self.temperature_decay > 0.0 && self.temperature_decay < 1.0) {
            return bad("temperature decay must lie in (0, 1)");
        }
        if self.stage_length == 0 {
            return bad("stage length must be >= 1");
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return bad("step size must be finite and > 0");
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad("tolerance must be finite and > 0");
        }
        if self.threads == 0 {
            return bad("threads must be >= 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    EqualityCertified,
    GapPositive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub seed: u64,
    pub iterations: usize,
    pub final_temperature: f64,
    pub smoothed: f64,
    pub coherence: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerResult {
    pub best_family: VectorFamily,
    pub best_restart: usize,
    pub achieved_coherence: f64,
    pub bound: f64,
    pub gap: f64,
    pub traces: Vec<RestartTrace>,
    pub certificate: Certificate,
}

/// Log-sum-exp smoothing of the coherence over unordered pairs, with its
/// gradient in ambient coordinates (row-major, `n × d`).
pub fn smoothed_objective(fam: &VectorFamily, temperature: f64) -> Result<(f64, Vec<f64>)> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "temperature must be finite and > 0, got {temperature}"
        )));
    }
    if fam.len() < 2 {
        return Err(Error::UndefinedSupremum(
            "smoothing needs at least one pair".into(),
        ));
    }
    Ok(lse_with_gradient(
        fam.as_slice(),
        fam.len(),
        fam.dim(),
        temperature,
    ))
}

fn lse_with_gradient(x: &[f64], n: usize, d: usize, t: f64) -> (f64, Vec<f64>) {
    let row = |i: usize| &x[i * d..(i + 1) * d];
    let mut inner = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            inner.push(numeric::dot(row(i), row(j)));
        }
    }
    let max = inner.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = inner.iter().map(|g| ((g - max) / t).exp()).collect();
    let z: f64 = weights.iter().sum();
    let value = max + t * z.ln();

    let mut grad = vec![0.0; n * d];
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let p = weights[k] / z;
            k += 1;
            for c in 0..d {
                grad[i * d + c] += p * x[j * d + c];
                grad[j * d + c] += p * x[i * d + c];
            }
        }
    }
    (value, grad)
}

/// `n` unit vectors in `R^d` with every pairwise inner product `−1/(n−1)`:
/// the vertices of a regular simplex centred at the origin.
pub fn simplex_family(n: usize, d: usize) -> Result<VectorFamily> {
    if n < 2 {
        return Err(Error::InvalidArgument("simplex needs n >= 2".into()));
    }
    if d + 1 < n {
        return Err(Error::InvalidArgument(format!(
            "{n} equiangular unit vectors with inner product -1/(n-1) need d >= {}, got {d}",
            n - 1
        )));
    }
    // Centred basis vectors e_i − c live in the hyperplane Σ x = 0. Express
    // them in an orthonormal basis of that hyperplane obtained from the
    // Helmert contrasts u_k = (1, …, 1, −k, 0, …) / √(k(k+1)), k = 1..n−1.
    let nf = n as f64;
    let scale = (nf / (nf - 1.0)).sqrt();
    let mut data = vec![0.0; n * d];
    for i in 0..n {
        for k in 1..n {
            let kf = k as f64;
            let entry = match i.cmp(&k) {
                std::cmp::Ordering::Less => 1.0,
                std::cmp::Ordering::Equal => -kf,
                std::cmp::Ordering::Greater => 0.0,
            };
            let coord = entry / (kf * (kf + 1.0)).sqrt();
            // ⟨e_i − c, u_k⟩ = u_k[i] because u_k ⟂ c
            data[i * d + (k - 1)] = coord * scale;
        }
    }
    VectorFamily::new(
        MeasureSpace::counting(n)?,
        d,
        data,
        Normalization::Renormalize,
    )
}

struct RestartOutcome {
    family: Vec<f64>,
    trace: RestartTrace,
}

fn restart_seed(seed: u64, restart: usize) -> u64 {
    seed.wrapping_add(restart as u64)
}

fn random_sphere_point(rng: &mut ChaCha8Rng, out: &mut [f64]) {
    loop {
        for x in out.iter_mut() {
            *x = StandardNormal.sample(rng);
        }
        let norm = numeric::norm2(out);
        if norm > 1e-12 {
            out.iter_mut().for_each(|x| *x /= norm);
            return;
        }
    }
}

fn exact_coherence(x: &[f64], n: usize, d: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            best = best.max(numeric::dot(&x[i * d..(i + 1) * d], &x[j * d..(j + 1) * d]));
        }
    }
    best
}

/// Projects the gradient onto the tangent spaces, steps, and renormalizes.
fn retract_step(x: &[f64], grad: &[f64], n: usize, d: usize, step: f64, out: &mut [f64]) {
    for i in 0..n {
        let xi = &x[i * d..(i + 1) * d];
        let gi = &grad[i * d..(i + 1) * d];
        let radial = numeric::dot(xi, gi);
        let oi = &mut out[i * d..(i + 1) * d];
        for c in 0..d {
            oi[c] = xi[c] - step * (gi[c] - radial * xi[c]);
        }
        let norm = numeric::norm2(oi);
        oi.iter_mut().for_each(|v| *v /= norm);
    }
}

fn run_restart(n: usize, d: usize, cfg: &OptimizerConfig, restart: usize) -> RestartOutcome {
    let seed = restart_seed(cfg.seed, restart);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n * d];
    for v in x.chunks_exact_mut(d) {
        random_sphere_point(&mut rng, v);
    }
    let mut candidate = vec![0.0; n * d];

    let mut temperature = cfg.initial_temperature;
    let mut iterations = 0;
    let (mut value, mut grad) = lse_with_gradient(&x, n, d, temperature);
    // T·ln(#pairs) bounds the gap between the smoothed and the exact objective
    let log_pairs = ((n * (n - 1) / 2) as f64).ln();

    while iterations < cfg.max_iters {
        let mut step = cfg.step_size;
        let mut stage_iters = 0;
        let mut converged = false;
        // once smoothing is negligible, polish to floating-point stationarity
        let last_stage = temperature * log_pairs <= cfg.tolerance;
        let threshold = if last_stage { 0.0 } else { cfg.tolerance };
        while stage_iters < cfg.stage_length && iterations < cfg.max_iters {
            iterations += 1;
            stage_iters += 1;
            retract_step(&x, &grad, n, d, step, &mut candidate);
            let (new_value, new_grad) = lse_with_gradient(&candidate, n, d, temperature);
            if new_value > value {
                // reject and shrink
                step *= 0.5;
                if step < f64::EPSILON {
                    converged = true;
                    break;
                }
                continue;
            }
            let change = value - new_value;
            std::mem::swap(&mut x, &mut candidate);
            value = new_value;
            grad = new_grad;
            if change <= threshold {
                converged = true;
                break;
            }
        }
        if converged && last_stage {
            break;
        }
        temperature = (temperature * cfg.temperature_decay).max(f64::MIN_POSITIVE);
        let (v, g) = lse_with_gradient(&x, n, d, temperature);
        value = v;
        grad = g;
    }

    RestartOutcome {
        trace: RestartTrace {
            restart,
            seed,
            iterations,
            final_temperature: temperature,
            smoothed: value,
            coherence: exact_coherence(&x, n, d),
        },
        family: x,
    }
}

pub fn minimize_coherence(
    space: &MeasureSpace,
    dim: usize,
    cfg: &OptimizerConfig,
) -> Result<OptimizerResult> {
    cfg.validate()?;
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let bound = rankin_bound(space)?.coherence_bound;
    let n = space.len();

    let outcomes: Vec<RestartOutcome> = if cfg.threads == 1 {
        (0..cfg.restarts)
            .map(|r| run_restart(n, dim, cfg, r))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..cfg.restarts)
                .into_par_iter()
                .map(|r| run_restart(n, dim, cfg, r))
                .collect()
        })
    };

    // lowest coherence wins; the earliest restart wins ties
    let best = outcomes.iter().enumerate().fold(0, |best, (r, o)| {
        if o.trace.coherence < outcomes[best].trace.coherence {
            r
        } else {
            best
        }
    });

    let best_family = VectorFamily::new(
        space.clone(),
        dim,
        outcomes[best].family.clone(),
        Normalization::Unchecked,
    )?;
    let achieved_coherence = best_family.coherence()?.value;
    let gap = achieved_coherence - bound;
    let certified = gap <= CERTIFICATE_GAP
        && best_family
            .gram()
            .upper_pairs()
            .all(|(_, g)| (g - bound).abs() <= CERTIFICATE_GRAM)
        && synthesis_norm(&best_family) <= CERTIFICATE_SYNTHESIS;

    Ok(OptimizerResult {
        best_family,
        best_restart: best,
        achieved_coherence,
        bound,
        gap,
        traces: outcomes.into_iter().map(|o| o.trace).collect(),
        certificate: if certified {
            Certificate::EqualityCertified
        } else {
            Certificate::GapPositive
        },
    })
}
