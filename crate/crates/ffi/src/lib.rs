//! C interface to the `rankin` library.
//!
//! Spaces and families are opaque handles created by `rankin_*_new`-style
//! constructors and released with the matching `_free`. Every fallible call
//! returns a [`RankinStatus`]; on failure `rankin_last_error` describes it.
//! Output parameters are written only on success.
//!
//! Handles are not synchronized. A handle may be read from several threads
//! at once but must not be freed while in use.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rankin::banach::{duality_functional, Exponent, FunctionalFamily};
use rankin::bounds::{self, classical_rankin_bound};
use rankin::family::{Normalization, Shape, VectorFamily};
use rankin::format::Document;
use rankin::measure::MeasureSpace;
use rankin::optimizer::{minimize_coherence, simplex_family, Certificate, OptimizerConfig};
use rankin::verify::{check_rankin_with_tolerance, proof_decomposition};
use rankin::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    /// Fewer than two atoms, or a construction that cannot exist.
    UndefinedSupremum = 4,
    /// A vector is zero or off the unit sphere.
    NotNormalized = 5,
    /// A functional family fails one of its preconditions.
    PreconditionFailed = 6,
    Format = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankinNormalization {
    Strict = 0,
    Renormalize = 1,
    Unchecked = 2,
}

/// An atomic measure space.
pub struct RankinSpace(MeasureSpace);

/// A family of vectors indexed by the atoms of a space.
pub struct RankinFamily(VectorFamily);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinBound {
    pub coherence_bound: f64,
    pub distance_bound: f64,
    pub diagonal_mass: f64,
    pub offdiagonal_mass: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinPairValue {
    pub value: f64,
    pub i: usize,
    pub j: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinCheck {
    pub coherence: f64,
    pub min_distance_sq: f64,
    pub coherence_bound: f64,
    pub distance_bound: f64,
    pub slack: f64,
    pub distance_slack: f64,
    pub witness_i: usize,
    pub witness_j: usize,
    pub satisfied: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinDecomposition {
    pub total: f64,
    pub diag_part: f64,
    pub offdiag_part: f64,
    pub residual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinOptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub initial_temperature: f64,
    pub temperature_decay: f64,
    pub stage_length: usize,
    pub step_size: f64,
    pub tolerance: f64,
    pub seed: u64,
    /// 1 runs restarts sequentially.
    pub threads: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinOptimizeSummary {
    pub achieved_coherence: f64,
    pub bound: f64,
    pub gap: f64,
    pub best_restart: usize,
    /// The family attains the bound.
    pub certified: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinFunctionalCheck {
    pub coherence: f64,
    pub coherence_bound: f64,
    pub slack: f64,
    pub witness_j: usize,
    pub witness_k: usize,
    pub gram_sum: f64,
    pub pointwise_min: f64,
    pub pointwise_condition_holds: bool,
    pub satisfied: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(RankinStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidArgument(_) | Error::InvalidConfig(_) => RankinStatus::InvalidArgument,
            Error::UndefinedSupremum(_) => RankinStatus::UndefinedSupremum,
            Error::DimensionMismatch { .. } => RankinStatus::DimensionMismatch,
            Error::NotNormalized { .. } | Error::ZeroVector { .. } => RankinStatus::NotNormalized,
            Error::Precondition(_) => RankinStatus::PreconditionFailed,
            Error::Format(_) => RankinStatus::Format,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> RankinStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            RankinStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("internal error: {message}"));
            RankinStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(RankinStatus::NullPointer, format!("{what} is null"))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn slice_mut<'a>(p: *mut f64, len: usize, what: &str) -> Result<&'a mut [f64], Failure> {
    if len == 0 {
        Ok(&mut [])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts_mut(p, len))
    }
}

fn exponent(p: f64) -> Result<Exponent, Failure> {
    Ok(Exponent::new(p)?)
}

impl From<RankinNormalization> for Normalization {
    fn from(mode: RankinNormalization) -> Self {
        match mode {
            RankinNormalization::Strict => Normalization::Strict,
            RankinNormalization::Renormalize => Normalization::Renormalize,
            RankinNormalization::Unchecked => Normalization::Unchecked,
        }
    }
}

impl From<OptimizerConfig> for RankinOptimizerConfig {
    fn from(c: OptimizerConfig) -> Self {
        Self {
            restarts: c.restarts,
            max_iters: c.max_iters,
            initial_temperature: c.initial_temperature,
            temperature_decay: c.temperature_decay,
            stage_length: c.stage_length,
            step_size: c.step_size,
            tolerance: c.tolerance,
            seed: c.seed,
            threads: c.threads,
        }
    }
}

impl From<RankinOptimizerConfig> for OptimizerConfig {
    fn from(c: RankinOptimizerConfig) -> Self {
        Self {
            restarts: c.restarts,
            max_iters: c.max_iters,
            initial_temperature: c.initial_temperature,
            temperature_decay: c.temperature_decay,
            stage_length: c.stage_length,
            step_size: c.step_size,
            tolerance: c.tolerance,
            seed: c.seed,
            threads: c.threads,
        }
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn rankin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rankin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_space_counting(
    n: usize,
    out: *mut *mut RankinSpace,
) -> RankinStatus {
    guard(|| {
        let space = MeasureSpace::counting(n)?;
        put(out, Box::into_raw(Box::new(RankinSpace(space))), "out")
    })
}

/// # Safety
/// `weights` must point to `n` readable doubles and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_space_from_weights(
    weights: *const f64,
    n: usize,
    out: *mut *mut RankinSpace,
) -> RankinStatus {
    guard(|| {
        let space = MeasureSpace::from_weights(slice(weights, n, "weights")?)?;
        put(out, Box::into_raw(Box::new(RankinSpace(space))), "out")
    })
}

/// # Safety
/// `space` must be null or a handle from this library that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rankin_space_free(space: *mut RankinSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// # Safety
/// `space` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_space_len(
    space: *const RankinSpace,
    out: *mut usize,
) -> RankinStatus {
    guard(|| put(out, get(space, "space")?.0.len(), "out"))
}

/// Lower coherence bound and upper distance bound of a space.
///
/// # Safety
/// `space` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_bound(
    space: *const RankinSpace,
    out: *mut RankinBound,
) -> RankinStatus {
    guard(|| {
        let b = bounds::rankin_bound(&get(space, "space")?.0)?;
        let report = RankinBound {
            coherence_bound: b.coherence_bound,
            distance_bound: b.distance_bound,
            diagonal_mass: b.diagonal_mass,
            offdiagonal_mass: b.offdiagonal_mass,
        };
        put(out, report, "out")
    })
}

/// The counting-measure bounds `-1/(n-1)` and `2n/(n-1)`.
///
/// # Safety
/// `coherence` and `distance` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_classical_bound(
    n: usize,
    coherence: *mut f64,
    distance: *mut f64,
) -> RankinStatus {
    guard(|| {
        let (c, d) = classical_rankin_bound(n)?;
        if distance.is_null() {
            return Err(null("distance"));
        }
        put(coherence, c, "coherence")?;
        put(distance, d, "distance")
    })
}

/// Builds a family from `len(space) * dim` row-major entries. The space is copied.
///
/// # Safety
/// `space` must be a live handle, `data` must point to `len` readable doubles
/// and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_new(
    space: *const RankinSpace,
    dim: usize,
    data: *const f64,
    len: usize,
    mode: RankinNormalization,
    out: *mut *mut RankinFamily,
) -> RankinStatus {
    guard(|| {
        let space = get(space, "space")?.0.clone();
        let data = slice(data, len, "data")?.to_vec();
        let fam = VectorFamily::new(space, dim, data, mode.into())?;
        put(out, Box::into_raw(Box::new(RankinFamily(fam))), "out")
    })
}

fn store_family(
    fam: rankin::Result<VectorFamily>,
    out: *mut *mut RankinFamily,
) -> Result<(), Failure> {
    let fam = fam.map_err(|e| match e {
        Error::InvalidArgument(m) => Failure(RankinStatus::UndefinedSupremum, m),
        other => other.into(),
    })?;
    unsafe { put(out, Box::into_raw(Box::new(RankinFamily(fam))), "out") }
}

/// Regular simplex of `n` unit vectors in dimension `d >= n - 1`, counting measure.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_simplex(
    n: usize,
    d: usize,
    out: *mut *mut RankinFamily,
) -> RankinStatus {
    guard(|| store_family(simplex_family(n, d), out))
}

/// `n` equally spaced points on the unit circle with weights `2π/n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_circle(
    n: usize,
    out: *mut *mut RankinFamily,
) -> RankinStatus {
    guard(|| store_family(VectorFamily::discretize(Shape::Circle, n), out))
}

/// `n` Fibonacci-lattice points on the unit sphere with weights `4π/n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_sphere(
    n: usize,
    out: *mut *mut RankinFamily,
) -> RankinStatus {
    guard(|| store_family(VectorFamily::discretize(Shape::Sphere, n), out))
}

/// # Safety
/// `fam` must be null or a handle from this library that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_free(fam: *mut RankinFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// # Safety
/// `fam` must be a live handle and `len`, `dim` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_shape(
    fam: *const RankinFamily,
    len: *mut usize,
    dim: *mut usize,
) -> RankinStatus {
    guard(|| {
        let fam = &get(fam, "fam")?.0;
        if dim.is_null() {
            return Err(null("dim"));
        }
        put(len, fam.len(), "len")?;
        put(dim, fam.dim(), "dim")
    })
}

/// Copies the row-major vectors into `out`, which must hold exactly `len * dim` doubles.
///
/// # Safety
/// `fam` must be a live handle and `out` must point to `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_vectors(
    fam: *const RankinFamily,
    out: *mut f64,
    out_len: usize,
) -> RankinStatus {
    guard(|| {
        let src = get(fam, "fam")?.0.as_slice();
        if out_len != src.len() {
            return Err(Error::DimensionMismatch {
                expected: src.len(),
                actual: out_len,
            }
            .into());
        }
        slice_mut(out, out_len, "out")?.copy_from_slice(src);
        Ok(())
    })
}

/// Largest inner product over distinct atoms, with its witness pair.
///
/// # Safety
/// `fam` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_coherence(
    fam: *const RankinFamily,
    out: *mut RankinPairValue,
) -> RankinStatus {
    guard(|| {
        let pv = get(fam, "fam")?.0.coherence()?;
        put(
            out,
            RankinPairValue {
                value: pv.value,
                i: pv.pair.0,
                j: pv.pair.1,
            },
            "out",
        )
    })
}

/// Smallest squared distance over distinct atoms, with its witness pair.
///
/// # Safety
/// `fam` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_min_distance_sq(
    fam: *const RankinFamily,
    out: *mut RankinPairValue,
) -> RankinStatus {
    guard(|| {
        let pv = get(fam, "fam")?.0.min_pairwise_distance_sq()?;
        put(
            out,
            RankinPairValue {
                value: pv.value,
                i: pv.pair.0,
                j: pv.pair.1,
            },
            "out",
        )
    })
}

/// Checks the family against the bound of its space. A violated bound is
/// reported through `satisfied`, not the status.
///
/// # Safety
/// `fam` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_check(
    fam: *const RankinFamily,
    tolerance: f64,
    out: *mut RankinCheck,
) -> RankinStatus {
    guard(|| {
        let r = check_rankin_with_tolerance(&get(fam, "fam")?.0, tolerance)?;
        let check = RankinCheck {
            coherence: r.coherence,
            min_distance_sq: r.min_distance_sq,
            coherence_bound: r.coherence_bound,
            distance_bound: r.distance_bound,
            slack: r.slack,
            distance_slack: r.distance_slack,
            witness_i: r.witness_pair.0,
            witness_j: r.witness_pair.1,
            satisfied: r.satisfied,
        };
        put(out, check, "out")
    })
}

/// Splits `‖Σ w_i τ_i‖²` into its diagonal and off-diagonal parts.
///
/// # Safety
/// `fam` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_decomposition(
    fam: *const RankinFamily,
    out: *mut RankinDecomposition,
) -> RankinStatus {
    guard(|| {
        let d = proof_decomposition(&get(fam, "fam")?.0)?;
        let report = RankinDecomposition {
            total: d.total,
            diag_part: d.diag_part,
            offdiag_part: d.offdiag_part,
            residual: d.residual,
        };
        put(out, report, "out")
    })
}

/// Serializes the family as a JSON document. Free the result with `rankin_string_free`.
///
/// # Safety
/// `fam` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_to_json(
    fam: *const RankinFamily,
    out: *mut *mut c_char,
) -> RankinStatus {
    guard(|| {
        let text = Document::from_family(&get(fam, "fam")?.0).to_text();
        let c = CString::new(text).map_err(|e| Failure(RankinStatus::Format, e.to_string()))?;
        put(out, c.into_raw(), "out")
    })
}

/// Parses a family document and applies `mode` to its vectors.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_family_from_json(
    text: *const c_char,
    mode: RankinNormalization,
    out: *mut *mut RankinFamily,
) -> RankinStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(RankinStatus::Format, format!("not UTF-8: {e}")))?;
        let raw = Document::parse(text)?.family()?;
        let fam = VectorFamily::new(
            raw.space().clone(),
            raw.dim(),
            raw.as_slice().to_vec(),
            mode.into(),
        )?;
        put(out, Box::into_raw(Box::new(RankinFamily(fam))), "out")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rankin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_optimizer_default_config(
    out: *mut RankinOptimizerConfig,
) -> RankinStatus {
    guard(|| put(out, OptimizerConfig::default().into(), "out"))
}

/// Searches for a family in dimension `dim` of minimal coherence over `space`.
/// `config` may be null for the defaults. `out_family` may be null when only
/// the summary is wanted.
///
/// # Safety
/// `space` must be a live handle, `config` null or readable, `out_family`
/// null or valid for writes, and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_minimize_coherence(
    space: *const RankinSpace,
    dim: usize,
    config: *const RankinOptimizerConfig,
    out_family: *mut *mut RankinFamily,
    out: *mut RankinOptimizeSummary,
) -> RankinStatus {
    guard(|| {
        let space = &get(space, "space")?.0;
        let cfg = config
            .as_ref()
            .map_or_else(OptimizerConfig::default, |c| (*c).into());
        if out.is_null() {
            return Err(null("out"));
        }
        let r = minimize_coherence(space, dim, &cfg)?;
        let summary = RankinOptimizeSummary {
            achieved_coherence: r.achieved_coherence,
            bound: r.bound,
            gap: r.gap,
            best_restart: r.best_restart,
            certified: r.certificate == Certificate::EqualityCertified,
        };
        if !out_family.is_null() {
            out_family.write(Box::into_raw(Box::new(RankinFamily(r.best_family))));
        }
        put(out, summary, "out")
    })
}

/// Writes the norming functional of `v` in `ℓp` to `out` (both of length
/// `dim`). Pass `INFINITY` for `p = ∞`.
///
/// # Safety
/// `v` must point to `dim` readable doubles and `out` to `dim` writable ones.
#[no_mangle]
pub unsafe extern "C" fn rankin_duality_functional(
    v: *const f64,
    dim: usize,
    p: f64,
    out: *mut f64,
) -> RankinStatus {
    guard(|| {
        let f = duality_functional(slice(v, dim, "v")?, exponent(p)?)?;
        slice_mut(out, dim, "out")?.copy_from_slice(&f);
        Ok(())
    })
}

/// Checks the functional bound for vectors and functionals given as
/// `len(space) * dim` row-major blocks. When a precondition fails the status
/// is `PRECONDITION_FAILED` and `rankin_last_error` lists the failures.
///
/// # Safety
/// `space` must be a live handle, `vectors` and `functionals` must each point
/// to `len(space) * dim` readable doubles, and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rankin_functional_check(
    space: *const RankinSpace,
    dim: usize,
    p: f64,
    vectors: *const f64,
    functionals: *const f64,
    out: *mut RankinFunctionalCheck,
) -> RankinStatus {
    guard(|| {
        let space = get(space, "space")?.0.clone();
        let len = space
            .len()
            .checked_mul(dim)
            .ok_or_else(|| Failure(RankinStatus::InvalidArgument, "dimension too large".into()))?;
        let v = slice(vectors, len, "vectors")?.to_vec();
        let f = slice(functionals, len, "functionals")?.to_vec();
        let ff = FunctionalFamily::new(space, dim, exponent(p)?, v, f)?;
        let r = ff.check_functional_rankin()?;
        let check = RankinFunctionalCheck {
            coherence: r.coherence,
            coherence_bound: r.coherence_bound,
            slack: r.slack,
            witness_j: r.witness_pair.0,
            witness_k: r.witness_pair.1,
            gram_sum: r.gram_sum,
            pointwise_min: r.pointwise_min,
            pointwise_condition_holds: r.pointwise_condition_holds,
            satisfied: r.satisfied,
        };
        put(out, check, "out")
    })
}
