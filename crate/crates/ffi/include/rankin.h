#ifndef RANKIN_H
#define RANKIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RankinStatus {
  RANKIN_STATUS_OK = 0,
  RANKIN_STATUS_NULL_POINTER = 1,
  RANKIN_STATUS_INVALID_ARGUMENT = 2,
  RANKIN_STATUS_DIMENSION_MISMATCH = 3,
  // Fewer than two atoms, or a construction that cannot exist.
  RANKIN_STATUS_UNDEFINED_SUPREMUM = 4,
  // A vector is zero or off the unit sphere.
  RANKIN_STATUS_NOT_NORMALIZED = 5,
  // A functional family fails one of its preconditions.
  RANKIN_STATUS_PRECONDITION_FAILED = 6,
  RANKIN_STATUS_FORMAT = 7,
  RANKIN_STATUS_PANIC = 8,
} RankinStatus;

typedef enum RankinNormalization {
  RANKIN_NORMALIZATION_STRICT = 0,
  RANKIN_NORMALIZATION_RENORMALIZE = 1,
  RANKIN_NORMALIZATION_UNCHECKED = 2,
} RankinNormalization;

// A family of vectors indexed by the atoms of a space.
typedef struct RankinFamily RankinFamily;

// An atomic measure space.
typedef struct RankinSpace RankinSpace;

typedef struct RankinBound {
  double coherence_bound;
  double distance_bound;
  double diagonal_mass;
  double offdiagonal_mass;
} RankinBound;

typedef struct RankinPairValue {
  double value;
  size_t i;
  size_t j;
} RankinPairValue;

typedef struct RankinCheck {
  double coherence;
  double min_distance_sq;
  double coherence_bound;
  double distance_bound;
  double slack;
  double distance_slack;
  size_t witness_i;
  size_t witness_j;
  bool satisfied;
} RankinCheck;

typedef struct RankinDecomposition {
  double total;
  double diag_part;
  double offdiag_part;
  double residual;
} RankinDecomposition;

typedef struct RankinOptimizerConfig {
  size_t restarts;
  size_t max_iters;
  double initial_temperature;
  double temperature_decay;
  size_t stage_length;
  double step_size;
  double tolerance;
  uint64_t seed;
  // 1 runs restarts sequentially.
  size_t threads;
} RankinOptimizerConfig;

typedef struct RankinOptimizeSummary {
  double achieved_coherence;
  double bound;
  double gap;
  size_t best_restart;
  // The family attains the bound.
  bool certified;
} RankinOptimizeSummary;

typedef struct RankinFunctionalCheck {
  double coherence;
  double coherence_bound;
  double slack;
  size_t witness_j;
  size_t witness_k;
  double gram_sum;
  double pointwise_min;
  bool pointwise_condition_holds;
  bool satisfied;
} RankinFunctionalCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call into the library on this thread.
const char *rankin_last_error(void);

// Library version as a static NUL-terminated string.
const char *rankin_version(void);

// # Safety
// `out` must be valid for writes.
enum RankinStatus rankin_space_counting(size_t n, struct RankinSpace **out);

// # Safety
// `weights` must point to `n` readable doubles and `out` must be valid for writes.
enum RankinStatus rankin_space_from_weights(const double *weights,
                                            size_t n,
                                            struct RankinSpace **out);

// # Safety
// `space` must be null or a handle from this library that is not used afterwards.
void rankin_space_free(struct RankinSpace *space);

// # Safety
// `space` must be a live handle and `out` valid for writes.
enum RankinStatus rankin_space_len(const struct RankinSpace *space, size_t *out);

// Lower coherence bound and upper distance bound of a space.
//
// # Safety
// `space` must be a live handle and `out` valid for writes.
enum RankinStatus rankin_bound(const struct RankinSpace *space, struct RankinBound *out);

// The counting-measure bounds `-1/(n-1)` and `2n/(n-1)`.
//
// # Safety
// `coherence` and `distance` must be valid for writes.
enum RankinStatus rankin_classical_bound(size_t n, double *coherence, double *distance);

// Builds a family from `len(space) * dim` row-major entries. The space is copied.
//
// # Safety
// `space` must be a live handle, `data` must point to `len` readable doubles
// and `out` must be valid for writes.
enum RankinStatus rankin_family_new(const struct RankinSpace *space,
                                    size_t dim,
                                    const double *data,
                                    size_t len,
                                    enum RankinNormalization mode,
                                    struct RankinFamily **out);

// Regular simplex of `n` unit vectors in dimension `d >= n - 1`, counting measure.
//
// # Safety
// `out` must be valid for writes.
enum RankinStatus rankin_family_simplex(size_t n, size_t d, struct RankinFamily **out);

// `n` equally spaced points on the unit circle with weights `2π/n`.
//
// # Safety
// `out` must be valid for writes.
enum RankinStatus rankin_family_circle(size_t n, struct RankinFamily **out);

// `n` Fibonacci-lattice points on the unit sphere with weights `4π/n`.
//
// # Safety
// `out` must be valid for writes.
enum RankinStatus rankin_family_sphere(size_t n, struct RankinFamily **out);

// # Safety
// `fam` must be null or a handle from this library that is not used afterwards.
void rankin_family_free(struct RankinFamily *fam);

// # Safety
// `fam` must be a live handle and `len`, `dim` valid for writes.
enum RankinStatus rankin_family_shape(const struct RankinFamily *fam, size_t *len, size_t *dim);

// Copies the row-major vectors into `out`, which must hold exactly `len * dim` doubles.
//
// # Safety
// `fam` must be a live handle and `out` must point to `out_len` writable doubles.
enum RankinStatus rankin_family_vectors(const struct RankinFamily *fam,
                                        double *out,
                                        size_t out_len);

// Largest inner product over distinct atoms, with its witness pair.
//
// # Safety
// `fam` must be a live handle and `out` valid for writes.
enum RankinStatus rankin_family_coherence(const struct RankinFamily *fam,
                                          struct RankinPairValue *out);

// Smallest squared distance over distinct atoms, with its witness pair.
//
// # Safety
// `fam` must be a live handle and `out` valid for writes.
enum RankinStatus rankin_family_min_distance_sq(const struct RankinFamily *fam,
                                                struct RankinPairValue *out);

// Checks the family against the bound of its space. A violated bound is
// reported through `satisfied`, not the status.
//
// # Safety
// `fam` must be a live handle and `out` valid for writes.
enum RankinStatus rankin_check(const struct RankinFamily *fam,
                               double tolerance,
                               struct RankinCheck *out);

// Splits `‖Σ w_i τ_i‖²` into its diagonal and off-diagonal parts.
//
// # Safety
// `fam` must be a live handle and `out` valid for writes.
enum RankinStatus rankin_decomposition(const struct RankinFamily *fam,
                                       struct RankinDecomposition *out);

// Serializes the family as a JSON document. Free the result with `rankin_string_free`.
//
// # Safety
// `fam` must be a live handle and `out` valid for writes.
enum RankinStatus rankin_family_to_json(const struct RankinFamily *fam, char **out);

// Parses a family document and applies `mode` to its vectors.
//
// # Safety
// `text` must be a NUL-terminated string and `out` valid for writes.
enum RankinStatus rankin_family_from_json(const char *text,
                                          enum RankinNormalization mode,
                                          struct RankinFamily **out);

// # Safety
// `s` must be null or a string returned by this library that is not used afterwards.
void rankin_string_free(char *s);

// # Safety
// `out` must be valid for writes.
enum RankinStatus rankin_optimizer_default_config(struct RankinOptimizerConfig *out);

// Searches for a family in dimension `dim` of minimal coherence over `space`.
// `config` may be null for the defaults. `out_family` may be null when only
// the summary is wanted.
//
// # Safety
// `space` must be a live handle, `config` null or readable, `out_family`
// null or valid for writes, and `out` valid for writes.
enum RankinStatus rankin_minimize_coherence(const struct RankinSpace *space,
                                            size_t dim,
                                            const struct RankinOptimizerConfig *config,
                                            struct RankinFamily **out_family,
                                            struct RankinOptimizeSummary *out);

// Writes the norming functional of `v` in `ℓp` to `out` (both of length
// `dim`). Pass `INFINITY` for `p = ∞`.
//
// # Safety
// `v` must point to `dim` readable doubles and `out` to `dim` writable ones.
enum RankinStatus rankin_duality_functional(const double *v, size_t dim, double p, double *out);

// Checks the functional bound for vectors and functionals given as
// `len(space) * dim` row-major blocks. When a precondition fails the status
// is `PRECONDITION_FAILED` and `rankin_last_error` lists the failures.
//
// # Safety
// `space` must be a live handle, `vectors` and `functionals` must each point
// to `len(space) * dim` readable doubles, and `out` must be valid for writes.
enum RankinStatus rankin_functional_check(const struct RankinSpace *space,
                                          size_t dim,
                                          double p,
                                          const double *vectors,
                                          const double *functionals,
                                          struct RankinFunctionalCheck *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKIN_H */
