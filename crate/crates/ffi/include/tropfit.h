/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef TROPFIT_H
#define TROPFIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which polynomial of a fitted model to address.
 */
typedef enum TfPart {
  TF_PART_NUMERATOR = 0,
  TF_PART_DENOMINATOR = 1,
} TfPart;

typedef enum TfSemifield {
  TF_SEMIFIELD_MAX_PLUS = 0,
  TF_SEMIFIELD_MAX_TIMES = 1,
} TfSemifield;

typedef enum TfStatus {
  TF_STATUS_OK = 0,
  TF_STATUS_NULL_POINTER = 1,
  TF_STATUS_INVALID_ARGUMENT = 2,
  TF_STATUS_DIMENSION_MISMATCH = 3,
  TF_STATUS_NON_REGULAR_INPUT = 4,
  TF_STATUS_MALFORMED = 5,
  TF_STATUS_SOLVER_FAILURE = 6,
  TF_STATUS_PANIC = 7,
} TfStatus;

/**
 * Opaque fitted (or loaded) model.
 */
typedef struct TfFit TfFit;

/**
 * Opaque sample set.
 */
typedef struct TfSamples TfSamples;

/**
 * Random search settings; `n_terms_denominator == 0` searches polynomials
 * and `threads == 0` uses every available processor.
 */
typedef struct TfSearchConfig {
  size_t n_terms_numerator;
  size_t n_terms_denominator;
  int64_t degree_min;
  int64_t degree_max;
  size_t n_samples;
  uint64_t seed;
  size_t max_iter;
  size_t threads;
} TfSearchConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tf_version(void);

/**
 * Message for the last failed call on this thread; empty if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *tf_last_error_message(void);

/**
 * Creates a sample set from conventional reals. In max-plus `-INFINITY`
 * encodes the semifield zero, in max-times `0.0` does.
 *
 * # Safety
 * `xs` and `ys` must each point to `len` doubles; `out` must be writable.
 */
enum TfStatus tf_samples_new(enum TfSemifield sf,
                             const double *xs,
                             const double *ys,
                             size_t len,
                             struct TfSamples **out);

/**
 * # Safety
 * `samples` must be null or a handle from [`tf_samples_new`] not yet freed.
 */
void tf_samples_free(struct TfSamples *samples);

/**
 * Fits a polynomial with exponents `deg_num[i] / deg_den[i]`; pass a null
 * `deg_den` for integer exponents.
 *
 * # Safety
 * `samples` must be a live handle; `deg_num` (and `deg_den` unless null)
 * must hold `n` values; `out` must be writable.
 */
enum TfStatus tf_fit_polynomial(const struct TfSamples *samples,
                                const int64_t *deg_num,
                                const int64_t *deg_den,
                                size_t n,
                                struct TfFit **out);

/**
 * Fits a rational function `P/Q` by the alternating two-sided iteration.
 *
 * # Safety
 * As [`tf_fit_polynomial`], for both exponent lists.
 */
enum TfStatus tf_fit_rational(const struct TfSamples *samples,
                              const int64_t *p_num,
                              const int64_t *p_den,
                              size_t n,
                              const int64_t *q_num,
                              const int64_t *q_den,
                              size_t l,
                              size_t max_iter,
                              struct TfFit **out);

/**
 * Random search over integer degree classes; the result does not depend on
 * the thread count.
 *
 * # Safety
 * `samples` and `config` must be valid; `out` must be writable.
 */
enum TfStatus tf_random_search(const struct TfSamples *samples,
                               const struct TfSearchConfig *config,
                               struct TfFit **out);

/**
 * Loads a model document (the JSON written by `tropfit fit`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TfStatus tf_fit_from_json(const char *json, struct TfFit **out);

/**
 * Serializes a fit as a model document. Free the result with
 * [`tf_string_free`]; null on failure.
 *
 * # Safety
 * `fit` must be a live handle.
 */
char *tf_fit_to_json(const struct TfFit *fit);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void tf_string_free(char *s);

/**
 * # Safety
 * `fit` must be null or a live handle.
 */
void tf_fit_free(struct TfFit *fit);

/**
 * Squared error `Δ*` as a conventional real; NaN for a null handle.
 *
 * # Safety
 * `fit` must be null or a live handle.
 */
double tf_fit_delta_star(const struct TfFit *fit);

/**
 * Error `√Δ*` as a conventional real; NaN for a null handle.
 *
 * # Safety
 * `fit` must be null or a live handle.
 */
double tf_fit_error(const struct TfFit *fit);

/**
 * # Safety
 * `fit` must be null or a live handle.
 */
size_t tf_fit_iterations(const struct TfFit *fit);

/**
 * # Safety
 * `fit` must be null or a live handle.
 */
bool tf_fit_is_rational(const struct TfFit *fit);

/**
 * Number of terms of the requested part; 0 when absent.
 *
 * # Safety
 * `fit` must be null or a live handle.
 */
size_t tf_fit_num_terms(const struct TfFit *fit, enum TfPart part);

/**
 * Copies the coefficients of one part into `out` (capacity `cap`), in the
 * order of increasing exponent.
 *
 * # Safety
 * `fit` must be a live handle and `out` must have room for `cap` doubles.
 */
enum TfStatus tf_fit_coefficients(const struct TfFit *fit,
                                  enum TfPart part,
                                  double *out,
                                  size_t cap);

/**
 * Evaluates the model at a conventional real `x`.
 *
 * # Safety
 * `fit` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_fit_eval(const struct TfFit *fit, double x, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TROPFIT_H */
