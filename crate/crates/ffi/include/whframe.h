#ifndef WHFRAME_H
#define WHFRAME_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WhStatus {
  WH_STATUS_OK = 0,
  WH_STATUS_NULL_POINTER = 1,
  WH_STATUS_INVALID_LATTICE = 2,
  WH_STATUS_LENGTH_MISMATCH = 3,
  WH_STATUS_INVALID_ARGUMENT = 4,
  WH_STATUS_NOT_A_FRAME = 5,
  WH_STATUS_NOT_TIGHT = 6,
  WH_STATUS_NOT_CRITICAL = 7,
  WH_STATUS_DENSITY_TOO_HIGH = 8,
  WH_STATUS_PANIC = 9,
} WhStatus;

/**
 * Opaque handle to the affine space of dual windows of one frame.
 */
typedef struct WhDualSpace WhDualSpace;

/**
 * Opaque lattice handle.
 */
typedef struct WhLattice WhLattice;

/**
 * Tightness classification of one window.
 */
typedef struct WhTightness {
  double lower;
  double upper;
  bool is_frame;
  bool normalized_tight;
  bool onb;
  bool riesz_basis;
  bool conditions_agree;
  /**
   * Residuals of the correlation, adjoint, orthogonal-system and fixed-point conditions.
   */
  double residuals[4];
} WhTightness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (nul-terminated,
 * truncated to `cap`). Returns the full message length without the nul, or
 * 0 when the last call succeeded.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t wh_last_error(char *buf, size_t cap);

/**
 * # Safety
 * `out` must be a valid pointer; the handle is released with [`wh_lattice_free`].
 */
enum WhStatus wh_lattice_new(size_t len, size_t a, size_t b, struct WhLattice **out);

/**
 * # Safety
 * `lat` must come from [`wh_lattice_new`] and not be used afterwards.
 */
void wh_lattice_free(struct WhLattice *lat);

/**
 * # Safety
 * `g` holds `2 * len` doubles; `out` is writable.
 */
enum WhStatus wh_classify(const struct WhLattice *lat,
                          const double *g,
                          size_t len,
                          double tol,
                          struct WhTightness *out);

/**
 * # Safety
 * `g` holds `2 * len` doubles; `lower` and `upper` are writable.
 */
enum WhStatus wh_frame_bounds(const struct WhLattice *lat,
                              const double *g,
                              size_t len,
                              double *lower,
                              double *upper);

/**
 * # Safety
 * `g` and `out` each hold `2 * len` doubles.
 */
enum WhStatus wh_canonical_dual(const struct WhLattice *lat,
                                const double *g,
                                size_t len,
                                double *out);

/**
 * # Safety
 * `g` and `out` each hold `2 * len` doubles.
 */
enum WhStatus wh_tighten(const struct WhLattice *lat, const double *g, size_t len, double *out);

/**
 * # Safety
 * `g` and `h` each hold `2 * len` doubles; `residual` is writable.
 */
enum WhStatus wh_wexler_raz_residual(const struct WhLattice *lat,
                                     const double *g,
                                     const double *h,
                                     size_t len,
                                     double *residual);

/**
 * Builds a normalized tight window from an `a x b` row-major phase array
 * (`count = a * b` cycles in `[0, 1)`) on a critical lattice.
 *
 * # Safety
 * `phases` holds `count` doubles; `out` holds `2 * L` doubles.
 */
enum WhStatus wh_tight_generator_from_phases(const struct WhLattice *lat,
                                             const double *phases,
                                             size_t count,
                                             double *out);

/**
 * # Safety
 * `g` holds `2 * len` doubles; the handle is released with [`wh_dual_space_free`].
 */
enum WhStatus wh_dual_space_new(const struct WhLattice *lat,
                                const double *g,
                                size_t len,
                                struct WhDualSpace **out);

/**
 * Number of free complex coefficients; 0 for a null handle.
 *
 * # Safety
 * `space` is null or came from [`wh_dual_space_new`].
 */
size_t wh_dual_space_dimension(const struct WhDualSpace *space);

/**
 * Dual window with the given interleaved coefficients (`count` complex values).
 *
 * # Safety
 * `coeffs` holds `2 * count` doubles (may be null when `count` is 0); `out` holds `2 * L` doubles.
 */
enum WhStatus wh_dual_space_make_dual(const struct WhDualSpace *space,
                                      const double *coeffs,
                                      size_t count,
                                      double *out);

/**
 * # Safety
 * `space` must come from [`wh_dual_space_new`] and not be used afterwards.
 */
void wh_dual_space_free(struct WhDualSpace *space);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WHFRAME_H */
