#ifndef STANCU_FFI_H
#define STANCU_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StancuStatus {
  STANCU_STATUS_OK = 0,
  STANCU_STATUS_NULL_POINTER = 1,
  STANCU_STATUS_DOMAIN = 2,
  STANCU_STATUS_INVALID_ARGUMENT = 3,
  STANCU_STATUS_BUFFER_TOO_SMALL = 4,
  STANCU_STATUS_UNBOUNDED = 5,
  STANCU_STATUS_INVALID_UTF8 = 6,
  STANCU_STATUS_PANIC = 7,
} StancuStatus;

// Opaque function handle.
typedef struct StancuFunction StancuFunction;

// Grid and constant settings for the bound computations.
typedef struct StancuBoundConfig {
  double c1;
  uintptr_t mod_grid_size;
  uintptr_t sup_grid_size;
} StancuBoundConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *stancu_status_message(enum StancuStatus status);

// Bytes needed (including the terminating NUL) for the last error message
// of this thread; 0 when there is none.
uintptr_t stancu_last_error_length(void);

// Copies the last error message of this thread into `buf`.
//
// # Safety
// `buf` must point to `len` writable bytes.
enum StancuStatus stancu_last_error_message(char *buf, uintptr_t len);

// Default `c1`, modulus grid and sup grid.
struct StancuBoundConfig stancu_bound_config_default(void);

// Creates a handle for a builtin function: `e0`, `e1`, `e2`, `sin15`, `abshalf`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum StancuStatus stancu_function_builtin(const char *name, struct StancuFunction **out);

// Creates a piecewise-linear function through `(xs[i], ys[i])`; `xs` must
// increase strictly from 0 to 1.
//
// # Safety
// `xs` and `ys` must each point to `len` readable doubles; `out` must be writable.
enum StancuStatus stancu_function_tabulated(const double *xs,
                                            const double *ys,
                                            uintptr_t len,
                                            struct StancuFunction **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `f` must come from a `stancu_function_*` constructor and not be freed twice.
void stancu_function_free(struct StancuFunction *f);

// # Safety
// `f` must be a live handle; `out` must be writable.
enum StancuStatus stancu_function_eval(const struct StancuFunction *f, double x, double *out);

// Writes `b_{n,0}(x) … b_{n,n}(x)` into `out` (capacity `len ≥ n+1`).
//
// # Safety
// `out` must point to `len` writable doubles.
enum StancuStatus stancu_basis_row(uint32_t n, double x, double *out, uintptr_t len);

// `B_n^{α,β}(f; x)`.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum StancuStatus stancu_apply_operator(const struct StancuFunction *f,
                                        uint32_t n,
                                        double alpha,
                                        double beta,
                                        double x,
                                        double *out);

// Operator values on the uniform grid of `grid_size` points.
//
// # Safety
// `f` must be a live handle; `out` must point to `len` writable doubles.
enum StancuStatus stancu_apply_operator_curve(const struct StancuFunction *f,
                                              uint32_t n,
                                              double alpha,
                                              double beta,
                                              uintptr_t grid_size,
                                              double *out,
                                              uintptr_t len);

// Closed-form image of `t^i`, `i ∈ {0, 1, 2}`.
//
// # Safety
// `out` must be writable.
enum StancuStatus stancu_moment(uint8_t i,
                                uint32_t n,
                                double alpha,
                                double beta,
                                double x,
                                double *out);

// Writes the `n+1` nodes `(k+α)/(n+β)`.
//
// # Safety
// `out` must point to `len` writable doubles.
enum StancuStatus stancu_nodes(uint32_t n, double alpha, double beta, double *out, uintptr_t len);

// # Safety
// `out` must be writable.
enum StancuStatus stancu_node_gap(uint32_t k, uint32_t n, double alpha, double beta, double *out);

// Node-gap bound along the strictly increasing `degrees`.
//
// # Safety
// `degrees` must point to `len` readable values; `holds` must be writable.
enum StancuStatus stancu_check_theorem1(double alpha,
                                        double beta,
                                        const uint32_t *degrees,
                                        uintptr_t len,
                                        bool *holds);

// Clustering around `α/β` (`β > 0`).
//
// # Safety
// `holds` must be writable.
enum StancuStatus stancu_check_theorem2(uint32_t n, double alpha, double beta, bool *holds);

// Nested clustering of `(α1, β1)` and `(α2, β2)` with equal ratio.
//
// # Safety
// `holds` must be writable.
enum StancuStatus stancu_check_theorem3(uint32_t n,
                                        double alpha1,
                                        double beta1,
                                        double alpha2,
                                        double beta2,
                                        bool *holds);

// `ω(f; δ)`. A null `cfg` selects the defaults.
//
// # Safety
// `f` must be a live handle; `cfg` null or readable; `out` writable.
enum StancuStatus stancu_modulus_of_continuity(const struct StancuFunction *f,
                                               double delta,
                                               const struct StancuBoundConfig *cfg,
                                               double *out);

// Grid maximum of `|B_n^{α,β} f − f|`.
//
// # Safety
// `f` must be a live handle; `cfg` null or readable; `out` writable.
enum StancuStatus stancu_sup_error(const struct StancuFunction *f,
                                   uint32_t n,
                                   double alpha,
                                   double beta,
                                   const struct StancuBoundConfig *cfg,
                                   double *out);

// Grid maximum of `|B_n^{α,β} f − B_n f|`.
//
// # Safety
// `f` must be a live handle; `cfg` null or readable; `out` writable.
enum StancuStatus stancu_operator_distance(const struct StancuFunction *f,
                                           uint32_t n,
                                           double alpha,
                                           double beta,
                                           const struct StancuBoundConfig *cfg,
                                           double *out);

// `ω(f; (α+β)/(n+β)) + c1 · ω(f; n^{-1/2})`.
//
// # Safety
// `f` must be a live handle; `cfg` null or readable; `out` writable.
enum StancuStatus stancu_corollary2_bound(const struct StancuFunction *f,
                                          uint32_t n,
                                          double alpha,
                                          double beta,
                                          const struct StancuBoundConfig *cfg,
                                          double *out);

// Ratio of the two-term bound to `ω(f; n^{-1/2})`; `UNBOUNDED` when the
// denominator vanishes under a non-zero bound.
//
// # Safety
// `f` must be a live handle; `cfg` null or readable; `out` writable.
enum StancuStatus stancu_derive_c(const struct StancuFunction *f,
                                  uint32_t n,
                                  double alpha,
                                  double beta,
                                  const struct StancuBoundConfig *cfg,
                                  double *out);

// For each scale `s_j`, writes `|B_n^{s_j α, s_j β}(f; m) − f(m)|` to
// `d_at_m[j]` and its grid supremum over `x` to `d_sup[j]` (`m = α/β`).
// Either output may be null.
//
// # Safety
// `f` must be a live handle; `scales` must hold `len` doubles; non-null
// outputs must hold `len` doubles; `cfg` null or readable.
enum StancuStatus stancu_theorem4_experiment(const struct StancuFunction *f,
                                             uint32_t n,
                                             double alpha,
                                             double beta,
                                             const double *scales,
                                             uintptr_t len,
                                             const struct StancuBoundConfig *cfg,
                                             double *d_at_m,
                                             double *d_sup);

// Evaluates `B_n^{α,β}(f; ·)` at `len` points, sampling `f` once.
//
// # Safety
// `f` must be a live handle; `xs` and `out` must each hold `len` doubles.
enum StancuStatus stancu_apply_operator_many(const struct StancuFunction *f,
                                             uint32_t n,
                                             double alpha,
                                             double beta,
                                             const double *xs,
                                             double *out,
                                             uintptr_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STANCU_FFI_H */
