#ifndef FGCALC_H
#define FGCALC_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a fallible call. Values 1 to 5 agree with the CLI exit codes.
typedef enum FgcStatus {
  FGC_STATUS_OK = 0,
  FGC_STATUS_CANCELLED = 1,
  FGC_STATUS_PARSE = 2,
  FGC_STATUS_PRECONDITION = 3,
  FGC_STATUS_VERIFICATION = 4,
  FGC_STATUS_UNSUPPORTED_RING = 5,
  // Null pointer or text that is not UTF-8.
  FGC_STATUS_INVALID_INPUT = 6,
  // A panic was caught at the boundary.
  FGC_STATUS_INTERNAL = 7,
} FgcStatus;

typedef struct FgcCancel FgcCancel;

typedef struct FgcFgl FgcFgl;

typedef struct FgcHopf FgcHopf;

typedef struct FgcLaurent FgcLaurent;

typedef struct FgcRing FgcRing;

typedef struct FgcSeries FgcSeries;

typedef struct FgcHeight {
  // False when `[p](x)` vanishes to the truncation order.
  bool finite;
  // The height when finite, otherwise the truncation order.
  uint32_t height;
  // Whether the coefficient of `x^(p^height)` is a unit.
  bool unit;
} FgcHeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null if the last call
// succeeded.
char *fgc_last_error_message(void);

// Stable identifier of the last error on this thread, such as `"not_a_unit"`.
char *fgc_last_error_code(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void fgc_string_free(char *s);

// Parses a ring such as `"Z/4"` or `"Z[e;e^2,a:-1]"`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum FgcStatus fgc_ring_parse(const char *text, struct FgcRing **out);

// # Safety
// `ring` must be null or a live ring handle.
char *fgc_ring_to_string(const struct FgcRing *ring);

// # Safety
// `ring` must be null or a ring handle not yet freed.
void fgc_ring_free(struct FgcRing *ring);

// Parses a series in the comma-separated variables `vars` (`"x"` if null),
// truncated below total degree `order`.
//
// # Safety
// `ring` must be live; `text` and `vars` NUL-terminated (`vars` may be null).
enum FgcStatus fgc_series_parse(const struct FgcRing *ring,
                                const char *text,
                                const char *vars,
                                uint32_t order,
                                struct FgcSeries **out);

// # Safety
// `a`, `b` must be live series handles; `out` writable.
enum FgcStatus fgc_series_add(const struct FgcSeries *a,
                              const struct FgcSeries *b,
                              struct FgcSeries **out);

// # Safety
// `a`, `b` must be live series handles; `out` writable.
enum FgcStatus fgc_series_mul(const struct FgcSeries *a,
                              const struct FgcSeries *b,
                              struct FgcSeries **out);

// Substitutes `inners[i]` for the i-th variable of `outer`.
//
// # Safety
// `outer` and the `count` entries of `inners` must be live series handles.
enum FgcStatus fgc_series_compose(const struct FgcSeries *outer,
                                  const struct FgcSeries *const *inners,
                                  uintptr_t count,
                                  struct FgcSeries **out);

// Multiplicative inverse; the constant term must be a unit.
//
// # Safety
// `s` must be a live series handle; `out` writable.
enum FgcStatus fgc_series_invert(const struct FgcSeries *s, struct FgcSeries **out);

// Compositional inverse of a univariate coordinate.
//
// # Safety
// `s` must be a live series handle; `out` writable.
enum FgcStatus fgc_series_revert(const struct FgcSeries *s, struct FgcSeries **out);

// Coefficient at the exponent vector `exps` (one entry per variable),
// printed as a ring element.
//
// # Safety
// `s` must be live; `exps` must point to `count` values; `out` writable.
enum FgcStatus fgc_series_coeff(const struct FgcSeries *s,
                                const uint32_t *exps,
                                uintptr_t count,
                                char **out);

// # Safety
// `s` must be null or a live series handle.
char *fgc_series_to_string(const struct FgcSeries *s);

// # Safety
// `s` must be null or a series handle not yet freed.
void fgc_series_free(struct FgcSeries *s);

// Weierstrass degree of a univariate series.
//
// # Safety
// `g` must be a live series handle; `out` writable.
enum FgcStatus fgc_weierstrass_degree(const struct FgcSeries *g, uint32_t *out);

// Splits `g = h * u` with `h` a Weierstrass polynomial and `u` a unit.
// `h` is returned as a series of the same order.
//
// # Safety
// `g` must be a live series handle; `out_h` and `out_u` writable.
enum FgcStatus fgc_weierstrass_factor(const struct FgcSeries *g,
                                      struct FgcSeries **out_h,
                                      struct FgcSeries **out_u);

// Parses a Laurent series in `var` (`"x"` if null) known below `order`.
//
// # Safety
// `ring` must be live; `text` and `var` NUL-terminated (`var` may be null).
enum FgcStatus fgc_laurent_parse(const struct FgcRing *ring,
                                 const char *text,
                                 const char *var,
                                 int64_t order,
                                 struct FgcLaurent **out);

// Coefficient of `x^-1`, printed.
//
// # Safety
// `f` must be null or a live Laurent handle.
char *fgc_laurent_residue(const struct FgcLaurent *f);

// # Safety
// `f` must be null or a live Laurent handle.
char *fgc_laurent_to_string(const struct FgcLaurent *f);

// # Safety
// `f` must be null or a Laurent handle not yet freed.
void fgc_laurent_free(struct FgcLaurent *f);

// Parses `F(x, y)` and checks the axioms below `order`.
//
// # Safety
// `ring` must be live; `text` NUL-terminated; `out` writable.
enum FgcStatus fgc_fgl_parse(const struct FgcRing *ring,
                             const char *text,
                             uint32_t order,
                             struct FgcFgl **out);

// # Safety
// `ring` must be live; `out` writable.
enum FgcStatus fgc_fgl_additive(const struct FgcRing *ring, uint32_t order, struct FgcFgl **out);

// # Safety
// `ring` must be live; `out` writable.
enum FgcStatus fgc_fgl_multiplicative(const struct FgcRing *ring,
                                      uint32_t order,
                                      struct FgcFgl **out);

// The universal law below `order` over its coefficient ring, which
// [`fgc_fgl_ring`] returns. `cancel` may be null.
//
// # Safety
// `cancel` must be null or live; `out` writable.
enum FgcStatus fgc_fgl_universal(uint32_t order,
                                 const struct FgcCancel *cancel,
                                 struct FgcFgl **out);

// A new handle to the coefficient ring of `fgl`.
//
// # Safety
// `fgl` must be null or live.
struct FgcRing *fgc_fgl_ring(const struct FgcFgl *fgl);

// The `[n]`-series. `cancel` may be null.
//
// # Safety
// `fgl` must be live; `cancel` null or live; `out` writable.
enum FgcStatus fgc_fgl_n_series(const struct FgcFgl *fgl,
                                int64_t n,
                                const struct FgcCancel *cancel,
                                struct FgcSeries **out);

// Logarithm over a Q-algebra.
//
// # Safety
// `fgl` must be live; `out` writable.
enum FgcStatus fgc_fgl_log(const struct FgcFgl *fgl, struct FgcSeries **out);

// Height at the prime `p`; the ring must have characteristic `p`.
//
// # Safety
// `fgl` must be live; `out` writable.
enum FgcStatus fgc_fgl_height(const struct FgcFgl *fgl, uint64_t p, struct FgcHeight *out);

// # Safety
// `fgl` must be null or live.
char *fgc_fgl_to_string(const struct FgcFgl *fgl);

// # Safety
// `fgl` must be null or a handle not yet freed.
void fgc_fgl_free(struct FgcFgl *fgl);

// Reads the JSON structure-constant format.
//
// # Safety
// `json` must be NUL-terminated; `out` writable.
enum FgcStatus fgc_hopf_from_json(const char *json, struct FgcHopf **out);

// A bundled example such as `"group:3"` or `"divided-power:2"`.
//
// # Safety
// `name` must be NUL-terminated; `out` writable.
enum FgcStatus fgc_hopf_example(const char *name, struct FgcHopf **out);

// Number of failed axiom instances; zero means the algebra is valid.
//
// # Safety
// `h` must be live; `violations` writable.
enum FgcStatus fgc_hopf_check(const struct FgcHopf *h, uintptr_t *violations);

// A copy of `h` with its antipode computed and verified.
//
// # Safety
// `h` must be live; `out` writable.
enum FgcStatus fgc_hopf_with_antipode(const struct FgcHopf *h, struct FgcHopf **out);

// # Safety
// `h` must be live; `out` writable.
enum FgcStatus fgc_hopf_dual(const struct FgcHopf *h, struct FgcHopf **out);

// # Safety
// `h` must be null or live.
uintptr_t fgc_hopf_rank(const struct FgcHopf *h);

// # Safety
// `h` must be null or live.
char *fgc_hopf_to_json(const struct FgcHopf *h);

// # Safety
// `h` must be null or a handle not yet freed.
void fgc_hopf_free(struct FgcHopf *h);

// A token that may be triggered from any thread while a computation that
// received it is running.
struct FgcCancel *fgc_cancel_new(void);

// # Safety
// `c` must be null or live.
void fgc_cancel_trigger(const struct FgcCancel *c);

// # Safety
// `c` must be null or a token not yet freed and no longer in use.
void fgc_cancel_free(struct FgcCancel *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FGCALC_H */
