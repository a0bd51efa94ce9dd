#ifndef FFGS_H
#define FFGS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FfgsStatus {
  FFGS_STATUS_OK = 0,
  /**
   * A precondition or validation check failed.
   */
  FFGS_STATUS_INVALID = 1,
  /**
   * A saturation guard tripped.
   */
  FFGS_STATUS_NON_TERMINATING = 2,
  /**
   * Malformed JSON, bad rational, wrong document kind or invalid UTF-8.
   */
  FFGS_STATUS_PARSE = 3,
  FFGS_STATUS_NULL_POINTER = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  FFGS_STATUS_PANIC = 5,
} FfgsStatus;

typedef struct FfgsGenericMorphism FfgsGenericMorphism;

typedef struct FfgsHopf FfgsHopf;

typedef struct FfgsMorphism FfgsMorphism;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *ffgs_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ffgs_string_free(char *s);

/**
 * A built-in Hopf algebra such as `mu4` or `constant-z2` over `Z_(p)`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` writable.
 */
enum FfgsStatus ffgs_hopf_fixture(uint64_t p, const char *name, struct FfgsHopf **out);

/**
 * Parses a `hopf` document and checks the Hopf axioms.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum FfgsStatus ffgs_hopf_from_json(const char *json, struct FfgsHopf **out);

/**
 * # Safety
 * `h` must be a live handle and `out` writable; free the result with
 * `ffgs_string_free`.
 */
enum FfgsStatus ffgs_hopf_to_json(const struct FfgsHopf *h, char **out);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum FfgsStatus ffgs_hopf_rank(const struct FfgsHopf *h, size_t *out);

/**
 * Writes whether every Hopf axiom holds.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum FfgsStatus ffgs_hopf_check_axioms(const struct FfgsHopf *h, bool *out);

/**
 * The Cartier dual.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum FfgsStatus ffgs_hopf_dualize(const struct FfgsHopf *h, struct FfgsHopf **out);

/**
 * Compares canonical forms; fails with `Invalid` when no canonical form is
 * available (neither the object nor its dual has a split generic fibre).
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum FfgsStatus ffgs_hopf_isomorphic(const struct FfgsHopf *a, const struct FfgsHopf *b, bool *out);

/**
 * # Safety
 * `h` must be null or a live handle; it is invalid afterwards.
 */
void ffgs_hopf_free(struct FfgsHopf *h);

/**
 * Parses a `morphism` document and checks that it is a Hopf morphism over `R`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum FfgsStatus ffgs_morphism_from_json(const char *json, struct FfgsMorphism **out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable; free the result with
 * `ffgs_string_free`.
 */
enum FfgsStatus ffgs_morphism_to_json(const struct FfgsMorphism *m, char **out);

/**
 * # Safety
 * `m` must be null or a live handle; it is invalid afterwards.
 */
void ffgs_morphism_free(struct FfgsMorphism *m);

/**
 * Parses a `generic_morphism` document and checks it over `K`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum FfgsStatus ffgs_generic_morphism_from_json(const char *json, struct FfgsGenericMorphism **out);

/**
 * # Safety
 * `m` must be null or a live handle; it is invalid afterwards.
 */
void ffgs_generic_morphism_free(struct FfgsGenericMorphism *m);

/**
 * Pushout of `m: M → U` (a model map) and `n: N → U` on coordinate rings.
 * Writes `P` and the legs `alpha: P → M`, `beta: P → N`.
 *
 * # Safety
 * `m`, `n` must be live handles and the outputs writable.
 */
enum FfgsStatus ffgs_group_pushout(const struct FfgsMorphism *m,
                                   const struct FfgsMorphism *n,
                                   size_t max_iterations,
                                   struct FfgsHopf **out_p,
                                   struct FfgsMorphism **out_alpha,
                                   struct FfgsMorphism **out_beta);

/**
 * Lower bound of `M` and `N` over `psi: N ⊗ K → M ⊗ K`.
 *
 * # Safety
 * `m`, `n`, `psi` must be live handles and the outputs writable.
 */
enum FfgsStatus ffgs_lower_bound(const struct FfgsHopf *m,
                                 const struct FfgsHopf *n,
                                 const struct FfgsGenericMorphism *psi,
                                 size_t max_iterations,
                                 struct FfgsHopf **out_p,
                                 struct FfgsMorphism **out_alpha,
                                 struct FfgsMorphism **out_beta);

/**
 * Cokernel of the group map whose coordinate-ring map is `f: G → H`.
 * Writes `C` and the projection, a map from the algebra of `C` to that of `G`.
 *
 * # Safety
 * `f` must be a live handle and the outputs writable.
 */
enum FfgsStatus ffgs_cokernel(const struct FfgsMorphism *f,
                              struct FfgsHopf **out_c,
                              struct FfgsMorphism **out_proj);

/**
 * `G/H` for a closed immersion given as `incl: G → H` on coordinate rings.
 *
 * # Safety
 * `g`, `h`, `incl` must be live handles and the outputs writable.
 */
enum FfgsStatus ffgs_quotient(const struct FfgsHopf *g,
                              const struct FfgsHopf *h,
                              const struct FfgsMorphism *incl,
                              struct FfgsHopf **out_q,
                              struct FfgsMorphism **out_proj);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FFGS_H */
