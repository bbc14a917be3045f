#ifndef POPSWITCH_H
#define POPSWITCH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_UTF8 = 2,
  PS_STATUS_DOMAIN = 3,
  PS_STATUS_PARSE = 4,
  PS_STATUS_ARITY = 5,
  PS_STATUS_NOT_FOUND = 6,
  PS_STATUS_INTERNAL = 7,
  PS_STATUS_PANIC = 8,
} PsStatus;

/**
 * Opaque Temperley-Lieb element.
 */
typedef struct PsElement PsElement;

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call on the same thread.
 */
const char *ps_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ps_string_free(char *s);

/**
 * `[n]` in canonical text form.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PsStatus ps_quantum_int(uint32_t n, char **out);

/**
 * The quantum binomial `[n choose k]` in canonical text form.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PsStatus ps_quantum_binom(int64_t n, int64_t k, char **out);

/**
 * The Jones-Wenzl idempotent on `n` strands.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PsStatus ps_jones_wenzl(size_t n, struct PsElement **out);

/**
 * A single diagram such as `TL(2,2){(b0,b1),(t0,t1)}`, coefficient 1.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum PsStatus ps_element_from_diagram(const char *text, struct PsElement **out);

/**
 * `upper ∘ lower`.
 *
 * # Safety
 * Both elements must be live handles; `out` must be valid for writes.
 */
enum PsStatus ps_element_compose(const struct PsElement *upper,
                                 const struct PsElement *lower,
                                 struct PsElement **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be valid for writes.
 */
enum PsStatus ps_element_to_string(const struct PsElement *e, char **out);

/**
 * Closure (Markov trace) of an endomorphism.
 *
 * # Safety
 * `e` must be a live handle; `out` must be valid for writes.
 */
enum PsStatus ps_element_closure(const struct PsElement *e, char **out);

/**
 * Sets `*passed` to whether `e` is a Jones-Wenzl idempotent.
 *
 * # Safety
 * `e` must be a live handle; `passed` must be valid for writes.
 */
enum PsStatus ps_element_check_jw(const struct PsElement *e, bool *passed);

/**
 * # Safety
 * `e` must be null or a handle from this library, not yet freed.
 */
void ps_element_free(struct PsElement *e);

/**
 * Text report of the verified decomposition of `p_n`, `1 <= n <= 4`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PsStatus ps_decompose(size_t n, bool mirrored, char **out);

#endif  /* POPSWITCH_H */
