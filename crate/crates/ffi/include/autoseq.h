#ifndef AUTOSEQ_H
#define AUTOSEQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AutoseqStatus {
  AUTOSEQ_STATUS_OK = 0,
  AUTOSEQ_STATUS_NULL_POINTER = 1,
  AUTOSEQ_STATUS_INVALID_UTF8 = 2,
  AUTOSEQ_STATUS_INVALID_INPUT = 3,
  AUTOSEQ_STATUS_HYPOTHESIS = 4,
  AUTOSEQ_STATUS_CAP_EXCEEDED = 5,
  AUTOSEQ_STATUS_NOT_FOUND = 6,
  AUTOSEQ_STATUS_PANIC = 7,
} AutoseqStatus;

/**
 * Opaque automaton handle.
 */
typedef struct AutoseqAutomaton AutoseqAutomaton;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *autoseq_last_error(void);

/**
 * Parse an automaton from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AutoseqStatus autoseq_automaton_from_json(const char *json, struct AutoseqAutomaton **out);

/**
 * Load one of the bundled automata by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AutoseqStatus autoseq_automaton_bundled(const char *name, struct AutoseqAutomaton **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and must not be used afterwards.
 */
void autoseq_automaton_free(struct AutoseqAutomaton *h);

/**
 * Output label of the `n`-th term, as a new string.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum AutoseqStatus autoseq_term(const struct AutoseqAutomaton *h, uint64_t n, char **out);

/**
 * State reached on the base-k digits of `n`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum AutoseqStatus autoseq_state_at(const struct AutoseqAutomaton *h, uint64_t n, size_t *out);

/**
 * Group structure report of a strongly connected automaton, as JSON.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum AutoseqStatus autoseq_structure_json(const struct AutoseqAutomaton *h, char **out);

/**
 * Predicted label frequencies along the primes, as JSON.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum AutoseqStatus autoseq_predict_primes_json(const struct AutoseqAutomaton *h, char **out);

/**
 * Kloosterman sum `S(a, b; c)`.
 *
 * # Safety
 * `re` and `im` must be valid pointers.
 */
enum AutoseqStatus autoseq_kloosterman(int64_t a, int64_t b, uint64_t c, double *re, double *im);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void autoseq_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* AUTOSEQ_H */
