#ifndef GSSS_H
#define GSSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum GsssStatus {
  GSSS_STATUS_OK = 0,
  // A required pointer argument was NULL.
  GSSS_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  GSSS_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, number, structure or parameter.
  GSSS_STATUS_INVALID_INPUT = 3,
  // Not enough primes of the requested size, or a bad bit length.
  GSSS_STATUS_PRIME_GENERATION = 4,
  // The same participant or prime was supplied twice.
  GSSS_STATUS_DUPLICATE_SHARE = 5,
  // Monotone closure would exceed the cap.
  GSSS_STATUS_CLOSURE_TOO_LARGE = 6,
  // A participant id is not part of the structure.
  GSSS_STATUS_UNKNOWN_PARTICIPANT = 7,
  // The critical-value analysis could not be carried out.
  GSSS_STATUS_ANALYSIS_FAILED = 8,
  // Internal error; the library caught a panic.
  GSSS_STATUS_PANIC = 255,
} GsssStatus;

// Result of dealing: shares and the public polynomial.
typedef struct GsssDealing GsssDealing;

// Public polynomial handle.
typedef struct GsssPublic GsssPublic;

// Access structure handle.
typedef struct GsssStructure GsssStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static string that must not be freed.
const char *gsss_version(void);

// Copy of the last error message on this thread, or NULL if the most recent
// call succeeded. Free with [`gsss_string_free`].
char *gsss_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void gsss_string_free(char *s);

// Parses and validates an access structure from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum GsssStatus gsss_structure_from_json(const char *json, struct GsssStructure **out);

// Canonical JSON form of a structure.
//
// # Safety
// `structure` must be a live handle; `out` must be writable.
enum GsssStatus gsss_structure_to_json(const struct GsssStructure *structure, char **out);

// Adds every superset of an authorized set, refusing to produce more than
// `cap` sets.
//
// # Safety
// `structure` must be a live handle; `out` must be writable.
enum GsssStatus gsss_structure_closure(const struct GsssStructure *structure,
                                       size_t cap,
                                       struct GsssStructure **out);

// Whether the coalition of the given participant ids is an authorized set.
//
// # Safety
// `ids` must point to `count` NUL-terminated strings; `out` must be writable.
enum GsssStatus gsss_structure_is_authorized(const struct GsssStructure *structure,
                                             const char *const *ids,
                                             size_t count,
                                             bool *out);

// # Safety
// `structure` must be NULL or a handle not yet freed.
void gsss_structure_free(struct GsssStructure *structure);

// Deals `secret` (decimal or 0x hex) over `structure` with primes of
// `bit_length` bits drawn deterministically from `seed`.
//
// # Safety
// `seed` must point to `seed_len` readable bytes (or be NULL with length 0).
enum GsssStatus gsss_deal(const struct GsssStructure *structure,
                          const char *secret,
                          uint64_t bit_length,
                          const uint8_t *seed,
                          size_t seed_len,
                          struct GsssDealing **out);

// The public polynomial of a dealing, as a new handle.
//
// # Safety
// `dealing` must be a live handle; `out` must be writable.
enum GsssStatus gsss_dealing_public(const struct GsssDealing *dealing, struct GsssPublic **out);

// Share file JSON for one participant.
//
// # Safety
// `dealing` must be a live handle; `participant` a NUL-terminated string.
enum GsssStatus gsss_dealing_share_json(const struct GsssDealing *dealing,
                                        const char *participant,
                                        char **out);

// # Safety
// `dealing` must be NULL or a handle not yet freed.
void gsss_dealing_free(struct GsssDealing *dealing);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum GsssStatus gsss_public_from_json(const char *json, struct GsssPublic **out);

// # Safety
// `public` must be a live handle; `out` must be writable.
enum GsssStatus gsss_public_to_json(const struct GsssPublic *public_, char **out);

// # Safety
// `public` must be NULL or a handle not yet freed.
void gsss_public_free(struct GsssPublic *public_);

// Evaluates the public polynomial at the product of the given shares'
// primes and returns the result in decimal. For an authorized coalition
// this is the secret; otherwise it is an unrelated value.
//
// # Safety
// `shares` must point to `count` NUL-terminated share-file JSON strings.
enum GsssStatus gsss_reconstruct(const struct GsssPublic *public_,
                                 const char *const *shares,
                                 size_t count,
                                 char **out);

// Interval analysis of the public polynomial, as the JSON report the
// command-line `analyze` prints. `precision` is "p/q", a decimal, or
// exponent notation such as "1e-9".
//
// # Safety
// `public` must be a live handle; `precision` a NUL-terminated string.
enum GsssStatus gsss_analyze(const struct GsssPublic *public_, const char *precision, char **out);

// Splits `secret` into `n` threshold-`t` shares over GF(q) and returns them
// as a JSON array of share files. `q` may be NULL for 2^61 - 1.
//
// # Safety
// String arguments must be NUL-terminated; `seed` must point to `seed_len`
// readable bytes (or be NULL with length 0).
enum GsssStatus gsss_shamir_split(const char *secret,
                                  size_t n,
                                  size_t t,
                                  const char *q,
                                  const uint8_t *seed,
                                  size_t seed_len,
                                  char **out);

// Recovers a threshold secret from a JSON array of share files; the result
// is decimal.
//
// # Safety
// `shares_json` must be a NUL-terminated string; `out` must be writable.
enum GsssStatus gsss_shamir_combine(const char *shares_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GSSS_H */
