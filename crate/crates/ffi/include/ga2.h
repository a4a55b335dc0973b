#ifndef GA2_H
#define GA2_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum Ga2Status {
  GA2_STATUS_OK = 0,
  GA2_STATUS_NULL_POINTER = 1,
  GA2_STATUS_INVALID_UTF8 = 2,
  GA2_STATUS_PARSE = 3,
  GA2_STATUS_INVALID_FIELD = 4,
  GA2_STATUS_FIELD_MISMATCH = 5,
  GA2_STATUS_NOT_AN_AUTOMORPHISM = 6,
  GA2_STATUS_NOT_CYCLICALLY_REDUCED = 7,
  GA2_STATUS_UNDECIDED = 8,
  GA2_STATUS_NOT_FINITE_FIELD = 9,
  GA2_STATUS_FIELD_TOO_LARGE = 10,
  // Any other library error; the kind string names it.
  GA2_STATUS_FAILED = 11,
  GA2_STATUS_PANIC = 12,
} Ga2Status;

// A polynomial map of the plane.
typedef struct Ga2Map Ga2Map;

// A normal form `b ∘ letters`.
typedef struct Ga2NormalForm Ga2NormalForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Kind of the last error on this thread (e.g. `"ParseError"`), or NULL if
// the last call succeeded. Valid until the next call on this thread.
const char *ga2_last_error_kind(void);

// Message of the last error on this thread, or NULL.
const char *ga2_last_error_message(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ga2_string_free(char *s);

// Parses a map such as `(y, -x + y^2 + 1)` over `field` (`"Q"` or
// `"Fp:<prime>"`).
//
// # Safety
// `expr` and `field` must be NUL-terminated strings; `out` must be writable.
enum Ga2Status ga2_map_parse(const char *expr, const char *field, struct Ga2Map **out);

// # Safety
// `map` must come from this library and not have been freed. NULL is ignored.
void ga2_map_free(struct Ga2Map *map);

// Canonical text of the map.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_map_to_string(const struct Ga2Map *map, char **out);

// `f ∘ g`.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_map_compose(const struct Ga2Map *f, const struct Ga2Map *g, struct Ga2Map **out);

// Exact equality of the two maps.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_map_equal(const struct Ga2Map *f, const struct Ga2Map *g, bool *out);

// Normal form of an automorphism. Fails with
// `GA2_STATUS_NOT_AN_AUTOMORPHISM` for anything else.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_decompose(const struct Ga2Map *map, struct Ga2NormalForm **out);

// # Safety
// `nf` must come from this library and not have been freed. NULL is ignored.
void ga2_nf_free(struct Ga2NormalForm *nf);

// Number of non-basic letters. Returns 0 for a NULL handle.
//
// # Safety
// `nf` must be valid or NULL.
size_t ga2_nf_length(const struct Ga2NormalForm *nf);

// Degree of the expanded map. Returns 0 for a NULL handle.
//
// # Safety
// `nf` must be valid or NULL.
uint64_t ga2_nf_degree(const struct Ga2NormalForm *nf);

// Letter-per-line serialization (`B ...`, `A ...`, `E ...`).
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_nf_to_string(const struct Ga2NormalForm *nf, char **out);

// Expands the normal form back into a map.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_nf_to_map(const struct Ga2NormalForm *nf, struct Ga2Map **out);

// Order of the element: writes `n` when finite and 0 when infinite. Fails
// with `GA2_STATUS_UNDECIDED` when the order exceeds `cap`.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_nf_order(const struct Ga2NormalForm *nf, uint64_t cap, uint64_t *out);

// Whether a cyclically reduced normal form passes the necessary
// conditions for being reversible.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_reversibility_necessary(const struct Ga2NormalForm *nf, bool *out);

// Conjugator `h` with `h ∘ g1 ∘ h⁻¹ = g2` for cyclically reduced `g1`,
// `g2`. Writes NULL when none exists.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_conjugate(const struct Ga2NormalForm *g1,
                             const struct Ga2NormalForm *g2,
                             struct Ga2NormalForm **out);

// Whether `s` commutes with `f`.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_is_symmetry(const struct Ga2Map *f, const struct Ga2Map *s, bool *out);

// Whether `r ∘ f ∘ r⁻¹ = f⁻¹`.
//
// # Safety
// Handles must be valid; `out` must be writable.
enum Ga2Status ga2_is_reversor(const struct Ga2Map *f, const struct Ga2Map *r, bool *out);

// Cycle and fixed-point counts of the permutation a map induces on
// `F_p × F_p`. `threads` 0 uses every core; `prime_cap` 0 uses the default.
//
// # Safety
// Handles must be valid; both out-pointers must be writable.
enum Ga2Status ga2_cycle_counts(const struct Ga2Map *map,
                                size_t threads,
                                uint64_t prime_cap,
                                uint64_t *cycles,
                                uint64_t *fixed_points);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GA2_H */
