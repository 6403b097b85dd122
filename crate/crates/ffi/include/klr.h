#ifndef KLR_H
#define KLR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum KlrStatus {
  KLR_STATUS_OK = 0,
  KLR_STATUS_NULL_POINTER = 1,
  KLR_STATUS_INVALID_UTF8 = 2,
  KLR_STATUS_PARSE = 3,
  KLR_STATUS_QUIVER = 4,
  // Weight, order or finiteness requirements not met.
  KLR_STATUS_CONFIG = 5,
  // A computation produced an inconsistent or failing result.
  KLR_STATUS_VERIFICATION = 6,
  KLR_STATUS_INTERNAL = 7,
} KlrStatus;

// A quantum shuffle character, tied to the quiver it was built on.
typedef struct KlrCharacter KlrCharacter;

// A quiver with its symmetric Cartan datum.
typedef struct KlrQuiver KlrQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. Valid until the next
// failing call on the same thread; never null.
const char *klr_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void klr_string_free(char *s);

// Build a quiver from its JSON description
// (`{"vertices": [...], "edges": [[a, b, m], ...]}`).
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum KlrStatus klr_quiver_from_json(const char *json, struct KlrQuiver **out);

// A built-in Dynkin quiver: `A<n>`, `D<n>`, `E6`..`E8` or `A1~`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` writable.
enum KlrStatus klr_quiver_builtin(const char *name, struct KlrQuiver **out);

// # Safety
// `q` must be null or a handle from this library, not yet freed.
void klr_quiver_free(struct KlrQuiver *q);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `q` must be null or a live quiver handle.
uintptr_t klr_quiver_rank(const struct KlrQuiver *q);

// Parse a character from lines `word : coefficient`.
//
// # Safety
// `q` must be a live quiver handle, `s` a NUL-terminated string, `out` writable.
enum KlrStatus klr_character_parse(const struct KlrQuiver *q,
                                   const char *s,
                                   struct KlrCharacter **out);

// Quantum shuffle product `a ∘ b`. Both operands must share a quiver.
//
// # Safety
// `a`, `b` must be live character handles and `out` writable.
enum KlrStatus klr_character_shuffle(const struct KlrCharacter *a,
                                     const struct KlrCharacter *b,
                                     struct KlrCharacter **out);

// Render as `word : coefficient` lines. Free the result with `klr_string_free`.
//
// # Safety
// `c` must be a live character handle and `out` writable.
enum KlrStatus klr_character_render(const struct KlrCharacter *c, char **out);

// # Safety
// `c` must be null or a handle from this library, not yet freed.
void klr_character_free(struct KlrCharacter *c);

// Graded decomposition matrix of weight `alpha` (comma separated
// coordinates) as TSV. `w0` is a comma separated reduced word for the
// longest element, or null for the default order.
//
// # Safety
// `q` must be a live quiver handle, `alpha` a NUL-terminated string,
// `w0` null or NUL-terminated, `out` writable.
enum KlrStatus klr_p_matrix_tsv(const struct KlrQuiver *q,
                                const char *alpha,
                                const char *w0,
                                char **out);

// Dual canonical characters of weight `alpha`, one block per Kostant
// partition, blocks separated by blank lines.
//
// # Safety
// As for `klr_p_matrix_tsv`.
enum KlrStatus klr_dual_canonical(const struct KlrQuiver *q,
                                  const char *alpha,
                                  const char *w0,
                                  char **out);

// Run the verification suite for weight `alpha`. Writes a report of
// `PASS|FAIL|SKIP name: detail` lines to `report` (may be null) and the
// number of failed checks to `failures`. Returns `KLR_STATUS_VERIFICATION`
// when any check fails.
//
// # Safety
// `q` must be a live quiver handle, `alpha` NUL-terminated, `failures`
// writable, `report` null or writable.
enum KlrStatus klr_verify(const struct KlrQuiver *q,
                          const char *alpha,
                          int64_t cutoff,
                          bool full,
                          uintptr_t *failures,
                          char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLR_H */
