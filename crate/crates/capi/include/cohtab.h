#ifndef COHTAB_H
#define COHTAB_H

/* Generated by cbindgen from cohtab-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Call outcome. Nonzero values mirror the CLI exit codes: 2 for malformed
// input, 3 when a position cannot be evaluated inside the window, 4 for a
// non-admissible table, 1 for anything else.
typedef enum CohtabStatus {
  COHTAB_STATUS_OK = 0,
  COHTAB_STATUS_INTERNAL = 1,
  COHTAB_STATUS_INVALID_INPUT = 2,
  COHTAB_STATUS_OUT_OF_WINDOW = 3,
  COHTAB_STATUS_NON_ADMISSIBLE = 4,
} CohtabStatus;

// Opaque handle to an exact cohomology table.
typedef struct CohtabTable CohtabTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent error on this thread, or null. The
// pointer stays valid until the next failing call from the same thread.
const char *cohtab_last_error_message(void);

// Free a string returned by this library. Null is ignored.
//
// # Safety
// `s` must have been returned by a cohtab function and not freed before.
void cohtab_string_free(char *s);

// Free a table handle. Null is ignored.
//
// # Safety
// `t` must have been returned by a cohtab function and not freed before.
void cohtab_table_free(struct CohtabTable *t);

// Parse a table in the text or JSON format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CohtabStatus cohtab_table_parse(const char *text, struct CohtabTable **out);

// Serialize a table in the text format.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum CohtabStatus cohtab_table_emit_text(const struct CohtabTable *t, char **out);

// Serialize a table in the JSON format, tails included.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum CohtabStatus cohtab_table_emit_json(const struct CohtabTable *t, char **out);

// Render a table as a display-convention grid.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum CohtabStatus cohtab_table_render(const struct CohtabTable *t, char **out);

// Build the normalized supernatural table for strictly decreasing roots,
// scaled by the exact rational `scale` (e.g. "1/6"), on [lo, hi].
//
// # Safety
// `roots` must point to `nroots` values; `scale` must be NUL-terminated;
// `out` must be valid.
enum CohtabStatus cohtab_supernatural_table(const int64_t *roots,
                                            size_t nroots,
                                            const char *scale,
                                            size_t ambient,
                                            int64_t lo,
                                            int64_t hi,
                                            struct CohtabTable **out);

// Build a stock table by CLI name (ideal-point-p2, line:a:n,
// line-bundle:s:a:n, skew-lines, conic-point, T2, T3), twisted and
// materialized on [lo, hi].
//
// # Safety
// `name` must be NUL-terminated and `out` valid.
enum CohtabStatus cohtab_stock_table(const char *name,
                                     int64_t twist,
                                     int64_t lo,
                                     int64_t hi,
                                     struct CohtabTable **out);

// The exact entry at (row, degree) as a `p/q` string.
//
// # Safety
// `t` must be a live handle and `out` valid.
enum CohtabStatus cohtab_table_entry(const struct CohtabTable *t,
                                     size_t row,
                                     int64_t degree,
                                     char **out);

// Dimension of the table, -1 when identically zero.
//
// # Safety
// `t` must be a live handle and `out` valid.
enum CohtabStatus cohtab_table_dimension(const struct CohtabTable *t, int64_t *out);

// Regularity sequence. `out` receives up to `cap` roots; `out_len` the true
// length.
//
// # Safety
// `t` must be a live handle; `out` must hold `cap` values; `out_len` valid.
enum CohtabStatus cohtab_table_regularity(const struct CohtabTable *t,
                                          int64_t *out,
                                          size_t cap,
                                          size_t *out_len);

// Run the greedy decomposition for at most `max_steps` steps and return the
// result as JSON (steps, residual entries, status). Hitting the window
// bound is reported inside the JSON, not as a call failure.
//
// # Safety
// `t` must be a live handle and `out` valid.
enum CohtabStatus cohtab_decompose(const struct CohtabTable *t, size_t max_steps, char **out);

// Rebuild the generator sum of a decomposition JSON on [lo, hi].
//
// # Safety
// `json` must be NUL-terminated and `out` valid.
enum CohtabStatus cohtab_reconstruct(const char *json,
                                     int64_t lo,
                                     int64_t hi,
                                     struct CohtabTable **out);

// Evaluate L(degrees, phi^j) on the table; j = -1 evaluates with all bounds
// infinite. The exact value is returned as a `p/q` string.
//
// # Safety
// `degrees` must point to `len` values; `t` live; `out` valid.
enum CohtabStatus cohtab_functional(const struct CohtabTable *t,
                                    const int64_t *degrees,
                                    size_t len,
                                    int32_t phi_j,
                                    char **out);

// Search [lo, hi] for a violated positivity functional with at most
// smax + 2 degrees. On success `out` receives the certificate JSON, or
// null when the search is exhausted without a violation.
//
// # Safety
// `t` must be a live handle and `out` valid.
enum CohtabStatus cohtab_certificate_search(const struct CohtabTable *t,
                                            int64_t lo,
                                            int64_t hi,
                                            size_t smax,
                                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COHTAB_H */
