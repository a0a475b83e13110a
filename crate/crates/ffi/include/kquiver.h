#ifndef KQUIVER_H
#define KQUIVER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum KqStatus {
  KQ_STATUS_OK = 0,
  KQ_STATUS_NULL_POINTER = 1,
  KQ_STATUS_INVALID_UTF8 = 2,
  KQ_STATUS_PARSE = 3,
  KQ_STATUS_INVALID_INPUT = 4,
  KQ_STATUS_ARITHMETIC = 5,
  KQ_STATUS_CHECK_FAILED = 6,
  KQ_STATUS_INTERNAL = 7,
  KQ_STATUS_PANIC = 8,
} KqStatus;

// Cartan data of a loop-free graph.
typedef struct KqCartan KqCartan;

// A built integrable module.
typedef struct KqModule KqModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty if none. The pointer
// stays valid until the next failing call on the same thread.
const char *kq_last_error_message(void);

// Library version as a static string.
const char *kq_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void kq_string_free(char *s);

// Cartan data from a graph file (JSON with `vertices`, `edges`).
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum KqStatus kq_cartan_from_json(const char *json, struct KqCartan **out);

// Cartan data from a type string such as `A3` or `A1xA1`.
//
// # Safety
// `kind` must be a nul-terminated string; `out` must be writable.
enum KqStatus kq_cartan_from_type(const char *kind, struct KqCartan **out);

// # Safety
// `c` must be null or a handle from this library, freed once.
void kq_cartan_free(struct KqCartan *c);

// Number of vertices.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum KqStatus kq_cartan_rank(const struct KqCartan *c, size_t *out);

// `<Lambda_w - alpha_v, alpha_i>`.
//
// # Safety
// `w` and `v` must point to `len` values; `out` must be writable.
enum KqStatus kq_cartan_pair(const struct KqCartan *c,
                             const int64_t *w,
                             const int64_t *v,
                             size_t len,
                             size_t i,
                             int64_t *out);

// Dimension of the quiver variety of weight `Lambda_w - alpha_v`.
//
// # Safety
// `w` and `v` must point to `len` values; `out` must be writable.
enum KqStatus kq_quiver_dim(const struct KqCartan *c,
                            const int64_t *w,
                            const int64_t *v,
                            size_t len,
                            int64_t *out);

// Builds `V(Lambda_w)`; a negative `depth` means no depth limit.
//
// # Safety
// `w` must point to `len` values; `out` must be writable.
enum KqStatus kq_module_build(const struct KqCartan *c,
                              const int64_t *w,
                              size_t len,
                              int64_t depth,
                              struct KqModule **out);

// # Safety
// `m` must be null or a handle from this library, freed once.
void kq_module_free(struct KqModule *m);

// Total dimension of the module.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum KqStatus kq_module_total_dim(const struct KqModule *m, size_t *out);

// Dimension of the weight space at `v`.
//
// # Safety
// `v` must point to `len` values; `out` must be writable.
enum KqStatus kq_module_weight_dim(const struct KqModule *m,
                                   const int64_t *v,
                                   size_t len,
                                   size_t *out);

// Module file JSON; release with [`kq_string_free`].
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum KqStatus kq_module_to_json(const struct KqModule *m, char **out);

// Checks the relation families. The JSON report is written to `out` (if not
// null) in every case where checks ran; a failed family gives `CheckFailed`.
//
// # Safety
// `m` must be a live handle; `out` must be null or writable.
enum KqStatus kq_module_verify(const struct KqModule *m, char **out);

// Runs the localized K-theory checks on `T*G(k,N)` for all k. `checks` is a
// comma-separated list or null for all. The JSON report goes to `out` (if not
// null); a failed check gives `CheckFailed`.
//
// # Safety
// `checks` must be null or a nul-terminated string; `out` must be null or writable.
enum KqStatus kq_ktheory_verify(size_t n,
                                const char *checks,
                                bool symbolic,
                                uint64_t seed,
                                size_t points,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KQUIVER_H */
