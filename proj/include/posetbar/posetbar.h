/* C interface to the posetbar library. */
#ifndef POSETBAR_POSETBAR_H
#define POSETBAR_POSETBAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PB_API __declspec(dllexport)
#else
#define PB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pb_status {
  PB_OK = 0,
  PB_DOMAIN_ERROR = 1,   /* invalid input or an operation that does not apply */
  PB_USAGE_ERROR = 2,    /* bad arguments to the API itself */
  PB_PROPERTY_FAILURE = 3,
  PB_PARSE_ERROR = 4,
  PB_UNDECIDED = 5,
  PB_CAP_EXCEEDED = 6,
  PB_INTERNAL_ERROR = 7
} pb_status;

typedef enum pb_format { PB_FORMAT_JSON = 0, PB_FORMAT_TABLE = 1 } pb_format;

typedef struct pb_poset pb_poset;
typedef struct pb_rep pb_rep;

/* Message for the last failing call on this thread; empty after success. */
PB_API const char* pb_last_error(void);
/* Strings returned through char** outputs are owned by the caller. */
PB_API void pb_string_free(char* s);
PB_API const char* pb_version(void);

PB_API pb_status pb_poset_from_json(const char* json, pb_poset** out);
PB_API pb_status pb_poset_grid(size_t rows, size_t cols, pb_poset** out);
PB_API void pb_poset_free(pb_poset* poset);
/* Elements, covers and the interval catalog. */
PB_API pb_status pb_poset_describe(const pb_poset* poset, pb_format format, char** out);

/* poset may be NULL when the JSON names its poset; modulus 0 means "as given,
   else 2". A nonzero modulus must agree with the JSON. The module is not
   validated; see pb_rep_validate. */
PB_API pb_status pb_rep_from_json(const char* json, const pb_poset* poset, uint32_t modulus, pb_rep** out);
/* As pb_rep_from_json; a string "poset" field names a file relative to path. */
PB_API pb_status pb_rep_from_file(const char* path, const pb_poset* poset, uint32_t modulus, pb_rep** out);
PB_API void pb_rep_free(pb_rep* rep);
PB_API pb_status pb_rep_to_json(const pb_rep* rep, char** out);
PB_API pb_status pb_rep_poset(const pb_rep* rep, pb_poset** out);
PB_API uint32_t pb_rep_modulus(const pb_rep* rep);
/* PB_OK when valid. Otherwise PB_DOMAIN_ERROR and a report of every violation. */
PB_API pb_status pb_rep_validate(const pb_rep* rep, pb_format format, char** report);

/* kind: dimvec, rk, grk, gpd, intmult, dimhom, betti0, chi, ctot, cxi.
   compression_json is required for cxi and ignored otherwise. */
PB_API pb_status pb_invariant(const pb_rep* rep, const char* kind, const char* compression_json, pb_format format,
                              char** out);

/* basis: "intervals", "projectives", or a JSON array of intervals (lists of
   element names). max_depth 0 means the default. */
PB_API pb_status pb_resolve(const pb_rep* rep, const char* basis, size_t max_depth, pb_format format, char** out);

/* Flip of x = [first] - [second] (or of an element given as JSON with
   pb_flip_element) from ker f to ker g. */
PB_API pb_status pb_flip(const char* f, const char* g, const pb_rep* first, const pb_rep* second, pb_format format,
                         char** out);
PB_API pb_status pb_flip_element(const char* f, const char* g, const char* element_json, const pb_poset* poset,
                                 uint32_t modulus, pb_format format, char** out);

/* Two-directional incomparability certificate seeded by (first, second), or
   with check_only a single separating-pair record. Certificates are
   re-verified before they are returned. */
PB_API pb_status pb_certify(const char* f, const char* g, const pb_rep* first, const pb_rep* second, int check_only,
                            pb_format format, char** out);
/* Re-evaluates a certificate produced by pb_certify. */
PB_API pb_status pb_verify_certificate(const char* certificate_json, const pb_poset* poset, uint32_t modulus,
                                       char** report);

/* Runs the identity suite; PB_PROPERTY_FAILURE when any identity fails. */
PB_API pb_status pb_fuzz(const pb_poset* poset, uint32_t modulus, uint64_t seed, size_t trials, int adversarial,
                         pb_format format, char** out);

/* Random module: cokernel of a random map between sums of projectives. */
PB_API pb_status pb_sample(const pb_poset* poset, uint32_t modulus, uint64_t seed, size_t generators,
                           size_t relations, pb_rep** out);

#ifdef __cplusplus
}
#endif

#endif
