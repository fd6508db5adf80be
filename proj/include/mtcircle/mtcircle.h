/* C interface to the mtcircle library.
 *
 * A session is bound to one context (p, ell, s). Results come back as JSON
 * text owned by the caller; release it with mtc_string_free. Functions
 * return an mtc_status; on failure mtc_last_error describes it.
 */
#ifndef MTCIRCLE_H
#define MTCIRCLE_H

#include <stdint.h>

#if defined(_WIN32)
#define MTC_API __declspec(dllexport)
#else
#define MTC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mtc_status {
  MTC_OK = 0,
  MTC_INVALID_ARGUMENT = 1,
  MTC_DIMENSION_MISMATCH = 2,
  MTC_VERIFICATION_FAILED = 3,
  MTC_SEARCH_EXHAUSTED = 4,
  MTC_IO = 5,
  MTC_INTERNAL = 6
} mtc_status;

typedef struct mtc_session mtc_session;

typedef struct mtc_options {
  unsigned degree_budget;   /* 0: library default */
  uint64_t prime_bound;     /* 0: max(20, ceil((p+1)/6)) */
  unsigned tree_cap;        /* 0: library default */
  const char* cache_dir;    /* NULL or "": no disk cache */
} mtc_options;

MTC_API void mtc_options_init(mtc_options* opts);

/* opts may be NULL. */
MTC_API mtc_status mtc_session_create(uint64_t p, uint64_t ell, unsigned s,
                                      const mtc_options* opts,
                                      mtc_session** out);
MTC_API void mtc_session_destroy(mtc_session* session);

/* Smallest prime ell >= 5 dividing p - 1, or 0. */
MTC_API uint64_t mtc_default_ell(uint64_t p);

MTC_API mtc_status mtc_supersingular_json(mtc_session* s, char** out);
MTC_API mtc_status mtc_lmatrix_json(mtc_session* s, char** out);
MTC_API mtc_status mtc_brandt_json(mtc_session* s, unsigned q, char** out);
MTC_API mtc_status mtc_homology_json(mtc_session* s, char** out);
MTC_API mtc_status mtc_alpha_json(mtc_session* s, char** out);
MTC_API mtc_status mtc_merel_json(mtc_session* s, char** out);

/* theorem: "main", "alpha2", "alpha3", "tree" or "all". The JSON is an array
 * of reports; *passed is set to 1 iff every verdict is "pass". */
MTC_API mtc_status mtc_verify_json(mtc_session* s, const char* theorem,
                                   int* passed, char** out);

/* The standard battery; independent of the session's context. */
MTC_API mtc_status mtc_battery_json(const mtc_options* opts, int* passed,
                                    char** out);

/* Cache warnings collected so far, as a JSON array of strings. */
MTC_API mtc_status mtc_warnings_json(mtc_session* s, char** out);

/* Message for the last failure on this thread; never NULL. */
MTC_API const char* mtc_last_error(void);
MTC_API void mtc_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif
