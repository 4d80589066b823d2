/* C interface to the coefficient-group calculator.  All functions returning
 * rc_status report failure details through rc_last_error on the context
 * passed in.  Strings handed back through out-parameters are heap copies the
 * caller releases with rc_string_free. */
#ifndef REALCHROM_H
#define REALCHROM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RC_API __declspec(dllexport)
#else
#define RC_API __attribute__((visibility("default")))
#endif

typedef struct rc_context rc_context;

typedef enum rc_status {
    RC_OK = 0,
    RC_EINVAL = 1,        /* bad argument (theory name, mode, null pointer) */
    RC_EPARSE = 2,        /* malformed monomial text */
    RC_ENOTINTHEORY = 3,  /* word does not name an element of the theory */
    RC_ERESOURCE = 4,     /* window too large for the configured limits */
    RC_EIO = 5,
    RC_EINTERNAL = 6
} rc_status;

RC_API const char* rc_version(void);

RC_API rc_context* rc_context_new(void);
RC_API void rc_context_free(rc_context* ctx);

/* Last error message on this context; owned by the context, valid until the
 * next failing call. */
RC_API const char* rc_last_error(const rc_context* ctx);

RC_API void rc_string_free(char* s);

/* Parse a monomial and return its canonical spelling. */
RC_API rc_status rc_monomial_canonical(rc_context* ctx, const char* word, char** out);

/* Bidegree of the word: k + l*alpha. */
RC_API rc_status rc_monomial_dimension(rc_context* ctx, const char* word,
                                       int64_t* k, int64_t* l);

RC_API rc_status rc_monomial_weight(rc_context* ctx, const char* word, int64_t* weight);

/* Normal form of the word in the theory.  is_zero is set when the word
 * rewrites to zero; otherwise valuation counts the 2-power split off and
 * *out gets the basis word. */
RC_API rc_status rc_normal_form(rc_context* ctx, const char* theory, int n,
                                const char* word, int* is_zero, int64_t* valuation,
                                char** out);

/* Group in a single bidegree, rendered in the given format
 * ("text"|"csv"|"json"). */
RC_API rc_status rc_group(rc_context* ctx, const char* theory, int n,
                          int64_t k, int64_t l, const char* format, char** out);

/* Rectangular table of groups. */
RC_API rc_status rc_table(rc_context* ctx, const char* theory, int n,
                          int64_t kmin, int64_t kmax, int64_t lmin, int64_t lmax,
                          const char* format, int twisted_labels, char** out);

/* Congruence-indexed view of one twist line of the truncated theory
 * (mode "theorem" or "corollary"; the modes place the negative-sigma-power
 * family at mirrored dimensions). */
RC_API rc_status rc_corollary(rc_context* ctx, int n, int64_t l, int64_t kmin,
                              int64_t kmax, const char* mode, const char* format,
                              char** out);

/* Page of one of the filtration spectral sequences.
 * kind in {"tate","borel","geometric","tower"}; page < 1 dumps the last
 * page (everything resolved). */
RC_API rc_status rc_ssdump(rc_context* ctx, const char* kind, int n, int page,
                           int64_t K, int64_t L, const char* format, char** out);

/* Run a named verification suite; *failures gets the count of unexpected
 * failures (expected diffs in the diff suites do not count). */
RC_API rc_status rc_verify(rc_context* ctx, const char* suite, int n,
                           int64_t K, int64_t L, const char* format,
                           int64_t* failures, char** out);

#ifdef __cplusplus
}
#endif

#endif /* REALCHROM_H */
