/*
 * symweb: exact computer algebra for webs of symmetric matrices over Q and
 * prime fields. C interface to the shared library; all computation results
 * are returned as heap-allocated text or opaque web handles.
 *
 * Conventions:
 *   - every function returns a status code; SW_OK (0) means success
 *   - on failure, sw_last_error() returns a thread-local message
 *   - strings returned through char** are owned by the caller and must be
 *     released with sw_free(); webs with sw_web_free()
 *   - status codes mirror the CLI exit codes
 */
#ifndef SYMWEB_H
#define SYMWEB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
    SW_OK = 0,
    SW_ERR_USAGE = 1,  /* invalid arguments */
    SW_ERR_PARSE = 2,  /* malformed textual input */
    SW_ERR_DOMAIN = 3, /* precondition violated (zero disc, wrong field, ...) */
    SW_ERR_CAP = 4     /* enumeration cap exceeded */
} sw_status;

typedef struct sw_web sw_web; /* opaque web handle */

/* options for enumerative calls; zero-initialize for the defaults
 * (max_enum = 100000000, threads = 1) */
typedef struct sw_options {
    uint64_t max_enum;
    uint32_t threads;
} sw_options;

const char* sw_version(void);
const char* sw_last_error(void);

void sw_free(char* text);
void sw_web_free(sw_web* web);

/* ---- webs ---------------------------------------------------------- */

/* parse .swt text */
sw_status sw_web_parse(const char* text, sw_web** out);
/* canonical .swt rendering */
sw_status sw_web_render(const sw_web* web, char** text);

/* discriminant polynomial in canonical text form */
sw_status sw_web_disc(const sw_web* web, char** poly_text);
/* "zero_disc", "nonreduced" or "geometrically_reduced" */
sw_status sw_web_classify(const sw_web* web, char** tag);

/* group action M . (A, P); matrices are given as text rows separated by
 * ';' with entries separated by spaces, e.g. "1 0 0;0 1 0;0 0 1".
 * normalized != 0 applies det(A)^{-1} M . (A, P). */
sw_status sw_web_act(const sw_web* web, const char* a_rows, const char* p_rows,
                     int normalized, sw_web** out);

/* ---- reports ------------------------------------------------------- */

/* endomorphism algebra report: key-value lines dim, commutative,
 * sigma_identity, etale, r, fiber_group_order, norm_kernel_order */
sw_status sw_web_endo_report(const sw_web* web, const sw_options* opt, char** report);

/* fiber of Phi through the web: *reps receives a malloc'ed array of
 * *count web handles (free each with sw_web_free, the array with free) */
sw_status sw_web_fiber(const sw_web* web, const sw_options* opt, sw_web*** reps,
                       size_t* count);

/* equivalence test; kind is "cong", "full" or "module".
 * verdict: 1 equivalent, 0 inequivalent, -1 inequivalent(probabilistic).
 * detail receives a witness dump when equivalent (may be empty). */
sw_status sw_web_equiv(const sw_web* a, const sw_web* b, const char* kind,
                       const sw_options* opt, int* verdict, char** detail);

/* exhaustive census over F_p; field is "F<p>" (e.g. "F3"), disc_text a
 * polynomial in X0..Xm; the aligned result table is returned as text */
sw_status sw_census(const char* field, int m, int n, const char* disc_text,
                    const sw_options* opt, char** table);

/* quadric stabilizer groups; ext > 0 additionally reports the base-locus
 * point count over F_{q^ext} */
sw_status sw_autgroup(const sw_web* web, int ext, const sw_options* opt, char** report);

#ifdef __cplusplus
}
#endif

#endif /* SYMWEB_H */
