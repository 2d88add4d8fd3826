/* C interface to the linefree library: construction, verification, bounds,
 * certificates and exact search for progression-free subsets of F_p^n.
 *
 * Every function returning lf_status leaves a message retrievable with
 * lf_last_error() on failure. Strings returned through char** are owned by
 * the caller and released with lf_string_free(). */
#ifndef LINEFREE_LINEFREE_H
#define LINEFREE_LINEFREE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(LINEFREE_BUILDING_LIBRARY)
#define LF_API __attribute__((visibility("default")))
#else
#define LF_API
#endif

typedef enum lf_status {
    LF_OK = 0,
    LF_E_INPUT = 1,
    LF_E_PARSE = 2,
    LF_E_UNSUPPORTED = 3,
    LF_E_RESOURCE = 4,
    LF_E_IO = 5,
    LF_E_INTERNAL = 6
} lf_status;

typedef struct lf_pointset lf_pointset;
typedef struct lf_certificate lf_certificate;
typedef struct lf_search_result lf_search_result;

LF_API const char* lf_version(void);
/* Message of the last failed call on this thread; never NULL. */
LF_API const char* lf_last_error(void);
LF_API void lf_string_free(char* s);

/* Point sets. family is one of hypercube, layered, sqrt, qr, fig70. */
LF_API lf_status lf_pointset_construct(const char* family, int p, int n, lf_pointset** out);
LF_API lf_status lf_pointset_from_indices(int p, int n, const uint32_t* indices, size_t count, lf_pointset** out);
LF_API lf_status lf_pointset_parse(const char* text, lf_pointset** out, int* k_out);
LF_API lf_status lf_pointset_read(const char* path, lf_pointset** out, int* k_out);
/* Grid text, or a standalone TikZ document when tikz is nonzero. */
LF_API lf_status lf_pointset_render(const lf_pointset* s, int k, int tikz, char** out);
LF_API lf_status lf_pointset_write(const lf_pointset* s, int k, const char* path);
LF_API lf_status lf_pointset_json(const lf_pointset* s, int k, char** out);
LF_API lf_status lf_pointset_product(const lf_pointset* a, const lf_pointset* b, lf_pointset** out);
LF_API lf_status lf_pointset_layer(const lf_pointset* s, int value, lf_pointset** out);
LF_API lf_status lf_pointset_info(const lf_pointset* s, int* p, int* n, size_t* size);
LF_API lf_status lf_pointset_contains(const lf_pointset* s, uint32_t index, int* out);
LF_API void lf_pointset_free(lf_pointset* s);

/* Verification. json and text may be NULL. */
LF_API lf_status lf_verify(const lf_pointset* s, int k, int threads, int* is_free, char** json, char** text);

/* Bounds and rates. */
LF_API lf_status lf_bounds_report(int p, int n, int k, int threads, char** json, char** text);
LF_API lf_status lf_table1(char** json, char** text);
/* size is a decimal integer string; the rate is rounded down to 3 places. */
LF_API lf_status lf_rate_from_size(const char* size, int n, char** out);
LF_API lf_status lf_rate_fgr(int p, char** out);

/* Certificates. */
typedef struct lf_certify_options {
    int paper_faithful;
    int threads;
    int plane_values_from_search;
    double search_budget_seconds;
    long long max_vectors; /* 0 means unlimited */
} lf_certify_options;

LF_API void lf_certify_options_init(lf_certify_options* opt);
LF_API lf_status lf_certify(int p, long long target, const lf_certify_options* opt, lf_certificate** out);
LF_API int lf_certificate_infeasible(const lf_certificate* c);
LF_API lf_status lf_certificate_json(const lf_certificate* c, char** out);
LF_API lf_status lf_certificate_text(const lf_certificate* c, size_t max_log_lines, char** out);
LF_API void lf_certificate_free(lf_certificate* c);
LF_API lf_status lf_certificate_replay(const char* json, int* ok, char** message);

/* Exact search. */
enum { LF_ORDER_NATURAL = 0, LF_ORDER_GREEDY_DEGREE = 1 };
enum { LF_BOUND_CARDINALITY = 0, LF_BOUND_LINE_CAPACITY = 1 };
enum { LF_SYMMETRY_NONE = 0, LF_SYMMETRY_TRANSLATION = 1, LF_SYMMETRY_AFFINE3 = 2 };

typedef struct lf_search_options {
    int order;
    int bound;
    int symmetry;
    double time_budget_seconds; /* 0 means unlimited */
    long long node_budget;      /* 0 means unlimited */
    int threads;
    const lf_pointset* warm_start; /* may be NULL */
} lf_search_options;

LF_API void lf_search_options_init(lf_search_options* opt);
LF_API lf_status lf_search(int p, int n, int k, const lf_search_options* opt, lf_search_result** out);
LF_API size_t lf_search_best_size(const lf_search_result* r);
LF_API int lf_search_optimal(const lf_search_result* r);
LF_API long long lf_search_nodes(const lf_search_result* r);
LF_API double lf_search_seconds(const lf_search_result* r);
LF_API lf_status lf_search_best_set(const lf_search_result* r, lf_pointset** out);
LF_API lf_status lf_search_report(const lf_search_result* r, int k, int timing, char** json, char** text);
LF_API void lf_search_result_free(lf_search_result* r);
LF_API lf_status lf_brute_force_oracle(int p, int n, int k, long long* out);

/* Runs the small built-in examples of one module (or all when module is
 * NULL or "all"). Returns LF_OK when every check passes. */
LF_API lf_status lf_selftest(const char* module, char** report);

#ifdef __cplusplus
}
#endif

#endif
