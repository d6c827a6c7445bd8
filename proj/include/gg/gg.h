#ifndef GG_GG_H
#define GG_GG_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef GG_BUILDING
#    define GG_API __declspec(dllexport)
#  else
#    define GG_API __declspec(dllimport)
#  endif
#else
#  define GG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GG_OK = 0,
  GG_EINVAL = 1,       /* bad argument or malformed input */
  GG_EUNSUPPORTED = 2, /* (d,c) pair or layout not handled */
  GG_ENUMERIC = 3,     /* solver did not converge or rule failed verification */
  GG_EIO = 4,
  GG_EINTERNAL = 5
} gg_status;

typedef enum { GG_GAUSS = 0, GG_RADAU = 1 } gg_kind;
typedef enum { GG_DOUBLE = 0, GG_EXTENDED = 1 } gg_precision;

/* opaque handles; all values inside are immutable once created */
typedef struct gg_space gg_space;
typedef struct gg_rule gg_rule;
typedef struct gg_asym gg_asym;

typedef struct {
  int steps;
  double epsilon;
  double newton_tol;
  int newton_max_iter;
  int retries;
  gg_precision precision;
  const char* trace_log; /* path for a JSON-lines step log, or NULL */
} gg_config;

typedef struct {
  double norm;    /* |r|_2 / dim */
  double max_abs; /* largest |r_i| */
  int dim;
  int nodes;
  int optimal_nodes;
  int exact;
  int optimal;
  int positive;
  int ordered;
} gg_report;

/* defaults; GG_PRECISION=double|extended overrides the precision */
GG_API void gg_config_init(gg_config* cfg);

/* message of the last failed call on this thread */
GG_API const char* gg_last_error(void);
GG_API const char* gg_version(void);

GG_API gg_status gg_galerkin_target(int p, int k, int l, int* d, int* c);

/* spaces: open knot vectors, ends must carry multiplicity d+1 */
GG_API gg_status gg_space_new(int d, const double* x, const int* m, size_t n, gg_space** out);
GG_API gg_status gg_space_new_str(int d, const char* const* x, const int* m, size_t n,
                                  gg_space** out);
GG_API gg_status gg_space_uniform(int d, int c, int elements, double a, double b,
                                  gg_space** out);
GG_API void gg_space_free(gg_space* s);
GG_API int gg_space_degree(const gg_space* s);
GG_API int gg_space_dimension(const gg_space* s);
GG_API gg_status gg_space_optimal_nodes(const gg_space* s, int* m, gg_kind* kind);
/* i is 0-based */
GG_API gg_status gg_space_basis(const gg_space* s, int i, double t, double* value);
GG_API gg_status gg_space_integral(const gg_space* s, int i, double* value);
GG_API gg_status gg_space_merge(const gg_space* left, const gg_space* right, gg_space** out);

/* rule derivation */
GG_API gg_status gg_derive_rule(int d, int c, const double* x, size_t n, const gg_config* cfg,
                                gg_rule** out);
GG_API gg_status gg_derive_rule_str(int d, int c, const char* const* x, size_t n,
                                    const gg_config* cfg, gg_rule** out);
GG_API gg_status gg_block_gauss_6_1(gg_precision p, gg_rule** out);
GG_API gg_status gg_block_radau_4_0(gg_precision p, gg_rule** out, double* rho);
GG_API gg_status gg_solve_block(int d, int c, int elements, gg_kind kind, gg_precision p,
                                gg_rule** out);

GG_API void gg_rule_free(gg_rule* r);
GG_API size_t gg_rule_size(const gg_rule* r);
GG_API gg_kind gg_rule_kind(const gg_rule* r);
GG_API int gg_rule_pinned(const gg_rule* r);
GG_API gg_precision gg_rule_precision(const gg_rule* r);
GG_API void gg_rule_domain(const gg_rule* r, double* a, double* b);
GG_API gg_status gg_rule_nodes(const gg_rule* r, double* t, size_t n);
GG_API gg_status gg_rule_weights(const gg_rule* r, double* w, size_t n);
/* full-precision decimal of node/weight i; the buffer gets at most len bytes */
GG_API gg_status gg_rule_node_str(const gg_rule* r, size_t i, int digits, char* buf, size_t len);
GG_API gg_status gg_rule_weight_str(const gg_rule* r, size_t i, int digits, char* buf,
                                    size_t len);
GG_API double gg_rule_apply(const gg_rule* r, double (*f)(double, void*), void* ctx);
GG_API gg_status gg_rule_verify(const gg_rule* r, const gg_space* s, double tol, gg_report* rep);
/* residuals r_i = Q[B_i] - I[B_i]; res must hold gg_space_dimension(s) values */
GG_API gg_status gg_rule_residuals(const gg_rule* r, const gg_space* s, double* res, size_t n);
GG_API gg_status gg_rule_reflect(const gg_rule* half, double mid, gg_rule** out);
GG_API gg_status gg_rule_affine(const gg_rule* r, double a, double b, gg_rule** out);

/* asymptotic rules, (4,0) and (6,1) only */
GG_API gg_status gg_asymptotic_new(int d, int c, gg_precision p, gg_asym** out);
GG_API void gg_asymptotic_free(gg_asym* A);
/* names: d1 d2 w1 w2 w3 */
GG_API gg_status gg_asymptotic_value(const gg_asym* A, const char* name, int digits, char* buf,
                                     size_t len);
GG_API gg_status gg_asymptotic_formula(const gg_asym* A, const char* name, const char** formula);
GG_API double gg_asymptotic_nodes_per_element(const gg_asym* A);
GG_API gg_status gg_boundary_depth(const gg_rule* r, const gg_asym* A, double tol, int* depth);
/* depth < 0: measured from the boundary rule */
GG_API gg_status gg_compose_finite(const gg_asym* A, const gg_rule* boundary, int elements,
                                   double a, double b, int depth, gg_rule** out);

/* rule files: JSON with decimal strings, plus a node,weight CSV */
GG_API gg_status gg_rule_save(const gg_rule* r, int d, int c, const gg_space* s,
                              const char* path);
GG_API gg_status gg_rule_save_csv(const gg_rule* r, const char* path);
GG_API gg_status gg_rule_load(const char* path, gg_rule** out, gg_space** space, int* d,
                              int* c);

typedef struct {
  int optimal_nodes;
  int classical_nodes; /* per-element Gauss with ceil((d+1)/2) points */
  double ratio_1d;
  double asym_per_element;     /* (d-c)/2 nodes per element in the periodic regime */
  double classical_per_element;
  double ratio_3d;             /* (asym / classical)^3 */
} gg_savings;

GG_API gg_status gg_compare(int d, int c, int elements, gg_savings* out);

#ifdef __cplusplus
}
#endif

#endif
