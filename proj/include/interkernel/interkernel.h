/*
 * interkernel: Fredholm classification of operators on real interpolation
 * spaces, from the kernel in X0 + X1.
 *
 * All functions report failure through an ik_status; the message of the most
 * recent failure on the calling thread is available from ik_last_error().
 * Objects returned through out-parameters are owned by the caller and must be
 * released with the matching *_free function.
 */
#ifndef INTERKERNEL_H
#define INTERKERNEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IK_API __declspec(dllexport)
#else
#define IK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ik_status {
  IK_OK = 0,
  IK_ERR_INPUT = 1,    /* malformed descriptor or parameter out of range */
  IK_ERR_NUMERIC = 2,  /* a quantity diverged or could not be evaluated */
  IK_ERR_INTERNAL = 3,
  IK_ERR_NULL = 4      /* a required pointer argument was NULL */
} ik_status;

typedef enum ik_format { IK_FORMAT_JSON = 0, IK_FORMAT_CSV = 1 } ik_format;

typedef struct ik_model ik_model;
typedef struct ik_report ik_report;

typedef struct ik_options {
  int grid_kmin;  /* dyadic grid 2^kmin .. 2^kmax for sampled profiles */
  int grid_kmax;
  double tol;     /* Boundary band for sampled (uncertified) indices */
  uint64_t seed;  /* randomized suites */
} ik_options;

/* Defaults: grid -80..80 (or INTERKERNEL_GRID="kmin:kmax"), tol 1e-6, seed 1. */
IK_API ik_status ik_options_init(ik_options* options);

IK_API const char* ik_last_error(void);
IK_API const char* ik_version(void);

/* ---- operator models ---------------------------------------------------- */

/* I - H on (L^p(w0), L^p(w1)); spec is "a0=..,ainf=..,b0=..,binf=..". */
IK_API ik_status ik_model_hardy(const char* spec, double p, ik_model** out);
/* I - H slotwise on a product of n such couples sharing p. */
IK_API ik_status ik_model_hardy_product(const char* const* specs, size_t n, double p, ik_model** out);
/* Laplace operator on a strip; spec is "alpha=..,beta0=..,beta1=..[,l=..]". */
IK_API ik_status ik_model_strip(const char* spec, ik_model** out);
/* The element a_theta of the reference couple as a one-element "kernel";
 * useful for the indices and kfun reports. */
IK_API ik_status ik_model_a_theta(double theta, ik_model** out);
/* Generic JSON operator descriptor. */
IK_API ik_status ik_model_from_json(const char* json, const ik_options* options, ik_model** out);
/* Pads the endpoint spaces with complements of dimensions dim0, dim1. */
IK_API ik_status ik_model_reduce(const ik_model* model, int dim0, int dim1, ik_model** out);
IK_API ik_status ik_model_kernel_dim(const ik_model* model, size_t* out);
/* Distinct tail exponents of the kernel monomials inside (0,1): the theta
 * values where memberships change. Writes up to `capacity` values ascending
 * and sets *count to the total number. */
IK_API ik_status ik_model_critical_thetas(const ik_model* model, double* out, size_t capacity, size_t* count);
IK_API void ik_model_free(ik_model* model);

/* ---- commands ----------------------------------------------------------- */

/* Classification at each theta; q may be INFINITY. */
IK_API ik_status ik_classify(const ik_model* model, const double* thetas, size_t n, double q,
                             const ik_options* options, ik_report** out);
/* K-profiles and dilation indices of the kernel basis and of the kernel. */
IK_API ik_status ik_indices(const ik_model* model, const ik_options* options, ik_report** out);
/* K-profiles of the kernel basis on the grid. */
IK_API ik_status ik_kfun(const ik_model* model, const ik_options* options, ik_report** out);
/* Factorization A = A3 A2 A1 at (theta, q), q finite. */
IK_API ik_status ik_factorize(const ik_model* model, double theta, double q, const ik_options* options,
                              ik_report** out);
/* Sequence identity and bound suites over `count` seeded sequences. When
 * theta > 0, also compares the invertibility criterion for S - I with
 * truncated T0/T1 norm growth for the profile t^e0 (t<=1), t^einf (t>=1). */
IK_API ik_status ik_seqcheck(int count, double theta, double q, double e0, double einf,
                             const ik_options* options, ik_report** out);

/* ---- reports ------------------------------------------------------------ */

/* Report text in the given format, or NULL when the format is unsupported.
 * The string lives as long as the report. */
IK_API const char* ik_report_text(const ik_report* report, ik_format format);
/* 1 when any verdict in the report is Boundary. */
IK_API int ik_report_any_boundary(const ik_report* report);
/* 1 when a property suite or consistency check failed. */
IK_API int ik_report_any_failure(const ik_report* report);
IK_API void ik_report_free(ik_report* report);

#ifdef __cplusplus
}
#endif

#endif /* INTERKERNEL_H */
