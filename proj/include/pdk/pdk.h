/*
 * C interface to the pdk numerical library.
 *
 * Every fallible function returns a pdk_status. On failure the message of the
 * most recent error on the calling thread is available from pdk_last_error()
 * until the next failing call on that thread. Objects are opaque handles
 * released with their matching *_free function; strings returned through
 * char** parameters are released with pdk_string_free. Output parameters are
 * written only on success.
 */
#ifndef PDK_PDK_H
#define PDK_PDK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PDK_BUILDING)
#    define PDK_API __declspec(dllexport)
#  else
#    define PDK_API __declspec(dllimport)
#  endif
#else
#  define PDK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdk_status {
  PDK_OK = 0,
  PDK_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or shape */
  PDK_ERR_DOMAIN = 2,           /* input outside the operation's domain */
  PDK_ERR_NOT_PSD = 3,          /* matrix or kernel is not positive semidefinite */
  PDK_ERR_SINGULAR = 4,         /* system is singular to working precision */
  PDK_ERR_NO_CONVERGENCE = 5,   /* iteration budget exhausted */
  PDK_ERR_PRECONDITION = 6,     /* a verified hypothesis does not hold */
  PDK_ERR_IO = 7,               /* file could not be opened, read or written */
  PDK_ERR_FORMAT = 8,           /* malformed or unsupported file content */
  PDK_ERR_INTERNAL = 9          /* unexpected failure, including out of memory */
} pdk_status;

typedef struct pdk_matrix pdk_matrix;
typedef struct pdk_kernel pdk_kernel;

PDK_API const char* pdk_last_error(void);
PDK_API const char* pdk_status_string(pdk_status status);
/* Nonzero for failures of the computation itself (NOT_PSD, SINGULAR,
 * NO_CONVERGENCE, PRECONDITION) as opposed to bad input. */
PDK_API int pdk_status_is_numerical(pdk_status status);
PDK_API void pdk_string_free(char* s);

/* ---- matrices (row-major doubles) ---- */
PDK_API pdk_status pdk_matrix_create(size_t rows, size_t cols, const double* data, pdk_matrix** out);
PDK_API pdk_status pdk_matrix_read_csv(const char* path, int skip_header, pdk_matrix** out);
PDK_API pdk_status pdk_matrix_write_csv(const pdk_matrix* m, const char* path);
PDK_API size_t pdk_matrix_rows(const pdk_matrix* m);
PDK_API size_t pdk_matrix_cols(const pdk_matrix* m);
PDK_API const double* pdk_matrix_data(const pdk_matrix* m);
PDK_API void pdk_matrix_free(pdk_matrix* m);

/* ---- kernels ----
 * Specification strings have the form family[:key=value[;key=value...]]:
 *   gaussian:sigma=S
 *   sinc
 *   pw:a=A1,A2,...[;normalized=0|1]
 *   intersection:weights=W1,W2,...       points are 0/1 indicator rows
 *   explicit:file=PATH                    Gram read from CSV; points are indices
 */
PDK_API pdk_status pdk_kernel_parse(const char* spec, pdk_kernel** out);
PDK_API const char* pdk_kernel_family(const pdk_kernel* k);
PDK_API void pdk_kernel_free(pdk_kernel* k);
/* Gram matrix over the rows of `points`. */
PDK_API pdk_status pdk_kernel_gram(const pdk_kernel* k, const pdk_matrix* points, pdk_matrix** out);

/* ---- Kaczmarz ---- */
typedef enum pdk_row_selection {
  PDK_ROWS_CYCLIC = 0,
  PDK_ROWS_RANDOMIZED = 1, /* probability proportional to squared row norm */
  PDK_ROWS_UNIFORM = 2
} pdk_row_selection;

typedef struct pdk_kaczmarz_options {
  double tol;          /* stop when max |Ax - b| <= tol */
  size_t max_sweeps;
  pdk_row_selection mode;
  uint64_t seed;
} pdk_kaczmarz_options;

PDK_API void pdk_kaczmarz_options_default(pdk_kaczmarz_options* opts);
/* b holds one entry per row of a, as a column or a row. Not converging is
 * not an error: *converged reports it. solution may be NULL. report_json
 * receives {"iterations","converged","final_residual","residual_history"}. */
PDK_API pdk_status pdk_kaczmarz_solve(const pdk_matrix* a, const pdk_matrix* b,
                                      const pdk_kaczmarz_options* opts, pdk_matrix** solution,
                                      char** report_json, int* converged);

/* ---- PCA image compression ----
 * Reads a PGM, keeps k principal components with image rows as
 * observations, writes the reconstruction as binary PGM and returns
 * {"components","mse","compression_ratio","eigenvalues"} with the MSE taken
 * before quantization. */
PDK_API pdk_status pdk_pca_compress_pgm(const char* input_path, size_t k, const char* output_path,
                                        char** report_json);

/* ---- frames ----
 * One frame vector per row; weights (a column or row, one per vector) may be
 * NULL. Returns {"a","b","is_frame","vectors","dim"}. */
PDK_API pdk_status pdk_frame_bounds(const pdk_matrix* vectors, const pdk_matrix* weights,
                                    char** report_json);

/* ---- Gaussian processes ----
 * n realizations of the mean-zero process with covariance k over the rows of
 * points; the result is n x rows(points). */
PDK_API pdk_status pdk_gp_sample(const pdk_kernel* k, const pdk_matrix* points, size_t n,
                                 uint64_t seed, pdk_matrix** out);

#ifdef __cplusplus
}
#endif

#endif /* PDK_PDK_H */
