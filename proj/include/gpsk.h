/* C interface to the gpsk library.
 *
 * Matrices and tensors are opaque handles created by the parse/load/generate
 * functions and released with the matching *_free call. Every function that
 * can fail returns a gpsk_status; on failure gpsk_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * gpsk_string_free. Index arrays are 1-based.
 */
#ifndef GPSK_H
#define GPSK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef GPSK_BUILDING
#    define GPSK_API __declspec(dllexport)
#  else
#    define GPSK_API __declspec(dllimport)
#  endif
#else
#  define GPSK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpsk_status {
    GPSK_OK = 0,
    GPSK_ERR_ZERO_INVERSE,
    GPSK_ERR_INDEX_OUT_OF_RANGE,
    GPSK_ERR_FIELD_MISMATCH,
    GPSK_ERR_SHAPE_MISMATCH,
    GPSK_ERR_SINGULAR,
    GPSK_ERR_NOT_FINITE_FIELD,
    GPSK_ERR_ENUMERATION_TOO_LARGE,
    GPSK_ERR_NOT_GENERALIZED_INVERSE,
    GPSK_ERR_UNSUPPORTED_FIELD,
    GPSK_ERR_NOT_SQUARE,
    GPSK_ERR_VERIFICATION_FAILED,
    GPSK_ERR_RANK_HYPOTHESIS_VIOLATED,
    GPSK_ERR_BAD_MODE,
    GPSK_ERR_INFEASIBLE_RANK,
    GPSK_ERR_RETRIES_EXHAUSTED,
    GPSK_ERR_NON_CONJUGATE_SYMMETRIC,
    GPSK_ERR_PARSE,
    GPSK_ERR_IO,
    GPSK_ERR_INVALID_ARGUMENT,
    GPSK_ERR_INTERNAL
} gpsk_status;

typedef enum gpsk_format { GPSK_FORMAT_JSON = 0, GPSK_FORMAT_TEXT = 1 } gpsk_format;

typedef struct gpsk_matrix gpsk_matrix;
typedef struct gpsk_tensor gpsk_tensor;

typedef struct gpsk_budget {
    uint64_t seed;
    size_t samples;    /* draws per sampled quantifier */
    uint64_t enum_cap; /* largest family enumerated exhaustively */
} gpsk_budget;

typedef struct gpsk_geninv_options {
    int enumerate;
    int moore_penrose;
    int drazin;
} gpsk_geninv_options;

/* Index sets for one tensor mode: `count` 1-based indices. */
typedef struct gpsk_index_set {
    const size_t* indices;
    size_t count;
} gpsk_index_set;

GPSK_API const char* gpsk_version(void);
GPSK_API const char* gpsk_status_string(gpsk_status status);
GPSK_API const char* gpsk_last_error(void);
GPSK_API void gpsk_string_free(char* s);

/* seed 0, 16 samples, cap 2^20 */
GPSK_API void gpsk_budget_default(gpsk_budget* budget);

/* ---- matrices ---- */

/* `eps` applies to real and complex fields; 0 selects the default. */
GPSK_API gpsk_status gpsk_matrix_parse(const char* text, double eps, gpsk_matrix** out);
GPSK_API gpsk_status gpsk_matrix_load(const char* path, double eps, gpsk_matrix** out);
/* Random m x n matrix of exact rank `rank` over `field` ("gf 5", "rational", ...). */
GPSK_API gpsk_status gpsk_matrix_generate(const char* field, double eps, size_t rows, size_t cols, size_t rank,
                                          uint64_t seed, gpsk_matrix** out);
GPSK_API void gpsk_matrix_free(gpsk_matrix* m);

GPSK_API gpsk_status gpsk_matrix_format(const gpsk_matrix* m, char** out);
GPSK_API gpsk_status gpsk_matrix_field(const gpsk_matrix* m, char** out);
GPSK_API gpsk_status gpsk_matrix_shape(const gpsk_matrix* m, size_t* rows, size_t* cols);
GPSK_API gpsk_status gpsk_matrix_rank(const gpsk_matrix* m, size_t* rank);

/* ---- tensors ---- */

GPSK_API gpsk_status gpsk_tensor_parse(const char* text, double eps, gpsk_tensor** out);
GPSK_API gpsk_status gpsk_tensor_load(const char* path, double eps, gpsk_tensor** out);
GPSK_API gpsk_status gpsk_tensor_generate(const char* field, double eps, size_t order, const size_t* shape,
                                          const size_t* mlrank, uint64_t seed, gpsk_tensor** out);
/* Real or complex 3-mode tensor A * B with A m x r x l and B r x n x l. */
GPSK_API gpsk_status gpsk_tensor_generate_tproduct(const char* field, double eps, size_t rows, size_t cols,
                                                   size_t depth, size_t inner, uint64_t seed, gpsk_tensor** out);
GPSK_API void gpsk_tensor_free(gpsk_tensor* t);

GPSK_API gpsk_status gpsk_tensor_format(const gpsk_tensor* t, char** out);
GPSK_API gpsk_status gpsk_tensor_field(const gpsk_tensor* t, char** out);
GPSK_API gpsk_status gpsk_tensor_order(const gpsk_tensor* t, size_t* order);
/* Writes `order` values into `shape`. */
GPSK_API gpsk_status gpsk_tensor_shape(const gpsk_tensor* t, size_t* shape);
GPSK_API gpsk_status gpsk_tensor_multilinear_rank(const gpsk_tensor* t, size_t* ranks);

/* ---- verification ----
 *
 * Each verifier writes a report and sets *consistent to 1 when the flags
 * agree with each other, 0 otherwise. Passing NULL index sets selects
 * indices automatically by pivoting. `budget` may be NULL for defaults.
 */

GPSK_API gpsk_status gpsk_verify_cur(const gpsk_matrix* a, const size_t* rows, size_t nrows, const size_t* cols,
                                     size_t ncols, const gpsk_budget* budget, gpsk_format format, char** report,
                                     int* consistent);

/* `rows` and `cols` hold one set per mode; cols index unfolding columns. */
GPSK_API gpsk_status gpsk_verify_fiber(const gpsk_tensor* t, const gpsk_index_set* rows, const gpsk_index_set* cols,
                                       const gpsk_budget* budget, gpsk_format format, char** report, int* consistent);

GPSK_API gpsk_status gpsk_verify_chidori(const gpsk_tensor* t, const gpsk_index_set* rows, const gpsk_budget* budget,
                                         gpsk_format format, char** report, int* consistent);

GPSK_API gpsk_status gpsk_verify_tcur(const gpsk_tensor* t, const size_t* rows, size_t nrows, const size_t* cols,
                                      size_t ncols, const gpsk_budget* budget, gpsk_format format, char** report,
                                      int* consistent);

GPSK_API gpsk_status gpsk_geninv_report(const gpsk_matrix* a, const gpsk_geninv_options* options,
                                        const gpsk_budget* budget, gpsk_format format, char** report,
                                        int* consistent);

#ifdef __cplusplus
}
#endif

#endif /* GPSK_H */
