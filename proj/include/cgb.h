/* C API for the chengold library: opaque handles plus error codes. All
 * functions return cgb_status unless stated; outputs go through pointers.
 * Strings returned via char** are heap-allocated; release with cgb_string_free.
 */
#ifndef CGB_H
#define CGB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cgb_status {
    CGB_OK = 0,
    CGB_ERR_INVALID_ARGUMENT = 1,
    CGB_ERR_OUT_OF_RANGE = 2,
    CGB_ERR_CAPACITY = 3,
    CGB_ERR_IO = 4,
    CGB_ERR_INTERRUPTED = 5,
    CGB_ERR_CONVERGENCE = 6,
    CGB_ERR_INTERNAL = 7
} cgb_status;

const char* cgb_status_name(cgb_status s);
/* Message of the most recent failure on this thread; empty string if none. */
const char* cgb_last_error(void);

void cgb_string_free(char* s);

/* ---- factor table ---- */
typedef struct cgb_table cgb_table;

cgb_status cgb_table_build(uint64_t limit, cgb_table** out);
cgb_status cgb_table_save(const cgb_table* t, const char* path);
cgb_status cgb_table_load(const char* path, cgb_table** out);
void cgb_table_free(cgb_table* t);
uint64_t cgb_table_limit(const cgb_table* t);

/* name: phi | mu | tau | bigomega | smallomega | vonmangoldt */
cgb_status cgb_mult_fn(const cgb_table* t, const char* name, uint64_t n, double* out);
cgb_status cgb_is_prime(const cgb_table* t, uint64_t n, int* out);
cgb_status cgb_is_chen_prime(const cgb_table* t, uint64_t p, int* out);

/* ---- characters ---- */
cgb_status cgb_ramanujan_sum(uint64_t q, int64_t n, int64_t* out);
/* |gauss sum| of the chi with the given index within the characters mod q */
cgb_status cgb_gauss_sum_abs(uint64_t q, uint64_t chi_index, double* out);
cgb_status cgb_character_count(uint64_t q, uint64_t* out);

/* JSON report {level, quality, clear, candidates:[{modulus, interval:[lo,hi]}]} */
cgb_status cgb_exceptional_zero_search(uint64_t P, double kappa, uint64_t grid_budget,
                                       char** json_out);

/* kind: lambda | prime | e3 | rough */
cgb_status cgb_gallagher(const cgb_table* t, const char* kind, uint64_t N, uint64_t R,
                         double delta1, uint64_t rough_P, double* value, double* defect);
cgb_status cgb_bv(const cgb_table* t, const char* kind, uint64_t N, uint64_t Q, uint64_t P,
                  double delta1, uint64_t rough_P, double* out);

/* ---- sieves ---- */
cgb_status cgb_cramer(const cgb_table* t, uint64_t n, uint64_t P, double* out);
cgb_status cgb_fundlem_gap(const cgb_table* t, uint64_t n, uint64_t N, double delta1,
                           double beta, double* out);
cgb_status cgb_linear_fF(double s, double* f, double* F);

/* sandwich + fundamental-lemma audit over n <= N; nonzero *violations on failure */
cgb_status cgb_sieve_audit(const cgb_table* t, uint64_t N, double beta, uint64_t* violations,
                           char** json_out);

/* ---- models ---- */
cgb_status cgb_bump_G(double x, double* out);
cgb_status cgb_b_R(const cgb_table* t, int64_t n, uint64_t N, uint64_t R, double* out);
cgb_status cgb_lambda_Rr(const cgb_table* t, uint64_t n, uint64_t R, uint64_t r, double* out);
cgb_status cgb_H_R(const cgb_table* t, uint64_t n, uint64_t R, double* out);
/* sweep of (r/phi(r))|Lambda_{R,r}(n)| <= H_R(n) over squarefree n <= limit */
cgb_status cgb_models_check(const cgb_table* t, uint64_t limit, uint64_t R, uint64_t r,
                            uint64_t* violations);

/* ---- chen ---- */
cgb_status cgb_chen_constant(double delta1, double tol, double* out);
/* minorisation audit over prime n in (N/2, N]; CSV written when path non-NULL */
cgb_status cgb_chen_audit(const cgb_table* t, uint64_t N, double delta1, const char* csv_path,
                          uint64_t* violations);

/* ---- goldbach ---- */
cgb_status cgb_singular_series(const cgb_table* t, uint64_t m, uint64_t cutoff, double* value,
                               double* tail_bound);
cgb_status cgb_rep_count(const cgb_table* t, uint64_t m, uint64_t* ordered,
                         uint64_t* unordered);

/* Exceptional-set scan; JSON ScanReport; checkpoint honored when non-NULL.
 * Returns CGB_ERR_INTERRUPTED if cgb_request_cancel fired mid-scan. */
cgb_status cgb_scan(const cgb_table* t, uint64_t N, const char* checkpoint_path,
                    char** json_out);
/* Per-m detail CSV (m, rep_count, singular_series, ratio) over m == 4 (mod 6). */
cgb_status cgb_scan_details(const cgb_table* t, uint64_t N, const char* csv_path);
void cgb_request_cancel(void);
void cgb_reset_cancel(void);

/* Default worker count for parallel sections; 0 = all hardware threads. */
void cgb_set_threads(unsigned threads);

/* additive check at one m: lhs, main = X*S(m), ratio */
cgb_status cgb_additive_check(const cgb_table* t, uint64_t m, uint64_t X, uint64_t P1,
                              double D1, double beta, double* lhs, double* main_term,
                              double* ratio);

/* exceptional variant: sigma1, sigma2 and the S6 Weil-bounded sum */
cgb_status cgb_exceptional_additive_check(const cgb_table* t, uint64_t m, uint64_t X,
                                          uint64_t r, int which_case, double* sigma1,
                                          double* sigma2, double* s6, double* lhs,
                                          double* predicted);

/* ---- fourier ---- */
cgb_status cgb_bR_transform_check(uint64_t N, uint64_t R, unsigned samples, uint64_t seed,
                                  double* max_major_dev, double* max_minor);

/* Grid Fourier norms of the (Lambda - 1) window over (N/2, N]: the full grid
 * maximum with its certified defect, and the major/minor restrictions for
 * arcs of order R. */
cgb_status cgb_fourier_norms(const cgb_table* t, uint64_t N, uint64_t R, unsigned oversample,
                             double* full, double* defect, double* major_part,
                             double* minor_part);

#ifdef __cplusplus
}
#endif

#endif /* CGB_H */
