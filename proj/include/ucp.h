/* C API for the UCP scattering engine.
 *
 * All functions return ucp_status; UCP_OK means every output argument was
 * written. On failure ucp_last_error() yields a thread-local detail
 * message. Handles from ucp_spec_create() must be released with
 * ucp_spec_free(). Units: hbar = 1, 2m = 1 (E = k^2).
 */
#ifndef UCP_H
#define UCP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ucp_spec ucp_spec; /* opaque */

typedef enum ucp_status {
    UCP_OK = 0,
    UCP_ERR_BAD_ARGUMENT = 1,     /* null pointer, bad enum, bad grid */
    UCP_ERR_INVALID_SPEC = 2,     /* constraint violations */
    UCP_ERR_DOMAIN = 3,           /* k <= 0, zeta out of range, ... */
    UCP_ERR_LAYOUT_TOO_LARGE = 4, /* N^S above the segment cap */
    UCP_ERR_DEGENERATE_ENERGY = 5,
    UCP_ERR_NONPHYSICAL = 6,
    UCP_ERR_INSUFFICIENT_POINTS = 7,
    UCP_ERR_BUFFER_TOO_SMALL = 8,
    UCP_ERR_INTERNAL = 9
} ucp_status;

typedef enum ucp_method {
    UCP_METHOD_CLOSED = 0, /* O(S) super-periodic closed form */
    UCP_METHOD_ORACLE = 1, /* O(N^S) brute-force transfer matrices */
    UCP_METHOD_BOTH = 2
} ucp_method;

typedef enum ucp_fit_method {
    UCP_FIT_EXACT = 0,      /* R = 1 - T at area-preserved height */
    UCP_FIT_ASYMPTOTIC = 1  /* (V0 L / 2 N^S k)^2 prod U^2 large-k law */
} ucp_fit_method;

const char* ucp_version(void);
const char* ucp_status_name(ucp_status status);
/* thread-local detail message for the most recent failure */
ucp_status ucp_last_error(char* buf, size_t cap);

/* ---- spec ------------------------------------------------------------ */

ucp_status ucp_spec_create(int N, double rho, double mu, double nu, int S,
                           double L, double V, ucp_spec** out);
void ucp_spec_free(ucp_spec* spec);

/* ok=1 and an empty report for a valid spec; ok=0 and a semicolon-joined
 * violation list otherwise. Never fails on constraint violations. */
ucp_status ucp_spec_validate(const ucp_spec* spec, int* ok,
                             char* report, size_t report_cap);

/* ---- geometry --------------------------------------------------------- */

ucp_status ucp_segment_width(const ucp_spec* spec, int s, double* out);
ucp_status ucp_gap_width(const ucp_spec* spec, int s, double* out);
ucp_status ucp_super_period(const ucp_spec* spec, int q, double* out);
ucp_status ucp_q_pochhammer(double alpha, double beta, int p, double* out);

ucp_status ucp_layout_count(const ucp_spec* spec, long long cap, long long* count);
/* starts/ends hold buf_len doubles each; requires buf_len >= N^S */
ucp_status ucp_layout_build(const ucp_spec* spec, long long cap,
                            double* starts, double* ends, long long buf_len,
                            long long* written);

/* ---- fractal descriptors ---------------------------------------------- */

ucp_status ucp_fractal_dimension(int N, double rho, double* out);
ucp_status ucp_fractal_dimension_alt(double zeta, double* out);
/* eps_max_defined=0 (and eps_max=NaN) for N=2 and N=3 */
ucp_status ucp_lacunarity(int N, double zeta, double* g_c, double* eps_min,
                          double* eps_reg, double* eps_max, int* eps_max_defined);
ucp_status ucp_lacunarity_epsilon(const ucp_spec* spec, double* out); /* d_1 */

/* ---- transmission ------------------------------------------------------ */

/* method=UCP_METHOD_BOTH also writes |T_closed - T_oracle| to discrepancy
 * (pass NULL to skip). degenerate_warn flags |k^2 - V| < 1e-6; the result
 * is still produced via the series branch. */
ucp_status ucp_transmission(const ucp_spec* spec, double k, ucp_method method,
                            double* T, double* R, double* discrepancy,
                            int* degenerate_warn);

/* uniform k grid inclusive of endpoints; k/t/r hold n doubles. With
 * UCP_METHOD_BOTH, t_oracle/r_oracle (n doubles each) and max_discrepancy
 * are also written; otherwise pass NULL. workers=0 picks the hardware
 * count; results are independent of it. */
ucp_status ucp_sweep(const ucp_spec* spec, double k_min, double k_max,
                     long long n, ucp_method method, int workers,
                     double* k, double* t, double* r,
                     double* t_oracle, double* r_oracle, double* max_discrepancy);

/* closed-form T over a rho-k grid, rho-major; invalid rho rows carry NaN
 * and row_valid 0. t holds n_rho*n_k doubles, row_valid n_rho bytes. */
ucp_status ucp_grid(const ucp_spec* template_spec,
                    double rho_min, double rho_max, long long n_rho,
                    double k_min, double k_max, long long n_k, int workers,
                    double* rho_axis, double* k_axis, double* t,
                    unsigned char* row_valid);

/* pairwise sup_k |log10 T_si - log10 T_sj|; dist holds n_stages^2 doubles
 * (row-major, zero diagonal). */
ucp_status ucp_saturation(const ucp_spec* family, const int* stages, int n_stages,
                          double k_min, double k_max, long long n_points,
                          int workers, double* dist);

/* OLS on (log10 k, log10 R) over a log-uniform grid at area-preserved
 * height; R < 1e-14 points are excluded and counted. */
ucp_status ucp_scaling_fit(const ucp_spec* spec, double V0, double k_lo, double k_hi,
                           long long n_points, ucp_fit_method method,
                           double* slope, double* intercept, double* residual_rms,
                           long long* n_used, long long* n_excluded, double* height);

/* refined T >= threshold peaks: k_star/t_star/width hold up to cap entries;
 * count receives the number found (may exceed cap; only cap are written).
 * plateau=1 marks an everywhere-transmitting scan (no peaks reported). */
ucp_status ucp_find_resonances(const ucp_spec* spec, double k_min, double k_max,
                               long long coarse_points, double threshold,
                               double* k_star, double* t_star, double* width,
                               long long cap, long long* count, int* plateau);

/* V_S = L V0 / (N^S b_S), the stage height preserving total barrier area */
ucp_status ucp_area_preserving_height(const ucp_spec* spec, double V0, double* out);

/* large-k reflection estimate at area-preserved height plus the exact
 * companion 1 - T; k_valid flags the k^2 >= 100 V_S precondition */
ucp_status ucp_reflection_asymptotic(const ucp_spec* spec, double V0, double k,
                                     double* estimate, double* exact_reflection,
                                     double* height, int* k_valid);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UCP_H */
