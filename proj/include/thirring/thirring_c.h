/* C interface to the thirring library: opaque handles, integer status
 * codes, caller-visible complex values as (re, im) pairs. Strings returned
 * through th_* out-parameters are heap-allocated; release them with
 * th_string_free. Error details for the last failing call on the current
 * thread are available via th_last_error_message. */

#ifndef THIRRING_C_H
#define THIRRING_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum th_status {
  TH_OK = 0,
  TH_ERR_INVALID_ARGUMENT = 1,
  TH_ERR_QUADRATURE = 2,
  TH_ERR_DIVERGENT_NORM = 3,
  TH_ERR_NOT_DIFFERENTIABLE = 4,
  TH_ERR_BRANCH_AMBIGUITY = 5,
  TH_ERR_INSIDE_CUTOFF = 6,
  TH_ERR_INVALID_KLEIN = 7,
  TH_ERR_CONFIG_TOO_LARGE = 8,
  TH_ERR_DIMENSION_MISMATCH = 9,
  TH_ERR_EXTRAPOLATION = 10,
  TH_ERR_INCOMPATIBLE_STATISTICS = 11,
  TH_ERR_PARSE = 12,
  TH_ERR_UNKNOWN = 99
} th_status;

typedef struct th_testfn th_testfn;
typedef struct th_weyl th_weyl;
typedef struct th_crossed th_crossed;

const char* th_version(void);
const char* th_last_error_message(void);
void th_string_free(char* s);

/* ---- test functions ---------------------------------------------------- */

th_status th_testfn_from_json(const char* json, th_testfn** out);
th_status th_testfn_to_json(const th_testfn* f, char** out);
void th_testfn_free(th_testfn* f);

th_status th_testfn_eval(const th_testfn* f, double x, double* out);
th_status th_testfn_fourier(const th_testfn* f, double p, double* re, double* im);
th_status th_testfn_shift(const th_testfn* f, double t, th_testfn** out);
th_status th_testfn_derivative(const th_testfn* f, th_testfn** out);
th_status th_testfn_reflect(const th_testfn* f, th_testfn** out);
th_status th_testfn_scale(const th_testfn* f, double c, th_testfn** out);
th_status th_testfn_add(const th_testfn* f, const th_testfn* g, th_testfn** out);

/* ---- symplectic / thermal forms ---------------------------------------- */

th_status th_sigma(const th_testfn* f, const th_testfn* g, double* out);
th_status th_sigma_step_limit(const th_testfn* f, double delta, double eps,
                              double* out);
th_status th_thermal_quadratic(const th_testfn* f, double beta, double eps_reg,
                               double* out);
th_status th_weyl_expectation(const th_testfn* f, double beta, double eps_reg,
                              double* out);
th_status th_pair_cross_factor(const th_testfn* a, const th_testfn* b,
                               double beta, double eps_reg, double* re,
                               double* im);
th_status th_current_covariance(const th_testfn* f, const th_testfn* g,
                                double beta, double eps_reg, double* re,
                                double* im, double* est_error);

/* ---- Weyl elements ------------------------------------------------------ */

th_status th_weyl_make(const th_testfn* exponent, double phase_re,
                       double phase_im, th_weyl** out);
th_status th_weyl_from_json(const char* json, th_weyl** out);
th_status th_weyl_to_json(const th_weyl* w, char** out);
void th_weyl_free(th_weyl* w);
th_status th_weyl_multiply(const th_weyl* a, const th_weyl* b, th_weyl** out);
th_status th_weyl_adjoint(const th_weyl* w, th_weyl** out);
th_status th_weyl_phase(const th_weyl* w, double* re, double* im);
th_status th_weyl_exchange_phase(const th_testfn* f, const th_testfn* g,
                                 double* re, double* im);
th_status th_weyl_apply_shift(const th_weyl* w, double t, th_weyl** out);
th_status th_weyl_apply_parity(const th_weyl* w, th_weyl** out);
th_status th_weyl_apply_gauge(const th_weyl* w, const th_testfn* generator,
                              double strength, th_weyl** out);
th_status th_weyl_apply_structural_point(const th_weyl* w, double x,
                                         th_weyl** out);
th_status th_weyl_apply_structural(const th_weyl* w, const th_testfn* gbar,
                                   th_weyl** out);

/* ---- correlators --------------------------------------------------------- */

th_status th_bare_two_point(double u, double beta, double eps_reg, double* re,
                            double* im);
th_status th_bare_two_point_series(double u, double beta, double eps_reg,
                                   int nmax, double* re, double* im);
th_status th_bare_kms_check(double u, double beta, double* out);
th_status th_anyon_two_point(double alpha, double u, double beta,
                             double eps_reg, double* re, double* im);
th_status th_renorm_constant(double alpha, double eps, double* out);
th_status th_exchange_phase(double alpha, double t, double eps, double* re,
                            double* im);
th_status th_d_epsilon(double u, double eps, double* out);
th_status th_alpha_commutator(double alpha, double u, double beta,
                              double eps_reg, double* re, double* im);
/* chirality: 0 = left, 1 = right; Klein constants as num/den multiples of π */
th_status th_nonchiral_exchange(int chirality_i, int chirality_j, long cr_num,
                                long cr_den, long cl_num, long cl_den, double t,
                                double eps, double* re, double* im);
th_status th_multiplet_exchange(size_t k, size_t l, const long* c_num,
                                const long* c_den, size_t n_components,
                                double u, double* re, double* im);
th_status th_coupling_statistics(double alpha, double* lambda,
                                 int* is_fermionic, int* is_bosonic, long* n);

/* ---- lattice oracle ------------------------------------------------------ */

th_status th_lattice_schwinger(double L, int M, double beta, const th_testfn* f,
                               const th_testfn* g, double* lattice_re,
                               double* lattice_im, double* continuum_sigma,
                               double* rel_error);
th_status th_lattice_occupation(double L, int M, double beta, int j,
                                double* out);
th_status th_lattice_bare_correlator(double L, int M, double beta, double x,
                                     double xp, double* re, double* im);
th_status th_lattice_shift_limit(double L, int M, double beta,
                                 const double* kernel_diag, size_t n_diag,
                                 int shift_j, double* re, double* im);

/* ---- crossed product ------------------------------------------------------ */

th_status th_crossed_from_json(const char* json, th_crossed** out);
th_status th_crossed_to_json(const th_crossed* e, char** out);
void th_crossed_free(th_crossed* e);
/* twist: structural point automorphism at x */
th_status th_crossed_multiply(const th_crossed* f, const th_crossed* g,
                              double twist_point, th_crossed** out);
th_status th_crossed_gauge(const th_crossed* f, double nu, th_crossed** out);
th_status th_sector_inner(int k, int n, const th_testfn* f, const th_testfn* h,
                          const th_testfn* gbar, double beta, double eps_reg,
                          double* re, double* im);
th_status th_zone_statistics(long n, long nbar, long m, double* r,
                             int* zone_class /* 0 bose, 1 fermi, 2 anyon */);
th_status th_step_exchange_sigma(double x, double delta, double* out);
th_status th_extendibility_check(const th_testfn* rho_gbar,
                                 const th_testfn* gbar, double beta,
                                 double eps_reg, int* out);

/* ---- verification --------------------------------------------------------- */

/* suite = NULL or "" runs every suite; *all_passed set to 0/1. */
th_status th_run_verify(const char* suite, char** report_json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* THIRRING_C_H */
