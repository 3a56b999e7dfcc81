#include "thirring/thirring_c.h"

#include <cstring>
#include <string>

#include "thirring/correlators.hpp"
#include "thirring/crossed.hpp"
#include "thirring/errors.hpp"
#include "thirring/lattice.hpp"
#include "thirring/symplectic.hpp"
#include "thirring/verify.hpp"
#include "thirring/weyl.hpp"

using thirring::Complex;
using thirring::TestFn;

struct th_testfn {
  TestFn fn;
};
struct th_weyl {
  thirring::WeylElement el;
};
struct th_crossed {
  thirring::CrossedElement el;

  explicit th_crossed(thirring::CrossedElement e) : el(std::move(e)) {}
};

namespace {

thread_local std::string g_last_error;

th_status code_of(const thirring::Error& e) {
  switch (e.code()) {
    case thirring::ErrorCode::invalid_argument: return TH_ERR_INVALID_ARGUMENT;
    case thirring::ErrorCode::quadrature_failure: return TH_ERR_QUADRATURE;
    case thirring::ErrorCode::divergent_norm: return TH_ERR_DIVERGENT_NORM;
    case thirring::ErrorCode::not_differentiable: return TH_ERR_NOT_DIFFERENTIABLE;
    case thirring::ErrorCode::branch_ambiguity: return TH_ERR_BRANCH_AMBIGUITY;
    case thirring::ErrorCode::inside_cutoff: return TH_ERR_INSIDE_CUTOFF;
    case thirring::ErrorCode::invalid_klein_vector: return TH_ERR_INVALID_KLEIN;
    case thirring::ErrorCode::config_too_large: return TH_ERR_CONFIG_TOO_LARGE;
    case thirring::ErrorCode::dimension_mismatch: return TH_ERR_DIMENSION_MISMATCH;
    case thirring::ErrorCode::extrapolation_failure: return TH_ERR_EXTRAPOLATION;
    case thirring::ErrorCode::incompatible_statistics:
      return TH_ERR_INCOMPATIBLE_STATISTICS;
    case thirring::ErrorCode::parse_error: return TH_ERR_PARSE;
    default: return TH_ERR_UNKNOWN;
  }
}

template <typename Fn>
th_status guarded(Fn&& fn) {
  try {
    fn();
    return TH_OK;
  } catch (const thirring::Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TH_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return TH_ERR_UNKNOWN;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

th_status require(bool ok, const char* what) {
  if (ok) return TH_OK;
  g_last_error = what;
  return TH_ERR_INVALID_ARGUMENT;
}

thirring::ThermalParams tp_of(double beta, double eps_reg) {
  return thirring::ThermalParams{beta, eps_reg};
}

void set_complex(Complex z, double* re, double* im) {
  if (re) *re = z.real();
  if (im) *im = z.imag();
}

th_status apply_auto(const th_weyl* w, const thirring::AutomorphismSpec& spec,
                     th_weyl** out) {
  if (th_status s = require(w && out, "null argument")) return s;
  return guarded(
      [&] { *out = new th_weyl{thirring::apply_automorphism(spec, w->el)}; });
}

}  // namespace

extern "C" {

const char* th_version(void) { return "thirring 1.0.0"; }

const char* th_last_error_message(void) { return g_last_error.c_str(); }

void th_string_free(char* s) { delete[] s; }

/* ---- test functions ---------------------------------------------------- */

th_status th_testfn_from_json(const char* json, th_testfn** out) {
  if (th_status s = require(json && out, "null argument")) return s;
  return guarded([&] { *out = new th_testfn{TestFn::from_json(json)}; });
}

th_status th_testfn_to_json(const th_testfn* f, char** out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(f->fn.to_json()); });
}

void th_testfn_free(th_testfn* f) { delete f; }

th_status th_testfn_eval(const th_testfn* f, double x, double* out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded([&] { *out = f->fn.eval(x); });
}

th_status th_testfn_fourier(const th_testfn* f, double p, double* re, double* im) {
  if (th_status s = require(f != nullptr, "null argument")) return s;
  return guarded([&] { set_complex(f->fn.fourier(p), re, im); });
}

th_status th_testfn_shift(const th_testfn* f, double t, th_testfn** out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded([&] { *out = new th_testfn{f->fn.shifted(t)}; });
}

th_status th_testfn_derivative(const th_testfn* f, th_testfn** out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded([&] { *out = new th_testfn{f->fn.weak_derivative()}; });
}

th_status th_testfn_reflect(const th_testfn* f, th_testfn** out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded([&] { *out = new th_testfn{f->fn.reflected()}; });
}

th_status th_testfn_scale(const th_testfn* f, double c, th_testfn** out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded([&] { *out = new th_testfn{f->fn.scaled(c)}; });
}

th_status th_testfn_add(const th_testfn* f, const th_testfn* g, th_testfn** out) {
  if (th_status s = require(f && g && out, "null argument")) return s;
  return guarded([&] { *out = new th_testfn{f->fn + g->fn}; });
}

/* ---- symplectic / thermal ----------------------------------------------- */

th_status th_sigma(const th_testfn* f, const th_testfn* g, double* out) {
  if (th_status s = require(f && g && out, "null argument")) return s;
  return guarded([&] { *out = thirring::sigma(f->fn, g->fn); });
}

th_status th_sigma_step_limit(const th_testfn* f, double delta, double eps,
                              double* out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded([&] { *out = thirring::sigma_step_limit(f->fn, delta, eps); });
}

th_status th_thermal_quadratic(const th_testfn* f, double beta, double eps_reg,
                               double* out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded(
      [&] { *out = thirring::thermal_quadratic(f->fn, tp_of(beta, eps_reg)); });
}

th_status th_weyl_expectation(const th_testfn* f, double beta, double eps_reg,
                              double* out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded(
      [&] { *out = thirring::weyl_expectation(f->fn, tp_of(beta, eps_reg)); });
}

th_status th_pair_cross_factor(const th_testfn* a, const th_testfn* b,
                               double beta, double eps_reg, double* re,
                               double* im) {
  if (th_status s = require(a && b, "null argument")) return s;
  return guarded([&] {
    set_complex(thirring::pair_cross_factor(a->fn, b->fn, tp_of(beta, eps_reg)),
                re, im);
  });
}

th_status th_current_covariance(const th_testfn* f, const th_testfn* g,
                                double beta, double eps_reg, double* re,
                                double* im, double* est_error) {
  if (th_status s = require(f && g, "null argument")) return s;
  return guarded([&] {
    const auto rep =
        thirring::current_covariance(f->fn, g->fn, tp_of(beta, eps_reg));
    set_complex(rep.value, re, im);
    if (est_error) *est_error = rep.est_error;
  });
}

/* ---- Weyl --------------------------------------------------------------- */

th_status th_weyl_make(const th_testfn* exponent, double phase_re,
                       double phase_im, th_weyl** out) {
  if (th_status s = require(exponent && out, "null argument")) return s;
  return guarded([&] {
    *out = new th_weyl{
        thirring::WeylElement(exponent->fn, Complex(phase_re, phase_im))};
  });
}

th_status th_weyl_from_json(const char* json, th_weyl** out) {
  if (th_status s = require(json && out, "null argument")) return s;
  return guarded(
      [&] { *out = new th_weyl{thirring::WeylElement::from_json(json)}; });
}

th_status th_weyl_to_json(const th_weyl* w, char** out) {
  if (th_status s = require(w && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(w->el.to_json()); });
}

void th_weyl_free(th_weyl* w) { delete w; }

th_status th_weyl_multiply(const th_weyl* a, const th_weyl* b, th_weyl** out) {
  if (th_status s = require(a && b && out, "null argument")) return s;
  return guarded([&] { *out = new th_weyl{thirring::multiply(a->el, b->el)}; });
}

th_status th_weyl_adjoint(const th_weyl* w, th_weyl** out) {
  if (th_status s = require(w && out, "null argument")) return s;
  return guarded([&] { *out = new th_weyl{thirring::adjoint(w->el)}; });
}

th_status th_weyl_phase(const th_weyl* w, double* re, double* im) {
  if (th_status s = require(w != nullptr, "null argument")) return s;
  set_complex(w->el.phase(), re, im);
  return TH_OK;
}

th_status th_weyl_exchange_phase(const th_testfn* f, const th_testfn* g,
                                 double* re, double* im) {
  if (th_status s = require(f && g, "null argument")) return s;
  return guarded(
      [&] { set_complex(thirring::exchange_phase_weyl(f->fn, g->fn), re, im); });
}

th_status th_weyl_apply_shift(const th_weyl* w, double t, th_weyl** out) {
  return apply_auto(w, thirring::AutomorphismSpec::shift(t), out);
}

th_status th_weyl_apply_parity(const th_weyl* w, th_weyl** out) {
  return apply_auto(w, thirring::AutomorphismSpec::parity(), out);
}

th_status th_weyl_apply_gauge(const th_weyl* w, const th_testfn* generator,
                              double strength, th_weyl** out) {
  if (th_status s = require(generator != nullptr, "null argument")) return s;
  return apply_auto(w, thirring::AutomorphismSpec::gauge(generator->fn, strength),
                    out);
}

th_status th_weyl_apply_structural_point(const th_weyl* w, double x,
                                         th_weyl** out) {
  return apply_auto(w, thirring::AutomorphismSpec::structural_point(x), out);
}

th_status th_weyl_apply_structural(const th_weyl* w, const th_testfn* gbar,
                                   th_weyl** out) {
  if (th_status s = require(gbar != nullptr, "null argument")) return s;
  return apply_auto(w, thirring::AutomorphismSpec::structural(gbar->fn), out);
}

/* ---- correlators ---------------------------------------------------------- */

th_status th_bare_two_point(double u, double beta, double eps_reg, double* re,
                            double* im) {
  return guarded([&] {
    set_complex(thirring::bare_two_point(u, tp_of(beta, eps_reg)), re, im);
  });
}

th_status th_bare_two_point_series(double u, double beta, double eps_reg,
                                   int nmax, double* re, double* im) {
  return guarded([&] {
    set_complex(thirring::bare_two_point_series(u, tp_of(beta, eps_reg), nmax),
                re, im);
  });
}

th_status th_bare_kms_check(double u, double beta, double* out) {
  if (th_status s = require(out != nullptr, "null argument")) return s;
  return guarded(
      [&] { *out = thirring::bare_kms_check(u, tp_of(beta, 1e-12)); });
}

th_status th_anyon_two_point(double alpha, double u, double beta,
                             double eps_reg, double* re, double* im) {
  return guarded([&] {
    set_complex(thirring::anyon_two_point(alpha, u, tp_of(beta, eps_reg)), re,
                im);
  });
}

th_status th_renorm_constant(double alpha, double eps, double* out) {
  if (th_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = thirring::renorm_constant(alpha, eps); });
}

th_status th_exchange_phase(double alpha, double t, double eps, double* re,
                            double* im) {
  return guarded(
      [&] { set_complex(thirring::exchange_phase(alpha, t, eps), re, im); });
}

th_status th_d_epsilon(double u, double eps, double* out) {
  if (th_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = thirring::d_epsilon(u, eps); });
}

th_status th_alpha_commutator(double alpha, double u, double beta,
                              double eps_reg, double* re, double* im) {
  return guarded([&] {
    set_complex(
        thirring::alpha_commutator_expectation(alpha, u, tp_of(beta, eps_reg)),
        re, im);
  });
}

th_status th_nonchiral_exchange(int chirality_i, int chirality_j, long cr_num,
                                long cr_den, long cl_num, long cl_den, double t,
                                double eps, double* re, double* im) {
  return guarded([&] {
    const thirring::KleinSetup klein(cr_num, cr_den, cl_num, cl_den);
    const auto ci = chirality_i == 0 ? thirring::Chirality::left
                                     : thirring::Chirality::right;
    const auto cj = chirality_j == 0 ? thirring::Chirality::left
                                     : thirring::Chirality::right;
    set_complex(thirring::nonchiral_exchange(ci, cj, klein, t, eps), re, im);
  });
}

th_status th_multiplet_exchange(size_t k, size_t l, const long* c_num,
                                const long* c_den, size_t n_components,
                                double u, double* re, double* im) {
  if (th_status s = require(c_num && c_den, "null argument")) return s;
  return guarded([&] {
    std::vector<std::pair<long, long>> cs;
    cs.reserve(n_components);
    for (size_t i = 0; i < n_components; ++i) cs.push_back({c_num[i], c_den[i]});
    set_complex(thirring::multiplet_exchange(k, l, cs, u), re, im);
  });
}

th_status th_coupling_statistics(double alpha, double* lambda,
                                 int* is_fermionic, int* is_bosonic, long* n) {
  return guarded([&] {
    const auto stats = thirring::coupling_statistics_map(alpha);
    if (lambda) *lambda = stats.lambda;
    if (is_fermionic) *is_fermionic = stats.is_fermionic ? 1 : 0;
    if (is_bosonic) *is_bosonic = stats.is_bosonic ? 1 : 0;
    if (n) *n = stats.n.value_or(-1);
  });
}

/* ---- lattice -------------------------------------------------------------- */

th_status th_lattice_schwinger(double L, int M, double beta, const th_testfn* f,
                               const th_testfn* g, double* lattice_re,
                               double* lattice_im, double* continuum_sigma,
                               double* rel_error) {
  if (th_status s = require(f && g, "null argument")) return s;
  return guarded([&] {
    const thirring::LatticeConfig cfg(L, M, beta);
    const auto rep = thirring::schwinger_check(f->fn, g->fn, cfg);
    set_complex(rep.lattice_value, lattice_re, lattice_im);
    if (continuum_sigma) *continuum_sigma = rep.continuum_sigma;
    if (rel_error) *rel_error = rep.rel_error;
  });
}

th_status th_lattice_occupation(double L, int M, double beta, int j,
                                double* out) {
  if (th_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] {
    const thirring::LatticeConfig cfg(L, M, beta);
    *out = cfg.occupation(j);
  });
}

th_status th_lattice_bare_correlator(double L, int M, double beta, double x,
                                     double xp, double* re, double* im) {
  return guarded([&] {
    const thirring::LatticeConfig cfg(L, M, beta);
    set_complex(thirring::lattice_bare_correlator(x, xp, cfg), re, im);
  });
}

th_status th_lattice_shift_limit(double L, int M, double beta,
                                 const double* kernel_diag, size_t n_diag,
                                 int shift_j, double* re, double* im) {
  if (th_status s = require(kernel_diag != nullptr, "null argument")) return s;
  return guarded([&] {
    const thirring::LatticeConfig cfg(L, M, beta);
    std::vector<double> diag(kernel_diag, kernel_diag + n_diag);
    const auto spec = thirring::KernelSpec::diagonal(std::move(diag));
    set_complex(thirring::shift_limit_check(spec, shift_j, cfg), re, im);
  });
}

/* ---- crossed product -------------------------------------------------------- */

th_status th_crossed_from_json(const char* json, th_crossed** out) {
  if (th_status s = require(json && out, "null argument")) return s;
  return guarded(
      [&] { *out = new th_crossed(thirring::CrossedElement::from_json(json)); });
}

th_status th_crossed_to_json(const th_crossed* e, char** out) {
  if (th_status s = require(e && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(e->el.to_json()); });
}

void th_crossed_free(th_crossed* e) { delete e; }

th_status th_crossed_multiply(const th_crossed* f, const th_crossed* g,
                              double twist_point, th_crossed** out) {
  if (th_status s = require(f && g && out, "null argument")) return s;
  return guarded([&] {
    *out = new th_crossed(thirring::multiply_crossed(
        f->el, g->el, thirring::AutomorphismSpec::structural_point(twist_point)));
  });
}

th_status th_crossed_gauge(const th_crossed* f, double nu, th_crossed** out) {
  if (th_status s = require(f && out, "null argument")) return s;
  return guarded(
      [&] { *out = new th_crossed(thirring::gauge_automorphism(f->el, nu)); });
}

th_status th_sector_inner(int k, int n, const th_testfn* f, const th_testfn* h,
                          const th_testfn* gbar, double beta, double eps_reg,
                          double* re, double* im) {
  if (th_status s = require(f && h && gbar, "null argument")) return s;
  return guarded([&] {
    set_complex(thirring::sector_inner(k, n, f->fn, h->fn, gbar->fn,
                                       tp_of(beta, eps_reg)),
                re, im);
  });
}

th_status th_zone_statistics(long n, long nbar, long m, double* r,
                             int* zone_class) {
  return guarded([&] {
    const auto zs = thirring::zone_statistics(thirring::ZoneSpec(n, nbar), m);
    if (r) *r = zs.r;
    if (zone_class) *zone_class = static_cast<int>(zs.cls);
  });
}

th_status th_step_exchange_sigma(double x, double delta, double* out) {
  if (th_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = thirring::step_exchange_sigma(x, delta); });
}

th_status th_extendibility_check(const th_testfn* rho_gbar,
                                 const th_testfn* gbar, double beta,
                                 double eps_reg, int* out) {
  if (th_status s = require(rho_gbar && gbar && out, "null argument")) return s;
  return guarded([&] {
    *out = thirring::extendibility_check(rho_gbar->fn, gbar->fn,
                                         tp_of(beta, eps_reg))
               ? 1
               : 0;
  });
}

/* ---- verification ------------------------------------------------------------ */

th_status th_run_verify(const char* suite, char** report_json, int* all_passed) {
  return guarded([&] {
    const auto results = thirring::run_verify(suite ? suite : "");
    if (report_json) *report_json = dup_string(thirring::verify_report_json(results));
    if (all_passed) {
      int ok = 1;
      for (const auto& r : results)
        if (!r.passed) ok = 0;
      *all_passed = ok;
    }
  });
}

}  // extern "C"
