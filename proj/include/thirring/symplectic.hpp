#ifndef THIRRING_SYMPLECTIC_HPP
#define THIRRING_SYMPLECTIC_HPP

#include <complex>
#include <optional>

#include "thirring/testfn.hpp"

namespace thirring {

struct ThermalParams {
  double beta;                // inverse temperature, > 0 for state evaluation
  double epsilon_reg = 1e-6;  // iε regulator, > 0

  void validate() const;
};

// Quadrature cutoffs for the momentum-space thermal integrals. β sets the
// only scale: defaults are Λ_UV = 1e4/β and Λ_IR = 1e−6/β.
struct ThermalQuadLimits {
  double lambda_uv = 0.0;  // 0 = default
  double lambda_ir = 0.0;
  double abs_tol = 1e-10;

  double uv(double beta) const { return lambda_uv > 0.0 ? lambda_uv : 1e4 / beta; }
  double ir(double beta) const { return lambda_ir > 0.0 ? lambda_ir : 1e-6 / beta; }
};

enum class CovMethod { closed_form, momentum_quadrature, position_kernel };

struct CovarianceReport {
  Complex value;
  CovMethod method;
  double est_error = 0.0;

  std::string to_json() const;
  static CovarianceReport from_json(const std::string& text);
};

// σ(f,g) = (1/4π) ∫ (f'(x) g(x) − f(x) g'(x)) dx, with distributional jump
// parts of f', g' evaluated against the other argument (midpoint rule at a
// jump, i.e. the sgn(0) = 0 convention). Equivalently the momentum form
// iσ(f,g) = ∫ dp/(2π)² p f~(p) g~(−p).
double sigma(const TestFn& f, const TestFn& g, double abs_tol = 1e-12);

// Momentum-space evaluation of the same form (cross-check path); requires
// both arguments integrable.
double sigma_momentum(const TestFn& f, const TestFn& g, double abs_tol = 1e-9);

// σ(f, Φ_{δ,ε}) in the windowed-average form
//   −(1/2πε) ( ∫_{−ε}^0 − ∫_{−ε−δ}^{−δ} ) f(x) dx,
// which converges to −f(0)/2π as δ→∞, ε→0.
double sigma_step_limit(const TestFn& f, double delta, double eps,
                        double abs_tol = 1e-12);

// Q_β(f) = ∫ dp/(2π)² p/(1−e^{−βp}) |f~(p)|². DivergentNorm when the
// integrand fails the UV Cauchy test or f is not integrable.
double thermal_quadratic(const TestFn& f, const ThermalParams& tp,
                         const ThermalQuadLimits& lims = {});

// Diagnostic variant with an explicit UV cutoff and no divergence screening.
double thermal_quadratic_cutoff(const TestFn& f, const ThermalParams& tp,
                                double lambda_uv, double abs_tol = 1e-10);

// ω̄_β(e^{ij_f}) = exp(−Q_β(f)/2); the divergent-norm branch returns exactly 0.
double weyl_expectation(const TestFn& f, const ThermalParams& tp,
                        const ThermalQuadLimits& lims = {});

// ⟨j_a j_b⟩ = ∫ dp/(2π)² p/(1−e^{−βp}) a~(p) b~(−p); the §4 cross factor is
// ⟨e^{−ij_a} e^{ij_b}⟩ = ⟨e^{−ij_a}⟩⟨e^{ij_b}⟩ exp(⟨j_a j_b⟩).
Complex pair_cross_exponent(const TestFn& a, const TestFn& b,
                            const ThermalParams& tp,
                            const ThermalQuadLimits& lims = {});
Complex pair_cross_factor(const TestFn& a, const TestFn& b,
                          const ThermalParams& tp,
                          const ThermalQuadLimits& lims = {});

// ω_β(j_f j_g) = −∫ dy dy' f(y) g(y') / (2β)² sinh²(π(y−y'+iε)/β),
// evaluated as a position-space double quadrature.
CovarianceReport current_covariance(const TestFn& f, const TestFn& g,
                                    const ThermalParams& tp);

// Same correlator through the momentum kernel with the e^{−εp} factor that
// the +iε prescription induces.
CovarianceReport current_covariance_momentum(const TestFn& f, const TestFn& g,
                                             const ThermalParams& tp,
                                             const ThermalQuadLimits& lims = {});

}  // namespace thirring

#endif
