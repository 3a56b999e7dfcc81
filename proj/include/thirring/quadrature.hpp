#ifndef THIRRING_QUADRATURE_HPP
#define THIRRING_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace thirring::quad {

using Complex = std::complex<double>;

struct Result {
  Complex value{};
  double est_error = 0.0;
  std::size_t evaluations = 0;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  // Interior points the initial partition must respect (kinks, jump
  // locations, near-singular scales).
  std::vector<double> breakpoints{};
  // Largest phase frequency of the integrand; initial panels are kept
  // below half a period when osc_freq * (b - a) > 10.
  double osc_freq = 0.0;
  std::size_t max_intervals = 200000;
};

// Adaptive Gauss-Kronrod (G7, K15). Throws QuadratureFailure when the
// interval budget is exhausted before the tolerance is met.
Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& opt = {});

Result integrate_real(const std::function<double(double)>& f, double a,
                      double b, const Options& opt = {});

}  // namespace thirring::quad

#endif
