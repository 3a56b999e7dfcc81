#include "thirring/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "thirring/errors.hpp"
#include "thirring/quadrature.hpp"

namespace thirring {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPiSq = 4.0 * kPi * kPi;  // (2π)²

// p/(1 − e^{−βp}), regular at p = 0 with value 1/β.
double thermal_kernel(double p, double beta) {
  const double x = beta * p;
  if (std::abs(x) < 1e-5) return (1.0 + 0.5 * x + x * x / 12.0) / beta;
  const double denom = -std::expm1(-x);
  return p / denom;
}

struct DerivParts {
  PiecewiseLinear pl;  // piecewise-constant regular part (compact support)
  std::vector<PolyGaussianAtom> pg;
  std::vector<PiecewiseLinear::DeltaTerm> deltas;
};

DerivParts derivative_parts(const CanonicalForm& c) {
  DerivParts out;
  auto d = c.pl.derivative();
  out.pl = std::move(d.regular);
  out.deltas = std::move(d.jumps);
  out.pg.reserve(c.pg.size());
  for (const auto& a : c.pg) out.pg.push_back(a.derivative());
  return out;
}

// Exact ∫ a·b dx for piecewise-linear factors, at least one of which has
// compact support. Products of linear pieces are quadratic, so per-segment
// Simpson is exact.
double pl_product_integral(const PiecewiseLinear& a, const PiecewiseLinear& b) {
  const PiecewiseLinear* compact = nullptr;
  const PiecewiseLinear* other = nullptr;
  if (a.compact_support() && !a.knots().empty()) {
    compact = &a;
    other = &b;
  } else if (b.compact_support() && !b.knots().empty()) {
    compact = &b;
    other = &a;
  } else {
    if (a.knots().empty() || b.knots().empty()) return 0.0;
    throw QuadratureFailure("product of two non-decaying piecewise parts");
  }
  const double lo = compact->knots().front().x;
  const double hi = compact->knots().back().x;
  std::vector<double> xs{lo, hi};
  for (const auto& k : compact->knots())
    if (k.x > lo && k.x < hi) xs.push_back(k.x);
  for (const auto& k : other->knots())
    if (k.x > lo && k.x < hi) xs.push_back(k.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i], x1 = xs[i + 1];
    const double f0 = a.eval_right(x0) * b.eval_right(x0);
    const double f1 = a.eval_left(x1) * b.eval_left(x1);
    const double fm = (0.5 * (a.eval_right(x0) + a.eval_left(x1))) *
                      (0.5 * (b.eval_right(x0) + b.eval_left(x1)));
    total += (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
  }
  return total;
}

void add_pg_hints(std::vector<double>& xs, const PolyGaussianAtom& a) {
  xs.push_back(a.center);
  for (double k : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    xs.push_back(a.center - k * a.width);
    xs.push_back(a.center + k * a.width);
  }
}

double pl_pg_integral(const PiecewiseLinear& pl, const PolyGaussianAtom& pg,
                      double abs_tol) {
  double lo = pg.center - pg.bound();
  double hi = pg.center + pg.bound();
  if (pl.compact_support()) {
    if (pl.knots().empty()) return 0.0;
    lo = std::max(lo, pl.knots().front().x);
    hi = std::min(hi, pl.knots().back().x);
    if (lo >= hi) return 0.0;
  }
  quad::Options opt;
  opt.abs_tol = abs_tol;
  for (const auto& k : pl.knots()) opt.breakpoints.push_back(k.x);
  add_pg_hints(opt.breakpoints, pg);
  auto r = quad::integrate_real(
      [&](double x) { return pl.eval(x) * pg.eval(x); }, lo, hi, opt);
  return r.value.real();
}

double pg_pg_integral(const PolyGaussianAtom& a, const PolyGaussianAtom& b,
                      double abs_tol) {
  const double lo = std::max(a.center - a.bound(), b.center - b.bound());
  const double hi = std::min(a.center + a.bound(), b.center + b.bound());
  if (lo >= hi) return 0.0;
  quad::Options opt;
  opt.abs_tol = abs_tol;
  add_pg_hints(opt.breakpoints, a);
  add_pg_hints(opt.breakpoints, b);
  auto r = quad::integrate_real(
      [&](double x) { return a.eval(x) * b.eval(x); }, lo, hi, opt);
  return r.value.real();
}

// ∫ (d/dx f) g dx including distributional parts of f'.
double derivative_pairing(const CanonicalForm& f, const CanonicalForm& g,
                          double abs_tol) {
  DerivParts df = derivative_parts(f);
  double total = 0.0;
  if (!df.pl.knots().empty()) {
    total += pl_product_integral(df.pl, g.pl);
    for (const auto& atom : g.pg) total += pl_pg_integral(df.pl, atom, abs_tol);
  }
  for (const auto& datom : df.pg) {
    total += pl_pg_integral(g.pl, datom, abs_tol);
    for (const auto& atom : g.pg) total += pg_pg_integral(datom, atom, abs_tol);
  }
  for (const auto& d : df.deltas) total += d.weight * g.eval(d.location);
  return total;
}

}  // namespace

void ThermalParams::validate() const {
  if (!(beta > 0.0)) throw InvalidArgument("thermal state requires beta > 0");
  if (!(epsilon_reg > 0.0)) throw InvalidArgument("epsilon_reg must be > 0");
}

namespace {

const char* method_name(CovMethod m) {
  switch (m) {
    case CovMethod::closed_form: return "closed_form";
    case CovMethod::momentum_quadrature: return "momentum_quadrature";
    case CovMethod::position_kernel: return "position_kernel";
  }
  return "unknown";
}

}  // namespace

std::string CovarianceReport::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = {value.real(), value.imag()};
  j["method"] = method_name(method);
  j["est_error"] = est_error;
  return j.dump();
}

CovarianceReport CovarianceReport::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    CovarianceReport rep;
    rep.value = Complex(j.at("value").at(0).get<double>(),
                        j.at("value").at(1).get<double>());
    const std::string m = j.at("method").get<std::string>();
    if (m == "closed_form")
      rep.method = CovMethod::closed_form;
    else if (m == "momentum_quadrature")
      rep.method = CovMethod::momentum_quadrature;
    else if (m == "position_kernel")
      rep.method = CovMethod::position_kernel;
    else
      throw ParseError("unknown covariance method: " + m);
    rep.est_error = j.at("est_error").get<double>();
    if (rep.est_error < 0.0) throw ParseError("est_error must be >= 0");
    return rep;
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ParseError(std::string("bad covariance report: ") + e.what());
  }
}

double sigma(const TestFn& f, const TestFn& g, double abs_tol) {
  const double piece_tol = abs_tol / 8.0;
  const double fg = derivative_pairing(f.canonical(), g.canonical(), piece_tol);
  const double gf = derivative_pairing(g.canonical(), f.canonical(), piece_tol);
  return (fg - gf) / (4.0 * kPi);
}

double sigma_momentum(const TestFn& f, const TestFn& g, double abs_tol) {
  const auto& cf = f.canonical();
  const auto& cg = g.canonical();
  if (!cf.integrable() || !cg.integrable())
    throw DivergentNorm("sigma_momentum requires integrable arguments");

  double min_width = 0.0;
  bool have_pg = false;
  for (const auto& a : cf.pg) {
    min_width = have_pg ? std::min(min_width, a.width) : a.width;
    have_pg = true;
  }
  for (const auto& a : cg.pg) {
    min_width = have_pg ? std::min(min_width, a.width) : a.width;
    have_pg = true;
  }
  double lambda = have_pg ? 30.0 / min_width : 0.0;
  if (!cf.pl.trivial() || !cg.pl.trivial()) lambda = std::max(lambda, 5e3);

  quad::Options opt;
  opt.abs_tol = abs_tol;
  opt.osc_freq = cf.position_extent() + cg.position_extent();
  for (double s = lambda; s > lambda * 1e-6; s /= 4.0) opt.breakpoints.push_back(s);
  auto r = quad::integrate(
      [&](double p) { return p * cf.fourier(p) * cg.fourier(-p); }, 0.0,
      lambda, opt);
  return 2.0 * r.value.imag() / kTwoPiSq;
}

double sigma_step_limit(const TestFn& f, double delta, double eps,
                        double abs_tol) {
  if (!(delta > 0.0) || !(eps > 0.0))
    throw InvalidArgument("sigma_step_limit: delta and eps must be > 0");
  const auto& c = f.canonical();
  quad::Options opt;
  opt.abs_tol = abs_tol;
  opt.breakpoints = c.panel_hints();
  auto near = quad::integrate_real([&](double x) { return c.eval(x); }, -eps,
                                   0.0, opt);
  auto far = quad::integrate_real([&](double x) { return c.eval(x); },
                                  -eps - delta, -delta, opt);
  return -(near.value.real() - far.value.real()) / (2.0 * kPi * eps);
}

namespace {

double thermal_integrand(const CanonicalForm& c, double p, double beta) {
  const Complex ft = c.fourier(p);
  return thermal_kernel(p, beta) * std::norm(ft) / kTwoPiSq;
}

// Two-sided Cauchy tail increment ∫_{Λ≤|p|≤2Λ} of the thermal integrand in
// oscillation-averaged closed form. For a piecewise-linear part,
// |f~(p)|² averages to Σ(jumps)²/p² + Σ(slope jumps)²/p⁴ over a window, and
// the symmetrized kernel p/(1−e^{−βp}) + (p→−p) equals p exactly.
double tail_increment(const CanonicalForm& c, double lambda) {
  const auto d = c.pl.derivative();
  double jump_sq = 0.0;
  for (const auto& j : d.jumps) jump_sq += j.weight * j.weight;
  double slope_sq = 0.0;
  for (const auto& k : d.regular.knots()) {
    const double s = k.right - k.left;
    slope_sq += s * s;
  }
  const double log2 = 0.6931471805599453;
  return (jump_sq * log2 + slope_sq * 3.0 / (8.0 * lambda * lambda)) /
         kTwoPiSq;
}

// Total variation of the piecewise-constant slope function; |f~(p)| ≤ TV/p²
// for jump-free piecewise parts.
double slope_variation(const PiecewiseLinear& pl) {
  const auto d = pl.derivative();
  double tv = 0.0;
  for (const auto& k : d.regular.knots()) tv += std::abs(k.right - k.left);
  return tv;
}

// Effective UV cutoff: beyond p the oscillatory remainder of the thermal
// integrand is bounded by env(p)·period ≈ [C² K(p)/p⁴/(2π)²]·(π/osc),
// which must stay below the tolerance. Purely Gaussian inputs cut at the
// Gaussian decay scale instead.
double effective_uv(const CanonicalForm& c, double lambda_uv, double osc,
                    double tol) {
  double lam = 0.0;
  for (const auto& a : c.pg) lam = std::max(lam, 40.0 / a.width);
  if (!c.pl.trivial()) {
    if (!c.pl.derivative().jumps.empty()) return lambda_uv;  // divergent class
    const double c2 = slope_variation(c.pl);
    if (c2 > 0.0 && osc > 0.0) {
      const double p3 = c2 * c2 / (4.0 * kPi * osc * std::max(tol, 1e-14));
      lam = std::max(lam, std::cbrt(p3));
    } else {
      return lambda_uv;
    }
  }
  lam = std::max(lam, 64.0);  // always cover the thermal scales
  return std::min(lambda_uv, lam);
}

double thermal_quadratic_impl(const CanonicalForm& c, const ThermalParams& tp,
                              double lambda_uv, double lambda_ir,
                              double abs_tol, bool screen_divergence) {
  const double beta = tp.beta;
  const double osc = 2.0 * c.position_extent();

  if (screen_divergence) {
    // Partial integrals must satisfy a Cauchy criterion in the UV: the
    // [Λ,2Λ] increments have to be small and decaying.
    const double t1 = tail_increment(c, 1e3);
    const double t2 = tail_increment(c, 1e4);
    if (t2 > 1e-6 && t2 > 0.25 * t1)
      throw DivergentNorm("thermal quadratic form diverges in the UV");
  }

  const double lam = effective_uv(c, lambda_uv, osc, abs_tol);
  quad::Options opt;
  opt.abs_tol = abs_tol;
  opt.rel_tol = 1e-9;
  opt.osc_freq = osc;
  opt.max_intervals = 600000;
  opt.breakpoints = {-lambda_ir, lambda_ir, -1.0 / beta, 1.0 / beta};
  for (double s = lam; s > lam * 1e-6; s /= 4.0) {
    opt.breakpoints.push_back(s);
    opt.breakpoints.push_back(-s);
  }
  auto r = quad::integrate_real(
      [&](double p) { return thermal_integrand(c, p, beta); }, -lam, lam, opt);
  return std::max(0.0, r.value.real());
}

}  // namespace

double thermal_quadratic(const TestFn& f, const ThermalParams& tp,
                         const ThermalQuadLimits& lims) {
  tp.validate();
  const auto& c = f.canonical();
  if (!c.integrable())
    throw DivergentNorm("thermal quadratic form undefined for non-decaying input");
  if (c.is_zero(1e-300)) return 0.0;
  return thermal_quadratic_impl(c, tp, lims.uv(tp.beta), lims.ir(tp.beta),
                                lims.abs_tol, true);
}

double thermal_quadratic_cutoff(const TestFn& f, const ThermalParams& tp,
                                double lambda_uv, double abs_tol) {
  tp.validate();
  const auto& c = f.canonical();
  if (!c.integrable())
    throw DivergentNorm("thermal quadratic form undefined for non-decaying input");
  if (c.is_zero(1e-300)) return 0.0;
  return thermal_quadratic_impl(c, tp, lambda_uv, 1e-6 / tp.beta, abs_tol,
                                false);
}

double weyl_expectation(const TestFn& f, const ThermalParams& tp,
                        const ThermalQuadLimits& lims) {
  tp.validate();
  try {
    return std::exp(-0.5 * thermal_quadratic(f, tp, lims));
  } catch (const DivergentNorm&) {
    // ‖f‖_β = ∞: the Weyl operator acts as zero in H_β.
    return 0.0;
  }
}

Complex pair_cross_exponent(const TestFn& a, const TestFn& b,
                            const ThermalParams& tp,
                            const ThermalQuadLimits& lims) {
  tp.validate();
  const auto& ca = a.canonical();
  const auto& cb = b.canonical();
  if (!ca.integrable() || !cb.integrable())
    throw DivergentNorm("pair cross factor requires integrable arguments");
  if (ca.is_zero(1e-300) || cb.is_zero(1e-300)) return 0.0;
  quad::Options opt;
  opt.abs_tol = lims.abs_tol;
  opt.rel_tol = 1e-9;
  opt.osc_freq = ca.position_extent() + cb.position_extent();
  opt.max_intervals = 600000;
  const double lambda =
      std::min(effective_uv(ca, lims.uv(tp.beta), opt.osc_freq, lims.abs_tol),
               effective_uv(cb, lims.uv(tp.beta), opt.osc_freq, lims.abs_tol));
  opt.breakpoints = {0.0, -1.0 / tp.beta, 1.0 / tp.beta};
  for (double s = lambda; s > lambda * 1e-6; s /= 4.0) {
    opt.breakpoints.push_back(s);
    opt.breakpoints.push_back(-s);
  }
  auto r = quad::integrate(
      [&](double p) {
        return thermal_kernel(p, tp.beta) * ca.fourier(p) * cb.fourier(-p) /
               kTwoPiSq;
      },
      -lambda, lambda, opt);
  return r.value;
}

Complex pair_cross_factor(const TestFn& a, const TestFn& b,
                          const ThermalParams& tp,
                          const ThermalQuadLimits& lims) {
  return std::exp(pair_cross_exponent(a, b, tp, lims));
}

CovarianceReport current_covariance(const TestFn& f, const TestFn& g,
                                    const ThermalParams& tp) {
  tp.validate();
  const auto& cf = f.canonical();
  const auto& cg = g.canonical();
  if (!cf.integrable() || !cg.integrable())
    throw DivergentNorm("current covariance requires integrable arguments");
  if (cf.is_zero(1e-300) || cg.is_zero(1e-300))
    return {Complex(0.0), CovMethod::position_kernel, 0.0};

  const double beta = tp.beta;
  const double eps = tp.epsilon_reg;
  auto kernel = [beta, eps](double u) {
    const Complex s = std::sinh(kPi * Complex(u, eps) / beta);
    const Complex d = 2.0 * beta * s;
    return -1.0 / (d * d);
  };

  auto [flo, fhi] = cf.finite_hull();
  auto [glo, ghi] = cg.finite_hull();

  double inner_err = 0.0;
  quad::Options outer_opt;
  outer_opt.abs_tol = 1e-9;
  outer_opt.breakpoints = cf.panel_hints();
  auto outer = quad::integrate(
      [&](double y) -> Complex {
        quad::Options inner_opt;
        inner_opt.abs_tol = 1e-10;
        inner_opt.breakpoints = cg.panel_hints();
        // Resolve the iε-regulated singular scale around y' = y.
        for (double s = eps; s < (ghi - glo); s *= 4.0) {
          inner_opt.breakpoints.push_back(y - s);
          inner_opt.breakpoints.push_back(y + s);
        }
        inner_opt.breakpoints.push_back(y);
        auto inner = quad::integrate(
            [&](double yp) { return cg.eval(yp) * kernel(y - yp); }, glo, ghi,
            inner_opt);
        inner_err = std::max(inner_err, inner.est_error);
        return cf.eval(y) * inner.value;
      },
      flo, fhi, outer_opt);

  CovarianceReport rep;
  rep.value = outer.value;
  rep.method = CovMethod::position_kernel;
  rep.est_error = outer.est_error + inner_err * (fhi - flo);
  return rep;
}

CovarianceReport current_covariance_momentum(const TestFn& f, const TestFn& g,
                                             const ThermalParams& tp,
                                             const ThermalQuadLimits& lims) {
  tp.validate();
  const auto& cf = f.canonical();
  const auto& cg = g.canonical();
  if (!cf.integrable() || !cg.integrable())
    throw DivergentNorm("current covariance requires integrable arguments");
  if (cf.is_zero(1e-300) || cg.is_zero(1e-300))
    return {Complex(0.0), CovMethod::momentum_quadrature, 0.0};
  quad::Options opt;
  opt.abs_tol = lims.abs_tol;
  opt.rel_tol = 1e-9;
  opt.osc_freq = cf.position_extent() + cg.position_extent();
  opt.max_intervals = 600000;
  const double lambda =
      std::min(effective_uv(cf, lims.uv(tp.beta), opt.osc_freq, lims.abs_tol),
               effective_uv(cg, lims.uv(tp.beta), opt.osc_freq, lims.abs_tol));
  opt.breakpoints = {0.0, -1.0 / tp.beta, 1.0 / tp.beta};
  for (double s = lambda; s > lambda * 1e-6; s /= 4.0) {
    opt.breakpoints.push_back(s);
    opt.breakpoints.push_back(-s);
  }
  auto r = quad::integrate(
      [&](double p) {
        return thermal_kernel(p, tp.beta) * std::exp(-tp.epsilon_reg * p) *
               cf.fourier(p) * cg.fourier(-p) / kTwoPiSq;
      },
      -lambda, lambda, opt);
  return {r.value, CovMethod::momentum_quadrature, r.est_error};
}

}  // namespace thirring
