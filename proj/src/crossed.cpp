#include "thirring/crossed.hpp"

#include <cmath>

#include <json.hpp>

#include "thirring/errors.hpp"

namespace thirring {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Phase functional of the structural automorphism: α W(f) = e^{iσ̄(f)} W(f)
// with σ̄(f) = f(x) for the point twist and σ(f, ḡ) for the function twist
// (the Ad(W(ḡ)) order, which the point twist is the sharp limit of).
double structural_phase(const AutomorphismSpec& twist, const TestFn& f) {
  switch (twist.kind) {
    case AutomorphismSpec::Kind::structural_point:
      return f.eval(twist.parameter);
    case AutomorphismSpec::Kind::structural_fn:
      if (!twist.function)
        throw InvalidArgument("structural automorphism needs its defining function");
      return sigma(f, *twist.function);
    default:
      throw InvalidArgument("crossed-product twist must be a structural automorphism");
  }
}

}  // namespace

CrossedElement::CrossedElement(double alpha_tag) : alpha_tag_(alpha_tag) {
  if (!(alpha_tag > 0.0)) throw InvalidArgument("statistics tag must be > 0");
}

CrossedElement CrossedElement::identity(double alpha_tag) {
  CrossedElement e(alpha_tag);
  e.add_term(0, Complex(1.0, 0.0), TestFn::zero());
  return e;
}

CrossedElement CrossedElement::charge_power(int n, const WeylElement& coefficient,
                                            double alpha_tag) {
  CrossedElement e(alpha_tag);
  e.add_term(n, coefficient.phase(), coefficient.exponent());
  return e;
}

void CrossedElement::add_term(int n, Complex weight, TestFn exponent) {
  coeffs_[n].terms.push_back({weight, std::move(exponent)});
}

void CrossedElement::prune(double tol) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    auto& terms = it->second.terms;
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [tol](const WeylCombination::Term& t) {
                                 return std::abs(t.weight) <= tol;
                               }),
                terms.end());
    if (terms.empty())
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

CrossedElement multiply_crossed(const CrossedElement& F, const CrossedElement& G,
                                const AutomorphismSpec& twist) {
  if (std::abs(F.alpha_tag() - G.alpha_tag()) > 1e-12)
    throw IncompatibleStatistics(
        "elements with different statistics parameters live in orthogonal sectors");
  CrossedElement out(F.alpha_tag());
  for (const auto& [n, fterms] : F.coefficients()) {
    for (const auto& [k, gterms] : G.coefficients()) {
      const int m = n + k;
      for (const auto& ft : fterms.terms) {
        for (const auto& gt : gterms.terms) {
          // F_n · α^n(G_k): the twist contributes e^{i n σ̄(g)}, the Weyl
          // product its cocycle e^{(i/2)σ(g,f)}.
          const double twist_phase =
              static_cast<double>(n) * structural_phase(twist, gt.exponent);
          const double cocycle = 0.5 * sigma(gt.exponent, ft.exponent);
          const Complex w = ft.weight * gt.weight *
                            std::polar(1.0, twist_phase + cocycle);
          out.add_term(m, w, (ft.exponent + gt.exponent).compacted());
        }
      }
    }
  }
  out.prune();
  return out;
}

CrossedElement crossed_adjoint(const CrossedElement& F,
                               const AutomorphismSpec& twist) {
  CrossedElement out(F.alpha_tag());
  for (const auto& [n, terms] : F.coefficients()) {
    for (const auto& t : terms.terms) {
      // (F*)_{−n} = α^{−n}(A_n*), with A* = Σ conj(w) W(−f).
      const TestFn neg = t.exponent.scaled(-1.0).compacted();
      const double twist_phase =
          -static_cast<double>(n) * structural_phase(twist, neg);
      out.add_term(-n, std::conj(t.weight) * std::polar(1.0, twist_phase), neg);
    }
  }
  out.prune();
  return out;
}

CrossedElement gauge_automorphism(const CrossedElement& F, double nu) {
  CrossedElement out(F.alpha_tag());
  for (const auto& [n, terms] : F.coefficients()) {
    const Complex phase = std::polar(1.0, 2.0 * kPi * nu * static_cast<double>(n));
    for (const auto& t : terms.terms)
      out.add_term(n, phase * t.weight, t.exponent);
  }
  return out;
}

namespace {

// Replace every jump of the piecewise part by a one-sided linear transition
// of width eps (the φ_ε idealization of the step).
PiecewiseLinear regularize_jumps(const PiecewiseLinear& pl, double eps) {
  const std::vector<PiecewiseLinear::DeltaTerm> jumps = pl.derivative().jumps;
  if (jumps.empty()) return pl;
  PiecewiseLinear result = pl;
  for (const auto& j : jumps) {
    // Subtract the sharp step, add the ramped rise ending at the jump point.
    result = PiecewiseLinear::combine(
        result, 1.0,
        PiecewiseLinear::step(j.location, StepOrientation::theta_of_x_minus_x0),
        -j.weight);
    PiecewiseLinear rise({{j.location - eps, 0.0, 0.0}, {j.location, 1.0, 1.0}},
                         0.0, 1.0);
    result = PiecewiseLinear::combine(result, 1.0, rise, j.weight);
  }
  return result;
}

}  // namespace

bool extendibility_check(const TestFn& rho_gbar, const TestFn& gbar,
                         const ThermalParams& tp) {
  tp.validate();
  const TestFn diff = rho_gbar - gbar;
  const CanonicalForm& c = diff.canonical();
  TestFn regularized = TestFn::piecewise(regularize_jumps(c.pl, tp.epsilon_reg));
  for (const auto& atom : c.pg)
    regularized = regularized +
                  TestFn::poly_gaussian(atom.coeffs, atom.center, atom.width);
  try {
    (void)thermal_quadratic(regularized, tp);
    return true;
  } catch (const DivergentNorm&) {
    return false;
  }
}

Complex sector_inner(int k, int n, const TestFn& f, const TestFn& h,
                     const TestFn& gbar, const ThermalParams& tp) {
  if (k != n) return Complex(0.0, 0.0);
  const TestFn combined = (f + gbar.scaled(static_cast<double>(n))).compacted();
  const double phase = -sigma(combined, h);
  return std::polar(1.0, phase) * weyl_expectation(h, tp);
}

ZoneSpec::ZoneSpec(long n_, long nbar_) : n(n_), nbar(nbar_) {
  if (n < 0) throw InvalidArgument("zone parameter n must be >= 0");
  if (nbar < 1) throw InvalidArgument("zone parameter nbar must be >= 1");
}

ZoneStatistics zone_statistics(const ZoneSpec& zs, long m) {
  ZoneStatistics out;
  out.r = std::sqrt(2.0 * static_cast<double>(zs.n) + 1.0) *
          static_cast<double>(m) / static_cast<double>(zs.nbar);
  const long two_nbar = 2 * zs.nbar;
  const long mod2 = ((m % two_nbar) + two_nbar) % two_nbar;
  const long mod1 = ((m % zs.nbar) + zs.nbar) % zs.nbar;
  if (mod2 == 0)
    out.cls = ZoneClass::bosonic;
  else if (mod1 == 0)
    out.cls = ZoneClass::fermionic;
  else
    out.cls = ZoneClass::anyonic;
  return out;
}

double step_exchange_sigma(double x, double delta) {
  if (delta == 0.0)
    throw InvalidArgument("step exchange form needs a nonzero separation");
  const double scale = 4.0 * kPi * kPi;  // ḡ = 2πΘ: σ scales by (2π)²
  std::vector<double> values;
  for (double eps = 0.5 * std::abs(delta); values.size() < 4; eps *= 0.5) {
    const TestFn a = TestFn::ramp(eps).shifted(x);
    const TestFn b = TestFn::ramp(eps).shifted(x + delta);
    values.push_back(scale * sigma(a, b));
  }
  const double last = values.back();
  const double prev = values[values.size() - 2];
  const double extrapolated = last + (last - prev);
  if (std::abs(last - prev) > 1e-6)
    throw ExtrapolationFailure("ramp regularization of the step pair did not settle");
  return extrapolated;
}

// ---------------------------------------------------------------------------
// JSON

std::string CrossedElement::to_json() const {
  nlohmann::ordered_json j;
  j["alpha_tag"] = alpha_tag_;
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [n, comb] : coeffs_) {
    auto entry = nlohmann::ordered_json::object();
    entry["n"] = n;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& t : comb.terms) {
      coeffs.push_back({{"weight", {t.weight.real(), t.weight.imag()}},
                        {"exponent",
                         nlohmann::ordered_json::parse(t.exponent.to_json())}});
    }
    entry["coefficients"] = coeffs;
    terms.push_back(entry);
  }
  j["terms"] = terms;
  return j.dump();
}

CrossedElement CrossedElement::from_json(const std::string& text) {
  try {
    auto j = nlohmann::ordered_json::parse(text);
    CrossedElement e(j.at("alpha_tag").get<double>());
    for (const auto& entry : j.at("terms")) {
      const int n = entry.at("n").get<int>();
      for (const auto& c : entry.at("coefficients")) {
        const auto& w = c.at("weight");
        e.add_term(n, Complex(w.at(0).get<double>(), w.at(1).get<double>()),
                   TestFn::from_json(c.at("exponent").dump()));
      }
    }
    return e;
  } catch (const nlohmann::ordered_json::exception& ex) {
    throw ParseError(std::string("bad crossed-element descriptor: ") + ex.what());
  }
}

}  // namespace thirring
