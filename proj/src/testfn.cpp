#include "thirring/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <json.hpp>

#include "thirring/errors.hpp"
#include "thirring/quadrature.hpp"

namespace thirring {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

// (sin u − u cos u)/u²
double sinc_moment(double u) {
  if (std::abs(u) < 1e-3) {
    const double u2 = u * u;
    return u / 3.0 - u * u2 / 30.0 + u * u2 * u2 / 840.0;
  }
  return (std::sin(u) - u * std::cos(u)) / (u * u);
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots, double v_neg,
                                 double v_pos)
    : knots_(std::move(knots)), v_neg_(v_neg), v_pos_(v_pos) {
  if (!knots_.empty()) {
    knots_.front().left = v_neg_;
    knots_.back().right = v_pos_;
  } else if (v_neg_ != v_pos_) {
    throw InvalidArgument("piecewise-linear function without knots must be constant");
  }
}

PiecewiseLinear PiecewiseLinear::ramp(double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("ramp width must be positive");
  return PiecewiseLinear({{-eps, 1.0, 1.0}, {0.0, 0.0, 0.0}}, 1.0, 0.0);
}

PiecewiseLinear PiecewiseLinear::step(double x0, StepOrientation orient) {
  if (orient == StepOrientation::theta_of_x0_minus_x)
    return PiecewiseLinear({{x0, 1.0, 0.0}}, 1.0, 0.0);
  return PiecewiseLinear({{x0, 0.0, 1.0}}, 0.0, 1.0);
}

PiecewiseLinear PiecewiseLinear::box(double a, double b, double height) {
  if (!(a < b)) throw InvalidArgument("box requires a < b");
  return PiecewiseLinear({{a, 0.0, height}, {b, height, 0.0}}, 0.0, 0.0);
}

double PiecewiseLinear::eval_left(double x) const {
  if (knots_.empty()) return v_neg_;
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                             [](const Knot& k, double v) { return k.x < v; });
  if (it != knots_.end() && it->x == x) {
    return it->left;
  }
  if (it == knots_.begin()) return v_neg_;
  if (it == knots_.end()) return v_pos_;
  const Knot& a = *(it - 1);
  const Knot& b = *it;
  const double t = (x - a.x) / (b.x - a.x);
  return a.right + t * (b.left - a.right);
}

double PiecewiseLinear::eval_right(double x) const {
  if (knots_.empty()) return v_neg_;
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                             [](const Knot& k, double v) { return k.x < v; });
  if (it != knots_.end() && it->x == x) return it->right;
  if (it == knots_.begin()) return v_neg_;
  if (it == knots_.end()) return v_pos_;
  const Knot& a = *(it - 1);
  const Knot& b = *it;
  const double t = (x - a.x) / (b.x - a.x);
  return a.right + t * (b.left - a.right);
}

double PiecewiseLinear::eval(double x) const {
  return 0.5 * (eval_left(x) + eval_right(x));
}

double PiecewiseLinear::max_abs() const {
  double m = std::max(std::abs(v_neg_), std::abs(v_pos_));
  for (const Knot& k : knots_)
    m = std::max({m, std::abs(k.left), std::abs(k.right)});
  return m;
}

PiecewiseLinear PiecewiseLinear::combine(const PiecewiseLinear& f, double cf,
                                         const PiecewiseLinear& g, double cg) {
  std::vector<double> xs;
  xs.reserve(f.knots_.size() + g.knots_.size());
  for (const Knot& k : f.knots_) xs.push_back(k.x);
  for (const Knot& k : g.knots_) xs.push_back(k.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const double vn = cf * f.v_neg_ + cg * g.v_neg_;
  const double vp = cf * f.v_pos_ + cg * g.v_pos_;
  if (xs.empty()) {
    PiecewiseLinear out;
    out.v_neg_ = vn;
    out.v_pos_ = vp;
    return out;
  }
  std::vector<Knot> ks;
  ks.reserve(xs.size());
  for (double x : xs)
    ks.push_back({x, cf * f.eval_left(x) + cg * g.eval_left(x),
                  cf * f.eval_right(x) + cg * g.eval_right(x)});
  PiecewiseLinear out;
  out.knots_ = std::move(ks);
  out.v_neg_ = vn;
  out.v_pos_ = vp;
  return out;
}

PiecewiseLinear PiecewiseLinear::shifted(double t) const {
  PiecewiseLinear out = *this;
  for (Knot& k : out.knots_) k.x += t;
  return out;
}

PiecewiseLinear PiecewiseLinear::scaled(double c) const {
  PiecewiseLinear out = *this;
  for (Knot& k : out.knots_) {
    k.left *= c;
    k.right *= c;
  }
  out.v_neg_ *= c;
  out.v_pos_ *= c;
  return out;
}

PiecewiseLinear PiecewiseLinear::reflected() const {
  PiecewiseLinear out;
  out.v_neg_ = v_pos_;
  out.v_pos_ = v_neg_;
  out.knots_.reserve(knots_.size());
  for (auto it = knots_.rbegin(); it != knots_.rend(); ++it)
    out.knots_.push_back({-it->x, it->right, it->left});
  return out;
}

Complex PiecewiseLinear::fourier(double p) const {
  if (std::abs(v_neg_) > 1e-14 || std::abs(v_pos_) > 1e-14)
    throw DivergentNorm("Fourier transform undefined: function is not integrable");
  Complex total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double a = knots_[i].x, b = knots_[i + 1].x;
    const double ya = knots_[i].right, yb = knots_[i + 1].left;
    if (ya == 0.0 && yb == 0.0) continue;
    const double L = b - a, m = 0.5 * (a + b), h = 0.5 * L;
    const double u = p * h;
    const Complex ph = std::polar(1.0, p * m);
    total += ph * (0.5 * (ya + yb) * L * sinc(u) +
                   Complex(0.0, 1.0) * (yb - ya) * h * sinc_moment(u));
  }
  return total;
}

double PiecewiseLinear::integral() const {
  if (std::abs(v_neg_) > 1e-14 || std::abs(v_pos_) > 1e-14)
    throw DivergentNorm("integral undefined: function is not integrable");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
    total += 0.5 * (knots_[i].right + knots_[i + 1].left) *
             (knots_[i + 1].x - knots_[i].x);
  return total;
}

PLDerivative PiecewiseLinear::derivative() const {
  PLDerivative out;
  if (knots_.empty()) return out;
  std::vector<double> slope(knots_.size() + 1, 0.0);
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
    slope[i + 1] =
        (knots_[i + 1].left - knots_[i].right) / (knots_[i + 1].x - knots_[i].x);
  std::vector<Knot> ks(knots_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    ks[i] = {knots_[i].x, slope[i], slope[i + 1]};
    const double jump = knots_[i].right - knots_[i].left;
    if (jump != 0.0) out.jumps.push_back({knots_[i].x, jump});
  }
  out.regular = PiecewiseLinear(std::move(ks), 0.0, 0.0);
  return out;
}

// ---------------------------------------------------------------------------
// PolyGaussianAtom

double PolyGaussianAtom::eval(double x) const {
  const double y = x - center;
  double poly = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) poly = poly * y + coeffs[k];
  return poly * std::exp(-(y * y) / (width * width));
}

Complex PolyGaussianAtom::fourier(double p) const {
  // I_k(p) = ∫ y^k e^{ipy} e^{−y²/w²} dy = H_k(p) exp(−p²w²/4),
  // H_0 = w√π, H_{k+1} = −i H_k' + (i w²/2) p H_k.
  const std::size_t n = coeffs.size();
  std::vector<std::vector<Complex>> H(n);
  if (n == 0) return 0.0;
  H[0] = {Complex(width * std::sqrt(kPi), 0.0)};
  for (std::size_t k = 1; k < n; ++k) {
    const auto& prev = H[k - 1];
    std::vector<Complex> next(prev.size() + 1, Complex(0.0, 0.0));
    // −i * d/dp prev
    for (std::size_t j = 1; j < prev.size(); ++j)
      next[j - 1] += Complex(0.0, -1.0) * (static_cast<double>(j) * prev[j]);
    // (i w²/2) * p * prev
    for (std::size_t j = 0; j < prev.size(); ++j)
      next[j + 1] += Complex(0.0, 0.5 * width * width) * prev[j];
    H[k] = std::move(next);
  }
  Complex sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (coeffs[k] == 0.0) continue;
    Complex hk = 0.0;
    for (std::size_t j = H[k].size(); j-- > 0;) hk = hk * p + H[k][j];
    sum += coeffs[k] * hk;
  }
  const double pw = 0.5 * p * width;
  return std::polar(1.0, p * center) * sum * std::exp(-pw * pw);
}

double PolyGaussianAtom::integral() const { return fourier(0.0).real(); }

PolyGaussianAtom PolyGaussianAtom::derivative() const {
  PolyGaussianAtom out;
  out.center = center;
  out.width = width;
  out.coeffs.assign(coeffs.size() + 1, 0.0);
  const double two_over_w2 = 2.0 / (width * width);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k >= 1) out.coeffs[k - 1] += static_cast<double>(k) * coeffs[k];
    out.coeffs[k + 1] -= two_over_w2 * coeffs[k];
  }
  while (!out.coeffs.empty() && out.coeffs.back() == 0.0) out.coeffs.pop_back();
  return out;
}

double PolyGaussianAtom::bound() const {
  return (40.0 + 2.0 * static_cast<double>(coeffs.size())) * width;
}

double PolyGaussianAtom::max_coeff() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------------------
// CanonicalForm

double CanonicalForm::eval(double x) const {
  double v = pl.eval(x);
  for (const auto& a : pg) v += a.eval(x);
  return v;
}

bool CanonicalForm::integrable(double tol) const {
  return std::abs(pl.v_neg()) <= tol && std::abs(pl.v_pos()) <= tol;
}

Complex CanonicalForm::fourier(double p) const {
  Complex v = pl.trivial() ? Complex(0.0) : pl.fourier(p);
  for (const auto& a : pg) v += a.fourier(p);
  return v;
}

double CanonicalForm::integral() const {
  double v = pl.trivial() ? 0.0 : pl.integral();
  for (const auto& a : pg) v += a.integral();
  return v;
}

std::pair<double, double> CanonicalForm::finite_hull() const {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  if (!pl.knots().empty()) {
    lo = pl.knots().front().x;
    hi = pl.knots().back().x;
    any = true;
  }
  for (const auto& a : pg) {
    const double l = a.center - a.bound(), h = a.center + a.bound();
    if (!any) {
      lo = l;
      hi = h;
      any = true;
    } else {
      lo = std::min(lo, l);
      hi = std::max(hi, h);
    }
  }
  return {lo, hi};
}

std::vector<double> CanonicalForm::panel_hints() const {
  std::vector<double> xs;
  for (const auto& k : pl.knots()) xs.push_back(k.x);
  for (const auto& a : pg) {
    // resolve the bump: initial panels must not straddle it unsampled
    xs.push_back(a.center);
    for (double k : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
      xs.push_back(a.center - k * a.width);
      xs.push_back(a.center + k * a.width);
    }
  }
  return xs;
}

double CanonicalForm::position_extent() const {
  double e = 0.0;
  for (const auto& k : pl.knots()) e = std::max(e, std::abs(k.x));
  for (const auto& a : pg)
    e = std::max(e, std::abs(a.center) + 3.0 * a.width);
  return e;
}

bool CanonicalForm::is_zero(double tol) const {
  if (pl.max_abs() > tol) return false;
  for (const auto& a : pg)
    if (a.max_coeff() > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// TestFn node tree

struct RampKind {
  double eps;
};
struct StepKind {
  double x0;
  StepOrientation orient;
};
struct RampDiffKind {
  double delta, eps;
};
struct GaussianKind {
  double center, width;
};
struct PolyGaussianKind {
  std::vector<double> coeffs;
  double center, width;
};
struct BoxKind {
  double a, b, height;
};
struct PiecewiseKind {
  PiecewiseLinear pl;
};
struct ShiftedKind {
  TestFn base;
  double t;
};
struct ScaledKind {
  TestFn base;
  double c;
};
struct ReflectedKind {
  TestFn base;
};
struct SumKind {
  std::vector<TestFn> terms;
};
struct ZeroKind {};

struct TestFn::Node {
  std::variant<ZeroKind, RampKind, StepKind, RampDiffKind, GaussianKind,
               PolyGaussianKind, BoxKind, PiecewiseKind, ShiftedKind,
               ScaledKind, ReflectedKind, SumKind>
      v;
};

namespace {

CanonicalForm canonical_of(const TestFn::Node& node);

void merge_pg(std::vector<PolyGaussianAtom>& dst, const PolyGaussianAtom& a,
              double coef) {
  for (auto& existing : dst) {
    if (existing.center == a.center && existing.width == a.width) {
      if (existing.coeffs.size() < a.coeffs.size())
        existing.coeffs.resize(a.coeffs.size(), 0.0);
      for (std::size_t k = 0; k < a.coeffs.size(); ++k)
        existing.coeffs[k] += coef * a.coeffs[k];
      return;
    }
  }
  PolyGaussianAtom copy = a;
  for (double& c : copy.coeffs) c *= coef;
  dst.push_back(std::move(copy));
}

void prune_pg(std::vector<PolyGaussianAtom>& pg) {
  for (auto& a : pg)
    while (!a.coeffs.empty() && a.coeffs.back() == 0.0) a.coeffs.pop_back();
  pg.erase(std::remove_if(pg.begin(), pg.end(),
                          [](const PolyGaussianAtom& a) {
                            return a.coeffs.empty();
                          }),
           pg.end());
  std::sort(pg.begin(), pg.end(),
            [](const PolyGaussianAtom& a, const PolyGaussianAtom& b) {
              if (a.center != b.center) return a.center < b.center;
              return a.width < b.width;
            });
}

CanonicalForm canonical_shift(const CanonicalForm& c, double t) {
  CanonicalForm out;
  out.pl = c.pl.shifted(t);
  out.pg = c.pg;
  for (auto& a : out.pg) a.center += t;
  return out;
}

CanonicalForm canonical_scale(const CanonicalForm& c, double s) {
  CanonicalForm out;
  out.pl = c.pl.scaled(s);
  out.pg = c.pg;
  for (auto& a : out.pg)
    for (double& co : a.coeffs) co *= s;
  prune_pg(out.pg);
  return out;
}

CanonicalForm canonical_reflect(const CanonicalForm& c) {
  CanonicalForm out;
  out.pl = c.pl.reflected();
  out.pg.reserve(c.pg.size());
  for (auto a : c.pg) {
    a.center = -a.center;
    for (std::size_t k = 1; k < a.coeffs.size(); k += 2) a.coeffs[k] = -a.coeffs[k];
    out.pg.push_back(std::move(a));
  }
  prune_pg(out.pg);
  return out;
}

CanonicalForm canonical_of(const TestFn::Node& node) {
  CanonicalForm out;
  std::visit(
      [&out](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZeroKind>) {
        } else if constexpr (std::is_same_v<K, RampKind>) {
          out.pl = PiecewiseLinear::ramp(k.eps);
        } else if constexpr (std::is_same_v<K, StepKind>) {
          out.pl = PiecewiseLinear::step(k.x0, k.orient);
        } else if constexpr (std::is_same_v<K, RampDiffKind>) {
          out.pl = PiecewiseLinear::combine(
              PiecewiseLinear::ramp(k.eps), 1.0,
              PiecewiseLinear::ramp(k.eps).shifted(-k.delta), -1.0);
        } else if constexpr (std::is_same_v<K, GaussianKind>) {
          out.pg.push_back({{1.0}, k.center, k.width});
        } else if constexpr (std::is_same_v<K, PolyGaussianKind>) {
          out.pg.push_back({k.coeffs, k.center, k.width});
          prune_pg(out.pg);
        } else if constexpr (std::is_same_v<K, BoxKind>) {
          out.pl = PiecewiseLinear::box(k.a, k.b, k.height);
        } else if constexpr (std::is_same_v<K, PiecewiseKind>) {
          out.pl = k.pl;
        } else if constexpr (std::is_same_v<K, ShiftedKind>) {
          out = canonical_shift(k.base.canonical(), k.t);
        } else if constexpr (std::is_same_v<K, ScaledKind>) {
          out = canonical_scale(k.base.canonical(), k.c);
        } else if constexpr (std::is_same_v<K, ReflectedKind>) {
          out = canonical_reflect(k.base.canonical());
        } else if constexpr (std::is_same_v<K, SumKind>) {
          for (const TestFn& t : k.terms) {
            const CanonicalForm& c = t.canonical();
            out.pl = PiecewiseLinear::combine(out.pl, 1.0, c.pl, 1.0);
            for (const auto& a : c.pg) merge_pg(out.pg, a, 1.0);
          }
          prune_pg(out.pg);
        }
      },
      node.v);
  return out;
}

}  // namespace

TestFn::TestFn(std::shared_ptr<const Node> node)
    : node_(std::move(node)),
      canon_(std::make_shared<const CanonicalForm>(canonical_of(*node_))) {}

TestFn::TestFn() : TestFn(std::make_shared<const Node>(Node{ZeroKind{}})) {}

TestFn TestFn::zero() { return TestFn(); }

TestFn TestFn::ramp(double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("ramp: eps must be > 0");
  return TestFn(std::make_shared<const Node>(Node{RampKind{eps}}));
}

TestFn TestFn::step(double x0, StepOrientation orient) {
  return TestFn(std::make_shared<const Node>(Node{StepKind{x0, orient}}));
}

TestFn TestFn::ramp_diff(double delta, double eps) {
  if (!(delta > 0.0) || !(eps > 0.0))
    throw InvalidArgument("ramp_diff: delta and eps must be > 0");
  return TestFn(std::make_shared<const Node>(Node{RampDiffKind{delta, eps}}));
}

TestFn TestFn::gaussian(double center, double width) {
  if (!(width > 0.0)) throw InvalidArgument("gaussian: width must be > 0");
  return TestFn(std::make_shared<const Node>(Node{GaussianKind{center, width}}));
}

TestFn TestFn::poly_gaussian(std::vector<double> coeffs, double center,
                             double width) {
  if (!(width > 0.0)) throw InvalidArgument("poly_gaussian: width must be > 0");
  return TestFn(std::make_shared<const Node>(
      Node{PolyGaussianKind{std::move(coeffs), center, width}}));
}

TestFn TestFn::box(double a, double b, double height) {
  return TestFn(std::make_shared<const Node>(Node{BoxKind{a, b, height}}));
}

TestFn TestFn::piecewise(PiecewiseLinear pl) {
  return TestFn(std::make_shared<const Node>(Node{PiecewiseKind{std::move(pl)}}));
}

TestFn TestFn::sum(std::vector<TestFn> terms) {
  return TestFn(std::make_shared<const Node>(Node{SumKind{std::move(terms)}}));
}

TestFn TestFn::shifted(double t) const {
  if (t == 0.0) return *this;
  if (const auto* s = std::get_if<ShiftedKind>(&node_->v))
    return s->base.shifted(s->t + t);
  return TestFn(std::make_shared<const Node>(Node{ShiftedKind{*this, t}}));
}

TestFn TestFn::scaled(double c) const {
  if (c == 1.0) return *this;
  if (const auto* s = std::get_if<ScaledKind>(&node_->v))
    return s->base.scaled(s->c * c);
  return TestFn(std::make_shared<const Node>(Node{ScaledKind{*this, c}}));
}

TestFn TestFn::reflected() const {
  if (const auto* r = std::get_if<ReflectedKind>(&node_->v)) return r->base;
  return TestFn(std::make_shared<const Node>(Node{ReflectedKind{*this}}));
}

TestFn TestFn::operator+(const TestFn& o) const { return sum({*this, o}); }
TestFn TestFn::operator-(const TestFn& o) const {
  return sum({*this, o.scaled(-1.0)});
}

double TestFn::eval(double x) const { return canon_->eval(x); }

Complex TestFn::fourier(double p) const { return canon_->fourier(p); }

Complex TestFn::fourier_quadrature(double p, double abs_tol) const {
  if (!canon_->integrable())
    throw DivergentNorm("fourier_quadrature: function is not integrable");
  auto [lo, hi] = canon_->finite_hull();
  if (lo >= hi) return 0.0;
  quad::Options opt;
  opt.abs_tol = abs_tol;
  opt.breakpoints = canon_->panel_hints();
  opt.osc_freq = std::abs(p);
  auto r = quad::integrate(
      [this, p](double x) { return std::polar(1.0, p * x) * canon_->eval(x); },
      lo, hi, opt);
  return r.value;
}

double TestFn::integral() const { return canon_->integral(); }

TestFn TestFn::weak_derivative() const {
  return std::visit(
      [this](const auto& k) -> TestFn {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZeroKind>) {
          return TestFn::zero();
        } else if constexpr (std::is_same_v<K, RampKind>) {
          return TestFn::box(-k.eps, 0.0, -1.0 / k.eps);
        } else if constexpr (std::is_same_v<K, StepKind>) {
          throw NotDifferentiable(
              "weak_derivative: sharp step lies outside the test-function space");
        } else if constexpr (std::is_same_v<K, RampDiffKind>) {
          return TestFn::sum({TestFn::box(-k.eps, 0.0, -1.0 / k.eps),
                              TestFn::box(-k.delta - k.eps, -k.delta,
                                          1.0 / k.eps)});
        } else if constexpr (std::is_same_v<K, GaussianKind>) {
          return TestFn::poly_gaussian({0.0, -2.0 / (k.width * k.width)},
                                       k.center, k.width);
        } else if constexpr (std::is_same_v<K, PolyGaussianKind>) {
          PolyGaussianAtom a{k.coeffs, k.center, k.width};
          auto d = a.derivative();
          return TestFn::poly_gaussian(d.coeffs, d.center, d.width);
        } else if constexpr (std::is_same_v<K, BoxKind>) {
          throw NotDifferentiable("weak_derivative: box has jump discontinuities");
        } else if constexpr (std::is_same_v<K, PiecewiseKind>) {
          auto d = k.pl.derivative();
          if (!d.jumps.empty())
            throw NotDifferentiable(
                "weak_derivative: function has jump discontinuities");
          return TestFn(std::make_shared<const Node>(
              Node{PiecewiseKind{std::move(d.regular)}}));
        } else if constexpr (std::is_same_v<K, ShiftedKind>) {
          return k.base.weak_derivative().shifted(k.t);
        } else if constexpr (std::is_same_v<K, ScaledKind>) {
          return k.base.weak_derivative().scaled(k.c);
        } else if constexpr (std::is_same_v<K, ReflectedKind>) {
          return k.base.weak_derivative().reflected().scaled(-1.0);
        } else if constexpr (std::is_same_v<K, SumKind>) {
          std::vector<TestFn> out;
          out.reserve(k.terms.size());
          for (const TestFn& t : k.terms) out.push_back(t.weak_derivative());
          return TestFn::sum(std::move(out));
        }
      },
      node_->v);
}

TestFn TestFn::compacted() const {
  std::vector<TestFn> parts;
  if (!canon_->pl.trivial())
    parts.push_back(
        TestFn(std::make_shared<const Node>(Node{PiecewiseKind{canon_->pl}})));
  for (const auto& a : canon_->pg)
    parts.push_back(TestFn::poly_gaussian(a.coeffs, a.center, a.width));
  if (parts.empty()) return TestFn::zero();
  if (parts.size() == 1) return parts.front();
  return TestFn::sum(std::move(parts));
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

using nlohmann::ordered_json;

ordered_json node_to_json(const TestFn::Node& node);

ordered_json fn_to_json(const TestFn& f) { return node_to_json(f.node()); }

ordered_json node_to_json(const TestFn::Node& node) {
  ordered_json j;
  std::visit(
      [&j](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZeroKind>) {
          j = {{"kind", "zero"}, {"params", ordered_json::object()}};
        } else if constexpr (std::is_same_v<K, RampKind>) {
          j = {{"kind", "ramp"}, {"params", {{"eps", k.eps}}}};
        } else if constexpr (std::is_same_v<K, StepKind>) {
          j = {{"kind", "step"},
               {"params",
                {{"x0", k.x0},
                 {"orientation",
                  k.orient == StepOrientation::theta_of_x0_minus_x
                      ? "x0_minus_x"
                      : "x_minus_x0"}}}};
        } else if constexpr (std::is_same_v<K, RampDiffKind>) {
          j = {{"kind", "rampdiff"},
               {"params", {{"delta", k.delta}, {"eps", k.eps}}}};
        } else if constexpr (std::is_same_v<K, GaussianKind>) {
          j = {{"kind", "gaussian"},
               {"params", {{"center", k.center}, {"width", k.width}}}};
        } else if constexpr (std::is_same_v<K, PolyGaussianKind>) {
          j = {{"kind", "polygaussian"},
               {"params",
                {{"coeffs", k.coeffs},
                 {"center", k.center},
                 {"width", k.width}}}};
        } else if constexpr (std::is_same_v<K, BoxKind>) {
          j = {{"kind", "box"},
               {"params", {{"a", k.a}, {"b", k.b}, {"height", k.height}}}};
        } else if constexpr (std::is_same_v<K, PiecewiseKind>) {
          ordered_json knots = ordered_json::array();
          for (const auto& kn : k.pl.knots())
            knots.push_back({{"x", kn.x}, {"left", kn.left}, {"right", kn.right}});
          j = {{"kind", "piecewise"},
               {"params",
                {{"knots", knots},
                 {"v_neg", k.pl.v_neg()},
                 {"v_pos", k.pl.v_pos()}}}};
        } else if constexpr (std::is_same_v<K, ShiftedKind>) {
          j = {{"kind", "shifted"},
               {"params", {{"t", k.t}, {"base", fn_to_json(k.base)}}}};
        } else if constexpr (std::is_same_v<K, ScaledKind>) {
          j = {{"kind", "scaled"},
               {"params", {{"c", k.c}, {"base", fn_to_json(k.base)}}}};
        } else if constexpr (std::is_same_v<K, ReflectedKind>) {
          j = {{"kind", "reflected"}, {"params", {{"base", fn_to_json(k.base)}}}};
        } else if constexpr (std::is_same_v<K, SumKind>) {
          ordered_json terms = ordered_json::array();
          for (const TestFn& t : k.terms) terms.push_back(fn_to_json(t));
          j = {{"kind", "sum"}, {"params", {{"terms", terms}}}};
        }
      },
      node.v);
  return j;
}

TestFn fn_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("test function descriptor must be {\"kind\", \"params\"}");
  const std::string kind = j.at("kind").get<std::string>();
  const ordered_json params =
      j.contains("params") ? j.at("params") : ordered_json::object();
  try {
    if (kind == "zero") return TestFn::zero();
    if (kind == "ramp") return TestFn::ramp(params.at("eps").get<double>());
    if (kind == "step") {
      StepOrientation orient = StepOrientation::theta_of_x0_minus_x;
      if (params.contains("orientation")) {
        const std::string o = params.at("orientation").get<std::string>();
        if (o == "x_minus_x0")
          orient = StepOrientation::theta_of_x_minus_x0;
        else if (o != "x0_minus_x")
          throw ParseError("unknown step orientation: " + o);
      }
      return TestFn::step(params.at("x0").get<double>(), orient);
    }
    if (kind == "rampdiff")
      return TestFn::ramp_diff(params.at("delta").get<double>(),
                               params.at("eps").get<double>());
    if (kind == "gaussian")
      return TestFn::gaussian(params.at("center").get<double>(),
                              params.at("width").get<double>());
    if (kind == "polygaussian")
      return TestFn::poly_gaussian(
          params.at("coeffs").get<std::vector<double>>(),
          params.at("center").get<double>(), params.at("width").get<double>());
    if (kind == "box")
      return TestFn::box(params.at("a").get<double>(),
                         params.at("b").get<double>(),
                         params.at("height").get<double>());
    if (kind == "piecewise") {
      std::vector<PiecewiseLinear::Knot> knots;
      for (const auto& kn : params.at("knots"))
        knots.push_back({kn.at("x").get<double>(), kn.at("left").get<double>(),
                         kn.at("right").get<double>()});
      PiecewiseLinear pl(std::move(knots), params.at("v_neg").get<double>(),
                         params.at("v_pos").get<double>());
      return TestFn::piecewise(std::move(pl));
    }
    if (kind == "shifted")
      return fn_from_json(params.at("base")).shifted(params.at("t").get<double>());
    if (kind == "scaled")
      return fn_from_json(params.at("base")).scaled(params.at("c").get<double>());
    if (kind == "reflected") return fn_from_json(params.at("base")).reflected();
    if (kind == "sum") {
      std::vector<TestFn> terms;
      for (const auto& t : params.at("terms")) terms.push_back(fn_from_json(t));
      return TestFn::sum(std::move(terms));
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("bad test function descriptor: ") + e.what());
  }
  throw ParseError("unknown test function kind: " + kind);
}

}  // namespace

std::string TestFn::to_json() const { return node_to_json(*node_).dump(); }

TestFn TestFn::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return fn_from_json(j);
}

TestFn shift(const TestFn& f, double t) { return f.shifted(t); }
double eval(const TestFn& f, double x) { return f.eval(x); }
Complex fourier(const TestFn& f, double p) { return f.fourier(p); }
TestFn weak_derivative(const TestFn& f) { return f.weak_derivative(); }

}  // namespace thirring
