#ifndef THIRRING_TESTFN_HPP
#define THIRRING_TESTFN_HPP

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace thirring {

using Complex = std::complex<double>;

// Fourier convention used throughout: f~(p) = ∫ dx e^{ipx} f(x).

enum class StepOrientation {
  theta_of_x0_minus_x,  // Θ(x0 − x): 1 to the left of x0
  theta_of_x_minus_x0,  // Θ(x − x0): 1 to the right of x0
};

struct PLDerivative;

// Piecewise-linear function with finitely many knots, constant outside.
// Jumps are allowed; point evaluation at a jump returns the midpoint
// (the sgn(0) = 0 convention).
class PiecewiseLinear {
 public:
  struct Knot {
    double x;
    double left;   // limit from below
    double right;  // limit from above
  };

  PiecewiseLinear() = default;  // identically zero
  PiecewiseLinear(std::vector<Knot> knots, double v_neg, double v_pos);

  static PiecewiseLinear ramp(double eps);  // the paper's φ_ε
  static PiecewiseLinear step(double x0, StepOrientation orient);
  static PiecewiseLinear box(double a, double b, double height);

  static PiecewiseLinear combine(const PiecewiseLinear& f, double cf,
                                 const PiecewiseLinear& g, double cg);
  PiecewiseLinear shifted(double t) const;
  PiecewiseLinear scaled(double c) const;
  PiecewiseLinear reflected() const;

  double eval(double x) const;
  double eval_left(double x) const;
  double eval_right(double x) const;

  double v_neg() const { return v_neg_; }
  double v_pos() const { return v_pos_; }
  const std::vector<Knot>& knots() const { return knots_; }
  bool trivial() const { return knots_.empty() && v_neg_ == 0.0; }
  bool compact_support() const { return v_neg_ == 0.0 && v_pos_ == 0.0; }
  double max_abs() const;

  // ∫ e^{ipx} f(x) dx; requires compact support (DivergentNorm otherwise).
  Complex fourier(double p) const;
  double integral() const;

  struct DeltaTerm {
    double location;
    double weight;
  };
  PLDerivative derivative() const;

 private:
  std::vector<Knot> knots_;
  double v_neg_ = 0.0;
  double v_pos_ = 0.0;
};

struct PLDerivative {
  PiecewiseLinear regular;  // piecewise-constant slope function
  std::vector<PiecewiseLinear::DeltaTerm> jumps;  // distributional parts
};

// Polynomial-times-Gaussian atom: Σ_k coeffs[k] (x−c)^k exp(−((x−c)/w)²).
struct PolyGaussianAtom {
  std::vector<double> coeffs;
  double center = 0.0;
  double width = 1.0;

  double eval(double x) const;
  Complex fourier(double p) const;
  double integral() const;
  PolyGaussianAtom derivative() const;
  double bound() const;  // |f| negligible outside [center − bound, center + bound]
  double max_coeff() const;
};

// Canonical analytic form of a test function: one piecewise-linear part
// plus finitely many polynomial-Gaussian atoms (merged by center/width).
struct CanonicalForm {
  PiecewiseLinear pl;
  std::vector<PolyGaussianAtom> pg;

  double eval(double x) const;
  bool integrable(double tol = 1e-14) const;
  Complex fourier(double p) const;
  double integral() const;
  // Hull outside which the function equals its asymptotes / is negligible.
  std::pair<double, double> finite_hull() const;
  std::vector<double> panel_hints() const;  // knots for quadrature panels
  double position_extent() const;           // osc-frequency hint for p-integrals
  bool is_zero(double tol) const;
};

class TestFn {
 public:
  TestFn();  // zero function

  static TestFn zero();
  static TestFn ramp(double eps);
  static TestFn step(double x0, StepOrientation orient =
                                    StepOrientation::theta_of_x0_minus_x);
  static TestFn ramp_diff(double delta, double eps);
  static TestFn gaussian(double center, double width);
  static TestFn poly_gaussian(std::vector<double> coeffs, double center,
                              double width);
  static TestFn box(double a, double b, double height);
  static TestFn piecewise(PiecewiseLinear pl);
  static TestFn sum(std::vector<TestFn> terms);

  TestFn shifted(double t) const;  // g(x) = f(x − t)
  TestFn scaled(double c) const;
  TestFn reflected() const;  // (Pf)(x) = f(−x)

  TestFn operator+(const TestFn& o) const;
  TestFn operator-(const TestFn& o) const;
  TestFn operator*(double c) const { return scaled(c); }

  double eval(double x) const;
  Complex fourier(double p) const;
  Complex fourier_quadrature(double p, double abs_tol = 1e-10) const;
  TestFn weak_derivative() const;
  double integral() const;

  const CanonicalForm& canonical() const { return *canon_; }
  bool is_zero(double tol = 1e-12) const { return canon_->is_zero(tol); }
  // Compact tree rebuilt from the canonical form (bounded size under sums).
  TestFn compacted() const;

  std::string to_json() const;
  static TestFn from_json(const std::string& text);

  struct Node;
  explicit TestFn(std::shared_ptr<const Node> node);
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
  std::shared_ptr<const CanonicalForm> canon_;
};

TestFn shift(const TestFn& f, double t);
double eval(const TestFn& f, double x);
Complex fourier(const TestFn& f, double p);
TestFn weak_derivative(const TestFn& f);

}  // namespace thirring

#endif
