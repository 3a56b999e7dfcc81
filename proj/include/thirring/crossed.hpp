#ifndef THIRRING_CROSSED_HPP
#define THIRRING_CROSSED_HPP

#include <map>
#include <string>
#include <vector>

#include "thirring/symplectic.hpp"
#include "thirring/testfn.hpp"
#include "thirring/weyl.hpp"

namespace thirring {

// Coefficient of one charge component: a finite combination Σ w · W(f).
// The product formula (F·G)_m = Σ_n F_n αⁿ(G_{m−n}) forces linear
// combinations once supports overlap, so coefficients live in the group
// algebra of the Weyl unitaries.
struct WeylCombination {
  struct Term {
    Complex weight;
    TestFn exponent;
  };
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
};

// Element Σ_n A_n Uⁿ of the crossed-product field algebra. U is pure
// charge bookkeeping; the structural automorphism is the only bridge back
// to the Weyl algebra. Elements with different statistics tags live in
// orthogonal sectors and never multiply.
class CrossedElement {
 public:
  explicit CrossedElement(double alpha_tag = 2.0 * 3.14159265358979323846);

  static CrossedElement identity(double alpha_tag = 2.0 * 3.14159265358979323846);
  static CrossedElement charge_power(int n, const WeylElement& coefficient,
                                     double alpha_tag = 2.0 * 3.14159265358979323846);

  void add_term(int n, Complex weight, TestFn exponent);
  const std::map<int, WeylCombination>& coefficients() const { return coeffs_; }
  double alpha_tag() const { return alpha_tag_; }
  void prune(double tol = 1e-15);

  std::string to_json() const;
  static CrossedElement from_json(const std::string& text);

 private:
  double alpha_tag_;
  std::map<int, WeylCombination> coeffs_;
};

CrossedElement multiply_crossed(const CrossedElement& F, const CrossedElement& G,
                                const AutomorphismSpec& twist);
CrossedElement crossed_adjoint(const CrossedElement& F,
                               const AutomorphismSpec& twist);
CrossedElement gauge_automorphism(const CrossedElement& F, double nu);

// γ_ρ = ρ α ρ⁻¹ α⁻¹ inner ⟺ the defining functions differ by an element of
// finite thermal norm; sharp steps in the difference are regularized to
// ramps at tp.epsilon_reg before the norm test.
bool extendibility_check(const TestFn& rho_gbar, const TestFn& gbar,
                         const ThermalParams& tp);

// ⟨Ω_k| W*(f) W(h) W(f) |Ω_n⟩ = δ_{kn} e^{−iσ(f+nḡ,h)} ω(W(h)).
Complex sector_inner(int k, int n, const TestFn& f, const TestFn& h,
                     const TestFn& gbar, const ThermalParams& tp);

struct ZoneSpec {
  long n;     // ≥ 0
  long nbar;  // ≥ 1
  ZoneSpec(long n_, long nbar_);
};

enum class ZoneClass { bosonic, fermionic, anyonic };

struct ZoneStatistics {
  double r;  // √(2n+1) m / n̄
  ZoneClass cls;
};

ZoneStatistics zone_statistics(const ZoneSpec& zs, long m);

// σ(ḡ_x, ḡ_{x+δ}) for ḡ_x = 2πΘ(x−·), computed from ramp regularizations
// with Richardson extrapolation; the limit is −π sgn(δ).
double step_exchange_sigma(double x, double delta);

}  // namespace thirring

#endif
