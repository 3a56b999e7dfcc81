#ifndef THIRRING_WEYL_HPP
#define THIRRING_WEYL_HPP

#include <optional>

#include "thirring/testfn.hpp"

namespace thirring {

enum class Chirality { left, right };

// Weyl element W(f) = e^{ij_f} in normal form: one exponent function and an
// accumulated unit-modulus phase. Products reduce eagerly through the
// cocycle e^{ij_f} e^{ij_g} = e^{(i/2)σ(g,f)} e^{ij_{f+g}}; the right-moving
// algebra carries σ_r = −σ_l.
class WeylElement {
 public:
  WeylElement();  // identity
  WeylElement(TestFn exponent, Complex phase,
              Chirality chirality = Chirality::left);

  static WeylElement identity(Chirality chirality = Chirality::left);
  static WeylElement from_function(TestFn f,
                                   Chirality chirality = Chirality::left);

  const TestFn& exponent() const { return exponent_; }
  Complex phase() const { return phase_; }
  Chirality chirality() const { return chirality_; }

  bool is_identity(double tol = 1e-10) const;

  std::string to_json() const;
  static WeylElement from_json(const std::string& text);

 private:
  TestFn exponent_;
  Complex phase_;
  Chirality chirality_;
};

struct AutomorphismSpec {
  enum class Kind { shift, gauge, parity, structural_point, structural_fn };

  Kind kind;
  double parameter = 0.0;          // shift t / structural point x
  double strength = 1.0;           // gauge strength
  std::optional<TestFn> function;  // gauge generator / structural ḡ

  static AutomorphismSpec shift(double t);
  static AutomorphismSpec gauge(TestFn f, double strength);
  static AutomorphismSpec parity();
  static AutomorphismSpec structural_point(double x);
  static AutomorphismSpec structural(TestFn gbar);
};

WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement adjoint(const WeylElement& w);

// e^{iσ(g,f)}: the phase by which W(f)W(g) and W(g)W(f) differ.
Complex exchange_phase_weyl(const TestFn& f, const TestFn& g,
                            Chirality chirality = Chirality::left);

WeylElement apply_automorphism(const AutomorphismSpec& a, const WeylElement& w);

}  // namespace thirring

#endif
