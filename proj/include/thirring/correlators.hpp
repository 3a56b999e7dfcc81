#ifndef THIRRING_CORRELATORS_HPP
#define THIRRING_CORRELATORS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "thirring/symplectic.hpp"
#include "thirring/testfn.hpp"
#include "thirring/weyl.hpp"

namespace thirring {

// Anyon field data: statistics parameter α, UV cutoff ε, position and
// chirality. The field renormalization is n_α(ε) = (2πε)^{−α/4π}.
struct AnyonField {
  double alpha;
  double eps;
  double x = 0.0;
  Chirality chirality = Chirality::left;

  AnyonField(double alpha_, double eps_, double x_ = 0.0,
             Chirality chirality_ = Chirality::left);
  double renorm() const;
};

// Klein constants as exact rational multiples of π with the odd-multiple
// constraint c_l − c_r = (2k+1)π.
class KleinSetup {
 public:
  KleinSetup(long r_num, long r_den, long l_num, long l_den,
             bool upper_sign = true);
  static KleinSetup standard();  // c_r = π/2 = −c_l

  double c_r() const;
  double c_l() const;
  long constraint_k() const { return k_; }
  bool upper_sign() const { return upper_sign_; }

 private:
  long r_num_, r_den_, l_num_, l_den_;
  long k_;
  bool upper_sign_;
};

struct CouplingStats {
  double lambda;  // coupling, λ = √α (so λ = √(2π) at the fermion point)
  double vertex_coefficient;  // √(2πα), the j-smearing prefactor
  bool is_fermionic;
  bool is_bosonic;
  std::optional<long> n;  // α = 2(2n+1)π when fermionic
};

// ⟨ψ*(x)ψ(x')⟩_β = i / (2β sinh(π(u+iε)/β)), u = x−x'.
Complex bare_two_point(double u, const ThermalParams& tp);
Complex bare_two_point(Complex u, const ThermalParams& tp);
// Reversed ordering ⟨ψ(x')ψ*(x)⟩_β = −i / (2β sinh(π(u−iε)/β)).
Complex bare_two_point_reversed(double u, const ThermalParams& tp);

// Image-sum form −(1/2π) Σ_n (−1)^n / (i(u+iε) − nβ), summed over |n| ≤ nmax
// with symmetric pairing and Euler acceleration of the alternating tail.
Complex bare_two_point_series(double u, const ThermalParams& tp,
                              int nmax = 200);

// |⟨ψψ*⟩(u) − ⟨ψ*ψ⟩(u + iβ)| in the regulator→0 analytic continuation.
double bare_kms_check(double u, const ThermalParams& tp);

// S_α(u) = (i / (2β sinh(π(u+iε)/β)))^{α/2π}, principal branch.
Complex anyon_two_point(double alpha, double u, const ThermalParams& tp);
Complex anyon_two_point(double alpha, Complex u, const ThermalParams& tp);

double renorm_constant(double alpha, double eps);

// e^{iα sgn(t)/2} for |t| > ε; exact ±1 at the Bose/Fermi points.
Complex exchange_phase(double alpha, double t, double eps);

// D_ε(u) = Θ(|u|−ε) + Θ(ε−|u|) u²/ε².
double d_epsilon(double u, double eps);

// Thermal expectation of the α-commutator (two iε branches, principal powers):
//   −i(−1/(2β sinh(π(u+iε)/β)))^{α/2π} + i(−1/(2β sinh(π(u−iε)/β)))^{α/2π}.
Complex alpha_commutator_expectation(double alpha, double u,
                                     const ThermalParams& tp);

// ∫ g(u) ω_β([Ψ*,Ψ]_α)(u) du for a smooth test function g.
Complex alpha_commutator_smeared(double alpha, const TestFn& g,
                                 const ThermalParams& tp, double abs_tol = 1e-10);

Complex nonchiral_exchange(Chirality i, Chirality j, const KleinSetup& klein,
                           double t, double eps);

// ψ*_k(x)ψ_l(y) = ψ_l(y)ψ*_k(x) e^{−iπ δ_kl sgn(y−x)} e^{−i(1−δ_kl)(c_k−c_l)};
// the c's are given as rational multiples of π and must differ pairwise by
// odd multiples of π.
Complex multiplet_exchange(std::size_t k, std::size_t l,
                           const std::vector<std::pair<long, long>>& c_over_pi,
                           double u);

CouplingStats coupling_statistics_map(double alpha);

// LHS of the §-4 normalization condition
//   2 n_α(ε)² ε ∫_{−1}^{1} dδ cos(π/2 − (α/4)(1−δ²)) ω_β(e^{iλ j_Δ(δ)}),
// evaluated with the canonical n_α(ε); an ε-stability diagnostic.
double vertex_normalization_diagnostic(double alpha, double eps,
                                       const ThermalParams& tp);

}  // namespace thirring

#endif
