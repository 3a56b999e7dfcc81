#ifndef THIRRING_LATTICE_HPP
#define THIRRING_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "thirring/testfn.hpp"

namespace thirring {

// Finite-mode fermion box: modes k_j = 2πj/L, j ∈ {−M,…,M}; Fock dimension
// 2^(2M+1) capped at 65536 (M ≤ 7).
struct LatticeConfig {
  double L;
  int M;
  double beta;  // any sign; β = 0 is the tracial state

  LatticeConfig(double L_, int M_, double beta_);
  int mode_count() const { return 2 * M + 1; }
  double mode_k(int j) const;          // j ∈ [−M, M]
  double occupation(int j) const;      // 1/(1 + e^{β k_j})
  std::size_t dim() const { return std::size_t{1} << mode_count(); }
};

using SparseVec = std::vector<std::pair<std::uint32_t, Complex>>;

// Operator on the occupation-number Fock space. One-body operators are
// number conserving by construction; ladder operators shift the charge.
class FockOperator {
 public:
  static FockOperator one_body(const LatticeConfig& cfg,
                               std::vector<Complex> coeff,  // m×m row-major
                               Complex diag_shift = Complex(0.0));
  static FockOperator ladder(const LatticeConfig& cfg, int j, bool dagger);

  SparseVec apply_to_basis(std::uint32_t state) const;
  SparseVec adjoint_apply_to_basis(std::uint32_t state) const;

  const LatticeConfig& config() const { return cfg_; }
  bool is_one_body() const { return kind_ == Kind::one_body; }
  Complex coefficient(int a_bit, int b_bit) const;  // one-body entry
  Complex diag_shift() const { return shift_; }
  double hermiticity_defect() const;  // max |h − h†| entry (one-body)

 private:
  enum class Kind { one_body, ladder };
  FockOperator(const LatticeConfig& cfg, Kind kind) : cfg_(cfg), kind_(kind) {}

  LatticeConfig cfg_;
  Kind kind_;
  std::vector<Complex> coeff_;  // one-body matrix
  Complex shift_{0.0};
  int ladder_j_ = 0;
  bool dagger_ = false;
};

// J_f = (1/L) Σ_{j,j'} f~(k_{j'} − k_j) :c†_j c_{j'}: with normal ordering
// as subtraction of the Gibbs expectation.
FockOperator build_current(const TestFn& f, const LatticeConfig& cfg);

std::vector<double> gibbs_weights(const LatticeConfig& cfg);

Complex gibbs_expectation(const FockOperator& a, const LatticeConfig& cfg);
// tr(ρ A B)
Complex gibbs_expectation_product(const FockOperator& a, const FockOperator& b,
                                  const LatticeConfig& cfg);
Complex commutator_expectation(const FockOperator& a, const FockOperator& b,
                               const LatticeConfig& cfg);

struct SchwingerReport {
  Complex lattice_value;   // ⟨[J_f, J_g]⟩ on the finite Fock space
  double continuum_sigma;  // σ(f, g) from the symplectic module
  double rel_error;        // |lattice − iσ| / |σ|
};

SchwingerReport schwinger_check(const TestFn& f, const TestFn& g,
                                const LatticeConfig& cfg);

// Positive kernel on a mode sub-window j ∈ [−w, w].
struct KernelSpec {
  int half_width;
  std::vector<double> matrix;  // (2w+1)² row-major

  static KernelSpec diagonal(std::vector<double> values);
  static KernelSpec rank_one(std::vector<double> values);
  double trace() const;
  double entry(int i, int j) const;  // i, j ∈ [−w, w]
};

// Gibbs expectation of the Lemma-2.7 bilinear
//   B_s = (1/L) Σ_{j,j'} K(k_j, k_{j'}) ψ~*(k_j + k_s) ψ~(k_{j'} + k_s)
// realized on the physical modes (ψ~(k) ↔ √L c_{−k}); deep positive shifts
// approach Σ_j K(k_j,k_j)/L, deep negative shifts approach 0. Requires
// |shift| + w ≤ M.
Complex shift_limit_check(const KernelSpec& kernel, int shift_j,
                          const LatticeConfig& cfg);

// (1/L) Σ_j e^{−i k_j u} / (1 + e^{β k_j}); sensible for |u| ≪ L.
Complex lattice_bare_correlator(double x, double xp, const LatticeConfig& cfg);

}  // namespace thirring

#endif
