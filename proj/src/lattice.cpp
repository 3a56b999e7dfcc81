#include "thirring/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "thirring/errors.hpp"
#include "thirring/symplectic.hpp"

namespace thirring {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fermion sign for acting with mode `bit` on |state⟩.
double jw_sign(std::uint32_t state, int bit) {
  const std::uint32_t below = state & ((std::uint32_t{1} << bit) - 1);
  return (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

LatticeConfig::LatticeConfig(double L_, int M_, double beta_)
    : L(L_), M(M_), beta(beta_) {
  if (!(L > 0.0)) throw InvalidArgument("box length must be positive");
  if (M < 0) throw InvalidArgument("mode cutoff must be non-negative");
  if (2 * M + 1 > 16)
    throw ConfigTooLarge("mode count 2M+1 exceeds 16 (Fock dimension cap 65536)");
}

double LatticeConfig::mode_k(int j) const {
  if (j < -M || j > M) throw InvalidArgument("mode index outside [-M, M]");
  return 2.0 * kPi * static_cast<double>(j) / L;
}

double LatticeConfig::occupation(int j) const {
  const double x = beta * mode_k(j);
  // 1/(1+e^x), overflow-safe on both sides
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

FockOperator FockOperator::one_body(const LatticeConfig& cfg,
                                    std::vector<Complex> coeff,
                                    Complex diag_shift) {
  const auto m = static_cast<std::size_t>(cfg.mode_count());
  if (coeff.size() != m * m)
    throw DimensionMismatch("one-body coefficient matrix must be m×m");
  FockOperator op(cfg, Kind::one_body);
  op.coeff_ = std::move(coeff);
  op.shift_ = diag_shift;
  return op;
}

FockOperator FockOperator::ladder(const LatticeConfig& cfg, int j, bool dagger) {
  if (j < -cfg.M || j > cfg.M) throw InvalidArgument("ladder mode outside [-M, M]");
  FockOperator op(cfg, Kind::ladder);
  op.ladder_j_ = j;
  op.dagger_ = dagger;
  return op;
}

Complex FockOperator::coefficient(int a_bit, int b_bit) const {
  if (kind_ != Kind::one_body)
    throw InvalidArgument("coefficient() is a one-body accessor");
  const int m = cfg_.mode_count();
  return coeff_[static_cast<std::size_t>(a_bit) * m + b_bit];
}

double FockOperator::hermiticity_defect() const {
  if (kind_ != Kind::one_body) return 1.0;
  const int m = cfg_.mode_count();
  double defect = std::abs(shift_.imag());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      defect = std::max(defect,
                        std::abs(coeff_[static_cast<std::size_t>(a) * m + b] -
                                 std::conj(coeff_[static_cast<std::size_t>(b) * m + a])));
  return defect;
}

SparseVec FockOperator::apply_to_basis(std::uint32_t state) const {
  SparseVec out;
  const int m = cfg_.mode_count();
  if (kind_ == Kind::ladder) {
    const int bit = ladder_j_ + cfg_.M;
    const std::uint32_t mask = std::uint32_t{1} << bit;
    if (dagger_) {
      if (!(state & mask)) out.push_back({state | mask, jw_sign(state, bit)});
    } else {
      if (state & mask) out.push_back({state & ~mask, jw_sign(state, bit)});
    }
    return out;
  }
  out.reserve(static_cast<std::size_t>(m) * m / 2 + 1);
  if (shift_ != Complex(0.0)) out.push_back({state, shift_});
  for (int b = 0; b < m; ++b) {
    const std::uint32_t bmask = std::uint32_t{1} << b;
    if (!(state & bmask)) continue;
    const std::uint32_t mid = state & ~bmask;
    const double sb = jw_sign(state, b);
    for (int a = 0; a < m; ++a) {
      const Complex h = coeff_[static_cast<std::size_t>(a) * m + b];
      if (h == Complex(0.0)) continue;
      const std::uint32_t amask = std::uint32_t{1} << a;
      if (mid & amask) continue;
      out.push_back({mid | amask, h * sb * jw_sign(mid, a)});
    }
  }
  return out;
}

SparseVec FockOperator::adjoint_apply_to_basis(std::uint32_t state) const {
  if (kind_ == Kind::ladder) {
    FockOperator adj(cfg_, Kind::ladder);
    adj.ladder_j_ = ladder_j_;
    adj.dagger_ = !dagger_;
    return adj.apply_to_basis(state);
  }
  const int m = cfg_.mode_count();
  std::vector<Complex> ct(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      ct[static_cast<std::size_t>(a) * m + b] =
          std::conj(coeff_[static_cast<std::size_t>(b) * m + a]);
  FockOperator adj(cfg_, Kind::one_body);
  adj.coeff_ = std::move(ct);
  adj.shift_ = std::conj(shift_);
  return adj.apply_to_basis(state);
}

FockOperator build_current(const TestFn& f, const LatticeConfig& cfg) {
  const int m = cfg.mode_count();
  std::vector<Complex> h(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const double p = cfg.mode_k(b - cfg.M) - cfg.mode_k(a - cfg.M);
      h[static_cast<std::size_t>(a) * m + b] = f.fourier(p) / cfg.L;
    }
  }
  // Normal ordering: subtract the Gibbs expectation of the bare bilinear.
  Complex expect = 0.0;
  for (int a = 0; a < m; ++a)
    expect += h[static_cast<std::size_t>(a) * m + a] * cfg.occupation(a - cfg.M);
  return FockOperator::one_body(cfg, std::move(h), -expect);
}

std::vector<double> gibbs_weights(const LatticeConfig& cfg) {
  const int m = cfg.mode_count();
  const std::size_t dim = cfg.dim();
  std::vector<double> energy(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) energy[static_cast<std::size_t>(b)] = cfg.mode_k(b - cfg.M);

  std::vector<double> log_w(dim);
  double max_log = -1e300;
  for (std::size_t s = 0; s < dim; ++s) {
    double e = 0.0;
    for (int b = 0; b < m; ++b)
      if (s & (std::size_t{1} << b)) e += energy[static_cast<std::size_t>(b)];
    log_w[s] = -cfg.beta * e;
    max_log = std::max(max_log, log_w[s]);
  }
  double z = 0.0;
  std::vector<double> w(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    w[s] = std::exp(log_w[s] - max_log);
    z += w[s];
  }
  for (double& x : w) x /= z;
  return w;
}

Complex gibbs_expectation(const FockOperator& a, const LatticeConfig& cfg) {
  if (a.config().mode_count() != cfg.mode_count())
    throw DimensionMismatch("operator and configuration mode counts differ");
  const auto rho = gibbs_weights(cfg);
  Complex total = 0.0;
  const std::size_t dim = cfg.dim();
  for (std::size_t s = 0; s < dim; ++s) {
    if (rho[s] == 0.0) continue;
    for (const auto& [t, amp] : a.apply_to_basis(static_cast<std::uint32_t>(s)))
      if (t == s) total += rho[s] * amp;
  }
  return total;
}

namespace {

Complex product_expectation(const FockOperator& a, const FockOperator& b,
                            const std::vector<double>& rho,
                            const LatticeConfig& cfg,
                            std::vector<Complex>& scratch) {
  Complex total = 0.0;
  const std::size_t dim = cfg.dim();
  std::vector<std::uint32_t> touched;
  for (std::size_t s = 0; s < dim; ++s) {
    if (rho[s] == 0.0) continue;
    const auto av = a.adjoint_apply_to_basis(static_cast<std::uint32_t>(s));
    if (av.empty()) continue;
    touched.clear();
    for (const auto& [u, amp] : av) {
      scratch[u] += amp;
      touched.push_back(u);
    }
    Complex dot = 0.0;
    for (const auto& [u, amp] : b.apply_to_basis(static_cast<std::uint32_t>(s)))
      dot += std::conj(scratch[u]) * amp;
    for (std::uint32_t u : touched) scratch[u] = 0.0;
    total += rho[s] * dot;
  }
  return total;
}

}  // namespace

Complex gibbs_expectation_product(const FockOperator& a, const FockOperator& b,
                                  const LatticeConfig& cfg) {
  if (a.config().mode_count() != cfg.mode_count() ||
      b.config().mode_count() != cfg.mode_count())
    throw DimensionMismatch("operator and configuration mode counts differ");
  const auto rho = gibbs_weights(cfg);
  std::vector<Complex> scratch(cfg.dim(), Complex(0.0));
  return product_expectation(a, b, rho, cfg, scratch);
}

Complex commutator_expectation(const FockOperator& a, const FockOperator& b,
                               const LatticeConfig& cfg) {
  if (a.config().mode_count() != cfg.mode_count() ||
      b.config().mode_count() != cfg.mode_count())
    throw DimensionMismatch("operator and configuration mode counts differ");
  const auto rho = gibbs_weights(cfg);
  std::vector<Complex> scratch(cfg.dim(), Complex(0.0));
  return product_expectation(a, b, rho, cfg, scratch) -
         product_expectation(b, a, rho, cfg, scratch);
}

SchwingerReport schwinger_check(const TestFn& f, const TestFn& g,
                                const LatticeConfig& cfg) {
  const FockOperator jf = build_current(f, cfg);
  const FockOperator jg = build_current(g, cfg);
  SchwingerReport rep;
  rep.lattice_value = commutator_expectation(jf, jg, cfg);
  rep.continuum_sigma = sigma(f, g);
  const Complex target(0.0, rep.continuum_sigma);
  const double denom = std::abs(target);
  rep.rel_error = denom > 0.0 ? std::abs(rep.lattice_value - target) / denom
                              : std::abs(rep.lattice_value);
  return rep;
}

KernelSpec KernelSpec::diagonal(std::vector<double> values) {
  if (values.empty() || values.size() % 2 == 0)
    throw InvalidArgument("diagonal kernel needs an odd number of values");
  const int w = static_cast<int>(values.size() / 2);
  const int n = 2 * w + 1;
  KernelSpec spec{w, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  for (int i = 0; i < n; ++i) {
    if (values[static_cast<std::size_t>(i)] < 0.0)
      throw InvalidArgument("diagonal kernel must be positive");
    spec.matrix[static_cast<std::size_t>(i) * n + i] = values[static_cast<std::size_t>(i)];
  }
  return spec;
}

KernelSpec KernelSpec::rank_one(std::vector<double> values) {
  if (values.empty() || values.size() % 2 == 0)
    throw InvalidArgument("rank-one kernel needs an odd number of values");
  const int w = static_cast<int>(values.size() / 2);
  const int n = 2 * w + 1;
  KernelSpec spec{w, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      spec.matrix[static_cast<std::size_t>(i) * n + j] =
          values[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(j)];
  return spec;
}

double KernelSpec::trace() const {
  const int n = 2 * half_width + 1;
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += matrix[static_cast<std::size_t>(i) * n + i];
  return t;
}

double KernelSpec::entry(int i, int j) const {
  const int n = 2 * half_width + 1;
  return matrix[static_cast<std::size_t>(i + half_width) * n + (j + half_width)];
}

Complex shift_limit_check(const KernelSpec& kernel, int shift_j,
                          const LatticeConfig& cfg) {
  const int w = kernel.half_width;
  if (std::abs(shift_j) + w > cfg.M)
    throw ConfigTooLarge("shifted kernel window exceeds the mode range");
  const int m = cfg.mode_count();
  std::vector<Complex> h(static_cast<std::size_t>(m) * m, Complex(0.0));
  for (int j = -w; j <= w; ++j) {
    for (int jp = -w; jp <= w; ++jp) {
      const double kij = kernel.entry(j, jp);
      if (kij == 0.0) continue;
      // ψ~(k_q) ↔ √L c_{−q}: the shifted bilinear lands on modes −(j+s).
      const int a = -(j + shift_j) + cfg.M;
      const int b = -(jp + shift_j) + cfg.M;
      h[static_cast<std::size_t>(a) * m + b] += kij / cfg.L;
    }
  }
  return gibbs_expectation(FockOperator::one_body(cfg, std::move(h)), cfg);
}

Complex lattice_bare_correlator(double x, double xp, const LatticeConfig& cfg) {
  const double u = x - xp;
  Complex total = 0.0;
  for (int j = -cfg.M; j <= cfg.M; ++j)
    total += std::polar(1.0, -cfg.mode_k(j) * u) * cfg.occupation(j);
  return total / cfg.L;
}

}  // namespace thirring
