#include "thirring/lattice.hpp"

#include <cmath>
#include <doctest.h>

#include "thirring/correlators.hpp"
#include "thirring/errors.hpp"
#include "thirring/symplectic.hpp"

using namespace thirring;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Dense matrix element ⟨a|Op|b⟩ from the sparse basis application.
Complex mat_el(const FockOperator& op, std::uint32_t a, std::uint32_t b) {
  for (const auto& [s, amp] : op.apply_to_basis(b))
    if (s == a) return amp;
  return 0.0;
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(LatticeConfig(10.0, 7, 1.0));
  CHECK_THROWS_AS(LatticeConfig(10.0, 8, 1.0), ConfigTooLarge);
  CHECK_THROWS_AS(LatticeConfig(-1.0, 3, 1.0), InvalidArgument);
  const LatticeConfig cfg(10.0, 2, 1.5);
  CHECK(cfg.mode_count() == 5);
  CHECK(cfg.dim() == 32);
  CHECK(cfg.mode_k(1) == doctest::Approx(2.0 * kPi / 10.0));
}

TEST_CASE("gibbs state basics") {
  const LatticeConfig cfg(8.0, 2, 2.0);
  const auto w = gibbs_weights(cfg);
  double total = 0.0;
  for (double x : w) {
    CHECK(x >= 0.0);
    total += x;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("occupations match 1/(1+e^{beta k}) exactly") {
    const int m = cfg.mode_count();
    for (int j = -2; j <= 2; ++j) {
      std::vector<Complex> h(static_cast<std::size_t>(m) * m, Complex(0.0));
      h[static_cast<std::size_t>(j + 2) * m + (j + 2)] = 1.0;
      const Complex occ = gibbs_expectation(FockOperator::one_body(cfg, h), cfg);
      const double expected = 1.0 / (1.0 + std::exp(cfg.beta * cfg.mode_k(j)));
      CHECK(std::abs(occ - Complex(expected, 0.0)) < 1e-12);
    }
  }
  SUBCASE("zero mode is half filled at any beta") {
    for (double beta : {-3.0, 0.0, 0.7, 50.0})
      CHECK(LatticeConfig(8.0, 2, beta).occupation(0) == doctest::Approx(0.5));
  }
  SUBCASE("identity expectation is one") {
    const int m = cfg.mode_count();
    std::vector<Complex> zero(static_cast<std::size_t>(m) * m, Complex(0.0));
    const auto id = FockOperator::one_body(cfg, zero, Complex(1.0, 0.0));
    CHECK(std::abs(gibbs_expectation(id, cfg) - Complex(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("build_current structure") {
  const LatticeConfig cfg(12.0, 2, 1.0);
  const TestFn f = TestFn::gaussian(0.0, 1.0);
  const FockOperator jf = build_current(f, cfg);

  SUBCASE("one-body coefficients are ft(k_b - k_a)/L, entry by entry") {
    // independent oracle: the Gaussian transform in closed form
    for (int a = 0; a < cfg.mode_count(); ++a) {
      for (int b = 0; b < cfg.mode_count(); ++b) {
        const double p = cfg.mode_k(b - cfg.M) - cfg.mode_k(a - cfg.M);
        const Complex expected =
            std::sqrt(kPi) * std::exp(-p * p / 4.0) / cfg.L;
        CHECK(std::abs(jf.coefficient(a, b) - expected) < 1e-14);
      }
    }
  }
  SUBCASE("fock matrix elements between one-particle states") {
    for (int a = 0; a < cfg.mode_count(); ++a) {
      for (int b = 0; b < cfg.mode_count(); ++b) {
        if (a == b) continue;
        const Complex el = mat_el(jf, std::uint32_t{1} << a, std::uint32_t{1} << b);
        CHECK(std::abs(el - jf.coefficient(a, b)) < 1e-14);
      }
    }
  }
  SUBCASE("normal ordering: vanishing thermal expectation") {
    CHECK(std::abs(gibbs_expectation(jf, cfg)) < 1e-13);
  }
  SUBCASE("hermitian for real f") { CHECK(jf.hermiticity_defect() < 1e-12); }
  SUBCASE("zero function gives the zero operator") {
    const FockOperator z = build_current(TestFn::zero(), cfg);
    for (std::uint32_t s : {0u, 5u, 31u})
      CHECK(z.apply_to_basis(s).empty());
  }
  SUBCASE("constant on the box couples only zero momentum transfer") {
    // f ≡ 0.7 on [−L/2, L/2]: ft vanishes at every nonzero mode difference,
    // so J_f = 0.7 (N − ⟨N⟩)
    const TestFn c = TestFn::box(-cfg.L / 2.0, cfg.L / 2.0, 0.7);
    const FockOperator jc = build_current(c, cfg);
    for (int a = 0; a < cfg.mode_count(); ++a)
      for (int b = 0; b < cfg.mode_count(); ++b)
        if (a != b) CHECK(std::abs(jc.coefficient(a, b)) < 1e-12);
    const std::uint32_t s = 0b01011;  // three particles
    const auto out = jc.apply_to_basis(s);
    Complex diag = 0.0;
    for (const auto& [t, amp] : out)
      if (t == s) diag += amp;
    double expected_n = 0.0;
    for (int j = -2; j <= 2; ++j) expected_n += cfg.occupation(j);
    CHECK(std::abs(diag - Complex(0.7 * (3.0 - expected_n), 0.0)) < 1e-12);
  }
}

TEST_CASE("charge conservation is exact") {
  const LatticeConfig cfg(10.0, 2, 1.3);
  const int m = cfg.mode_count();
  const FockOperator jf = build_current(TestFn::gaussian(0.3, 1.1), cfg);
  std::vector<Complex> nid(static_cast<std::size_t>(m) * m, Complex(0.0));
  for (int a = 0; a < m; ++a) nid[static_cast<std::size_t>(a) * m + a] = 1.0;
  const FockOperator number = FockOperator::one_body(cfg, nid);
  // [J_f, N] |s⟩ = 0 for every basis state
  for (std::uint32_t s = 0; s < cfg.dim(); ++s) {
    std::vector<Complex> acc(cfg.dim(), Complex(0.0));
    for (const auto& [t, amp] : number.apply_to_basis(s))
      for (const auto& [u, amp2] : jf.apply_to_basis(t)) acc[u] += amp * amp2;
    for (const auto& [t, amp] : jf.apply_to_basis(s))
      for (const auto& [u, amp2] : number.apply_to_basis(t)) acc[u] -= amp * amp2;
    for (const Complex& v : acc) CHECK(std::abs(v) < 1e-13);
  }
}

TEST_CASE("schwinger commutator expectation") {
  const TestFn f = TestFn::gaussian(0.0, 2.0);
  const TestFn g = TestFn::poly_gaussian({0.0, 1.0}, 0.0, 2.0);

  SUBCASE("self commutator vanishes exactly") {
    const LatticeConfig cfg(20.0, 4, 5.0);
    const auto rep = schwinger_check(f, f, cfg);
    CHECK(std::abs(rep.lattice_value) < 1e-14);
  }
  SUBCASE("antisymmetry in (f, g)") {
    const LatticeConfig cfg(20.0, 4, 5.0);
    const auto fg = schwinger_check(f, g, cfg);
    const auto gf = schwinger_check(g, f, cfg);
    CHECK(std::abs(fg.lattice_value + gf.lattice_value) < 1e-13);
  }
  SUBCASE("tracial state gives zero") {
    const LatticeConfig cfg(20.0, 4, 0.0);
    const auto rep = schwinger_check(f, g, cfg);
    CHECK(std::abs(rep.lattice_value) < 1e-13);
  }
  SUBCASE("beta sign flip negates the value") {
    const auto plus = schwinger_check(f, g, LatticeConfig(20.0, 4, 5.0));
    const auto minus = schwinger_check(f, g, LatticeConfig(20.0, 4, -5.0));
    CHECK(std::abs(plus.lattice_value + minus.lattice_value) < 1e-10);
  }
  SUBCASE("value is purely imaginary for real f, g") {
    const auto rep = schwinger_check(f, g, LatticeConfig(20.0, 5, 5.0));
    CHECK(std::abs(rep.lattice_value.real()) < 1e-13);
  }
  SUBCASE("converges to i sigma(f,g) over the M sweep") {
    // continuum target: σ(e^{−x²/4}, x e^{−x²/4}) = −2/(4√(2π)) at w = 2
    double prev = 1e9;
    for (int M : {4, 5, 6}) {
      const auto rep = schwinger_check(f, g, LatticeConfig(20.0, M, 5.0));
      CHECK(rep.continuum_sigma ==
            doctest::Approx(-2.0 / (4.0 * std::sqrt(2.0 * kPi))).epsilon(1e-10));
      CHECK(rep.rel_error < prev);
      prev = rep.rel_error;
    }
    CHECK(prev < 0.10);
  }
}

TEST_CASE("current variance reproduces the continuum thermal form") {
  // ⟨J_f²⟩ on the box (normal-ordered, so ⟨J_f⟩ = 0) converges to
  // Q_β(f) = ∫ dp/(2π)² p/(1−e^{−βp}) |f~(p)|²: one identity tying the
  // Gibbs state, the current normalization, and the momentum measure.
  const TestFn f = TestFn::gaussian(0.0, 2.0);
  const ThermalParams tp{5.0, 1e-8};
  const double q = thermal_quadratic(f, tp);
  double prev = 1e300;
  for (int M : {4, 5, 6, 7}) {
    const LatticeConfig cfg(20.0, M, 5.0);
    const auto jf = build_current(f, cfg);
    const Complex var = gibbs_expectation_product(jf, jf, cfg);
    CHECK(std::abs(var.imag()) < 1e-12);
    const double rel = std::abs(var.real() - q) / q;
    CHECK(rel < prev);
    prev = rel;
  }
  CHECK(prev < 0.001);
}

TEST_CASE("lattice KMS relation for single modes") {
  const LatticeConfig cfg(10.0, 3, 2.0);
  for (int j : {-3, -1, 0, 2}) {
    const auto cr = FockOperator::ladder(cfg, j, true);
    const auto an = FockOperator::ladder(cfg, j, false);
    // tr(ρ c†_j c_j) = e^{−βk_j} tr(ρ c_j c†_j)
    const Complex lhs = gibbs_expectation_product(cr, an, cfg);
    const Complex rhs = std::exp(-cfg.beta * cfg.mode_k(j)) *
                        gibbs_expectation_product(an, cr, cfg);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(std::abs(lhs - Complex(cfg.occupation(j), 0.0)) < 1e-12);
  }
}

TEST_CASE("shift limit realization of the window bilinear") {
  const LatticeConfig cfg(16.0, 7, 4.0);
  // even positive diagonal kernel, concentrated inside the window
  std::vector<double> diag;
  for (int j = -2; j <= 2; ++j) {
    const double k = cfg.mode_k(j);
    diag.push_back(std::exp(-4.0 * k * k));
  }
  const auto kernel = KernelSpec::diagonal(diag);
  const double trace = kernel.trace();

  SUBCASE("deep positive shift recovers the trace") {
    const Complex v = shift_limit_check(kernel, 5, cfg);
    CHECK(std::abs(v - Complex(trace / cfg.L, 0.0)) < 0.02 * trace / cfg.L);
  }
  SUBCASE("deep negative shift empties out") {
    const Complex v = shift_limit_check(kernel, -5, cfg);
    CHECK(std::abs(v) < 0.02 * trace / cfg.L);
  }
  SUBCASE("zero shift gives the exact thermal sum for an even kernel") {
    const Complex v = shift_limit_check(kernel, 0, cfg);
    double expected = 0.0;
    for (int j = -2; j <= 2; ++j)
      expected += kernel.entry(j, j) /
                  (cfg.L * (1.0 + std::exp(cfg.beta * cfg.mode_k(j))));
    CHECK(std::abs(v - Complex(expected, 0.0)) < 1e-13);
  }
  SUBCASE("window leaving the mode range is rejected") {
    CHECK_THROWS_AS(shift_limit_check(kernel, 6, cfg), ConfigTooLarge);
  }
  SUBCASE("rank-one kernels work the same way") {
    const auto r1 = KernelSpec::rank_one({0.2, 1.0, 0.2});
    const Complex v = shift_limit_check(r1, 6, cfg);
    CHECK(std::abs(v - Complex(r1.trace() / cfg.L, 0.0)) < 0.03 * r1.trace() / cfg.L);
  }
}

TEST_CASE("lattice bare correlator") {
  SUBCASE("coincident points: sum of occupations") {
    const LatticeConfig cfg(20.0, 7, 2.0);
    const Complex v = lattice_bare_correlator(1.0, 1.0, cfg);
    double expected = 0.0;
    for (int j = -7; j <= 7; ++j) expected += cfg.occupation(j);
    expected /= cfg.L;
    CHECK(std::abs(v - Complex(expected, 0.0)) < 1e-14);
    CHECK(v.real() > 0.0);
  }
  SUBCASE("tracial state gives the half-weight Dirichlet kernel") {
    const LatticeConfig cfg(20.0, 7, 0.0);
    const double u = 1.3;
    Complex expected = 0.0;
    for (int j = -7; j <= 7; ++j)
      expected += std::polar(1.0, -cfg.mode_k(j) * u);
    expected *= 0.5 / cfg.L;
    CHECK(std::abs(lattice_bare_correlator(u, 0.0, cfg) - expected) < 1e-14);
  }
  SUBCASE("thermal part approaches the continuum sinh form") {
    // The full mode sum carries the conditionally convergent filled-sea
    // boundary (an O(1/2πu) window oscillation at any fixed M); the
    // absolutely convergent piece is the thermal correction
    // (1/L) Σ e^{−iku}(N(k) − Θ(−k)), whose continuum value is
    // i/(2β sinh(πu/β)) − i/(2πu). That piece converges at 15 modes.
    const double beta = 2.0;
    const ThermalParams tp{beta, 1e-9};
    auto thermal_part = [&](double u, const LatticeConfig& cfg) {
      Complex s = 0.0;
      for (int j = -cfg.M; j <= cfg.M; ++j) {
        const double sea = j < 0 ? 1.0 : (j == 0 ? 0.5 : 0.0);
        s += std::polar(1.0, -cfg.mode_k(j) * u) * (cfg.occupation(j) - sea);
      }
      return s / cfg.L;
    };
    for (double u : {0.8, 1.5}) {
      const Complex cont =
          bare_two_point(u, tp) - Complex(0.0, 1.0) / (2.0 * kPi * u);
      const Complex lat7 = thermal_part(u, LatticeConfig(20.0, 7, beta));
      CHECK(std::abs(lat7 - cont) / std::abs(cont) < 0.10);
    }
    // refinement from M = 5 to M = 7 improves the worst point
    const Complex cont08 =
        bare_two_point(0.8, tp) - Complex(0.0, 1.0) / (2.0 * kPi * 0.8);
    const double e5 = std::abs(thermal_part(0.8, LatticeConfig(20.0, 5, beta)) - cont08);
    const double e7 = std::abs(thermal_part(0.8, LatticeConfig(20.0, 7, beta)) - cont08);
    CHECK(e7 < e5);
  }
}

TEST_CASE("dimension mismatch is detected") {
  const LatticeConfig small(10.0, 2, 1.0);
  const LatticeConfig large(10.0, 3, 1.0);
  const FockOperator op = build_current(TestFn::gaussian(0.0, 1.0), small);
  CHECK_THROWS_AS(gibbs_expectation(op, large), DimensionMismatch);
  const int m = small.mode_count();
  CHECK_THROWS_AS(
      FockOperator::one_body(small,
                             std::vector<Complex>(static_cast<std::size_t>(m), Complex(0.0))),
      DimensionMismatch);
}
