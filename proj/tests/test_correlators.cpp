#include "thirring/correlators.hpp"

#include <cmath>
#include <doctest.h>

#include "thirring/errors.hpp"

using namespace thirring;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("bare two-point function") {
  SUBCASE("coincident points are regulator dominated") {
    const ThermalParams tp{kPi, 1e-6};
    const Complex g = bare_two_point(0.0, tp);
    // sinh(iπε/β) ≈ iπε/β: value ≈ 1/(2π·1e−6), real
    CHECK(g.real() == doctest::Approx(1.0 / (2.0 * kPi * 1e-6)).epsilon(1e-6));
    CHECK(std::abs(g.imag() / g.real()) < 1e-3);
  }
  SUBCASE("vacuum limit at large beta") {
    const ThermalParams tp{1e6, 1e-9};
    const Complex g = bare_two_point(1.0, tp);
    const Complex expected = Complex(0.0, 1.0) / (2.0 * kPi * Complex(1.0, 1e-9));
    CHECK(std::abs(g - expected) < 1e-9);
  }
  SUBCASE("series form agrees with the sinh form") {
    for (double beta : {1.0, kPi, 10.0}) {
      const ThermalParams tp{beta, 1e-8};
      for (double u : {0.3, 1.0, 2.5, -1.7}) {
        const Complex closed = bare_two_point(u, tp);
        const Complex series = bare_two_point_series(u, tp, 200);
        CHECK(std::abs(closed - series) < 1e-10);
      }
    }
  }
  SUBCASE("explicit thermal-image form is a third independent route") {
    // i/(2β sinh(πu/β)) = i/(2πu) + (iu/π) Σ_{n≥1} (−1)^n/(u² + n²β²)
    for (double beta : {1.0, kPi}) {
      const ThermalParams tp{beta, 1e-10};
      for (double u : {0.4, 1.1, -2.3}) {
        Complex sum = 0.0;
        double sign = -1.0;
        for (int n = 1; n <= 2000; ++n) {
          sum += sign / (u * u + static_cast<double>(n) * n * beta * beta);
          sign = -sign;
        }
        // average of S_2000 and S_2001 tames the alternation
        Complex sum2 = sum + 0.5 * sign / (u * u + 2001.0 * 2001.0 * beta * beta);
        const Complex explicit_form =
            Complex(0.0, 1.0) / (2.0 * kPi * u) +
            Complex(0.0, u / kPi) * sum2;
        CHECK(std::abs(explicit_form - bare_two_point(u, tp)) < 1e-7);
      }
    }
  }
  SUBCASE("reversed ordering uses the -ieps prescription") {
    const ThermalParams tp{2.0, 1e-6};
    const Complex fwd = bare_two_point(0.7, tp);
    const Complex rev = bare_two_point_reversed(0.7, tp);
    // conj flips the regulator: G₊(u) = conj(G₋(u)) for real u
    CHECK(std::abs(fwd - std::conj(rev)) < 1e-12);
  }
}

TEST_CASE("bare KMS relation") {
  SUBCASE("pointwise residuals") {
    CHECK(bare_kms_check(0.7, ThermalParams{kPi, 1e-12}) < 1e-10);
    CHECK(bare_kms_check(-1.3, ThermalParams{2.0, 1e-12}) < 1e-10);
  }
  SUBCASE("32-point sweep") {
    const ThermalParams tp{kPi, 1e-12};
    double worst = 0.0;
    for (int i = 0; i < 32; ++i)
      worst = std::max(worst, bare_kms_check(-3.25 + 0.2 * i, tp));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("anyon two-point closed forms") {
  const ThermalParams tp{kPi, 1e-8};
  SUBCASE("alpha = 2pi reproduces the bare function") {
    for (double u = -2.0; u <= 2.0; u += 0.173)
      CHECK(std::abs(anyon_two_point(2.0 * kPi, u, tp) - bare_two_point(u, tp)) <
            1e-12);
  }
  SUBCASE("alpha = 4pi is minus the squared sinh denominator") {
    for (double u : {0.4, 1.1, -0.8}) {
      const Complex d =
          2.0 * tp.beta * std::sinh(kPi * Complex(u, tp.epsilon_reg) / tp.beta);
      CHECK(std::abs(anyon_two_point(4.0 * kPi, u, tp) - (-1.0 / (d * d))) <
            1e-12);
    }
  }
  SUBCASE("alpha = 6pi is -i over the cubed denominator") {
    for (double u : {0.4, -1.2}) {
      const Complex d =
          2.0 * tp.beta * std::sinh(kPi * Complex(u, tp.epsilon_reg) / tp.beta);
      CHECK(std::abs(anyon_two_point(6.0 * kPi, u, tp) -
                     (-Complex(0.0, 1.0) / (d * d * d))) < 1e-12);
    }
  }
  SUBCASE("alpha = 0 is identically one") {
    for (double u : {-1.0, 0.0, 2.0})
      CHECK(std::abs(anyon_two_point(0.0, u, tp) - Complex(1.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("S_alpha property grid") {
  const double alphas[] = {kPi, 2.0 * kPi, 4.0 * kPi, 6.0 * kPi, 7.3};
  for (double beta : {1.0, kPi}) {
    const ThermalParams tp{beta, 1e-12};
    for (double alpha : alphas) {
      for (int i = 1; i <= 16; ++i) {
        const double u = 0.1 + 0.15 * i;
        const Complex s_pos = anyon_two_point(alpha, u, tp);
        const Complex s_neg = anyon_two_point(alpha, -u, tp);
        // Hermiticity
        CHECK(std::abs(std::conj(s_pos) - s_neg) < 1e-10);
        // α-commutativity: S(−u) = e^{iα/2} S(u) for u < 0
        CHECK(std::abs(s_pos - std::polar(1.0, 0.5 * alpha) * s_neg) < 1e-10);
        // KMS: S(u) = S(−u + iβ)
        CHECK(std::abs(s_pos - anyon_two_point(alpha, Complex(-u, beta), tp)) <
              1e-10);
      }
    }
  }
}

TEST_CASE("renormalization constant") {
  CHECK(renorm_constant(2.0 * kPi, 1.0 / (2.0 * kPi)) == doctest::Approx(1.0));
  for (double eps : {0.1, 1e-3})
    CHECK(renorm_constant(2.0 * kPi, eps) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi * eps)).epsilon(1e-14));
  CHECK(renorm_constant(0.0, 0.3) == 1.0);
  CHECK_THROWS_AS(renorm_constant(2.0, -1.0), InvalidArgument);
  // AnyonField carries the same constant
  const AnyonField field{2.0 * kPi, 0.05, 0.0, Chirality::left};
  CHECK(field.renorm() ==
        doctest::Approx(renorm_constant(2.0 * kPi, 0.05)).epsilon(1e-15));
}

TEST_CASE("exchange phases") {
  SUBCASE("Fermi points give exactly -1") {
    for (double alpha : {2.0 * kPi, 6.0 * kPi, 10.0 * kPi}) {
      CHECK(exchange_phase(alpha, 0.5, 1e-3) == Complex(-1.0, 0.0));
      CHECK(exchange_phase(alpha, -2.0, 1e-3) == Complex(-1.0, 0.0));
    }
  }
  SUBCASE("Bose points give exactly +1") {
    for (double alpha : {4.0 * kPi, 8.0 * kPi})
      CHECK(exchange_phase(alpha, 0.5, 1e-3) == Complex(1.0, 0.0));
  }
  SUBCASE("generic anyon phase e^{i alpha sgn(t)/2}") {
    CHECK(std::abs(exchange_phase(kPi, -0.5, 1e-3) - Complex(0.0, -1.0)) <
          1e-15);
    const Complex p = exchange_phase(7.3, 1.0, 1e-3);
    CHECK(std::abs(p - std::polar(1.0, 3.65)) < 1e-15);
    CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
  }
  SUBCASE("inside the cutoff the phase is not defined") {
    CHECK_THROWS_AS(exchange_phase(2.0 * kPi, 0.5, 0.5), InsideCutoff);
    CHECK_THROWS_AS(exchange_phase(2.0 * kPi, 0.0, 1e-3), InsideCutoff);
  }
}

TEST_CASE("d_epsilon overlap factor") {
  CHECK(d_epsilon(2.0, 1.0) == 1.0);
  CHECK(d_epsilon(-1.0, 1.0) == 1.0);
  CHECK(d_epsilon(0.0, 1.0) == 0.0);
  CHECK(d_epsilon(0.5, 1.0) == doctest::Approx(0.25));
  // Identity with the symplectic form of reflected ramps:
  // 4π σ(φ_{ε,x}, φ_{ε,x'}) = sgn(x−x') outside the overlap; inside, the
  // exact ramp form interpolates as 2|u|/ε − u²/ε² (the in-text D_ε
  // quadratic u²/ε² matches only at the boundary points 0 and ±ε).
  const double eps = 0.8;
  for (double u : {0.9, -2.0, 1.3}) {
    const TestFn fx = TestFn::ramp(eps).reflected().shifted(u);  // φ_ε(u−y)
    const TestFn fx2 = TestFn::ramp(eps).reflected();            // φ_ε(−y)
    const double lhs = 4.0 * kPi * sigma(fx, fx2);
    const double rhs = (u > 0 ? 1.0 : -1.0) * d_epsilon(u, eps);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  for (double u : {0.3, -0.5}) {
    const TestFn fx = TestFn::ramp(eps).reflected().shifted(u);
    const TestFn fx2 = TestFn::ramp(eps).reflected();
    const double lhs = 4.0 * kPi * sigma(fx, fx2);
    const double a = std::abs(u) / eps;
    const double rhs = (u > 0 ? 1.0 : -1.0) * (2.0 * a - a * a);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  // boundary agreement of the two overlap descriptions
  CHECK(d_epsilon(eps, eps) == 1.0);
  CHECK(d_epsilon(0.0, eps) == 0.0);
}

TEST_CASE("alpha commutator expectation") {
  SUBCASE("alpha = 2pi: supported at coincident points only") {
    // away from u = 0 the two iε branches merge at rate O(ε)
    for (double u : {0.5, 1.5, -0.9}) {
      const double v4 =
          std::abs(alpha_commutator_expectation(2.0 * kPi, u, {kPi, 1e-4}));
      const double v5 =
          std::abs(alpha_commutator_expectation(2.0 * kPi, u, {kPi, 1e-5}));
      CHECK(v4 < 1e-3);
      CHECK(v5 < 0.2 * v4);
      CHECK(std::abs(alpha_commutator_expectation(2.0 * kPi, u, {kPi, 1e-7})) <
            1e-5);
    }
    CHECK(std::abs(alpha_commutator_expectation(2.0 * kPi, 0.0, {kPi, 1e-4})) >
          1.0);
  }
  SUBCASE("smeared alpha = 2pi converges to g(0)") {
    const TestFn g = TestFn::gaussian(0.0, 1.0);
    const ThermalParams fine{kPi, 1e-5};
    const Complex val = alpha_commutator_smeared(2.0 * kPi, g, fine, 1e-8);
    CHECK(std::abs(val - Complex(g.eval(0.0), 0.0)) < 1e-3);
    // bookkeeping: n_{2π}(ε)² ε = 1/(2π), the coefficient that makes the
    // anticommutator density a unit delta
    CHECK(renorm_constant(2.0 * kPi, 1e-5) * renorm_constant(2.0 * kPi, 1e-5) *
              1e-5 ==
          doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  }
  SUBCASE("smeared alpha = 4pi gives -g'(0)/2pi") {
    const TestFn g = TestFn::gaussian(0.3, 0.9);  // g'(0) ≠ 0
    const TestFn gp = g.weak_derivative();
    const ThermalParams fine{kPi, 1e-5};
    const Complex val = alpha_commutator_smeared(4.0 * kPi, g, fine, 1e-8);
    CHECK(std::abs(val - Complex(-gp.eval(0.0) / (2.0 * kPi), 0.0)) < 1e-3);
  }
  SUBCASE("smeared alpha = 6pi: (1/8pi^2)(g''(0) - (pi^2/beta^2) g(0))") {
    const TestFn g = TestFn::gaussian(0.0, 1.0);
    const TestFn gpp = g.weak_derivative().weak_derivative();
    for (double beta : {kPi, 2.0}) {
      const double target = (gpp.eval(0.0) - (kPi * kPi) / (beta * beta) *
                                                 g.eval(0.0)) /
                            (8.0 * kPi * kPi);
      const Complex v3 =
          alpha_commutator_smeared(6.0 * kPi, g, ThermalParams{beta, 1e-3}, 1e-8);
      const Complex v4 =
          alpha_commutator_smeared(6.0 * kPi, g, ThermalParams{beta, 1e-4}, 1e-8);
      // Richardson in ε (first-order regulator error)
      const Complex extrap = v4 + (v4 - v3) / 9.0;
      CHECK(std::abs(extrap - Complex(target, 0.0)) / std::abs(target) < 0.02);
    }
  }
}

TEST_CASE("nonchiral exchange") {
  const KleinSetup klein = KleinSetup::standard();
  CHECK(klein.c_r() == doctest::Approx(kPi / 2.0));
  CHECK(klein.c_l() == doctest::Approx(-kPi / 2.0));
  SUBCASE("opposite chiralities anticommute through the Klein constraint") {
    CHECK(nonchiral_exchange(Chirality::right, Chirality::left, klein, 0.1,
                             1e-3) == Complex(-1.0, 0.0));
    CHECK(nonchiral_exchange(Chirality::left, Chirality::right, klein, -5.0,
                             1e-3) == Complex(-1.0, 0.0));
    // both ± sign conventions give the same value
    const KleinSetup lower(1, 2, -1, 2, false);
    CHECK(nonchiral_exchange(Chirality::left, Chirality::right, lower, 1.0,
                             1e-3) == Complex(-1.0, 0.0));
  }
  SUBCASE("same chirality is the alpha = 2pi fermionic phase") {
    CHECK(nonchiral_exchange(Chirality::left, Chirality::left, klein, 0.5,
                             1e-3) == Complex(-1.0, 0.0));
    CHECK_THROWS_AS(nonchiral_exchange(Chirality::right, Chirality::right,
                                       klein, 1e-4, 1e-3),
                    InsideCutoff);
  }
  SUBCASE("invariant violations are construction errors") {
    CHECK_THROWS_AS(KleinSetup(0, 1, 2, 1), InvalidKleinVector);  // c_l−c_r = 2π
    CHECK_THROWS_AS(KleinSetup(1, 3, 2, 3), InvalidKleinVector);  // = π/3
  }
}

TEST_CASE("multiplet exchange") {
  const std::vector<std::pair<long, long>> pair_pi = {{0, 1}, {1, 1}};
  const std::vector<std::pair<long, long>> pair_3pi = {{0, 1}, {3, 1}};
  SUBCASE("same component: -1 away from coincidence") {
    CHECK(multiplet_exchange(0, 0, pair_pi, 0.5) == Complex(-1.0, 0.0));
    CHECK(multiplet_exchange(1, 1, pair_pi, -0.5) == Complex(-1.0, 0.0));
    CHECK(multiplet_exchange(1, 1, pair_pi, 0.0) == Complex(1.0, 0.0));
  }
  SUBCASE("distinct components pick up the Klein phase, exactly -1") {
    CHECK(multiplet_exchange(0, 1, pair_pi, 0.7) == Complex(-1.0, 0.0));
    CHECK(multiplet_exchange(0, 1, pair_3pi, 0.7) == Complex(-1.0, 0.0));
  }
  SUBCASE("pairwise constraint enforcement") {
    const std::vector<std::pair<long, long>> bad = {{0, 1}, {2, 1}};
    CHECK_THROWS_AS(multiplet_exchange(0, 1, bad, 0.5), InvalidKleinVector);
    CHECK_THROWS_AS(multiplet_exchange(0, 3, pair_pi, 0.5), InvalidArgument);
    // no triple of π-multiples has pairwise-odd differences (two of any
    // three integers share parity), so N ≥ 3 vectors are always rejected
    const std::vector<std::pair<long, long>> triple = {{0, 1}, {1, 1}, {3, 1}};
    CHECK_THROWS_AS(multiplet_exchange(0, 1, triple, 0.5), InvalidKleinVector);
  }
}

TEST_CASE("coupling-statistics map") {
  SUBCASE("fermion point alpha = 2pi") {
    const auto s = coupling_statistics_map(2.0 * kPi);
    CHECK(s.lambda == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-15));
    CHECK(s.is_fermionic);
    CHECK_FALSE(s.is_bosonic);
    REQUIRE(s.n.has_value());
    CHECK(*s.n == 0);
  }
  SUBCASE("second fermion at alpha = 6pi") {
    const auto s = coupling_statistics_map(6.0 * kPi);
    CHECK(s.is_fermionic);
    CHECK(*s.n == 1);
    CHECK(s.lambda == doctest::Approx(std::sqrt(6.0 * kPi)).epsilon(1e-15));
  }
  SUBCASE("bosonic even multiples") {
    const auto s = coupling_statistics_map(4.0 * kPi);
    CHECK(s.is_bosonic);
    CHECK_FALSE(s.is_fermionic);
    CHECK_FALSE(s.n.has_value());
  }
  SUBCASE("generic anyon") {
    const auto s = coupling_statistics_map(7.3);
    CHECK_FALSE(s.is_bosonic);
    CHECK_FALSE(s.is_fermionic);
    CHECK(s.vertex_coefficient ==
          doctest::Approx(std::sqrt(2.0 * kPi * 7.3)).epsilon(1e-15));
  }
}

TEST_CASE("vertex normalization diagnostic") {
  const ThermalParams tp{kPi, 1e-6};
  SUBCASE("order one and eps-stable at the canonical fermion point") {
    const double v1 = vertex_normalization_diagnostic(2.0 * kPi, 0.05, tp);
    const double v2 = vertex_normalization_diagnostic(2.0 * kPi, 0.0125, tp);
    CHECK(v1 > 0.05);
    CHECK(v1 < 20.0);
    CHECK(std::abs(v2 / v1 - 1.0) < 0.35);
  }
  SUBCASE("away from alpha = 2pi the condition scales like eps^{1-alpha/2pi}") {
    for (double alpha : {kPi, 4.0 * kPi}) {
      const double e1 = 0.05, e2 = 0.0125;
      const double v1 = vertex_normalization_diagnostic(alpha, e1, tp);
      const double v2 = vertex_normalization_diagnostic(alpha, e2, tp);
      const double slope = std::log(v1 / v2) / std::log(e1 / e2);
      CHECK(std::abs(slope - (1.0 - alpha / (2.0 * kPi))) < 0.15);
    }
  }
}

TEST_CASE("branch handling of fractional powers") {
  // with a positive regulator the base stays off the negative axis
  const ThermalParams tp{kPi, 1e-8};
  for (double u : {-2.0, -0.3, 0.0, 0.4, 3.0})
    CHECK_NOTHROW(anyon_two_point(7.3, u, tp));
  // purely imaginary argument puts the base on the negative real axis
  CHECK_THROWS_AS(
      anyon_two_point(kPi, Complex(0.0, -tp.epsilon_reg - 0.01), tp),
      BranchAmbiguity);
}
