#include "thirring/crossed.hpp"

#include <cmath>
#include <doctest.h>
#include <random>

#include "thirring/correlators.hpp"
#include "thirring/errors.hpp"

using namespace thirring;

namespace {

constexpr double kPi = 3.14159265358979323846;

TestFn random_smooth(std::mt19937& rng) {
  std::uniform_real_distribution<double> center(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.5, 1.5);
  std::uniform_real_distribution<double> coef(-1.2, 1.2);
  if (rng() % 2 == 0) return TestFn::gaussian(center(rng), width(rng));
  return TestFn::poly_gaussian({coef(rng), coef(rng)}, center(rng), width(rng));
}

CrossedElement random_element(std::mt19937& rng, int support) {
  std::uniform_int_distribution<int> charge(-1, 1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  CrossedElement e(2.0 * kPi);
  for (int i = 0; i < support; ++i)
    e.add_term(charge(rng), std::polar(1.0, angle(rng)), random_smooth(rng));
  return e;
}

// Order-insensitive functional fingerprint of an element: per charge, the
// weighted sums of exponent evaluations at fixed probe points.
std::vector<Complex> probe(const CrossedElement& e) {
  std::vector<Complex> v;
  for (const auto& [n, comb] : e.coefficients()) {
    Complex s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (const auto& t : comb.terms) {
      s0 += t.weight;
      s1 += t.weight * t.exponent.eval(0.37);
      s2 += t.weight * t.exponent.eval(-1.21);
      s3 += t.weight * t.exponent.eval(2.05);
    }
    v.insert(v.end(), {Complex(n, 0.0), s0, s1, s2, s3});
  }
  return v;
}

double probe_distance(const CrossedElement& a, const CrossedElement& b) {
  const auto pa = probe(a), pb = probe(b);
  if (pa.size() != pb.size()) return 1.0;
  double m = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i)
    m = std::max(m, std::abs(pa[i] - pb[i]));
  return m;
}

}  // namespace

TEST_CASE("identity is neutral and charge powers add") {
  const auto twist = AutomorphismSpec::structural_point(0.0);
  std::mt19937 rng(17);
  const CrossedElement id = CrossedElement::identity(2.0 * kPi);
  const CrossedElement g = random_element(rng, 3);
  CHECK(probe_distance(multiply_crossed(id, g, twist), g) < 1e-14);
  CHECK(probe_distance(multiply_crossed(g, id, twist), g) < 1e-14);

  // pure U^1 · U^1: support {2}, unit coefficient
  const CrossedElement u1 =
      CrossedElement::charge_power(1, WeylElement::identity(), 2.0 * kPi);
  const CrossedElement u2 = multiply_crossed(u1, u1, twist);
  REQUIRE(u2.coefficients().size() == 1);
  REQUIRE(u2.coefficients().count(2) == 1);
  const auto& terms = u2.coefficients().at(2).terms;
  REQUIRE(terms.size() == 1);
  CHECK(std::abs(terms[0].weight - Complex(1.0, 0.0)) < 1e-15);
  CHECK(terms[0].exponent.is_zero(1e-14));
}

TEST_CASE("two-term product combines cocycle and twist phases") {
  // (W(f)U)(W(g)U) has support {2} and phase e^{i g(0)} e^{(i/2)σ(g,f)}
  const TestFn f = TestFn::gaussian(0.2, 1.0);
  const TestFn g = TestFn::poly_gaussian({0.3, 0.8}, -0.4, 1.2);
  const auto twist = AutomorphismSpec::structural_point(0.0);
  const CrossedElement F =
      CrossedElement::charge_power(1, WeylElement::from_function(f), 2.0 * kPi);
  const CrossedElement G =
      CrossedElement::charge_power(1, WeylElement::from_function(g), 2.0 * kPi);
  const CrossedElement FG = multiply_crossed(F, G, twist);
  REQUIRE(FG.coefficients().count(2) == 1);
  const auto& terms = FG.coefficients().at(2).terms;
  REQUIRE(terms.size() == 1);
  const Complex expected = std::polar(1.0, g.eval(0.0) + 0.5 * sigma(g, f));
  CHECK(std::abs(terms[0].weight - expected) < 1e-12);
  for (double x : {-1.0, 0.5, 2.0})
    CHECK(terms[0].exponent.eval(x) ==
          doctest::Approx(f.eval(x) + g.eval(x)).epsilon(1e-13));
}

TEST_CASE("associativity on random triples") {
  std::mt19937 rng(29);
  const auto point_twist = AutomorphismSpec::structural_point(0.3);
  const auto fn_twist =
      AutomorphismSpec::structural(TestFn::step(0.3).scaled(2.0 * kPi));
  for (const auto& twist : {point_twist, fn_twist}) {
    for (int i = 0; i < 8; ++i) {
      const auto F = random_element(rng, 3);
      const auto G = random_element(rng, 3);
      const auto H = random_element(rng, 3);
      const auto lhs =
          multiply_crossed(multiply_crossed(F, G, twist), H, twist);
      const auto rhs =
          multiply_crossed(F, multiply_crossed(G, H, twist), twist);
      CHECK(probe_distance(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("adjoint reverses products") {
  std::mt19937 rng(31);
  const auto twist = AutomorphismSpec::structural_point(0.0);
  for (int i = 0; i < 6; ++i) {
    const auto F = random_element(rng, 2);
    const auto G = random_element(rng, 3);
    const auto lhs = crossed_adjoint(multiply_crossed(F, G, twist), twist);
    const auto rhs = multiply_crossed(crossed_adjoint(G, twist),
                                      crossed_adjoint(F, twist), twist);
    CHECK(probe_distance(lhs, rhs) < 1e-10);
    // involution
    CHECK(probe_distance(crossed_adjoint(crossed_adjoint(F, twist), twist), F) <
          1e-12);
  }
}

TEST_CASE("gauge automorphism") {
  std::mt19937 rng(37);
  const auto twist = AutomorphismSpec::structural_point(0.0);
  const auto F = random_element(rng, 3);
  SUBCASE("nu = 0 and nu = 1 act trivially on integer charges") {
    CHECK(probe_distance(gauge_automorphism(F, 0.0), F) < 1e-15);
    CHECK(probe_distance(gauge_automorphism(F, 1.0), F) < 1e-12);
  }
  SUBCASE("nu = 1/2 phases by charge parity") {
    CrossedElement e(2.0 * kPi);
    e.add_term(-1, Complex(1.0, 0.0), TestFn::zero());
    e.add_term(0, Complex(1.0, 0.0), TestFn::zero());
    e.add_term(2, Complex(1.0, 0.0), TestFn::zero());
    const auto g = gauge_automorphism(e, 0.5);
    CHECK(std::abs(g.coefficients().at(-1).terms[0].weight - Complex(-1.0, 0.0)) <
          1e-14);
    CHECK(std::abs(g.coefficients().at(0).terms[0].weight - Complex(1.0, 0.0)) <
          1e-14);
    CHECK(std::abs(g.coefficients().at(2).terms[0].weight - Complex(1.0, 0.0)) <
          1e-14);
  }
  SUBCASE("homomorphism and additivity") {
    const auto G = random_element(rng, 2);
    const double nu = 0.37, mu = 0.21;
    CHECK(probe_distance(
              gauge_automorphism(multiply_crossed(F, G, twist), nu),
              multiply_crossed(gauge_automorphism(F, nu),
                               gauge_automorphism(G, nu), twist)) < 1e-12);
    CHECK(probe_distance(gauge_automorphism(gauge_automorphism(F, nu), mu),
                         gauge_automorphism(F, nu + mu)) < 1e-12);
  }
}

TEST_CASE("statistics tags must match") {
  const auto twist = AutomorphismSpec::structural_point(0.0);
  const CrossedElement a = CrossedElement::identity(2.0 * kPi);
  const CrossedElement b = CrossedElement::identity(4.0 * kPi);
  CHECK_THROWS_AS(multiply_crossed(a, b, twist), IncompatibleStatistics);
  // non-structural twists are rejected
  CHECK_THROWS_AS(multiply_crossed(a, a, AutomorphismSpec::shift(1.0)),
                  InvalidArgument);
}

TEST_CASE("extendibility of quasifree automorphisms") {
  const ThermalParams tp{2.0, 1e-4};
  const TestFn gbar = TestFn::step(0.0).scaled(2.0 * kPi);
  SUBCASE("shifted step: compact difference, extendible") {
    const TestFn shifted = TestFn::step(0.7).scaled(2.0 * kPi);
    CHECK(extendibility_check(shifted, gbar, tp));
  }
  SUBCASE("scaling destroys extendibility (non-compact difference)") {
    const TestFn doubled = TestFn::step(0.0).scaled(4.0 * kPi);
    CHECK_FALSE(extendibility_check(doubled, gbar, tp));
  }
  SUBCASE("equal defining functions are trivially extendible") {
    CHECK(extendibility_check(gbar, gbar, tp));
  }
}

TEST_CASE("sector inner products") {
  const ThermalParams tp{2.0, 1e-6};
  const TestFn gbar = TestFn::step(0.0).scaled(2.0 * kPi);
  const TestFn f = TestFn::gaussian(0.3, 1.0);
  const TestFn h = TestFn::gaussian(-0.5, 1.2);
  SUBCASE("off-diagonal sectors are exactly orthogonal") {
    CHECK(sector_inner(0, 1, f, h, gbar, tp) == Complex(0.0, 0.0));
    CHECK(sector_inner(2, -2, f, h, gbar, tp) == Complex(0.0, 0.0));
  }
  SUBCASE("vacuum sector with f = 0 reduces to the state") {
    const Complex v = sector_inner(0, 0, TestFn::zero(), h, gbar, tp);
    CHECK(std::abs(v - Complex(weyl_expectation(h, tp), 0.0)) < 1e-12);
  }
  SUBCASE("charge-1 sector carries the twisted phase") {
    const Complex v = sector_inner(1, 1, f, h, gbar, tp);
    const double phase = -sigma(f + gbar, h);
    const Complex expected = std::polar(1.0, phase) * weyl_expectation(h, tp);
    CHECK(std::abs(v - expected) < 1e-12);
    CHECK(std::abs(std::abs(v) - weyl_expectation(h, tp)) < 1e-12);
  }
}

TEST_CASE("zone statistics") {
  SUBCASE("r formula on an integer grid") {
    for (long n = 0; n <= 3; ++n)
      for (long nbar = 1; nbar <= 4; ++nbar)
        for (long m = -6; m <= 6; ++m) {
          const auto z = zone_statistics(ZoneSpec(n, nbar), m);
          CHECK(z.r == doctest::Approx(std::sqrt(2.0 * n + 1.0) * m / nbar)
                           .epsilon(1e-15));
        }
  }
  SUBCASE("classification") {
    CHECK(zone_statistics(ZoneSpec(0, 1), 1).cls == ZoneClass::fermionic);
    CHECK(zone_statistics(ZoneSpec(0, 1), 1).r == doctest::Approx(1.0));
    CHECK(zone_statistics(ZoneSpec(0, 2), 1).cls == ZoneClass::anyonic);
    CHECK(zone_statistics(ZoneSpec(0, 2), 1).r == doctest::Approx(0.5));
    CHECK(zone_statistics(ZoneSpec(0, 1), 0).cls == ZoneClass::bosonic);
    CHECK(zone_statistics(ZoneSpec(1, 2), 4).cls == ZoneClass::bosonic);
    CHECK(zone_statistics(ZoneSpec(1, 2), 2).cls == ZoneClass::fermionic);
    CHECK(zone_statistics(ZoneSpec(1, 2), -2).cls == ZoneClass::fermionic);
    CHECK(zone_statistics(ZoneSpec(1, 2), -3).cls == ZoneClass::anyonic);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(ZoneSpec(-1, 1), InvalidArgument);
    CHECK_THROWS_AS(ZoneSpec(0, 0), InvalidArgument);
  }
}

TEST_CASE("step exchange symplectic value") {
  SUBCASE("limits are -pi sgn(delta)") {
    CHECK(step_exchange_sigma(0.3, 1.7) == doctest::Approx(-kPi).epsilon(1e-9));
    CHECK(step_exchange_sigma(0.3, -1.7) == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(step_exchange_sigma(-2.0, 0.4) == doctest::Approx(-kPi).epsilon(1e-9));
  }
  SUBCASE("coincident points are rejected") {
    CHECK_THROWS_AS(step_exchange_sigma(0.0, 0.0), InvalidArgument);
  }
  SUBCASE("ramp pre-limit interpolates per the overlap formula") {
    // (2π)² σ(φ_ε@x, φ_ε@(x+δ)): plateau −π sgn δ for ε < |δ|, and the
    // interpolating value −π sgn(δ)(2|δ|/ε − δ²/ε²) once ε > |δ|
    const double delta = 1.0;
    const double plateau =
        4.0 * kPi * kPi *
        sigma(TestFn::ramp(0.5), TestFn::ramp(0.5).shifted(delta));
    CHECK(plateau == doctest::Approx(-kPi).epsilon(1e-12));
    const double eps = 2.0;
    const double mid =
        4.0 * kPi * kPi *
        sigma(TestFn::ramp(eps), TestFn::ramp(eps).shifted(delta));
    const double a = delta / eps;
    CHECK(mid == doctest::Approx(-kPi * (2.0 * a - a * a)).epsilon(1e-12));
    CHECK(mid > -kPi);
    CHECK(mid < 0.0);
  }
}

TEST_CASE("derivative identity: structural finite differences") {
  // (α_{ḡ_{x+δ}} vs α_{ḡ_x} on W(f)): (e^{i(f(x+δ)−f(x))} − 1)/δ → i f'(x)
  const TestFn f = TestFn::gaussian(0.4, 1.0);
  const TestFn fp = f.weak_derivative();
  const double x = 0.1;
  const WeylElement w = WeylElement::from_function(f);
  std::vector<double> deltas = {0.1, 0.05, 0.025, 0.0125};
  std::vector<double> errs;
  for (double d : deltas) {
    const Complex px =
        apply_automorphism(AutomorphismSpec::structural_point(x), w).phase();
    const Complex pxd =
        apply_automorphism(AutomorphismSpec::structural_point(x + d), w).phase();
    const Complex fd = (pxd / px - Complex(1.0, 0.0)) / d;
    errs.push_back(std::abs(fd - Complex(0.0, 1.0) * fp.eval(x)));
  }
  for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] < errs[i - 1]);
  const double order = std::log(errs.front() / errs.back()) /
                       std::log(deltas.front() / deltas.back());
  CHECK(order >= 0.9);
}

TEST_CASE("crossed element JSON round trip") {
  std::mt19937 rng(41);
  CrossedElement e = random_element(rng, 3);
  const CrossedElement back = CrossedElement::from_json(e.to_json());
  CHECK(probe_distance(e, back) < 1e-14);
  CHECK(back.alpha_tag() == doctest::Approx(e.alpha_tag()));
  CHECK_THROWS_AS(CrossedElement::from_json("{\"x\": 1}"), ParseError);
}
