#include "thirring/weyl.hpp"

#include <cmath>

#include <json.hpp>

#include "thirring/errors.hpp"
#include "thirring/symplectic.hpp"

namespace thirring {

namespace {

double chirality_sign(Chirality c) {
  return c == Chirality::left ? 1.0 : -1.0;
}

Complex unit(Complex z) {
  const double m = std::abs(z);
  if (!(m > 0.0)) throw InvalidArgument("Weyl phase must be nonzero");
  return z / m;
}

}  // namespace

WeylElement::WeylElement()
    : exponent_(TestFn::zero()), phase_(1.0, 0.0), chirality_(Chirality::left) {}

WeylElement::WeylElement(TestFn exponent, Complex phase, Chirality chirality)
    : exponent_(std::move(exponent)), phase_(unit(phase)), chirality_(chirality) {}

WeylElement WeylElement::identity(Chirality chirality) {
  return WeylElement(TestFn::zero(), Complex(1.0, 0.0), chirality);
}

WeylElement WeylElement::from_function(TestFn f, Chirality chirality) {
  return WeylElement(std::move(f), Complex(1.0, 0.0), chirality);
}

bool WeylElement::is_identity(double tol) const {
  return exponent_.is_zero(tol) && std::abs(phase_ - Complex(1.0, 0.0)) <= tol;
}

AutomorphismSpec AutomorphismSpec::shift(double t) {
  return {Kind::shift, t, 1.0, std::nullopt};
}
AutomorphismSpec AutomorphismSpec::gauge(TestFn f, double strength) {
  if (!std::isfinite(strength))
    throw InvalidArgument("gauge strength must be finite");
  return {Kind::gauge, 0.0, strength, std::move(f)};
}
AutomorphismSpec AutomorphismSpec::parity() {
  return {Kind::parity, 0.0, 1.0, std::nullopt};
}
AutomorphismSpec AutomorphismSpec::structural_point(double x) {
  return {Kind::structural_point, x, 1.0, std::nullopt};
}
AutomorphismSpec AutomorphismSpec::structural(TestFn gbar) {
  return {Kind::structural_fn, 0.0, 1.0, std::move(gbar)};
}

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  if (a.chirality() != b.chirality())
    throw IncompatibleStatistics(
        "no cross-chirality Weyl cocycle; Klein phases live in the correlator layer");
  const double s =
      chirality_sign(a.chirality()) * sigma(b.exponent(), a.exponent());
  const Complex cocycle = std::polar(1.0, 0.5 * s);
  TestFn exponent = (a.exponent() + b.exponent()).compacted();
  return WeylElement(std::move(exponent), a.phase() * b.phase() * cocycle,
                     a.chirality());
}

WeylElement adjoint(const WeylElement& w) {
  return WeylElement(w.exponent().scaled(-1.0).compacted(),
                     std::conj(w.phase()), w.chirality());
}

Complex exchange_phase_weyl(const TestFn& f, const TestFn& g,
                            Chirality chirality) {
  return std::polar(1.0, chirality_sign(chirality) * sigma(g, f));
}

WeylElement apply_automorphism(const AutomorphismSpec& a, const WeylElement& w) {
  const double sign = chirality_sign(w.chirality());
  switch (a.kind) {
    case AutomorphismSpec::Kind::shift:
      return WeylElement(w.exponent().shifted(a.parameter), w.phase(),
                         w.chirality());
    case AutomorphismSpec::Kind::gauge: {
      if (!a.function) throw InvalidArgument("gauge automorphism needs a generator");
      const double s = sign * a.strength * sigma(w.exponent(), *a.function);
      return WeylElement(w.exponent(), w.phase() * std::polar(1.0, s),
                         w.chirality());
    }
    case AutomorphismSpec::Kind::parity:
      return WeylElement(w.exponent().reflected(), w.phase(), w.chirality());
    case AutomorphismSpec::Kind::structural_point:
      return WeylElement(w.exponent(),
                         w.phase() *
                             std::polar(1.0, w.exponent().eval(a.parameter)),
                         w.chirality());
    case AutomorphismSpec::Kind::structural_fn: {
      if (!a.function)
        throw InvalidArgument("structural automorphism needs its defining function");
      // Ad(W(ḡ)) W(f) = e^{iσ(f,ḡ)} W(f) in either cocycle convention; this
      // argument order makes the point twist e^{if(x)} the ε→0 limit of the
      // 2πΘ(x−·) twist.
      const double s = sign * sigma(w.exponent(), *a.function);
      return WeylElement(w.exponent(), w.phase() * std::polar(1.0, s),
                         w.chirality());
    }
  }
  throw InvalidArgument("unknown automorphism kind");
}

std::string WeylElement::to_json() const {
  nlohmann::ordered_json j;
  j["exponent"] = nlohmann::ordered_json::parse(exponent_.to_json());
  j["phase"] = {phase_.real(), phase_.imag()};
  j["chirality"] = chirality_ == Chirality::left ? "left" : "right";
  return j.dump();
}

WeylElement WeylElement::from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
    TestFn f = TestFn::from_json(j.at("exponent").dump());
    const auto& ph = j.at("phase");
    Chirality c = Chirality::left;
    if (j.contains("chirality") && j.at("chirality").get<std::string>() == "right")
      c = Chirality::right;
    return WeylElement(std::move(f),
                       Complex(ph.at(0).get<double>(), ph.at(1).get<double>()),
                       c);
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ParseError(std::string("bad Weyl element descriptor: ") + e.what());
  }
}

}  // namespace thirring
