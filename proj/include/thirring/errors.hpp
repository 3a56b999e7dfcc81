#ifndef THIRRING_ERRORS_HPP
#define THIRRING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thirring {

// Error codes shared with the C API (see thirring_c.h).
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  quadrature_failure = 2,
  divergent_norm = 3,
  not_differentiable = 4,
  branch_ambiguity = 5,
  inside_cutoff = 6,
  invalid_klein_vector = 7,
  config_too_large = 8,
  dimension_mismatch = 9,
  extrapolation_failure = 10,
  incompatible_statistics = 11,
  parse_error = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define THIRRING_DEFINE_ERROR(Name, code_value)                 \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what)                      \
        : Error(ErrorCode::code_value, what) {}                 \
  }

THIRRING_DEFINE_ERROR(InvalidArgument, invalid_argument);
THIRRING_DEFINE_ERROR(QuadratureFailure, quadrature_failure);
THIRRING_DEFINE_ERROR(DivergentNorm, divergent_norm);
THIRRING_DEFINE_ERROR(NotDifferentiable, not_differentiable);
THIRRING_DEFINE_ERROR(BranchAmbiguity, branch_ambiguity);
THIRRING_DEFINE_ERROR(InsideCutoff, inside_cutoff);
THIRRING_DEFINE_ERROR(InvalidKleinVector, invalid_klein_vector);
THIRRING_DEFINE_ERROR(ConfigTooLarge, config_too_large);
THIRRING_DEFINE_ERROR(DimensionMismatch, dimension_mismatch);
THIRRING_DEFINE_ERROR(ExtrapolationFailure, extrapolation_failure);
THIRRING_DEFINE_ERROR(IncompatibleStatistics, incompatible_statistics);
THIRRING_DEFINE_ERROR(ParseError, parse_error);

#undef THIRRING_DEFINE_ERROR

}  // namespace thirring

#endif
