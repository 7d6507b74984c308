#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace qcharm {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr Complex kI{0.0, 1.0};

enum class ErrorCode {
  // validation
  TooFewSamples,
  SelfIntersection,
  OriginOutside,
  NotOnCurve,
  NotMonotone,
  WrongWinding,
  RadiusOutOfRange,
  OutsideDisk,
  NonpositiveJacobian,
  NotNormalized,
  ParamOutOfRange,
  InvalidArgument,
  ParseError,
  // numerical
  NumericallyUnstable,
  SpectralTail,
  MethodMismatch,
  DegenerateDerivative,
  DegenerateLowerBound,
  QuadratureNonconvergent,
};

std::string_view to_string(ErrorCode code);

/// Numerical failures map to CLI exit code 2, everything else to 1.
bool is_numeric_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcharm
