#pragma once

#include <functional>

#include "qcharm/types.hpp"

namespace qcharm::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Throws
/// QuadratureNonconvergent when the error estimate stays above
/// max(abs_tol, rel_tol*|I|) after `max_intervals` bisections.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-10,
                     int max_intervals = 2000);

/// Fixed 8-point Gauss-Legendre on [a, b].
double gauss_legendre8(const std::function<double(double)>& f, double a, double b);

}  // namespace qcharm::quadrature
