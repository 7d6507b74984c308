#pragma once

#include <vector>

#include "qcharm/boundary_analysis.hpp"
#include "qcharm/curve_geometry.hpp"
#include "qcharm/harmonic_extension.hpp"

namespace qcharm::examples {

/// Target curve with a validated boundary map onto it.
struct BoundaryFixture {
  JordanCurve curve;
  BoundaryMap map;
};

BoundaryFixture identity(Index n = 4096);

/// f(z) = e^{i angle} z on the unit circle.
BoundaryFixture rotation(double angle, Index n = 4096);

/// Boundary values of the disk automorphism (z + a) / (1 + conj(a) z).
BoundaryFixture automorphism(Complex a, Index n = 4096);

// ---------------------------------------------------------------------------
// Example 1: a q.c. harmonic self-map of the disk whose boundary function is
// not differentiable at 1.

struct Example1Params {
  double b = 0.3;  ///< 0 < b < sqrt(2)/2
  Index n_samples = 4096;
};

/// theta(phi) = phi (1 + b sin(log|phi| - pi/4)) / (1 + b sin(log pi - pi/4))
/// on [-pi, pi], theta(0) = 0.
double example1_theta(double phi, double b);

/// Samples e^{i theta(phi_j)} with phi_j taken in (-pi, pi]. Throws
/// ParamOutOfRange for b outside the open interval.
BoundaryFixture example1_boundary(const Example1Params& params);

struct TrendRow {
  double b = 0.0;
  double measured_sup_k = 1.0;
};

std::vector<TrendRow> example1_K_trend(const std::vector<double>& bs, Index n_samples,
                                       const RadialGrid& grid);

struct QuotientRow {
  double h = 0.0;
  double quotient = 0.0;  ///< |theta(h) - theta(0)| / h
};

/// Difference quotients at 0 for h = 2^-j, j = 4..40.
std::vector<QuotientRow> example1_nondiff_evidence(double b);

/// max - min of the quotient column.
double oscillation(const std::vector<QuotientRow>& rows);

// ---------------------------------------------------------------------------
// Example 2: w = 3z - 3 - z^2 + conj(z), univalent onto a convex domain but
// w_z(1) = w_zbar(1) = 1.

struct Example2 {
  HarmonicMap harmonic;
  JordanCurve curve;
};

/// The curve is traced from w(e^{it}) itself; the enclosed reference point
/// is w(0) = -3 since the curve passes through the origin.
Example2 example2_map(Index n = 4096);

/// Curve as printed, (4cos t - cos 2t - 3, sin 2t - 2 sin t).
ComplexVector example2_printed_curve(Index n);

/// Boundary samples w(e^{i phi_j}) on the traced curve.
BoundaryFixture example2_boundary(Index n = 4096);

// ---------------------------------------------------------------------------

struct AffineStretch {
  BoundaryFixture fixture;
  HarmonicMap harmonic;
};

/// w = z + k conj(z) onto the ellipse ((1+k) cos t, (1-k) sin t).
AffineStretch affine_stretch(double k, Index n = 4096);

}  // namespace qcharm::examples
