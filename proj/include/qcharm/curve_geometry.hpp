#pragma once

#include "qcharm/spectral.hpp"

namespace qcharm {

/// Smooth Jordan curve stored as N samples uniform in arc length,
/// g(s_j), s_j = j * l / N, oriented counterclockwise.
class JordanCurve {
 public:
  Index size() const { return samples_.size(); }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(size()); }
  double holder_exponent() const { return holder_exponent_; }
  Complex interior_point() const { return interior_point_; }

  /// g(s_j)
  const ComplexVector& samples() const { return samples_; }
  /// g'(s_j), unit length up to discretisation error.
  const ComplexVector& tangent() const { return tangent_; }

  /// Trigonometric interpolant of g and g' at an arbitrary arc parameter.
  Complex point_at(double s) const;
  Complex tangent_at(double s) const;

  /// s modulo l, in [0, l).
  double reduce(double s) const;

  /// Fourier series of g in the angle 2 pi s / l.
  const spectral::FourierSeries& series() const { return series_; }

 private:
  friend JordanCurve build_curve(const ComplexVector&, double, Complex);

  ComplexVector samples_;
  ComplexVector tangent_;
  spectral::FourierSeries series_;
  spectral::FourierSeries tangent_series_;
  double length_ = 0.0;
  double holder_exponent_ = 1.0;
  Complex interior_point_{};
};

struct CurveGeometryReport {
  double c_gamma = 0.0;
  double chord_arc_b = 1.0;
  double area = 0.0;
  double length = 0.0;
};

/// Ingests closed-curve samples: drops repeated points, validates simplicity,
/// normalises to counterclockwise, checks that `interior_point` (the origin
/// by default) is enclosed, and resamples uniformly in arc length.
///
/// The input is interpolated by a periodic cubic spline in chord length; arc
/// length along the spline is integrated per segment and inverted with a
/// monotone cubic Hermite guess refined by Newton steps.
JordanCurve build_curve(const ComplexVector& points, double holder_exponent,
                        Complex interior_point = {});

/// min{|s - t|, l - |s - t|} after reducing both parameters modulo l.
double arc_distance(const JordanCurve& curve, double s, double t);

/// Re[conj(g(t) - g(s)) * i g'(s)] at arbitrary arc parameters.
double curvature_kernel(const JordanCurve& curve, double s, double t);

/// Same kernel on sample indices (no interpolation).
double curvature_kernel_at(const JordanCurve& curve, Index i, Index j);

/// (1/(1+mu)) sup |g'(s) - g'(t)| / d(s,t)^mu. Raw pairs are restricted to
/// separations of at least two samples; the best pair is then refined on
/// the spectral interpolant of g'. Throws NumericallyUnstable when the
/// tangent disagrees with its half-resolution estimate.
double holder_constant(const JordanCurve& curve);

/// sup d_gamma(z1, z2) / |z1 - z2| over sample pairs, locally refined.
double chord_arc_constant(const JordanCurve& curve);

/// Green's theorem area, 1/2 sum Im(conj(g) g') h, spectrally accurate.
double enclosed_area(const JordanCurve& curve);

CurveGeometryReport analyze_curve(const JordanCurve& curve);

struct CurveProjection {
  double arc = 0.0;       ///< arc parameter of the closest point, in [0, l)
  double distance = 0.0;  ///< Euclidean distance to the sampled polygon
};

/// Closest point on the polygon through the arc-length samples.
CurveProjection project(const JordanCurve& curve, Complex z);

namespace curves {

ComplexVector circle(Index n, double radius = 1.0);
ComplexVector ellipse(Index n, double a, double b);

}  // namespace curves

}  // namespace qcharm
