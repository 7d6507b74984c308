#pragma once

#include <array>

#include "qcharm/curve_geometry.hpp"
#include "qcharm/spectral.hpp"

namespace qcharm {

/// Circle homeomorphism f sampled on phi_j = 2 pi j / N, together with its
/// Fourier coefficients and the unwrapped arc position of every sample on
/// the target curve.
class BoundaryMap {
 public:
  Index size() const { return values_.size(); }
  const ComplexVector& values() const { return values_; }
  const spectral::FourierSeries& coefficients() const { return coefficients_; }
  Index mode_cap() const { return coefficients_.max_mode(); }

  /// Unwrapped arc positions sigma_j; sigma_{j+N} = sigma_j + l.
  const RealVector& arc_positions() const { return arc_positions_; }
  double curve_length() const { return curve_length_; }

  /// Fraction of the n^2-weighted spectral energy above mode_cap()/2.
  double derivative_tail() const { return derivative_tail_; }

  /// f(e^{i phi}) from the Fourier series.
  Complex value_at(double phi) const { return spectral::evaluate(coefficients_, phi); }
  /// f'(phi) from the Fourier series.
  Complex derivative_at(double phi) const { return spectral::evaluate(derivative_series_, phi); }
  /// Unwrapped arc position sigma(phi), interpolated spectrally.
  double arc_position_at(double phi) const;

 private:
  friend BoundaryMap build_boundary_map(const ComplexVector&, const JordanCurve&, Index);

  ComplexVector values_;
  spectral::FourierSeries coefficients_;
  spectral::FourierSeries derivative_series_;
  spectral::FourierSeries arc_offset_;
  RealVector arc_positions_;
  double curve_length_ = 0.0;
  double derivative_tail_ = 0.0;
};

/// Validates boundary samples against `curve`: each sample must lie on the
/// curve, the unwrapped arc positions must wind exactly once
/// counterclockwise and never step backwards. N must be a power of two, at
/// least 64. `mode_cap` < 0 selects N/2 - 1.
BoundaryMap build_boundary_map(const ComplexVector& values, const JordanCurve& curve,
                               Index mode_cap = -1);

/// Spectral derivative c_n -> i n c_n on the sample grid. Throws SpectralTail
/// if the derivative spectrum above mode_cap/2 holds more than 1e-6 of the
/// energy.
ComplexVector derivative(const BoundaryMap& map);

enum class HilbertMethod { spectral, principal_value };

/// Conjugate function of periodic samples on the uniform grid.
///
/// `spectral` applies -i sgn(n). `principal_value` evaluates
///   -(1/pi) int_0^pi [f(phi+t) - f(phi-t)] / (2 tan(t/2)) dt
/// with the midpoint rule on nodes t = (2j+1) * 2 pi / N, which are grid
/// offsets, so no interpolation is involved and t = 0 is never touched.
ComplexVector hilbert_transform(const ComplexVector& f_prime, HilbertMethod method);

/// Sup-norm gap between the two Hilbert transforms. Throws MethodMismatch
/// when it exceeds `tolerance`.
double hilbert_method_gap(const ComplexVector& f_prime, double tolerance = 1e-4);

struct WirtingerModuli {
  double wz = 0.0;
  double wzbar = 0.0;
};

/// Boundary moduli |w_z| = |H - i f'| / 2, |w_zbar| = |H + i f'| / 2.
WirtingerModuli boundary_wirtinger(Complex f_prime, Complex hilbert);

struct BoundaryDerivatives {
  ComplexVector f_prime;
  ComplexVector hilbert_f_prime;
  RealVector wz_mod;
  RealVector wzbar_mod;
  double sup_f_prime = 0.0;
  double sup_hilbert = 0.0;
  double l_f = 0.0;
};

/// Grid extrema standing in for ||f'||_inf, ||H(f')||_inf and l(f).
BoundaryDerivatives norms(const BoundaryMap& map);

/// Norms at N and at N/2 (every other sample) to expose estimator drift.
struct NormsConvergence {
  BoundaryDerivatives fine;
  double coarse_sup_f_prime = 0.0;
  double coarse_sup_hilbert = 0.0;
  double coarse_l_f = 0.0;
};

NormsConvergence norms_convergence(const BoundaryMap& map, const JordanCurve& curve);

struct NormalizationSpec {
  std::array<Complex, 3> anchor_points{};  ///< f(1), f(e^{2 pi i/3}), f(e^{-2 pi i/3})
  std::array<double, 3> arc_lengths{};     ///< w0->w1, w1->w2, w2->w0
};

struct NormalizationCheck {
  bool is_normalized = false;
  NormalizationSpec spec;
};

/// Normalised iff each of the three arcs equals l/3 within 1e-3 relative.
NormalizationCheck check_normalized(const BoundaryMap& map, const JordanCurve& curve);

}  // namespace qcharm
