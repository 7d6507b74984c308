#pragma once

#include "qcharm/types.hpp"

namespace qcharm::spectral {

/// Truncated two-sided Fourier series  sum_{|n| <= M} c_n e^{i n theta}.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(Index max_mode)
      : max_mode_(max_mode), coeffs_(ComplexVector::Zero(2 * max_mode + 1)) {}

  Index max_mode() const { return max_mode_; }

  Complex& operator[](Index n) { return coeffs_[n + max_mode_]; }
  const Complex& operator[](Index n) const { return coeffs_[n + max_mode_]; }

  /// Coefficient c_n, zero outside the stored band.
  Complex coeff(Index n) const {
    return (n < -max_mode_ || n > max_mode_) ? Complex{} : coeffs_[n + max_mode_];
  }

  const ComplexVector& data() const { return coeffs_; }

 private:
  Index max_mode_ = 0;
  ComplexVector coeffs_ = ComplexVector::Zero(1);
};

/// Forward DFT  X_k = sum_j x_j e^{-2 pi i jk/N}  (unscaled).
ComplexVector dft(const ComplexVector& samples);

/// Inverse DFT  x_j = (1/N) sum_k X_k e^{2 pi i jk/N}.
ComplexVector idft(const ComplexVector& spectrum);

/// Signed frequency of DFT bin k for length n: k for k < n/2, k - n above.
/// The Nyquist bin (even n) reports +n/2.
inline Index signed_mode(Index k, Index n) { return (2 * k <= n) ? k : k - n; }

/// Coefficients c_n, |n| <= max_mode, of the trigonometric interpolant of
/// uniform samples x_j = f(2 pi j / N).
FourierSeries analyze(const ComplexVector& samples, Index max_mode);

/// Largest mode that can be carried without the Nyquist ambiguity.
inline Index default_mode_cap(Index n) { return (n - 1) / 2; }

/// Values of the series on the uniform grid theta_j = 2 pi j / n.
/// Modes are folded modulo n, so the result is exact for any band.
ComplexVector synthesize(const FourierSeries& series, Index n);

/// Direct evaluation at an arbitrary angle.
Complex evaluate(const FourierSeries& series, double theta);

/// d/dtheta.
FourierSeries differentiate(const FourierSeries& series);

/// Conjugate-function multiplier -i sgn(n); the mean is annihilated.
FourierSeries conjugate(const FourierSeries& series);

/// Fraction of (derivative-weighted) spectral energy carried by modes with
/// |n| > cutoff. `derivative_order` = 1 weights each mode by n^2.
double tail_energy_fraction(const ComplexVector& samples, Index cutoff,
                            int derivative_order = 0);

}  // namespace qcharm::spectral
