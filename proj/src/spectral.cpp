#include "qcharm/spectral.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/FFT>

namespace qcharm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::OriginOutside: return "OriginOutside";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::WrongWinding: return "WrongWinding";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::NonpositiveJacobian: return "NonpositiveJacobian";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NumericallyUnstable: return "NumericallyUnstable";
    case ErrorCode::SpectralTail: return "SpectralTail";
    case ErrorCode::MethodMismatch: return "MethodMismatch";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::DegenerateLowerBound: return "DegenerateLowerBound";
    case ErrorCode::QuadratureNonconvergent: return "QuadratureNonconvergent";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::NumericallyUnstable:
    case ErrorCode::SpectralTail:
    case ErrorCode::MethodMismatch:
    case ErrorCode::DegenerateDerivative:
    case ErrorCode::DegenerateLowerBound:
    case ErrorCode::QuadratureNonconvergent:
      return true;
    default:
      return false;
  }
}

namespace spectral {

ComplexVector dft(const ComplexVector& samples) {
  Eigen::FFT<double> fft;
  ComplexVector out(samples.size());
  fft.fwd(out, samples);
  return out;
}

ComplexVector idft(const ComplexVector& spectrum) {
  Eigen::FFT<double> fft;
  ComplexVector out(spectrum.size());
  fft.inv(out, spectrum);
  return out;
}

FourierSeries analyze(const ComplexVector& samples, Index max_mode) {
  const Index n = samples.size();
  if (n == 0 || max_mode < 0 || 2 * max_mode > n) {
    throw Error(ErrorCode::InvalidArgument,
                "mode cap " + std::to_string(max_mode) + " exceeds half of " +
                    std::to_string(n) + " samples");
  }
  const ComplexVector spectrum = dft(samples) / static_cast<double>(n);
  FourierSeries series(max_mode);
  for (Index m = -max_mode; m <= max_mode; ++m) {
    series[m] = spectrum[(m % n + n) % n];
  }
  if (2 * max_mode == n) {
    // split the Nyquist bin evenly between +-n/2
    const Complex nyq = spectrum[max_mode];
    series[max_mode] = 0.5 * nyq;
    series[-max_mode] = 0.5 * nyq;
  }
  return series;
}

ComplexVector synthesize(const FourierSeries& series, Index n) {
  ComplexVector bins = ComplexVector::Zero(n);
  const Index m = series.max_mode();
  for (Index k = -m; k <= m; ++k) {
    bins[(k % n + n) % n] += series[k];
  }
  return idft(bins) * static_cast<double>(n);
}

Complex evaluate(const FourierSeries& series, double theta) {
  const Index m = series.max_mode();
  const Complex step = std::polar(1.0, theta);
  const Complex back = std::conj(step);
  Complex up{1.0, 0.0};
  Complex down{1.0, 0.0};
  Complex sum = series[0];
  for (Index k = 1; k <= m; ++k) {
    up *= step;
    down *= back;
    sum += series[k] * up + series[-k] * down;
  }
  return sum;
}

FourierSeries differentiate(const FourierSeries& series) {
  FourierSeries out(series.max_mode());
  for (Index k = -series.max_mode(); k <= series.max_mode(); ++k) {
    out[k] = kI * static_cast<double>(k) * series[k];
  }
  return out;
}

FourierSeries conjugate(const FourierSeries& series) {
  FourierSeries out(series.max_mode());
  for (Index k = 1; k <= series.max_mode(); ++k) {
    out[k] = -kI * series[k];
    out[-k] = kI * series[-k];
  }
  return out;
}

double tail_energy_fraction(const ComplexVector& samples, Index cutoff,
                            int derivative_order) {
  const Index n = samples.size();
  const ComplexVector spectrum = dft(samples);
  double total = 0.0;
  double tail = 0.0;
  for (Index k = 0; k < n; ++k) {
    const Index mode = signed_mode(k, n);
    if (derivative_order > 0 && mode == 0) continue;
    const double weight =
        std::pow(static_cast<double>(mode * mode), derivative_order);
    const double e = weight * std::norm(spectrum[k]);
    total += e;
    if (std::abs(mode) > cutoff) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace spectral
}  // namespace qcharm
