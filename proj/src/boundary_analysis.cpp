#include "qcharm/boundary_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qcharm {
namespace {

constexpr Index kMinBoundarySamples = 64;
constexpr double kTailLimit = 1e-6;
constexpr double kNormalizationTolerance = 1e-3;

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Off-curve allowance: a relative floor plus the polygon sagitta, bounded
// by the largest second difference of the arc-length samples.
double on_curve_tolerance(const JordanCurve& curve) {
  const Index n = curve.size();
  const ComplexVector& g = curve.samples();
  double second = 0.0;
  for (Index j = 0; j < n; ++j) {
    second = std::max(second, std::abs(g[(j + 1) % n] - 2.0 * g[j] + g[(j + n - 1) % n]));
  }
  return 1e-6 * curve.length() + second;
}

}  // namespace

double BoundaryMap::arc_position_at(double phi) const {
  return curve_length_ * phi / kTwoPi + spectral::evaluate(arc_offset_, phi).real();
}

BoundaryMap build_boundary_map(const ComplexVector& values, const JordanCurve& curve,
                               Index mode_cap) {
  const Index n = values.size();
  if (n < kMinBoundarySamples || !is_power_of_two(n)) {
    throw Error(ErrorCode::InvalidArgument,
                "boundary sample count must be a power of two >= 64, got " + std::to_string(n));
  }
  if (mode_cap < 0) mode_cap = n / 2 - 1;
  if (mode_cap >= n / 2) {
    throw Error(ErrorCode::InvalidArgument, "fourier mode cap must be below N/2");
  }

  const double l = curve.length();
  const double tol = on_curve_tolerance(curve);
  RealVector arc(n);
  for (Index j = 0; j < n; ++j) {
    const CurveProjection p = project(curve, values[j]);
    if (p.distance > tol) {
      std::ostringstream msg;
      msg << "boundary sample " << j << " lies " << p.distance << " off the curve (tolerance "
          << tol << ")";
      throw Error(ErrorCode::NotOnCurve, msg.str());
    }
    arc[j] = p.arc;
  }

  auto wrap_step = [l](double d) {
    d = std::fmod(d, l);
    if (d > 0.5 * l) d -= l;
    if (d <= -0.5 * l) d += l;
    return d;
  };
  RealVector sigma(n);
  sigma[0] = arc[0];
  double total = 0.0;
  double worst_step = 0.0;
  Index worst_index = 0;
  for (Index j = 0; j < n; ++j) {
    const double step = wrap_step(arc[(j + 1) % n] - arc[j]);
    total += step;
    if (j + 1 < n) sigma[j + 1] = sigma[j] + step;
    if (step < worst_step) {
      worst_step = step;
      worst_index = j;
    }
  }
  const long winding = std::lround(total / l);
  if (winding != 1) {
    throw Error(ErrorCode::WrongWinding,
                "boundary samples wind " + std::to_string(winding) + " times around the curve");
  }
  if (worst_step < -1e-8 * l) {
    std::ostringstream msg;
    msg << "boundary samples step backwards by " << -worst_step << " at index " << worst_index;
    throw Error(ErrorCode::NotMonotone, msg.str());
  }

  BoundaryMap map;
  map.values_ = values;
  map.curve_length_ = l;
  map.arc_positions_ = sigma;
  map.coefficients_ = spectral::analyze(values, mode_cap);
  map.derivative_series_ = spectral::differentiate(map.coefficients_);
  map.derivative_tail_ = spectral::tail_energy_fraction(values, mode_cap / 2, 1);

  ComplexVector offset(n);
  for (Index j = 0; j < n; ++j) {
    offset[j] = sigma[j] - l * static_cast<double>(j) / static_cast<double>(n);
  }
  map.arc_offset_ = spectral::analyze(offset, mode_cap);
  return map;
}

ComplexVector derivative(const BoundaryMap& map) {
  if (map.derivative_tail() > kTailLimit) {
    std::ostringstream msg;
    msg << "derivative spectrum above mode " << map.mode_cap() / 2 << " carries "
        << map.derivative_tail() << " of the energy";
    throw Error(ErrorCode::SpectralTail, msg.str());
  }
  return spectral::synthesize(spectral::differentiate(map.coefficients()), map.size());
}

ComplexVector hilbert_transform(const ComplexVector& f_prime, HilbertMethod method) {
  const Index n = f_prime.size();
  if (method == HilbertMethod::spectral) {
    ComplexVector spectrum = spectral::dft(f_prime);
    for (Index k = 0; k < n; ++k) {
      const Index mode = spectral::signed_mode(k, n);
      if (mode == 0 || 2 * mode == n) {
        spectrum[k] = 0.0;
      } else {
        spectrum[k] *= (mode > 0) ? -kI : kI;
      }
    }
    return spectral::idft(spectrum);
  }

  if (n % 4 != 0) {
    throw Error(ErrorCode::InvalidArgument, "principal-value Hilbert transform needs N % 4 == 0");
  }
  const double h = kTwoPi / static_cast<double>(n);
  const Index nodes = n / 4;
  RealVector weight(nodes);
  for (Index j = 0; j < nodes; ++j) {
    const double t = static_cast<double>(2 * j + 1) * h;
    weight[j] = -(2.0 * h) / (kPi * 2.0 * std::tan(0.5 * t));
  }
  ComplexVector out(n);
  for (Index k = 0; k < n; ++k) {
    Complex sum{};
    for (Index j = 0; j < nodes; ++j) {
      const Index offset = 2 * j + 1;
      sum += weight[j] * (f_prime[(k + offset) % n] - f_prime[(k - offset + n) % n]);
    }
    out[k] = sum;
  }
  return out;
}

double hilbert_method_gap(const ComplexVector& f_prime, double tolerance) {
  const ComplexVector a = hilbert_transform(f_prime, HilbertMethod::spectral);
  const ComplexVector b = hilbert_transform(f_prime, HilbertMethod::principal_value);
  const double gap = (a - b).cwiseAbs().maxCoeff();
  if (gap > tolerance) {
    std::ostringstream msg;
    msg << "spectral and principal-value Hilbert transforms differ by " << gap;
    throw Error(ErrorCode::MethodMismatch, msg.str());
  }
  return gap;
}

WirtingerModuli boundary_wirtinger(Complex f_prime, Complex hilbert) {
  return {0.5 * std::abs(hilbert - kI * f_prime), 0.5 * std::abs(hilbert + kI * f_prime)};
}

BoundaryDerivatives norms(const BoundaryMap& map) {
  BoundaryDerivatives out;
  out.f_prime = derivative(map);
  out.hilbert_f_prime = hilbert_transform(out.f_prime, HilbertMethod::spectral);
  const Index n = map.size();
  out.wz_mod.resize(n);
  out.wzbar_mod.resize(n);
  double lower = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < n; ++j) {
    const WirtingerModuli m = boundary_wirtinger(out.f_prime[j], out.hilbert_f_prime[j]);
    out.wz_mod[j] = m.wz;
    out.wzbar_mod[j] = m.wzbar;
    lower = std::min(lower, m.wz - m.wzbar);
  }
  out.sup_f_prime = out.f_prime.cwiseAbs().maxCoeff();
  out.sup_hilbert = out.hilbert_f_prime.cwiseAbs().maxCoeff();
  out.l_f = std::max(0.0, lower);
  return out;
}

NormsConvergence norms_convergence(const BoundaryMap& map, const JordanCurve& curve) {
  NormsConvergence out;
  out.fine = norms(map);
  const Index half = map.size() / 2;
  ComplexVector coarse_values(half);
  for (Index j = 0; j < half; ++j) coarse_values[j] = map.values()[2 * j];
  const BoundaryDerivatives coarse = norms(build_boundary_map(coarse_values, curve));
  out.coarse_sup_f_prime = coarse.sup_f_prime;
  out.coarse_sup_hilbert = coarse.sup_hilbert;
  out.coarse_l_f = coarse.l_f;
  return out;
}

NormalizationCheck check_normalized(const BoundaryMap& map, const JordanCurve& curve) {
  const std::array<double, 3> phis = {0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0};
  NormalizationCheck out;
  std::array<double, 3> sigma{};
  for (std::size_t k = 0; k < 3; ++k) {
    out.spec.anchor_points[k] = map.value_at(phis[k]);
    sigma[k] = map.arc_position_at(phis[k]);
  }
  const double l = curve.length();
  out.spec.arc_lengths = {sigma[1] - sigma[0], sigma[2] - sigma[1], sigma[0] + l - sigma[2]};
  out.is_normalized = std::all_of(out.spec.arc_lengths.begin(), out.spec.arc_lengths.end(),
                                  [l](double a) {
                                    return std::abs(a - l / 3.0) <=
                                           kNormalizationTolerance * (l / 3.0);
                                  });
  return out;
}

}  // namespace qcharm
