#include "qcharm/qc_bounds.hpp"

#include <limits>
#include <random>
#include <sstream>

#include "qcharm/quadrature.hpp"

namespace qcharm {
namespace {

constexpr double kBoundSlack = 1e-3;
constexpr double kJacobianSlack = 1e-2;
constexpr double kLipschitzSlack = 1e-6;
constexpr std::array<double, 3> kRadialGaps = {4e-3, 2e-3, 1e-3};

}  // namespace

QcReport kk_bound(const BoundaryDerivatives& norms, double tolerance) {
  const double l = norms.l_f;
  if (!(l > tolerance)) {
    std::ostringstream msg;
    msg << "l(f) = " << l << " does not exceed " << tolerance
        << "; the boundary differential degenerates";
    throw Error(ErrorCode::DegenerateLowerBound, msg.str());
  }
  const double energy = norms.sup_f_prime * norms.sup_f_prime + norms.sup_hilbert * norms.sup_hilbert;
  QcReport r;
  r.s_value = energy / (2.0 * l * l);
  const double root = std::sqrt(std::max(0.0, 2.0 * r.s_value - 1.0));
  r.kk_bound = std::sqrt(std::max(0.0, energy - l * l)) / l;
  r.mu2 = (r.s_value - 1.0) / (r.s_value + root);
  r.mu1 = r.s_value > 1.0 ? (r.s_value + root) / (r.s_value - 1.0)
                          : std::numeric_limits<double>::infinity();
  r.small_k = (r.kk_bound - 1.0) / (r.kk_bound + 1.0);
  return r;
}

QcReport qc_report(const BoundaryMap& map, const RadialGrid& grid, double tolerance) {
  QcReport r = kk_bound(norms(map), tolerance);
  r.measured_sup_k = grid_sup_K(extend(map), grid).sup_k;
  r.bound_holds = r.measured_sup_k <= r.kk_bound * (1.0 + kBoundSlack);
  return r;
}

HolderBound holder_bound(double K, double B, double area) {
  if (!(K >= 1.0 && B >= 1.0 && area > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Hölder bound needs K >= 1, B >= 1, area > 0");
  }
  return {holder_alpha(K, B), holder_coefficient(K, B, area)};
}

LipschitzBound lipschitz_bound(double K, double B, double c_gamma, double mu, double area) {
  if (!(K >= 1.0 && B >= 1.0 && c_gamma > 0.0 && mu > 0.0 && mu <= 1.0 && area > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "Lipschitz bound needs K >= 1, B >= 1, C > 0, 0 < mu <= 1, area > 0");
  }
  const double alpha = holder_alpha(K, B);
  const double exponent = (2.0 - alpha) / (mu * alpha);
  const double first = 0.5 * kPi * (K * K * K / (1.0 + K * K)) * c_gamma * exponent;
  const double second = 4.0 * B * (1.0 + 2.0 * B) * std::sqrt(K * area / (kPi * std::log(2.0)));
  LipschitzBound out;
  out.log10_value = std::log10(4.0 * kPi) + exponent * std::log10(first) +
                    (2.0 / alpha) * std::log10(second);
  out.overflow = out.log10_value >= std::numeric_limits<double>::max_exponent10;
  out.value = out.overflow ? std::numeric_limits<double>::infinity()
                           : std::pow(10.0, out.log10_value);
  return out;
}

JacobianBound::JacobianBound(const JordanCurve& curve, const BoundaryMap& map, double c_gamma)
    : curve_(curve), map_(map), harmonic_(extend(map)), c_gamma_(c_gamma) {}

JacobianBound::JacobianBound(const JordanCurve& curve, const BoundaryMap& map)
    : JacobianBound(curve, map, holder_constant(curve)) {}

double JacobianBound::rhs(double phi) const {
  const double mu = curve_.holder_exponent();
  const double l = curve_.length();
  const double p = 1.0 / mu;
  const double base = map_.arc_position_at(phi);

  // x = +-pi v^{1/mu} absorbs the |x|^{mu-1} endpoint behaviour.
  auto half = [&](double sign) {
    return [&, sign](double v) {
      const double x = sign * kPi * std::pow(v, p);
      const double step = std::abs(map_.arc_position_at(phi + x) - base);
      const double d = std::min(step, l - step);
      const double jac = kPi * p * std::pow(v, p - 1.0);
      return std::pow(d, 1.0 + mu) / (x * x) * jac;
    };
  };
  const double integral = quadrature::gauss_kronrod(half(1.0), 0.0, 1.0).value +
                          quadrature::gauss_kronrod(half(-1.0), 0.0, 1.0).value;
  return c_gamma_ * std::abs(map_.derivative_at(phi)) * integral;
}

JacobianCheck JacobianBound::operator()(double phi) const {
  JacobianCheck c;
  c.phi = phi;
  c.rhs = rhs(phi);
  for (std::size_t k = 0; k < kRadialGaps.size(); ++k) {
    c.radial[k] = wirtinger(harmonic_, std::polar(1.0 - kRadialGaps[k], phi)).jacobian;
  }
  c.measured = c.radial[2];
  c.extrapolated = 2.0 * c.radial[2] - c.radial[1];
  c.holds = c.measured <= c.rhs * (1.0 + kJacobianSlack);
  return c;
}

JacobianCheck jacobian_bound(const JordanCurve& curve, const BoundaryMap& map, double phi) {
  return JacobianBound(curve, map)(phi);
}

PairCheck interior_lipschitz_check(const HarmonicMap& map, double K, double L, Index pairs,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] { return std::polar(std::sqrt(unit(rng)), kTwoPi * unit(rng)); };
  PairCheck out;
  out.pairs = pairs;
  out.seed = seed;
  for (Index k = 0; k < pairs; ++k) {
    const Complex z1 = draw();
    const Complex z2 = draw();
    const double gap = std::abs(z1 - z2);
    if (gap == 0.0) continue;
    out.max_value = std::max(out.max_value, std::abs(evaluate(map, z1) - evaluate(map, z2)) / gap);
  }
  out.holds = out.max_value <= K * L * (1.0 + kLipschitzSlack);
  return out;
}

PairCheck holder_check(const BoundaryMap& map, const JordanCurve& curve, double alpha,
                       double holder_c, Index pairs, std::uint64_t seed,
                       bool require_normalized) {
  if (require_normalized) {
    const NormalizationCheck norm = check_normalized(map, curve);
    if (!norm.is_normalized) {
      std::ostringstream msg;
      msg << "boundary map is not normalized: arcs " << norm.spec.arc_lengths[0] << ", "
          << norm.spec.arc_lengths[1] << ", " << norm.spec.arc_lengths[2];
      throw Error(ErrorCode::NotNormalized, msg.str());
    }
  }
  const Index n = map.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> index(0, n - 1);
  PairCheck out;
  out.pairs = pairs;
  out.seed = seed;
  out.max_value = -std::numeric_limits<double>::infinity();
  for (Index k = 0; k < pairs; ++k) {
    const Index i = index(rng);
    const Index j = index(rng);
    if (i == j) continue;
    const Complex z1 = std::polar(1.0, kTwoPi * static_cast<double>(i) / static_cast<double>(n));
    const Complex z2 = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    const double defect = std::abs(map.values()[i] - map.values()[j]) -
                          holder_c * std::pow(std::abs(z1 - z2), alpha);
    out.max_value = std::max(out.max_value, defect);
  }
  out.holds = out.max_value <= 0.0;
  return out;
}

BoundsReport bounds_report(const JordanCurve& curve, const BoundaryMap& map, double K,
                           const BoundsOptions& options) {
  BoundsReport r;
  r.geometry = analyze_curve(curve);
  r.K = K;
  const HolderBound hb = holder_bound(K, r.geometry.chord_arc_b, r.geometry.area);
  r.alpha = hb.alpha;
  r.holder_c = hb.holder_c;
  r.lipschitz = lipschitz_bound(K, r.geometry.chord_arc_b, r.geometry.c_gamma,
                                curve.holder_exponent(), r.geometry.area);
  r.interior_lipschitz_log10 = std::log10(K) + r.lipschitz.log10_value;
  r.sup_f_prime = derivative(map).cwiseAbs().maxCoeff();
  r.lipschitz_holds = std::log10(r.sup_f_prime) <= r.lipschitz.log10_value;
  r.normalized = check_normalized(map, curve).is_normalized;
  if (r.normalized) {
    r.holder = holder_check(map, curve, r.alpha, r.holder_c, options.pairs, options.seed);
  }
  const HarmonicMap harmonic = extend(map);
  r.interior = interior_lipschitz_check(harmonic, K, r.lipschitz.value, options.pairs, options.seed);

  const JacobianBound bound(curve, map, r.geometry.c_gamma);
  for (Index k = 0; k < options.jacobian_samples; ++k) {
    r.jacobian_checks.push_back(
        bound(kTwoPi * static_cast<double>(k) / static_cast<double>(options.jacobian_samples)));
  }
  return r;
}

}  // namespace qcharm
