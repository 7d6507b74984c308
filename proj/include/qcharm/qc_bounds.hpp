#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "qcharm/boundary_analysis.hpp"
#include "qcharm/curve_geometry.hpp"
#include "qcharm/harmonic_extension.hpp"

namespace qcharm {

// ---------------------------------------------------------------------------
// Sharp distortion bound from boundary data

struct QcReport {
  double s_value = 1.0;  ///< S = (||f'||^2 + ||H f'||^2) / (2 l(f)^2)
  double mu1 = 0.0;      ///< discarded root (S + sqrt(2S-1)) / (S - 1), +inf at S = 1
  double mu2 = 0.0;      ///< (S - 1) / (S + sqrt(2S-1))
  double small_k = 0.0;  ///< (K - 1) / (K + 1)
  double kk_bound = 1.0;
  double measured_sup_k = 1.0;
  bool bound_holds = false;
};

/// K = sqrt(||f'||^2 + ||H(f')||^2 - l(f)^2) / l(f), with S and mu2.
/// Throws DegenerateLowerBound if l(f) <= tolerance.
QcReport kk_bound(const BoundaryDerivatives& norms, double tolerance = 1e-6);

/// kk_bound together with the interior grid supremum of K(z); the bound
/// holds if measured <= K (1 + 1e-3).
QcReport qc_report(const BoundaryMap& map, const RadialGrid& grid, double tolerance = 1e-6);

// ---------------------------------------------------------------------------
// Closed-form constants for normalized K-q.c. maps onto a B-chord-arc domain

template <typename Scalar>
Scalar holder_alpha(Scalar K, Scalar B) {
  return Scalar(1) / (K * (Scalar(1) + Scalar(2) * B) * (Scalar(1) + Scalar(2) * B));
}

/// 4 (1+2B) 2^alpha sqrt(K |Omega| / (pi log 2)).
template <typename Scalar>
Scalar holder_coefficient(Scalar K, Scalar B, Scalar area) {
  using std::log;
  using std::pow;
  using std::sqrt;
  const Scalar alpha = holder_alpha(K, B);
  return Scalar(4) * (Scalar(1) + Scalar(2) * B) * pow(Scalar(2), alpha) *
         sqrt(K * area / (std::numbers::pi_v<Scalar> * log(Scalar(2))));
}

struct HolderBound {
  double alpha = 0.0;
  double holder_c = 0.0;
};

HolderBound holder_bound(double K, double B, double area);

struct LipschitzBound {
  double log10_value = 0.0;
  double value = 0.0;  ///< +inf when 10^log10_value overflows a double
  bool overflow = false;
};

/// 4 pi ((pi/2) K^3/(1+K^2) C (2-a)/(mu a))^((2-a)/(mu a))
///      * (4 B (1+2B) sqrt(K |Omega| / (pi log 2)))^(2/a),  a = 1/(K (1+2B)^2),
/// accumulated in log10.
LipschitzBound lipschitz_bound(double K, double B, double c_gamma, double mu, double area);

// ---------------------------------------------------------------------------
// Boundary Jacobian bound

struct JacobianCheck {
  double phi = 0.0;
  double rhs = 0.0;
  double measured = 0.0;      ///< J_w at r = 1 - 1e-3
  double extrapolated = 0.0;  ///< linear Richardson estimate at r = 1
  std::array<double, 3> radial{};  ///< J_w at r = 1 - {4, 2, 1}e-3
  bool holds = false;
};

/// C_gamma |f'(phi)| int_{-pi}^{pi} d_gamma(f(e^{i(phi+x)}), f(e^{i phi}))^{1+mu} / x^2 dx
/// against the near-boundary Jacobian of P[f].
class JacobianBound {
 public:
  JacobianBound(const JordanCurve& curve, const BoundaryMap& map, double c_gamma);
  JacobianBound(const JordanCurve& curve, const BoundaryMap& map);

  double c_gamma() const { return c_gamma_; }
  double rhs(double phi) const;
  JacobianCheck operator()(double phi) const;

 private:
  const JordanCurve& curve_;
  const BoundaryMap& map_;
  HarmonicMap harmonic_;
  double c_gamma_;
};

JacobianCheck jacobian_bound(const JordanCurve& curve, const BoundaryMap& map, double phi);

// ---------------------------------------------------------------------------
// Seeded pair sweeps

struct PairCheck {
  double max_value = 0.0;
  bool holds = false;
  Index pairs = 0;
  std::uint64_t seed = 0;
};

/// max |w(z1) - w(z2)| / |z1 - z2| over random interior pairs; holds iff
/// <= K L (1 + 1e-6).
PairCheck interior_lipschitz_check(const HarmonicMap& map, double K, double L, Index pairs,
                                   std::uint64_t seed = 0);

/// max |f(z1) - f(z2)| - C |z1 - z2|^alpha over random boundary sample pairs;
/// holds iff <= 0. Throws NotNormalized unless the map passes
/// check_normalized (skippable with `require_normalized = false`).
PairCheck holder_check(const BoundaryMap& map, const JordanCurve& curve, double alpha,
                       double holder_c, Index pairs, std::uint64_t seed = 0,
                       bool require_normalized = true);

// ---------------------------------------------------------------------------

struct BoundsReport {
  CurveGeometryReport geometry;
  double K = 1.0;
  double alpha = 0.0;
  double holder_c = 0.0;
  LipschitzBound lipschitz;
  double interior_lipschitz_log10 = 0.0;  ///< log10(K L)
  double sup_f_prime = 0.0;
  bool lipschitz_holds = false;  ///< ||f'|| <= L
  bool normalized = false;
  std::optional<PairCheck> holder;
  PairCheck interior;  ///< Lipschitz sweep against K L
  std::vector<JacobianCheck> jacobian_checks;
};

struct BoundsOptions {
  Index pairs = 10000;
  std::uint64_t seed = 0;
  Index jacobian_samples = 100;
};

BoundsReport bounds_report(const JordanCurve& curve, const BoundaryMap& map, double K,
                           const BoundsOptions& options = {});

}  // namespace qcharm
