#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qcharm/boundary_analysis.hpp"

namespace qcharm {

/// w = g + conj(h) with g(z) = sum_{n>=0} g_n z^n, h(z) = sum_{n>=1} h_n z^n.
/// `h_coeffs()[0]` is always zero.
class HarmonicMap {
 public:
  HarmonicMap() = default;
  HarmonicMap(ComplexVector g_coeffs, ComplexVector h_coeffs);

  const ComplexVector& g_coeffs() const { return g_; }
  const ComplexVector& h_coeffs() const { return h_; }

  /// Derivative coefficient vectors g', h' (power z^0 first).
  const ComplexVector& g_prime_coeffs() const { return dg_; }
  const ComplexVector& h_prime_coeffs() const { return dh_; }

 private:
  ComplexVector g_ = ComplexVector::Zero(1);
  ComplexVector h_ = ComplexVector::Zero(1);
  ComplexVector dg_ = ComplexVector::Zero(1);
  ComplexVector dh_ = ComplexVector::Zero(1);
};

/// (1 - r^2) / (2 pi (1 - 2 r cos x + r^2)), 0 <= r < 1.
template <typename Scalar>
Scalar poisson_kernel(Scalar r, Scalar x) {
  if (!(r >= Scalar(0) && r < Scalar(1))) {
    throw Error(ErrorCode::RadiusOutOfRange, "Poisson kernel needs 0 <= r < 1");
  }
  using std::cos;
  return (Scalar(1) - r * r) /
         (Scalar(2) * std::numbers::pi_v<Scalar> * (Scalar(1) - Scalar(2) * r * cos(x) + r * r));
}

/// Direct trapezoid quadrature of the Poisson integral over uniform samples.
Complex poisson_integral(const ComplexVector& boundary_values, Complex z);

HarmonicMap extend(const BoundaryMap& map);

/// g(z) + conj(h(z)) by Horner, |z| <= 1.
Complex evaluate(const HarmonicMap& map, Complex z);

struct PointDerivatives {
  Complex z{};
  Complex wz{};
  Complex wzbar{};
  double jacobian = 0.0;
  Complex mu{};          ///< second dilatation h'/g'
  double k_point = 1.0;  ///< (1+|mu|)/(1-|mu|), +inf when |mu| >= 1
  bool mu_defined = true;
};

/// w_z = g'(z), w_zbar = conj(h'(z)). Throws DegenerateDerivative when
/// |g'(z)| < 1e-14 and OutsideDisk when |z| > 1.
PointDerivatives wirtinger(const HarmonicMap& map, Complex z);

/// Radii with 1 - r geometric between 1 and 1 - r_max (r = 0 first), and
/// uniform angles phi_j = 2 pi j / angles.
struct RadialGrid {
  std::vector<double> radii;
  Index angles = 512;

  static RadialGrid clustered(Index radii_count, double r_max, Index angles);
};

struct GridSupK {
  double sup_k = 1.0;
  Complex argmax{};
  Index excluded = 0;  ///< grid points skipped because g' vanished there
};

/// Maximum of K(z) over the grid, ties resolved to the smallest grid index.
GridSupK grid_sup_K(const HarmonicMap& map, const RadialGrid& grid);

struct GridSample {
  double r = 0.0;
  double phi = 0.0;
  Complex w{};
  double jacobian = 0.0;
  double mu_abs = 0.0;
  double k_point = 1.0;
};

/// Values of w, J, |mu|, K on the grid, radius-major.
std::vector<GridSample> evaluate_grid(const HarmonicMap& map, const RadialGrid& grid);

struct QcForms {
  bool operator_norm = false;  ///< |grad w| <= K l(grad w)
  bool polar_energy = false;   ///< (|w_r|^2 + |w_phi|^2/r^2)/2 <= (K + 1/K) J / 2
  bool angular = false;        ///< (1 + 1/K^2) |w_phi|^2/(2 r^2) <= K J
};

/// Three formulations of K-quasiconformality at one point. w_r and w_phi/r
/// are rebuilt from w_z, w_zbar and arg z. Comparisons carry a relative
/// slack of 1e-10. Throws NonpositiveJacobian.
QcForms qc_forms_check(const PointDerivatives& d, double K);

}  // namespace qcharm
