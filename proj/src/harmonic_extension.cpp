#include "qcharm/harmonic_extension.hpp"

#include <limits>
#include <sstream>

namespace qcharm {
namespace {

constexpr double kDegenerateDerivative = 1e-14;
constexpr double kFormsSlack = 1e-10;

Complex horner(const ComplexVector& c, Complex z) {
  Complex acc{};
  for (Index n = c.size() - 1; n >= 0; --n) acc = acc * z + c[n];
  return acc;
}

// Values of sum_m c_m r^m e^{i m phi_j} on phi_j = 2 pi j / angles.
ComplexVector ring_values(const ComplexVector& c, double r, Index angles) {
  ComplexVector bins = ComplexVector::Zero(angles);
  double power = 1.0;
  for (Index m = 0; m < c.size(); ++m) {
    bins[m % angles] += c[m] * power;
    power *= r;
    if (power == 0.0) break;
  }
  return spectral::idft(bins) * static_cast<double>(angles);
}

double distortion(double mu_abs) {
  return mu_abs < 1.0 ? (1.0 + mu_abs) / (1.0 - mu_abs)
                      : std::numeric_limits<double>::infinity();
}

void require_in_disk(Complex z) {
  if (std::abs(z) > 1.0 + 1e-15) {
    std::ostringstream msg;
    msg << "point (" << z.real() << ", " << z.imag() << ") lies outside the closed unit disk";
    throw Error(ErrorCode::OutsideDisk, msg.str());
  }
}

}  // namespace

HarmonicMap::HarmonicMap(ComplexVector g_coeffs, ComplexVector h_coeffs)
    : g_(std::move(g_coeffs)), h_(std::move(h_coeffs)) {
  if (g_.size() == 0) g_ = ComplexVector::Zero(1);
  if (h_.size() == 0) h_ = ComplexVector::Zero(1);
  h_[0] = 0.0;
  auto derive = [](const ComplexVector& c) {
    if (c.size() <= 1) return ComplexVector(ComplexVector::Zero(1));
    ComplexVector d(c.size() - 1);
    for (Index n = 1; n < c.size(); ++n) d[n - 1] = static_cast<double>(n) * c[n];
    return d;
  };
  dg_ = derive(g_);
  dh_ = derive(h_);
}

Complex poisson_integral(const ComplexVector& boundary_values, Complex z) {
  const double r = std::abs(z);
  const double phi = std::arg(z);
  const Index n = boundary_values.size();
  const double h = kTwoPi / static_cast<double>(n);
  Complex sum{};
  for (Index j = 0; j < n; ++j) {
    sum += poisson_kernel(r, static_cast<double>(j) * h - phi) * boundary_values[j];
  }
  return sum * h;
}

HarmonicMap extend(const BoundaryMap& map) {
  const spectral::FourierSeries& c = map.coefficients();
  const Index m = c.max_mode();
  ComplexVector g(m + 1);
  ComplexVector h(m + 1);
  h[0] = 0.0;
  for (Index n = 0; n <= m; ++n) g[n] = c[n];
  for (Index n = 1; n <= m; ++n) h[n] = std::conj(c[-n]);
  return HarmonicMap(std::move(g), std::move(h));
}

Complex evaluate(const HarmonicMap& map, Complex z) {
  require_in_disk(z);
  return horner(map.g_coeffs(), z) + std::conj(horner(map.h_coeffs(), z));
}

PointDerivatives wirtinger(const HarmonicMap& map, Complex z) {
  require_in_disk(z);
  const Complex gp = horner(map.g_prime_coeffs(), z);
  const Complex hp = horner(map.h_prime_coeffs(), z);
  if (std::abs(gp) < kDegenerateDerivative) {
    std::ostringstream msg;
    msg << "g'(z) vanishes at (" << z.real() << ", " << z.imag() << ")";
    throw Error(ErrorCode::DegenerateDerivative, msg.str());
  }
  PointDerivatives d;
  d.z = z;
  d.wz = gp;
  d.wzbar = std::conj(hp);
  d.jacobian = std::norm(gp) - std::norm(hp);
  d.mu = hp / gp;
  d.k_point = distortion(std::abs(d.mu));
  return d;
}

RadialGrid RadialGrid::clustered(Index radii_count, double r_max, Index angles) {
  if (radii_count < 1 || angles < 1 || !(r_max > 0.0 && r_max < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs >= 1 radius, >= 1 angle, 0 < r_max < 1");
  }
  RadialGrid grid;
  grid.angles = angles;
  if (radii_count == 1) {
    grid.radii = {r_max};
    return grid;
  }
  const double gap = 1.0 - r_max;
  for (Index i = 0; i < radii_count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(radii_count - 1);
    grid.radii.push_back(i + 1 == radii_count ? r_max : 1.0 - std::pow(gap, t));
  }
  return grid;
}

GridSupK grid_sup_K(const HarmonicMap& map, const RadialGrid& grid) {
  GridSupK out;
  out.sup_k = -1.0;
  for (double r : grid.radii) {
    if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorCode::RadiusOutOfRange, "grid radius must be < 1");
    const ComplexVector gp = ring_values(map.g_prime_coeffs(), r, grid.angles);
    const ComplexVector hp = ring_values(map.h_prime_coeffs(), r, grid.angles);
    for (Index j = 0; j < grid.angles; ++j) {
      const double ag = std::abs(gp[j]);
      if (ag < kDegenerateDerivative) {
        ++out.excluded;
        continue;
      }
      const double k = distortion(std::abs(hp[j]) / ag);
      if (k > out.sup_k) {
        out.sup_k = k;
        out.argmax = std::polar(r, kTwoPi * static_cast<double>(j) / grid.angles);
      }
    }
  }
  if (out.sup_k < 0.0) {
    throw Error(ErrorCode::DegenerateDerivative, "g' vanishes at every grid point");
  }
  return out;
}

std::vector<GridSample> evaluate_grid(const HarmonicMap& map, const RadialGrid& grid) {
  std::vector<GridSample> out;
  out.reserve(grid.radii.size() * static_cast<std::size_t>(grid.angles));
  for (double r : grid.radii) {
    if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorCode::RadiusOutOfRange, "grid radius must be < 1");
    const ComplexVector g = ring_values(map.g_coeffs(), r, grid.angles);
    const ComplexVector h = ring_values(map.h_coeffs(), r, grid.angles);
    const ComplexVector gp = ring_values(map.g_prime_coeffs(), r, grid.angles);
    const ComplexVector hp = ring_values(map.h_prime_coeffs(), r, grid.angles);
    for (Index j = 0; j < grid.angles; ++j) {
      GridSample s;
      s.r = r;
      s.phi = kTwoPi * static_cast<double>(j) / static_cast<double>(grid.angles);
      s.w = g[j] + std::conj(h[j]);
      s.jacobian = std::norm(gp[j]) - std::norm(hp[j]);
      const double ag = std::abs(gp[j]);
      s.mu_abs = ag > 0.0 ? std::abs(hp[j]) / ag : std::numeric_limits<double>::infinity();
      s.k_point = distortion(s.mu_abs);
      out.push_back(s);
    }
  }
  return out;
}

QcForms qc_forms_check(const PointDerivatives& d, double K) {
  if (!(d.jacobian > 0.0)) {
    throw Error(ErrorCode::NonpositiveJacobian, "q.c. forms need a positive Jacobian");
  }
  const double a = std::abs(d.wz);
  const double b = std::abs(d.wzbar);
  const double phi = (d.z == Complex{}) ? 0.0 : std::arg(d.z);
  const Complex rot = std::polar(1.0, phi);
  const Complex w_r = rot * d.wz + std::conj(rot) * d.wzbar;
  const Complex w_phi_over_r = kI * (rot * d.wz - std::conj(rot) * d.wzbar);
  auto leq = [](double lhs, double rhs) { return lhs <= rhs + kFormsSlack * std::abs(rhs); };

  QcForms f;
  f.operator_norm = leq(a + b, K * std::abs(a - b));
  f.polar_energy = leq(0.5 * (std::norm(w_r) + std::norm(w_phi_over_r)),
                       0.5 * (K + 1.0 / K) * d.jacobian);
  f.angular = leq(0.5 * (1.0 + 1.0 / (K * K)) * std::norm(w_phi_over_r), K * d.jacobian);
  return f;
}

}  // namespace qcharm
