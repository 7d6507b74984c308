#include "qcharm/examples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcharm::examples {
namespace {

ComplexVector unit_grid(Index n) { return curves::circle(n); }

ComplexVector harmonic_trace(const HarmonicMap& w, Index n) {
  ComplexVector out(n);
  for (Index j = 0; j < n; ++j) {
    out[j] = evaluate(w, std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
  }
  return out;
}

HarmonicMap example2_harmonic() {
  ComplexVector g(3);
  g << -3.0, 3.0, -1.0;
  ComplexVector h(2);
  h << 0.0, 1.0;
  return HarmonicMap(g, h);
}

}  // namespace

BoundaryFixture identity(Index n) {
  JordanCurve curve = build_curve(curves::circle(n), 1.0);
  BoundaryMap map = build_boundary_map(unit_grid(n), curve);
  return {std::move(curve), std::move(map)};
}

BoundaryFixture rotation(double angle, Index n) {
  JordanCurve curve = build_curve(curves::circle(n), 1.0);
  BoundaryMap map = build_boundary_map(unit_grid(n) * std::polar(1.0, angle), curve);
  return {std::move(curve), std::move(map)};
}

BoundaryFixture automorphism(Complex a, Index n) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::ParamOutOfRange, "automorphism needs |a| < 1");
  JordanCurve curve = build_curve(curves::circle(n), 1.0);
  ComplexVector values = unit_grid(n);
  for (Index j = 0; j < n; ++j) values[j] = (values[j] + a) / (1.0 + std::conj(a) * values[j]);
  BoundaryMap map = build_boundary_map(values, curve);
  return {std::move(curve), std::move(map)};
}

double example1_theta(double phi, double b) {
  if (phi == 0.0) return 0.0;
  const double denom = 1.0 + b * std::sin(std::log(kPi) - 0.25 * kPi);
  return phi * (1.0 + b * std::sin(std::log(std::abs(phi)) - 0.25 * kPi)) / denom;
}

BoundaryFixture example1_boundary(const Example1Params& params) {
  const double b = params.b;
  if (!(b > 0.0 && b < std::sqrt(2.0) / 2.0)) {
    std::ostringstream msg;
    msg << "example 1 needs 0 < b < sqrt(2)/2, got " << b;
    throw Error(ErrorCode::ParamOutOfRange, msg.str());
  }
  const Index n = params.n_samples;
  ComplexVector values(n);
  for (Index j = 0; j < n; ++j) {
    double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    if (phi > kPi) phi -= kTwoPi;
    values[j] = std::polar(1.0, example1_theta(phi, b));
  }
  JordanCurve curve = build_curve(curves::circle(n), 1.0);
  BoundaryMap map = build_boundary_map(values, curve);
  return {std::move(curve), std::move(map)};
}

std::vector<TrendRow> example1_K_trend(const std::vector<double>& bs, Index n_samples,
                                       const RadialGrid& grid) {
  std::vector<TrendRow> rows;
  rows.reserve(bs.size());
  for (double b : bs) {
    const BoundaryFixture fx = example1_boundary({b, n_samples});
    rows.push_back({b, grid_sup_K(extend(fx.map), grid).sup_k});
  }
  return rows;
}

std::vector<QuotientRow> example1_nondiff_evidence(double b) {
  if (!(b > 0.0 && b < std::sqrt(2.0) / 2.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "example 1 needs 0 < b < sqrt(2)/2");
  }
  std::vector<QuotientRow> rows;
  for (int j = 4; j <= 40; ++j) {
    const double h = std::ldexp(1.0, -j);
    rows.push_back({h, std::abs(example1_theta(h, b) - example1_theta(0.0, b)) / h});
  }
  return rows;
}

double oscillation(const std::vector<QuotientRow>& rows) {
  if (rows.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(
      rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.quotient < b.quotient; });
  return hi->quotient - lo->quotient;
}

Example2 example2_map(Index n) {
  HarmonicMap w = example2_harmonic();
  JordanCurve curve = build_curve(harmonic_trace(w, n), 1.0 / 3.0, evaluate(w, 0.0));
  return {std::move(w), std::move(curve)};
}

ComplexVector example2_printed_curve(Index n) {
  ComplexVector out(n);
  for (Index j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    out[j] = {4.0 * std::cos(t) - std::cos(2.0 * t) - 3.0, std::sin(2.0 * t) - 2.0 * std::sin(t)};
  }
  return out;
}

BoundaryFixture example2_boundary(Index n) {
  Example2 ex = example2_map(n);
  BoundaryMap map = build_boundary_map(harmonic_trace(ex.harmonic, n), ex.curve);
  return {std::move(ex.curve), std::move(map)};
}

AffineStretch affine_stretch(double k, Index n) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "affine stretch needs 0 <= k < 1");
  }
  JordanCurve curve = build_curve(curves::ellipse(n, 1.0 + k, 1.0 - k), 1.0);
  ComplexVector values(n);
  for (Index j = 0; j < n; ++j) {
    const Complex z = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    values[j] = z + k * std::conj(z);
  }
  BoundaryMap map = build_boundary_map(values, curve);
  ComplexVector g(2);
  g << 0.0, 1.0;
  ComplexVector h(2);
  h << 0.0, k;
  return {{std::move(curve), std::move(map)}, HarmonicMap(g, h)};
}

}  // namespace qcharm::examples
