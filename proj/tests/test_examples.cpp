#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcharm/examples.hpp"
#include "qcharm/qc_bounds.hpp"

using namespace qcharm;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

double theta_oracle(double phi, double b) {
  if (phi == 0.0) return 0.0;
  return phi * (1.0 + b * std::sin(std::log(std::abs(phi)) - kPi / 4.0)) /
         (1.0 + b * std::sin(std::log(kPi) - kPi / 4.0));
}

}  // namespace

TEST_CASE("Example 1 boundary function") {
  CHECK(examples::example1_theta(kPi, 0.3) == kPi);
  CHECK(examples::example1_theta(-kPi, 0.3) == -kPi);
  CHECK(examples::example1_theta(0.0, 0.3) == 0.0);
  for (double phi : {-3.0, -0.5, 1e-6, 0.2, 2.9}) {
    CHECK(std::abs(examples::example1_theta(phi, 1e-12) - phi) < 1e-11);
    CHECK(std::abs(examples::example1_theta(phi, 0.4) - theta_oracle(phi, 0.4)) < 1e-15);
  }
  // strictly increasing on a dense grid
  const int m = 1 << 20;
  double prev = examples::example1_theta(-kPi, 0.1);
  bool increasing = true;
  for (int j = 1; j <= m; ++j) {
    const double v = examples::example1_theta(-kPi + kTwoPi * j / m, 0.1);
    increasing = increasing && v > prev;
    prev = v;
  }
  CHECK(increasing);
}

TEST_CASE("Example 1 parameter range") {
  for (double b : {0.0, -0.1, std::sqrt(2.0) / 2.0, 0.8}) {
    CHECK(code_of([&] { examples::example1_boundary({b, 1024}); }) == ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { examples::example1_nondiff_evidence(b); }) == ErrorCode::ParamOutOfRange);
  }
}

TEST_CASE("Example 1 samples lie on the unit circle") {
  const auto fx = examples::example1_boundary({0.5, 4096});
  CHECK((fx.map.values().cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("Example 1 distortion trend") {
  const RadialGrid grid = RadialGrid::clustered(64, 0.999, 512);
  const std::vector<double> bs = {0.7, 0.5, 0.3, 0.1, 0.05};
  const auto rows = examples::example1_K_trend(bs, 4096, grid);
  REQUIRE(rows.size() == bs.size());
  for (const auto& r : rows) CHECK(r.measured_sup_k >= 1.0);
  CHECK(rows.back().measured_sup_k < rows.front().measured_sup_k);
  for (std::size_t j = 1; j < rows.size(); ++j) {
    CHECK(rows[j].measured_sup_k <= rows[j - 1].measured_sup_k * (1.0 + 1e-3));
  }
  const auto again = examples::example1_K_trend(bs, 4096, grid);
  for (std::size_t j = 0; j < rows.size(); ++j) CHECK(again[j].measured_sup_k == rows[j].measured_sup_k);
}

TEST_CASE("Example 1 difference quotients oscillate") {
  const double b = 0.3;
  const auto rows = examples::example1_nondiff_evidence(b);
  REQUIRE(rows.size() == 37);
  CHECK(rows.front().h == std::ldexp(1.0, -4));
  CHECK(rows.back().h == std::ldexp(1.0, -40));
  for (const auto& r : rows) CHECK(std::abs(r.quotient - theta_oracle(r.h, b) / r.h) < 1e-14);
  CHECK(examples::oscillation(rows) >= 0.5 * 2.0 * b / (1.0 + b));
  CHECK(examples::oscillation(examples::example1_nondiff_evidence(1e-3)) < 3e-3);

  // log h - pi/4 = pi/2 - 2 pi
  const double h = std::exp(0.75 * kPi - kTwoPi);
  const double expected = (1.0 + b) / (1.0 + b * std::sin(std::log(kPi) - kPi / 4.0));
  CHECK(std::abs(examples::example1_theta(h, b) / h - expected) < 1e-14);
}

TEST_CASE("Example 2 map") {
  const auto ex = examples::example2_map(4096);
  const PointDerivatives at_one = wirtinger(ex.harmonic, 1.0);
  CHECK(std::abs(std::abs(at_one.wz) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(at_one.wzbar) - 1.0) < 1e-14);

  std::mt19937_64 rng(12);
  int positive = 0;
  for (int k = 0; k < 10000; ++k) {
    if (wirtinger(ex.harmonic, oracle::random_disk_point(rng, 1.0 - 1e-9)).jacobian > 0.0) ++positive;
  }
  CHECK(positive == 10000);

  auto k_closed = [](double r) { return (std::abs(3.0 - 2.0 * r) + 1.0) / (std::abs(3.0 - 2.0 * r) - 1.0); };
  const double k999 = wirtinger(ex.harmonic, 0.999).k_point;
  const double k9 = wirtinger(ex.harmonic, 0.9).k_point;
  CHECK(std::abs(k999 - k_closed(0.999)) < 1e-9 * k999);
  CHECK(std::abs(k9 - k_closed(0.9)) < 1e-12 * k9);
  CHECK(k999 / k9 >= 5.0);

  // pi sum n (|a_n|^2 - |b_n|^2) for g = -3 + 3z - z^2, h = z
  CHECK(std::abs(enclosed_area(ex.curve) - 10.0 * kPi) < 1e-6);
  CHECK(ex.curve.interior_point() == Complex(-3.0, 0.0));
  CHECK(std::abs(ex.curve.holder_exponent() - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("Example 2 printed curve is the traced curve with reversed parameter") {
  const Index n = 256;
  const ComplexVector printed = examples::example2_printed_curve(n);
  const HarmonicMap w = examples::example2_map(256).harmonic;
  for (Index j = 0; j < n; ++j) {
    const double t = kTwoPi * double(j) / double(n);
    CHECK(std::abs(printed[j] - evaluate(w, std::polar(1.0, -t))) < 1e-12);
  }
  CHECK(oracle::shoelace(printed) < 0.0);
}

TEST_CASE("Example 2 boundary degenerates") {
  const auto fx = examples::example2_boundary(4096);
  CHECK(norms(fx.map).l_f <= 1e-2);
  CHECK(code_of([&] { kk_bound(norms(fx.map)); }) == ErrorCode::DegenerateLowerBound);
}

TEST_CASE("affine stretch") {
  const auto zero = examples::affine_stretch(0.0, 1024);
  CHECK((zero.fixture.map.values() - curves::circle(1024)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(zero.harmonic.h_coeffs().cwiseAbs().maxCoeff() == 0.0);

  const auto st = examples::affine_stretch(1.0 / 3.0, 4096);
  const RadialGrid grid = RadialGrid::clustered(64, 0.999, 512);
  CHECK(std::abs(grid_sup_K(st.harmonic, grid).sup_k - 2.0) < 1e-12);
  CHECK(std::abs(grid_sup_K(extend(st.fixture.map), grid).sup_k - 2.0) < 1e-6);
  const QcReport r = kk_bound(norms(st.fixture.map));
  CHECK(std::abs(r.kk_bound - std::sqrt(7.0)) < 1e-9);
  CHECK(r.kk_bound >= 2.0);
  CHECK(code_of([] { examples::affine_stretch(1.0, 256); }) == ErrorCode::ParamOutOfRange);
  CHECK(code_of([] { examples::automorphism(1.2, 256); }) == ErrorCode::ParamOutOfRange);
}
