#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcharm/examples.hpp"
#include "qcharm/harmonic_extension.hpp"

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

HarmonicMap make(std::initializer_list<Complex> g, std::initializer_list<Complex> h) {
  ComplexVector gv(static_cast<Index>(g.size()));
  ComplexVector hv(static_cast<Index>(h.size()));
  Index j = 0;
  for (Complex c : g) gv[j++] = c;
  j = 0;
  for (Complex c : h) hv[j++] = c;
  return HarmonicMap(gv, hv);
}

std::vector<examples::BoundaryFixture> fixtures(Index n) {
  std::vector<examples::BoundaryFixture> out;
  out.push_back(examples::identity(n));
  out.push_back(examples::affine_stretch(1.0 / 3.0, n).fixture);
  out.push_back(examples::automorphism({0.4, 0.3}, n));
  out.push_back(examples::example1_boundary({0.1, n}));
  out.push_back(examples::example2_boundary(n));
  return out;
}

}  // namespace

TEST_CASE("Poisson kernel") {
  CHECK(std::abs(poisson_kernel(0.0, 1.234) - 1.0 / kTwoPi) < 1e-16);
  CHECK(std::abs(poisson_kernel(0.5, 0.0) - 3.0 / kTwoPi) < 1e-15);
  const int m = 4096;
  double total = 0.0;
  for (int j = 0; j < m; ++j) total += poisson_kernel(0.9, kTwoPi * j / m) * kTwoPi / m;
  CHECK(std::abs(total - 1.0) < 1e-8);
  CHECK(std::abs(poisson_kernel<long double>(0.5L, 0.0L) - 3.0L / (2.0L * 3.14159265358979323846L)) < 1e-18L);
  CHECK(code_of([] { poisson_kernel(1.0, 0.0); }) == ErrorCode::RadiusOutOfRange);
  CHECK(code_of([] { poisson_kernel(-0.1, 0.0); }) == ErrorCode::RadiusOutOfRange);
}

TEST_CASE("extension coefficients of the closed-form fixtures") {
  const HarmonicMap id = extend(examples::identity(1024).map);
  CHECK(std::abs(id.g_coeffs()[1] - 1.0) < 1e-12);
  CHECK(id.h_coeffs().cwiseAbs().maxCoeff() < 1e-12);

  const HarmonicMap st = extend(examples::affine_stretch(1.0 / 3.0, 1024).fixture.map);
  CHECK(std::abs(st.g_coeffs()[1] - 1.0) < 1e-12);
  CHECK(std::abs(st.h_coeffs()[1] - 1.0 / 3.0) < 1e-12);

  const HarmonicMap ex2 = extend(examples::example2_boundary(1024).map);
  const Complex g[] = {-3.0, 3.0, -1.0};
  for (Index n = 0; n < ex2.g_coeffs().size(); ++n) {
    CHECK(std::abs(ex2.g_coeffs()[n] - (n < 3 ? g[n] : Complex{})) < 1e-10);
  }
  for (Index n = 0; n < ex2.h_coeffs().size(); ++n) {
    CHECK(std::abs(ex2.h_coeffs()[n] - (n == 1 ? Complex(1.0) : Complex{})) < 1e-10);
  }
  CHECK(ex2.h_coeffs()[0] == Complex{});
}

TEST_CASE("point evaluation") {
  const HarmonicMap id = extend(examples::identity(1024).map);
  CHECK(std::abs(evaluate(id, {0.3, 0.4}) - Complex(0.3, 0.4)) < 1e-12);
  const HarmonicMap ex2 = examples::example2_map(1024).harmonic;
  CHECK(std::abs(evaluate(ex2, 1.0)) < 1e-15);
  CHECK(code_of([&] { evaluate(id, 1.1); }) == ErrorCode::OutsideDisk);
  for (const auto& fx : fixtures(1024)) {
    CHECK(std::abs(evaluate(extend(fx.map), 0.0) - fx.map.values().mean()) < 1e-12);
  }
}

TEST_CASE("resynthesized boundary values match the samples") {
  for (const auto& fx : fixtures(1024)) {
    const HarmonicMap w = extend(fx.map);
    double worst = 0.0;
    for (Index j = 0; j < fx.map.size(); j += 7) {
      const Complex z = std::polar(1.0, kTwoPi * double(j) / double(fx.map.size()));
      worst = std::max(worst, std::abs(evaluate(w, z) - fx.map.values()[j]));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("series evaluation agrees with Poisson quadrature") {
  std::mt19937_64 rng(5);
  for (const auto& fx : fixtures(2048)) {
    const HarmonicMap w = extend(fx.map);
    for (int k = 0; k < 64; ++k) {
      const Complex z = oracle::random_disk_point(rng, 0.95);
      CHECK(std::abs(evaluate(w, z) - poisson_integral(fx.map.values(), z)) < 1e-6);
    }
  }
}

TEST_CASE("Wirtinger derivatives of the closed-form maps") {
  const PointDerivatives id = wirtinger(make({0.0, 1.0}, {0.0}), {0.2, -0.5});
  CHECK(std::abs(id.wz - 1.0) < 1e-15);
  CHECK(std::abs(id.wzbar) < 1e-15);
  CHECK(id.jacobian == doctest::Approx(1.0));
  CHECK(id.k_point == doctest::Approx(1.0));

  const double k = 0.3;
  const PointDerivatives st = wirtinger(make({0.0, 1.0}, {0.0, k}), {-0.4, 0.1});
  CHECK(std::abs(st.wzbar - k) < 1e-15);
  CHECK(std::abs(st.jacobian - (1.0 - k * k)) < 1e-15);
  CHECK(std::abs(st.k_point - (1.0 + k) / (1.0 - k)) < 1e-14);

  const PointDerivatives e = wirtinger(examples::example2_map(256).harmonic, 0.99);
  CHECK(std::abs(e.wz - 1.02) < 1e-14);
  CHECK(std::abs(e.wzbar - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(e.mu) - 1.0 / 1.02) < 1e-14);
  CHECK(std::abs(e.k_point - 101.0) < 1e-9);

  CHECK(code_of([] { wirtinger(make({0.0, 0.0, 1.0}, {0.0}), 0.0); }) == ErrorCode::DegenerateDerivative);
  CHECK(code_of([] { wirtinger(make({0.0, 1.0}, {0.0}), 1.5); }) == ErrorCode::OutsideDisk);
}

TEST_CASE("Wirtinger derivatives match central finite differences") {
  std::mt19937_64 rng(6);
  const double h = 1e-5;
  for (const auto& fx : fixtures(1024)) {
    const HarmonicMap w = extend(fx.map);
    for (int k = 0; k < 32; ++k) {
      const Complex z = oracle::random_disk_point(rng, 0.9);
      const Complex wx = (evaluate(w, z + h) - evaluate(w, z - h)) / (2.0 * h);
      const Complex wy = (evaluate(w, z + kI * h) - evaluate(w, z - kI * h)) / (2.0 * h);
      const PointDerivatives d = wirtinger(w, z);
      CHECK(std::abs(d.wz - 0.5 * (wx - kI * wy)) < 1e-6);
      CHECK(std::abs(d.wzbar - 0.5 * (wx + kI * wy)) < 1e-6);
      CHECK(std::abs(d.jacobian - (std::norm(d.wz) - std::norm(d.wzbar))) < 1e-12);
      if (d.jacobian > 0.0) {
        CHECK(std::abs(d.mu) < 1.0);
        const double m = std::abs(d.mu);
        CHECK(std::abs(d.k_point - (1.0 + m) / (1.0 - m)) < 1e-12 * d.k_point);
      }
    }
  }
}

TEST_CASE("grid supremum of the distortion") {
  const RadialGrid grid = RadialGrid::clustered(16, 0.999, 64);
  CHECK(grid.radii.front() == 0.0);
  CHECK(std::abs(grid.radii.back() - 0.999) < 1e-15);
  CHECK(std::abs(grid_sup_K(make({0.0, 1.0}, {0.0}), grid).sup_k - 1.0) < 1e-12);
  CHECK(std::abs(grid_sup_K(make({0.0, 1.0}, {0.0, 1.0 / 3.0}), grid).sup_k - 2.0) < 1e-12);
  const GridSupK e = grid_sup_K(examples::example2_map(256).harmonic, grid);
  CHECK(e.sup_k >= 100.0);
  CHECK(std::abs(e.argmax - 0.999) < 1e-12);

  const GridSupK z2 = grid_sup_K(make({0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 0.5}), grid);
  CHECK(z2.excluded == grid.angles);
}

TEST_CASE("grid evaluation rows") {
  const RadialGrid grid = RadialGrid::clustered(4, 0.9, 8);
  const HarmonicMap w = make({0.0, 1.0}, {0.0, 0.25});
  const auto rows = evaluate_grid(w, grid);
  REQUIRE(rows.size() == 32);
  for (const GridSample& s : rows) {
    const Complex z = std::polar(s.r, s.phi);
    CHECK(std::abs(s.w - (z + 0.25 * std::conj(z))) < 1e-14);
    CHECK(std::abs(s.jacobian - (1.0 - 0.0625)) < 1e-14);
    CHECK(std::abs(s.mu_abs - 0.25) < 1e-14);
    CHECK(std::abs(s.k_point - 5.0 / 3.0) < 1e-13);
  }
}

TEST_CASE("q.c. form examples") {
  const PointDerivatives id = wirtinger(make({0.0, 1.0}, {0.0}), {0.3, 0.2});
  const QcForms a = qc_forms_check(id, 1.0);
  CHECK((a.operator_norm && a.polar_energy && a.angular));

  const PointDerivatives st = wirtinger(make({0.0, 1.0}, {0.0, 1.0 / 3.0}), {0.1, -0.6});
  const QcForms b = qc_forms_check(st, 2.0);
  CHECK((b.operator_norm && b.polar_energy && b.angular));
  const QcForms c = qc_forms_check(st, 1.9);
  CHECK_FALSE(c.operator_norm);
  CHECK_FALSE(c.polar_energy);

  const PointDerivatives e = wirtinger(examples::example2_map(256).harmonic, 0.99);
  const QcForms d = qc_forms_check(e, 100.0);
  CHECK_FALSE(d.operator_norm);
  CHECK_FALSE(d.polar_energy);
  const QcForms f = qc_forms_check(e, 101.0);
  CHECK((f.operator_norm && f.polar_energy && f.angular));

  const PointDerivatives flipped = wirtinger(make({0.0, 1.0}, {0.0, 2.0}), 0.5);
  CHECK(code_of([&] { qc_forms_check(flipped, 3.0); }) == ErrorCode::NonpositiveJacobian);
}

TEST_CASE("q.c. forms: operator norm and polar energy agree, operator norm implies angular") {
  std::mt19937_64 rng(8);
  const double Ks[] = {1.0, 1.05, 1.5, 2.0, 3.0, 10.0, 101.0};
  for (const auto& fx : fixtures(1024)) {
    const HarmonicMap w = extend(fx.map);
    for (int k = 0; k < 200; ++k) {
      const PointDerivatives d = wirtinger(w, oracle::random_disk_point(rng, 0.999));
      for (double K : Ks) {
        const QcForms q = qc_forms_check(d, K);
        CHECK(q.operator_norm == q.polar_energy);
        if (q.operator_norm) CHECK(q.angular);
      }
    }
  }
}

TEST_CASE("distortion obeys the maximum principle on sampled circles") {
  std::mt19937_64 rng(9);
  for (const auto& fx : fixtures(1024)) {
    const HarmonicMap w = extend(fx.map);
    for (int k = 0; k < 10; ++k) {
      const Complex c = oracle::random_disk_point(rng, 0.7);
      const double rho = 0.5 * (1.0 - std::abs(c));
      const double center = wirtinger(w, c).k_point;
      double rim = 0.0;
      for (int j = 0; j < 256; ++j) rim = std::max(rim, wirtinger(w, c + std::polar(rho, kTwoPi * j / 256)).k_point);
      CHECK(rim >= center * (1.0 - 1e-12));
    }
  }
}
