#include "qcharm/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Sparse>

#include "qcharm/quadrature.hpp"

namespace qcharm {
namespace {

constexpr Index kMinSamples = 16;
constexpr double kTangentTolerance = 1e-6;
constexpr double kMaxPairs = 4.0e6;
constexpr Index kBandSeparation = 16;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

std::vector<Complex> deduplicate(const ComplexVector& points) {
  const Complex centroid = points.mean();
  double scale = 0.0;
  for (Index i = 0; i < points.size(); ++i) scale = std::max(scale, std::abs(points[i] - centroid));
  const double eps = 1e-13 * std::max(scale, 1e-300);

  std::vector<Complex> kept;
  kept.reserve(static_cast<std::size_t>(points.size()));
  for (Index i = 0; i < points.size(); ++i) {
    if (!kept.empty() && std::abs(points[i] - kept.back()) <= eps) continue;
    kept.push_back(points[i]);
  }
  while (kept.size() > 1 && std::abs(kept.back() - kept.front()) <= eps) kept.pop_back();
  return kept;
}

int orientation(Complex a, Complex b, Complex c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Complex a, Complex b, Complex p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

// Sweep over segments sorted by their left x-extent.
bool polygon_is_simple(const std::vector<Complex>& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto xmin = [&](std::size_t i) { return std::min(p[i].real(), p[(i + 1) % n].real()); };
  auto xmax = [&](std::size_t i) { return std::max(p[i].real(), p[(i + 1) % n].real()); };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xmin(a) < xmin(b); });
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t i = order[oi];
    const double right = xmax(i);
    for (std::size_t oj = oi + 1; oj < n && xmin(order[oj]) <= right; ++oj) {
      const std::size_t j = order[oj];
      const std::size_t gap = (i > j) ? i - j : j - i;
      if (gap == 1 || gap == n - 1) continue;
      if (segments_intersect(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return false;
    }
  }
  return true;
}

double signed_area(const std::vector<Complex>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * a;
}

double segment_distance(Complex a, Complex b, Complex z, double* fraction) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double u = len2 > 0.0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  if (fraction) *fraction = u;
  return std::abs(z - (a + u * ab));
}

int winding_number(const std::vector<Complex>& p, Complex z) {
  int wn = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = p[i];
    const Complex b = p[(i + 1) % n];
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() && cross(b - a, z - a) > 0.0) ++wn;
    } else if (b.imag() <= z.imag() && cross(b - a, z - a) < 0.0) {
      --wn;
    }
  }
  return wn;
}

// Periodic C2 cubic spline of complex data over a non-uniform knot sequence.
class PeriodicSpline {
 public:
  PeriodicSpline(const std::vector<Complex>& y, const std::vector<double>& knots, double period)
      : y_(y), t_(knots), h_(y.size()), m_(y.size()) {
    const Index n = static_cast<Index>(y.size());
    for (Index i = 0; i < n; ++i) {
      const double next = (i + 1 < n) ? t_[i + 1] : period;
      h_[i] = next - t_[i];
    }
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(3 * n));
    Eigen::MatrixX2d rhs(n, 2);
    for (Index i = 0; i < n; ++i) {
      const Index prev = (i + n - 1) % n;
      const Index next = (i + 1) % n;
      entries.emplace_back(i, prev, h_[prev]);
      entries.emplace_back(i, i, 2.0 * (h_[prev] + h_[i]));
      entries.emplace_back(i, next, h_[i]);
      const Complex r = 6.0 * ((y_[next] - y_[i]) / h_[i] - (y_[i] - y_[prev]) / h_[prev]);
      rhs(i, 0) = r.real();
      rhs(i, 1) = r.imag();
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    const Eigen::MatrixX2d sol = lu.solve(rhs);
    for (Index i = 0; i < n; ++i) m_[i] = {sol(i, 0), sol(i, 1)};
  }

  Index segments() const { return static_cast<Index>(y_.size()); }
  double width(Index i) const { return h_[i]; }

  Complex value(Index i, double u) const {
    const Index j = (i + 1) % segments();
    const double h = h_[i];
    const double v = h - u;
    return m_[i] * (v * v * v / (6.0 * h)) + m_[j] * (u * u * u / (6.0 * h)) +
           (y_[i] / h - m_[i] * (h / 6.0)) * v + (y_[j] / h - m_[j] * (h / 6.0)) * u;
  }

  Complex derivative(Index i, double u) const {
    const Index j = (i + 1) % segments();
    const double h = h_[i];
    const double v = h - u;
    return -m_[i] * (v * v / (2.0 * h)) + m_[j] * (u * u / (2.0 * h)) -
           (y_[i] / h - m_[i] * (h / 6.0)) + (y_[j] / h - m_[j] * (h / 6.0));
  }

  double arc(Index i, double u) const {
    return quadrature::gauss_legendre8([&](double x) { return std::abs(derivative(i, x)); }, 0.0, u);
  }

 private:
  std::vector<Complex> y_;
  std::vector<double> t_;
  std::vector<double> h_;
  std::vector<Complex> m_;
};

// Inverts the arc length of one spline segment: a cubic Hermite guess for
// u(sigma) using the endpoint speeds, then Newton on the quadrature.
double invert_arc(const PeriodicSpline& spline, Index seg, double seg_length, double sigma) {
  const double h = spline.width(seg);
  const double speed0 = std::abs(spline.derivative(seg, 0.0));
  const double speed1 = std::abs(spline.derivative(seg, h));
  const double x = sigma / seg_length;
  const double h00 = 2 * x * x * x - 3 * x * x + 1;
  const double h10 = x * x * x - 2 * x * x + x;
  const double h01 = -2 * x * x * x + 3 * x * x;
  const double h11 = x * x * x - x * x;
  double u = h10 * seg_length / speed0 + h01 * h + h11 * seg_length / speed1;
  (void)h00;
  u = std::clamp(u, 0.0, h);
  for (int it = 0; it < 20; ++it) {
    const double f = spline.arc(seg, u) - sigma;
    const double df = std::abs(spline.derivative(seg, u));
    if (df <= 0.0) break;
    const double next = std::clamp(u - f / df, 0.0, h);
    const double step = std::abs(next - u);
    u = next;
    if (step <= 1e-15 * h) break;
  }
  return u;
}

// Derivative of the arc-length series with respect to s.
spectral::FourierSeries arc_derivative(const spectral::FourierSeries& s, double length) {
  spectral::FourierSeries d = spectral::differentiate(s);
  const double scale = kTwoPi / length;
  for (Index k = -d.max_mode(); k <= d.max_mode(); ++k) d[k] *= scale;
  return d;
}

using Objective = std::function<double(double, double)>;

// Derivative-free compass search for a local maximum.
std::pair<double, double> compass_maximize(const Objective& f, double x, double y, double step,
                                           double min_step, double* best) {
  double fx = f(x, y);
  static constexpr double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                        {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  int evals = 0;
  while (step > min_step && evals < 4000) {
    bool moved = false;
    for (const auto& d : dirs) {
      const double nx = x + step * d[0];
      const double ny = y + step * d[1];
      const double v = f(nx, ny);
      ++evals;
      if (v > fx) {
        x = nx;
        y = ny;
        fx = v;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  *best = fx;
  return {x, y};
}

Index pair_stride(Index n) {
  const double full = 0.5 * static_cast<double>(n) * static_cast<double>(n);
  if (full <= kMaxPairs) return 1;
  return static_cast<Index>(std::ceil(std::sqrt(full / kMaxPairs)));
}

Index wrapped_separation(Index i, Index j, Index n) {
  const Index d = std::abs(i - j);
  return std::min(d, n - d);
}

void check_tangent_stability(const JordanCurve& curve) {
  const Index n = curve.size();
  if (n < 2 * kMinSamples) return;
  const Index half = n / 2;
  ComplexVector coarse(half);
  for (Index j = 0; j < half; ++j) coarse[j] = curve.samples()[2 * j];
  const auto series = spectral::analyze(coarse, spectral::default_mode_cap(half));
  const ComplexVector coarse_tangent =
      spectral::synthesize(arc_derivative(series, curve.length()), half);
  double gap = 0.0;
  for (Index j = 0; j < half; ++j) {
    gap = std::max(gap, std::abs(coarse_tangent[j] - curve.tangent()[2 * j]));
  }
  if (gap > kTangentTolerance) {
    std::ostringstream msg;
    msg << "tangent estimates differ by " << gap << " between " << n << " and " << half
        << " samples";
    throw Error(ErrorCode::NumericallyUnstable, msg.str());
  }
}

}  // namespace

Complex JordanCurve::point_at(double s) const {
  return spectral::evaluate(series_, kTwoPi * s / length_);
}

Complex JordanCurve::tangent_at(double s) const {
  return spectral::evaluate(tangent_series_, kTwoPi * s / length_);
}

double JordanCurve::reduce(double s) const {
  double r = std::fmod(s, length_);
  if (r < 0.0) r += length_;
  if (r >= length_) r -= length_;
  return r;
}

JordanCurve build_curve(const ComplexVector& points, double holder_exponent,
                        Complex interior_point) {
  if (!(holder_exponent > 0.0 && holder_exponent <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "holder exponent must lie in (0, 1]");
  }
  std::vector<Complex> p = deduplicate(points);
  const Index n = static_cast<Index>(p.size());
  if (n < kMinSamples) {
    throw Error(ErrorCode::TooFewSamples,
                "curve needs at least 16 distinct samples, got " + std::to_string(n));
  }
  if (!polygon_is_simple(p)) {
    throw Error(ErrorCode::SelfIntersection, "sample polygon intersects itself");
  }
  if (signed_area(p) < 0.0) std::reverse(p.begin() + 1, p.end());

  double dist = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (Index i = 0; i < n; ++i) {
    dist = std::min(dist, segment_distance(p[i], p[(i + 1) % n], interior_point, nullptr));
    scale = std::max(scale, std::abs(p[i] - interior_point));
  }
  if (dist <= 1e-12 * scale || winding_number(p, interior_point) != 1) {
    std::ostringstream msg;
    msg << "point (" << interior_point.real() << ", " << interior_point.imag()
        << ") is not strictly inside the curve";
    throw Error(ErrorCode::OriginOutside, msg.str());
  }

  std::vector<double> knots(static_cast<std::size_t>(n));
  double period = 0.0;
  for (Index i = 0; i < n; ++i) {
    knots[i] = period;
    period += std::abs(p[(i + 1) % n] - p[i]);
  }
  const PeriodicSpline spline(p, knots, period);

  std::vector<double> seg_len(static_cast<std::size_t>(n));
  std::vector<double> cumulative(static_cast<std::size_t>(n) + 1, 0.0);
  for (Index i = 0; i < n; ++i) {
    seg_len[i] = spline.arc(i, spline.width(i));
    cumulative[i + 1] = cumulative[i] + seg_len[i];
  }
  const double length = cumulative[n];

  JordanCurve curve;
  curve.samples_.resize(n);
  Index seg = 0;
  for (Index k = 0; k < n; ++k) {
    const double target = length * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < n && cumulative[seg + 1] <= target) ++seg;
    const double u = invert_arc(spline, seg, seg_len[seg], target - cumulative[seg]);
    curve.samples_[k] = spline.value(seg, u);
  }
  curve.length_ = length;
  curve.holder_exponent_ = holder_exponent;
  curve.interior_point_ = interior_point;
  curve.series_ = spectral::analyze(curve.samples_, spectral::default_mode_cap(n));
  curve.tangent_series_ = arc_derivative(curve.series_, length);
  curve.tangent_ = spectral::synthesize(curve.tangent_series_, n);
  return curve;
}

double arc_distance(const JordanCurve& curve, double s, double t) {
  const double d = std::abs(curve.reduce(s) - curve.reduce(t));
  return std::min(d, curve.length() - d);
}

double curvature_kernel(const JordanCurve& curve, double s, double t) {
  const Complex chord = curve.point_at(t) - curve.point_at(s);
  return (std::conj(chord) * kI * curve.tangent_at(s)).real();
}

double curvature_kernel_at(const JordanCurve& curve, Index i, Index j) {
  const Complex chord = curve.samples()[j] - curve.samples()[i];
  return (std::conj(chord) * kI * curve.tangent()[i]).real();
}

double holder_constant(const JordanCurve& curve) {
  check_tangent_stability(curve);
  const Index n = curve.size();
  const double h = curve.spacing();
  const double mu = curve.holder_exponent();
  const ComplexVector& tan = curve.tangent();

  double best = 0.0;
  Index best_i = 0;
  Index best_j = 2;
  auto consider = [&](Index i, Index j) {
    const Index m = wrapped_separation(i, j, n);
    if (m < 2) return;
    const double r = std::abs(tan[i] - tan[j]) / std::pow(static_cast<double>(m) * h, mu);
    if (r > best) {
      best = r;
      best_i = i;
      best_j = j;
    }
  };
  const Index stride = pair_stride(n);
  for (Index i = 0; i < n; i += stride)
    for (Index j = i + stride; j < n; j += stride) consider(i, j);
  for (Index i = 0; i < n; ++i)
    for (Index m = 2; m <= std::min(kBandSeparation, n / 2); ++m) consider(i, (i + m) % n);

  // Refine around the best pair on the interpolant; separations below two
  // samples are admissible here since the interpolant is noise-free.
  const double s0 = static_cast<double>(best_i) * h;
  double delta0 = static_cast<double>(best_j - best_i) * h;
  if (delta0 > 0.5 * curve.length()) delta0 -= curve.length();
  if (delta0 < -0.5 * curve.length()) delta0 += curve.length();
  const double min_sep = 0.25 * h;
  const Objective ratio = [&](double s, double delta) {
    const double ad = std::abs(delta);
    if (ad < min_sep || ad > 0.5 * curve.length()) return -1.0;
    return std::abs(curve.tangent_at(s) - curve.tangent_at(s + delta)) / std::pow(ad, mu);
  };
  double refined = 0.0;
  compass_maximize(ratio, s0, delta0, static_cast<double>(stride) * h, 1e-4 * h, &refined);
  return std::max(best, refined) / (1.0 + mu);
}

double chord_arc_constant(const JordanCurve& curve) {
  const Index n = curve.size();
  const double h = curve.spacing();
  const ComplexVector& g = curve.samples();
  double best = 1.0;
  Index best_i = 0;
  Index best_j = n / 2;
  const Index stride = pair_stride(n);
  for (Index i = 0; i < n; i += stride) {
    for (Index j = i + stride; j < n; j += stride) {
      const double d = static_cast<double>(wrapped_separation(i, j, n)) * h;
      const double r = d / std::abs(g[i] - g[j]);
      if (r > best) {
        best = r;
        best_i = i;
        best_j = j;
      }
    }
  }
  const Objective ratio = [&](double s, double t) {
    const double d = arc_distance(curve, s, t);
    if (d < h) return -1.0;
    return d / std::abs(curve.point_at(s) - curve.point_at(t));
  };
  double refined = 0.0;
  compass_maximize(ratio, static_cast<double>(best_i) * h, static_cast<double>(best_j) * h,
                   static_cast<double>(stride) * h, 1e-4 * h, &refined);
  return std::max({1.0, best, refined});
}

double enclosed_area(const JordanCurve& curve) {
  double sum = 0.0;
  for (Index j = 0; j < curve.size(); ++j) {
    sum += (std::conj(curve.samples()[j]) * curve.tangent()[j]).imag();
  }
  return 0.5 * sum * curve.spacing();
}

CurveGeometryReport analyze_curve(const JordanCurve& curve) {
  return {holder_constant(curve), chord_arc_constant(curve), enclosed_area(curve),
          curve.length()};
}

CurveProjection project(const JordanCurve& curve, Complex z) {
  const Index n = curve.size();
  const ComplexVector& g = curve.samples();
  Index nearest = 0;
  double nearest_d = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < n; ++j) {
    const double d = std::norm(g[j] - z);
    if (d < nearest_d) {
      nearest_d = d;
      nearest = j;
    }
  }
  const Index prev = (nearest + n - 1) % n;
  const Index next = (nearest + 1) % n;
  double fa = 0.0;
  double fb = 0.0;
  const double da = segment_distance(g[prev], g[nearest], z, &fa);
  const double db = segment_distance(g[nearest], g[next], z, &fb);
  const double h = curve.spacing();
  if (da < db) {
    return {curve.reduce((static_cast<double>(prev) + fa) * h), da};
  }
  return {curve.reduce((static_cast<double>(nearest) + fb) * h), db};
}

namespace curves {

ComplexVector circle(Index n, double radius) {
  ComplexVector z(n);
  for (Index j = 0; j < n; ++j) z[j] = std::polar(radius, kTwoPi * static_cast<double>(j) / n);
  return z;
}

ComplexVector ellipse(Index n, double a, double b) {
  ComplexVector z(n);
  for (Index j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    z[j] = {a * std::cos(t), b * std::sin(t)};
  }
  return z;
}

}  // namespace curves
}  // namespace qcharm
