#include "qcharm/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>

namespace qcharm::quadrature {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 4> kLegendre8Nodes = {
    0.183434642495649804939476142360184, 0.525532409916328985817739049189254,
    0.796666477413626739591553936475830, 0.960289856497536231683560868569473};
constexpr std::array<double, 4> kLegendre8Weights = {
    0.362683783378361982965150449277196, 0.313706645877887287337962201986601,
    0.222381034453374470544355994426241, 0.101228536290376259152531354309962};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_intervals) {
  std::priority_queue<Segment> heap;
  heap.push(kronrod15(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;
  int intervals = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (intervals >= max_intervals) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b
          << "] stalled with error estimate " << error;
      throw Error(ErrorCode::QuadratureNonconvergent, msg.str());
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++intervals;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }
  return {value, error, intervals};
}

double gauss_legendre8(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double dx = half * kLegendre8Nodes[j];
    sum += kLegendre8Weights[j] * (f(centre - dx) + f(centre + dx));
  }
  return sum * half;
}

}  // namespace qcharm::quadrature
