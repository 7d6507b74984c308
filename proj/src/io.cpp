#include "qcharm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qcharm::io {
namespace {

using nlohmann::json;

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidArgument, message);
}

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

/// "name:1,2" -> ("name", {1, 2}).
std::pair<std::string, std::vector<double>> split_generator(const std::string& source) {
  const auto colon = source.find(':');
  std::pair<std::string, std::vector<double>> out{source.substr(0, colon), {}};
  if (colon == std::string::npos) return out;
  std::stringstream rest(source.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    try {
      std::size_t used = 0;
      out.second.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      invalid("bad parameter '" + item + "' in '" + source + "'");
    }
  }
  return out;
}

void expect_params(const std::string& source, const std::vector<double>& params, std::size_t count) {
  if (params.size() != count) {
    invalid("'" + source + "' expects " + std::to_string(count) + " parameter(s)");
  }
}

Complex parse_point(const json& item, const char* what) {
  if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
    parse_error(std::string(what) + " entries must be [x, y] number pairs");
  }
  return {item[0].get<double>(), item[1].get<double>()};
}

ComplexVector parse_points(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) parse_error(std::string("missing key '") + key + "'");
  const json& arr = doc.at(key);
  if (!arr.is_array()) parse_error(std::string("'") + key + "' must be an array");
  ComplexVector out(static_cast<Index>(arr.size()));
  for (std::size_t j = 0; j < arr.size(); ++j) out[static_cast<Index>(j)] = parse_point(arr[j], key);
  return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

/// JSON has no infinities; they are written as null next to a flag.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void RunConfig::validate() const {
  if (!is_power_of_two(n_samples) || n_samples < 64) {
    invalid("n_samples must be a power of two >= 64");
  }
  if (fourier_modes == 0 || fourier_modes < -1 || (fourier_modes > 0 && 2 * fourier_modes >= n_samples)) {
    invalid("fourier_modes must be positive and below n_samples/2");
  }
  if (!(grid_r_max > 0.0 && grid_r_max < 1.0)) invalid("grid_r_max must lie in (0, 1)");
  if (grid_radii < 2) invalid("grid_radii must be at least 2");
  if (grid_angles < 1) invalid("grid_angles must be positive");
  for (double r : radii_list) {
    if (!(r >= 0.0 && r < 1.0)) invalid("explicit radii must lie in [0, 1)");
  }
  if (!(tolerance > 0.0)) invalid("tolerance must be positive");
  if (holder_exponent && !(*holder_exponent > 0.0 && *holder_exponent <= 1.0)) {
    invalid("holder exponent must lie in (0, 1]");
  }
}

RadialGrid make_grid(const RunConfig& config) {
  if (!config.radii_list.empty()) return {config.radii_list, config.grid_angles};
  return RadialGrid::clustered(config.grid_radii, config.grid_r_max, config.grid_angles);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

JordanCurve parse_curve(const json& doc, const RunConfig& config) {
  const ComplexVector samples = parse_points(doc, "samples");
  double mu = 1.0;
  if (doc.contains("holder_exponent")) {
    if (!doc["holder_exponent"].is_number()) parse_error("'holder_exponent' must be a number");
    mu = doc["holder_exponent"].get<double>();
  }
  if (config.holder_exponent) mu = *config.holder_exponent;
  if (!(mu > 0.0 && mu <= 1.0)) invalid("holder exponent must lie in (0, 1]");
  Complex interior{};
  if (doc.contains("interior_point")) interior = parse_point(doc["interior_point"], "interior_point");
  return build_curve(samples, mu, interior);
}

JordanCurve load_curve(const std::string& source, const RunConfig& config) {
  const auto [name, params] = split_generator(source);
  const Index n = config.n_samples;
  const double mu = config.holder_exponent.value_or(1.0);
  if (name == "circle") {
    if (params.size() > 1) invalid("'circle' takes at most a radius");
    return build_curve(curves::circle(n, params.empty() ? 1.0 : params[0]), mu);
  }
  if (name == "ellipse") {
    expect_params(source, params, 2);
    return build_curve(curves::ellipse(n, params[0], params[1]), mu);
  }
  if (name == "example2") {
    expect_params(source, params, 0);
    if (!config.holder_exponent) return examples::example2_map(n).curve;
    const examples::Example2 ex = examples::example2_map(n);
    ComplexVector samples = ex.curve.samples();
    return build_curve(samples, mu, ex.curve.interior_point());
  }
  return parse_curve(read_json_file(source), config);
}

ComplexVector parse_boundary_values(const json& doc) { return parse_points(doc, "boundary_values"); }

LoadedBoundary load_boundary(const std::string& source, const std::optional<std::string>& curve,
                             const RunConfig& config) {
  const auto [name, params] = split_generator(source);
  const Index n = config.n_samples;
  const Index cap = config.fourier_modes;
  auto generated = [&](examples::BoundaryFixture fx) -> LoadedBoundary {
    if (curve) invalid("generator '" + name + "' defines its own curve; drop --curve");
    if (cap > 0) fx.map = build_boundary_map(fx.map.values(), fx.curve, cap);
    return {source, std::move(fx.curve), std::move(fx.map)};
  };
  if (name == "identity") {
    expect_params(source, params, 0);
    return generated(examples::identity(n));
  }
  if (name == "rotation") {
    expect_params(source, params, 1);
    return generated(examples::rotation(params[0], n));
  }
  if (name == "automorphism") {
    expect_params(source, params, 2);
    return generated(examples::automorphism({params[0], params[1]}, n));
  }
  if (name == "stretch") {
    expect_params(source, params, 1);
    return generated(examples::affine_stretch(params[0], n).fixture);
  }
  if (name == "example1") {
    expect_params(source, params, 1);
    return generated(examples::example1_boundary({params[0], n}));
  }
  if (name == "example2") {
    expect_params(source, params, 0);
    return generated(examples::example2_boundary(n));
  }
  const ComplexVector values = parse_boundary_values(read_json_file(source));
  JordanCurve target = load_curve(curve.value_or("circle"), config);
  BoundaryMap map = build_boundary_map(values, target, cap);
  return {source, std::move(target), std::move(map)};
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json to_json(const CurveGeometryReport& report) {
  return {{"c_gamma", report.c_gamma},
          {"chord_arc_b", report.chord_arc_b},
          {"area", report.area},
          {"length", report.length}};
}

json to_json(const BoundaryDerivatives& d, bool include_samples) {
  json out = {{"n_samples", d.f_prime.size()},
              {"sup_f_prime", d.sup_f_prime},
              {"sup_hilbert", d.sup_hilbert},
              {"l_f", d.l_f}};
  if (include_samples) {
    const Index n = d.f_prime.size();
    json rows = json::array();
    for (Index j = 0; j < n; ++j) {
      rows.push_back({{"phi", kTwoPi * static_cast<double>(j) / static_cast<double>(n)},
                      {"fp_re", d.f_prime[j].real()},
                      {"fp_im", d.f_prime[j].imag()},
                      {"hfp_re", d.hilbert_f_prime[j].real()},
                      {"hfp_im", d.hilbert_f_prime[j].imag()},
                      {"wz_mod", d.wz_mod[j]},
                      {"wzbar_mod", d.wzbar_mod[j]}});
    }
    out["samples"] = std::move(rows);
  }
  return out;
}

json to_json(const QcReport& report) {
  return {{"s", report.s_value},
          {"mu1", finite_or_null(report.mu1)},
          {"mu2", report.mu2},
          {"small_k", report.small_k},
          {"kk_bound", report.kk_bound},
          {"measured_sup_k", finite_or_null(report.measured_sup_k)},
          {"bound_holds", report.bound_holds}};
}

json to_json(const JacobianCheck& check) {
  return {{"phi", check.phi},
          {"rhs", check.rhs},
          {"measured", check.measured},
          {"extrapolated", check.extrapolated},
          {"radial", check.radial},
          {"holds", check.holds}};
}

json to_json(const PairCheck& check) {
  return {{"max_value", check.max_value},
          {"holds", check.holds},
          {"pairs", check.pairs},
          {"seed", check.seed}};
}

json to_json(const BoundsReport& report) {
  json checks = json::array();
  bool all_hold = true;
  for (const JacobianCheck& c : report.jacobian_checks) {
    checks.push_back(to_json(c));
    all_hold = all_hold && c.holds;
  }
  json out = {{"geometry", to_json(report.geometry)},
              {"K", report.K},
              {"alpha", report.alpha},
              {"holder_c", report.holder_c},
              {"lipschitz_l_log10", report.lipschitz.log10_value},
              {"lipschitz_l", finite_or_null(report.lipschitz.value)},
              {"lipschitz_overflow", report.lipschitz.overflow},
              {"interior_lipschitz_log10", report.interior_lipschitz_log10},
              {"sup_f_prime", report.sup_f_prime},
              {"lipschitz_holds", report.lipschitz_holds},
              {"normalized", report.normalized},
              {"holder_check", report.holder ? to_json(*report.holder) : json(nullptr)},
              {"interior_lipschitz_check", to_json(report.interior)},
              {"jacobian_checks", std::move(checks)},
              {"jacobian_bound_holds", all_hold}};
  return out;
}

json to_json(const NormalizationCheck& check) {
  json anchors = json::array();
  for (Complex w : check.spec.anchor_points) anchors.push_back(complex_json(w));
  return {{"is_normalized", check.is_normalized},
          {"anchor_points", std::move(anchors)},
          {"arc_lengths", check.spec.arc_lengths}};
}

json grid_json(const std::vector<GridSample>& samples) {
  json rows = json::array();
  for (const GridSample& s : samples) {
    rows.push_back({{"r", s.r},
                    {"phi", s.phi},
                    {"w_re", s.w.real()},
                    {"w_im", s.w.imag()},
                    {"J", s.jacobian},
                    {"mu_abs", s.mu_abs},
                    {"K_point", finite_or_null(s.k_point)}});
  }
  return rows;
}

std::string boundary_csv(const BoundaryDerivatives& d) {
  std::string out = "phi,fp_re,fp_im,hfp_re,hfp_im,wz_mod,wzbar_mod\n";
  const Index n = d.f_prime.size();
  for (Index j = 0; j < n; ++j) {
    const double cells[] = {kTwoPi * static_cast<double>(j) / static_cast<double>(n),
                            d.f_prime[j].real(), d.f_prime[j].imag(),
                            d.hilbert_f_prime[j].real(), d.hilbert_f_prime[j].imag(),
                            d.wz_mod[j], d.wzbar_mod[j]};
    for (std::size_t c = 0; c < std::size(cells); ++c) {
      out += format_double(cells[c]);
      out += c + 1 < std::size(cells) ? ',' : '\n';
    }
  }
  return out;
}

std::string grid_csv(const std::vector<GridSample>& samples) {
  std::string out = "r,phi,w_re,w_im,J,mu_abs,K_point\n";
  for (const GridSample& s : samples) {
    const double cells[] = {s.r, s.phi, s.w.real(), s.w.imag(), s.jacobian, s.mu_abs, s.k_point};
    for (std::size_t c = 0; c < std::size(cells); ++c) {
      out += format_double(cells[c]);
      out += c + 1 < std::size(cells) ? ',' : '\n';
    }
  }
  return out;
}

std::string trend_csv(const std::vector<examples::TrendRow>& rows) {
  std::string out = "b,measured_sup_k\n";
  for (const auto& row : rows) out += format_double(row.b) + ',' + format_double(row.measured_sup_k) + '\n';
  return out;
}

std::string quotient_csv(const std::vector<examples::QuotientRow>& rows) {
  std::string out = "h,quotient\n";
  for (const auto& row : rows) out += format_double(row.h) + ',' + format_double(row.quotient) + '\n';
  return out;
}

json error_json(const Error& error) {
  return {{"error", std::string(to_string(error.code()))}, {"message", error.what()}};
}

}  // namespace qcharm::io
