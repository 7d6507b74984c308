#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qcharm/io.hpp"

namespace {

using nlohmann::json;
using namespace qcharm;
using io::OutputFormat;
using io::RunConfig;

struct Inputs {
  std::string curve;
  std::string boundary;
  std::optional<double> K;
  Index pairs = 10000;
  Index jacobian_samples = 100;
  std::string radii;
  double b = 0.3;
  std::vector<double> bs{0.7, 0.5, 0.3, 0.1, 0.05};
  double k = 1.0 / 3.0;
};

std::optional<std::string> optional_curve(const Inputs& in) {
  if (in.curve.empty()) return std::nullopt;
  return in.curve;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required");
}

/// --radii is either a count (with --grid-r-max) or a comma list of radii.
void apply_radii(const std::string& radii, RunConfig& config) {
  if (radii.empty()) return;
  if (radii.find_first_of(",.") == std::string::npos) {
    try {
      config.grid_radii = std::stol(radii);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "bad --radii '" + radii + "'");
    }
    return;
  }
  std::stringstream ss(radii);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      config.radii_list.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "bad radius '" + item + "'");
    }
  }
}

json grid_summary(const RadialGrid& grid, const GridSupK& sup) {
  return {{"radii", grid.radii.size()},
          {"r_max", grid.radii.back()},
          {"angles", grid.angles},
          {"sup_k", sup.sup_k},
          {"argmax", json::array({sup.argmax.real(), sup.argmax.imag()})},
          {"excluded", sup.excluded}};
}

json coefficients_json(const ComplexVector& c) {
  json out = json::array();
  for (Index j = 0; j < c.size(); ++j) out.push_back(json::array({c[j].real(), c[j].imag()}));
  return out;
}

json config_json(const RunConfig& config) {
  return {{"n_samples", config.n_samples},
          {"fourier_modes", config.mode_cap()},
          {"tolerance", config.tolerance},
          {"seed", config.seed}};
}

class Emitter {
 public:
  explicit Emitter(const RunConfig& config) : config_(config) {}

  /// Writes the JSON document or, with --output csv, the command's table.
  void emit(const json& doc, const std::string& csv) const {
    const std::string text = config_.output == OutputFormat::csv ? csv : doc.dump(2) + "\n";
    if (config_.out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(config_.out_path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + config_.out_path + "'");
    out << text;
  }

 private:
  const RunConfig& config_;
};

std::string row_csv(const std::vector<std::pair<std::string, double>>& cells) {
  std::string head;
  std::string row;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    head += cells[j].first + (j + 1 < cells.size() ? "," : "\n");
    row += io::format_double(cells[j].second) + (j + 1 < cells.size() ? "," : "\n");
  }
  return head + row;
}

void analyze_curve_cmd(const RunConfig& config, const Inputs& in) {
  require(in.curve, "--curve");
  const JordanCurve curve = io::load_curve(in.curve, config);
  const CurveGeometryReport report = analyze_curve(curve);
  json doc = io::to_json(report);
  doc["source"] = in.curve;
  doc["n_samples"] = curve.size();
  doc["holder_exponent"] = curve.holder_exponent();
  Emitter(config).emit(doc, row_csv({{"c_gamma", report.c_gamma},
                                     {"chord_arc_b", report.chord_arc_b},
                                     {"area", report.area},
                                     {"length", report.length}}));
}

void analyze_boundary_cmd(const RunConfig& config, const Inputs& in) {
  require(in.boundary, "--boundary");
  const io::LoadedBoundary loaded = io::load_boundary(in.boundary, optional_curve(in), config);
  const NormsConvergence conv = norms_convergence(loaded.map, loaded.curve);
  json doc = io::to_json(conv.fine, config.dump_grids);
  doc["source"] = loaded.name;
  doc["mode_cap"] = loaded.map.mode_cap();
  doc["derivative_tail"] = loaded.map.derivative_tail();
  doc["hilbert_method_gap"] = hilbert_method_gap(conv.fine.f_prime, 1.0);
  doc["coarse"] = {{"n_samples", loaded.map.size() / 2},
                   {"sup_f_prime", conv.coarse_sup_f_prime},
                   {"sup_hilbert", conv.coarse_sup_hilbert},
                   {"l_f", conv.coarse_l_f}};
  doc["normalization"] = io::to_json(check_normalized(loaded.map, loaded.curve));
  Emitter(config).emit(doc, io::boundary_csv(conv.fine));
}

void extend_cmd(const RunConfig& config, const Inputs& in) {
  require(in.boundary, "--boundary");
  const io::LoadedBoundary loaded = io::load_boundary(in.boundary, optional_curve(in), config);
  const HarmonicMap harmonic = extend(loaded.map);
  const RadialGrid grid = io::make_grid(config);
  const std::vector<GridSample> samples = evaluate_grid(harmonic, grid);
  json doc = {{"source", loaded.name},
              {"g_coeffs", coefficients_json(harmonic.g_coeffs())},
              {"h_coeffs", coefficients_json(harmonic.h_coeffs())},
              {"w0", json::array({harmonic.g_coeffs()[0].real(), harmonic.g_coeffs()[0].imag()})},
              {"grid", grid_summary(grid, grid_sup_K(harmonic, grid))}};
  if (config.dump_grids) doc["samples"] = io::grid_json(samples);
  Emitter(config).emit(doc, io::grid_csv(samples));
}

json qc_document(const io::LoadedBoundary& loaded, const RunConfig& config, QcReport& report) {
  const BoundaryDerivatives d = norms(loaded.map);
  report = kk_bound(d, config.tolerance);
  const RadialGrid grid = io::make_grid(config);
  const GridSupK sup = grid_sup_K(extend(loaded.map), grid);
  report.measured_sup_k = sup.sup_k;
  report.bound_holds = sup.sup_k <= report.kk_bound * (1.0 + 1e-3);
  json doc = io::to_json(report);
  doc["source"] = loaded.name;
  doc["sup_f_prime"] = d.sup_f_prime;
  doc["sup_hilbert"] = d.sup_hilbert;
  doc["l_f"] = d.l_f;
  doc["grid"] = grid_summary(grid, sup);
  return doc;
}

void qc_report_cmd(const RunConfig& config, const Inputs& in) {
  require(in.boundary, "--boundary");
  const io::LoadedBoundary loaded = io::load_boundary(in.boundary, optional_curve(in), config);
  QcReport report;
  const json doc = qc_document(loaded, config, report);
  Emitter(config).emit(doc, row_csv({{"s", report.s_value},
                                     {"mu2", report.mu2},
                                     {"kk_bound", report.kk_bound},
                                     {"measured_sup_k", report.measured_sup_k},
                                     {"bound_holds", report.bound_holds ? 1.0 : 0.0}}));
}

json bounds_document(const io::LoadedBoundary& loaded, const RunConfig& config, const Inputs& in,
                     BoundsReport& bounds) {
  json doc;
  double K = 0.0;
  if (in.K) {
    K = *in.K;
  } else {
    QcReport report;
    doc = qc_document(loaded, config, report);
    K = report.kk_bound;
  }
  bounds = bounds_report(loaded.curve, loaded.map, K,
                         {in.pairs, config.seed, in.jacobian_samples});
  doc.update(io::to_json(bounds));
  doc["source"] = loaded.name;
  doc["config"] = config_json(config);
  return doc;
}

std::string jacobian_csv(const BoundsReport& bounds) {
  std::string out = "phi,rhs,measured,extrapolated,holds\n";
  for (const JacobianCheck& c : bounds.jacobian_checks) {
    out += io::format_double(c.phi) + ',' + io::format_double(c.rhs) + ',' +
           io::format_double(c.measured) + ',' + io::format_double(c.extrapolated) + ',' +
           (c.holds ? "1" : "0") + '\n';
  }
  return out;
}

void bounds_report_cmd(const RunConfig& config, const Inputs& in) {
  require(in.boundary, "--boundary");
  const io::LoadedBoundary loaded = io::load_boundary(in.boundary, optional_curve(in), config);
  BoundsReport bounds;
  const json doc = bounds_document(loaded, config, in, bounds);
  Emitter(config).emit(doc, jacobian_csv(bounds));
}

/// Runs `f`, recording a numeric failure in the document instead of exiting.
template <typename F>
json attempt(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (!is_numeric_failure(e.code())) throw;
    return io::error_json(e);
  }
}

void paper1_cmd(const RunConfig& config, const Inputs& in) {
  const examples::BoundaryFixture fx = examples::example1_boundary({in.b, config.n_samples});
  const io::LoadedBoundary loaded{"example1", fx.curve, fx.map};
  const RadialGrid grid = io::make_grid(config);
  const std::vector<examples::QuotientRow> rows = examples::example1_nondiff_evidence(in.b);
  json evidence = json::array();
  for (const auto& row : rows) evidence.push_back({{"h", row.h}, {"quotient", row.quotient}});
  json doc = {{"b", in.b},
              {"derivative_tail", fx.map.derivative_tail()},
              {"grid", grid_summary(grid, grid_sup_K(extend(fx.map), grid))},
              {"normalization", io::to_json(check_normalized(fx.map, fx.curve))},
              {"nondiff_evidence", std::move(evidence)},
              {"oscillation", examples::oscillation(rows)}};
  doc["qc_report"] = attempt([&] {
    QcReport report;
    return qc_document(loaded, config, report);
  });
  Emitter(config).emit(doc, io::quotient_csv(rows));
}

void paper1_trend_cmd(const RunConfig& config, const Inputs& in) {
  const RadialGrid grid = io::make_grid(config);
  const std::vector<examples::TrendRow> rows = examples::example1_K_trend(in.bs, config.n_samples, grid);
  json table = json::array();
  for (const auto& row : rows) table.push_back({{"b", row.b}, {"measured_sup_k", row.measured_sup_k}});
  json doc = {{"grid", {{"radii", grid.radii.size()}, {"r_max", grid.radii.back()}, {"angles", grid.angles}}},
              {"rows", std::move(table)}};
  Emitter(config).emit(doc, io::trend_csv(rows));
}

void paper2_cmd(const RunConfig& config, const Inputs&) {
  const examples::Example2 ex = examples::example2_map(config.n_samples);
  const examples::BoundaryFixture fx = examples::example2_boundary(config.n_samples);
  const io::LoadedBoundary loaded{"example2", fx.curve, fx.map};
  const BoundaryDerivatives d = norms(fx.map);
  const WirtingerModuli at_one = boundary_wirtinger(d.f_prime[0], d.hilbert_f_prime[0]);
  const PointDerivatives limit = wirtinger(ex.harmonic, 1.0);

  const RadialGrid grid = io::make_grid(config);
  std::string csv = "r,K_point\n";
  json axis = json::array();
  for (double r : grid.radii) {
    const double k = wirtinger(ex.harmonic, r).k_point;
    axis.push_back({{"r", r}, {"K_point", k}});
    csv += io::format_double(r) + ',' + io::format_double(k) + '\n';
  }
  json doc = {{"boundary_wirtinger_phi0", {{"wz_mod", at_one.wz}, {"wzbar_mod", at_one.wzbar}}},
              {"wirtinger_at_1", {{"wz", json::array({limit.wz.real(), limit.wz.imag()})},
                                  {"wzbar", json::array({limit.wzbar.real(), limit.wzbar.imag()})}}},
              {"l_f", d.l_f},
              {"area", enclosed_area(ex.curve)},
              {"real_axis", std::move(axis)}};
  doc["qc_report"] = attempt([&] {
    QcReport report;
    return qc_document(loaded, config, report);
  });
  Emitter(config).emit(doc, csv);
}

void stretch_cmd(const RunConfig& config, const Inputs& in) {
  const examples::AffineStretch st = examples::affine_stretch(in.k, config.n_samples);
  const io::LoadedBoundary loaded{"stretch", st.fixture.curve, st.fixture.map};
  BoundsReport bounds;
  json doc = bounds_document(loaded, config, in, bounds);
  doc["k"] = in.k;
  doc["exact_K"] = (1.0 + in.k) / (1.0 - in.k);
  Emitter(config).emit(doc, io::boundary_csv(norms(st.fixture.map)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic extensions of circle homeomorphisms and their q.c. constants", "qcharm"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  Inputs in;
  std::string output = "json";
  std::optional<double> holder_exponent;

  app.add_option("--n-samples", config.n_samples, "Samples per curve and boundary map");
  app.add_option("--fourier-modes", config.fourier_modes, "Mode cap (default n/2 - 1)");
  app.add_option("--grid-r-max", config.grid_r_max, "Outermost grid radius");
  app.add_option("--grid-radii", config.grid_radii, "Number of grid radii");
  app.add_option("--radii", in.radii, "Radius count or comma list of radii");
  app.add_option("--grid-angles,--angles", config.grid_angles, "Number of grid angles");
  app.add_option("--tolerance", config.tolerance, "Degeneracy threshold for l(f)");
  app.add_option("--seed", config.seed, "Seed for random pair sweeps");
  app.add_flag("--dump-grids", config.dump_grids, "Embed per-sample arrays in JSON output");
  app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", config.out_path, "Write the document to PATH");
  app.add_option("--holder-exponent", holder_exponent, "Override the curve Hölder exponent");
  app.add_option("--curve", in.curve, "Curve name or JSON file");
  app.add_option("--boundary", in.boundary, "Boundary generator or JSON file");

  auto* analyze_curve = app.add_subcommand("analyze-curve", "Geometry constants of a curve");
  auto* analyze_boundary = app.add_subcommand("analyze-boundary", "Boundary norms and normalization");
  auto* extend_sub = app.add_subcommand("extend", "Harmonic extension and grid distortion");
  auto* qc = app.add_subcommand("qc-report", "Distortion bound from boundary data");
  auto* bounds = app.add_subcommand("bounds-report", "Hölder, Lipschitz and Jacobian bounds");
  bounds->add_option("--K", in.K, "Distortion constant (default: the boundary bound)");
  bounds->add_option("--pairs", in.pairs, "Pairs per random sweep");
  bounds->add_option("--jacobian-samples", in.jacobian_samples, "Angles for the Jacobian check");

  auto* example = app.add_subcommand("example", "Worked examples");
  example->require_subcommand(1);
  example->fallthrough();
  auto* paper1 = example->add_subcommand("paper-1", "Non-differentiable boundary map");
  paper1->add_option("--b", in.b, "Oscillation parameter, 0 < b < sqrt(2)/2");
  auto* paper1_trend = example->add_subcommand("paper-1-trend", "sup K across b");
  paper1_trend->add_option("--bs", in.bs, "Comma list of b values")->delimiter(',');
  auto* paper2 = example->add_subcommand("paper-2", "Degenerate boundary differential");
  auto* stretch = example->add_subcommand("stretch", "Affine stretch z + k conj(z)");
  stretch->add_option("--k", in.k, "Stretch, 0 <= k < 1");
  stretch->add_option("--K", in.K, "Distortion constant (default: the boundary bound)");
  stretch->add_option("--pairs", in.pairs, "Pairs per random sweep");
  stretch->add_option("--jacobian-samples", in.jacobian_samples, "Angles for the Jacobian check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    config.output = output == "csv" ? OutputFormat::csv : OutputFormat::json;
    config.holder_exponent = holder_exponent;
    apply_radii(in.radii, config);
    config.validate();

    if (analyze_curve->parsed()) analyze_curve_cmd(config, in);
    else if (analyze_boundary->parsed()) analyze_boundary_cmd(config, in);
    else if (extend_sub->parsed()) extend_cmd(config, in);
    else if (qc->parsed()) qc_report_cmd(config, in);
    else if (bounds->parsed()) bounds_report_cmd(config, in);
    else if (paper1->parsed()) paper1_cmd(config, in);
    else if (paper1_trend->parsed()) paper1_trend_cmd(config, in);
    else if (paper2->parsed()) paper2_cmd(config, in);
    else if (stretch->parsed()) stretch_cmd(config, in);
  } catch (const Error& e) {
    std::cerr << io::error_json(e).dump() << '\n';
    return is_numeric_failure(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
