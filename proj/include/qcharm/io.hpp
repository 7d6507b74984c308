#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcharm/examples.hpp"
#include "qcharm/qc_bounds.hpp"

namespace qcharm::io {

enum class OutputFormat { json, csv };

struct RunConfig {
  Index n_samples = 4096;
  Index fourier_modes = -1;  ///< -1: n_samples/2 - 1
  double grid_r_max = 0.999;
  Index grid_radii = 64;
  std::vector<double> radii_list;  ///< explicit radii override the count
  Index grid_angles = 512;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  bool dump_grids = false;
  OutputFormat output = OutputFormat::json;
  std::string out_path;
  std::optional<double> holder_exponent;

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;
  Index mode_cap() const { return fourier_modes < 0 ? n_samples / 2 - 1 : fourier_modes; }
};

RadialGrid make_grid(const RunConfig& config);

/// Curve from a name ("circle", "ellipse:a,b", "example2") or a JSON file
/// {"samples": [[x,y],...], "holder_exponent": m, "interior_point": [x,y]}.
JordanCurve load_curve(const std::string& source, const RunConfig& config);
JordanCurve parse_curve(const nlohmann::json& doc, const RunConfig& config);

struct LoadedBoundary {
  std::string name;
  JordanCurve curve;
  BoundaryMap map;
};

/// Boundary map from a generator ("identity", "stretch:k", "example1:b",
/// "example2") or a JSON file {"boundary_values": [[re,im],...]}; files need
/// an explicit curve source.
LoadedBoundary load_boundary(const std::string& source, const std::optional<std::string>& curve,
                             const RunConfig& config);
ComplexVector parse_boundary_values(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);

/// Shortest round-trip representation is used by the JSON writer; CSV cells
/// use 17 significant digits.
std::string format_double(double value);

nlohmann::json to_json(const CurveGeometryReport& report);
nlohmann::json to_json(const BoundaryDerivatives& d, bool include_samples);
nlohmann::json to_json(const QcReport& report);
nlohmann::json to_json(const JacobianCheck& check);
nlohmann::json to_json(const PairCheck& check);
nlohmann::json to_json(const BoundsReport& report);
nlohmann::json to_json(const NormalizationCheck& check);
nlohmann::json grid_json(const std::vector<GridSample>& samples);

/// phi, fp_re, fp_im, hfp_re, hfp_im, wz_mod, wzbar_mod
std::string boundary_csv(const BoundaryDerivatives& d);
/// r, phi, w_re, w_im, J, mu_abs, K_point
std::string grid_csv(const std::vector<GridSample>& samples);
/// b, measured_sup_k
std::string trend_csv(const std::vector<examples::TrendRow>& rows);
/// h, quotient
std::string quotient_csv(const std::vector<examples::QuotientRow>& rows);

nlohmann::json error_json(const Error& error);

}  // namespace qcharm::io
