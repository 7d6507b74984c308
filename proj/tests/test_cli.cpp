#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef QCHARM_CLI
#error "QCHARM_CLI must name the command-line binary"
#endif

using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = dir / "qcharm_cli_out.txt";
  const auto err = dir / "qcharm_cli_err.txt";
  const std::string cmd = std::string(QCHARM_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("qc-report on the identity") {
  const Run r = run("qc-report --boundary identity");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["kk_bound"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(doc["measured_sup_k"].get<double>() - 1.0) < 1e-6);
  CHECK(doc["bound_holds"] == true);
  for (const char* key : {"s", "mu2", "kk_bound", "measured_sup_k", "bound_holds"}) CHECK(doc.contains(key));
}

TEST_CASE("qc-report on Example 2 reports the degenerate lower bound") {
  const Run r = run("qc-report --boundary example2");
  CHECK(r.exit_code == 2);
  const json err = json::parse(r.err);
  CHECK(err["error"] == "DegenerateLowerBound");
  CHECK(r.out.empty());
}

TEST_CASE("spectral tail is a numeric failure") {
  const Run r = run("qc-report --boundary example1:0.3");
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.err)["error"] == "SpectralTail");
}

TEST_CASE("malformed JSON input is a validation error") {
  const std::string path = write_temp("qcharm_cli_bad.json", "{\"samples\": [[1, 0], [0, 1]");
  const Run r = run("analyze-curve --curve " + path);
  CHECK(r.exit_code == 1);
  const json err = json::parse(r.err);
  CHECK(err["error"] == "ParseError");
  CHECK(err["message"].get<std::string>().find("parse error") != std::string::npos);
}

TEST_CASE("validation failures exit with 1") {
  CHECK(run("qc-report --boundary identity --n-samples 1000").exit_code == 1);
  CHECK(run("qc-report --boundary example1:0.8").exit_code == 1);
  CHECK(run("qc-report").exit_code == 1);
  CHECK(run("no-such-command").exit_code == 1);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("analyze-curve on the circle") {
  const Run r = run("analyze-curve --curve circle --n-samples 2048");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["chord_arc_b"].get<double>() - 1.5707963267948966) < 1e-3);
  CHECK(std::abs(doc["c_gamma"].get<double>() - 0.5) < 1e-3);
  CHECK(std::abs(doc["area"].get<double>() - 3.141592653589793) < 1e-6);
}

TEST_CASE("analyze-boundary with and without per-sample arrays") {
  const Run plain = run("analyze-boundary --boundary stretch:0.5 --n-samples 256");
  REQUIRE(plain.exit_code == 0);
  const json a = json::parse(plain.out);
  CHECK_FALSE(a.contains("samples"));
  CHECK(std::abs(a["l_f"].get<double>() - 0.5) < 1e-9);

  const Run dumped = run("analyze-boundary --boundary stretch:0.5 --n-samples 256 --dump-grids");
  const json b = json::parse(dumped.out);
  REQUIRE(b["samples"].size() == 256);
  for (const char* key : {"phi", "fp_re", "fp_im", "hfp_re", "hfp_im", "wz_mod", "wzbar_mod"}) {
    CHECK(b["samples"][0].contains(key));
  }
  const Run csv = run("analyze-boundary --boundary stretch:0.5 --n-samples 256 --output csv");
  CHECK(csv.out.substr(0, csv.out.find('\n')) == "phi,fp_re,fp_im,hfp_re,hfp_im,wz_mod,wzbar_mod");
}

TEST_CASE("extend grid dump") {
  const Run r = run("extend --boundary identity --n-samples 256 --radii 0.1,0.5 --angles 8 --output csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "r,phi,w_re,w_im,J,mu_abs,K_point");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 16);
}

TEST_CASE("bounds-report is bit-identical across invocations and honours --out") {
  const std::string args = "bounds-report --boundary identity --n-samples 1024 --pairs 500 --jacobian-samples 8";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  for (const char* key : {"s", "mu2", "kk_bound", "measured_sup_k", "bound_holds", "alpha", "holder_c",
                          "lipschitz_l_log10", "jacobian_checks"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["jacobian_checks"].size() == 8);
  CHECK(doc["interior_lipschitz_check"]["seed"] == 0);

  const auto out = std::filesystem::temp_directory_path() / "qcharm_cli_report.json";
  const Run c = run(args + " --out " + out.string());
  CHECK(c.exit_code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(out) == a.out);

  const Run seeded = run(args + " --seed 7");
  CHECK(json::parse(seeded.out)["interior_lipschitz_check"]["seed"] == 7);
}

TEST_CASE("example subcommands") {
  const Run p1 = run("example paper-1 --b 0.3 --output csv");
  REQUIRE(p1.exit_code == 0);
  CHECK(p1.out.substr(0, p1.out.find('\n')) == "h,quotient");

  const Run trend = run("example paper-1-trend --bs 0.5,0.1 --n-samples 1024 --output csv");
  REQUIRE(trend.exit_code == 0);
  CHECK(trend.out.substr(0, trend.out.find('\n')) == "b,measured_sup_k");

  const Run p2 = run("example paper-2");
  REQUIRE(p2.exit_code == 0);
  const json doc = json::parse(p2.out);
  CHECK(doc["qc_report"]["error"] == "DegenerateLowerBound");
  CHECK(std::abs(doc["boundary_wirtinger_phi0"]["wz_mod"].get<double>() - 1.0) < 1e-9);

  const Run st = run("example stretch --k 0.3333 --n-samples 1024 --pairs 200 --jacobian-samples 4");
  REQUIRE(st.exit_code == 0);
  const json s = json::parse(st.out);
  CHECK(s["measured_sup_k"].get<double>() <= s["kk_bound"].get<double>());
}
