#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cslbound/cli.hpp"
#include "cslbound/report.hpp"

using namespace cslbound;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cslbound");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

void check_single_error_line(const Run& r, const std::string& code) {
  CHECK(r.err.find("error: " + code + ":") == 0);
  CHECK(r.err.find('\n') == r.err.size() - 1);
}

}  // namespace

TEST_CASE("analyze text report") {
  const auto r = run({"analyze"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.008") != std::string::npos);
  CHECK(r.out.find("N_expt") != std::string::npos);
  CHECK(r.out.find("N_SSM") != std::string::npos);
  CHECK(r.out.find("56 +608/-725") != std::string::npos);
  CHECK(r.out.find("<r^2>") != std::string::npos);
  CHECK(r.out.find("Warnings") != std::string::npos);
}

TEST_CASE("analyze structured report") {
  const auto r = run({"analyze", "--format", "structured"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::round(j["n_limit"].get<double>()) == 664.0);
  CHECK(j["paper_rounded_bound"].get<double>() == 0.008);
  CHECK(j["n_csl"]["central"].get<double>() == doctest::Approx(55.9));
  CHECK(j["curve"]["experimental_ceiling"].get<double>() == 2.5);
  CHECK_FALSE(j.contains("prediction"));
}

TEST_CASE("analyze csv report has a constant column count") {
  const auto r = run({"analyze", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() > 5);
  for (const auto& row : rows) CHECK(row.size() == 4);
  CHECK(rows[0][0] == "quantity");
}

TEST_CASE("analyze csv carries warnings as comment lines") {
  const auto r = run({"analyze", "--format", "csv", "--model", "hulthen"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# warning: hulthen model <r^2>") != std::string::npos);
}

TEST_CASE("analyze --predict") {
  const auto cfg = temp_file("cslbound_predict.json", R"({"collapse":{"g_n":1.01137842}})");
  const auto r = run({"analyze", "--config", cfg.string(), "--predict", "--format", "structured"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  // (g_n - M_n/M_p) = 0.01 at the SNO exposure: 1.1872839585e7 * 1e-4.
  CHECK(j["prediction"]["expected_neutrons"].get<double>() ==
        doctest::Approx(1187.2839585).epsilon(1e-7));

  const auto missing = run({"analyze", "--predict"});
  CHECK(missing.code == kExitUsage);
  check_single_error_line(missing, "E_CONFIG");
}

TEST_CASE("model and nsigma overrides") {
  const auto hu = run({"analyze", "--model", "hulthen"});
  REQUIRE(hu.code == 0);
  CHECK(hu.out.find("deviates from the reference") != std::string::npos);

  const auto zero = run({"analyze", "--nsigma", "0", "--format", "structured"});
  REQUIRE(zero.code == 0);
  CHECK(nlohmann::json::parse(zero.out)["n_limit"].get<double>() == doctest::Approx(55.9));
}

TEST_CASE("scan csv") {
  const auto r = run({"scan"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# experimental_ceiling=2.5\n") != std::string::npos);
  CHECK(r.out.find("# theoretical_floor=") != std::string::npos);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 122);
  CHECK(rows[0] == std::vector<std::string>{"lambda_over_a2", "gn_bound", "ge_bound"});
  double previous = INFINITY;
  double nearest_distance = INFINITY;
  double nearest_bound = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 3);
    const double ld = std::stod(rows[i][0]);
    const double gn = std::stod(rows[i][1]);
    CHECK(gn < previous);
    previous = gn;
    const double distance = std::abs(std::log(ld / 1e-6));
    if (distance < nearest_distance) {
      nearest_distance = distance;
      nearest_bound = gn;
    }
  }
  CHECK(nearest_bound >= 0.0073);
  CHECK(nearest_bound <= 0.0077);
}

TEST_CASE("scan rejects an invalid range") {
  const auto cfg = temp_file("cslbound_badscan.json", R"({"scan":{"min":1,"max":0.5}})");
  const auto r = run({"scan", "--config", cfg.string()});
  CHECK(r.code == kExitUsage);
  check_single_error_line(r, "E_CONFIG");
}

TEST_CASE("spectrum csv") {
  const auto cfg = temp_file("cslbound_gn0.json", R"({"collapse":{"g_n":0}})");
  const auto r = run({"spectrum", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == std::vector<std::string>{"k_per_fm", "density_fm3", "rate_density"});
  std::vector<double> k;
  std::vector<double> rate;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 3);
    k.push_back(std::stod(rows[i][0]));
    rate.push_back(std::stod(rows[i][2]));
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < k.size(); ++i) sum += 0.5 * (k[i] - k[i - 1]) * (rate[i] + rate[i - 1]);
  // Total rate for g_n = 0 at GRW with the default model.
  const double total = 0.5e-6 * std::pow(1.00137842 / 2.00137842, 2) * 9.32112460381904892e-26;
  CHECK(std::abs(sum / total - 1.0) < 0.01);
  CHECK(std::abs(sum / 1.13e-32 - 1.0) < 0.05);
  CHECK(rate.front() < 1e-6 * *std::max_element(rate.begin(), rate.end()));
}

TEST_CASE("spectrum at mass-proportional coupling is identically zero") {
  const auto cfg = temp_file("cslbound_gnmp.json", R"({"collapse":{"g_n":1.00137842}})");
  for (const char* method : {"analytic", "quadrature"}) {
    const auto r = run({"spectrum", "--config", cfg.string(), "--method", method, "--points", "20"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) == 0.0);
  }
}

TEST_CASE("spectrum quadrature and analytic routes agree") {
  const auto a = csv_rows(run({"spectrum", "--points", "15"}).out);
  const auto q = csv_rows(run({"spectrum", "--points", "15", "--method", "quadrature"}).out);
  REQUIRE(a.size() == q.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(std::stod(a[i][1]) == doctest::Approx(std::stod(q[i][1])).epsilon(1e-7));
  }
}

TEST_CASE("constants") {
  const auto a = run({"constants"});
  const auto b = run({"constants"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("1e-16") != std::string::npos);
  CHECK(a.out.find("1e-5") != std::string::npos);
  CHECK(a.out.find("1.00137842") != std::string::npos);
  const auto j = nlohmann::json::parse(run({"constants", "--format", "structured"}).out);
  CHECK(j["m_n_over_m_p"]["value"].get<double>() == 1.00137842);
}

TEST_CASE("--output writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "cslbound_scan_out.csv";
  std::filesystem::remove(path);
  const auto r = run({"scan", "--output", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("lambda_over_a2,gn_bound,ge_bound") != std::string::npos);
}

TEST_CASE("error paths exit nonzero with one greppable line") {
  const auto none = run({});
  CHECK(none.code == kExitUsage);
  check_single_error_line(none, "E_USAGE");

  const auto bad_flag = run({"analyze", "--format", "xml"});
  CHECK(bad_flag.code == kExitUsage);
  check_single_error_line(bad_flag, "E_USAGE");

  const auto missing = run({"analyze", "--config", "/nonexistent/cslbound.json"});
  CHECK(missing.code == kExitUsage);
  check_single_error_line(missing, "E_CONFIG");

  const auto bad = temp_file("cslbound_bad.json", R"({"experiment":{"efficiency":0}})");
  const auto invalid = run({"analyze", "--config", bad.string()});
  CHECK(invalid.code == kExitUsage);
  check_single_error_line(invalid, "E_CONFIG");
  CHECK(invalid.err.find("efficiency must be in (0,1]") != std::string::npos);

  const auto syntax = temp_file("cslbound_syntax.json", "{\"n_sigma\": }");
  const auto s = run({"analyze", "--config", syntax.string()});
  CHECK(s.code == kExitUsage);
  check_single_error_line(s, "E_CONFIG");
  CHECK(s.err.find("line 1") != std::string::npos);

  // A count limit below zero cannot be inverted into a coupling bound.
  const auto negative = temp_file("cslbound_neg.json",
                                  R"({"experiment":{"observed":{"value":0,"stat_up":0,"stat_down":0,
                                      "syst_up":0,"syst_down":0}}})");
  const auto n = run({"analyze", "--config", negative.string()});
  CHECK(n.code == kExitNumeric);
  check_single_error_line(n, "E_NUMERIC");
}

TEST_CASE("number formatting is locale independent and round-trips") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(2.5) == "2.5");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK(format_number(NAN) == "nan");
}
