#include "cslbound/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cslbound/config.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/rates.hpp"
#include "cslbound/report.hpp"

namespace cslbound {

namespace {

struct CommonOptions {
  std::string config_path;
  std::string format = "text";
  std::string output_path;
  std::string model;
  std::optional<double> n_sigma;
};

struct SpectrumOptions {
  int points = 200;
  std::string method = "analytic";
  bool keep_going = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool model_flags) {
  cmd->add_option("--config", o.config_path, "JSON configuration document");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  cmd->add_option("--output", o.output_path, "Write output to PATH instead of standard output");
  if (model_flags) {
    cmd->add_option("--model", o.model, "Override the deuteron model")
        ->check(CLI::IsMember({"zero-range", "hulthen"}));
    cmd->add_option("--nsigma", o.n_sigma, "Override the number of sigmas for the upper limit")
        ->check(CLI::NonNegativeNumber);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load(const CommonOptions& o) {
  RunConfig cfg = o.config_path.empty() ? parse_config("{}") : parse_config(read_file(o.config_path));
  if (!o.model.empty()) cfg.model.kind = parse_model_kind(o.model);
  if (o.n_sigma) cfg.n_sigma = *o.n_sigma;
  return cfg;
}

void emit(const CommonOptions& o, const std::string& text, std::ostream& out) {
  if (o.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + o.output_path + "'");
  file << text;
}

std::string analyze(const CommonOptions& o, bool predict) {
  const RunConfig cfg = load(o);
  if (predict && !cfg.collapse.g_n) {
    throw ConfigError("--predict requires collapse.g_n in the configuration");
  }
  const BoundStateModel model = cfg.model.build();
  AnalysisReport report = run_full_analysis(cfg.analysis_inputs(), model);
  if (!predict) report.prediction.reset();
  return render_analysis(report, parse_output_format(o.format));
}

std::string scan(const CommonOptions& o) {
  const RunConfig cfg = load(o);
  const BoundStateModel model = cfg.model.build();
  ScanInputs in;
  in.experiment = cfg.experiment;
  in.sphere = cfg.sphere;
  in.scan = cfg.scan;
  in.a_cm = cfg.collapse.a_cm;
  in.n_sigma = cfg.n_sigma;
  const OutputFormat format = parse_output_format(o.format);
  return render_curve(scan_exclusion(in, model), format);
}

std::string spectrum(const CommonOptions& o, const SpectrumOptions& s, std::ostream& err) {
  const RunConfig cfg = load(o);
  const BoundStateModel model = cfg.model.build();
  CollapseParams p = cfg.collapse;
  if (!p.g_n) p.g_n = 0.0;

  const PhysicalConstants pc = PhysicalConstants::standard();
  const std::vector<double> ks = default_k_grid(model, s.points);
  const double prefactor = deuteron_spectrum_prefactor(p, pc);

  SpectrumTable table{model.kind(), model.kappa_per_fm(), *p.g_n,
                      deuteron_rate(p, model, pc).per_sec, 0.0, {}};
  table.rows.reserve(ks.size());
  if (s.method == "analytic") {
    for (const auto& d : spectrum_grid(model, ks)) {
      table.rows.push_back({d.k_per_fm, d.density_fm3, prefactor * d.density_fm3, true});
    }
  } else {
    for (double k : ks) {
      try {
        const double density = spectrum_density(model, k).density_fm3;
        table.rows.push_back({k, density, prefactor * density, true});
      } catch (const QuadratureError& e) {
        if (!s.keep_going) throw;
        err << "warning: spectrum row k=" << format_number(k) << " failed: " << e.what() << "\n";
        table.rows.push_back({k, std::nan(""), std::nan(""), false});
      }
    }
  }

  std::vector<double> x;
  std::vector<double> y;
  for (const auto& r : table.rows) {
    if (!r.ok) continue;
    x.push_back(r.k_per_fm);
    y.push_back(r.rate_density);
  }
  table.trapezoid_rate_per_sec = simd::active_kernels().trapezoid(x, y);
  return render_spectrum(table, parse_output_format(o.format));
}

void fail_line(std::ostream& err, std::string_view code, std::string_view message) {
  std::string flat(message);
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  err << "error: " << code << ": " << flat << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collapse-model (CSL) excitation rates and coupling bounds from deuteron dissociation",
               "cslbound"};
  app.require_subcommand(1);

  CommonOptions analyze_opts;
  bool predict = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the full counting and bound analysis");
  add_common(analyze_cmd, analyze_opts, true);
  analyze_cmd->add_flag("--predict", predict, "Also report the expected CSL count for collapse.g_n");

  CommonOptions scan_opts;
  scan_opts.format = "csv";
  auto* scan_cmd = app.add_subcommand("scan", "Exclusion curve over lambda/a^2");
  add_common(scan_cmd, scan_opts, true);

  CommonOptions spectrum_opts;
  spectrum_opts.format = "csv";
  SpectrumOptions spec_opts;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dissociation rate density over k");
  add_common(spectrum_cmd, spectrum_opts, true);
  spectrum_cmd->add_option("--points", spec_opts.points, "Number of k-grid points")
      ->check(CLI::Range(2, 1000000));
  spectrum_cmd->add_option("--method", spec_opts.method, "Evaluate rows in closed form or by quadrature")
      ->check(CLI::IsMember({"analytic", "quadrature"}));
  spectrum_cmd->add_flag("--keep-going", spec_opts.keep_going,
                         "Report failed quadrature rows as nan instead of aborting");

  CommonOptions constants_opts;
  auto* constants_cmd = app.add_subcommand("constants", "Print physical constants and GRW defaults");
  constants_cmd->add_option("--format", constants_opts.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  constants_cmd->add_option("--output", constants_opts.output_path, "Write output to PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fail_line(err, "E_USAGE", e.what());
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) {
      emit(analyze_opts, analyze(analyze_opts, predict), out);
    } else if (*scan_cmd) {
      emit(scan_opts, scan(scan_opts), out);
    } else if (*spectrum_cmd) {
      emit(spectrum_opts, spectrum(spectrum_opts, spec_opts, err), out);
    } else if (*constants_cmd) {
      emit(constants_opts,
           render_constants(PhysicalConstants::standard(), parse_output_format(constants_opts.format)),
           out);
    }
  } catch (const ConfigError& e) {
    fail_line(err, "E_CONFIG", e.what());
    return kExitUsage;
  } catch (const QuadratureError& e) {
    fail_line(err, "E_QUADRATURE", e.what());
    return kExitNumeric;
  } catch (const DomainError& e) {
    fail_line(err, "E_NUMERIC", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    fail_line(err, "E_INTERNAL", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace cslbound
