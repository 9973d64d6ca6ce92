#include "cslbound/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// 1e-05 -> 1e-5, 2.5e+00 -> 2.5e0
std::string compact_exponent(std::string s) {
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  std::string sign;
  if (!exponent.empty() && (exponent[0] == '-' || exponent[0] == '+')) {
    if (exponent[0] == '-') sign = "-";
    exponent.erase(0, 1);
  }
  while (exponent.size() > 1 && exponent[0] == '0') exponent.erase(0, 1);
  return mantissa + "e" + sign + exponent;
}

ordered_json triple(const AsymmetricValue& v) {
  return {{"central", v.central()}, {"err_up", v.err_up()}, {"err_down", v.err_down()}};
}

ordered_json curve_json(const ExclusionCurve& c) {
  ordered_json points = ordered_json::array();
  for (const auto& p : c.points) {
    points.push_back(
        {{"lambda_over_a2", p.lambda_over_a2}, {"gn_bound", p.gn_bound}, {"ge_bound", p.ge_bound}});
  }
  return {{"theoretical_floor", c.theoretical_floor},
          {"experimental_ceiling", c.experimental_ceiling},
          {"points", points}};
}

std::string csv_triple_row(std::string_view name, const AsymmetricValue& v) {
  return std::string(name) + "," + format_number(v.central()) + "," + format_number(v.err_up()) +
         "," + format_number(v.err_down()) + "\n";
}

std::string csv_scalar_row(std::string_view name, double x) {
  return std::string(name) + "," + format_number(x) + ",0,0\n";
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "structured" || name == "json") return OutputFormat::Structured;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string render_analysis(const AnalysisReport& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::Structured: {
      ordered_json j;
      j["n_expt"] = triple(r.n_expt);
      j["n_ssm"] = triple(r.n_ssm);
      j["n_csl"] = triple(r.n_csl);
      j["n_sigma"] = r.n_sigma;
      j["n_limit"] = r.n_limit;
      j["live_time_yr"] = r.live_time_yr;
      j["volume_1e3_m3"] = r.volume_1e3_m3;
      j["count_coefficient"] = r.count_coefficient;
      j["gn_bound_at_grw"] = r.gn_bound_at_grw;
      j["paper_rounded_bound"] = r.paper_rounded_bound;
      j["lambda_over_a2"] = r.lambda_over_a2;
      j["gn_bound_at_config"] = r.gn_bound_at_config;
      j["ge_bound_at_grw"] = r.ge_bound_at_grw;
      j["ge_ceiling_at_grw"] = r.ge_ceiling_at_grw;
      j["strength_ratio"] = r.strength_ratio;
      j["floor_large_a"] = r.floor_large_a;
      j["floor_small_a"] = r.floor_small_a;
      j["regime"] = std::string(regime_name(r.regime));
      j["model"] = {{"kind", std::string(model_kind_name(r.model_kind))},
                    {"kappa_per_fm", r.model_kappa_per_fm},
                    {"r2_cm2", r.model_r2_cm2}};
      if (r.prediction) {
        j["prediction"] = {{"expected_neutrons", r.prediction->expected_neutrons},
                           {"coefficient", r.prediction->coefficient}};
      }
      j["curve"] = curve_json(r.curve);
      j["warnings"] = r.warnings;
      return j.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out = "quantity,central,err_up,err_down\n";
      out += csv_triple_row("n_expt", r.n_expt);
      out += csv_triple_row("n_ssm", r.n_ssm);
      out += csv_triple_row("n_csl", r.n_csl);
      out += csv_scalar_row("n_limit", r.n_limit);
      out += csv_scalar_row("count_coefficient", r.count_coefficient);
      out += csv_scalar_row("gn_bound_at_grw", r.gn_bound_at_grw);
      out += csv_scalar_row("paper_rounded_bound", r.paper_rounded_bound);
      out += csv_scalar_row("gn_bound_at_config", r.gn_bound_at_config);
      out += csv_scalar_row("ge_bound_at_grw", r.ge_bound_at_grw);
      out += csv_scalar_row("strength_ratio", r.strength_ratio);
      out += csv_scalar_row("floor_large_a", r.floor_large_a);
      out += csv_scalar_row("floor_small_a", r.floor_small_a);
      out += csv_scalar_row("model_r2_cm2", r.model_r2_cm2);
      if (r.prediction) out += csv_scalar_row("predicted_neutrons", r.prediction->expected_neutrons);
      for (const auto& w : r.warnings) out += "# warning: " + w + "\n";
      return out;
    }
    case OutputFormat::Text:
      break;
  }

  std::ostringstream os;
  os << "CSL deuteron-dissociation analysis\n";
  os << "==================================\n\n";
  os << "Headline: g_n = M_n/M_p +/- " << sig(r.paper_rounded_bound, 1)
     << "   (unrounded |g_n - M_n/M_p| < " << sig(r.gn_bound_at_grw, 4)
     << " at lambda/a^2 = 1e-6 s^-1 cm^-2)\n\n";

  os << "Counts (errors combined in quadrature)\n";
  os << "  N_expt = " << format_asymmetric(r.n_expt, 1) << "   ~ "
     << format_asymmetric(r.n_expt, 0) << "\n";
  os << "  N_SSM  = " << format_asymmetric(r.n_ssm, 1) << "   ~ " << format_asymmetric(r.n_ssm, 0)
     << "\n";
  os << "  N_CSL  = " << format_asymmetric(r.n_csl, 1) << "   ~ " << format_asymmetric(r.n_csl, 0)
     << "\n";
  os << "  N_CSL upper limit (" << sig(r.n_sigma, 3) << " sigma, upward error only) = "
     << fixed(r.n_limit, 1) << "   ~ " << fixed(r.n_limit, 0) << "\n\n";

  os << "Exposure and model\n";
  os << "  live time        = " << sig(r.live_time_yr, 6) << " yr\n";
  os << "  fiducial volume  = " << sig(r.volume_1e3_m3, 6) << " x 10^3 m^3\n";
  os << "  model            = " << model_kind_name(r.model_kind)
     << ", kappa = " << sig(r.model_kappa_per_fm, 6) << " fm^-1\n";
  os << "  <r^2>            = " << sig(r.model_r2_cm2, 6) << " cm^2\n";
  os << "  count coefficient= " << sig(r.count_coefficient, 6)
     << " per (g_n - M_n/M_p)^2 yr 10^3 m^3 at GRW\n\n";

  os << "Coupling bounds\n";
  os << "  |g_n - M_n/M_p| < " << sig(r.gn_bound_at_grw, 6) << " at GRW (rounded up: "
     << sig(r.paper_rounded_bound, 1) << ")\n";
  os << "  |g_n - M_n/M_p| < " << sig(r.gn_bound_at_config, 6) << " at lambda/a^2 = "
     << sig(r.lambda_over_a2, 6) << "\n";
  os << "  |g_e - M_e/M_p| < " << sig(r.ge_bound_at_grw, 6) << " at GRW; g_e < "
     << sig(r.ge_ceiling_at_grw, 6) << "\n";
  os << "  neutron bound is " << sig(r.strength_ratio, 4)
     << " times stronger than the electron bound (fractional)\n\n";

  os << "Allowed lambda/a^2 window\n";
  os << "  visibility floor (a >> d/2) = " << sig(r.floor_large_a, 4) << " s^-1 cm^-2\n";
  os << "  visibility floor (a << d/2) = " << sig(r.floor_small_a, 4) << " s^-1 cm^-2\n";
  os << "  regime at configured a      = " << regime_name(r.regime) << "\n";
  os << "  floor = " << sig(r.curve.theoretical_floor, 4)
     << ", ceiling = " << sig(r.curve.experimental_ceiling, 4) << " s^-1 cm^-2\n";

  if (r.prediction) {
    os << "\nPrediction for configured g_n\n";
    os << "  expected CSL neutrons = " << sig(r.prediction->expected_neutrons, 6) << "\n";
  }

  if (!r.warnings.empty()) {
    os << "\nWarnings\n";
    for (const auto& w : r.warnings) os << "  - " << w << "\n";
  }
  return os.str();
}

std::string render_curve(const ExclusionCurve& curve, OutputFormat format) {
  if (format == OutputFormat::Structured) return curve_json(curve).dump(2) + "\n";
  std::string out;
  if (format == OutputFormat::Csv) {
    out += "# theoretical_floor=" + format_number(curve.theoretical_floor) + "\n";
    out += "# experimental_ceiling=" + format_number(curve.experimental_ceiling) + "\n";
    out += "lambda_over_a2,gn_bound,ge_bound\n";
    for (const auto& p : curve.points) {
      out += format_number(p.lambda_over_a2) + "," + format_number(p.gn_bound) + "," +
             format_number(p.ge_bound) + "\n";
    }
    return out;
  }
  char buf[128];
  out += "theoretical floor   = " + sig(curve.theoretical_floor, 4) + " s^-1 cm^-2\n";
  out += "experimental ceiling = " + sig(curve.experimental_ceiling, 4) + " s^-1 cm^-2\n\n";
  std::snprintf(buf, sizeof buf, "%14s  %14s  %14s\n", "lambda/a^2", "|g_n-Mn/Mp|", "|g_e-Me/Mp|");
  out += buf;
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%14.4e  %14.4e  %14.4e\n", p.lambda_over_a2, p.gn_bound,
                  p.ge_bound);
    out += buf;
  }
  return out;
}

std::string render_spectrum(const SpectrumTable& t, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json row = {{"k_per_fm", r.k_per_fm}};
      if (r.ok) {
        row["density_fm3"] = r.density_fm3;
        row["rate_density"] = r.rate_density;
      } else {
        row["density_fm3"] = nullptr;
        row["rate_density"] = nullptr;
      }
      rows.push_back(row);
    }
    ordered_json j = {{"model", std::string(model_kind_name(t.kind))},
                      {"kappa_per_fm", t.kappa_per_fm},
                      {"g_n", t.g_n},
                      {"deuteron_rate_per_sec", t.deuteron_rate_per_sec},
                      {"trapezoid_rate_per_sec", t.trapezoid_rate_per_sec},
                      {"rows", rows}};
    return j.dump(2) + "\n";
  }
  std::string out;
  if (format == OutputFormat::Csv) {
    out += "# model=" + std::string(model_kind_name(t.kind)) +
           " kappa_per_fm=" + format_number(t.kappa_per_fm) + " g_n=" + format_number(t.g_n) + "\n";
    out += "# deuteron_rate_per_sec=" + format_number(t.deuteron_rate_per_sec) + "\n";
    out += "# trapezoid_rate_per_sec=" + format_number(t.trapezoid_rate_per_sec) + "\n";
    out += "k_per_fm,density_fm3,rate_density\n";
    for (const auto& r : t.rows) {
      out += format_number(r.k_per_fm) + "," + (r.ok ? format_number(r.density_fm3) : "nan") +
             "," + (r.ok ? format_number(r.rate_density) : "nan") + "\n";
    }
    return out;
  }
  char buf[128];
  out += "model " + std::string(model_kind_name(t.kind)) + ", kappa = " + sig(t.kappa_per_fm, 6) +
         " fm^-1, g_n = " + sig(t.g_n, 8) + "\n";
  out += "total rate " + sig(t.deuteron_rate_per_sec, 6) + " s^-1, grid sum " +
         sig(t.trapezoid_rate_per_sec, 6) + " s^-1\n\n";
  std::snprintf(buf, sizeof buf, "%14s  %14s  %14s\n", "k [fm^-1]", "density [fm^3]",
                "rate [s^-1 fm]");
  out += buf;
  for (const auto& r : t.rows) {
    if (r.ok) {
      std::snprintf(buf, sizeof buf, "%14.6e  %14.6e  %14.6e\n", r.k_per_fm, r.density_fm3,
                    r.rate_density);
    } else {
      std::snprintf(buf, sizeof buf, "%14.6e  %14s  %14s\n", r.k_per_fm, "failed", "failed");
    }
    out += buf;
  }
  return out;
}

std::string render_constants(const PhysicalConstants& pc, OutputFormat format) {
  const CollapseParams grw = grw_defaults();
  struct Entry {
    const char* name;
    double value;
    const char* unit;
  };
  const Entry entries[] = {
      {"m_e_over_m_p", pc.m_e_over_m_p, "1"},
      {"m_n_over_m_p", pc.m_n_over_m_p, "1"},
      {"hbar_c", pc.hbar_c_mev_fm, "MeV fm"},
      {"reduced_mass_np", pc.reduced_mass_np_mev, "MeV/c^2"},
      {"seconds_per_day", pc.seconds_per_day, "s"},
      {"seconds_per_year", pc.seconds_per_year, "s"},
      {"grw_lambda", grw.lambda_per_sec, "s^-1"},
      {"grw_a", grw.a_cm, "cm"},
      {"grw_lambda_over_a2", grw_lambda_over_a2().value(), "s^-1 cm^-2"},
  };

  if (format == OutputFormat::Structured) {
    ordered_json j;
    for (const auto& e : entries) j[e.name] = {{"value", e.value}, {"unit", e.unit}};
    return j.dump(2) + "\n";
  }
  std::string out;
  if (format == OutputFormat::Csv) {
    out = "name,value,unit\n";
    for (const auto& e : entries) {
      out += std::string(e.name) + "," + format_number(e.value) + "," + e.unit + "\n";
    }
    return out;
  }
  char buf[160];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%-20s %-18s %s\n", e.name,
                  compact_exponent(format_number(e.value)).c_str(), e.unit);
    out += buf;
  }
  return out;
}

}  // namespace cslbound
