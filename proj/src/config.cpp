#include "cslbound/config.hpp"

#include <cmath>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) fail(join(path, key), "unknown key");
  }
}

double read_number(const json& obj, const std::string& path, const char* key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail(join(path, key), "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) fail(join(path, key), "must be finite");
  return v;
}

double read_positive(const json& obj, const std::string& path, const char* key, double fallback) {
  const double v = read_number(obj, path, key, fallback);
  if (!(v > 0.0)) fail(join(path, key), std::string(key) + " must be > 0, got " + std::to_string(v));
  return v;
}

double read_non_negative(const json& obj, const std::string& path, const char* key,
                         double fallback) {
  const double v = read_number(obj, path, key, fallback);
  if (!(v >= 0.0)) fail(join(path, key), std::string(key) + " must be >= 0, got " + std::to_string(v));
  return v;
}

const json* section(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) return nullptr;
  if (!it->is_object()) fail(join(path, key), "expected an object");
  return &*it;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view doc, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < doc.size(); ++i) {
    if (doc[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void parse_collapse(const json& j, CollapseParams& c) {
  const std::string p = "collapse";
  reject_unknown(j, p, {"lambda_per_sec", "a_cm", "g_n", "g_e"});
  c.lambda_per_sec = read_positive(j, p, "lambda_per_sec", c.lambda_per_sec);
  c.a_cm = read_positive(j, p, "a_cm", c.a_cm);
  if (j.contains("g_n")) c.g_n = read_non_negative(j, p, "g_n", 0.0);
  if (j.contains("g_e")) c.g_e = read_non_negative(j, p, "g_e", 0.0);
}

ErrorPair read_pair(const json& j, const std::string& p, const char* up, const char* down,
                    ErrorPair fallback) {
  return {read_non_negative(j, p, up, fallback.up), read_non_negative(j, p, down, fallback.down)};
}

void parse_experiment(const json& j, ExperimentConfig& e) {
  const std::string p = "experiment";
  reject_unknown(j, p,
                 {"live_time_days", "fiducial_radius_m", "deuteron_density_per_cc", "efficiency",
                  "observed", "ssm_rate_per_day"});
  e.live_time_days = read_positive(j, p, "live_time_days", e.live_time_days);
  e.fiducial_radius_m = read_positive(j, p, "fiducial_radius_m", e.fiducial_radius_m);
  e.deuteron_density_per_cc =
      read_positive(j, p, "deuteron_density_per_cc", e.deuteron_density_per_cc);
  e.efficiency = read_number(j, p, "efficiency", e.efficiency);
  if (!(e.efficiency > 0.0 && e.efficiency <= 1.0)) {
    fail(join(p, "efficiency"),
         "efficiency must be in (0,1], got " + std::to_string(e.efficiency));
  }
  if (const json* obs = section(j, p, "observed")) {
    const std::string op = join(p, "observed");
    reject_unknown(*obs, op, {"value", "stat_up", "stat_down", "syst_up", "syst_down"});
    e.observed.value = read_number(*obs, op, "value", e.observed.value);
    e.observed.stat = read_pair(*obs, op, "stat_up", "stat_down", e.observed.stat);
    e.observed.syst = read_pair(*obs, op, "syst_up", "syst_down", e.observed.syst);
  }
  if (const json* ssm = section(j, p, "ssm_rate_per_day")) {
    const std::string sp = join(p, "ssm_rate_per_day");
    reject_unknown(*ssm, sp, {"value", "up", "down"});
    const double value = read_number(*ssm, sp, "value", e.ssm_rate_per_day.central());
    const ErrorPair errs = read_pair(*ssm, sp, "up", "down", e.ssm_rate_per_day.errors());
    e.ssm_rate_per_day = AsymmetricValue(value, errs);
  }
}

void parse_sphere(const json& j, SphereVisibilityConfig& s) {
  const std::string p = "sphere";
  reject_unknown(j, p, {"diameter_cm", "nucleon_count", "perception_time_s", "margin"});
  s.diameter_cm = read_positive(j, p, "diameter_cm", s.diameter_cm);
  s.nucleon_count = read_positive(j, p, "nucleon_count", s.nucleon_count);
  s.perception_time_s = read_positive(j, p, "perception_time_s", s.perception_time_s);
  s.collapse_margin = read_positive(j, p, "margin", s.collapse_margin);
}

void parse_scan(const json& j, ScanConfig& s) {
  const std::string p = "scan";
  reject_unknown(j, p, {"min", "max", "points", "log_spacing"});
  s.min = read_positive(j, p, "min", s.min);
  s.max = read_positive(j, p, "max", s.max);
  if (const auto it = j.find("points"); it != j.end()) {
    if (!it->is_number_integer()) fail(join(p, "points"), "expected an integer");
    s.points = it->get<int>();
  }
  if (const auto it = j.find("log_spacing"); it != j.end()) {
    if (!it->is_boolean()) fail(join(p, "log_spacing"), "expected true or false");
    s.log_spacing = it->get<bool>();
  }
  if (!(s.min < s.max)) fail(p, "scan range requires min < max");
  if (s.points < 2) fail(join(p, "points"), "points must be >= 2");
}

void parse_model(const json& j, ModelConfig& m) {
  const std::string p = "model";
  reject_unknown(j, p, {"kind", "binding_energy_mev", "beta_over_kappa"});
  if (const auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) fail(join(p, "kind"), "expected a string");
    try {
      m.kind = parse_model_kind(it->get<std::string>());
    } catch (const ConfigError& e) {
      fail(join(p, "kind"), e.what());
    }
  }
  m.binding_energy_mev = read_positive(j, p, "binding_energy_mev", m.binding_energy_mev);
  m.beta_over_kappa = read_number(j, p, "beta_over_kappa", m.beta_over_kappa);
  if (!(m.beta_over_kappa > 1.0)) fail(join(p, "beta_over_kappa"), "beta_over_kappa must be > 1");
}

}  // namespace

BoundStateModel ModelConfig::build(const PhysicalConstants& pc) const {
  return kind == ModelKind::ZeroRange ? BoundStateModel::zero_range(binding_energy_mev, pc)
                                      : BoundStateModel::hulthen(binding_energy_mev,
                                                                 beta_over_kappa, pc);
}

AnalysisInputs RunConfig::analysis_inputs() const {
  AnalysisInputs in;
  in.collapse = collapse;
  in.experiment = experiment;
  in.sphere = sphere;
  in.scan = scan;
  in.n_sigma = n_sigma;
  return in;
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "zero-range") return ModelKind::ZeroRange;
  if (name == "hulthen") return ModelKind::Hulthen;
  throw ConfigError("unknown model kind '" + std::string(name) +
                    "' (expected zero-range or hulthen)");
}

RunConfig parse_config(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(document, e.byte);
    throw ConfigError("syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + e.what());
  }

  RunConfig cfg;
  reject_unknown(root, "", {"collapse", "experiment", "sphere", "scan", "model", "n_sigma"});
  if (const json* s = section(root, "", "collapse")) parse_collapse(*s, cfg.collapse);
  if (const json* s = section(root, "", "experiment")) parse_experiment(*s, cfg.experiment);
  if (const json* s = section(root, "", "sphere")) parse_sphere(*s, cfg.sphere);
  if (const json* s = section(root, "", "scan")) parse_scan(*s, cfg.scan);
  if (const json* s = section(root, "", "model")) parse_model(*s, cfg.model);
  cfg.n_sigma = read_non_negative(root, "", "n_sigma", cfg.n_sigma);

  try {
    cfg.collapse.validate();
    cfg.experiment.validate();
    cfg.sphere.validate();
    cfg.scan.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  json collapse = {{"lambda_per_sec", c.collapse.lambda_per_sec}, {"a_cm", c.collapse.a_cm}};
  if (c.collapse.g_n) collapse["g_n"] = *c.collapse.g_n;
  if (c.collapse.g_e) collapse["g_e"] = *c.collapse.g_e;

  const auto& e = c.experiment;
  json root = {
      {"collapse", collapse},
      {"experiment",
       {{"live_time_days", e.live_time_days},
        {"fiducial_radius_m", e.fiducial_radius_m},
        {"deuteron_density_per_cc", e.deuteron_density_per_cc},
        {"efficiency", e.efficiency},
        {"observed",
         {{"value", e.observed.value},
          {"stat_up", e.observed.stat.up},
          {"stat_down", e.observed.stat.down},
          {"syst_up", e.observed.syst.up},
          {"syst_down", e.observed.syst.down}}},
        {"ssm_rate_per_day",
         {{"value", e.ssm_rate_per_day.central()},
          {"up", e.ssm_rate_per_day.err_up()},
          {"down", e.ssm_rate_per_day.err_down()}}}}},
      {"sphere",
       {{"diameter_cm", c.sphere.diameter_cm},
        {"nucleon_count", c.sphere.nucleon_count},
        {"perception_time_s", c.sphere.perception_time_s},
        {"margin", c.sphere.collapse_margin}}},
      {"scan",
       {{"min", c.scan.min},
        {"max", c.scan.max},
        {"points", c.scan.points},
        {"log_spacing", c.scan.log_spacing}}},
      {"model",
       {{"kind", std::string(model_kind_name(c.model.kind))},
        {"binding_energy_mev", c.model.binding_energy_mev},
        {"beta_over_kappa", c.model.beta_over_kappa}}},
      {"n_sigma", c.n_sigma}};
  return root.dump(2);
}

}  // namespace cslbound
