#pragma once

#include <string>
#include <string_view>

#include "cslbound/constants.hpp"
#include "cslbound/deuteron.hpp"
#include "cslbound/limits.hpp"

namespace cslbound {

struct ModelConfig {
  ModelKind kind = ModelKind::ZeroRange;
  double binding_energy_mev = kDeuteronBindingEnergyMev;
  double beta_over_kappa = kDefaultHulthenBetaOverKappa;

  BoundStateModel build(const PhysicalConstants& pc = PhysicalConstants::standard()) const;

  bool operator==(const ModelConfig&) const = default;
};

/// Everything a run needs. Absent sections fall back to the GRW collapse
/// parameters and the SNO neutral-current scenario.
struct RunConfig {
  CollapseParams collapse = grw_defaults();
  ExperimentConfig experiment{};
  SphereVisibilityConfig sphere{};
  ScanConfig scan{};
  ModelConfig model{};
  double n_sigma = 1.0;

  AnalysisInputs analysis_inputs() const;

  bool operator==(const RunConfig&) const = default;
};

ModelKind parse_model_kind(std::string_view name);

/// Parses and validates a JSON configuration document. Unknown keys, wrong
/// types, and invariant violations throw ConfigError naming the key path;
/// syntax errors carry line and column.
RunConfig parse_config(std::string_view document);

/// JSON document that parse_config maps back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

}  // namespace cslbound
