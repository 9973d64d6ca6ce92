#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cslbound/constants.hpp"
#include "cslbound/deuteron.hpp"
#include "cslbound/limits.hpp"

namespace cslbound {

enum class OutputFormat { Text, Csv, Structured };

OutputFormat parse_output_format(std::string_view name);

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_number(double x);

std::string render_analysis(const AnalysisReport& r, OutputFormat format);

std::string render_curve(const ExclusionCurve& curve, OutputFormat format);

struct SpectrumRow {
  double k_per_fm;
  double density_fm3;
  double rate_density;  // s^-1 per fm^-1
  bool ok = true;       // false when the quadrature for this row failed
};

struct SpectrumTable {
  ModelKind kind;
  double kappa_per_fm;
  double g_n;
  double deuteron_rate_per_sec;
  double trapezoid_rate_per_sec;
  std::vector<SpectrumRow> rows;
};

std::string render_spectrum(const SpectrumTable& table, OutputFormat format);

std::string render_constants(const PhysicalConstants& pc, OutputFormat format);

}  // namespace cslbound
