#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lgfloer/scenario.hpp"
#include "lgfloer/types.hpp"

namespace lgf {

inline constexpr const char* kReportSchema = "lgfloer.report/1";

/// One checked number. pass = residual <= tolerance; invariant names the
/// property being checked (e.g. "degree.split").
struct Quantity {
  std::string name;
  double value = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string invariant;
};

struct ExperimentRecord {
  std::string type;
  std::string name;
  int line = 0;
  std::string inputs;   // experiment parameters as compact JSON
  std::string details;  // extra computed values as compact JSON
  std::vector<Quantity> quantities;
  std::string error_kind;  // empty unless the experiment threw
  std::string error;
  std::vector<cplx> base_points;  // marked in the sketch

  [[nodiscard]] bool pass() const;
  /// Invariants of failed quantities, or "error.<kind>" when the experiment threw.
  [[nodiscard]] std::vector<std::string> violated() const;
};

struct Report {
  std::string scenario;
  std::string source;
  std::string model;
  std::uint64_t seed = 0;
  std::vector<ExperimentRecord> records;

  [[nodiscard]] bool ok() const;
  [[nodiscard]] std::string json() const;
  /// experiment,name,value,residual,tolerance,status
  [[nodiscard]] std::string csv() const;
};

/// Runs every experiment (concurrently); numerical failures become records.
Report run_scenario(const Scenario& scenario, std::optional<std::uint64_t> seed = std::nullopt);

/// Base picture: declared curves, critical values, marked base points.
std::string base_svg(const Scenario& scenario, const Report& report);

/// Writes report.json, summary.csv and (unless disabled) base.svg into dir.
void write_outputs(const Scenario& scenario, const Report& report, const std::filesystem::path& dir);

}  // namespace lgf
