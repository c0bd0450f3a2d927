#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgfloer/grading.hpp"

namespace lgf::detail {

using json = nlohmann::json;

struct LagrangianDecl {
  std::string name;
  std::string curve;
  FiberedLagrangian lagrangian;
  std::optional<GradedLagrangian> graded;
  int line = 0;
};

struct IsotopyDecl {
  std::string name;
  std::string lagrangian;
  LagrangianIsotopy isotopy;
  int line = 0;
};

struct ExperimentDecl {
  std::string type;
  std::string name;
  json params;
  int line = 0;
};

struct ScenarioData {
  std::string source;
  std::string name;
  std::string model_id;
  std::uint64_t seed = 0;
  Model model;
  std::map<std::string, BasePath> curves;
  std::vector<std::string> curve_order;
  std::map<std::string, LagrangianDecl> lagrangians;
  std::vector<std::string> lagrangian_order;
  std::map<std::string, IsotopyDecl> isotopies;
  std::vector<ExperimentDecl> experiments;
  bool svg = true;
};

/// Reads "re" or [re, im].
cplx to_cplx(const json& j);

}  // namespace lgf::detail
