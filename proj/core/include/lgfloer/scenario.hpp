#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace lgf {

namespace detail {
struct ScenarioData;
}

inline constexpr int kScenarioSchemaVersion = 1;

/// A parsed and validated scenario file. Parse and validation problems throw
/// validation_error with a "source:line:col: message" diagnostic.
class Scenario {
 public:
  static Scenario load(const std::filesystem::path& file);
  static Scenario parse(const std::string& text, const std::string& source = "<scenario>");

  [[nodiscard]] const std::string& source() const;
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] const std::string& model_id() const;
  [[nodiscard]] std::uint64_t seed() const;
  [[nodiscard]] std::vector<std::string> experiment_names() const;

  [[nodiscard]] const detail::ScenarioData& data() const { return *d_; }

 private:
  std::shared_ptr<const detail::ScenarioData> d_;
};

/// Experiment types understood by the runner.
std::vector<std::string> experiment_types();

}  // namespace lgf
