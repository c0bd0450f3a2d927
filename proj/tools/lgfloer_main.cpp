// lgfloer: run scenario files, list the model catalogue.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lgfloer/errors.hpp"
#include "lgfloer/models.hpp"
#include "lgfloer/runner.hpp"
#include "lgfloer/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kNumerical = 2;

int list_models() {
  for (const auto& id : lgf::model_ids()) std::cout << lgf::describe_model(lgf::make_model(id)) << '\n';
  return kOk;
}

int validate(const std::string& file) {
  const auto sc = lgf::Scenario::load(file);
  std::cout << file << ": ok (" << sc.model_id() << ", " << sc.experiment_names().size() << " experiments)\n";
  return kOk;
}

int run(const std::string& file, const std::string& out, std::optional<std::uint64_t> seed) {
  const auto sc = lgf::Scenario::load(file);
  const auto report = lgf::run_scenario(sc, seed);
  lgf::write_outputs(sc, report, out);
  for (const auto& r : report.records) {
    std::cout << (r.pass() ? "pass  " : "FAIL  ") << r.name;
    if (!r.error.empty()) std::cout << "  [" << r.error << "]";
    for (const auto& v : r.violated()) std::cout << "  " << v;
    std::cout << '\n';
  }
  std::cout << "wrote " << out << "/report.json\n";
  return report.ok() ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on symplectic Landau-Ginzburg models"};
  app.require_subcommand(1);

  std::string file, out = "out";
  std::optional<std::uint64_t> seed;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write report.json, summary.csv, base.svg");
  run_cmd->add_option("scenario", file, "Scenario file")->required();
  run_cmd->add_option("--out", out, "Output directory")->capture_default_str();
  run_cmd->add_option("--seed", seed, "Override the scenario seed");

  auto* list_cmd = app.add_subcommand("list-models", "Print the model catalogue");

  std::string vfile;
  auto* val_cmd = app.add_subcommand("validate", "Parse and validate a scenario");
  val_cmd->add_option("scenario", vfile, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*list_cmd) return list_models();
    if (*val_cmd) return validate(vfile);
    return run(file, out, seed);
  } catch (const lgf::Error& e) {
    std::cerr << "lgfloer: " << e.what() << '\n';
    return e.kind() == lgf::ErrorKind::Validation ? kInvalid : kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "lgfloer: " << e.what() << '\n';
    return kNumerical;
  }
}
