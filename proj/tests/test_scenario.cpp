#include <doctest.h>

#include <json.hpp>

#include "lgfloer/errors.hpp"
#include "lgfloer/runner.hpp"
#include "lgfloer/scenario.hpp"

using namespace lgf;

namespace {

std::string validation_message(const std::string& text) {
  try {
    (void)Scenario::parse(text, "t.json");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    return e.what();
  }
  return "";
}

const char* kSmall = R"({
  "schema_version": 1,
  "name": "small",
  "model": "conic",
  "seed": 4,
  "curves": {"ramp": {"type": "segment", "from": 1, "to": 4},
             "ray_line": {"type": "line", "point": 1, "direction": 1, "t_min": -0.5, "t_max": 0.5},
             "up_line": {"type": "line", "point": 1, "direction": [0, 1], "t_min": -0.5, "t_max": 0.5}},
  "lagrangians": {
    "ray": {"curve": "ray_line", "fiber": {"kind": "ray"}, "grading": {"fiber_anchor": 0, "base_anchor": 0, "anchor": [0, 1]}},
    "circle": {"curve": "up_line", "fiber": {"kind": "circle", "radius": 1.3}, "grading": {"fiber_anchor": 0.5, "base_anchor": "auto"}}
  },
  "experiments": [
    {"type": "transport", "curve": "ramp", "start": [1, 1], "from": 0, "to": 1, "expected": [2, 2]},
    {"type": "degree", "pair": ["ray", "circle"], "expected": [{"total": 2, "fiber": 1, "base": 1}], "random_variants": 5},
    {"type": "grade", "lagrangian": "circle", "random_points": 10}
  ]
})";

}  // namespace

TEST_CASE("parse a valid scenario") {
  const Scenario s = Scenario::parse(kSmall, "small.json");
  CHECK(s.name() == "small");
  CHECK(s.model_id() == "conic");
  CHECK(s.seed() == 4u);
  CHECK(s.experiment_names() == std::vector<std::string>{"transport", "degree", "grade"});
}

TEST_CASE("diagnostics are anchored to line and column") {
  std::string t = kSmall;
  t.replace(t.find("\"ramp\", \"start\""), 6, "\"nope\"");
  const std::string msg = validation_message(t);
  CHECK(msg.find("t.json:14:") != std::string::npos);
  CHECK(msg.find("unknown curve 'nope'") != std::string::npos);

  CHECK(validation_message("{\"schema_version\": 1,\n \"name\": ").find("t.json:2:") != std::string::npos);
  CHECK(validation_message(R"({"schema_version": 2, "name": "x", "model": "conic", "experiments": []})").find("schema_version") !=
        std::string::npos);
  CHECK(validation_message(R"({"schema_version": 1, "name": "x", "model": "quartic", "experiments": []})") != "");
  CHECK(validation_message(R"({"schema_version": 1, "name": "x", "model": "conic", "colour": 1, "experiments": []})")
            .find("colour") != std::string::npos);
  CHECK(validation_message(R"({"schema_version": 1, "name": "x", "model": "conic",
    "experiments": [{"type": "grade", "name": "a", "lagrangian": "q"}]})") != "");
  CHECK(validation_message(R"({"schema_version": 1, "name": "x", "model": "trivial_line",
    "experiments": [{"type": "disc_area", "name": "a", "patch": {"factory": "round_disc", "R": 1}},
                    {"type": "disc_area", "name": "a", "patch": {"factory": "round_disc", "R": 2}}]})")
            .find("duplicate") != std::string::npos);
  CHECK(validation_message(R"({"schema_version": 1, "name": "x", "model": "trivial_line",
    "experiments": [{"type": "disc_area", "patch": {"factory": "round_disc", "R": 1}, "tolerance": 5}]})") != "");
}

TEST_CASE("report contents and determinism") {
  const Scenario s = Scenario::parse(kSmall, "small.json");
  const Report a = run_scenario(s), b = run_scenario(s);
  CHECK(a.ok());
  CHECK(a.csv() == b.csv());
  CHECK(a.json() == b.json());
  CHECK(a.csv().rfind("experiment,name,value,residual,tolerance,status\n", 0) == 0);
  const auto j = nlohmann::json::parse(a.json());
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["experiments"].size() == 3);
  CHECK(j["experiments"][0]["inputs"]["curve"] == "ramp");
  for (const auto& e : j["experiments"]) {
    for (const auto& q : e["quantities"]) {
      CHECK(q.contains("tolerance"));
      CHECK(q.contains("pass"));
      CHECK(q.contains("invariant"));
    }
  }
  const Report c = run_scenario(s, 99);
  CHECK(c.seed == 99u);
  CHECK(c.ok());
}

TEST_CASE("numerical failures become records carrying the invariant") {
  const Scenario s = Scenario::parse(R"({
    "schema_version": 1, "name": "bad", "model": "conic",
    "curves": {"into_zero": {"type": "segment", "from": 1, "to": 0},
               "ramp": {"type": "segment", "from": 1, "to": 4}},
    "experiments": [
      {"type": "transport", "name": "hits", "curve": "into_zero", "start": [1, 1], "from": 0, "to": 1},
      {"type": "transport", "name": "wrong", "curve": "ramp", "start": [1, 1], "from": 0, "to": 1, "expected": [2, 2.1]}
    ]})");
  const Report r = run_scenario(s);
  CHECK_FALSE(r.ok());
  REQUIRE(r.records.size() == 2);
  CHECK_FALSE(r.records[0].pass());
  CHECK(r.records[0].violated().at(0).rfind("error.", 0) == 0);
  CHECK(r.records[1].violated() == std::vector<std::string>{"fibration.transport"});
  CHECK(r.csv().find("hits,error:") != std::string::npos);
}

TEST_CASE("sketch") {
  const Scenario s = Scenario::parse(kSmall, "small.json");
  const std::string svg = base_svg(s, run_scenario(s));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("critical value") != std::string::npos);
}

TEST_CASE("bundled scenarios validate") {
  for (const char* f : {"trivial_degree", "conic_transport", "conic_monodromy", "conic_exactness", "conic_area_identity",
                        "conic_area_difference", "conic_triangle_split", "conic_phase_split", "lefschetz_phase_split",
                        "conic_degree", "conic_bigon", "trivial_bigon", "trivial_disc_area", "conic_fiber_annulus"}) {
    CAPTURE(f);
    CHECK_NOTHROW((void)Scenario::load(std::string(LGFLOER_SCENARIO_DIR) + "/" + f + ".json"));
  }
}
