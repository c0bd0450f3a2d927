#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + LGFLOER_CLI + "\" " + args + " 2>&1";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) out += buf;
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const fs::path kTmp = LGFLOER_TEST_TMP;
std::string scenario(const char* name) { return std::string(LGFLOER_SCENARIO_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_CASE("list-models") {
  const Run a = cli("list-models"), b = cli("list-models");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("conic  dim=2  critv={0}\n") != std::string::npos);
  CHECK(a.out.find("trivial_line  dim=1  critv={}\n") != std::string::npos);
}

TEST_CASE("malformed scenario: exit 1, diagnostic, no report") {
  fs::create_directories(kTmp);
  const fs::path bad = kTmp / "bad.json";
  std::ofstream(bad) << "{\n  \"schema_version\": 1,\n  \"name\": \"bad\",\n  \"model\": \"conic\",\n  \"experiments\": [\n"
                        "    {\"type\": \"grade\", \"lagrangian\": \"missing\"}\n  ]\n}\n";
  const fs::path out = kTmp / "bad_out";
  fs::remove_all(out);
  const Run r = cli("run \"" + bad.string() + "\" --out \"" + out.string() + "\"");
  CHECK(r.code == 1);
  CHECK(r.out.find("bad.json:6:") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  CHECK(cli("validate \"" + bad.string() + "\"").code == 1);
  CHECK(cli("validate \"" + (kTmp / "absent.json").string() + "\"").code == 1);
  CHECK(cli("").code == 1);
}

TEST_CASE("run writes report, summary and sketch") {
  const fs::path out = kTmp / "trivial_degree";
  fs::remove_all(out);
  const Run r = cli("run \"" + scenario("trivial_degree") + "\" --out \"" + out.string() + "\"");
  CHECK(r.code == 0);
  const std::string csv = slurp(out / "summary.csv");
  CHECK(csv.rfind("experiment,name,value,residual,tolerance,status\n", 0) == 0);
  CHECK(csv.find("\ndegree,degree,1,") != std::string::npos);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "base.svg"));
  CHECK(cli("validate \"" + scenario("trivial_degree") + "\"").code == 0);
}

TEST_CASE("same scenario and seed give byte-identical output") {
  const fs::path a = kTmp / "det_a", b = kTmp / "det_b", c = kTmp / "det_c";
  const std::string sc = "\"" + scenario("conic_degree") + "\"";
  REQUIRE(cli("run " + sc + " --out \"" + a.string() + "\"").code == 0);
  REQUIRE(cli("run " + sc + " --out \"" + b.string() + "\"").code == 0);
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  REQUIRE(cli("run " + sc + " --seed 12345 --out \"" + c.string() + "\"").code == 0);
  CHECK(slurp(a / "report.json") != slurp(c / "report.json"));
}

TEST_CASE("numerical failure: exit 2 with a report") {
  const fs::path f = kTmp / "fails.json";
  std::ofstream(f) << R"({"schema_version": 1, "name": "fails", "model": "conic",
    "curves": {"ramp": {"type": "segment", "from": 1, "to": 4}},
    "experiments": [{"type": "transport", "curve": "ramp", "start": [1, 1], "from": 0, "to": 1, "expected": [3, 3]}]})";
  const fs::path out = kTmp / "fails_out";
  const Run r = cli("run \"" + f.string() + "\" --out \"" + out.string() + "\"");
  CHECK(r.code == 2);
  CHECK(slurp(out / "summary.csv").find(",fail\n") != std::string::npos);
}
