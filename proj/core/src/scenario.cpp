#include "lgfloer/scenario.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "lgfloer/errors.hpp"
#include "lgfloer/patch_factories.hpp"
#include "scenario_data.hpp"

namespace lgf {

namespace detail {

cplx to_cplx(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace detail

namespace {

using detail::json;

// Source positions of JSON pointers, found by a lenient second scan of the
// text (nlohmann does not keep them). Members are located at their key.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) : s_(text) {
    try {
      value("");
    } catch (...) {
      // positions found so far are still useful
    }
  }

  [[nodiscard]] std::pair<int, int> find(std::string ptr) const {
    for (;;) {
      if (auto it = pos_.find(ptr); it != pos_.end()) return it->second;
      if (ptr.empty()) return {1, 1};
      ptr.erase(ptr.rfind('/'));
    }
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  std::map<std::string, std::pair<int, int>> pos_;

  [[nodiscard]] char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void adv() {
    if (i_ >= s_.size()) throw std::out_of_range("eof");
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void ws() {
    while (i_ < s_.size() && (peek() == ' ' || peek() == '\n' || peek() == '\t' || peek() == '\r')) adv();
  }
  std::string str() {
    std::string out;
    adv();
    while (peek() != '"') {
      if (peek() == '\\') {
        adv();
        out += peek();
      } else {
        out += peek();
      }
      adv();
    }
    adv();
    return out;
  }
  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }
  void value(const std::string& ptr) {
    ws();
    pos_.emplace(ptr, std::pair{line_, col_});
    const char c = peek();
    if (c == '{') {
      adv();
      ws();
      if (peek() == '}') return adv();
      for (;;) {
        ws();
        const auto at = std::pair{line_, col_};
        const std::string key = str();
        const std::string child = ptr + "/" + escape(key);
        pos_.emplace(child, at);
        ws();
        adv();  // ':'
        value(child);
        ws();
        if (peek() == ',') {
          adv();
          continue;
        }
        adv();  // '}'
        return;
      }
    }
    if (c == '[') {
      adv();
      ws();
      if (peek() == ']') return adv();
      for (int k = 0;; ++k) {
        value(ptr + "/" + std::to_string(k));
        ws();
        if (peek() == ',') {
          adv();
          continue;
        }
        adv();  // ']'
        return;
      }
    }
    if (c == '"') {
      str();
      return;
    }
    while (i_ < s_.size() && peek() != ',' && peek() != '}' && peek() != ']' && peek() != ' ' && peek() != '\n' &&
           peek() != '\r' && peek() != '\t') {
      adv();
    }
  }
};

struct Validator {
  const std::string& source;
  LineIndex index;

  [[noreturn]] void bad(const std::string& ptr, const std::string& msg) const {
    const auto [line, col] = index.find(ptr);
    std::ostringstream os;
    os << source << ':' << line << ':' << col << ": " << msg;
    if (!ptr.empty()) os << " (at " << ptr << ')';
    fail(ErrorKind::Validation, os.str());
  }

  const json& need(const json& obj, const std::string& key, const std::string& ptr) const {
    if (!obj.is_object() || !obj.contains(key)) bad(ptr, "missing required field '" + key + "'");
    return obj.at(key);
  }

  void keys(const json& obj, const std::set<std::string>& allowed, const std::string& ptr) const {
    if (!obj.is_object()) bad(ptr, "expected an object");
    for (const auto& [k, v] : obj.items()) {
      (void)v;
      if (!allowed.count(k)) bad(ptr + "/" + k, "unknown field '" + k + "'");
    }
  }

  double number(const json& obj, const std::string& key, const std::string& ptr, std::optional<double> fallback,
                double lo = -1e300, double hi = 1e300) const {
    if (!obj.contains(key)) {
      if (!fallback) bad(ptr, "missing required field '" + key + "'");
      return *fallback;
    }
    const json& v = obj.at(key);
    const std::string p = ptr + "/" + key;
    if (!v.is_number()) bad(p, "'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi)) {
      std::ostringstream os;
      os << "'" << key << "' = " << x << " outside [" << lo << ", " << hi << "]";
      bad(p, os.str());
    }
    return x;
  }

  int integer(const json& obj, const std::string& key, const std::string& ptr, int fallback, int lo, int hi) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    const std::string p = ptr + "/" + key;
    if (!v.is_number_integer()) bad(p, "'" + key + "' must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) bad(p, "'" + key + "' outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
  }

  std::string string(const json& obj, const std::string& key, const std::string& ptr) const {
    const json& v = need(obj, key, ptr);
    if (!v.is_string()) bad(ptr + "/" + key, "'" + key + "' must be a string");
    return v.get<std::string>();
  }

  cplx complex(const json& v, const std::string& ptr) const {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      bad(ptr, "complex numbers are written as [re, im]");
    }
    return detail::to_cplx(v);
  }

  PointY point(const json& v, int dim, const std::string& ptr) const {
    if (!v.is_array() || static_cast<int>(v.size()) != dim) {
      bad(ptr, "point needs " + std::to_string(dim) + " complex coordinates");
    }
    if (dim == 1) return PointY(complex(v[0], ptr + "/0"));
    return PointY(complex(v[0], ptr + "/0"), complex(v[1], ptr + "/1"));
  }

  template <class Fn>
  auto guarded(const std::string& ptr, Fn&& fn) const {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Validation) throw;
      bad(ptr, e.what());
    } catch (const json::exception& e) {
      bad(ptr, e.what());
    }
  }
};

BasePath make_curve(const Validator& v, const json& c, const std::string& ptr) {
  const std::string type = v.string(c, "type", ptr);
  if (type == "segment") {
    v.keys(c, {"type", "from", "to"}, ptr);
    return BasePath::segment(v.complex(v.need(c, "from", ptr), ptr + "/from"),
                             v.complex(v.need(c, "to", ptr), ptr + "/to"));
  }
  if (type == "line") {
    v.keys(c, {"type", "point", "direction", "t_min", "t_max"}, ptr);
    return BasePath::line(v.complex(v.need(c, "point", ptr), ptr + "/point"),
                          v.complex(v.need(c, "direction", ptr), ptr + "/direction"), v.number(c, "t_min", ptr, {}),
                          v.number(c, "t_max", ptr, {}));
  }
  if (type == "arc" || type == "circle") {
    v.keys(c, {"type", "center", "radius", "a0", "a1", "t_min", "t_max"}, ptr);
    const cplx center = v.complex(v.need(c, "center", ptr), ptr + "/center");
    const double r = v.number(c, "radius", ptr, {}, 1e-9);
    const double a0 = v.number(c, "a0", ptr, 0.0);
    const double a1 = v.number(c, "a1", ptr, type == "circle" ? a0 + 2.0 * kPi : std::optional<double>{});
    return BasePath::arc(center, r, a0, a1, v.number(c, "t_min", ptr, 0.0), v.number(c, "t_max", ptr, 1.0));
  }
  if (type == "lens") {
    // Circular arc through center -/+ half_width with height h above (upper)
    // or below (lower) the chord; t = 0 at the right end, t = 1 at the left end.
    v.keys(c, {"type", "center", "half_width", "height", "side", "margin"}, ptr);
    const cplx center = v.complex(v.need(c, "center", ptr), ptr + "/center");
    const double r = v.number(c, "half_width", ptr, {}, 1e-9);
    const double h = v.number(c, "height", ptr, {}, 1e-9);
    const double m = v.number(c, "margin", ptr, 0.1, 0.0, 0.5);
    const std::string side = v.string(c, "side", ptr);
    const double R = std::hypot(r, h), a = std::atan2(h, r);
    if (side == "upper") return BasePath::arc(center - cplx{0.0, h}, R, a, kPi - a, -m, 1.0 + m);
    if (side == "lower") return BasePath::arc(center + cplx{0.0, h}, R, -a, -(kPi - a), -m, 1.0 + m);
    v.bad(ptr + "/side", "side must be 'upper' or 'lower'");
  }
  if (type == "ushape") {
    v.keys(c, {"type", "R", "a0", "a1", "T"}, ptr);
    return BasePath::ushape(v.number(c, "R", ptr, {}, 1e-9), v.number(c, "a0", ptr, {}), v.number(c, "a1", ptr, {}),
                            v.number(c, "T", ptr, {}, 1e-9));
  }
  if (type == "constant") {
    v.keys(c, {"type", "value"}, ptr);
    return BasePath::constant(v.complex(v.need(c, "value", ptr), ptr + "/value"));
  }
  v.bad(ptr + "/type", "unknown curve type '" + type + "'");
}

FiberLagrangianParam make_fiber(const Validator& v, const json& f, const std::string& ptr) {
  const std::string kind = v.string(f, "kind", ptr);
  if (kind == "circle") {
    v.keys(f, {"kind", "radius"}, ptr);
    return FiberLagrangianParam::circle(v.number(f, "radius", ptr, {}, 1e-9));
  }
  if (kind == "ray" || kind == "real_ray") {
    v.keys(f, {"kind", "theta", "s_min", "s_max"}, ptr);
    return FiberLagrangianParam::ray(v.number(f, "theta", ptr, 0.0), v.number(f, "s_min", ptr, 0.05, 1e-9),
                                     v.number(f, "s_max", ptr, 20.0, 1e-9));
  }
  if (kind == "spiral") {
    v.keys(f, {"kind", "k", "theta", "s_min", "s_max"}, ptr);
    return FiberLagrangianParam::spiral(v.number(f, "k", ptr, {}), v.number(f, "theta", ptr, 0.0),
                                        v.number(f, "s_min", ptr, -3.0), v.number(f, "s_max", ptr, 3.0));
  }
  if (kind == "point") {
    v.keys(f, {"kind"}, ptr);
    return FiberLagrangianParam::point();
  }
  v.bad(ptr + "/kind", "unknown fiber kind '" + kind + "'");
}

// Principal lift of a unit phase, or the value given in the file.
double anchor_value(const Validator& v, const json& g, const std::string& key, const std::string& ptr, cplx phase) {
  if (!g.contains(key) || (g.at(key).is_string() && g.at(key).get<std::string>() == "auto")) {
    return std::arg(phase) / (2.0 * kPi);
  }
  return v.number(g, key, ptr, {});
}

BaseHomotopy make_homotopy(const Validator& v, const detail::ScenarioData& d, const BasePath& gamma, const json& h,
                           const std::string& ptr) {
  const std::string type = v.string(h, "type", ptr);
  if (type == "identity") {
    v.keys(h, {"type"}, ptr);
    return BaseHomotopy::identity(gamma);
  }
  const double a = v.number(h, "a", ptr, {}), b = v.number(h, "b", ptr, {});
  const double w = v.number(h, "width", ptr, {}, 1e-9);
  if (type == "constant") {
    v.keys(h, {"type", "target", "a", "b", "width"}, ptr);
    return BaseHomotopy::to_constant(gamma, v.complex(v.need(h, "target", ptr), ptr + "/target"), a, b, w);
  }
  if (type == "path") {
    v.keys(h, {"type", "curve", "a", "b", "width"}, ptr);
    const std::string c = v.string(h, "curve", ptr);
    if (!d.curves.count(c)) v.bad(ptr + "/curve", "unknown curve '" + c + "'");
    return BaseHomotopy::to_path(gamma, d.curves.at(c), a, b, w);
  }
  v.bad(ptr + "/type", "unknown homotopy type '" + type + "'");
}

const std::map<std::string, std::set<std::string>>& experiment_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"transport", {"curve", "start", "from", "to", "expected", "tolerance"}},
      {"monodromy", {"curve", "start", "expected", "tolerance"}},
      {"flux",
       {"isotopy", "s_values", "loop_t", "random_vertical", "potential_points", "tolerance", "vertical_tolerance"}},
      {"grade", {"lagrangian", "random_points", "tolerance", "probe_tolerance"}},
      {"degree", {"pair", "expected", "random_variants", "tolerance"}},
      {"bigon", {"pair", "p_plus", "expected_lhs", "expected_fiber_term"}},
      {"disc_area", {"patch", "expected", "tolerance"}},
      {"area_difference", {"pair", "isotopy", "p_plus", "tolerance"}},
      {"triangle_split",
       {"epsilon", "circle_radius", "ray_angle", "spiral_k", "spiral_angle", "tolerance", "reparam_tolerance"}},
  };
  return keys;
}

void check_experiment(const Validator& v, const detail::ScenarioData& d, const json& e, const std::string& type,
                      const std::string& ptr) {
  std::set<std::string> allowed = experiment_keys().at(type);
  allowed.insert({"type", "name"});
  v.keys(e, allowed, ptr);
  if (e.contains("tolerance")) v.number(e, "tolerance", ptr, {}, 1e-15, 1.0);

  auto ref = [&](const std::string& key, const auto& table, const char* what) {
    const std::string name = v.string(e, key, ptr);
    if (!table.count(name)) v.bad(ptr + "/" + key, std::string("unknown ") + what + " '" + name + "'");
    return name;
  };
  auto pair = [&](bool graded) {
    const json& p = v.need(e, "pair", ptr);
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      v.bad(ptr + "/pair", "pair must name two Lagrangians");
    }
    std::array<std::string, 2> names{p[0].get<std::string>(), p[1].get<std::string>()};
    for (int k = 0; k < 2; ++k) {
      const std::string pk = ptr + "/pair/" + std::to_string(k);
      if (!d.lagrangians.count(names[k])) v.bad(pk, "unknown lagrangian '" + names[k] + "'");
      if (graded && !d.lagrangians.at(names[k]).graded) v.bad(pk, "lagrangian '" + names[k] + "' has no grading");
    }
    if (names[0] == names[1]) v.bad(ptr + "/pair", "pair needs two different Lagrangians");
    return names;
  };

  if (type == "transport" || type == "monodromy") {
    const std::string c = ref("curve", d.curves, "curve");
    const BasePath& g = d.curves.at(c);
    v.point(v.need(e, "start", ptr), d.model.dim(), ptr + "/start");
    if (e.contains("expected")) v.point(e.at("expected"), d.model.dim(), ptr + "/expected");
    if (type == "transport") {
      v.number(e, "from", ptr, {}, g.t_min(), g.t_max());
      v.number(e, "to", ptr, {}, g.t_min(), g.t_max());
    } else if (!g.closed(1e-9)) {
      v.bad(ptr + "/curve", "monodromy needs a closed curve");
    }
  } else if (type == "flux") {
    ref("isotopy", d.isotopies, "isotopy");
    if (e.contains("s_values")) {
      const json& s = e.at("s_values");
      if (!s.is_array() || s.empty()) v.bad(ptr + "/s_values", "s_values must be a non-empty array");
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (!s[k].is_number() || s[k].get<double>() < 0.0 || s[k].get<double>() > 1.0) {
          v.bad(ptr + "/s_values/" + std::to_string(k), "s values must lie in [0, 1]");
        }
      }
    }
    if (e.contains("loop_t")) v.number(e, "loop_t", ptr, {});
    v.integer(e, "random_vertical", ptr, 50, 0, 1000);
    v.integer(e, "potential_points", ptr, 3, 0, 100);
    if (e.contains("vertical_tolerance")) v.number(e, "vertical_tolerance", ptr, {}, 1e-15, 1.0);
  } else if (type == "grade") {
    ref("lagrangian", d.lagrangians, "lagrangian");
    v.integer(e, "random_points", ptr, 100, 1, 10000);
    if (e.contains("probe_tolerance")) v.number(e, "probe_tolerance", ptr, {}, 1e-15, 1.0);
  } else if (type == "degree") {
    pair(true);
    v.integer(e, "random_variants", ptr, 0, 0, 1000);
    if (e.contains("expected")) {
      const json& x = e.at("expected");
      if (!x.is_array()) v.bad(ptr + "/expected", "expected must be an array of {total, fiber, base}");
      for (std::size_t k = 0; k < x.size(); ++k) {
        const std::string pk = ptr + "/expected/" + std::to_string(k);
        v.keys(x[k], {"total", "fiber", "base"}, pk);
        for (const char* f : {"total", "fiber", "base"}) v.integer(x[k], f, pk, 0, -1000, 1000);
      }
    }
  } else if (type == "bigon") {
    pair(true);
    if (e.contains("p_plus")) v.complex(e.at("p_plus"), ptr + "/p_plus");
    v.integer(e, "expected_lhs", ptr, 0, -1000, 1000);
    v.integer(e, "expected_fiber_term", ptr, 0, -1000, 1000);
  } else if (type == "disc_area") {
    const json& p = v.need(e, "patch", ptr);
    const std::string pp = ptr + "/patch";
    const std::string f = v.string(p, "factory", pp);
    if (f == "round_disc") {
      v.keys(p, {"factory", "R"}, pp);
      v.number(p, "R", pp, {}, 1e-6, 1e3);
      if (d.model.id() != ModelId::TrivialLine) v.bad(pp, "round_disc lives in trivial_line");
    } else if (f == "constant") {
      v.keys(p, {"factory", "point"}, pp);
      v.point(v.need(p, "point", pp), d.model.dim(), pp + "/point");
    } else if (f == "fiber_annulus") {
      v.keys(p, {"factory", "c", "R_outer", "R_inner"}, pp);
      v.complex(v.need(p, "c", pp), pp + "/c");
      const double ro = v.number(p, "R_outer", pp, {}, 1e-6, 1e3);
      v.number(p, "R_inner", pp, {}, 1e-6, ro);
      if (d.model.id() != ModelId::Conic) v.bad(pp, "fiber_annulus lives in conic");
    } else {
      v.bad(pp + "/factory", "unknown patch factory '" + f + "'");
    }
    if (e.contains("expected")) v.number(e, "expected", ptr, {});
  } else if (type == "area_difference") {
    const auto names = pair(false);
    const std::string iso = ref("isotopy", d.isotopies, "isotopy");
    if (d.isotopies.at(iso).lagrangian != names[0]) {
      v.bad(ptr + "/isotopy", "isotopy must move the first Lagrangian of the pair");
    }
    if (e.contains("p_plus")) v.complex(e.at("p_plus"), ptr + "/p_plus");
  } else if (type == "triangle_split") {
    if (d.model.id() != ModelId::Conic) v.bad(ptr, "triangle_split is built in conic");
    v.number(e, "epsilon", ptr, 0.5, 1e-3, 0.9);
    v.number(e, "circle_radius", ptr, 1.0, 1e-3, 1e2);
    v.number(e, "ray_angle", ptr, 0.3, -kPi, kPi);
    v.number(e, "spiral_k", ptr, 0.8, -10.0, 10.0);
    v.number(e, "spiral_angle", ptr, -0.4, -kPi, kPi);
    if (e.contains("reparam_tolerance")) v.number(e, "reparam_tolerance", ptr, {}, 1e-15, 1.0);
  }
}

}  // namespace

std::vector<std::string> experiment_types() {
  std::vector<std::string> out;
  for (const auto& [k, v] : experiment_keys()) {
    (void)v;
    out.push_back(k);
  }
  return out;
}

Scenario Scenario::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorKind::Validation, file.string() + ":1:1: cannot open scenario file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), file.string());
}

Scenario Scenario::parse(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto p = msg.find(": ", msg.find("column")); p != std::string::npos) msg = msg.substr(p + 2);
    std::ostringstream os;
    os << source << ':' << line << ':' << col << ": parse error: " << msg;
    fail(ErrorKind::Validation, os.str());
  }

  const Validator v{source, LineIndex(text)};
  auto d = std::make_shared<detail::ScenarioData>();
  d->source = source;
  v.keys(j, {"schema_version", "name", "model", "seed", "curves", "lagrangians", "isotopies", "experiments", "output"},
         "");
  const int version = v.integer(j, "schema_version", "", -1, -1000000, 1000000);
  if (!j.contains("schema_version")) v.bad("", "missing required field 'schema_version'");
  if (version != kScenarioSchemaVersion) {
    v.bad("/schema_version", "unsupported schema_version " + std::to_string(version) + " (expected " +
                                 std::to_string(kScenarioSchemaVersion) + ")");
  }
  d->name = v.string(j, "name", "");
  d->model_id = v.string(j, "model", "");
  d->model = v.guarded("/model", [&] { return make_model(d->model_id); });
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) v.bad("/seed", "seed must be a non-negative integer");
    d->seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("output")) {
    v.keys(j.at("output"), {"svg"}, "/output");
    if (j.at("output").contains("svg")) {
      if (!j.at("output").at("svg").is_boolean()) v.bad("/output/svg", "svg must be true or false");
      d->svg = j.at("output").at("svg").get<bool>();
    }
  }

  if (j.contains("curves")) {
    if (!j.at("curves").is_object()) v.bad("/curves", "curves must be an object");
    for (const auto& [name, c] : j.at("curves").items()) {
      const std::string ptr = "/curves/" + name;
      d->curves.emplace(name, v.guarded(ptr, [&] { return make_curve(v, c, ptr); }));
      d->curve_order.push_back(name);
    }
  }

  if (j.contains("lagrangians")) {
    if (!j.at("lagrangians").is_object()) v.bad("/lagrangians", "lagrangians must be an object");
    for (const auto& [name, l] : j.at("lagrangians").items()) {
      const std::string ptr = "/lagrangians/" + name;
      v.keys(l, {"curve", "fiber", "anchor_t", "grading"}, ptr);
      const std::string curve = v.string(l, "curve", ptr);
      if (!d->curves.count(curve)) v.bad(ptr + "/curve", "unknown curve '" + curve + "'");
      const FiberLagrangianParam fiber =
          v.guarded(ptr + "/fiber", [&] { return make_fiber(v, v.need(l, "fiber", ptr), ptr + "/fiber"); });
      const double anchor_t = v.number(l, "anchor_t", ptr, 0.0);
      FiberedLagrangian L =
          v.guarded(ptr, [&] { return FiberedLagrangian(d->model, d->curves.at(curve), fiber, anchor_t); });
      std::optional<GradedLagrangian> graded;
      if (l.contains("grading")) {
        const json& g = l.at("grading");
        const std::string gp = ptr + "/grading";
        v.keys(g, {"fiber_anchor", "base_anchor", "anchor"}, gp);
        ParamPoint at{anchor_t, fiber.kind == FiberKind::Ray ? 1.0 : 0.0};
        if (g.contains("anchor")) {
          const cplx a = v.complex(g.at("anchor"), gp + "/anchor");
          at = {a.real(), a.imag()};
        }
        graded = v.guarded(gp, [&] {
          cplx vp{1.0};
          if (fiber.kind != FiberKind::Point) {
            const Frame fr = L.tangent_frame(at.t, at.u);
            const CVec e = split_tangent(d->model, fr.point, {fr.point, fr.vectors[0]}).vertical.comp;
            vp = alpha_vert(d->model, fr.point, std::span<const CVec>(&e, 1));
          }
          const double fa = anchor_value(v, g, "fiber_anchor", gp, vp);
          const double ba = anchor_value(v, g, "base_anchor", gp, squared_phase(L.curve().derivative(at.t)));
          return GradedLagrangian(L, fa, ba, at);
        });
      }
      d->lagrangians.emplace(name, detail::LagrangianDecl{name, curve, L, graded, v.index.find(ptr).first});
      d->lagrangian_order.push_back(name);
    }
  }

  if (j.contains("isotopies")) {
    if (!j.at("isotopies").is_object()) v.bad("/isotopies", "isotopies must be an object");
    for (const auto& [name, i] : j.at("isotopies").items()) {
      const std::string ptr = "/isotopies/" + name;
      v.keys(i, {"lagrangian", "homotopy"}, ptr);
      const std::string ln = v.string(i, "lagrangian", ptr);
      if (!d->lagrangians.count(ln)) v.bad(ptr + "/lagrangian", "unknown lagrangian '" + ln + "'");
      const FiberedLagrangian& L = d->lagrangians.at(ln).lagrangian;
      LagrangianIsotopy iso = v.guarded(ptr, [&] {
        return LagrangianIsotopy(L, make_homotopy(v, *d, L.curve(), v.need(i, "homotopy", ptr), ptr + "/homotopy"));
      });
      d->isotopies.emplace(name, detail::IsotopyDecl{name, ln, iso, v.index.find(ptr).first});
    }
  }

  const json& ex = v.need(j, "experiments", "");
  if (!ex.is_array() || ex.empty()) v.bad("/experiments", "experiments must be a non-empty array");
  std::set<std::string> names;
  for (std::size_t k = 0; k < ex.size(); ++k) {
    const std::string ptr = "/experiments/" + std::to_string(k);
    const json& e = ex[k];
    const std::string type = v.string(e, "type", ptr);
    if (!experiment_keys().count(type)) v.bad(ptr + "/type", "unknown experiment type '" + type + "'");
    std::string name = type;
    if (e.contains("name")) {
      name = v.string(e, "name", ptr);
    } else if (std::count_if(ex.begin(), ex.end(), [&](const json& o) { return o.value("type", "") == type; }) > 1) {
      name = type + "_" + std::to_string(k);
    }
    if (!names.insert(name).second) v.bad(ptr, "duplicate experiment name '" + name + "'");
    v.guarded(ptr, [&] {
      check_experiment(v, *d, e, type, ptr);
      return 0;
    });
    d->experiments.push_back({type, name, e, v.index.find(ptr).first});
  }

  Scenario s;
  s.d_ = std::move(d);
  return s;
}

const std::string& Scenario::source() const { return d_->source; }
const std::string& Scenario::name() const { return d_->name; }
const std::string& Scenario::model_id() const { return d_->model_id; }
std::uint64_t Scenario::seed() const { return d_->seed; }

std::vector<std::string> Scenario::experiment_names() const {
  std::vector<std::string> out;
  for (const auto& e : d_->experiments) out.push_back(e.name);
  return out;
}

}  // namespace lgf
