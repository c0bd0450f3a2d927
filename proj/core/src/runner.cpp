#include "lgfloer/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "lgfloer/errors.hpp"
#include "lgfloer/patch_factories.hpp"
#include "parallel.hpp"
#include "scenario_data.hpp"

namespace lgf {

namespace {

using detail::json;
using ojson = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Context {
  const detail::ScenarioData& d;
  const detail::ExperimentDecl& e;
  std::mt19937_64 rng;
  ExperimentRecord& rec;
  ojson details = ojson::object();

  void check(const std::string& name, double value, double residual, double tol, const std::string& invariant) {
    rec.quantities.push_back({name, value, residual, tol, residual <= tol, invariant});
  }
  double tol(double fallback) const { return e.params.value("tolerance", fallback); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
};

ojson cjson(cplx z) { return ojson::array({z.real(), z.imag()}); }
ojson pjson(const PointY& p) {
  ojson a = ojson::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(cjson(p[i]));
  return a;
}

PointY read_point(const json& j) {
  if (j.size() == 1) return PointY(detail::to_cplx(j[0]));
  return PointY(detail::to_cplx(j[0]), detail::to_cplx(j[1]));
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Fiber parameter sampled over the window (log-uniform for rays).
double sample_fiber(Context& c, const FiberLagrangianParam& f) {
  if (f.kind == FiberKind::Point) return 0.0;
  if (f.kind == FiberKind::Ray) return std::exp(c.uniform(std::log(f.s_min), std::log(f.s_max)));
  return c.uniform(f.s_min, f.s_max);
}

// ---- transport and monodromy ----------------------------------------------

void run_transport(Context& c, bool loop) {
  const auto& p = c.e.params;
  const Model& model = c.d.model;
  const BasePath& g = c.d.curves.at(p.at("curve").get<std::string>());
  const PointY start = read_point(p.at("start"));
  const double t0 = loop ? g.t_min() : p.at("from").get<double>();
  const double t1 = loop ? g.t_max() : p.at("to").get<double>();
  const int n = 200;
  std::vector<double> ts(n + 1);
  for (int k = 0; k <= n; ++k) ts[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / n;
  ts.back() = t1;
  TransportStats st;
  const auto traj = transport_samples(model, g, ts, start, {}, &st);
  const PointY end = traj.back();
  c.details["end"] = pjson(end);
  c.details["steps"] = st.steps;
  c.rec.base_points = {g(t0), g(t1)};

  if (p.contains("expected")) {
    const double err = distance(end, read_point(p.at("expected")));
    c.check(loop ? "monodromy_residual" : "endpoint_error", err, err, c.tol(1e-6),
            loop ? "fibration.monodromy" : "fibration.transport");
  }
  c.check("fiber_residual", st.max_fiber_residual, st.max_fiber_residual, 1e-8, "fibration.fiber_constraint");
  if (model.id() == ModelId::Conic) {
    double drift = 0.0;
    for (const auto& q : traj) drift = std::max(drift, std::abs(conic_moment(q) - conic_moment(start)));
    c.check("moment_drift", drift, drift, 1e-8, "fibration.moment_conservation");
  }
}

// ---- flux and exactness ----------------------------------------------------

void run_flux(Context& c) {
  const auto& p = c.e.params;
  const LagrangianIsotopy& iso = c.d.isotopies.at(p.at("isotopy").get<std::string>()).isotopy;
  const FiberedLagrangian& L = iso.lagrangian();
  const BaseHomotopy& H = iso.homotopy();
  const BasePath& g = L.curve();
  const bool moving = H.target_kind() != BaseHomotopy::Target::Identity;
  double lo = g.t_min(), hi = g.t_max();
  if (moving) {
    lo = std::max(lo, H.a() - H.width());
    hi = std::min(hi, H.b() + H.width());
  }
  const double loop_t = p.value("loop_t", moving ? 0.5 * (H.a() + H.b()) : 0.5 * (lo + hi));
  const double tol = c.tol(1e-5);
  const double vtol = p.value("vertical_tolerance", 1e-6);
  std::vector<double> ss = p.value("s_values", std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});

  if (L.fiber().kind != FiberKind::Point) {
    ojson loops = ojson::array();
    for (double s : ss) {
      const double v = iso.flux_path_integral(s, ParamPath::fiber_loop(loop_t));
      loops.push_back(v);
      c.check("loop_flux[s=" + fmt(s) + "]", v, std::abs(v), tol, "isotopy.exactness_loop");
    }
    c.details["loop_t"] = loop_t;
    c.details["loop_flux"] = loops;

    const int nv = p.value("random_vertical", 50);
    struct Sample {
      double s, t, u, r;
    };
    std::vector<Sample> samples;
    for (int k = 0; k < nv; ++k) {
      const double s = c.uniform(0.0, 1.0), t = c.uniform(lo, hi);
      samples.push_back({s, t, sample_fiber(c, L.fiber()), c.uniform(-1.0, 1.0)});
    }
    std::vector<double> vals(samples.size());
    detail::parallel_for(samples.size(), [&](std::size_t k) {
      const auto& sm = samples[k];
      vals[k] = std::abs(iso.flux(sm.s, sm.t, sm.u, {0.0, sm.r}));
    });
    double worst = 0.0;
    for (double v : vals) worst = std::max(worst, v);
    if (nv > 0) c.check("vertical_flux_max", worst, worst, vtol, "isotopy.vertical_flux");
  }

  const int np = p.value("potential_points", 3);
  const ParamPoint base{L.anchor_t(), L.fiber().kind == FiberKind::Ray ? 1.0 : 0.0};
  double worst = 0.0;
  ojson pots = ojson::array();
  for (int k = 0; k < np; ++k) {
    const ParamPoint q{c.uniform(lo, hi), sample_fiber(c, L.fiber())};
    double disc = 0.0;
    const double f = iso.potential(q, base, {}, &disc);
    pots.push_back(ojson{{"t", q.t}, {"u", q.u}, {"f", f}, {"discrepancy", disc}});
    worst = std::max(worst, disc);
  }
  c.details["potential"] = pots;
  if (np > 0) c.check("potential_path_discrepancy", worst, worst, tol, "isotopy.potential_path_independence");
  c.rec.base_points = {g(loop_t)};
}

// ---- phase splitting ---------------------------------------------------------

void run_grade(Context& c) {
  const auto& p = c.e.params;
  const FiberedLagrangian& L = c.d.lagrangians.at(p.at("lagrangian").get<std::string>()).lagrangian;
  const Model& model = L.model();
  const int n = p.value("random_points", 100);
  struct Sample {
    double t, u;
    cplx probe;
    double shift;
  };
  std::vector<Sample> samples;
  for (int k = 0; k < n; ++k) {
    const double t = c.uniform(L.curve().t_min(), L.curve().t_max());
    const double u = sample_fiber(c, L.fiber());
    const cplx pr = std::polar(c.uniform(0.5, 2.0), c.uniform(-kPi, kPi));
    samples.push_back({t, u, pr, c.uniform(-1.0, 1.0)});
  }
  std::vector<double> split(samples.size()), probe(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t k) {
    const auto& sm = samples[k];
    const Frame fr = L.tangent_frame(sm.t, sm.u);
    const cplx aL = alpha_total(model, {fr.point, fr.vectors});
    const cplx aH = alpha_hor(model, fr.point, fr.vectors.back());
    cplx aV{1.0};
    if (L.fiber().kind != FiberKind::Point) {
      const CVec e = split_tangent(model, fr.point, {fr.point, fr.vectors[0]}).vertical.comp;
      aV = alpha_vert(model, fr.point, std::span<const CVec>(&e, 1));
      // Any probe with dv(h) != 0 gives the same residue.
      const CVec h = horizontal_lift(model, fr.point, sm.probe) + sm.shift * e;
      probe[k] = std::abs(alpha_vert(model, fr.point, std::span<const CVec>(&e, 1), h) - aV);
    }
    split[k] = std::abs(aL - aV * aH);
  });
  const double ws = *std::max_element(split.begin(), split.end());
  const double wp = *std::max_element(probe.begin(), probe.end());
  c.check("phase_split", ws, ws, c.tol(1e-8), "grading.phase_split");
  if (L.fiber().kind != FiberKind::Point) {
    c.check("probe_independence", wp, wp, p.value("probe_tolerance", 1e-10), "grading.residue_probe");
  }
  c.details["points"] = n;
}

// ---- degrees -------------------------------------------------------------------

double nearest_lift(cplx phase, double hint) {
  const double a = std::arg(phase) / (2.0 * kPi);
  return hint + std::remainder(a - hint, 1.0);
}

GradedLagrangian variant(const GradedLagrangian& G, double phi, double radius_scale, int fiber_shift, int base_shift) {
  const FiberedLagrangian& L = G.lagrangian();
  FiberLagrangianParam f = L.fiber();
  if (f.kind == FiberKind::Circle) f.r *= radius_scale;
  FiberedLagrangian Lv(L.model(), L.curve().rotated(phi), f, L.anchor_t(), L.options());
  const ParamPoint a = G.anchor();
  double fa = G.fiber_anchor();
  if (f.kind != FiberKind::Point) {
    const Frame fr = Lv.tangent_frame(a.t, a.u);
    const CVec e = split_tangent(Lv.model(), fr.point, {fr.point, fr.vectors[0]}).vertical.comp;
    fa = nearest_lift(alpha_vert(Lv.model(), fr.point, std::span<const CVec>(&e, 1)), fa);
  }
  return {Lv, fa + fiber_shift, G.base_anchor() + phi / kPi + base_shift, a};
}

void run_degree(Context& c) {
  const auto& p = c.e.params;
  const auto& G0 = *c.d.lagrangians.at(p.at("pair")[0].get<std::string>()).graded;
  const auto& G1 = *c.d.lagrangians.at(p.at("pair")[1].get<std::string>()).graded;
  const double tol = c.tol(1e-4);
  DegreeOptions dopts;
  dopts.round_tol = tol;

  const auto ips = find_intersections(G0.lagrangian(), G1.lagrangian());
  const json expected = p.value("expected", json::array());
  c.check("intersection_count", static_cast<double>(ips.size()),
          expected.empty() ? 0.0 : std::abs(static_cast<double>(ips.size()) - static_cast<double>(expected.size())),
          0.0, "degree.intersection_count");
  ojson pts = ojson::array();
  for (std::size_t k = 0; k < ips.size(); ++k) {
    const auto& ip = ips[k];
    c.rec.base_points.push_back(ip.base_value);
    const DegreeSplit sp = degree_split(G0, G1, ip, dopts);
    const std::string tag = ips.size() == 1 ? "" : "[" + std::to_string(k) + "]";
    const double res = std::max({sp.total.residual, sp.fiber.residual, sp.base.residual});
    c.check("degree" + tag, sp.total.degree, res, tol, "degree.integrality");
    const int gap = sp.total.degree - sp.fiber.degree - sp.base.degree;
    c.check("split_gap" + tag, gap, std::abs(gap), 0.0, "degree.split");
    if (k < expected.size()) {
      const auto& x = expected[k];
      const double miss = std::abs(sp.total.degree - x.value("total", 0)) + std::abs(sp.fiber.degree - x.value("fiber", 0)) +
                          std::abs(sp.base.degree - x.value("base", 0));
      c.check("expected_match" + tag, sp.total.degree, miss, 0.0, "degree.expected");
    }
    pts.push_back(ojson{{"point", pjson(ip.point)},
                        {"base_value", cjson(ip.base_value)},
                        {"t0", ip.t0},
                        {"u0", ip.u0},
                        {"t1", ip.t1},
                        {"u1", ip.u1},
                        {"min_angle", ip.min_angle},
                        {"total", sp.total.degree},
                        {"fiber", sp.fiber.degree},
                        {"base", sp.base.degree},
                        {"total_raw", sp.total.raw},
                        {"fiber_raw", sp.fiber.raw},
                        {"base_raw", sp.base.raw},
                        {"closed_form_change", sp.total.closed_form_change},
                        {"path_change", sp.total.path_change}});
  }
  c.details["intersections"] = pts;

  const int nvar = p.value("random_variants", 0);
  if (nvar > 0) {
    struct Var {
      double phi, scale;
      int n0, n1, b0, b1;
    };
    std::vector<Var> vars;
    std::uniform_int_distribution<int> shift(-2, 2);
    for (int k = 0; k < nvar; ++k) {
      Var v{c.uniform(-kPi, kPi), c.uniform(0.8, 1.25), 0, 0, 0, 0};
      v.n0 = shift(c.rng);
      v.n1 = shift(c.rng);
      v.b0 = shift(c.rng);
      v.b1 = shift(c.rng);
      vars.push_back(v);
    }
    struct Outcome {
      bool ok = false;
      int points = 0;
      double residual = 0.0;
      std::string error;
    };
    std::vector<Outcome> out(vars.size());
    detail::parallel_for(vars.size(), [&](std::size_t k) {
      const Var& v = vars[k];
      try {
        const GradedLagrangian A = variant(G0, v.phi, v.scale, v.n0, v.b0);
        const GradedLagrangian B = variant(G1, v.phi, v.scale, v.n1, v.b1);
        const auto vips = find_intersections(A.lagrangian(), B.lagrangian());
        for (const auto& ip : vips) {
          const DegreeSplit sp = degree_split(A, B, ip, dopts);
          out[k].residual = std::max({out[k].residual, sp.total.residual, sp.fiber.residual, sp.base.residual});
        }
        out[k].points = static_cast<int>(vips.size());
        out[k].ok = true;
      } catch (const Error& e) {
        out[k].error = e.what();
      }
    });
    int good = 0, points = 0;
    double worst = 0.0;
    ojson fails = ojson::array();
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k].ok) ++good;
      else fails.push_back(ojson{{"variant", k}, {"error", out[k].error}});
      points += out[k].points;
      worst = std::max(worst, out[k].residual);
    }
    c.check("variants_split_ok", good, nvar - good, 0.0, "degree.split_variants");
    c.check("variants_max_residual", worst, worst, tol, "degree.integrality");
    c.details["variants"] = ojson{{"count", nvar}, {"points", points}, {"failures", fails}};
  }
}

std::pair<IntersectionPoint, IntersectionPoint> corners(const Context& c, const std::vector<IntersectionPoint>& ips) {
  if (ips.size() != 2) {
    fail(ErrorKind::NumericalConsistency,
         "bigon needs exactly two intersection points, found " + std::to_string(ips.size()));
  }
  bool first_plus = ips[0].t0 < ips[1].t0;
  if (c.e.params.contains("p_plus")) {
    const cplx want = detail::to_cplx(c.e.params.at("p_plus"));
    first_plus = std::abs(ips[0].base_value - want) < std::abs(ips[1].base_value - want);
  }
  return first_plus ? std::pair{ips[0], ips[1]} : std::pair{ips[1], ips[0]};
}

void run_bigon(Context& c) {
  const auto& p = c.e.params;
  const auto& G0 = *c.d.lagrangians.at(p.at("pair")[0].get<std::string>()).graded;
  const auto& G1 = *c.d.lagrangians.at(p.at("pair")[1].get<std::string>()).graded;
  const auto [pp, pm] = corners(c, find_intersections(G0.lagrangian(), G1.lagrangian()));
  c.rec.base_points = {pp.base_value, pm.base_value};
  const BigonRecord r = bigon_relation(G0, G1, pp, pm);
  c.check("relation_gap", r.difference, std::abs(r.difference), 0.0, "bigon.relation");
  c.check("lhs", r.lhs, p.contains("expected_lhs") ? std::abs(r.lhs - p.at("expected_lhs").get<int>()) : 0.0, 0.0,
          "bigon.expected_lhs");
  const int fiber_term = r.fiber_plus - r.fiber_monodromy_minus;
  c.check("fiber_term", fiber_term,
          p.contains("expected_fiber_term") ? std::abs(fiber_term - p.at("expected_fiber_term").get<int>()) : 0.0, 0.0,
          "bigon.expected_fiber_term");
  c.check("base_shift", r.base_plus - r.base_minus, 0.0, 0.0, "bigon.base_shift");
  c.check("pprime_residual", r.pprime_residual, r.pprime_residual, 1e-8, "bigon.pprime");
  c.check("round_residual", r.max_round_residual, r.max_round_residual, 1e-4, "degree.integrality");
  c.details = ojson{{"p_plus", cjson(pp.base_value)},   {"p_minus", cjson(pm.base_value)},
                    {"deg_plus", r.deg_plus},           {"deg_minus", r.deg_minus},
                    {"fiber_plus", r.fiber_plus},       {"fiber_monodromy_minus", r.fiber_monodromy_minus},
                    {"base_plus", r.base_plus},         {"base_minus", r.base_minus},
                    {"lhs", r.lhs},                     {"rhs", r.rhs},
                    {"pprime", pjson(r.pprime)}};
}

// ---- areas -----------------------------------------------------------------------

void run_disc_area(Context& c) {
  const auto& p = c.e.params;
  const json& patch = p.at("patch");
  const std::string f = patch.at("factory").get<std::string>();
  DiscPatch disc;
  if (f == "round_disc") disc = round_disc(patch.at("R").get<double>());
  else if (f == "constant") disc = constant_disc(read_point(patch.at("point")));
  else disc = fiber_annulus(detail::to_cplx(patch.at("c")), patch.at("R_outer").get<double>(), patch.at("R_inner").get<double>());
  const double tol = c.tol(1e-5);
  const AreaResult a = disc_area_converged(disc, {tol, 3});
  const double miss = p.contains("expected") ? std::abs(a.value - p.at("expected").get<double>()) : a.change;
  c.check("area", a.value, miss, tol, "disc_area.value");
  c.check("refinement_change", a.change, a.change, tol, "disc_area.convergence");
  c.details = ojson{{"triangles", a.triangles}, {"level", a.level}};
}

void run_area_difference(Context& c) {
  const auto& p = c.e.params;
  const auto& L0 = c.d.lagrangians.at(p.at("pair")[0].get<std::string>()).lagrangian;
  const auto& L1 = c.d.lagrangians.at(p.at("pair")[1].get<std::string>()).lagrangian;
  const LagrangianIsotopy& iso = c.d.isotopies.at(p.at("isotopy").get<std::string>()).isotopy;
  const auto [pp, pm] = corners(c, find_intersections(L0, L1));
  c.rec.base_points = {pp.base_value, pm.base_value};
  const double tol = c.tol(1e-5);
  const DiscPatch u = bigon_strip(L0, L1, pp, pm);
  const std::size_t m = 1;  // the arc on L0
  const DiscPatch up = deform_disc(u, iso, m);
  const AreaReport r = area_difference_check(u, iso, m, {tol, 3});
  c.check("area_difference_residual", r.residual, r.residual, tol, "disc_area.area_difference");
  const double ch = r.change_u + r.change_u_prime;
  c.check("refinement_change", ch, ch, tol, "disc_area.convergence");
  const double fid = std::max(boundary_fidelity(u), boundary_fidelity(up));
  c.check("boundary_fidelity", fid, fid, 1e-6, "disc_area.boundary_fidelity");
  const double cm = std::max(corner_mismatch(u), corner_mismatch(up));
  c.check("corner_mismatch", cm, cm, 1e-8, "disc_area.corners");
  c.check("potential_path_discrepancy", r.path_discrepancy, r.path_discrepancy, tol,
          "isotopy.potential_path_independence");
  c.details = ojson{{"area_u", r.area_u},
                    {"area_u_prime", r.area_u_prime},
                    {"boundary_term", r.boundary_term},
                    {"p_plus", cjson(pp.base_value)},
                    {"p_minus", cjson(pm.base_value)}};
}

void run_triangle(Context& c) {
  const auto& p = c.e.params;
  TriangleOptions o;
  o.epsilon = p.value("epsilon", o.epsilon);
  o.circle_radius = p.value("circle_radius", o.circle_radius);
  o.ray_angle = p.value("ray_angle", o.ray_angle);
  o.spiral_k = p.value("spiral_k", o.spiral_k);
  o.spiral_angle = p.value("spiral_angle", o.spiral_angle);
  const double tol = c.tol(1e-5);
  const TriangleSetup T = conic_triangle(o);
  for (const auto& q : T.corners) c.rec.base_points.push_back(T.L0.model().v(q));
  const AreaReport r = triangle_split_check(T.u, T.iso, T.m, T.u_doubleprime, T.fiber_value, {tol, 3});
  c.check("triangle_residual", r.residual, r.residual, tol, "disc_area.triangle_split");
  c.check("fiber_containment", r.fiber_residual, r.fiber_residual, 1e-8, "disc_area.fiber_containment");
  const AreaResult rep = disc_area_converged(T.u_reparametrized, {tol, 3});
  const double base = r.area_u - r.area_u_prime, base_rep = rep.value - r.area_u_prime;
  const double diff = std::abs(base - base_rep);
  c.check("reparam_base_difference", diff, diff, p.value("reparam_tolerance", 1e-6), "disc_area.base_term_invariance");
  const double ch = std::max({r.change_u, r.change_u_prime, rep.change});
  c.check("refinement_change", ch, ch, tol, "disc_area.convergence");
  const double fid = std::max({boundary_fidelity(T.u), boundary_fidelity(T.u_doubleprime),
                               boundary_fidelity(T.u_reparametrized)});
  c.check("boundary_fidelity", fid, fid, 1e-6, "disc_area.boundary_fidelity");
  const double cm = std::max({corner_mismatch(T.u), corner_mismatch(T.u_doubleprime), corner_mismatch(T.u_reparametrized)});
  c.check("corner_mismatch", cm, cm, 1e-8, "disc_area.corners");
  c.details = ojson{{"area_u", r.area_u},          {"area_u_doubleprime", r.area_u_prime},
                    {"boundary_term", r.boundary_term}, {"base_term_reparametrized", base_rep},
                    {"potential_path_discrepancy", r.path_discrepancy}};
}

ExperimentRecord run_one(const detail::ScenarioData& d, const detail::ExperimentDecl& e, std::uint64_t seed,
                         std::size_t index) {
  ExperimentRecord rec;
  rec.type = e.type;
  rec.name = e.name;
  rec.line = e.line;
  rec.inputs = e.params.dump();
  Context c{d, e, std::mt19937_64(seed + 0x9E3779B97F4A7C15ULL * (index + 1)), rec};
  try {
    if (e.type == "transport") run_transport(c, false);
    else if (e.type == "monodromy") run_transport(c, true);
    else if (e.type == "flux") run_flux(c);
    else if (e.type == "grade") run_grade(c);
    else if (e.type == "degree") run_degree(c);
    else if (e.type == "bigon") run_bigon(c);
    else if (e.type == "disc_area") run_disc_area(c);
    else if (e.type == "area_difference") run_area_difference(c);
    else if (e.type == "triangle_split") run_triangle(c);
    else fail(ErrorKind::Validation, "unknown experiment type '" + e.type + "'");
  } catch (const Error& err) {
    rec.error_kind = std::string(to_string(err.kind()));
    rec.error = err.what();
  } catch (const std::exception& err) {
    rec.error_kind = "internal";
    rec.error = err.what();
  }
  rec.details = c.details.dump();
  return rec;
}

}  // namespace

bool ExperimentRecord::pass() const {
  if (!error_kind.empty()) return false;
  return std::all_of(quantities.begin(), quantities.end(), [](const Quantity& q) { return q.pass; });
}

std::vector<std::string> ExperimentRecord::violated() const {
  std::vector<std::string> out;
  if (!error_kind.empty()) out.push_back("error." + error_kind);
  for (const auto& q : quantities) {
    if (!q.pass && std::find(out.begin(), out.end(), q.invariant) == out.end()) out.push_back(q.invariant);
  }
  return out;
}

bool Report::ok() const {
  return std::all_of(records.begin(), records.end(), [](const ExperimentRecord& r) { return r.pass(); });
}

std::string Report::json() const {
  ojson j;
  j["schema"] = kReportSchema;
  j["scenario"] = scenario;
  j["source"] = source;
  j["model"] = model;
  j["seed"] = seed;
  j["status"] = ok() ? "pass" : "fail";
  ojson ex = ojson::array();
  for (const auto& r : records) {
    ojson e;
    e["type"] = r.type;
    e["name"] = r.name;
    e["line"] = r.line;
    e["inputs"] = ojson::parse(r.inputs);
    e["status"] = r.pass() ? "pass" : "fail";
    e["violated"] = r.violated();
    if (!r.error_kind.empty()) e["error"] = ojson{{"kind", r.error_kind}, {"message", r.error}};
    ojson qs = ojson::array();
    for (const auto& q : r.quantities) {
      qs.push_back(ojson{{"name", q.name},
                         {"value", q.value},
                         {"residual", q.residual},
                         {"tolerance", q.tolerance},
                         {"pass", q.pass},
                         {"invariant", q.invariant}});
    }
    e["quantities"] = qs;
    e["details"] = ojson::parse(r.details.empty() ? "{}" : r.details);
    ex.push_back(e);
  }
  j["experiments"] = ex;
  return j.dump(2) + "\n";
}

std::string Report::csv() const {
  std::ostringstream os;
  os << "experiment,name,value,residual,tolerance,status\n";
  for (const auto& r : records) {
    if (!r.error_kind.empty()) os << r.name << ",error:" << r.error_kind << ",nan,nan,nan,fail\n";
    for (const auto& q : r.quantities) {
      os << r.name << ',' << q.name << ',' << fmt(q.value) << ',' << fmt(q.residual) << ',' << fmt(q.tolerance) << ','
         << (q.pass ? "pass" : "fail") << '\n';
    }
  }
  return os.str();
}

Report run_scenario(const Scenario& scenario, std::optional<std::uint64_t> seed) {
  const detail::ScenarioData& d = scenario.data();
  Report rep;
  rep.scenario = d.name;
  rep.source = d.source;
  rep.model = d.model_id;
  rep.seed = seed.value_or(d.seed);
  std::vector<std::future<ExperimentRecord>> jobs;
  for (std::size_t k = 0; k < d.experiments.size(); ++k) {
    jobs.push_back(std::async(std::launch::async, [&d, &rep, k] { return run_one(d, d.experiments[k], rep.seed, k); }));
  }
  for (auto& j : jobs) rep.records.push_back(j.get());
  return rep;
}

std::string base_svg(const Scenario& scenario, const Report& report) {
  const detail::ScenarioData& d = scenario.data();
  std::vector<std::vector<cplx>> curves;
  for (const auto& name : d.curve_order) {
    const BasePath& g = d.curves.at(name);
    std::vector<cplx> pts;
    for (int k = 0; k <= 256; ++k) pts.push_back(g(g.t_min() + (g.t_max() - g.t_min()) * k / 256.0));
    curves.push_back(std::move(pts));
  }
  std::vector<cplx> marks;
  for (const auto& r : report.records) marks.insert(marks.end(), r.base_points.begin(), r.base_points.end());

  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  auto grow = [&](cplx z) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  };
  for (const auto& c : curves) std::for_each(c.begin(), c.end(), grow);
  std::for_each(marks.begin(), marks.end(), grow);
  for (cplx z : d.model.critical_values()) grow(z);
  const double pad = 0.08 * std::max(x1 - x0, y1 - y0);
  x0 -= pad, x1 += pad, y0 -= pad, y1 += pad;
  const double W = 480.0, S = W / std::max(x1 - x0, y1 - y0);
  auto X = [&](cplx z) { return fmt((z.real() - x0) * S); };
  auto Y = [&](cplx z) { return fmt((y1 - z.imag()) * S); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt((x1 - x0) * S) << "\" height=\""
     << fmt((y1 - y0) * S) << "\">\n";
  os << "<title>" << d.name << "</title>\n";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    os << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << colors[k % 6] << "\" points=\"";
    for (cplx z : curves[k]) os << X(z) << ',' << Y(z) << ' ';
    os << "\"><title>" << d.curve_order[k] << "</title></polyline>\n";
  }
  for (cplx z : d.model.critical_values()) {
    os << "<circle cx=\"" << X(z) << "\" cy=\"" << Y(z) << "\" r=\"5\" fill=\"black\"><title>critical value</title></circle>\n";
  }
  for (cplx z : marks) {
    os << "<circle cx=\"" << X(z) << "\" cy=\"" << Y(z) << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_outputs(const Scenario& scenario, const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto put = [&](const char* file, const std::string& text) {
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) fail(ErrorKind::Argument, "cannot write " + (dir / file).string());
    out << text;
  };
  put("report.json", report.json());
  put("summary.csv", report.csv());
  if (scenario.data().svg) put("base.svg", base_svg(scenario, report));
}

}  // namespace lgf
