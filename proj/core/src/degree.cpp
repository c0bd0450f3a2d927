#include <cmath>
#include <sstream>

#include "lgfloer/errors.hpp"
#include "lgfloer/grading.hpp"

namespace lgf {

namespace {

DegreeResult finish(double lift0, double lift1, double lambda_end, double closed_form, const DegreeOptions& opts,
                    const char* what) {
  DegreeResult r;
  r.lift0 = lift0;
  r.lift1 = lift1;
  r.path_change = lambda_end - lift0;
  r.closed_form_change = closed_form;
  r.raw = (lift1 - lift0) - r.path_change;
  r.degree = static_cast<int>(std::lround(r.raw));
  r.residual = std::abs(r.raw - r.degree);
  if (r.residual > opts.round_tol) {
    std::ostringstream os;
    os << what << " degree formula gives " << r.raw << ", not an integer within " << opts.round_tol;
    fail(ErrorKind::NumericalConsistency, os.str());
  }
  return r;
}

}  // namespace

DegreeResult total_degree(const Model& model, const ShortPath& path, double lift0, double lift1,
                          const DegreeOptions& opts) {
  const double end = unwrap_function([&](double t) { return alpha_total(model, path.at(t)); }, 0.0, 1.0, lift0);
  return finish(lift0, lift1, end, path.closed_form_change(), opts, "total");
}

DegreeResult fiber_degree(const Model& model, const PointY& p, const ShortPathFactor& vert, double lift0,
                          double lift1, const DegreeOptions& opts) {
  const double end = unwrap_function(
      [&](double t) {
        const CVec e = vert.direction(t);
        return alpha_vert(model, p, std::span<const CVec>(&e, 1));
      },
      0.0, 1.0, lift0);
  return finish(lift0, lift1, end, vert.lift_change(), opts, "fiber");
}

DegreeResult base_degree(cplx d0, cplx d1, double lift0, double lift1, const DegreeOptions& opts) {
  const ShortPathFactor f = make_factor(CVec(cplx{1.0}), CVec(d0), CVec(d1), opts.angle_tol);
  const double end =
      unwrap_function([&](double t) { return squared_phase(f.direction(t)[0]); }, 0.0, 1.0, lift0);
  return finish(lift0, lift1, end, f.lift_change(), opts, "base");
}

DegreeResult degree(const GradedLagrangian& L0, const GradedLagrangian& L1, const IntersectionPoint& ip,
                    const DegreeOptions& opts) {
  const ShortPath sp = canonical_short_path(ip, L0.lagrangian(), L1.lagrangian(), opts.angle_tol);
  return total_degree(L0.lagrangian().model(), sp, L0.lift(ip.t0, ip.u0), L1.lift(ip.t1, ip.u1), opts);
}

DegreeSplit degree_split(const GradedLagrangian& L0, const GradedLagrangian& L1, const IntersectionPoint& ip,
                         const DegreeOptions& opts) {
  const Model& model = L0.lagrangian().model();
  const ShortPath sp = canonical_short_path(ip, L0.lagrangian(), L1.lagrangian(), opts.angle_tol);
  DegreeSplit out;
  const double v0 = L0.vert_lift(ip.t0, ip.u0), v1 = L1.vert_lift(ip.t1, ip.u1);
  const double b0 = L0.base_lift(ip.t0), b1 = L1.base_lift(ip.t1);
  if (model.fiber_dim() == 1) {
    out.fiber = fiber_degree(model, ip.point, sp.factors.front(), v0, v1, opts);
  } else {
    out.fiber.lift0 = v0;
    out.fiber.lift1 = v1;
    out.fiber.raw = v1 - v0;
    out.fiber.degree = static_cast<int>(std::lround(out.fiber.raw));
    out.fiber.residual = std::abs(out.fiber.raw - out.fiber.degree);
  }
  out.base = base_degree(L0.lagrangian().curve().derivative(ip.t0), L1.lagrangian().curve().derivative(ip.t1), b0,
                         b1, opts);
  out.total = total_degree(model, sp, v0 + b0, v1 + b1, opts);
  if (out.total.degree != out.fiber.degree + out.base.degree) {
    std::ostringstream os;
    os << "degree splitting violated: total " << out.total.degree << " vs fiber " << out.fiber.degree << " + base "
       << out.base.degree;
    fail(ErrorKind::TheoremCheck, os.str());
  }
  return out;
}

BasePath bigon_loop(const BasePath& g0, double t0_plus, double t0_minus, const BasePath& g1, double t1_plus,
                    double t1_minus) {
  return BasePath::composite({g0.restricted(t0_plus, t0_minus), g1.restricted(t1_minus, t1_plus)});
}

BigonRecord bigon_relation(const GradedLagrangian& L0g, const GradedLagrangian& L1g, const IntersectionPoint& pp,
                           const IntersectionPoint& pm, const DegreeOptions& opts) {
  const FiberedLagrangian& L0 = L0g.lagrangian();
  const FiberedLagrangian& L1 = L1g.lagrangian();
  const Model& model = L0.model();
  const IntegratorOptions& io = L0.options();
  BigonRecord rec;

  const DegreeSplit sp = degree_split(L0g, L1g, pp, opts);
  const DegreeSplit sm = degree_split(L0g, L1g, pm, opts);
  rec.deg_plus = sp.total.degree;
  rec.deg_minus = sm.total.degree;
  rec.fiber_plus = sp.fiber.degree;
  rec.base_plus = sp.base.degree;
  rec.base_minus = sm.base.degree;
  rec.max_round_residual = std::max({sp.total.residual, sm.total.residual, sp.fiber.residual, sm.fiber.residual});

  // p_- carried back to the fiber over c_+ along gamma1.
  const PointY back = parallel_transport(model, L1.curve(), pm.t1, pp.t1, pm.point, io);

  if (model.fiber_dim() == 0) {
    rec.pprime = back;
    rec.pprime_residual = 0.0;
    rec.fiber_monodromy_minus = 0;
  } else {
    // Phi(L0 over c_+): L0's fiber over c_- carried back along gamma1.
    auto phi_curve = [&](double u) {
      return parallel_transport(model, L1.curve(), pm.t1, pp.t1, L0.eval(pm.t0, u), io);
    };
    // Locate the fiber intersection of the transported curve with L1 over c_+.
    const auto& f0 = L0.fiber();
    auto residual = [&](double u) { return L1.locate(pp.t1, phi_curve(u)).second; };
    const int samples = 96;
    double best_u = pm.u0, best_d = 1e300;
    bool found = false;
    double prev_u = 0, prev_r = 0;
    for (int i = 0; i <= samples; ++i) {
      const double x = static_cast<double>(i) / samples;
      const double u = f0.kind == FiberKind::Ray ? f0.s_min * std::pow(f0.s_max / f0.s_min, x)
                                                 : f0.s_min + (f0.s_max - f0.s_min) * x;
      const double r = residual(u);
      if (i > 0 && ((prev_r <= 0 && r > 0) || (prev_r >= 0 && r < 0)) && std::abs(prev_r) < 1 && std::abs(r) < 1) {
        double a = prev_u, b = u, fa = prev_r, fb = r, m = a;
        for (int it = 0; it < 100 && std::abs(b - a) > 1e-14; ++it) {
          m = 0.5 * (a + b);
          const double fm = residual(m);
          if (fm == 0.0) break;
          if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
            fb = fm;
          }
        }
        (void)fb;
        const double d = distance(phi_curve(m), back);
        if (d < best_d) {
          best_d = d;
          best_u = m;
          found = true;
        }
      }
      prev_u = u;
      prev_r = r;
    }
    if (!found) fail(ErrorKind::NumericalConsistency, "transported L0 fiber misses L1 over c_+");
    const double u_star = best_u;
    rec.pprime = phi_curve(u_star);
    rec.pprime_residual = best_d;

    // Grading of Phi(L0) at p'_-: L0's vertical lift at (t_-, u*), continued
    // along the transport back to c_+.
    const double h = 1e-5;
    auto carried = [&](double tau, double du) {
      const double t = pm.t1 + tau * (pp.t1 - pm.t1);
      return parallel_transport(model, L1.curve(), pm.t1, t, L0.eval(pm.t0, u_star + du), io);
    };
    auto carried_vertical = [&](double tau) {
      const PointY q = carried(tau, 0.0);
      const CVec e = (carried(tau, h) - carried(tau, -h)) / (2.0 * h);
      return std::pair{q, split_tangent(model, q, {q, e}).vertical.comp};
    };
    const double lift_start = L0g.vert_lift(pm.t0, u_star);
    const double lift_phi = unwrap_function(
        [&](double tau) {
          auto [q, e] = carried_vertical(tau);
          return alpha_vert(model, q, std::span<const CVec>(&e, 1));
        },
        0.0, 1.0, lift_start);

    const auto [u1, r1] = L1.locate(pp.t1, rec.pprime);
    (void)r1;
    const Frame F1 = L1.tangent_frame(pp.t1, u1);
    const CVec e1 = split_tangent(model, rec.pprime, {rec.pprime, F1.vectors[0]}).vertical.comp;
    const CVec e0 = carried_vertical(1.0).second;
    const ShortPathFactor vf = make_factor(vertical_factor(model, rec.pprime), e0, e1, opts.angle_tol);
    const DegreeResult fd = fiber_degree(model, rec.pprime, vf, lift_phi, L1g.vert_lift(pp.t1, u1), opts);
    rec.fiber_monodromy_minus = fd.degree;
    rec.max_round_residual = std::max(rec.max_round_residual, fd.residual);
  }

  rec.lhs = rec.deg_plus - rec.deg_minus;
  rec.rhs = rec.fiber_plus - rec.fiber_monodromy_minus + 1;
  rec.difference = rec.lhs - rec.rhs;
  return rec;
}

}  // namespace lgf
