#include "lgfloer/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lgfloer/errors.hpp"

namespace lgf {

namespace {

constexpr double kSingularGrad2 = 1e-24;

void require_regular(const Model& model, const PointY& p, double g2) {
  if (!(g2 > kSingularGrad2)) {
    std::ostringstream os;
    os << "dv vanishes at (" << p[0] << ", " << p[1] << ") in model " << model.name();
    fail(ErrorKind::SingularSplit, os.str());
  }
}

// Checks the base segment [a, b] of the path for critical values, at the
// endpoints and the midpoint, which is enough for steps far below the clearance.
void check_clearance(const Model& model, const BasePath& path, double ta, double tb,
                     const IntegratorOptions& opts) {
  if (model.critical_values().empty()) return;
  for (double t : {ta, 0.5 * (ta + tb), tb}) {
    const double d = model.critical_clearance(path(t));
    if (d < opts.critical_clearance) {
      std::ostringstream os;
      os << "path passes within " << d << " of a critical value at t=" << t;
      fail(ErrorKind::Path, os.str());
    }
  }
}

}  // namespace

CVec horizontal_lift(const Model& model, const PointY& p, cplx xi) {
  const CVec g = model.grad(p);
  const double g2 = g.norm2();
  require_regular(model, p, g2);
  return (xi / g2) * g.conj();
}

TangentSplit split_tangent(const Model& model, const PointY& p, const TangentVec& x) {
  if (x.comp.dim() != model.dim()) fail(ErrorKind::Argument, "tangent vector dimension mismatch");
  const CVec h = horizontal_lift(model, p, model.dv(p, x.comp));
  return {{p, x.comp - h}, {p, h}};
}

PointY project_to_fiber(const Model& model, const PointY& p, cplx c, int iters) {
  PointY q = p;
  for (int k = 0; k < iters; ++k) {
    const cplx r = c - model.v(q);
    if (std::abs(r) <= 1e-15 * (1.0 + std::abs(c))) break;
    q += horizontal_lift(model, q, r);
  }
  return q;
}

namespace {

// One transport leg from t0 to t1 with n equal RK4 steps.
PointY transport_leg(const Model& model, const BasePath& path, double t0, double t1, PointY p,
                     const IntegratorOptions& opts, TransportStats& st) {
  if (t0 == t1) return p;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / opts.step)));
  const double h = (t1 - t0) / n;
  auto f = [&](double t, const PointY& y) { return horizontal_lift(model, y, path.derivative(t)); };
  for (int k = 0; k < n; ++k) {
    const double t = t0 + k * h;
    const double tn = (k + 1 == n) ? t1 : t + h;
    check_clearance(model, path, t, tn, opts);
    const CVec k1 = f(t, p);
    const CVec k2 = f(t + 0.5 * h, p + (0.5 * h) * k1);
    const CVec k3 = f(t + 0.5 * h, p + (0.5 * h) * k2);
    const CVec k4 = f(tn, p + h * k3);
    p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    p = project_to_fiber(model, p, path(tn), opts.max_newton_iters);
    const double res = std::abs(model.v(p) - path(tn));
    st.max_fiber_residual = std::max(st.max_fiber_residual, res);
    if (!(res <= opts.fiber_tol) || !p.finite()) {
      std::ostringstream os;
      os << "fiber drift " << res << " exceeds " << opts.fiber_tol << " at t=" << tn;
      fail(ErrorKind::IntegrationFailure, os.str());
    }
  }
  st.steps += n;
  return p;
}

void check_start(const Model& model, const BasePath& path, double t0, const PointY& q,
                 const IntegratorOptions& opts) {
  if (q.dim() != model.dim()) fail(ErrorKind::Argument, "start point dimension mismatch");
  if (!path.contains(t0)) fail(ErrorKind::Argument, "transport start outside path domain");
  const double r = std::abs(model.v(q) - path(t0));
  if (r > std::max(opts.fiber_tol, 1e-9 * (1.0 + std::abs(path(t0))))) {
    std::ostringstream os;
    os << "start point is off the fiber over path(t0) by " << r;
    fail(ErrorKind::Argument, os.str());
  }
}

}  // namespace

PointY parallel_transport(const Model& model, const BasePath& path, double t0, double t1,
                          const PointY& q, const IntegratorOptions& opts, TransportStats* stats) {
  check_start(model, path, t0, q, opts);
  if (!path.contains(t1)) fail(ErrorKind::Argument, "transport end outside path domain");
  TransportStats local;
  PointY p = transport_leg(model, path, t0, t1, q, opts, local);
  if (stats) {
    stats->steps += local.steps;
    stats->max_fiber_residual = std::max(stats->max_fiber_residual, local.max_fiber_residual);
  }
  return p;
}

std::vector<PointY> transport_samples(const Model& model, const BasePath& path,
                                      const std::vector<double>& ts, const PointY& q,
                                      const IntegratorOptions& opts, TransportStats* stats) {
  if (ts.empty()) return {};
  check_start(model, path, ts.front(), q, opts);
  for (double t : ts) {
    if (!path.contains(t)) fail(ErrorKind::Argument, "checkpoint outside path domain");
  }
  TransportStats local;
  std::vector<PointY> out;
  out.reserve(ts.size());
  out.push_back(q);
  for (std::size_t k = 1; k < ts.size(); ++k) {
    out.push_back(transport_leg(model, path, ts[k - 1], ts[k], out.back(), opts, local));
  }
  if (stats) {
    stats->steps += local.steps;
    stats->max_fiber_residual = std::max(stats->max_fiber_residual, local.max_fiber_residual);
  }
  return out;
}

PointY monodromy(const Model& model, const BasePath& loop, const PointY& q,
                 const IntegratorOptions& opts, TransportStats* stats) {
  if (!loop.closed()) fail(ErrorKind::Argument, "monodromy loop is not closed");
  return parallel_transport(model, loop, loop.t_min(), loop.t_max(), q, opts, stats);
}

}  // namespace lgf
