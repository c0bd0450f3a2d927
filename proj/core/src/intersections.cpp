#include <algorithm>
#include <cmath>
#include <sstream>

#include "lgfloer/errors.hpp"
#include "lgfloer/lagrangians.hpp"

namespace lgf {

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
  return g;
}

}  // namespace

std::vector<std::pair<double, double>> base_intersections(const BasePath& g0, const BasePath& g1, int samples,
                                                          double angle_tol) {
  const auto T0 = grid(g0.t_min(), g0.t_max(), samples);
  const auto T1 = grid(g1.t_min(), g1.t_max(), samples);
  std::vector<cplx> P0, P1;
  for (double t : T0) P0.push_back(g0(t));
  for (double t : T1) P1.push_back(g1(t));

  std::vector<std::pair<double, double>> found;
  for (std::size_t i = 0; i + 1 < P0.size(); ++i) {
    const cplx a = P0[i], da = P0[i + 1] - P0[i];
    for (std::size_t j = 0; j + 1 < P1.size(); ++j) {
      const cplx b = P1[j], db = P1[j + 1] - P1[j];
      const double den = cross(da, db);
      const double scale = std::abs(da) * std::abs(db);
      if (std::abs(den) <= 1e-12 * scale) {
        // Parallel chords: overlapping collinear pieces mean the curves share an arc.
        if (std::abs(cross(da, b - a)) <= 1e-12 * std::abs(da) * (1.0 + std::abs(b - a)) && scale > 0.0) {
          const double s0 = std::real((b - a) / da), s1 = std::real((b + db - a) / da);
          if (std::max(s0, s1) >= 0.0 && std::min(s0, s1) <= 1.0) {
            fail(ErrorKind::Transversality, "base curves overlap along an arc");
          }
        }
        continue;
      }
      const double s = cross(b - a, db) / den;
      const double r = cross(b - a, da) / den;
      const double eps = 1e-9;
      if (s < -eps || s > 1.0 + eps || r < -eps || r > 1.0 + eps) continue;
      double t0 = T0[i] + s * (T0[i + 1] - T0[i]);
      double t1 = T1[j] + r * (T1[j + 1] - T1[j]);
      // Newton on g0(t0) - g1(t1) = 0.
      for (int it = 0; it < 30; ++it) {
        const cplx F = g0(t0) - g1(t1);
        const cplx d0 = g0.derivative(t0), d1 = g1.derivative(t1);
        const double det = cross(d0, -d1);
        if (det == 0.0) break;
        // Solve d0 x - d1 y = -F for real x, y.
        const double x = cross(-F, -d1) / det;
        const double y = cross(d0, -F) / det;
        t0 = std::clamp(t0 + x, g0.t_min(), g0.t_max());
        t1 = std::clamp(t1 + y, g1.t_min(), g1.t_max());
        if (std::abs(x) + std::abs(y) < 1e-15) break;
      }
      if (std::abs(g0(t0) - g1(t1)) > 1e-10) continue;
      bool dup = false;
      for (const auto& f : found) {
        if (std::abs(f.first - t0) < 1e-7 && std::abs(f.second - t1) < 1e-7) dup = true;
      }
      if (dup) continue;
      const cplx d0 = g0.derivative(t0), d1 = g1.derivative(t1);
      const double sin_angle = std::abs(cross(d0, d1)) / (std::abs(d0) * std::abs(d1));
      if (sin_angle < std::sin(angle_tol)) {
        std::ostringstream os;
        os << "base curves meet tangentially at " << g0(t0);
        fail(ErrorKind::Transversality, os.str());
      }
      found.emplace_back(t0, t1);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<std::pair<double, double>> fiber_intersections(const FiberedLagrangian& L0, double t0,
                                                           const FiberedLagrangian& L1, double t1, int samples) {
  const auto& f0 = L0.fiber();
  if (f0.kind == FiberKind::Point) return {{0.0, 0.0}};
  auto residual = [&](double u) {
    const PointY p = L0.eval(t0, u);
    return L1.locate(t1, p);
  };
  // Rays are sampled geometrically, everything else uniformly.
  std::vector<double> us;
  for (int i = 0; i <= samples; ++i) {
    const double x = static_cast<double>(i) / samples;
    us.push_back(f0.kind == FiberKind::Ray ? f0.s_min * std::pow(f0.s_max / f0.s_min, x)
                                           : f0.s_min + (f0.s_max - f0.s_min) * x);
  }
  std::vector<std::pair<double, double>> vals;
  for (double u : us) vals.push_back(residual(u));

  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    const double ra = vals[i].second, rb = vals[i + 1].second;
    if (ra == 0.0 && i > 0) continue;
    if (!((ra <= 0.0 && rb > 0.0) || (ra >= 0.0 && rb < 0.0))) continue;
    if (std::abs(ra) > 1.0 || std::abs(rb) > 1.0) continue;  // branch jump, not a crossing
    // Illinois false position.
    double a = us[i], b = us[i + 1], fa = ra, fb = rb;
    double u = a;
    int side = 0;
    for (int it = 0; it < 80; ++it) {
      u = (a * fb - b * fa) / (fb - fa);
      const double fu = residual(u).second;
      if (fu == 0.0 || std::abs(b - a) < 1e-14) break;
      if ((fu > 0) == (fb > 0)) {
        b = u;
        fb = fu;
        if (side == -1) fa *= 0.5;
        side = -1;
      } else {
        a = u;
        fa = fu;
        if (side == 1) fb *= 0.5;
        side = 1;
      }
    }
    const auto loc = residual(u);
    if (std::abs(loc.second) > 1e-9) continue;
    if (f0.periodic() && !out.empty() && std::abs(std::remainder(out.front().first - u, 2.0 * kPi)) < 1e-8) continue;
    out.emplace_back(u, loc.first);
  }
  return out;
}

std::vector<IntersectionPoint> find_intersections(const FiberedLagrangian& L0, const FiberedLagrangian& L1,
                                                  const IntersectionOptions& opts) {
  if (L0.model().id() != L1.model().id()) fail(ErrorKind::Argument, "Lagrangians live in different models");
  std::vector<IntersectionPoint> out;
  for (auto [t0, t1] : base_intersections(L0.curve(), L1.curve(), opts.base_samples, opts.angle_tol)) {
    for (auto [u0, u1] : fiber_intersections(L0, t0, L1, t1, opts.fiber_samples)) {
      IntersectionPoint ip;
      ip.t0 = t0;
      ip.u0 = u0;
      ip.t1 = t1;
      ip.u1 = u1;
      ip.point = L0.eval(t0, u0);
      ip.base_value = L0.curve()(t0);
      ip.residual = distance(ip.point, L1.eval(t1, u1));
      if (ip.residual > opts.tol) {
        std::ostringstream os;
        os << "intersection residual " << ip.residual << " exceeds " << opts.tol;
        fail(ErrorKind::NumericalConsistency, os.str());
      }
      const Frame F0 = L0.tangent_frame(t0, u0);
      const Frame F1 = L1.tangent_frame(t1, u1);
      ip.min_angle = min_principal_angle(F0.vectors, F1.vectors);
      if (ip.min_angle < opts.angle_tol) {
        std::ostringstream os;
        os << "Lagrangians meet non-transversely (principal angle " << ip.min_angle << ")";
        fail(ErrorKind::Transversality, os.str());
      }
      out.push_back(ip);
    }
  }
  return out;
}

}  // namespace lgf
