#include <algorithm>
#include <cmath>
#include <sstream>

#include "lgfloer/errors.hpp"
#include "lgfloer/lagrangians.hpp"
#include "quadrature.hpp"

namespace lgf {

LagrangianIsotopy::LagrangianIsotopy(FiberedLagrangian L, BaseHomotopy H) : L_(std::move(L)), H_(std::move(H)) {
  const auto& g = L_.curve();
  for (int k = 0; k <= 8; ++k) {
    const double t = g.t_min() + (g.t_max() - g.t_min()) * k / 8.0;
    if (std::abs(H_.gamma()(t) - g(t)) > 1e-12) {
      fail(ErrorKind::Argument, "homotopy does not start at the Lagrangian's base curve");
    }
  }
  // Transport rotates the fiber curves by holonomy; only fiber curves that are
  // invariant under it (moment level circles) give Lagrangian isotopies.
  const auto kind = L_.fiber().kind;
  if (kind != FiberKind::Circle && kind != FiberKind::Point) {
    fail(ErrorKind::Argument, "isotopies are supported for circle and point fibers, got " + to_string(kind));
  }
  H_.check(L_.model());
}

PointY LagrangianIsotopy::psi_point(const PointY& p, double t, double s) const {
  const cplx d = H_.ds(t);
  if (s == 0.0 || d == cplx{}) return p;
  return parallel_transport(L_.model(), H_.s_line(t), 0.0, s, p, L_.options());
}

PointY LagrangianIsotopy::psi(double t, double u, double s) const { return psi_point(L_.eval(t, u), t, s); }

std::vector<PointY> LagrangianIsotopy::psi_sweep(const PointY& p, double t, const std::vector<double>& ss) const {
  if (ss.empty()) return {};
  if (H_.ds(t) == cplx{}) return std::vector<PointY>(ss.size(), p);
  std::vector<double> grid;
  grid.reserve(ss.size() + 1);
  grid.push_back(0.0);
  grid.insert(grid.end(), ss.begin(), ss.end());
  auto pts = transport_samples(L_.model(), H_.s_line(t), grid, p, L_.options());
  pts.erase(pts.begin());
  return pts;
}

CVec LagrangianIsotopy::dpsi_ds(const PointY& q, double t) const {
  return horizontal_lift(L_.model(), q, H_.ds(t));
}

namespace {

// b_s(d psi (dL(dir))) at every s in ss (increasing, >= 0), from three sweeps.
std::vector<double> flux_at(const LagrangianIsotopy& iso, double t, double u, ParamPoint dir,
                            const std::vector<double>& ss, double h) {
  const auto& L = iso.lagrangian();
  std::vector<double> out(ss.size(), 0.0);
  if (iso.homotopy().ds(t) == cplx{} && iso.homotopy().ds(t + h * dir.t) == cplx{} &&
      iso.homotopy().ds(t - h * dir.t) == cplx{}) {
    return out;
  }
  const double tp = t + h * dir.t, tm = t - h * dir.t;
  const auto q = iso.psi_sweep(L.eval(t, u), t, ss);
  const auto qp = iso.psi_sweep(L.eval(tp, u + h * dir.u), tp, ss);
  const auto qm = iso.psi_sweep(L.eval(tm, u - h * dir.u), tm, ss);
  for (std::size_t k = 0; k < ss.size(); ++k) {
    const CVec dw = (qp[k] - qm[k]) / (2.0 * h);
    out[k] = omega_std(dw, iso.dpsi_ds(q[k], t));
  }
  return out;
}

// Applies fn(t, u, dir, weight) at composite Gauss nodes along the path.
template <class Fn>
void for_path_nodes(const ParamPath& path, const std::vector<double>& breaks, int panels_per_unit, Fn&& fn) {
  static const auto gl = detail::gauss_legendre(8);
  for (std::size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
    const ParamPoint P = path.vertices[seg];
    const ParamPoint Q = path.vertices[seg + 1];
    const ParamPoint D = Q - P;
    const double len = std::hypot(D.t, D.u);
    if (len == 0.0) continue;
    std::vector<double> cuts{0.0, 1.0};
    if (D.t != 0.0) {
      for (double bp : breaks) {
        const double tau = (bp - P.t) / D.t;
        if (tau > 1e-12 && tau < 1.0 - 1e-12) cuts.push_back(tau);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double a = cuts[c], b = cuts[c + 1];
      const int n = std::max(1, static_cast<int>(std::ceil((b - a) * len * panels_per_unit)));
      for (int p = 0; p < n; ++p) {
        const double pa = a + (b - a) * p / n;
        const double pw = (b - a) / n;
        for (std::size_t i = 0; i < gl.first.size(); ++i) {
          const double tau = pa + pw * gl.first[i];
          const ParamPoint X = P + tau * D;
          fn(X.t, X.u, D, pw * gl.second[i]);
        }
      }
    }
  }
}

}  // namespace

double LagrangianIsotopy::flux(double s, double t, double u, ParamPoint dir, double h) const {
  return flux_at(*this, t, u, dir, {s}, h)[0];
}

double LagrangianIsotopy::flux_form(double s, double t, double u, const CVec& w, double h) const {
  const auto& L = L_;
  auto fd = [&](ParamPoint dir) {
    const PointY qp = psi(t + h * dir.t, u + h * dir.u, s);
    const PointY qm = psi(t - h * dir.t, u - h * dir.u, s);
    return (qp - qm) / (2.0 * h);
  };
  std::vector<CVec> basis{fd({1.0, 0.0})};
  if (L.fiber().kind != FiberKind::Point) basis.push_back(fd({0.0, 1.0}));
  // Real least squares w ~ sum c_i basis_i.
  double G[2][2] = {{0, 0}, {0, 0}}, r[2] = {0, 0};
  const std::size_t n = basis.size();
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = herm(basis[i], w).real();
    for (std::size_t j = 0; j < n; ++j) G[i][j] = herm(basis[i], basis[j]).real();
  }
  double c[2] = {0, 0};
  if (n == 1) {
    c[0] = r[0] / G[0][0];
  } else {
    const double det = G[0][0] * G[1][1] - G[0][1] * G[1][0];
    c[0] = (G[1][1] * r[0] - G[0][1] * r[1]) / det;
    c[1] = (G[0][0] * r[1] - G[1][0] * r[0]) / det;
  }
  CVec proj = c[0] * basis[0];
  if (n == 2) proj += c[1] * basis[1];
  const double miss = (w - proj).norm();
  if (miss > 1e-6 * std::max(1.0, w.norm())) {
    std::ostringstream os;
    os << "vector is not tangent to the isotoped Lagrangian (normal part " << miss << ")";
    fail(ErrorKind::Argument, os.str());
  }
  return omega_std(proj, dpsi_ds(psi(t, u, s), t));
}

double LagrangianIsotopy::flux_path_integral(double s, const ParamPath& path, const PotentialOptions& opts) const {
  double total = 0.0;
  for_path_nodes(path, H_.breakpoints(), opts.panels_per_unit, [&](double t, double u, ParamPoint D, double w) {
    total += w * flux_at(*this, t, u, D, {s}, opts.fd_step)[0];
  });
  return total;
}

double LagrangianIsotopy::integrated_flux(const ParamPath& path, const PotentialOptions& opts) const {
  if (H_.target_kind() == BaseHomotopy::Target::Identity) return 0.0;
  static const auto gs = detail::gauss_legendre(16);
  double total = 0.0;
  for_path_nodes(path, H_.breakpoints(), opts.panels_per_unit, [&](double t, double u, ParamPoint D, double w) {
    const auto b = flux_at(*this, t, u, D, gs.first, opts.fd_step);
    double inner = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) inner += gs.second[k] * b[k];
    total += w * inner;
  });
  return total;
}

double LagrangianIsotopy::potential(ParamPoint p, ParamPoint basepoint, const PotentialOptions& opts,
                                    double* path_discrepancy) const {
  const double straight = integrated_flux(ParamPath::straight(basepoint, p), opts);
  const double bent = integrated_flux(ParamPath::l_shaped(basepoint, p), opts);
  const double diff = std::abs(straight - bent);
  if (path_discrepancy) *path_discrepancy = diff;
  if (diff > opts.exactness_tol) {
    std::ostringstream os;
    os << "potential depends on the path: straight " << straight << " vs L-shaped " << bent;
    fail(ErrorKind::ExactnessViolation, os.str());
  }
  return straight;
}

}  // namespace lgf
