#include "lgfloer/disc_area.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "lgfloer/errors.hpp"
#include "parallel.hpp"

namespace lgf {

std::string to_string(Edge e) {
  switch (e) {
    case Edge::Bottom: return "bottom";
    case Edge::Right: return "right";
    case Edge::Top: return "top";
    case Edge::Left: return "left";
  }
  return "?";
}

GridMap pointwise_map(std::function<PointY(double x, double y)> f) {
  return [f = std::move(f)](const std::vector<double>& xs, const std::vector<double>& ys) {
    GridSamples g(xs.size(), ys.size());
    detail::parallel_for(xs.size(), [&](std::size_t i) {
      for (std::size_t j = 0; j < ys.size(); ++j) g.at(i, j) = f(xs[i], ys[j]);
    });
    return g;
  };
}

GridMap columnwise_map(std::function<std::vector<PointY>(double x, const std::vector<double>& ys)> f) {
  return [f = std::move(f)](const std::vector<double>& xs, const std::vector<double>& ys) {
    GridSamples g(xs.size(), ys.size());
    detail::parallel_for(xs.size(), [&](std::size_t i) {
      const auto col = f(xs[i], ys);
      if (col.size() != ys.size()) fail(ErrorKind::Argument, "column generator returned the wrong length");
      for (std::size_t j = 0; j < ys.size(); ++j) g.at(i, j) = col[j];
    });
    return g;
  };
}

std::vector<PointY> DiscPatch::arc_samples(std::size_t j, const std::vector<double>& taus) const {
  if (j >= arcs.size()) fail(ErrorKind::Argument, "arc index out of range");
  const BoundaryArc& arc = arcs[j];
  if (arc.piece >= pieces.size()) fail(ErrorKind::Argument, "arc refers to a missing piece");
  const PatchPiece& pc = pieces[arc.piece];
  std::vector<double> e;
  e.reserve(taus.size());
  for (double tau : taus) e.push_back(arc.reversed ? 1.0 - tau : tau);
  std::vector<double> along;
  const bool runs_in_x = arc.edge == Edge::Bottom || arc.edge == Edge::Top;
  for (double x : e) along.push_back(runs_in_x ? pc.x0 + x * (pc.x1 - pc.x0) : pc.y0 + x * (pc.y1 - pc.y0));
  std::vector<PointY> out;
  out.reserve(taus.size());
  if (runs_in_x) {
    const GridSamples g = pc.map(along, {arc.edge == Edge::Bottom ? pc.y0 : pc.y1});
    for (std::size_t i = 0; i < along.size(); ++i) out.push_back(g.at(i, 0));
  } else {
    const GridSamples g = pc.map({arc.edge == Edge::Left ? pc.x0 : pc.x1}, along);
    for (std::size_t i = 0; i < along.size(); ++i) out.push_back(g.at(0, i));
  }
  return out;
}

ArcResidual on_lagrangian(const FiberedLagrangian& L, ParamPath path) {
  return [L, path = std::move(path)](double tau, const PointY& p) {
    const ParamPoint P = path.at(tau);
    const double base = std::abs(L.model().v(p) - L.curve()(P.t));
    return base + std::abs(L.locate(P.t, p).second);
  };
}

ArcResidual on_isotoped(const LagrangianIsotopy& iso, ParamPath path) {
  return [iso, path = std::move(path)](double tau, const PointY& p) {
    const FiberedLagrangian& L = iso.lagrangian();
    const ParamPoint P = path.at(tau);
    const PointY back = parallel_transport(L.model(), iso.homotopy().s_line(P.t), 1.0, 0.0, p, L.options());
    return std::abs(L.model().v(back) - L.curve()(P.t)) + std::abs(L.locate(P.t, back).second);
  };
}

namespace {

std::vector<double> nodes(double a, double b, int cells) {
  std::vector<double> out(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / cells;
  out.back() = b;
  return out;
}

// Quadratic triangle: exact integral of omega(u_x, u_y) for the P2 interpolant
// by the edge-midpoint rule (exact for quadratics). X: vertex coordinates,
// U: vertex values, M: midpoint values of edges (01, 12, 20).
double p2_triangle(const double X[3][2], const PointY U[3], const PointY M[3]) {
  const double A2 = (X[1][0] - X[0][0]) * (X[2][1] - X[0][1]) - (X[2][0] - X[0][0]) * (X[1][1] - X[0][1]);
  double g[3][2];
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    g[i][0] = (X[j][1] - X[k][1]) / A2;
    g[i][1] = (X[k][0] - X[j][0]) / A2;
  }
  // Midpoint index of the edge (a, b).
  auto mid = [&](int a, int b) -> const PointY& {
    if ((a == 0 && b == 1) || (a == 1 && b == 0)) return M[0];
    if ((a == 1 && b == 2) || (a == 2 && b == 1)) return M[1];
    return M[2];
  };
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    CVec du[2];
    for (int d = 0; d < 2; ++d) {
      du[d] = U[a] * g[a][d] + U[b] * g[b][d] - U[c] * g[c][d] + mid(a, b) * (2.0 * (g[a][d] + g[b][d])) +
              (mid(a, c) + mid(b, c)) * (2.0 * g[c][d]);
    }
    sum += omega_std(du[0], du[1]);
  }
  return sum * (0.5 * A2) / 3.0;
}

}  // namespace

double piece_area(const PatchPiece& piece, int level) {
  if (!piece.map) fail(ErrorKind::Argument, "patch piece '" + piece.name + "' has no map");
  if (piece.nx < 1 || piece.ny < 1 || level < 0) fail(ErrorKind::Argument, "bad patch resolution");
  const int cx = piece.nx << level, cy = piece.ny << level;
  const auto xs = nodes(piece.x0, piece.x1, 2 * cx);
  const auto ys = nodes(piece.y0, piece.y1, 2 * cy);
  const GridSamples g = piece.map(xs, ys);
  if (g.nx != xs.size() || g.ny != ys.size()) fail(ErrorKind::Argument, "grid map returned the wrong shape");
  for (const auto& p : g.values) {
    if (!p.finite()) fail(ErrorKind::Mesh, "non-finite sample in patch piece '" + piece.name + "'");
  }
  std::vector<double> rows(static_cast<std::size_t>(cx), 0.0);
  detail::parallel_for(rows.size(), [&](std::size_t ci) {
    const std::size_t i = 2 * ci;
    double acc = 0.0;
    for (std::size_t j = 0; j + 2 < ys.size(); j += 2) {
      const double x0 = xs[i], x1 = xs[i + 2], y0 = ys[j], y1 = ys[j + 2];
      {
        const double X[3][2] = {{x0, y0}, {x1, y0}, {x1, y1}};
        const PointY U[3] = {g.at(i, j), g.at(i + 2, j), g.at(i + 2, j + 2)};
        const PointY M[3] = {g.at(i + 1, j), g.at(i + 2, j + 1), g.at(i + 1, j + 1)};
        acc += p2_triangle(X, U, M);
      }
      {
        const double X[3][2] = {{x0, y0}, {x1, y1}, {x0, y1}};
        const PointY U[3] = {g.at(i, j), g.at(i + 2, j + 2), g.at(i, j + 2)};
        const PointY M[3] = {g.at(i + 1, j + 1), g.at(i + 1, j + 2), g.at(i, j + 1)};
        acc += p2_triangle(X, U, M);
      }
    }
    rows[ci] = acc;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return piece.orientation * total;
}

double patch_area(const DiscPatch& disc, int level) {
  double total = 0.0;
  for (const auto& pc : disc.pieces) total += piece_area(pc, level);
  return total;
}

AreaResult disc_area_converged(const DiscPatch& disc, const AreaOptions& opts) {
  if (disc.pieces.empty()) fail(ErrorKind::Argument, "disc patch has no pieces");
  std::size_t base_triangles = 0;
  for (const auto& pc : disc.pieces) base_triangles += 2 * static_cast<std::size_t>(pc.nx) * pc.ny;
  double prev = patch_area(disc, 0);
  double change = 0.0;
  for (int level = 1; level <= opts.max_level; ++level) {
    const double cur = patch_area(disc, level);
    change = std::abs(cur - prev);
    if (change < opts.tol) return {cur, change, level, base_triangles << (2 * level)};
    prev = cur;
  }
  std::ostringstream os;
  os << "area of '" << disc.name << "' still changes by " << change << " after " << opts.max_level
     << " refinements";
  fail(ErrorKind::Mesh, os.str());
}

double disc_area(const DiscPatch& disc, const AreaOptions& opts) { return disc_area_converged(disc, opts).value; }

double boundary_fidelity(const DiscPatch& disc, int samples) {
  double worst = 0.0;
  const auto taus = nodes(0.0, 1.0, std::max(1, samples - 1));
  for (std::size_t j = 0; j < disc.arcs.size(); ++j) {
    const auto& arc = disc.arcs[j];
    if (!arc.residual) continue;
    const auto pts = disc.arc_samples(j, taus);
    for (std::size_t k = 0; k < pts.size(); ++k) worst = std::max(worst, arc.residual(taus[k], pts[k]));
  }
  return worst;
}

double corner_mismatch(const DiscPatch& disc) {
  const std::size_t n = disc.arcs.size();
  if (disc.corners.size() != n) fail(ErrorKind::Argument, "disc needs one corner per boundary arc");
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto ends = disc.arc_samples(j, {0.0, 1.0});
    worst = std::max(worst, distance(ends[0], disc.corners[j]));
    worst = std::max(worst, distance(ends[1], disc.corners[(j + 1) % n]));
  }
  return worst;
}

PatchPiece isotopy_cylinder(const LagrangianIsotopy& iso, const ParamPath& path, double orientation,
                            std::string name) {
  PatchPiece pc;
  pc.name = std::move(name);
  pc.orientation = orientation;
  pc.map = columnwise_map([iso, path](double tau, const std::vector<double>& ss) {
    const ParamPoint P = path.at(tau);
    return iso.psi_sweep(iso.lagrangian().eval(P.t, P.u), P.t, ss);
  });
  return pc;
}

DiscPatch deform_disc(const DiscPatch& disc, const LagrangianIsotopy& iso, std::size_t m) {
  if (m >= disc.arcs.size()) fail(ErrorKind::Argument, "boundary index out of range");
  if (disc.corners.size() != disc.arcs.size()) fail(ErrorKind::Argument, "disc needs one corner per boundary arc");
  const BoundaryArc& arc = disc.arcs[m];
  if (!arc.path) fail(ErrorKind::Argument, "deformed arc needs a parameter path on the Lagrangian");
  const ParamPath path = *arc.path;

  DiscPatch out = disc;
  out.name = disc.name + "'";
  if (iso.homotopy().target_kind() == BaseHomotopy::Target::Identity) return out;

  // The cylinder meets the disc along arc m with s pointing outward, so it is
  // glued with reversed orientation.
  out.pieces.push_back(isotopy_cylinder(iso, path, -1.0, "cylinder"));
  BoundaryArc moved;
  moved.piece = out.pieces.size() - 1;
  moved.edge = Edge::Top;
  moved.lagrangian = "psi_1(" + arc.lagrangian + ")";
  moved.residual = on_isotoped(iso, path);
  out.arcs[m] = moved;

  const std::size_t n = disc.arcs.size();
  out.corners[m] = iso.psi(path.front().t, path.front().u, 1.0);
  out.corners[(m + 1) % n] = iso.psi(path.back().t, path.back().u, 1.0);
  return out;
}

AreaReport area_difference_check(const DiscPatch& disc, const LagrangianIsotopy& iso, std::size_t m,
                                 const AreaOptions& opts, const PotentialOptions& popts) {
  if (m >= disc.arcs.size() || !disc.arcs[m].path) fail(ErrorKind::Argument, "arc m needs a parameter path");
  const ParamPath& path = *disc.arcs[m].path;
  AreaReport r;
  r.label = disc.name;
  const AreaResult a = disc_area_converged(disc, opts);
  const AreaResult b = disc_area_converged(deform_disc(disc, iso, m), opts);
  r.area_u = a.value;
  r.area_u_prime = b.value;
  r.change_u = a.change;
  r.change_u_prime = b.change;
  r.boundary_term = iso.potential(path.back(), path.front(), popts, &r.path_discrepancy);
  r.residual = std::abs((r.area_u - r.area_u_prime) - r.boundary_term);
  return r;
}

AreaReport triangle_split_check(const DiscPatch& u, const LagrangianIsotopy& iso, std::size_t m,
                                const DiscPatch& u_doubleprime, cplx fiber_value, const AreaOptions& opts,
                                const PotentialOptions& popts) {
  if (m >= u.arcs.size() || !u.arcs[m].path) fail(ErrorKind::Argument, "arc m needs a parameter path");
  const Model& model = iso.lagrangian().model();
  AreaReport r;
  r.label = u.name;

  // Containment of u'' in the fiber, on the coarse quadrature grid.
  for (const auto& pc : u_doubleprime.pieces) {
    const GridSamples g = pc.map(nodes(pc.x0, pc.x1, 2 * pc.nx), nodes(pc.y0, pc.y1, 2 * pc.ny));
    for (const auto& p : g.values) r.fiber_residual = std::max(r.fiber_residual, std::abs(model.v(p) - fiber_value));
  }
  if (!(r.fiber_residual <= 1e-8)) {
    std::ostringstream os;
    os << "fiber patch leaves the fiber over " << fiber_value << " by " << r.fiber_residual;
    fail(ErrorKind::Hypothesis, os.str());
  }

  const ParamPath& path = *u.arcs[m].path;
  const AreaResult a = disc_area_converged(u, opts);
  const AreaResult b = disc_area_converged(u_doubleprime, opts);
  r.area_u = a.value;
  r.area_u_prime = b.value;
  r.change_u = a.change;
  r.change_u_prime = b.change;
  r.boundary_term = iso.potential(path.back(), path.front(), popts, &r.path_discrepancy);
  r.residual = std::abs((r.area_u - r.area_u_prime) - r.boundary_term);
  return r;
}

void write_columnar(std::ostream& os, const DiscPatch& disc, int level) {
  os << "# patch " << disc.name << "\n";
  os << "kind,piece,i,j,x,y,re0,im0,re1,im1\n";
  for (std::size_t k = 0; k < disc.pieces.size(); ++k) {
    const auto& pc = disc.pieces[k];
    const auto xs = nodes(pc.x0, pc.x1, 2 * (pc.nx << level));
    const auto ys = nodes(pc.y0, pc.y1, 2 * (pc.ny << level));
    const GridSamples g = pc.map(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const PointY& p = g.at(i, j);
        os << "node," << k << ',' << i << ',' << j << ',' << xs[i] << ',' << ys[j];
        for (int c = 0; c < 2; ++c) {
          const cplx z = c < p.dim() ? p[c] : cplx{};
          os << ',' << z.real() << ',' << z.imag();
        }
        os << '\n';
      }
    }
  }
  os << "kind,arc,piece,edge,reversed,lagrangian\n";
  for (std::size_t j = 0; j < disc.arcs.size(); ++j) {
    const auto& a = disc.arcs[j];
    os << "arc," << j << ',' << a.piece << ',' << to_string(a.edge) << ',' << (a.reversed ? 1 : 0) << ','
       << a.lagrangian << '\n';
  }
}

}  // namespace lgf
