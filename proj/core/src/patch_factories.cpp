#include "lgfloer/patch_factories.hpp"

#include <cmath>
#include <sstream>

#include "lgfloer/errors.hpp"
#include "parallel.hpp"

namespace lgf {

DiscPatch round_disc(double R) {
  DiscPatch d;
  d.name = "round_disc";
  PatchPiece pc;
  pc.name = "polar";
  pc.x1 = 1.0;
  pc.y1 = 2.0 * kPi;
  pc.map = pointwise_map([R](double r, double phi) { return PointY(std::polar(R * r, phi)); });
  d.pieces.push_back(pc);
  return d;
}

DiscPatch constant_disc(const PointY& p) {
  DiscPatch d;
  d.name = "constant";
  PatchPiece pc;
  pc.name = "constant";
  pc.map = pointwise_map([p](double, double) { return p; });
  d.pieces.push_back(pc);
  return d;
}

DiscPatch fiber_annulus(cplx c, double R_outer, double R_inner) {
  if (!(R_inner > 0.0) || !(R_outer > R_inner)) fail(ErrorKind::Argument, "annulus needs 0 < R_inner < R_outer");
  DiscPatch d;
  d.name = "fiber_annulus";
  PatchPiece pc;
  pc.name = "annulus";
  pc.x0 = R_inner;
  pc.x1 = R_outer;
  pc.y1 = 2.0 * kPi;
  pc.map = pointwise_map([c](double rho, double phi) {
    const cplx z = std::polar(rho, phi);
    return PointY(z, c / z);
  });
  d.pieces.push_back(pc);
  return d;
}

DiscPatch bigon_strip(const FiberedLagrangian& L0, const FiberedLagrangian& L1, const IntersectionPoint& pp,
                      const IntersectionPoint& pm) {
  const ParamPath a0 = ParamPath::straight({pp.t0, pp.u0}, {pm.t0, pm.u0});
  const ParamPath a1 = ParamPath::straight({pp.t1, pp.u1}, {pm.t1, pm.u1});
  DiscPatch d;
  d.name = "bigon_strip";
  PatchPiece pc;
  pc.name = "strip";
  pc.nx = 16;
  pc.ny = 128;
  pc.map = [L0, L1, a0, a1](const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<PointY> A0(ys.size()), A1(ys.size());
    detail::parallel_for(ys.size(), [&](std::size_t j) {
      const ParamPoint P0 = a0.at(ys[j]), P1 = a1.at(ys[j]);
      A0[j] = L0.eval(P0.t, P0.u);
      A1[j] = L1.eval(P1.t, P1.u);
    });
    GridSamples g(xs.size(), ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) g.at(i, j) = (1.0 - xs[i]) * A0[j] + xs[i] * A1[j];
    }
    return g;
  };
  d.pieces.push_back(pc);

  BoundaryArc on1;
  on1.edge = Edge::Right;
  on1.lagrangian = "L1";
  on1.path = a1;
  on1.residual = on_lagrangian(L1, a1);
  BoundaryArc on0;
  on0.edge = Edge::Left;
  on0.reversed = true;
  on0.lagrangian = "L0";
  on0.path = a0.reversed();
  on0.residual = on_lagrangian(L0, a0.reversed());
  d.arcs = {on1, on0};
  d.corners = {pp.point, pm.point};
  return d;
}

namespace {

std::pair<double, double> single_fiber_intersection(const FiberedLagrangian& A, double ta, const FiberedLagrangian& B,
                                                    double tb, const char* what) {
  const auto hits = fiber_intersections(A, ta, B, tb);
  if (hits.size() != 1) {
    std::ostringstream os;
    os << "triangle corner " << what << ": expected one fiber intersection, found " << hits.size();
    fail(ErrorKind::NumericalConsistency, os.str());
  }
  return hits.front();
}

double warp_tau(double tau) { return tau + 0.5 * std::sin(2.0 * kPi * tau) / (2.0 * kPi); }
double warp_s(double s) { return s + 0.4 * s * (1.0 - s); }

ArcResidual warped(ArcResidual r, double (*w)(double), bool flip) {
  return [r = std::move(r), w, flip](double tau, const PointY& p) {
    return r(flip ? 1.0 - w(1.0 - tau) : w(tau), p);
  };
}

}  // namespace

TriangleSetup conic_triangle(const TriangleOptions& o) {
  if (!(o.epsilon > 0.0)) fail(ErrorKind::Argument, "epsilon must be positive");
  const Model conic = make_model("conic");
  const cplx c{-o.epsilon, 0.0};
  const cplx top_left{-1.0, 1.0}, top_right{1.0, 1.0};
  const BasePath g0 = BasePath::line(top_left, top_right - top_left, -0.5, 1.5);
  const BasePath g1 = BasePath::line(c, top_right - c, -0.2, 1.2);
  const BasePath g2 = BasePath::line(c, top_left - c, -0.2, 1.2);
  FiberedLagrangian L0(conic, g0, FiberLagrangianParam::circle(o.circle_radius), 0.5);
  FiberedLagrangian L1(conic, g1, FiberLagrangianParam::ray(o.ray_angle), 0.0);
  FiberedLagrangian L2(conic, g2, FiberLagrangianParam::spiral(o.spiral_k, o.spiral_angle), 0.0);
  LagrangianIsotopy iso(L0, BaseHomotopy::to_constant(g0, c, 0.0, 1.0, 0.5));

  const auto [u0a, u2a] = single_fiber_intersection(L0, 0.0, L2, 1.0, "p0");
  const auto [u0b, u1b] = single_fiber_intersection(L0, 1.0, L1, 1.0, "p1");
  const auto [u1c, u2c] = single_fiber_intersection(L1, 0.0, L2, 0.0, "p2");
  (void)u2a;
  (void)u1b;
  (void)u2c;
  const PointY p0 = L0.eval(0.0, u0a), p1 = L0.eval(1.0, u0b), p2 = L1.eval(0.0, u1c);
  const ParamPath path0 = ParamPath::straight({0.0, u0a}, {1.0, u0b});

  // Fiber corners in the log chart; the argument along psi_1 of the L0 side is
  // unwrapped so the fiber triangle closes up with the cylinder.
  const int n = 256;
  std::vector<cplx> ws(n + 1);
  detail::parallel_for(ws.size(), [&](std::size_t k) {
    const ParamPoint P = path0.at(static_cast<double>(k) / n);
    ws[k] = conic.fiber_coordinate(iso.psi(P.t, P.u, 1.0));
  });
  double arg = std::arg(ws[0]);
  for (int k = 1; k <= n; ++k) {
    const double d = std::arg(ws[static_cast<std::size_t>(k)] / ws[static_cast<std::size_t>(k - 1)]);
    if (std::abs(d) > 0.5 * kPi) fail(ErrorKind::Sampling, "psi_1 of the L0 side jumps in the fiber chart");
    arg += d;
  }
  const cplx Z0{std::log(std::abs(ws.front())), std::arg(ws.front())};
  const cplx Z1{std::log(std::abs(ws.back())), arg};
  const cplx w2 = conic.fiber_coordinate(p2);
  const double shift = std::remainder(std::arg(w2) - Z1.imag(), 2.0 * kPi);
  if (std::abs(shift) > 1e-6) fail(ErrorKind::NumericalConsistency, "p2 is not on the ray through psi_1(p1)");
  const cplx Z2{std::log(std::abs(w2)), Z1.imag()};
  const double spiral_gap = (Z2.imag() - Z0.imag()) - o.spiral_k * (Z2.real() - Z0.real());
  if (std::abs(spiral_gap) > 1e-6) {
    std::ostringstream os;
    os << "fiber triangle does not close along the spiral (gap " << spiral_gap << ")";
    fail(ErrorKind::Hypothesis, os.str());
  }

  auto fiber_map = [conic, c, Z0, Z1, Z2](double x, double y) {
    const cplx zeta = (1.0 - y) * ((1.0 - x) * Z0 + x * Z1) + y * Z2;
    return conic.fiber_point(c, std::exp(zeta));
  };

  const ParamPath over_c = ParamPath::straight({0.0, 0.0}, {0.0, 0.0});
  const ParamPath back_l1 = ParamPath::straight({1.0, 0.0}, {0.0, 0.0});
  const ParamPath up_l2 = ParamPath::straight({0.0, 0.0}, {1.0, 0.0});

  TriangleSetup T{L0, L1, L2, iso, c, {p0, p1, p2}, {}, {}, {}, 0};

  // u'': bottom on psi_1(L0), right on L1, left (reversed) on L2.
  {
    DiscPatch& d = T.u_doubleprime;
    d.name = "fiber_triangle";
    PatchPiece pc;
    pc.name = "fiber_triangle";
    pc.map = pointwise_map(fiber_map);
    d.pieces.push_back(pc);
    BoundaryArc b{0, Edge::Bottom, false, "psi_1(L0)", std::nullopt, on_isotoped(iso, path0)};
    BoundaryArc r{0, Edge::Right, false, "L1", std::nullopt, on_lagrangian(L1, over_c)};
    BoundaryArc l{0, Edge::Left, true, "L2", std::nullopt, on_lagrangian(L2, over_c)};
    d.arcs = {b, r, l};
    d.corners = {fiber_map(0.0, 0.0), fiber_map(1.0, 0.0), fiber_map(1.0, 1.0)};
  }

  // u = cylinder (s = 0 on L0, s = 1 on u'') followed by u''.
  auto assemble = [&](DiscPatch& d, PatchPiece cyl, PatchPiece fib, bool warp) {
    d.pieces = {std::move(cyl), std::move(fib)};
    auto res = [&](ArcResidual r, double (*w)(double), bool flip) { return warp ? warped(std::move(r), w, flip) : r; };
    d.arcs = {
        {0, Edge::Bottom, false, "L0", path0, res(on_lagrangian(L0, path0), warp_tau, false)},
        {0, Edge::Right, false, "L1", std::nullopt, res(on_lagrangian(L1, back_l1), warp_s, false)},
        {1, Edge::Right, false, "L1", std::nullopt, on_lagrangian(L1, over_c)},
        {1, Edge::Left, true, "L2", std::nullopt, on_lagrangian(L2, over_c)},
        {0, Edge::Left, true, "L2", std::nullopt, res(on_lagrangian(L2, up_l2), warp_s, true)},
    };
    d.corners = {p0, p1, fiber_map(1.0, 0.0), p2, fiber_map(0.0, 0.0)};
  };

  {
    PatchPiece fib = T.u_doubleprime.pieces.front();
    assemble(T.u, isotopy_cylinder(iso, path0, 1.0), fib, false);
    T.u.name = "triangle";
  }
  {
    PatchPiece cyl;
    cyl.name = "cylinder_reparametrized";
    cyl.map = columnwise_map([iso, path0](double tau, const std::vector<double>& ss) {
      const ParamPoint P = path0.at(warp_tau(tau));
      std::vector<double> ws2;
      ws2.reserve(ss.size());
      for (double s : ss) ws2.push_back(warp_s(s));
      return iso.psi_sweep(iso.lagrangian().eval(P.t, P.u), P.t, ws2);
    });
    PatchPiece fib;
    fib.name = "fiber_triangle_reparametrized";
    fib.map = pointwise_map([fiber_map](double x, double y) { return fiber_map(warp_tau(x), warp_s(y)); });
    assemble(T.u_reparametrized, cyl, fib, true);
    T.u_reparametrized.name = "triangle_reparametrized";
  }
  return T;
}

std::vector<std::string> patch_factory_names() {
  return {"bigon_strip", "conic_triangle", "constant", "fiber_annulus", "round_disc"};
}

}  // namespace lgf
