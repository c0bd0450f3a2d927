#include <doctest.h>

#include <array>
#include <random>
#include <sstream>

#include "lgfloer/disc_area.hpp"
#include "lgfloer/patch_factories.hpp"

using namespace lgf;

namespace {

struct Quadratic {
  std::array<CVec, 6> c;  // 1, x, y, x^2, xy, y^2
  [[nodiscard]] PointY at(double x, double y) const {
    return c[0] + x * c[1] + y * c[2] + (x * x) * c[3] + (x * y) * c[4] + (y * y) * c[5];
  }
  [[nodiscard]] CVec dx(double x, double y) const { return c[1] + (2 * x) * c[3] + y * c[4]; }
  [[nodiscard]] CVec dy(double x, double y) const { return c[2] + x * c[4] + (2 * y) * c[5]; }
};

// Tensor 3-point Gauss-Legendre; exact for the degree-2 integrand omega(u_x, u_y).
double gauss_area(const Quadratic& q, double x0, double x1, double y0, double y1) {
  const double g[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)}, w[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * g[i], y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * g[j];
      s += w[i] * w[j] * omega_std(q.dx(x, y), q.dy(x, y));
    }
  }
  return s * 0.25 * (x1 - x0) * (y1 - y0);
}

PatchPiece piece_of(const Quadratic& q, double x0, double x1, double y0, double y1, int n) {
  PatchPiece pc;
  pc.x0 = x0, pc.x1 = x1, pc.y0 = y0, pc.y1 = y1, pc.nx = n, pc.ny = n;
  pc.map = pointwise_map([q](double x, double y) { return q.at(x, y); });
  return pc;
}

}  // namespace

TEST_CASE("round, constant and fiber discs") {
  const double R = 1.3;
  CHECK(disc_area(round_disc(R)) == doctest::Approx(kPi * R * R).epsilon(1e-5));
  CHECK(disc_area(constant_disc(PointY(cplx(1, 2), 3.0))) == 0.0);
  const cplx c(0.3, 0.4);
  const double Ro = 1.5, Ri = 0.6;
  const double oracle = kPi * (Ro * Ro - Ri * Ri) + kPi * std::norm(c) * (1 / (Ri * Ri) - 1 / (Ro * Ro));
  const AreaResult a = disc_area_converged(fiber_annulus(c, Ro, Ri));
  CHECK(std::abs(a.value - oracle) < 1e-5);
  CHECK(a.change < 1e-5);
}

TEST_CASE("property: P2 rule is exact for quadratic maps") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  auto rc = [&] { return cplx(g(rng), g(rng)); };
  for (int k = 0; k < 25; ++k) {
    Quadratic q;
    for (auto& v : q.c) v = k % 2 ? CVec(rc(), rc()) : CVec(rc());
    const double x0 = g(rng), y0 = g(rng);
    const double x1 = x0 + 0.5 + std::abs(g(rng)), y1 = y0 + 0.5 + std::abs(g(rng));
    const double oracle = gauss_area(q, x0, x1, y0, y1);
    for (int n : {1, 3}) CHECK(std::abs(piece_area(piece_of(q, x0, x1, y0, y1, n), 0) - oracle) < 1e-11 * (1 + std::abs(oracle)));
  }
}

TEST_CASE("orientation and additivity") {
  Quadratic q;
  q.c = {CVec(0.0), CVec(1.0), CVec(cplx(0, 1)), CVec(0.0), CVec(cplx(0.2, 0.1)), CVec(0.3)};
  PatchPiece a = piece_of(q, 0, 0.4, 0, 1, 4), b = piece_of(q, 0.4, 1, 0, 1, 4);
  const PatchPiece whole = piece_of(q, 0, 1, 0, 1, 4);
  CHECK(piece_area(a, 0) + piece_area(b, 0) == doctest::Approx(piece_area(whole, 0)).epsilon(1e-12));
  b.orientation = -1.0;
  CHECK(piece_area(b, 1) == doctest::Approx(-piece_area(piece_of(q, 0.4, 1, 0, 1, 4), 1)).epsilon(1e-12));
}

TEST_CASE("refinement that never settles is a mesh error") {
  DiscPatch d;
  PatchPiece pc;
  pc.nx = pc.ny = 1;
  pc.map = pointwise_map([](double x, double y) { return PointY(cplx(x, std::sin(400 * x * y))); });
  d.pieces.push_back(pc);
  CHECK_THROWS_AS(disc_area_converged(d, {1e-12, 1}), Error);
}

TEST_CASE("bigon strip: identity isotopy and corners") {
  const Model m = make_model("conic");
  const double r = 0.5, h = 0.3, R = std::hypot(r, h), a = std::atan2(h, r);
  const BasePath g0 = BasePath::arc(cplx(3, -h), R, a, kPi - a, -0.1, 1.1);
  const BasePath g1 = BasePath::arc(cplx(3, h), R, -a, -(kPi - a), -0.1, 1.1);
  const FiberedLagrangian L0(m, g0, FiberLagrangianParam::circle(1.2)), L1(m, g1, FiberLagrangianParam::ray());
  const auto ips = find_intersections(L0, L1);
  REQUIRE(ips.size() == 2);
  const bool first = ips[0].t0 < ips[1].t0;
  const DiscPatch u = bigon_strip(L0, L1, first ? ips[0] : ips[1], first ? ips[1] : ips[0]);
  CHECK(boundary_fidelity(u) < 1e-6);
  CHECK(corner_mismatch(u) < 1e-8);

  const LagrangianIsotopy still(L0, BaseHomotopy::identity(g0));
  const DiscPatch same = deform_disc(u, still, 1);
  CHECK(patch_area(same, 0) == patch_area(u, 0));
  const AreaReport rep = area_difference_check(u, still, 1);
  CHECK(rep.boundary_term == 0.0);
  CHECK(rep.residual <= 1e-6);

  const LagrangianIsotopy shrink(L0, BaseHomotopy::to_constant(g0, 3.0, 0.25, 0.75, 0.2));
  const DiscPatch moved = deform_disc(u, shrink, 1);
  REQUIRE(moved.corners.size() == u.corners.size());
  const double tc = u.arcs[1].path->front().t;
  CHECK(distance(moved.corners[1], shrink.psi_point(u.corners[1], tc, 1.0)) < 1e-8);
  CHECK(boundary_fidelity(moved) < 1e-6);
  CHECK(corner_mismatch(moved) < 1e-8);
}

TEST_CASE("triangle split on the bundled conic configuration") {
  const TriangleSetup T = conic_triangle();
  CHECK(boundary_fidelity(T.u) < 1e-6);
  CHECK(boundary_fidelity(T.u_doubleprime) < 1e-6);
  const AreaReport r = triangle_split_check(T.u, T.iso, T.m, T.u_doubleprime, T.fiber_value);
  CHECK(r.residual <= 1e-5);
  CHECK(r.fiber_residual <= 1e-8);
  CHECK(std::abs(r.boundary_term) > 1e-2);
  const double rep = disc_area(T.u_reparametrized);
  CHECK(std::abs(rep - r.area_u) <= 1e-6);
  // u'' sits in a fiber, a holomorphic curve: omega restricted to it is
  // the area form, so u'' cannot be a point.
  CHECK(std::abs(r.area_u_prime) > 1e-2);
  CHECK_THROWS_AS(triangle_split_check(T.u, T.iso, T.m, T.u, T.fiber_value), Error);
}

TEST_CASE("columnar dump") {
  std::ostringstream os;
  write_columnar(os, round_disc(1.0), 0);
  const std::string s = os.str();
  CHECK(s.rfind("# patch ", 0) == 0);
  CHECK(s.find("kind,piece,i,j,x,y,re0,im0,re1,im1\n") != std::string::npos);
  std::size_t nodes = 0;
  for (std::size_t p = s.find("\nnode,"); p != std::string::npos; p = s.find("\nnode,", p + 1)) ++nodes;
  CHECK(nodes == 129u * 65u);
}
