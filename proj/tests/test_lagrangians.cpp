#include <doctest.h>

#include <random>

#include "lgfloer/lagrangians.hpp"

using namespace lgf;

namespace {

bool near(const CVec& a, const CVec& b, double tol) { return distance(a, b) <= tol; }

const Model kConic = make_model("conic");

FiberedLagrangian circle_over_ramp() {
  return {kConic, BasePath::line(1.0, 1.0, -0.5, 1.5), FiberLagrangianParam::circle(1.0), 0.0};
}

// omega(d psi/dt, d psi/ds) by central differences of psi alone.
double flux_oracle(const LagrangianIsotopy& iso, double s, double t, double u) {
  const double h = 1e-4;
  const CVec dt = (iso.psi(t + h, u, s) - iso.psi(t - h, u, s)) / (2 * h);
  const CVec ds = (iso.psi(t, u, s + h) - iso.psi(t, u, s - h)) / (2 * h);
  return omega_std(dt, ds);
}

}  // namespace

TEST_CASE("fiber parametrizations") {
  const auto c = FiberLagrangianParam::circle(2.0);
  CHECK(std::abs(c.w(kPi / 2) - cplx(0, 2)) < 1e-15);
  const auto [s, res] = c.invert(std::polar(2.0, 0.7));
  CHECK(s == doctest::Approx(0.7));
  CHECK(std::abs(res) < 1e-14);
  const auto r = FiberLagrangianParam::ray(0.4);
  CHECK(std::abs(r.w(3.0) - std::polar(3.0, 0.4)) < 1e-15);
  const auto sp = FiberLagrangianParam::spiral(0.5, 0.1);
  CHECK(std::abs(sp.w(1.0) - std::exp(cplx(1.0, 0.5)) * std::polar(1.0, 0.1)) < 1e-14);
  CHECK(fiber_kind_from_string(to_string(FiberKind::Spiral)) == FiberKind::Spiral);
}

TEST_CASE("eval: anchor fiber, transport oracle, trivial line") {
  const auto L = FiberedLagrangian(kConic, BasePath::line(1.0, 3.0, 0.0, 1.0), FiberLagrangianParam::circle(1.0));
  CHECK(near(L.eval(0.0, 0.4), L.sigma(0.4), 1e-15));
  CHECK(near(L.eval(1.0, 0.0), PointY(2.0, 2.0), 1e-6));
  const Model t = make_model("trivial_line");
  const BasePath g = BasePath::arc(cplx(1, 1), 2.0, 0.0, 2.0);
  const FiberedLagrangian P(t, g, FiberLagrangianParam::point());
  CHECK(near(P.eval(0.6, 0.0), PointY(g(0.6)), 1e-12));
}

TEST_CASE("tangent frame") {
  const auto L = FiberedLagrangian(kConic, BasePath::line(1.0, 3.0, 0.0, 1.0), FiberLagrangianParam::circle(1.0));
  const Frame f = L.tangent_frame(0.0, 0.0);
  REQUIRE(f.vectors.size() == 2);
  CHECK(near(f.vectors[0], CVec(cplx(0, 1), cplx(0, -1)), 1e-8));
  for (double t : {0.2, 0.7}) {
    const Frame g = L.tangent_frame(t, 1.1);
    CHECK(std::abs(kConic.dv(g.point, g.vectors[1]) - cplx(3.0)) < 1e-5);
    CHECK(std::abs(omega_std(g.vectors[0], g.vectors[1])) < 1e-8);
  }
  const FiberedLagrangian P(make_model("trivial_line"), BasePath::line(0, cplx(1, 2), -1, 1), FiberLagrangianParam::point());
  const Frame p = P.tangent_frame(0.3, 0.0);
  REQUIRE(p.vectors.size() == 1);
  CHECK(near(p.vectors[0], CVec(cplx(1, 2)), 1e-12));
}

TEST_CASE("property: Lagrangian condition and locate round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ut(-0.4, 1.4), us(-3.0, 3.0);
  for (const auto& fiber : {FiberLagrangianParam::circle(0.8), FiberLagrangianParam::spiral(0.6, 0.2)}) {
    const FiberedLagrangian L(kConic, BasePath::line(1.0, 1.0, -0.5, 1.5), fiber, 0.5);
    for (int k = 0; k < 10; ++k) {
      const double t = ut(rng), s = fiber.kind == FiberKind::Circle ? us(rng) : 0.5 * us(rng);
      const Frame f = L.tangent_frame(t, s);
      CHECK(std::abs(omega_std(f.vectors[0], f.vectors[1])) < 1e-7);
      const auto [s2, res] = L.locate(t, f.point);
      CHECK(std::abs(res) < 1e-8);
      CHECK(std::abs(std::remainder(s2 - s, fiber.periodic() ? 2 * kPi : 1e9)) < 1e-7);
    }
  }
}

TEST_CASE("isotopy: identity, endpoint fiber, support") {
  const auto L = circle_over_ramp();
  const LagrangianIsotopy still(L, BaseHomotopy::identity(L.curve()));
  CHECK(near(still.psi(0.5, 0.3, 1.0), L.eval(0.5, 0.3), 1e-12));
  CHECK(still.flux(0.5, 0.2, 0.1, {1.0, 0.0}) == 0.0);
  CHECK(still.flux_path_integral(0.4, ParamPath::fiber_loop(0.5)) == 0.0);
  CHECK(still.potential({1.0, 0.5}, {0.0, 0.0}) == 0.0);

  const LagrangianIsotopy iso(L, BaseHomotopy::to_constant(L.curve(), 1.0, 0.25, 0.75, 0.2));
  CHECK(near(iso.psi(0.5, 0.0, 0.0), L.eval(0.5, 0.0), 1e-12));
  const PointY p1 = iso.psi(0.5, 0.0, 1.0);
  CHECK(std::abs(kConic.v(p1) - cplx(1.0)) < 1e-8);
  // over the real diagonal, mu = 0 is kept: the point returns to (1, 1)
  CHECK(near(p1, PointY(1.0, 1.0), 1e-6));
  CHECK(std::abs(iso.flux(0.5, 1.3, 0.4, {1.0, 0.0})) < 1e-9);
  CHECK(std::abs(iso.flux(0.5, -0.2, 0.4, {0.3, 1.0})) < 1e-9);
  CHECK(iso.potential({0.1, 0.2}, {0.1, 0.2}) == 0.0);
}

TEST_CASE("property: flux agrees with a finite-difference oracle and vanishes on vertical vectors") {
  const auto L = circle_over_ramp();
  const LagrangianIsotopy iso(L, BaseHomotopy::to_constant(L.curve(), cplx(1.0, 0.6), 0.25, 0.75, 0.2));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> us(0.05, 0.95), ut(0.1, 0.9), uu(-kPi, kPi);
  double largest = 0.0;
  for (int k = 0; k < 12; ++k) {
    const double s = us(rng), t = ut(rng), u = uu(rng);
    largest = std::max(largest, std::abs(flux_oracle(iso, s, t, u)));
    CHECK(iso.flux(s, t, u, {1.0, 0.0}) == doctest::Approx(flux_oracle(iso, s, t, u)).epsilon(1e-5).scale(1.0));
    CHECK(std::abs(iso.flux(s, t, u, {0.0, 1.0})) < 1e-6);
  }
  CHECK(largest > 1e-2);
}

TEST_CASE("exactness: fiber loops and contractible loops have zero period") {
  const auto L = circle_over_ramp();
  const LagrangianIsotopy iso(L, BaseHomotopy::to_constant(L.curve(), cplx(1.0, 0.6), 0.25, 0.75, 0.2));
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) CHECK(std::abs(iso.flux_path_integral(s, ParamPath::fiber_loop(0.5))) < 1e-5);
  const ParamPath box{{{0.2, -1.0}, {0.8, -1.0}, {0.8, 1.5}, {0.2, 1.5}, {0.2, -1.0}}};
  CHECK(std::abs(iso.flux_path_integral(0.6, box)) < 1e-5);
  double disc = 1.0;
  const double f = iso.potential({0.6, 1.2}, {0.0, 0.0}, {}, &disc);
  CHECK(disc < 1e-5);
  const double g = iso.integrated_flux(ParamPath{{{0.0, 0.0}, {0.0, 2.0}, {0.6, 2.0}, {0.6, 1.2}}});
  CHECK(std::abs(f - g) < 1e-5);
}

TEST_CASE("intersections") {
  const FiberedLagrangian ray(kConic, BasePath::line(1.0, 1.0, -0.5, 0.5), FiberLagrangianParam::ray(), 0.0);
  const FiberedLagrangian circ(kConic, BasePath::line(1.0, cplx(0, 1), -0.5, 0.5), FiberLagrangianParam::circle(1.3), 0.0);
  const auto ips = find_intersections(ray, circ);
  REQUIRE(ips.size() == 1);
  CHECK(near(ips[0].point, PointY(1.3, 1.0 / 1.3), 1e-8));
  CHECK(std::abs(ips[0].base_value - cplx(1.0)) < 1e-8);
  CHECK_THROWS_AS(find_intersections(circ, circ), Error);
  const FiberedLagrangian far(kConic, BasePath::line(5.0, cplx(0, 1), -0.5, 0.5), FiberLagrangianParam::circle(1.3), 0.0);
  CHECK(find_intersections(ray, far).empty());
}
