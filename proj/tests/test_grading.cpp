#include <doctest.h>

#include <array>
#include <random>

#include "lgfloer/grading.hpp"

using namespace lgf;

namespace {

const Model kTrivial = make_model("trivial_line");
const Model kConic = make_model("conic");

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

// Real line spanned by a equals the one spanned by b.
bool same_line(cplx a, cplx b, double tol) { return std::abs((std::conj(a) * b).imag()) <= tol * std::abs(a) * std::abs(b); }

GradedLagrangian trivial_line_through_0(double theta, double grading) {
  const FiberedLagrangian L(kTrivial, BasePath::line(0, std::polar(1.0, theta), -1, 1), FiberLagrangianParam::point());
  return {L, 0.0, grading, {0.0, 0.0}};
}

struct LensPair {
  GradedLagrangian G0, G1;
  IntersectionPoint plus, minus;
};

// Upper arc (L0) and lower arc (L1) through center -+ r; p_plus is the right corner.
LensPair lens_pair(const Model& m, cplx center, double r, double h, FiberLagrangianParam f0, FiberLagrangianParam f1,
                   double fa0, double fa1, double u0) {
  const double R = std::hypot(r, h), a = std::atan2(h, r);
  const BasePath g0 = BasePath::arc(center - cplx(0, h), R, a, kPi - a, -0.1, 1.1);
  const BasePath g1 = BasePath::arc(center + cplx(0, h), R, -a, -(kPi - a), -0.1, 1.1);
  const FiberedLagrangian L0(m, g0, f0), L1(m, g1, f1);
  const auto ips = find_intersections(L0, L1);
  REQUIRE(ips.size() == 2);
  const bool first = ips[0].base_value.real() > ips[1].base_value.real();
  return {GradedLagrangian(L0, fa0, std::arg(g0.derivative(0)) / kPi, {0, u0}),
          GradedLagrangian(L1, fa1, std::arg(g1.derivative(0)) / kPi, {0, 0}), first ? ips[0] : ips[1],
          first ? ips[1] : ips[0]};
}

}  // namespace

TEST_CASE("alpha_total") {
  CHECK(close(alpha_total(kTrivial, make_plane(kTrivial, PointY(0.0), {CVec(1.0)})), 1.0, 1e-15));
  CHECK(close(alpha_total(kTrivial, make_plane(kTrivial, PointY(0.0), {CVec(cplx(0, 1))})), -1.0, 1e-15));
  const PointY p(1.0, 1.0);
  CHECK(close(alpha_total(kConic, make_plane(kConic, p, {CVec(cplx(0, 1), cplx(0, -1)), CVec(1.0, 1.0)})), -1.0, 1e-14));
  CHECK_THROWS_AS(make_plane(kConic, p, {CVec(1.0, 0.0), CVec(cplx(0, 1), 0.0)}), Error);
}

TEST_CASE("alpha_vert residue") {
  const cplx c(0.7, -0.4);
  for (double s : {0.0, 1.0, 2.5}) {
    const cplx z1 = std::polar(1.3, s);
    const PointY p(z1, c / z1);
    const std::array<CVec, 1> e{CVec(cplx(0, 1) * p[0], cplx(0, -1) * p[1])};
    CHECK(close(alpha_vert(kConic, p, e), -1.0, 1e-13));
    const CVec h1 = horizontal_lift(kConic, p, cplx(0.3, 2.0));
    const CVec h2 = horizontal_lift(kConic, p, cplx(-1.0, 0.1)) + 0.7 * e[0];
    CHECK(close(alpha_vert(kConic, p, e, h1), alpha_vert(kConic, p, e, h2), 1e-10));
  }
  const double cr = 2.0;
  for (double x : {0.5, 1.0, 3.0}) {
    const PointY p(x, cr / x);
    const std::array<CVec, 1> e{CVec(1.0, -cr / (x * x))};
    CHECK(close(alpha_vert(kConic, p, e), 1.0, 1e-13));
  }
}

TEST_CASE("alpha_hor") {
  const PointY p(1.0, 2.0);
  CHECK(close(alpha_hor(kConic, p, horizontal_lift(kConic, p, 1.0)), 1.0, 1e-14));
  CHECK(close(alpha_hor(kConic, p, horizontal_lift(kConic, p, cplx(0, 1))), -1.0, 1e-14));
  const double eps = 0.4;
  for (double t : {0.0, 0.8, 2.0}) {
    const cplx c = eps * std::exp(cplx(0, t)), dc = cplx(0, 1) * c;
    const PointY q(1.0, c);
    CHECK(close(alpha_hor(kConic, q, horizontal_lift(kConic, q, dc)), std::exp(cplx(0, 2 * (t + kPi / 2))), 1e-13));
  }
}

TEST_CASE("unwrap_lift") {
  const std::vector<cplx> ones(5, 1.0);
  for (double l : unwrap_lift(ones, 0.0)) CHECK(l == 0.0);
  for (double l : unwrap_lift(ones, 3.0)) CHECK(l == 3.0);
  std::vector<cplx> s;
  for (int k = 0; k <= 10; ++k) s.push_back(std::exp(cplx(0, -kPi * k / 10.0)));
  const auto lift = unwrap_lift(s, 0.0);
  for (int k = 0; k <= 10; ++k) CHECK(lift[static_cast<std::size_t>(k)] == doctest::Approx(-k / 20.0));
}

TEST_CASE("property: unwrap_function recovers a known winding phase") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> w(-6.0, 6.0);
  for (int k = 0; k < 20; ++k) {
    const double a = w(rng), b = w(rng);
    // theta(x) = 1/4 + a x + b x^3 / 3 in turns
    auto f = [&](double x) { return std::exp(cplx(0, 2 * kPi * (0.25 + a * x + b * x * x * x / 3))); };
    CHECK(unwrap_function(f, 0.0, 1.0, 0.25) == doctest::Approx(0.25 + a + b / 3).epsilon(1e-12));
  }
}

TEST_CASE("grading anchors") {
  const FiberedLagrangian circ(kConic, BasePath::line(1.0, cplx(0, 1), -0.5, 0.5), FiberLagrangianParam::circle(1.3));
  const FiberedLagrangian ray(kConic, BasePath::line(1.0, 1.0, -0.5, 0.5), FiberLagrangianParam::ray());
  CHECK_NOTHROW(GradedLagrangian(circ, 0.5, 0.5, {0, 0}));
  CHECK_NOTHROW(GradedLagrangian(ray, 0.0, 0.0, {0, 1}));
  CHECK_THROWS_AS(GradedLagrangian(circ, 0.3, 0.5, {0, 0}), Error);
  const GradedLagrangian G(circ, 0.5, 0.5, {0, 0});
  CHECK(G.vert_lift(0.3, 1.0) == doctest::Approx(0.5));
  CHECK(G.shifted(1, 2).lift(0.0, 0.0) == doctest::Approx(G.lift(0.0, 0.0) + 3));
}

TEST_CASE("short path on the trivial line") {
  const Frame T0{PointY(0.0), {CVec(1.0)}}, T1{PointY(0.0), {CVec(cplx(0, 1))}};
  const ShortPath sp = canonical_short_path(kTrivial, PointY(0.0), T0, T1);
  CHECK(same_line(sp.at(0.0).basis[0][0], 1.0, 1e-8));
  CHECK(same_line(sp.at(1.0).basis[0][0], cplx(0, 1), 1e-8));
  for (double t : {0.0, 0.3, 0.6, 1.0}) {
    CHECK(close(alpha_total(kTrivial, sp.at(t)), std::exp(cplx(0, -kPi * t)), 1e-12));
  }
  CHECK(sp.closed_form_change() == doctest::Approx(-0.5));
}

TEST_CASE("degrees on the trivial line") {
  const auto A = trivial_line_through_0(0.0, 0.0);
  for (double th : {0.3, 1.2, 2.9}) {
    const auto B = trivial_line_through_0(th, th / kPi);
    const auto ips = find_intersections(A.lagrangian(), B.lagrangian());
    REQUIRE(ips.size() == 1);
    CHECK(degree(A, B, ips[0]).degree == 1);
    CHECK(degree(A, B.shifted(0, 1), ips[0]).degree == 2);
    const auto sp = degree_split(A, B, ips[0]);
    CHECK(sp.fiber.degree == 0);
    CHECK(sp.total.residual < 1e-4);
  }
}

TEST_CASE("conic ray versus circle splits as 1 + 1") {
  const FiberedLagrangian ray(kConic, BasePath::line(1.0, 1.0, -0.5, 0.5), FiberLagrangianParam::ray());
  const FiberedLagrangian circ(kConic, BasePath::line(1.0, cplx(0, 1), -0.5, 0.5), FiberLagrangianParam::circle(1.3));
  const GradedLagrangian R(ray, 0.0, 0.0, {0, 1}), C(circ, 0.5, 0.5, {0, 0});
  const auto ips = find_intersections(ray, circ);
  REQUIRE(ips.size() == 1);
  const auto sp = degree_split(R, C, ips[0]);
  CHECK(sp.fiber.degree == 1);
  CHECK(sp.base.degree == 1);
  CHECK(sp.total.degree == 2);
  CHECK(degree(R, C, ips[0]).degree == 2);
  CHECK(std::max({sp.total.residual, sp.fiber.residual, sp.base.residual}) < 1e-4);
}

TEST_CASE("property: common rotation of the base curves keeps the degrees") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  const FiberedLagrangian ray(kConic, BasePath::line(1.0, 1.0, -0.5, 0.5), FiberLagrangianParam::ray());
  const FiberedLagrangian circ(kConic, BasePath::line(1.0, cplx(0, 1), -0.5, 0.5), FiberLagrangianParam::circle(1.3));
  for (int k = 0; k < 20; ++k) {
    const double phi = ang(rng);
    const FiberedLagrangian r2 = ray.rotated(phi), c2 = circ.rotated(phi);
    // fiber anchors follow the rotated vertical phase; base anchors turn by phi / pi
    auto fa = [&](const FiberedLagrangian& L, double u, double old) {
      const Frame f = L.tangent_frame(0.0, u);
      const std::array<CVec, 1> e{split_tangent(kConic, f.point, {f.point, f.vectors[0]}).vertical.comp};
      const double a = std::arg(alpha_vert(kConic, f.point, e)) / (2 * kPi);
      return old + std::remainder(a - old, 1.0);
    };
    const GradedLagrangian R(r2, fa(r2, 1.0, 0.0), phi / kPi, {0, 1}), C(c2, fa(c2, 0.0, 0.5), 0.5 + phi / kPi, {0, 0});
    const auto ips = find_intersections(r2, c2);
    REQUIRE(ips.size() == 1);
    const auto sp = degree_split(R, C, ips[0]);
    CHECK(sp.fiber.degree == 1);
    CHECK(sp.base.degree == 1);
    CHECK(sp.total.degree == 2);
  }
}

TEST_CASE("bigon relation") {
  SUBCASE("trivial line: base bigon contributes 1") {
    const auto P = lens_pair(kTrivial, 0.0, 1.0, 0.6, FiberLagrangianParam::point(), FiberLagrangianParam::point(), 0, 0, 0);
    const auto r = bigon_relation(P.G0, P.G1, P.plus, P.minus);
    CHECK(r.fiber_plus == 0);
    CHECK(r.deg_plus - r.deg_minus == 1);
    CHECK(r.difference == 0);
  }
  SUBCASE("conic, enclosing the critical value") {
    const auto P = lens_pair(kConic, 0.0, 1.0, 0.6, FiberLagrangianParam::ray(), FiberLagrangianParam::circle(1.2), 0, 0.5, 1);
    const auto r = bigon_relation(P.G0, P.G1, P.plus, P.minus);
    CHECK(r.lhs == r.rhs);
    CHECK(r.difference == 0);
    CHECK(r.pprime_residual < 1e-8);
  }
  SUBCASE("conic, no critical value inside") {
    const auto P = lens_pair(kConic, 3.0, 0.5, 0.3, FiberLagrangianParam::ray(), FiberLagrangianParam::circle(1.2), 0, 0.5, 1);
    const auto r = bigon_relation(P.G0, P.G1, P.plus, P.minus);
    CHECK(r.difference == 0);
    CHECK(r.deg_plus - r.deg_minus == r.fiber_plus - r.fiber_monodromy_minus + 1);
  }
}
